use std::fmt;

use super::ring::{ExactDiv, Field, Ring};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients indexed by degree.
///
/// Trailing zeros are never stored, so the leading coefficient of a nonzero
/// polynomial is nonzero and the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k` (`None` past the degree).
    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    fn some_coeff(&self) -> Option<&R> {
        self.coeffs.first()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(c) = self.some_coeff() else {
            return Self::zero();
        };
        let mut acc = Self::constant(c.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        match self.some_coeff() {
            None => Self::zero(),
            Some(c) => {
                let mut coeffs = vec![c.zero_like(); k];
                coeffs.extend(self.coeffs.iter().cloned());
                UniPoly { coeffs }
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a.mul_int(k as i64)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = x.zero_like();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// Composition `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut steps = match self.degree() {
            Some(n) if n >= dd => n - dd + 1,
            _ => return r,
        };
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            r = r.scale(&lc).sub(&d.scale(&rl).shift_up(rd - dd));
            steps -= 1;
        }
        for _ in 0..steps {
            r = r.scale(&lc);
        }
        r
    }

    /// Divides every coefficient exactly by `c`.
    pub fn exact_div_scalar(&self, c: &R) -> Result<Self>
    where
        R: ExactDiv,
    {
        Ok(Self::new(self.coeffs.iter().map(|a| a.exact_div(c)).collect::<Result<_>>()?))
    }
}

impl<R: Field> UniPoly<R> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = d.leading().unwrap().inv()?;
        let mut r = self.clone();
        let mut q: Vec<R> = match self.degree() {
            Some(n) if n >= dd => vec![inv_lc.zero_like(); n - dd + 1],
            _ => return Ok((Self::zero(), r)),
        };
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let t = r.leading().unwrap().mul(&inv_lc);
            r = r.sub(&d.scale(&t).shift_up(rd - dd));
            // Floating rings may leave a tiny leading residue; force it out.
            if r.degree() == Some(rd) {
                r.coeffs.pop();
                r = Self::new(r.coeffs);
            }
            q[rd - dd] = t;
        }
        Ok((Self::new(q), r))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(lc) => Ok(self.scale(&lc.inv()?)),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.clone());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_rem(&g)?.0)
    }
}

/// Exact polynomial division: the quotient, or `NonZeroRemainder`.
pub fn poly_exact_div<R: Field>(numer: &UniPoly<R>, divisor: &UniPoly<R>) -> Result<UniPoly<R>> {
    let (q, r) = numer.div_rem(divisor)?;
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonZeroRemainder)
    }
}

impl<R: Field> ExactDiv for UniPoly<R> {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        poly_exact_div(self, divisor)
    }
}

/// Constants are built from the first stored coefficient, so `one_like` and
/// `scalar_like` panic on the zero polynomial.
impl<R: Ring> Ring for UniPoly<R> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::constant(
            self.some_coeff().expect("one_like on the zero polynomial needs a coefficient template").one_like(),
        )
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        UniPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        UniPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        UniPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn scalar_like(&self, q: &ExactScalar) -> Self {
        Self::constant(
            self.some_coeff().expect("scalar_like on the zero polynomial needs a coefficient template").scalar_like(q),
        )
    }
    fn mul_int(&self, k: i64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_int(k)).collect())
    }
}

impl UniPoly<ExactScalar> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::scalar::int(c)).collect())
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})*x")?,
                _ => write!(f, "({a})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    fn p(c: &[i64]) -> UniPoly<ExactScalar> {
        UniPoly::from_ints(c)
    }

    #[test]
    fn exact_division_examples() {
        // (x^2 - 1) / (x - 1) = x + 1
        assert_eq!(poly_exact_div(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[1, 1]));
        // (x^2 + 1) / (x - 1) is inexact
        assert_eq!(poly_exact_div(&p(&[1, 0, 1]), &p(&[-1, 1])), Err(Error::NonZeroRemainder));
        assert_eq!(poly_exact_div(&p(&[1]), &p(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn pseudo_remainder_matches_field_remainder_up_to_scale() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let pr = a.pseudo_rem(&b);
        let r = a.rem(&b).unwrap();
        // lc(b)^(4-2+1) = 8
        assert_eq!(pr, r.scale(&int(8)));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(f.gcd(&f.derivative()).unwrap(), p(&[-1, 1]));
        assert_eq!(f.squarefree_part().unwrap().monic().unwrap(), p(&[-2, 1, 1]));
    }

    #[test]
    fn compose_and_eval() {
        let f = p(&[1, 0, 1]);
        let shifted = f.compose(&p(&[3, 1]));
        assert_eq!(shifted, p(&[10, 6, 1]));
        assert_eq!(f.eval(&int(3)), int(10));
    }
}
