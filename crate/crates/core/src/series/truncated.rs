use crate::error::{Error, Result};
use crate::exactalg::{Ring, UniPoly};

/// Power series `a_0 + a_1 z + ... + a_N z^N + O(z^(N+1))`.
///
/// Always holds exactly `N + 1` coefficients; binary operations require equal
/// orders.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Pads with zeros or truncates to `order`. `template` supplies the zero.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize, template: &R) -> Self {
        coeffs.resize(order + 1, template.zero_like());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize, template: &R) -> Self {
        Self::from_coeffs(Vec::new(), order, template)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let t = c.clone();
        Self::from_coeffs(vec![c], order, &t)
    }

    /// The series `z`.
    pub fn variable(order: usize, template: &R) -> Self {
        Self::from_coeffs(vec![template.zero_like(), template.one_like()], order, template)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    fn template(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order, self.template())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.order(), rhs.order());
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.order(), rhs.order());
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    pub fn scale(&self, k: &R) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.mul(k)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.order(), rhs.order());
        let n = self.order();
        let mut out = vec![self.template().zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![self.template().zero_like(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        TruncatedSeries { coeffs }
    }

    /// Division by `z^k`; the `k` lowest coefficients must be zero. The
    /// result has order `N - k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|a| !a.is_zero()) {
            return Err(Error::NonZeroRemainder);
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Inverse of a series whose constant term is one; ring operations only.
    pub fn inv_unit(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidParameter("series inverse needs a unit constant term equal to one".into()));
        }
        let n = self.order();
        let mut b: Vec<R> = Vec::with_capacity(n + 1);
        b.push(self.template().one_like());
        for k in 1..=n {
            let mut acc = self.template().zero_like();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&b[k - j]));
                }
            }
            b.push(acc.neg());
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `p(self)` by Horner's rule.
    pub fn compose_poly(&self, p: &UniPoly<R>) -> Self {
        let n = self.order();
        let mut acc = Self::zero(n, self.template());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }

    /// `[1, self, self^2, ..., self^k]`.
    pub fn powers(&self, k: usize) -> Vec<Self> {
        let mut out = vec![Self::constant(self.template().one_like(), self.order())];
        for i in 0..k {
            let next = out[i].mul(self);
            out.push(next);
        }
        out
    }

    /// `p(x)` given `powers = [1, x, x^2, ...]` covering `deg p`.
    pub fn eval_with_powers(p: &UniPoly<R>, powers: &[Self]) -> Self {
        let mut acc = Self::zero(powers[0].order(), powers[0].template());
        for (c, xp) in p.coeffs().iter().zip(powers) {
            if !c.is_zero() {
                acc = acc.add(&xp.scale(c));
            }
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<TruncatedSeries<S>> {
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ExactScalar};

    fn s(c: &[i64], order: usize) -> TruncatedSeries<ExactScalar> {
        TruncatedSeries::from_coeffs(c.iter().map(|&k| int(k)).collect(), order, &int(0))
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = s(&[1, -1], 6);
        assert_eq!(one_minus_z.inv_unit().unwrap(), s(&[1, 1, 1, 1, 1, 1, 1], 6));
        assert!(s(&[2, 1], 3).inv_unit().is_err());
    }

    #[test]
    fn multiplication_truncates() {
        let a = s(&[1, 1], 2);
        assert_eq!(a.mul(&a).mul(&a), s(&[1, 3, 3], 2));
    }

    #[test]
    fn shifts() {
        let a = s(&[0, 0, 3, 4], 3);
        assert_eq!(a.shift_down(2).unwrap(), s(&[3, 4], 1));
        assert_eq!(a.shift_down(3), Err(Error::NonZeroRemainder));
        assert_eq!(s(&[1, 2, 3], 2).shift_up(1), s(&[0, 1, 2], 2));
    }

    #[test]
    fn horner_composition() {
        // (1 + z)^2 - 1 via p(x) = x^2 + 2x
        let z = TruncatedSeries::variable(3, &int(0));
        let p = UniPoly::from_ints(&[0, 2, 1]);
        assert_eq!(z.compose_poly(&p), s(&[0, 2, 1], 3));
    }
}
