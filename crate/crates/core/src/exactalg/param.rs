use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::ring::{ExactDiv, Ring};
use super::scalar::{format_exact, int, ExactScalar};
use crate::error::{Error, Result};

/// Exponent pair `(deg_nu, deg_c)`; `deg_c` may be negative.
pub type Monomial = (u32, i32);

/// Sparse polynomial in `nu` and Laurent polynomial in `c` over the rationals.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(q: ExactScalar) -> Self {
        Self::monomial(q, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(q: ExactScalar, nu_deg: u32, c_deg: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&q) {
            terms.insert((nu_deg, c_deg), q);
        }
        ParamPoly { terms }
    }

    pub fn nu() -> Self {
        Self::monomial(ExactScalar::one(), 1, 0)
    }

    pub fn c() -> Self {
        Self::monomial(ExactScalar::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Self {
        let mut out = Self::zero();
        for (m, q) in terms {
            out.add_term(m, &q);
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, nu_deg: u32, c_deg: i32) -> ExactScalar {
        self.terms.get(&(nu_deg, c_deg)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    fn add_term(&mut self, m: Monomial, q: &ExactScalar) {
        if Zero::is_zero(q) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(q.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// Leading monomial in lex order (`nu` first, then `c`).
    pub fn leading(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn nu_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    /// `(min deg_c, max deg_c)`.
    pub fn c_degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|m| m.1).min()?;
        let hi = self.terms.keys().map(|m| m.1).max()?;
        Some((lo, hi))
    }

    pub fn scale(&self, q: &ExactScalar) -> Self {
        if Zero::is_zero(q) {
            return Self::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * q)).collect() }
    }

    /// Multiplication by `nu^a c^b`.
    pub fn shift(&self, nu_deg: u32, c_deg: i32) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(m, a)| ((m.0 + nu_deg, m.1 + c_deg), a.clone())).collect() }
    }

    /// Evaluation at a rational point; `c` must be nonzero when negative
    /// powers of `c` occur.
    pub fn eval(&self, nu: &ExactScalar, c: &ExactScalar) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        let c_inv = if Zero::is_zero(c) { None } else { Some(c.recip()) };
        for ((a, b), q) in &self.terms {
            let nu_pow = num_traits::pow(nu.clone(), *a as usize);
            let c_pow = if *b >= 0 {
                num_traits::pow(c.clone(), *b as usize)
            } else {
                let inv = c_inv.clone().ok_or(Error::DivisionByZero)?;
                num_traits::pow(inv, b.unsigned_abs() as usize)
            };
            acc += q * nu_pow * c_pow;
        }
        Ok(acc)
    }

    /// The Euler operator `c d/dc`: maps `nu^a c^b` to `b nu^a c^b`.
    pub fn c_theta(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, q)| (*m, q * ExactScalar::from_integer(m.1.into()))))
    }

    /// Partial derivative in `nu`.
    pub fn d_nu(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.0 > 0)
                .map(|(m, q)| ((m.0 - 1, m.1), q * ExactScalar::from_integer(m.0.into()))),
        )
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms.values().all(|q| q.is_integer() && !q.is_negative())
    }

    /// True when every coefficient is nonnegative.
    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|q| !q.is_negative())
    }

    /// Exact division in `Q[nu, c, 1/c]`.
    ///
    /// Uses lex-leading-term reduction; `c` is a unit, so only the `nu`
    /// degree has to be divisible. The quotient's `c` degrees are bounded by
    /// the supports of numerator and divisor, which guarantees termination
    /// on inexact inputs.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let ((dn, dc), dq) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let (dn, dc, dq) = (*dn, *dc, dq.clone());
        if self.is_empty() {
            return Ok(Self::zero());
        }
        let (num_lo, _) = self.c_degree_range().unwrap();
        let (div_lo, _) = divisor.c_degree_range().unwrap();
        let c_floor = num_lo - div_lo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((rn, rc), rq)) = rem.leading().map(|(m, q)| (*m, q.clone())) {
            if rn < dn || rc - dc < c_floor {
                return Err(Error::NonZeroRemainder);
            }
            let t = Self::monomial(rq / &dq, rn - dn, rc - dc);
            rem = rem.sub(&divisor.mul(&t));
            quot = quot.add(&t);
        }
        Ok(quot)
    }
}

impl Ring for ParamPoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(*m, q);
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(*m, &-q);
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), q1) in &self.terms {
            for ((a2, b2), q2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(q1 * q2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(m, q)| (*m, -q)).collect() }
    }
    fn scalar_like(&self, q: &ExactScalar) -> Self {
        Self::constant(q.clone())
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(&int(k))
    }
}

impl ExactDiv for ParamPoly {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        ParamPoly::exact_div(self, divisor)
    }
}

/// Canonical string: terms by decreasing `nu` degree then decreasing `c`
/// degree, e.g. `9*nu^4*c^2 + 8*nu^2 + 1`.
impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), q)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if q.is_negative() { (true, -q) } else { (false, q.clone()) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !One::is_one(&mag) || (*a == 0 && *b == 0) {
                factors.push(format_exact(&mag));
            }
            match a {
                0 => {}
                1 => factors.push("nu".to_string()),
                _ => factors.push(format!("nu^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("c".to_string()),
                _ => factors.push(format!("c^{b}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_nu2() -> ParamPoly {
        ParamPoly::one().sub(&ParamPoly::nu().mul(&ParamPoly::nu()))
    }

    #[test]
    fn divides_out_common_factor() {
        // ((1 - nu^2)(3 + nu)) / (1 - nu^2) = 3 + nu
        let w = one_minus_nu2();
        let f = ParamPoly::int(3).add(&ParamPoly::nu());
        assert_eq!(w.mul(&f).exact_div(&w).unwrap(), f);
    }

    #[test]
    fn laurent_division_and_inexact_detection() {
        let c = ParamPoly::c();
        let cinv = ParamPoly::monomial(ExactScalar::one(), 0, -1);
        let d = ParamPoly::one().add(&cinv);
        let f = c.add(&ParamPoly::int(2)).mul(&d);
        assert_eq!(f.exact_div(&d).unwrap(), c.add(&ParamPoly::int(2)));
        assert_eq!(ParamPoly::one().exact_div(&d), Err(Error::NonZeroRemainder));
        assert_eq!(ParamPoly::one().exact_div(&ParamPoly::nu()), Err(Error::NonZeroRemainder));
    }

    #[test]
    fn canonical_display() {
        let nu = ParamPoly::nu();
        let c = ParamPoly::c();
        let z2 = ParamPoly::int(9)
            .mul(&nu.pow(4))
            .mul(&c.pow(2))
            .add(&ParamPoly::int(8).mul(&nu.pow(2)))
            .add(&ParamPoly::one());
        assert_eq!(z2.to_string(), "9*nu^4*c^2 + 8*nu^2 + 1");
        let t = ParamPoly::monomial(-int(2), 2, -1);
        assert_eq!(t.to_string(), "-2*nu^2*c^-1");
    }

    #[test]
    fn euler_operator_on_laurent_terms() {
        let t = ParamPoly::monomial(int(3), 2, -2).add(&ParamPoly::monomial(int(1), 0, 3));
        let expected = ParamPoly::monomial(int(-6), 2, -2).add(&ParamPoly::monomial(int(3), 0, 3));
        assert_eq!(t.c_theta(), expected);
    }
}
