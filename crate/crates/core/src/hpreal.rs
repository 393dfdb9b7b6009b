//! Fixed-precision binary floating point over astro-float.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{ExactScalar, Field, Ring};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// A real number carried at a working precision of `prec` bits.
///
/// Binary operations run at the larger of the two precisions.
#[derive(Clone, Debug)]
pub struct HpReal {
    v: BigFloat,
    prec: usize,
}

fn words_to_biguint(words: &[Word]) -> BigUint {
    #[cfg(not(target_pointer_width = "32"))]
    {
        let digits: Vec<u32> = words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
        BigUint::new(digits)
    }
    #[cfg(target_pointer_width = "32")]
    {
        BigUint::from_slice(words)
    }
}

fn biguint_to_words(n: &BigUint) -> Vec<Word> {
    #[cfg(not(target_pointer_width = "32"))]
    {
        n.to_u64_digits()
    }
    #[cfg(target_pointer_width = "32")]
    {
        n.to_u32_digits()
    }
}

/// Exact conversion of an integer (its bit length becomes the precision).
fn bigint_to_float(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, WORD_BIT_SIZE);
    }
    let words = biguint_to_words(n.magnitude());
    let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
    BigFloat::from_words(&words, sign, (words.len() * WORD_BIT_SIZE) as i32)
}

impl HpReal {
    pub fn from_rational(q: &ExactScalar, prec: usize) -> Self {
        let n = bigint_to_float(q.numer());
        let d = bigint_to_float(q.denom());
        HpReal { v: n.div(&d, prec, RM), prec }
    }

    pub fn from_i64(k: i64, prec: usize) -> Self {
        Self::from_rational(&ExactScalar::from_integer(k.into()), prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        HpReal { v: BigFloat::from_f64(x, prec), prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Same value carried at a new working precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut v = self.v.clone();
        if prec < self.prec {
            // Rounding failure only occurs for NaN/inf, which stay as they are.
            let _ = v.set_precision(prec, RM);
        }
        HpReal { v, prec }
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    /// Exact rational value of the stored binary number.
    pub fn to_rational(&self) -> Option<ExactScalar> {
        if self.v.is_zero() {
            return Some(ExactScalar::zero());
        }
        let (words, _, sign, e, _) = self.v.as_raw_parts()?;
        let m = BigInt::from(words_to_biguint(words));
        let shift = e as i64 - (words.len() * WORD_BIT_SIZE) as i64;
        let mag = if shift >= 0 {
            ExactScalar::from_integer(m << shift as usize)
        } else {
            ExactScalar::new(m, BigInt::from(1) << (-shift) as usize)
        };
        Some(if sign == Sign::Neg { -mag } else { mag })
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let (words, _, sign, e, _) = self.v.as_raw_parts().unwrap();
        // Top 64 bits of the normalized mantissa, as a fraction in [1/2, 1).
        let mut frac = 0.0f64;
        let mut scale = 1.0f64;
        for w in words.iter().rev().take(128 / WORD_BIT_SIZE) {
            scale /= 2f64.powi(WORD_BIT_SIZE as i32);
            frac += *w as f64 * scale;
        }
        let mag = if e > 1023 {
            f64::INFINITY
        } else if e < -1074 {
            0.0
        } else {
            frac * 2f64.powi(e)
        };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Binary exponent `e` with the value in `[2^(e-1), 2^e)` in magnitude.
    pub fn exponent(&self) -> Option<i32> {
        self.v.exponent()
    }

    pub fn abs(&self) -> Self {
        HpReal { v: self.v.abs(), prec: self.prec }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.v.is_negative() {
            return Err(Error::InvalidParameter("square root of a negative number".into()));
        }
        Ok(HpReal { v: self.v.sqrt(self.prec, RM), prec: self.prec })
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.v.is_positive() || self.v.is_zero() {
            return Err(Error::InvalidParameter("logarithm of a non-positive number".into()));
        }
        let v = CONSTS.with(|cc| self.v.ln(self.prec, RM, &mut cc.borrow_mut()));
        Ok(HpReal { v, prec: self.prec })
    }

    pub fn exp(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.exp(self.prec, RM, &mut cc.borrow_mut()));
        HpReal { v, prec: self.prec }
    }

    /// `self^y` for `self > 0`.
    pub fn powf(&self, y: &Self) -> Result<Self> {
        Ok(self.ln()?.mul(y).exp())
    }

    pub fn sign(&self) -> i8 {
        if self.v.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }

    /// True when `|self - other| <= 2^-bits * max(|self|, |other|)`.
    pub fn agrees_to_bits(&self, other: &Self, bits: usize) -> bool {
        let diff = Ring::sub(self, other).abs();
        if diff.v.is_zero() {
            return true;
        }
        let scale = if self.abs() > other.abs() { self.abs() } else { other.abs() };
        match (diff.exponent(), scale.exponent()) {
            (Some(de), Some(se)) => (se as i64 - de as i64) > bits as i64,
            _ => false,
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self.to_rational() {
            Some(q) => rational_to_decimal(&q, digits),
            None => format!("{}", self.to_f64()),
        }
    }
}

/// Scientific-notation string of a rational with `digits` significant digits.
pub fn rational_to_decimal(q: &ExactScalar, digits: usize) -> String {
    if Zero::is_zero(q) {
        return "0".into();
    }
    let neg = q.is_negative();
    let mag = q.abs();
    let ten = ExactScalar::from_integer(10.into());
    // Find k with 10^k <= mag < 10^(k+1).
    let approx = mag.numer().bits() as f64 - mag.denom().bits() as f64;
    let mut k = (approx * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> ExactScalar {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    while pow10(k) > mag {
        k -= 1;
    }
    while pow10(k + 1) <= mag {
        k += 1;
    }
    let scaled = (&mag / pow10(k - digits as i64 + 1)).round().to_integer();
    let mut s = scaled.to_string();
    if s.len() > digits {
        // Rounding carried into a new leading digit.
        s.truncate(digits);
        k += 1;
    }
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    let sign = if neg { "-" } else { "" };
    if k == 0 {
        format!("{sign}{body}")
    } else {
        format!("{sign}{body}e{k}")
    }
}

impl PartialEq for HpReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.partial_cmp(&other.v) == Some(Ordering::Equal)
    }
}

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_decimal(digits.clamp(1, 60)))
    }
}

impl Ring for HpReal {
    fn zero_like(&self) -> Self {
        HpReal { v: BigFloat::from_word(0, self.prec), prec: self.prec }
    }
    fn one_like(&self) -> Self {
        HpReal { v: BigFloat::from_word(1, self.prec), prec: self.prec }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        HpReal { v: self.v.add(&rhs.v, p, RM), prec: p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        HpReal { v: self.v.sub(&rhs.v, p, RM), prec: p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        HpReal { v: self.v.mul(&rhs.v, p, RM), prec: p }
    }
    fn neg(&self) -> Self {
        HpReal { v: self.v.neg(), prec: self.prec }
    }
    fn scalar_like(&self, q: &ExactScalar) -> Self {
        HpReal::from_rational(q, self.prec)
    }
}

impl Field for HpReal {
    fn inv(&self) -> Result<Self> {
        if self.v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(HpReal { v: self.v.reciprocal(self.prec, RM), prec: self.prec })
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec.max(rhs.prec);
        Ok(HpReal { v: self.v.div(&rhs.v, p, RM), prec: p })
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&HpReal> for &HpReal {
            type Output = HpReal;
            fn $m(self, rhs: &HpReal) -> HpReal {
                Ring::$m(self, rhs)
            }
        }
        impl std::ops::$tr<HpReal> for HpReal {
            type Output = HpReal;
            fn $m(self, rhs: HpReal) -> HpReal {
                Ring::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&HpReal> for HpReal {
            type Output = HpReal;
            fn $m(self, rhs: &HpReal) -> HpReal {
                Ring::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<HpReal> for &HpReal {
            type Output = HpReal;
            fn $m(self, rhs: HpReal) -> HpReal {
                Ring::$m(self, &rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl std::ops::Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        Ring::neg(&self)
    }
}

impl std::ops::Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        Ring::neg(self)
    }
}
