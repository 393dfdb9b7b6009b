use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational: the base field of every exact computation.
///
/// `BigRational` keeps the denominator positive and the fraction reduced
/// after every operation.
pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> ExactScalar {
    ExactScalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"3"`, `"-3/4"`, `"1.05"`, `"1e-4"` or `"2.5E3"` exactly, with no
/// binary floating-point round trip.
pub fn parse_exact(text: &str) -> Result<ExactScalar> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse {text:?} as an exact rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_exact(num)?;
        let den = parse_exact(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|ch| ch.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let mut value = ExactScalar::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac.len() as i64;
    let ten = ExactScalar::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_exact(q: &ExactScalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &ExactScalar) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite `f64`.
pub fn from_f64(x: f64) -> Option<ExactScalar> {
    ExactScalar::from_float(x)
}

/// Square root when `q` is the square of a rational.
pub fn exact_sqrt(q: &ExactScalar) -> Option<ExactScalar> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(ExactScalar::new(root(q.numer())?, root(q.denom())?))
}

/// Rational with the smallest denominator in the closed interval `[lo, hi]`
/// (Stern-Brocot descent).
pub fn simplest_between(lo: &ExactScalar, hi: &ExactScalar) -> ExactScalar {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return ExactScalar::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &ExactScalar, hi: &ExactScalar) -> ExactScalar {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    // An integer strictly inside (lo, hi]?
    if fl.clone() + ExactScalar::one() <= *hi {
        return fl + ExactScalar::one();
    }
    // Same integer part: recurse on the reciprocals of the fractional parts.
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

/// `2^-bits` as an exact scalar.
pub fn dyadic_eps(bits: u32) -> ExactScalar {
    ExactScalar::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Number of bits in the larger of numerator and denominator.
pub fn height_bits(q: &ExactScalar) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

/// Rounds to the nearest rational with denominator `2^bits`.
pub fn round_dyadic(q: &ExactScalar, bits: u32) -> ExactScalar {
    let scale = BigInt::one() << bits as usize;
    let scaled = q * ExactScalar::from_integer(scale.clone());
    ExactScalar::new(scaled.round().to_integer(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_forms_exactly() {
        assert_eq!(parse_exact("1.05").unwrap(), ratio(21, 20));
        assert_eq!(parse_exact("-0.9").unwrap(), ratio(-9, 10));
        assert_eq!(parse_exact("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_exact("1e-4").unwrap(), ratio(1, 10000));
        assert_eq!(parse_exact("2.5E3").unwrap(), int(2500));
        assert_eq!(parse_exact(".5").unwrap(), ratio(1, 2));
        assert!(parse_exact("abc").is_err());
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("").is_err());
    }

    #[test]
    fn formats_as_p_over_q() {
        assert_eq!(format_exact(&ratio(2, 405)), "2/405");
        assert_eq!(format_exact(&int(-7)), "-7");
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_between(&ratio(2, 91), &ratio(2, 89)), ratio(1, 45));
        assert_eq!(simplest_between(&ratio(1, 46), &ratio(1, 44)), ratio(1, 44));
        assert_eq!(simplest_between(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_between(&ratio(-4, 10), &ratio(-3, 10)), ratio(-1, 3));
        assert_eq!(simplest_between(&ratio(-1, 10), &ratio(3, 10)), int(0));
        assert_eq!(simplest_between(&ratio(7, 3), &ratio(7, 3)), ratio(7, 3));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
