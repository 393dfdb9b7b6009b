//! Sturm sequences and certified real-root isolation over the rationals.

use num_traits::{One, Signed, Zero};

use super::ring::sign_of;
use super::scalar::{simplest_between, ExactScalar};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// A half-open interval `(lo, hi]` holding exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: ExactScalar,
    pub hi: ExactScalar,
}

impl RootInterval {
    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> ExactScalar {
        (&self.lo + &self.hi) / ExactScalar::from_integer(2.into())
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<UniPoly<ExactScalar>>,
}

impl SturmSequence {
    /// Built from the squarefree part of `p`, so repeated roots count once.
    pub fn new(p: &UniPoly<ExactScalar>) -> Result<Self> {
        let p = p.squarefree_part()?;
        let mut chain = vec![p.clone()];
        let mut prev = p.clone();
        let mut cur = p.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let next = prev.rem(&cur)?.neg();
            prev = cur;
            cur = next;
        }
        Ok(SturmSequence { chain })
    }

    pub fn polynomial(&self) -> &UniPoly<ExactScalar> {
        &self.chain[0]
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &ExactScalar) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for q in &self.chain {
            let s = sign_of(&q.eval(x));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &ExactScalar, b: &ExactScalar) -> Result<usize> {
        if a >= b {
            return Err(Error::DegenerateInterval);
        }
        Ok(self.variations(a) - self.variations(b))
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &UniPoly<ExactScalar>, a: &ExactScalar, b: &ExactScalar) -> Result<usize> {
    if a >= b {
        return Err(Error::DegenerateInterval);
    }
    if p.is_zero() {
        return Err(Error::InvalidParameter("Sturm count of the zero polynomial".into()));
    }
    SturmSequence::new(p)?.count(a, b)
}

/// `1 + max |a_i / a_d|`: every complex root has modulus below this.
pub fn cauchy_bound(p: &UniPoly<ExactScalar>) -> ExactScalar {
    let lead = match p.leading() {
        Some(l) => l.abs(),
        None => return ExactScalar::zero(),
    };
    let d = p.degree().unwrap();
    let max = p.coeffs()[..d].iter().map(|a| a.abs() / &lead).max().unwrap_or_else(ExactScalar::zero);
    ExactScalar::one() + max
}

/// Disjoint intervals, in increasing order, each isolating one real root.
pub fn isolate_real_roots(p: &UniPoly<ExactScalar>) -> Result<Vec<RootInterval>> {
    match p.degree() {
        None => return Err(Error::InvalidParameter("isolating roots of the zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        _ => {}
    }
    let seq = SturmSequence::new(p)?;
    let b = cauchy_bound(seq.polynomial());
    let mut out = Vec::new();
    isolate_in(&seq, -b.clone(), b, &mut out)?;
    Ok(out)
}

/// Isolating intervals for the roots in `(lo, hi]` only.
pub fn isolate_real_roots_in(
    p: &UniPoly<ExactScalar>,
    lo: &ExactScalar,
    hi: &ExactScalar,
) -> Result<Vec<RootInterval>> {
    if lo >= hi {
        return Err(Error::DegenerateInterval);
    }
    let seq = SturmSequence::new(p)?;
    let mut out = Vec::new();
    isolate_in(&seq, lo.clone(), hi.clone(), &mut out)?;
    Ok(out)
}

fn isolate_in(seq: &SturmSequence, lo: ExactScalar, hi: ExactScalar, out: &mut Vec<RootInterval>) -> Result<()> {
    let n = seq.count(&lo, &hi)?;
    match n {
        0 => {}
        1 => out.push(RootInterval { lo, hi }),
        _ => {
            let mid = (&lo + &hi) / ExactScalar::from_integer(2.into());
            isolate_in(seq, lo, mid.clone(), out)?;
            isolate_in(seq, mid, hi, out)?;
        }
    }
    Ok(())
}

/// Bisects an isolating interval of `p` until its width is at most `width`.
///
/// Stops early, with `lo == hi`, when a bisection point is itself the root.
pub fn refine_root(p: &UniPoly<ExactScalar>, iv: &RootInterval, width: &ExactScalar) -> Result<RootInterval> {
    let sf = p.squarefree_part()?;
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    if sf.eval(&hi).is_zero() {
        return Ok(RootInterval { lo: hi.clone(), hi });
    }
    // The open end may be a neighbouring root, so compare against `hi`.
    let s_hi = sign_of(&sf.eval(&hi));
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / ExactScalar::from_integer(2.into());
        let s = sign_of(&sf.eval(&mid));
        if s == 0 {
            return Ok(RootInterval { lo: mid.clone(), hi: mid });
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RootInterval { lo, hi })
}

/// The root in `iv` when it is a rational; tries the simplest rational of the
/// interval after refining to `width`.
pub fn exact_rational_root(
    p: &UniPoly<ExactScalar>,
    iv: &RootInterval,
    width: &ExactScalar,
) -> Result<Option<ExactScalar>> {
    let r = refine_root(p, iv, width)?;
    if r.lo == r.hi {
        return Ok(Some(r.lo));
    }
    let guess = simplest_between(&r.lo, &r.hi);
    Ok(p.eval(&guess).is_zero().then_some(guess))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, ratio};

    fn p(c: &[i64]) -> UniPoly<ExactScalar> {
        UniPoly::from_ints(c)
    }

    #[test]
    fn counts_on_half_open_intervals() {
        let x2m2 = p(&[-2, 0, 1]);
        assert_eq!(sturm_count(&x2m2, &int(0), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&x2m2, &int(-2), &int(2)).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &int(-10), &int(10)).unwrap(), 0);
        // (x-1)(x-2): root at the right end counts, at the left end does not
        let q = p(&[2, -3, 1]);
        assert_eq!(sturm_count(&q, &int(0), &int(1)).unwrap(), 1);
        assert_eq!(sturm_count(&q, &int(1), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&q, &int(2), &int(3)).unwrap(), 0);
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &int(1), &int(1)), Err(Error::DegenerateInterval));
    }

    #[test]
    fn repeated_roots_counted_once() {
        let q = p(&[-1, 1]).pow(3).mul(&p(&[3, 1]));
        assert_eq!(sturm_count(&q, &int(-5), &int(5)).unwrap(), 2);
    }

    #[test]
    fn isolates_sqrt_two() {
        let ivs = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].hi <= ivs[1].lo);
        let eps = ratio(1, 1 << 20);
        let r = refine_root(&p(&[-2, 0, 1]), &ivs[1], &eps).unwrap();
        assert!(r.lo < r.hi && r.width() <= eps);
        assert!(&r.lo * &r.lo < int(2) && &r.hi * &r.hi > int(2));
        assert!(isolate_real_roots(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn recovers_rational_root_of_linear_factor() {
        // 36(nu^2-1)^2 z - 3 nu^2 + 8 at nu = 4
        let q = p(&[-40, 8100]);
        let ivs = isolate_real_roots(&q).unwrap();
        assert_eq!(ivs.len(), 1);
        let r = exact_rational_root(&q, &ivs[0], &ratio(1, 1 << 30)).unwrap();
        assert_eq!(r, Some(ratio(2, 405)));
    }
}
