//! Newton polygon iteration for Puiseux expansions at a point of a plane curve.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::charpoly::primitive_poly;
use super::roots::clustered_roots;
use crate::error::{Error, Result};
use crate::exactalg::scalar::to_f64;
use crate::exactalg::{int, ExactScalar, UniPoly};
use crate::series::IsingParams;

/// Relative size below which an iterated coefficient counts as zero.
const DROP: f64 = 1e-10;
/// Relative distance under which edge-polynomial roots are merged.
const CLUSTER: f64 = 1e-5;
/// Relative tolerance of the substitution check.
const RESIDUAL: f64 = 1e-7;

/// `sum a_ij Z^i Y^j` with complex coefficients, keyed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl BivariatePoly {
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), Complex64)>) -> Self {
        let mut p = BivariatePoly::default();
        for (k, c) in terms {
            *p.terms.entry(k).or_default() += c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    /// From real coefficients.
    pub fn from_real(terms: impl IntoIterator<Item = ((u32, u32), f64)>) -> Self {
        Self::new(terms.into_iter().map(|(k, c)| (k, Complex64::new(c, 0.0))))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex64 {
        self.terms.get(&(i, j)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients below `rel` times the largest one.
    fn cleaned(mut self, rel: f64) -> Self {
        let cut = rel * self.max_norm();
        self.terms.retain(|_, c| c.norm() > cut);
        self
    }

    /// Smallest `Z`-exponent for each `Y`-exponent present.
    fn lowest_z(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &(i, j) in self.terms.keys() {
            m.entry(j).and_modify(|v: &mut u32| *v = (*v).min(i)).or_insert(i);
        }
        m
    }

    /// `P(T^q, T^p (alpha + Y)) / T^shift`.
    fn substitute(&self, q: u32, p: u32, shift: u32, alpha: Complex64) -> Self {
        let mut out: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(i, j), &a) in &self.terms {
            let e = q * i + p * j - shift;
            // (alpha + Y)^j by the binomial theorem
            let mut binom = 1.0;
            for k in 0..=j {
                let c = a * binom * alpha.powu(j - k);
                *out.entry((e, k)).or_default() += c;
                binom = binom * (j - k) as f64 / (k + 1) as f64;
            }
        }
        BivariatePoly { terms: out }.cleaned(DROP)
    }
}

/// One term `coef * Z^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PuiseuxTerm {
    pub coef: Complex64,
    pub exponent: Rational64,
}

/// A branch `Y = sum coef_k Z^(e_k)` through the origin, shifted to `center`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxExpansion {
    pub center: f64,
    pub terms: Vec<PuiseuxTerm>,
    /// `kappa`: every exponent is a multiple of `1 / kappa`.
    pub ramification: u32,
    /// True when the iteration found the remainder to vanish identically.
    pub terminated: bool,
}

impl PuiseuxExpansion {
    pub fn leading_exponent(&self) -> Option<Rational64> {
        self.terms.first().map(|t| t.exponent)
    }

    /// Smallest exponent that is not an integer.
    pub fn singular_exponent(&self) -> Option<Rational64> {
        self.terms.iter().map(|t| t.exponent).find(|e| !e.is_integer())
    }
}

struct Branch {
    terms: Vec<PuiseuxTerm>,
    /// The current variable is `Z^(1/den)`.
    den: u32,
    /// The original `Y` is `T^offset` times the current `Y`.
    offset: u32,
}

/// Edges of the lower Newton polygon with negative slope, as
/// `(j_start, j_end, p, q)` where `gamma = p / q > 0`.
fn edges(lowest: &BTreeMap<u32, u32>) -> Vec<(u32, u32, u32, u32)> {
    let pts: Vec<(u32, u32)> = lowest.iter().map(|(&j, &i)| (j, i)).collect();
    let mut out = Vec::new();
    let mut cur = 0;
    while cur + 1 < pts.len() {
        let (jc, ic) = pts[cur];
        // steepest descent, ties resolved towards the far end
        let mut best: Option<(usize, Rational64)> = None;
        for (k, &(j, i)) in pts.iter().enumerate().skip(cur + 1) {
            let slope = Rational64::new(i as i64 - ic as i64, (j - jc) as i64);
            if best.is_none_or(|(_, s)| slope <= s) {
                best = Some((k, slope));
            }
        }
        let (k, slope) = best.expect("at least one later point");
        if !slope.is_negative() {
            break;
        }
        let gamma = -slope;
        out.push((jc, pts[k].0, *gamma.numer() as u32, *gamma.denom() as u32));
        cur = k;
    }
    out
}

fn iterate(
    p: &BivariatePoly,
    branch: Branch,
    remaining: usize,
    out: &mut Vec<(Vec<PuiseuxTerm>, u32, bool)>,
) -> Result<()> {
    if remaining == 0 {
        out.push((branch.terms, branch.den, false));
        return Ok(());
    }
    if p.is_zero() {
        return Err(Error::DegenerateBranch);
    }
    let lowest = p.lowest_z();
    let found = edges(&lowest);
    let terminated = !lowest.contains_key(&0);
    if terminated {
        // Y divides P: the current remainder may vanish identically.
        out.push((branch.terms.clone(), branch.den, true));
    } else if found.is_empty() {
        return Err(Error::DegenerateBranch);
    }
    for (ja, jb, gp, gq) in found {
        let shift = gq * lowest[&ja] + gp * ja;
        let edge: Vec<Complex64> = (ja..=jb)
            .map(|j| match lowest.get(&j) {
                Some(&i) if gq * i + gp * j == shift => p.coeff(i, j),
                _ => Complex64::zero(),
            })
            .collect();
        for (alpha, _) in clustered_roots(&edge, CLUSTER) {
            if alpha.norm() <= f64::EPSILON * edge.iter().map(|c| c.norm()).fold(0.0, f64::max) {
                continue;
            }
            let next = p.substitute(gq, gp, shift, alpha);
            let den = branch.den * gq;
            let offset = branch.offset * gq + gp;
            let mut terms: Vec<PuiseuxTerm> =
                branch.terms.iter().map(|t| PuiseuxTerm { coef: t.coef, exponent: t.exponent }).collect();
            terms.push(PuiseuxTerm { coef: alpha, exponent: Rational64::new(offset as i64, den as i64) });
            iterate(&next, Branch { terms, den, offset }, remaining - 1, out)?;
        }
    }
    Ok(())
}

/// Truncated power series in `T` up to degree `n`.
fn series_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Checks `P(Z, y(Z)) = O(Z^(last + 1/kappa))` by formal substitution
/// `Z = T^kappa`; returns the first failing order in `T`, if any.
pub fn residual_failure(p: &BivariatePoly, e: &PuiseuxExpansion) -> Option<usize> {
    let kappa = e.ramification as i64;
    let last = e.terms.last().map_or(Rational64::zero(), |t| t.exponent);
    let n = (last * kappa).to_integer() as usize;
    let mut y = vec![Complex64::zero(); n + 1];
    let mut y_abs = vec![Complex64::zero(); n + 1];
    for t in &e.terms {
        let k = (t.exponent * kappa).to_integer() as usize;
        if k <= n {
            y[k] += t.coef;
            y_abs[k] += t.coef.norm();
        }
    }
    let mut res = vec![Complex64::zero(); n + 1];
    let mut scale = vec![Complex64::zero(); n + 1];
    let max_j = p.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
    let mut pow = vec![vec![Complex64::zero(); n + 1]];
    pow[0][0] = Complex64::new(1.0, 0.0);
    let mut pow_abs = pow.clone();
    for j in 1..=max_j as usize {
        pow.push(series_mul(&pow[j - 1], &y, n));
        pow_abs.push(series_mul(&pow_abs[j - 1], &y_abs, n));
    }
    for (&(i, j), a) in &p.terms {
        let sh = i as usize * kappa as usize;
        for k in sh..=n {
            res[k] += a * pow[j as usize][k - sh];
            scale[k] += a.norm() * pow_abs[j as usize][k - sh];
        }
    }
    (0..=n).find(|&k| res[k].norm() > RESIDUAL * scale[k].norm().max(f64::MIN_POSITIVE))
}

/// All branches of `P(Z, Y) = 0` with `Y -> 0` as `Z -> 0`, each carried to
/// `max_terms` terms, or fewer when the remainder vanishes.
pub fn newton_polygon_expand(p: &BivariatePoly, max_terms: usize) -> Result<Vec<PuiseuxExpansion>> {
    let p = p.clone().cleaned(DROP);
    let scale = p.max_norm();
    if p.coeff(0, 0).norm() > DROP * scale {
        return Err(Error::InvalidParameter("the curve does not pass through the origin".into()));
    }
    let mut p = p;
    p.terms.remove(&(0, 0));
    let mut raw = Vec::new();
    iterate(&p, Branch { terms: Vec::new(), den: 1, offset: 0 }, max_terms.max(1), &mut raw)?;
    let mut out = Vec::with_capacity(raw.len());
    for (terms, den, terminated) in raw {
        if terms.is_empty() {
            // the branch Y = 0 itself
            out.push(PuiseuxExpansion { center: 0.0, terms, ramification: 1, terminated });
            continue;
        }
        let kappa = terms.iter().fold(1i64, |k, t| num_integer::lcm(k, *t.exponent.denom()));
        debug_assert!(den as i64 % kappa == 0);
        let e = PuiseuxExpansion { center: 0.0, terms, ramification: kappa as u32, terminated };
        if let Some(order) = residual_failure(&p, &e) {
            return Err(Error::ResidualCheck { order });
        }
        out.push(e);
    }
    Ok(out)
}

/// Relative size below which an exact coefficient of the shifted curve is
/// treated as zero; covers the error of a rational approximation of `s`.
pub const EXACT_DROP_BITS: u32 = 80;

/// The primitive cancelling polynomial of `S` shifted to `(rho, s)` and
/// normalized: `Z = 1 - z / rho`, `Y = S / s - 1`. `rho` is taken as `z(s)`
/// so the curve passes through the origin exactly. Returns the polynomial and
/// `rho`.
pub fn shifted_curve(params: &IsingParams, s: &ExactScalar) -> Result<(BivariatePoly, ExactScalar)> {
    let f = primitive_poly(params)?;
    let a_s = f.a.eval(s);
    if a_s.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let rho = f.b.eval(s) / &a_s;
    let sub = UniPoly::new(vec![s.clone(), s.clone()]);
    let a = f.a.compose(&sub);
    let b = f.b.compose(&sub);
    let zero = int(0);
    let mut exact: Vec<((u32, u32), ExactScalar)> = Vec::new();
    let len = a.coeffs().len().max(b.coeffs().len());
    for j in 0..len {
        let aj = a.coeff(j).cloned().unwrap_or_else(|| zero.clone());
        let bj = b.coeff(j).cloned().unwrap_or_else(|| zero.clone());
        // A(S) rho (1 - Z) - B(S)
        exact.push(((0, j as u32), &aj * &rho - bj));
        exact.push(((1, j as u32), -(aj * &rho)));
    }
    let max = exact.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(|| zero.clone());
    if max.is_zero() {
        return Err(Error::DegenerateBranch);
    }
    let cut = &max * crate::exactalg::scalar::dyadic_eps(EXACT_DROP_BITS);
    let terms = exact.into_iter().filter(|(_, c)| c.abs() > cut).map(|(k, c)| (k, to_f64(&(c / &max))));
    Ok((BivariatePoly::from_real(terms), rho))
}

/// Branches of `S(z) - s` in powers of `1 - z / rho` at the point where
/// `S = s`, `s` rational (possibly an approximation of an irrational point).
pub fn expand_s(params: &IsingParams, s: &ExactScalar, max_terms: usize) -> Result<Vec<PuiseuxExpansion>> {
    let (curve, rho) = shifted_curve(params, s)?;
    let s_f = to_f64(s);
    let centre = to_f64(&rho);
    Ok(newton_polygon_expand(&curve, max_terms)?
        .into_iter()
        .map(|mut e| {
            e.center = centre;
            for t in &mut e.terms {
                t.coef *= s_f;
            }
            e
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn square_root() {
        let p = BivariatePoly::from_real([((0, 2), 1.0), ((1, 0), -1.0)]);
        let b = newton_polygon_expand(&p, 3).unwrap();
        assert_eq!(b.len(), 2);
        for e in &b {
            assert_eq!(e.leading_exponent(), Some(r(1, 2)));
            assert_eq!(e.ramification, 2);
            assert!(e.terminated);
        }
        let sum: Complex64 = b.iter().map(|e| e.terms[0].coef).sum();
        assert!(sum.norm() < 1e-14);
    }

    #[test]
    fn cube_root() {
        let p = BivariatePoly::from_real([((0, 3), 1.0), ((1, 0), -1.0)]);
        let b = newton_polygon_expand(&p, 2).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|e| e.leading_exponent() == Some(r(1, 3))));
    }

    #[test]
    fn two_term_branch() {
        // Y = Z + Z^(3/2) is a root of (Y - Z)^2 - Z^3
        let p = BivariatePoly::from_real([((0, 2), 1.0), ((1, 1), -2.0), ((2, 0), 1.0), ((3, 0), -1.0)]);
        let b = newton_polygon_expand(&p, 4).unwrap();
        assert_eq!(b.len(), 2);
        for e in &b {
            assert_eq!(e.terms[0].exponent, r(1, 1));
            assert!((e.terms[0].coef - Complex64::new(1.0, 0.0)).norm() < 1e-6);
            assert_eq!(e.singular_exponent(), Some(r(3, 2)));
        }
    }

    #[test]
    fn y_independent_factor_is_degenerate() {
        // Z (1 + Y): no branch through the origin
        let p = BivariatePoly::from_real([((1, 0), 1.0), ((1, 1), 1.0)]);
        assert_eq!(newton_polygon_expand(&p, 3), Err(Error::DegenerateBranch));
    }

    #[test]
    fn cube_root_at_nu_star() {
        let params = IsingParams::exact(int(4), int(1)).unwrap();
        let b = expand_s(&params, &ratio(1, 45), 4).unwrap();
        assert!(!b.is_empty());
        assert!(b.iter().all(|e| e.leading_exponent() == Some(r(1, 3))));
        assert!((b[0].center - 2.0 / 405.0).abs() < 1e-18);
        // exactly one real branch
        let real = b.iter().filter(|e| e.terms[0].coef.im.abs() < 1e-9).count();
        assert_eq!(real, 1);
    }

    #[test]
    fn square_root_at_nu_five() {
        let params = IsingParams::exact(int(5), int(1)).unwrap();
        let b = expand_s(&params, &ratio(1, 72), 4).unwrap();
        assert!(b.iter().all(|e| e.leading_exponent() == Some(r(1, 2))));
    }
}
