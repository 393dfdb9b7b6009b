use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;

use super::charpoly::{char_factors, discriminant_in_z, primitive_poly};
use super::puiseux::{expand_s, PuiseuxExpansion};
use super::roots::clustered_roots;
use crate::error::{Error, Result};
use crate::exactalg::scalar::{dyadic_eps, to_f64};
use crate::exactalg::sturm::{cauchy_bound, exact_rational_root, isolate_real_roots_in, refine_root};
use crate::exactalg::{int, ratio, sturm_count, ExactScalar, RootInterval, UniPoly};
use crate::series::{IsingParams, Mode};

/// A closed interval `[lo, hi]` of rationals; a point when `lo == hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: ExactScalar,
    pub hi: ExactScalar,
}

impl Enclosure {
    pub fn point(x: ExactScalar) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn exact(&self) -> Option<&ExactScalar> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn mid(&self) -> ExactScalar {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.mid())
    }

    /// Multiplication by `k > 0`.
    pub fn scale(&self, k: &ExactScalar) -> Self {
        Enclosure { lo: &self.lo * k, hi: &self.hi * k }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusOptions {
    /// Target width of the `rho` enclosure.
    pub tol: ExactScalar,
    /// Half-width of the validated band around `c = 1`.
    pub validated_radius: ExactScalar,
    /// Proceed outside the band, with a warning.
    pub allow_outside: bool,
    pub puiseux_terms: usize,
    pub scan_uniqueness: bool,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        RadiusOptions {
            tol: dyadic_eps(40),
            validated_radius: ratio(1, 4),
            allow_outside: false,
            puiseux_terms: 3,
            scan_uniqueness: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub nu: ExactScalar,
    pub c: ExactScalar,
    /// `S(rho)`: an isolating interval of the smallest positive root of `Q2`.
    pub s_at_rho: Enclosure,
    /// Radius of convergence of `S` in `z`.
    pub rho: Enclosure,
    /// Radius of convergence of `Z` in `z`, exactly `c * rho`.
    pub mu: Enclosure,
    /// Singular exponent of `S` at `rho`.
    pub exponent: Rational64,
    /// No other discriminant root found on `|z| = rho`.
    pub uniqueness_checked: bool,
    /// Distinct roots of `Q2` in `(0, bound]`.
    pub root_count: usize,
    pub bound: ExactScalar,
    pub warnings: Vec<String>,
}

/// The a-priori bound `1 / (3 c^2 |1 - nu^2|)` on `S(rho)`, or the Cauchy
/// bound of `Q2` at `nu = 1`.
pub fn s_bound(params: &IsingParams) -> Result<ExactScalar> {
    let w = int(1) - &params.nu * &params.nu;
    if w.is_zero() {
        return Ok(cauchy_bound(&char_factors(&exact_point(params)?)?.q2));
    }
    let abs_w = if w < int(0) { -w } else { w };
    Ok((int(3) * &params.c * &params.c * abs_w).recip())
}

fn exact_point(params: &IsingParams) -> Result<IsingParams> {
    IsingParams::exact(params.nu.clone(), params.c.clone())
}

fn check_region(params: &IsingParams, opts: &RadiusOptions, warnings: &mut Vec<String>) -> Result<()> {
    let dev = &params.c - int(1);
    let dev = if dev < int(0) { -dev } else { dev };
    if dev <= opts.validated_radius {
        return Ok(());
    }
    if !opts.allow_outside {
        return Err(Error::OutsideValidatedRegion {
            nu: params.nu.to_string(),
            c: params.c.to_string(),
            radius: opts.validated_radius.to_string(),
        });
    }
    warnings.push(format!(
        "c = {} lies outside the validated band |c - 1| <= {}; uniqueness of the root is not guaranteed",
        params.c, opts.validated_radius
    ));
    Ok(())
}

/// `z(s)` and `z'(s)` from the primitive form `z = B(s) / A(s)`.
fn z_and_slope(
    a: &UniPoly<ExactScalar>,
    b: &UniPoly<ExactScalar>,
    s: &ExactScalar,
) -> Result<(ExactScalar, ExactScalar)> {
    let av = a.eval(s);
    if av.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let bv = b.eval(s);
    let slope = (b.derivative().eval(s) * &av - &bv * a.derivative().eval(s)) / (&av * &av);
    Ok((bv / av, slope))
}

/// Encloses `rho = z(s*)` for `s*` in `[lo, hi]`, assuming `z` is concave or
/// monotone there (true once the interval is small, `z'(s*) = 0`).
fn rho_enclosure(params: &IsingParams, iv: &RootInterval) -> Result<Enclosure> {
    let f = primitive_poly(params)?;
    let w = iv.width();
    let (zl, dl) = z_and_slope(&f.a, &f.b, &iv.lo)?;
    let (zh, dh) = z_and_slope(&f.a, &f.b, &iv.hi)?;
    let abs = |x: ExactScalar| if x < int(0) { -x } else { x };
    let up_l = &zl + abs(dl) * &w;
    let up_h = &zh + abs(dh) * &w;
    let lo = zl.min(zh);
    let hi = up_l.max(up_h);
    Ok(Enclosure { lo, hi })
}

/// Rational stand-in for `S(rho)` accurate to `2^-bits`.
fn s_sample(q2: &UniPoly<ExactScalar>, s: &Enclosure, bits: u32) -> Result<ExactScalar> {
    if let Some(x) = s.exact() {
        return Ok(x.clone());
    }
    let iv = RootInterval { lo: s.lo.clone(), hi: s.hi.clone() };
    Ok(refine_root(q2, &iv, &dyadic_eps(bits))?.midpoint())
}

/// Bits of the two rational approximations of `S(rho)` compared by the
/// exponent audit.
pub const EXPONENT_AUDIT_BITS: (u32, u32) = (160, 240);

/// Smallest non-integer exponent over the Puiseux branches of `S` at
/// `(rho, S(rho))`, agreeing at both audit precisions.
fn exponent_at(params: &IsingParams, q2: &UniPoly<ExactScalar>, s: &Enclosure, terms: usize) -> Result<Rational64> {
    let mut found = Vec::new();
    for bits in [EXPONENT_AUDIT_BITS.0, EXPONENT_AUDIT_BITS.1] {
        let x = s_sample(q2, s, bits)?;
        let branches = expand_s(params, &x, terms)?;
        let e = branches.iter().filter_map(|b| b.singular_exponent()).min().ok_or(Error::DegenerateBranch)?;
        found.push(e);
        if s.exact().is_some() {
            break;
        }
    }
    if found.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::PrecisionExhausted {
            index: 0,
            bits: EXPONENT_AUDIT_BITS.0 as usize,
            doubled: EXPONENT_AUDIT_BITS.1 as usize,
        });
    }
    Ok(found[0])
}

/// Relative gap within which another discriminant root counts as lying on
/// the circle of convergence.
pub const UNIQUENESS_GAP: f64 = 1e-6;
/// Roots closer than this to `rho` (relative) are `rho` itself.
const SAME_ROOT: f64 = 1e-9;

/// Moduli `|z_i| / rho` of the discriminant roots other than `rho`.
pub fn discriminant_moduli(params: &IsingParams, rho: &ExactScalar) -> Result<Vec<f64>> {
    // squarefree first: rho is a multiple root at c = 1
    let d = discriminant_in_z(&exact_point(params)?)?.squarefree_part()?;
    // polynomial in u = z / rho, normalized before leaving the rationals
    let mut pow = int(1);
    let scaled: Vec<ExactScalar> = d
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * &pow;
            pow = &pow * rho;
            v
        })
        .collect();
    let max = scaled.iter().map(|c| if *c < int(0) { -c.clone() } else { c.clone() }).max().unwrap_or_else(|| int(0));
    if max.is_zero() {
        return Err(Error::InvalidParameter("discriminant vanishes identically".into()));
    }
    let coeffs: Vec<Complex64> = scaled.iter().map(|c| Complex64::new(to_f64(&(c / &max)), 0.0)).collect();
    Ok(clustered_roots(&coeffs, SAME_ROOT)
        .into_iter()
        .map(|(u, _)| u)
        .filter(|u| (u - Complex64::new(1.0, 0.0)).norm() > SAME_ROOT)
        .map(|u| u.norm())
        .collect())
}

/// The root selection and `rho` enclosure without the exponent and scan.
#[derive(Clone, Debug, PartialEq)]
pub struct Located {
    pub q2: UniPoly<ExactScalar>,
    pub bound: ExactScalar,
    pub root_count: usize,
    pub s_at_rho: Enclosure,
    pub rho: Enclosure,
}

/// Smallest root of `Q2` in `(0, bound]` and `rho = z(S(rho))` enclosed to
/// width `tol`. No region check.
pub fn locate_rho(params: &IsingParams, tol: &ExactScalar) -> Result<Located> {
    if *tol <= int(0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let point = exact_point(params)?;
    let q2 = char_factors(&point)?.q2;
    let bound = s_bound(&point)?;
    let root_count = sturm_count(&q2, &int(0), &bound)?;
    if root_count == 0 {
        return Err(Error::NoRootInRange { count: 0 });
    }
    let first = isolate_real_roots_in(&q2, &int(0), &bound)?.remove(0);
    let (s_at_rho, rho) = match exact_rational_root(&q2, &first, &dyadic_eps(64))? {
        Some(s) => {
            let z = super::charpoly::lagrangian_z(&point, &s)?;
            (Enclosure::point(s), Enclosure::point(z))
        }
        None => {
            let mut width = tol.clone();
            let mut iv = first;
            let mut out = None;
            for _ in 0..64 {
                iv = refine_root(&q2, &iv, &width)?;
                let r = rho_enclosure(&point, &iv)?;
                if r.width() <= *tol {
                    out = Some((Enclosure { lo: iv.lo.clone(), hi: iv.hi.clone() }, r));
                    break;
                }
                width *= dyadic_eps(8);
            }
            out.ok_or(Error::PrecisionExhausted { index: 0, bits: 0, doubled: 0 })?
        }
    };
    Ok(Located { q2, bound, root_count, s_at_rho, rho })
}

/// Sturm-certified radius of convergence, its exponent and a uniqueness scan.
pub fn radius_numeric(params: &IsingParams, tol: &ExactScalar) -> Result<SingularityReport> {
    radius_with(params, &RadiusOptions { tol: tol.clone(), ..RadiusOptions::default() })
}

pub fn radius_with(params: &IsingParams, opts: &RadiusOptions) -> Result<SingularityReport> {
    params.validate()?;
    if params.mode == Mode::Symbolic {
        return Err(Error::InvalidParameter("the radius needs a point (nu, c)".into()));
    }
    let mut warnings = Vec::new();
    check_region(params, opts, &mut warnings)?;
    let point = exact_point(params)?;
    let loc = locate_rho(&point, &opts.tol)?;
    if loc.root_count > 1 {
        warnings.push(format!("Q2 has {} distinct roots in (0, {}]; the smallest is used", loc.root_count, loc.bound));
    }
    let Located { q2, bound, root_count, s_at_rho, rho } = loc;
    let mu = rho.scale(&params.c);
    let exponent = exponent_at(&point, &q2, &s_at_rho, opts.puiseux_terms)?;

    let uniqueness_checked = if opts.scan_uniqueness {
        let moduli = discriminant_moduli(&point, &rho.mid())?;
        let clash = moduli.iter().any(|m| (m - 1.0).abs() < UNIQUENESS_GAP);
        if clash {
            warnings.push("another discriminant root lies on the circle of convergence".into());
        }
        !clash
    } else {
        false
    };

    Ok(SingularityReport {
        nu: params.nu.clone(),
        c: params.c.clone(),
        s_at_rho,
        rho,
        mu,
        exponent,
        uniqueness_checked,
        root_count,
        bound,
        warnings,
    })
}

/// Puiseux branches of `S` at `(rho, S(rho))`, expanded at `S(rho)` or, when
/// it is irrational, at its rational approximation to `2^-160`. Returns
/// that sample point too.
pub fn branches_at_rho(params: &IsingParams, terms: usize) -> Result<(ExactScalar, Vec<PuiseuxExpansion>)> {
    params.validate()?;
    let point = exact_point(params)?;
    let loc = locate_rho(&point, &dyadic_eps(64))?;
    let s = s_sample(&loc.q2, &loc.s_at_rho, EXPONENT_AUDIT_BITS.0)?;
    let branches = expand_s(&point, &s, terms)?;
    Ok((s, branches))
}

/// Singular exponent of `S` at its dominant singularity: 1/3 at the critical
/// point, 1/2 elsewhere.
pub fn dominant_exponent(params: &IsingParams) -> Result<Rational64> {
    let opts = RadiusOptions { scan_uniqueness: false, ..RadiusOptions::default() };
    Ok(radius_with(params, &opts)?.exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular::rho_closed_form;

    fn at(nu: ExactScalar, c: ExactScalar) -> IsingParams {
        IsingParams::exact(nu, c).unwrap()
    }

    #[test]
    fn critical_point_is_exact() {
        let r = radius_numeric(&at(int(4), int(1)), &dyadic_eps(40)).unwrap();
        assert_eq!(r.rho.exact(), Some(&ratio(2, 405)));
        assert_eq!(r.mu.exact(), Some(&ratio(2, 405)));
        assert_eq!(r.s_at_rho.exact(), Some(&ratio(1, 45)));
        assert_eq!(r.exponent, Rational64::new(1, 3));
        assert!(r.uniqueness_checked, "{:?}", r.warnings);
    }

    #[test]
    fn nu_five() {
        let r = radius_numeric(&at(int(5), int(1)), &dyadic_eps(40)).unwrap();
        assert_eq!(r.s_at_rho.exact(), Some(&ratio(1, 72)));
        assert_eq!(r.rho.exact(), Some(&ratio(67, 20736)));
        assert_eq!(r.exponent, Rational64::new(1, 2));
    }

    #[test]
    fn nu_two_matches_closed_form() {
        let tol = dyadic_eps(40);
        let r = radius_numeric(&at(int(2), int(1)), &tol).unwrap();
        let closed = rho_closed_form(&int(2), 256).unwrap().to_f64();
        assert!((r.rho.to_f64() - closed).abs() < 1e-11);
        assert!(r.rho.width() <= tol);
        assert_eq!(r.exponent, Rational64::new(1, 2));
        assert_eq!(r.root_count, 2);
    }

    #[test]
    fn mu_is_c_rho() {
        let c = ratio(21, 20);
        let r = radius_numeric(&at(int(4), c.clone()), &dyadic_eps(40)).unwrap();
        assert_eq!(r.mu, r.rho.scale(&c));
        assert_eq!(r.exponent, Rational64::new(1, 2));
        assert_eq!(r.root_count, 1);
    }

    #[test]
    fn nu_one_uses_cauchy_bound() {
        let r = radius_numeric(&at(int(1), int(1)), &dyadic_eps(40)).unwrap();
        assert_eq!(r.rho.exact(), Some(&ratio(1, 24)));
        assert_eq!(r.exponent, Rational64::new(1, 2));
    }

    #[test]
    fn region_guard() {
        let p = at(int(2), ratio(1, 2));
        assert!(matches!(radius_numeric(&p, &dyadic_eps(20)), Err(Error::OutsideValidatedRegion { .. })));
        let opts = RadiusOptions { allow_outside: true, ..RadiusOptions::default() };
        let r = radius_with(&p, &opts).unwrap();
        assert!(!r.warnings.is_empty());
    }
}
