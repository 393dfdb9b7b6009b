use crate::error::{Error, Result};
use crate::exactalg::scalar::dyadic_eps;
use crate::exactalg::{int, ExactScalar, Field};
use crate::hpreal::HpReal;
use crate::series::IsingParams;
use crate::singular::{locate_rho, rho_closed_form, NU_STAR};

use super::closed::m0_closed;
use super::finite::{Chi, ObservableSet};

/// Working precision of the thermodynamic estimates.
const PREC: usize = 256;

/// `rho(nu, c)` to within `2^-bits`.
pub fn rho_value(nu: &ExactScalar, c: &ExactScalar, bits: u32) -> Result<ExactScalar> {
    let params = IsingParams::exact(nu.clone(), c.clone())?;
    Ok(locate_rho(&params, &dyadic_eps(bits))?.rho.mid())
}

/// `F = -log mu`, `mu = c rho`.
pub fn free_energy(params: &IsingParams) -> Result<HpReal> {
    let rho = rho_value(&params.nu, &params.c, 200)?;
    Ok(-HpReal::from_rational(&(&params.c * rho), PREC).ln()?)
}

/// Which side of `c` the difference stencil samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stencil {
    Central,
    /// Points `c, c + h, c + 2h, c + 3h`.
    Forward,
    /// Points `c, c - h, c - 2h, c - 3h`.
    Backward,
}

/// For `nu >= 4` the radius has a branch point at `c = 1`, so stencils must
/// not straddle it; `c = 1` itself is approached from above.
pub fn stencil_for(nu: &ExactScalar, c: &ExactScalar) -> Stencil {
    if *nu < int(NU_STAR) {
        Stencil::Central
    } else if *c >= int(1) {
        Stencil::Forward
    } else {
        Stencil::Backward
    }
}

/// A default step: `2^-20` for central stencils; `|c - 1| / 64` for
/// one-sided stencils near the branch point, at most `2^-12`.
pub fn auto_step(nu: &ExactScalar, c: &ExactScalar) -> ExactScalar {
    let cap = dyadic_eps(12);
    match stencil_for(nu, c) {
        Stencil::Central => dyadic_eps(20),
        _ => {
            let d = c - int(1);
            let d = if d < int(0) { -d } else { d };
            if d == int(0) {
                cap
            } else {
                (d / int(64)).min(cap)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThermoOptions {
    pub h: ExactScalar,
    /// Agreement required between the two step sizes (times ten).
    pub tol: f64,
    pub rho_bits: u32,
    pub stencil: Option<Stencil>,
}

impl ThermoOptions {
    pub fn new(h: ExactScalar, tol: f64) -> Self {
        ThermoOptions { h, tol, rho_bits: 160, stencil: None }
    }
}

/// `(rho, c rho' / rho, c^2 rho'' / rho)` at one step size.
fn log_derivatives(
    nu: &ExactScalar,
    c: &ExactScalar,
    h: &ExactScalar,
    stencil: Stencil,
    bits: u32,
) -> Result<(HpReal, HpReal, HpReal)> {
    let f = |k: i64| -> Result<HpReal> { Ok(HpReal::from_rational(&rho_value(nu, &(c + h * int(k)), bits)?, PREC)) };
    let hp = |k: i64| HpReal::from_i64(k, PREC);
    let hh = HpReal::from_rational(h, PREC);
    let f0 = f(0)?;
    let (d1, d2) = match stencil {
        Stencil::Central => {
            let (fp, fm) = (f(1)?, f(-1)?);
            ((&fp - &fm).div(&(hp(2) * &hh))?, (&fp - hp(2) * &f0 + &fm).div(&(&hh * &hh))?)
        }
        Stencil::Forward | Stencil::Backward => {
            let s = if stencil == Stencil::Forward { 1 } else { -1 };
            let (f1, f2, f3) = (f(s)?, f(2 * s)?, f(3 * s)?);
            let d1 = (hp(-3) * &f0 + hp(4) * &f1 - &f2).div(&(hp(2 * s) * &hh))?;
            let d2 = (hp(2) * &f0 - hp(5) * &f1 + hp(4) * &f2 - &f3).div(&(&hh * &hh))?;
            (d1, d2)
        }
    };
    let cc = HpReal::from_rational(c, PREC);
    let g1 = (&cc * &d1).div(&f0)?;
    let g2 = (&cc * &cc * &d2).div(&f0)?;
    Ok((f0, g1, g2))
}

fn magnetization_from(g1: &HpReal) -> HpReal {
    -(HpReal::from_i64(1, PREC) + g1)
}

fn susceptibility_from(g1: &HpReal, g2: &HpReal) -> HpReal {
    g1 * g1 - g1 - g2
}

/// A finite-difference estimate at steps `h` and `h/2`, Richardson-combined.
#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
    pub stencil: Stencil,
}

fn richardson(coarse: &HpReal, fine: &HpReal) -> f64 {
    ((HpReal::from_i64(4, PREC) * fine - coarse).to_f64()) / 3.0
}

fn estimate(
    nu: &ExactScalar,
    c: &ExactScalar,
    opts: &ThermoOptions,
    observable: impl Fn(&HpReal, &HpReal) -> HpReal,
) -> Result<Extrapolated> {
    if opts.h <= int(0) {
        return Err(Error::InvalidParameter("the step must be positive".into()));
    }
    let stencil = opts.stencil.unwrap_or_else(|| stencil_for(nu, c));
    let (_, a1, a2) = log_derivatives(nu, c, &opts.h, stencil, opts.rho_bits)?;
    let (_, b1, b2) = log_derivatives(nu, c, &(&opts.h / int(2)), stencil, opts.rho_bits)?;
    let coarse = observable(&a1, &a2);
    let fine = observable(&b1, &b2);
    let discrepancy = (&coarse - &fine).to_f64().abs();
    if discrepancy > 10.0 * opts.tol {
        return Err(Error::StepTooLarge { discrepancy });
    }
    Ok(Extrapolated { value: richardson(&coarse, &fine), coarse: coarse.to_f64(), fine: fine.to_f64(), stencil })
}

/// `M = -(1 + c rho_c / rho)` by finite differences in `c`.
pub fn thermo_magnetization_with(nu: &ExactScalar, c: &ExactScalar, opts: &ThermoOptions) -> Result<Extrapolated> {
    estimate(nu, c, opts, |g1, _| magnetization_from(g1))
}

/// `chi = (c rho_c / rho)^2 - c rho_c / rho - c^2 rho_cc / rho`.
pub fn thermo_susceptibility_with(nu: &ExactScalar, c: &ExactScalar, opts: &ThermoOptions) -> Result<Extrapolated> {
    estimate(nu, c, opts, susceptibility_from)
}

/// Default agreement tolerance of the step-halving check.
pub const THERMO_TOL: f64 = 1e-6;

pub fn thermo_magnetization(nu: &ExactScalar, c: &ExactScalar, h: &ExactScalar) -> Result<f64> {
    Ok(thermo_magnetization_with(nu, c, &ThermoOptions::new(h.clone(), THERMO_TOL))?.value)
}

pub fn thermo_susceptibility(nu: &ExactScalar, c: &ExactScalar, h: &ExactScalar) -> Result<f64> {
    Ok(thermo_susceptibility_with(nu, c, &ThermoOptions::new(h.clone(), THERMO_TOL))?.value)
}

/// Thermodynamic-limit observables. At `nu >= 4, c = 1`, where `rho` has a
/// branch point in `c`, `M` is the limit `M0` from `c > 1` and `chi` is
/// flagged infinite.
pub fn thermo_observables(nu: &ExactScalar, c: &ExactScalar, opts: &ThermoOptions) -> Result<ObservableSet> {
    let params = IsingParams::exact(nu.clone(), c.clone())?;
    let f = free_energy(&params)?.to_f64();
    if *nu >= int(NU_STAR) && *c == int(1) {
        let m = m0_closed(nu, PREC)?.to_f64();
        return Ok(ObservableSet { n: None, f, m, chi: Chi::Infinite });
    }
    let m = thermo_magnetization_with(nu, c, opts)?.value;
    let chi = Chi::Finite(thermo_susceptibility_with(nu, c, opts)?.value);
    Ok(ObservableSet { n: None, f, m, chi })
}

/// `-log rho_nu` at `c = 1` from the closed form.
pub fn free_energy_closed(nu: &ExactScalar) -> Result<HpReal> {
    Ok(-rho_closed_form(nu, PREC)?.to_hp(PREC).ln()?)
}

/// One-sided derivatives of orders 1..=3 of `-log rho_nu` at `nu`, from
/// forward (`side = 1`) or backward (`side = -1`) differences, extrapolated
/// over steps `h, h/2, ..., h/2^(levels-1)`.
pub fn one_sided_nu_derivatives(nu: &ExactScalar, side: i64, h: &ExactScalar, levels: usize) -> Result<[f64; 3]> {
    if side != 1 && side != -1 {
        return Err(Error::InvalidParameter("side must be 1 or -1".into()));
    }
    let mut out = [0.0; 3];
    for (order, slot) in out.iter_mut().enumerate().map(|(k, s)| (k + 1, s)) {
        let mut table: Vec<HpReal> = Vec::with_capacity(levels);
        for level in 0..levels {
            let step = h / int(1 << level) * int(side);
            // k-th forward difference over the points nu + j step
            let mut diff = HpReal::from_i64(0, PREC);
            let mut binom = 1i64;
            for j in 0..=order as i64 {
                let sign = if (order as i64 - j) % 2 == 0 { 1 } else { -1 };
                let fj = free_energy_closed(&(nu + &step * int(j)))?;
                diff = diff + HpReal::from_i64(sign * binom, PREC) * fj;
                binom = binom * (order as i64 - j) / (j + 1);
            }
            let scale = HpReal::from_rational(&step, PREC);
            let mut denom = HpReal::from_i64(1, PREC);
            for _ in 0..order {
                denom = denom * &scale;
            }
            table.push(diff.div(&denom)?);
        }
        // Richardson for an error series in powers of the step
        for j in 1..levels {
            let f = HpReal::from_i64((1i64 << j) - 1, PREC);
            for i in (j..levels).rev() {
                let t = (&table[i] - &table[i - 1]).div(&f)?;
                table[i] = &table[i] + t;
            }
        }
        *slot = table[levels - 1].to_f64();
    }
    Ok(out)
}

/// Left and right derivatives of `-log rho_nu` at `nu = 4`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionReport {
    pub left: [f64; 3],
    pub right: [f64; 3],
}

impl TransitionReport {
    pub fn jumps(&self) -> [f64; 3] {
        [0, 1, 2].map(|k| (self.right[k] - self.left[k]).abs())
    }
}

pub fn transition_at_nu_star(h: &ExactScalar) -> Result<TransitionReport> {
    let nu = int(NU_STAR);
    Ok(TransitionReport {
        left: one_sided_nu_derivatives(&nu, -1, h, 5)?,
        right: one_sided_nu_derivatives(&nu, 1, h, 5)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn free_energy_at_critical_point() {
        let f = free_energy(&IsingParams::exact(int(4), int(1)).unwrap()).unwrap();
        assert!((f.to_f64() - (405.0f64 / 2.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn free_energy_increases_with_nu() {
        let vals: Vec<f64> = [ratio(1, 4), int(2), int(4), int(5)]
            .iter()
            .map(|nu| free_energy(&IsingParams::exact(nu.clone(), int(1)).unwrap()).unwrap().to_f64())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
    }

    #[test]
    fn no_spontaneous_magnetization_below_nu_star() {
        let m = thermo_magnetization(&int(2), &int(1), &dyadic_eps(12)).unwrap();
        assert!(m.abs() < 1e-6, "{m}");
    }

    #[test]
    fn susceptibility_at_nu_one() {
        let chi = thermo_susceptibility(&int(1), &int(1), &dyadic_eps(12)).unwrap();
        assert!((chi - 1.0).abs() < 1e-3, "{chi}");
    }

    #[test]
    fn stencil_choice() {
        assert_eq!(stencil_for(&int(2), &int(1)), Stencil::Central);
        assert_eq!(stencil_for(&int(5), &int(1)), Stencil::Forward);
        assert_eq!(stencil_for(&int(5), &ratio(9, 10)), Stencil::Backward);
    }

    #[test]
    fn smooth_side_derivatives_agree() {
        // away from nu = 4 both one-sided estimates see the same branch
        let h = ratio(1, 1000);
        let l = one_sided_nu_derivatives(&int(2), -1, &h, 5).unwrap();
        let r = one_sided_nu_derivatives(&int(2), 1, &h, 5).unwrap();
        for k in 0..3 {
            assert!((l[k] - r[k]).abs() < 1e-6 * l[k].abs().max(1.0), "order {}", k + 1);
        }
    }
}
