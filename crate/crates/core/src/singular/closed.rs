use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::scalar::{exact_sqrt, to_f64};
use crate::exactalg::{int, ExactScalar, Field};
use crate::hpreal::HpReal;

/// The critical value of `nu`, where the two branches meet.
pub const NU_STAR: i64 = 4;

/// An exact rational, or a high-precision real when a square root is irrational.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedValue {
    Exact(ExactScalar),
    Real(HpReal),
}

impl ClosedValue {
    pub fn exact(&self) -> Option<&ExactScalar> {
        match self {
            ClosedValue::Exact(q) => Some(q),
            ClosedValue::Real(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ClosedValue::Exact(q) => to_f64(q),
            ClosedValue::Real(x) => x.to_f64(),
        }
    }

    pub fn to_hp(&self, prec: usize) -> HpReal {
        match self {
            ClosedValue::Exact(q) => HpReal::from_rational(q, prec),
            ClosedValue::Real(x) => x.with_precision(prec),
        }
    }
}

impl fmt::Display for ClosedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedValue::Exact(q) => write!(f, "{q}"),
            ClosedValue::Real(x) => write!(f, "{x}"),
        }
    }
}

fn rho_low<R: Field>(r: &R) -> Result<R> {
    let one = r.one_like();
    let nu = r.mul(r);
    let num = r.scalar_like(&int(2)).mul(&one.add(&r.scalar_like(&int(2)).mul(r)));
    let a = one.add(r);
    let b = one.add(&nu);
    let den = r.scalar_like(&int(9)).mul(&a).mul(&a).mul(&b).mul(&b);
    num.div(&den)
}

fn s_low<R: Field>(r: &R) -> Result<R> {
    let one = r.one_like();
    let den = r.scalar_like(&int(3)).mul(&one.add(r)).mul(&one.add(&r.mul(r)));
    one.div(&den)
}

fn positive(nu: &ExactScalar) -> Result<()> {
    if *nu <= int(0) {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    Ok(())
}

/// Evaluates a formula in `sqrt(nu)` exactly when the root is rational.
fn in_sqrt(
    nu: &ExactScalar,
    prec: usize,
    exact: impl Fn(&ExactScalar) -> Result<ExactScalar>,
    real: impl Fn(&HpReal) -> Result<HpReal>,
) -> Result<ClosedValue> {
    match exact_sqrt(nu) {
        Some(r) => Ok(ClosedValue::Exact(exact(&r)?)),
        None => Ok(ClosedValue::Real(real(&HpReal::from_rational(nu, prec).sqrt()?)?)),
    }
}

/// The `nu < 4` formula for the radius at `c = 1`, usable at any `nu > 0`.
pub fn rho_low_branch(nu: &ExactScalar, prec: usize) -> Result<ClosedValue> {
    positive(nu)?;
    in_sqrt(nu, prec, rho_low, rho_low)
}

/// The `nu >= 4` formula `(3 nu^2 - 8) / (36 (1 - nu^2)^2)`; singular at `nu = 1`.
pub fn rho_high_branch(nu: &ExactScalar) -> Result<ExactScalar> {
    let nu2 = nu * nu;
    let w = int(1) - &nu2;
    if w == int(0) {
        return Err(Error::DivisionByZero);
    }
    Ok((int(3) * nu2 - int(8)) / (int(36) * &w * &w))
}

pub fn s_low_branch(nu: &ExactScalar, prec: usize) -> Result<ClosedValue> {
    positive(nu)?;
    in_sqrt(nu, prec, s_low, s_low)
}

/// `1 / (3 (nu^2 - 1))`.
pub fn s_high_branch(nu: &ExactScalar) -> Result<ExactScalar> {
    let d = int(3) * (nu * nu - int(1));
    if d == int(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(d.recip())
}

/// Radius of convergence of `S` and `Z` at `c = 1`.
pub fn rho_closed_form(nu: &ExactScalar, prec: usize) -> Result<ClosedValue> {
    positive(nu)?;
    if *nu >= int(NU_STAR) {
        Ok(ClosedValue::Exact(rho_high_branch(nu)?))
    } else {
        rho_low_branch(nu, prec)
    }
}

/// Value of `S` at its radius of convergence, `c = 1`.
pub fn s_at_rho_closed_form(nu: &ExactScalar, prec: usize) -> Result<ClosedValue> {
    positive(nu)?;
    if *nu >= int(NU_STAR) {
        Ok(ClosedValue::Exact(s_high_branch(nu)?))
    } else {
        s_low_branch(nu, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;
    use crate::series::IsingParams;
    use crate::singular::lagrangian_z;

    fn exact(v: ClosedValue) -> ExactScalar {
        v.exact().cloned().expect("exact value")
    }

    #[test]
    fn branches_meet_at_nu_star() {
        assert_eq!(exact(rho_low_branch(&int(4), 64).unwrap()), ratio(2, 405));
        assert_eq!(rho_high_branch(&int(4)).unwrap(), ratio(2, 405));
        assert_eq!(exact(s_low_branch(&int(4), 64).unwrap()), ratio(1, 45));
        assert_eq!(s_high_branch(&int(4)).unwrap(), ratio(1, 45));
    }

    #[test]
    fn rational_points() {
        assert_eq!(exact(rho_closed_form(&ratio(1, 4), 64).unwrap()), ratio(256, 2025));
        assert_eq!(exact(s_at_rho_closed_form(&ratio(1, 4), 64).unwrap()), ratio(8, 45));
        assert_eq!(exact(rho_closed_form(&int(5), 64).unwrap()), ratio(67, 20736));
        assert_eq!(exact(s_at_rho_closed_form(&int(5), 64).unwrap()), ratio(1, 72));
        assert_eq!(exact(rho_closed_form(&int(1), 64).unwrap()), ratio(1, 24));
    }

    #[test]
    fn irrational_root_is_real() {
        let r = rho_closed_form(&int(2), 128).unwrap();
        assert!(r.exact().is_none());
        let s2 = 2f64.sqrt();
        let expect = 2.0 * (1.0 + 2.0 * s2) / (9.0 * (1.0 + s2).powi(2) * 9.0);
        assert!((r.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn decreasing_in_nu() {
        let grid = [ratio(1, 4), ratio(9, 4), int(4), int(5), int(9)];
        let vals: Vec<f64> = grid.iter().map(|nu| rho_closed_form(nu, 128).unwrap().to_f64()).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]), "{vals:?}");
    }

    #[test]
    fn s_at_rho_reproduces_rho() {
        // z = S N(S) / D(S)^2 at the closed-form S.
        for nu in [ratio(1, 4), int(4), int(5), int(9)] {
            let s = exact(s_at_rho_closed_form(&nu, 64).unwrap());
            let z = lagrangian_z(&IsingParams::exact(nu.clone(), int(1)).unwrap(), &s).unwrap();
            assert_eq!(z, exact(rho_closed_form(&nu, 64).unwrap()), "nu = {nu}");
        }
    }
}
