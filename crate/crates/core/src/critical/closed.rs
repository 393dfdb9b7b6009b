use crate::error::{Error, Result};
use crate::exactalg::scalar::exact_sqrt;
use crate::exactalg::{int, ExactScalar, Field};
use crate::hpreal::HpReal;
use crate::singular::{ClosedValue, NU_STAR};

fn positive(nu: &ExactScalar) -> Result<()> {
    if *nu <= int(0) {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    Ok(())
}

/// Spontaneous magnetization `3 nu sqrt(nu^2 - 16) / (3 nu^2 - 8)` for
/// `nu >= 4`, zero below.
pub fn m0_closed(nu: &ExactScalar, prec: usize) -> Result<ClosedValue> {
    positive(nu)?;
    if *nu < int(NU_STAR) {
        return Ok(ClosedValue::Exact(int(0)));
    }
    let rad = nu * nu - int(16);
    let scale = int(3) * nu / (int(3) * nu * nu - int(8));
    Ok(match exact_sqrt(&rad) {
        Some(r) => ClosedValue::Exact(scale * r),
        None => {
            let r = HpReal::from_rational(&rad, prec).sqrt()?;
            ClosedValue::Real(HpReal::from_rational(&scale, prec) * r)
        }
    })
}

/// Zero-field susceptibility `3 nu / ((2 sqrt(nu) + 1)(sqrt(nu) - 2)^2)` for
/// `nu < 4`; `None` stands for the divergence at `nu >= 4`.
pub fn chi_closed(nu: &ExactScalar, prec: usize) -> Result<Option<ClosedValue>> {
    positive(nu)?;
    if *nu >= int(NU_STAR) {
        return Ok(None);
    }
    Ok(Some(match exact_sqrt(nu) {
        Some(r) => {
            let d = &r - int(2);
            ClosedValue::Exact(int(3) * nu / ((int(2) * &r + int(1)) * &d * &d))
        }
        None => {
            let r = HpReal::from_rational(nu, prec).sqrt()?;
            let two = HpReal::from_i64(2, prec);
            let d = &r - &two;
            let den = (&two * &r + HpReal::from_i64(1, prec)) * &d * &d;
            ClosedValue::Real(HpReal::from_rational(&(int(3) * nu), prec).div(&den)?)
        }
    }))
}

/// `(6 sqrt 2 / 5) sqrt(nu / 4 - 1)`, the behaviour of `M0` as `nu -> 4+`.
pub fn m0_asymptote(nu: f64) -> f64 {
    6.0 * 2f64.sqrt() / 5.0 * (nu / 4.0 - 1.0).sqrt()
}

/// `12 / (5 (1 - nu / 4)^2)`, the divergence of `chi` as `nu -> 4-`.
pub fn chi_asymptote(nu: f64) -> f64 {
    12.0 / (5.0 * (1.0 - nu / 4.0).powi(2))
}

/// `(3/5) 2^(3/5) (c - 1)^(1/5)`, the magnetization at `nu = 4` as `c -> 1+`.
pub fn m_critical_asymptote(c: f64) -> Result<f64> {
    if c <= 1.0 {
        return Err(Error::InvalidParameter("the critical isotherm needs c > 1".into()));
    }
    Ok(0.6 * 2f64.powf(0.6) * (c - 1.0).powf(0.2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn magnetization_values() {
        assert_eq!(m0_closed(&int(4), 64).unwrap(), ClosedValue::Exact(int(0)));
        assert_eq!(m0_closed(&int(5), 64).unwrap(), ClosedValue::Exact(ratio(45, 67)));
        assert_eq!(m0_closed(&int(2), 64).unwrap(), ClosedValue::Exact(int(0)));
        let m6 = m0_closed(&int(6), 128).unwrap().to_f64();
        assert!((m6 - 18.0 * 20f64.sqrt() / 100.0).abs() < 1e-14);
    }

    #[test]
    fn susceptibility_values() {
        assert_eq!(chi_closed(&int(1), 64).unwrap(), Some(ClosedValue::Exact(int(1))));
        assert_eq!(chi_closed(&int(4), 64).unwrap(), None);
        assert_eq!(chi_closed(&ratio(1, 4), 64).unwrap(), Some(ClosedValue::Exact(ratio(1, 6))));
    }

    #[test]
    fn asymptotes() {
        let c = 1.0 + 2f64.powi(-5);
        assert!((m_critical_asymptote(c).unwrap() - 0.3 * 2f64.powf(0.6)).abs() < 1e-15);
        assert!(m_critical_asymptote(1.0).is_err());
        for eps in [1e-4, 1e-6] {
            let nu = 4.0 * (1.0 + eps);
            let q = ExactScalar::from_float(nu).unwrap();
            let r = m0_closed(&q, 256).unwrap().to_f64() / m0_asymptote(nu);
            assert!((r - 1.0).abs() < 0.01, "eps = {eps}: {r}");
        }
        for eps in [1e-3, 1e-4] {
            let nu = 4.0 * (1.0 - eps);
            let q = ExactScalar::from_float(nu).unwrap();
            let r = chi_closed(&q, 256).unwrap().unwrap().to_f64() / chi_asymptote(nu);
            assert!((r - 1.0).abs() < 0.01, "eps = {eps}: {r}");
        }
    }
}
