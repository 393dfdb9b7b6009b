use std::sync::Mutex;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::scalar::dyadic_eps;
use crate::exactalg::{int, ExactScalar, ParamPoly};
use crate::hpreal::HpReal;
use crate::series::{coefficient_sequence, z_exact, IsingParams, Symbols, TruncatedSeries};

/// Largest `n` for which finite-size observables are taken from the
/// symbolic `Z_n`.
pub const SYMBOLIC_LIMIT: usize = 10;

/// Free energy, magnetization and susceptibility at size `n`, or in the
/// thermodynamic limit when `n` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableSet {
    pub n: Option<usize>,
    pub f: f64,
    pub m: f64,
    pub chi: Chi,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Chi {
    Finite(f64),
    Infinite,
}

impl Chi {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Chi::Finite(x) => Some(*x),
            Chi::Infinite => None,
        }
    }
}

static SYMBOLIC_Z: Mutex<Option<TruncatedSeries<ParamPoly>>> = Mutex::new(None);

/// Symbolic `Z_n` in `Q[nu, c, 1/c]`, cached across calls.
pub fn symbolic_zn(n: usize) -> Result<ParamPoly> {
    if n == 0 || n > SYMBOLIC_LIMIT {
        return Err(Error::InvalidParameter(format!("symbolic Z_n is available for 1 <= n <= {SYMBOLIC_LIMIT}")));
    }
    let mut guard = SYMBOLIC_Z.lock().unwrap_or_else(|e| e.into_inner());
    if guard.as_ref().is_none_or(|z| z.order() < n) {
        *guard = Some(Symbols::symbolic().z_series(n.max(4))?);
    }
    Ok(guard.as_ref().expect("filled above").coeff(n).clone())
}

fn theta_ratios(n: usize, nu: &ExactScalar, c: &ExactScalar) -> Result<(ExactScalar, ExactScalar, ExactScalar)> {
    let z = symbolic_zn(n)?;
    let t1 = z.c_theta();
    let t2 = t1.c_theta();
    Ok((z.eval(nu, c)?, t1.eval(nu, c)?, t2.eval(nu, c)?))
}

/// `M_n = c dZ_n/dc / (n Z_n)`, exactly.
pub fn finite_magnetization_exact(n: usize, nu: &ExactScalar, c: &ExactScalar) -> Result<ExactScalar> {
    let (z, t1, _) = theta_ratios(n, nu, c)?;
    Ok(t1 / (z * int(n as i64)))
}

/// `chi_n = (c d/dc)^2 log Z_n / n`, exactly.
pub fn finite_susceptibility_exact(n: usize, nu: &ExactScalar, c: &ExactScalar) -> Result<ExactScalar> {
    let (z, t1, t2) = theta_ratios(n, nu, c)?;
    Ok((&z * &t2 - &t1 * &t1) / (&z * &z * int(n as i64)))
}

/// `Z_1..Z_n_max` at a rational point as high-precision reals. At `nu = 1`
/// the exact pipeline is used, since numeric mode excludes that point.
pub fn z_values(nu: &ExactScalar, c: &ExactScalar, n_max: usize, bits: usize) -> Result<Vec<HpReal>> {
    if One::is_one(nu) {
        let z = z_exact(nu, c, n_max)?;
        return Ok(z.coeffs()[1..].iter().map(|q| HpReal::from_rational(q, bits)).collect());
    }
    coefficient_sequence(&IsingParams::numeric(nu.clone(), c.clone(), bits)?, n_max)
}

/// `F_n = log(Z_n) / n` for `Z_1, Z_2, ...`.
pub fn free_energy_sequence(z: &[HpReal]) -> Result<Vec<f64>> {
    z.iter()
        .enumerate()
        .map(|(i, zn)| {
            if zn.sign() <= 0 {
                return Err(Error::NonPositiveSequence { index: i + 1 });
            }
            Ok(zn.ln()?.to_f64() / (i + 1) as f64)
        })
        .collect()
}

/// Finite-size observables for `n = 1..=n_max`, with `c`-derivatives of
/// `log Z_n` by central differences (step `c 2^-20`, one Richardson step).
pub fn finite_profile(nu: &ExactScalar, c: &ExactScalar, n_max: usize, bits: usize) -> Result<Vec<ObservableSet>> {
    let k = c * dyadic_eps(20);
    let logs = |x: &ExactScalar| -> Result<Vec<HpReal>> {
        z_values(nu, x, n_max, bits)?
            .into_iter()
            .enumerate()
            .map(|(i, z)| {
                if z.sign() <= 0 {
                    return Err(Error::NonPositiveSequence { index: i + 1 });
                }
                z.ln()
            })
            .collect()
    };
    let half = &k / int(2);
    let l0 = logs(c)?;
    let lp = logs(&(c + &k))?;
    let lm = logs(&(c - &k))?;
    let hp = logs(&(c + &half))?;
    let hm = logs(&(c - &half))?;
    let hp_k = HpReal::from_rational(&k, bits);
    let hp_half = HpReal::from_rational(&half, bits);
    let cf = HpReal::from_rational(c, bits);
    let two = HpReal::from_i64(2, bits);
    let three = HpReal::from_i64(3, bits);
    let four = HpReal::from_i64(4, bits);
    let rich = |coarse: HpReal, fine: HpReal| -> Result<HpReal> {
        use crate::exactalg::Field;
        (&four * &fine - coarse).div(&three)
    };
    let mut out = Vec::with_capacity(n_max);
    for i in 0..n_max {
        use crate::exactalg::Field;
        let d1 = |p: &HpReal, m: &HpReal, h: &HpReal| (p - m).div(&(&two * h));
        let d2 = |p: &HpReal, m: &HpReal, h: &HpReal| (p - &two * &l0[i] + m).div(&(h * h));
        let first = rich(d1(&lp[i], &lm[i], &hp_k)?, d1(&hp[i], &hm[i], &hp_half)?)?;
        let second = rich(d2(&lp[i], &lm[i], &hp_k)?, d2(&hp[i], &hm[i], &hp_half)?)?;
        let n = HpReal::from_i64(i as i64 + 1, bits);
        let theta1 = &cf * &first;
        let theta2 = &theta1 + &cf * &cf * &second;
        out.push(ObservableSet {
            n: Some(i + 1),
            f: l0[i].div(&n)?.to_f64(),
            m: theta1.div(&n)?.to_f64(),
            chi: Chi::Finite(theta2.div(&n)?.to_f64()),
        });
    }
    Ok(out)
}

/// Observables at a single size; exact through the symbolic `Z_n` when
/// `n <= SYMBOLIC_LIMIT`.
pub fn finite_observables(n: usize, nu: &ExactScalar, c: &ExactScalar, bits: usize) -> Result<ObservableSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if n <= SYMBOLIC_LIMIT {
        let (z, t1, t2) = theta_ratios(n, nu, c)?;
        let nn = int(n as i64);
        let m = &t1 / (&z * &nn);
        let chi = (&z * &t2 - &t1 * &t1) / (&z * &z * &nn);
        let f = HpReal::from_rational(&z, bits).ln()?.to_f64() / n as f64;
        return Ok(ObservableSet {
            n: Some(n),
            f,
            m: crate::exactalg::scalar::to_f64(&m),
            chi: Chi::Finite(crate::exactalg::scalar::to_f64(&chi)),
        });
    }
    Ok(finite_profile(nu, c, n, bits)?.pop().expect("n >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn single_vertex() {
        for (nu, c) in [(int(1), int(1)), (int(3), ratio(7, 5))] {
            assert_eq!(finite_magnetization_exact(1, &nu, &c).unwrap(), int(1));
            assert_eq!(finite_susceptibility_exact(1, &nu, &c).unwrap(), int(0));
        }
    }

    #[test]
    fn two_vertices_at_one() {
        assert_eq!(finite_magnetization_exact(2, &int(1), &int(1)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn profile_matches_exact() {
        let (nu, c) = (int(2), ratio(21, 20));
        let prof = finite_profile(&nu, &c, 6, 192).unwrap();
        for n in 1..=6 {
            let m = crate::exactalg::scalar::to_f64(&finite_magnetization_exact(n, &nu, &c).unwrap());
            let chi = crate::exactalg::scalar::to_f64(&finite_susceptibility_exact(n, &nu, &c).unwrap());
            assert!((prof[n - 1].m - m).abs() < 1e-12, "n = {n}");
            assert!((prof[n - 1].chi.finite().unwrap() - chi).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn nu_one_profile_uses_exact_pipeline() {
        let prof = finite_profile(&int(1), &int(1), 3, 128).unwrap();
        assert!((prof[1].m - 0.5).abs() < 1e-12);
    }
}
