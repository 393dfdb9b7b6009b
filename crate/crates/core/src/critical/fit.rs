use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::hpreal::HpReal;

/// Result of fitting `Z_n ~ amplitude * mu^-n * n^-alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    /// `mu` from extrapolated coefficient ratios, for comparison with the
    /// certified value passed in.
    pub mu_estimate: f64,
    /// `alpha` from the global least-squares fit.
    pub alpha_exponent: f64,
    pub amplitude: f64,
    /// Root-mean-square residual of the fit in `log` space.
    pub residual: f64,
    pub n_range: (usize, usize),
    /// Aitken-accelerated pointwise exponent at `n_max`.
    pub aitken_exponent: f64,
}

impl FitResult {
    pub fn estimates_agree(&self, within: f64) -> bool {
        (self.alpha_exponent - self.aitken_exponent).abs() <= within
    }
}

/// `log(Z_n mu^n)` for `n = 1..`; `z[0]` is `Z_1`.
fn scaled_logs(z: &[HpReal], mu: &HpReal) -> Result<Vec<f64>> {
    let log_mu = mu.ln()?;
    z.iter()
        .enumerate()
        .map(|(i, zn)| {
            if zn.sign() <= 0 {
                return Err(Error::NonPositiveSequence { index: i + 1 });
            }
            let n = HpReal::from_i64(i as i64 + 1, zn.precision());
            Ok((zn.ln()? + n * &log_mu).to_f64())
        })
        .collect()
}

/// Pointwise exponents `alpha_n = -(y_n - y_(n-1)) / (log n - log(n-1))`.
pub fn local_exponents(z: &[HpReal], mu: &HpReal) -> Result<Vec<(usize, f64)>> {
    let y = scaled_logs(z, mu)?;
    Ok((2..=y.len())
        .map(|n| {
            let dn = (n as f64).ln() - ((n - 1) as f64).ln();
            (n, -(y[n - 1] - y[n - 2]) / dn)
        })
        .collect())
}

/// Aitken's delta-squared on the last three entries.
pub fn aitken(a: &[f64]) -> Option<f64> {
    let [x0, x1, x2] = a[a.len().checked_sub(3)?..] else { return None };
    let denom = x2 - 2.0 * x1 + x0;
    if denom == 0.0 {
        return Some(x2);
    }
    Some(x2 - (x2 - x1).powi(2) / denom)
}

/// Extrapolates `Z_n / Z_(n+1)` to `n -> infinity` with Neville's scheme
/// in `1/n` over `points` ratios spaced `stride` apart, ending at `n_max - 1`.
pub fn ratio_limit(z: &[HpReal], points: usize, stride: usize) -> Result<HpReal> {
    if points == 0 || z.len() < 2 + (points - 1) * stride {
        return Err(Error::InvalidParameter("sequence too short for the requested extrapolation".into()));
    }
    let prec = z[0].precision();
    let last = z.len() - 1; // ratio index n has Z_n / Z_(n+1), z[n-1] / z[n]
    let mut xs = Vec::with_capacity(points);
    let mut table = Vec::with_capacity(points);
    for k in 0..points {
        let n = last - k * stride;
        if z[n - 1].sign() <= 0 || z[n].sign() <= 0 {
            return Err(Error::NonPositiveSequence { index: n });
        }
        xs.push(HpReal::from_i64(1, prec).div(&HpReal::from_i64(n as i64, prec))?);
        table.push(z[n - 1].div(&z[n])?);
    }
    // Neville at x = 0
    for j in 1..points {
        for i in (j..points).rev() {
            let num = &xs[i] * &table[i - 1] - &xs[i - j] * &table[i];
            table[i] = num.div(&(&xs[i] - &xs[i - j]))?;
        }
    }
    Ok(table[points - 1].clone())
}

/// Least-squares fit of `log(Z_n mu^n)` against `log n` over `n_range`
/// (inclusive, one-based), plus the Aitken estimate at `n_max`.
pub fn exponent_fit(z: &[HpReal], mu: &HpReal, n_range: (usize, usize)) -> Result<FitResult> {
    let (lo, hi) = n_range;
    if lo < 2 || hi <= lo || hi > z.len() {
        return Err(Error::InvalidParameter(format!("n_range must satisfy 2 <= n_min < n_max <= {}", z.len())));
    }
    let y = scaled_logs(&z[..hi], mu)?;
    let pts: Vec<(f64, f64)> = (lo..=hi).map(|n| ((n as f64).ln(), y[n - 1])).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / m).sqrt();
    let local = local_exponents(&z[..hi], mu)?;
    let tail: Vec<f64> = local.iter().map(|&(_, a)| a).collect();
    let aitken_exponent = aitken(&tail).unwrap_or(f64::NAN);
    let points = 6.min((hi - 1) / 2).max(1);
    let stride = ((hi - lo) / (2 * points)).max(1);
    let mu_estimate = ratio_limit(&z[..hi], points, stride)?.to_f64();
    Ok(FitResult {
        mu_estimate,
        alpha_exponent: -slope,
        amplitude: intercept.exp(),
        residual,
        n_range,
        aitken_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(n_max: usize) -> Vec<HpReal> {
        // Z_n = 2^n n^-3
        (1..=n_max)
            .map(|n| {
                let v = HpReal::from_i64(2, 128).powf(&HpReal::from_i64(n as i64, 128)).unwrap();
                v.div(&HpReal::from_i64((n * n * n) as i64, 128)).unwrap()
            })
            .collect()
    }

    #[test]
    fn exact_power_law() {
        let z = synthetic(200);
        let mu = HpReal::from_f64(0.5, 128);
        let fit = exponent_fit(&z, &mu, (20, 200)).unwrap();
        assert!((fit.alpha_exponent - 3.0).abs() < 1e-3);
        assert!((fit.amplitude - 1.0).abs() < 1e-6);
        assert!((fit.aitken_exponent - 3.0).abs() < 1e-3);
        assert!((fit.mu_estimate - 0.5).abs() < 1e-8);
    }

    #[test]
    fn rejects_non_positive() {
        let mut z = synthetic(10);
        z[4] = HpReal::from_i64(0, 128);
        let mu = HpReal::from_f64(0.5, 128);
        assert_eq!(exponent_fit(&z, &mu, (2, 10)), Err(Error::NonPositiveSequence { index: 5 }));
    }

    #[test]
    fn aitken_on_geometric_tail() {
        let a: Vec<f64> = (0..10).map(|k| 1.0 + 0.5f64.powi(k)).collect();
        assert!((aitken(&a).unwrap() - 1.0).abs() < 1e-12);
    }
}
