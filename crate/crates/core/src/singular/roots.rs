//! Complex polynomial roots by Aberth-Ehrlich iteration.

use num_complex::Complex64;

/// Coefficients low to high; trailing zeros are ignored.
fn trim(p: &[Complex64]) -> &[Complex64] {
    let n = p.iter().rposition(|c| c.norm() > 0.0).map_or(0, |k| k + 1);
    &p[..n]
}

fn eval_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// All roots with multiplicity. Zero roots (vanishing low coefficients) are
/// returned exactly.
pub fn aberth(p: &[Complex64]) -> Vec<Complex64> {
    let p = trim(p);
    if p.len() < 2 {
        return Vec::new();
    }
    let zeros = p.iter().position(|c| c.norm() > 0.0).unwrap_or(0);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let q = &p[zeros..];
    let n = q.len() - 1;
    if n == 0 {
        return out;
    }
    let lead = q[n].norm();
    // Fujiwara-type bound for the root moduli, and a lower one for the start circle.
    let upper = (0..n).map(|k| (q[k].norm() / lead).powf(1.0 / (n - k) as f64)).fold(0.0f64, f64::max) * 2.0;
    let lower = (q[0].norm() / lead).powf(1.0 / n as f64);
    let r = if lower > 0.0 { (lower * upper).sqrt() } else { upper.max(1.0) };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..800 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval_with_derivative(q, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(f64::MIN_POSITIVE));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    out.extend(z);
    out
}

/// Distinct roots with multiplicities. Roots closer than `tol` (relative) are
/// merged and polished with Newton's method on the derivative of order
/// `multiplicity - 1`, where the merged root is simple.
pub fn clustered_roots(p: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let roots = aberth(p);
    let mut clusters: Vec<(Vec<Complex64>, Complex64)> = Vec::new();
    for r in roots {
        let scale = r.norm().max(1e-300);
        match clusters.iter_mut().find(|(_, c)| (c - r).norm() <= tol * scale.max(c.norm())) {
            Some((members, centre)) => {
                members.push(r);
                *centre = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => clusters.push((vec![r], r)),
        }
    }
    clusters
        .into_iter()
        .map(|(members, centre)| {
            let m = members.len();
            let mut d = trim(p).to_vec();
            for _ in 1..m {
                d = derivative(&d);
            }
            let mut z = centre;
            if z.norm() > 0.0 {
                for _ in 0..30 {
                    let (v, dv) = eval_with_derivative(&d, z);
                    if dv.norm() == 0.0 {
                        break;
                    }
                    let step = v / dv;
                    z -= step;
                    if step.norm() <= 1e-16 * z.norm() {
                        break;
                    }
                }
            }
            (z, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cube_roots_of_unity() {
        let roots = aberth(&[c(-1.0), c(0.0), c(0.0), c(1.0)]);
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r.powu(3) - c(1.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn zero_roots_split_off() {
        let roots = aberth(&[c(0.0), c(0.0), c(-4.0), c(1.0)]);
        assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
        assert!(roots.iter().any(|r| (r - c(4.0)).norm() < 1e-13));
    }

    #[test]
    fn double_root_is_merged() {
        // (x - 2)^2 (x + 1)
        let p = [c(4.0), c(0.0), c(-3.0), c(1.0)];
        let mut roots = clustered_roots(&p, 1e-5);
        roots.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1].1, 2);
        assert!((roots[1].0 - c(2.0)).norm() < 1e-14);
        assert!((roots[0].0 - c(-1.0)).norm() < 1e-14);
    }
}
