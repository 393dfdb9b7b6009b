use num_rational::Rational64;
use proptest::prelude::*;

use tetra_ising::critical::{
    auto_step, finite_magnetization_exact, finite_susceptibility_exact, free_energy_sequence, ratio_limit,
    thermo_magnetization, thermo_susceptibility, z_values,
};
use tetra_ising::exactalg::scalar::{dyadic_eps, to_f64};
use tetra_ising::exactalg::{int, ratio, ExactScalar};
use tetra_ising::series::IsingParams;
use tetra_ising::singular::{dominant_exponent, radius_numeric, rho_closed_form, s_bound};

fn c_grid() -> Vec<ExactScalar> {
    (1..=12).map(|k| ratio(k, 4)).collect()
}

#[test]
fn finite_magnetization_is_bounded_and_nondecreasing() {
    for nu in [ratio(1, 3), int(1), int(4), int(7)] {
        for n in 1..=4 {
            let ms: Vec<ExactScalar> =
                c_grid().iter().map(|c| finite_magnetization_exact(n, &nu, c).unwrap()).collect();
            assert!(ms.iter().all(|m| *m >= int(-1) && *m <= int(1)), "nu = {nu}, n = {n}");
            assert!(ms.windows(2).all(|w| w[0] <= w[1]), "nu = {nu}, n = {n}: {ms:?}");
        }
    }
}

#[test]
fn finite_susceptibility_is_nonnegative() {
    for nu in [ratio(1, 3), int(1), int(4), int(7)] {
        for n in 1..=4 {
            for c in c_grid() {
                assert!(finite_susceptibility_exact(n, &nu, &c).unwrap() >= int(0), "({nu},{c}) n = {n}");
            }
        }
    }
}

#[test]
fn free_energy_gaps_shrink_and_approach_minus_log_mu() {
    let z = z_values(&int(2), &int(1), 400, 192).unwrap();
    let f = free_energy_sequence(&z).unwrap();
    let gaps: Vec<f64> = [25, 50, 100, 200].iter().map(|&n| (f[2 * n - 1] - f[n - 1]).abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");

    let limit = -rho_closed_form(&int(2), 256).unwrap().to_f64().ln();
    // |F_n + log mu| <= C log(n) / n with C fitted on the tail
    let ratios: Vec<f64> = (50..=400).map(|n| (f[n - 1] - limit).abs() * n as f64 / (n as f64).ln()).collect();
    let c = ratios.iter().cloned().fold(0.0, f64::max);
    assert!(c.is_finite() && c < 10.0, "C = {c}");
}

#[test]
fn ratios_converge_to_mu_off_the_critical_line() {
    let (nu, c) = (int(2), ratio(11, 10));
    let report = radius_numeric(&IsingParams::exact(nu.clone(), c.clone()).unwrap(), &dyadic_eps(80)).unwrap();
    let z = z_values(&nu, &c, 200, 192).unwrap();
    let estimate = ratio_limit(&z, 6, 10).unwrap().to_f64();
    assert!((estimate - to_f64(&report.mu.mid())).abs() < 1e-10);
}

#[test]
fn magnetization_above_nu_star_approaches_m0() {
    let target = 45.0 / 67.0;
    let errors: Vec<f64> = [2, 3, 4]
        .iter()
        .map(|&k| {
            let c = int(1) + ratio(1, 10i64.pow(k));
            (thermo_magnetization(&int(5), &c, &auto_step(&int(5), &c)).unwrap() - target).abs()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn magnetization_below_nu_star_vanishes() {
    let ms: Vec<f64> = [2, 3, 4]
        .iter()
        .map(|&k| {
            let c = int(1) + ratio(1, 10i64.pow(k));
            thermo_magnetization(&int(2), &c, &auto_step(&int(2), &c)).unwrap()
        })
        .collect();
    assert!(ms.windows(2).all(|w| w[1].abs() < w[0].abs()), "{ms:?}");
    assert!(ms[2].abs() < 1e-3);
}

#[test]
fn susceptibility_is_nonnegative() {
    for (nu, c) in [(int(1), int(1)), (int(2), ratio(11, 10)), (int(3), ratio(9, 10)), (int(5), ratio(11, 10))] {
        let chi = thermo_susceptibility(&nu, &c, &auto_step(&nu, &c)).unwrap();
        assert!(chi >= -1e-9, "({nu},{c}): {chi}");
    }
}

fn generic_point() -> impl Strategy<Value = (ExactScalar, ExactScalar)> {
    let nu = (1i64..=40, 4i64..=8).prop_filter("away from nu = 1", |(p, q)| p != q).prop_map(|(p, q)| ratio(p, q));
    let c = prop::sample::select(vec![ratio(17, 20), ratio(9, 10), ratio(11, 10), ratio(23, 20)]);
    (nu, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    // The Newton polygon expansion runs its own substitution residual check.
    #[test]
    fn generic_points_have_square_root_singularity((nu, c) in generic_point()) {
        let params = IsingParams::exact(nu.clone(), c.clone()).unwrap();
        prop_assert!(s_bound(&params).unwrap() > int(0));
        prop_assert_eq!(dominant_exponent(&params).unwrap(), Rational64::new(1, 2));
    }
}
