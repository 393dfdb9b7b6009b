use serde_json::Value;
use tetra_ising_web::{coefficient_ratios, phase_curves, radius_report};

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn radius_at_four_is_exact() {
    let v = json(radius_report("4", "1").unwrap());
    assert_eq!(v["rho"], "2/405");
    assert_eq!(v["exact"], true);
    assert_eq!(v["mu"], "2/405");
}

#[test]
fn radius_rejects_garbage() {
    assert!(radius_report("four", "1").is_err());
    assert!(radius_report("-1", "1").is_err());
}

#[test]
fn ratios_approach_mu() {
    let mu = json(radius_report("2", "11/10").unwrap())["mu_value"].as_f64().unwrap();
    let v = json(coefficient_ratios("2", "11/10", 120).unwrap());
    let ratio = v["ratio"].as_array().unwrap();
    assert_eq!(ratio.len(), 119);
    let last = ratio.last().unwrap().as_f64().unwrap();
    assert!((last - mu).abs() / mu < 0.05, "{last} vs {mu}");
    let extrapolated = v["mu_extrapolated"].as_f64().unwrap();
    assert!((extrapolated - mu).abs() / mu < (last - mu).abs() / mu, "{extrapolated} vs {mu}");
}

#[test]
fn ratios_bound_n_max() {
    assert!(coefficient_ratios("2", "1", 3).is_err());
    assert!(coefficient_ratios("2", "1", 301).is_err());
}

#[test]
fn curves_cover_the_transition() {
    let v = json(phase_curves(1.0, 7.0, 13).unwrap());
    let nu = v["nu"].as_array().unwrap();
    let m0 = v["m0"].as_array().unwrap();
    let chi = v["chi"].as_array().unwrap();
    assert_eq!(nu.len(), 13);
    for i in 0..13 {
        let x = nu[i].as_f64().unwrap();
        let m = m0[i].as_f64().unwrap();
        if x < 4.0 {
            assert_eq!(m, 0.0);
            assert!(chi[i].is_number());
        } else {
            assert!(chi[i].is_null(), "chi finite at nu = {x}");
        }
        if x > 4.0 {
            assert!(m > 0.0 && m < 1.0);
        }
    }
    assert!(phase_curves(2.0, 1.0, 10).is_err());
    assert!(phase_curves(1.0, 2.0, 1).is_err());
}
