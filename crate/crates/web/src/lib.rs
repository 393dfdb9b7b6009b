//! WebAssembly bindings for the browser demo in `www/`. Each exported
//! function takes parameters as strings (read as exact rationals) and
//! returns a JSON document; the plain-Rust versions are public for testing.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tetra_ising::critical::{chi_closed, m0_closed, ratio_limit, z_values};
use tetra_ising::exactalg::scalar::{dyadic_eps, from_f64};
use tetra_ising::exactalg::{format_exact, parse_exact, ExactScalar};
use tetra_ising::hpreal::rational_to_decimal;
use tetra_ising::series::IsingParams;
use tetra_ising::singular::{radius_with, rho_closed_form, Enclosure, RadiusOptions};

const BITS: usize = 128;
const MAX_TERMS: usize = 300;
const MAX_POINTS: usize = 2000;

fn parse(name: &str, text: &str) -> Result<ExactScalar, String> {
    parse_exact(text).map_err(|_| format!("{name}: cannot read {text:?} as a number"))
}

fn point(nu: &str, c: &str) -> Result<IsingParams, String> {
    IsingParams::exact(parse("nu", nu)?, parse("c", c)?).map_err(|e| e.to_string())
}

fn to_json(v: impl Serialize) -> String {
    serde_json::to_string(&v).expect("serializable")
}

fn shown(e: &Enclosure) -> String {
    match e.exact() {
        Some(q) => format_exact(q),
        None => rational_to_decimal(&e.mid(), 16),
    }
}

#[derive(Serialize)]
struct RadiusOut {
    rho: String,
    mu: String,
    s_at_rho: String,
    exponent: String,
    rho_value: f64,
    mu_value: f64,
    exact: bool,
    warnings: Vec<String>,
}

/// Dominant singularity at `(nu, c)`.
pub fn radius_report(nu: &str, c: &str) -> Result<String, String> {
    let params = point(nu, c)?;
    let opts = RadiusOptions { tol: dyadic_eps(60), allow_outside: true, ..RadiusOptions::default() };
    let r = radius_with(&params, &opts).map_err(|e| e.to_string())?;
    Ok(to_json(RadiusOut {
        rho: shown(&r.rho),
        mu: shown(&r.mu),
        s_at_rho: shown(&r.s_at_rho),
        exponent: r.exponent.to_string(),
        rho_value: r.rho.to_f64(),
        mu_value: r.mu.to_f64(),
        exact: r.rho.exact().is_some(),
        warnings: r.warnings,
    }))
}

#[derive(Serialize)]
struct RatiosOut {
    n: Vec<usize>,
    /// `Z_n / Z_(n+1)`.
    ratio: Vec<f64>,
    /// `log(Z_n) / n`.
    free_energy: Vec<f64>,
    mu_extrapolated: f64,
}

/// Coefficient ratios `Z_n / Z_(n+1)` for `n < n_max`, which tend to `mu`.
pub fn coefficient_ratios(nu: &str, c: &str, n_max: usize) -> Result<String, String> {
    if !(4..=MAX_TERMS).contains(&n_max) {
        return Err(format!("n_max must lie in 4..={MAX_TERMS}"));
    }
    let params = point(nu, c)?;
    let z = z_values(&params.nu, &params.c, n_max, BITS).map_err(|e| e.to_string())?;
    let mut out = RatiosOut { n: Vec::new(), ratio: Vec::new(), free_energy: Vec::new(), mu_extrapolated: f64::NAN };
    for i in 0..n_max - 1 {
        let r = tetra_ising::exactalg::Field::div(&z[i], &z[i + 1]).map_err(|e| e.to_string())?;
        out.n.push(i + 1);
        out.ratio.push(r.to_f64());
        out.free_energy.push(z[i].ln().map_err(|e| e.to_string())?.to_f64() / (i + 1) as f64);
    }
    let points = 6.min(n_max / 8).max(1);
    let stride = (n_max / (4 * points)).max(1);
    out.mu_extrapolated = ratio_limit(&z, points, stride).map_err(|e| e.to_string())?.to_f64();
    Ok(to_json(out))
}

#[derive(Serialize)]
struct CurvesOut {
    nu: Vec<f64>,
    /// Spontaneous magnetization.
    m0: Vec<f64>,
    /// Zero-field susceptibility; `null` where it diverges.
    chi: Vec<Option<f64>>,
    /// `-log rho` at `c = 1`.
    free_energy: Vec<f64>,
}

/// `M0(nu)`, `chi(nu, 1)` and the free energy on `points` values of `nu`.
pub fn phase_curves(nu_min: f64, nu_max: f64, points: usize) -> Result<String, String> {
    if !(nu_min > 0.0 && nu_max > nu_min && nu_max.is_finite()) {
        return Err("need 0 < nu_min < nu_max".into());
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must lie in 2..={MAX_POINTS}"));
    }
    let mut out = CurvesOut { nu: Vec::new(), m0: Vec::new(), chi: Vec::new(), free_energy: Vec::new() };
    for k in 0..points {
        let x = nu_min + (nu_max - nu_min) * k as f64 / (points - 1) as f64;
        let nu = from_f64(x).ok_or("non-finite nu")?;
        let m0 = m0_closed(&nu, BITS).map_err(|e| e.to_string())?.to_f64();
        let chi = chi_closed(&nu, BITS).map_err(|e| e.to_string())?.map(|v| v.to_f64());
        let rho = rho_closed_form(&nu, BITS).map_err(|e| e.to_string())?.to_f64();
        out.nu.push(x);
        out.m0.push(m0);
        out.chi.push(chi);
        out.free_energy.push(-rho.ln());
    }
    Ok(to_json(out))
}

#[wasm_bindgen(js_name = radius)]
pub fn radius_js(nu: &str, c: &str) -> Result<String, JsError> {
    radius_report(nu, c).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = coefficientRatios)]
pub fn coefficient_ratios_js(nu: &str, c: &str, n_max: usize) -> Result<String, JsError> {
    coefficient_ratios(nu, c, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = phaseCurves)]
pub fn phase_curves_js(nu_min: f64, nu_max: f64, points: usize) -> Result<String, JsError> {
    phase_curves(nu_min, nu_max, points).map_err(|e| JsError::new(&e))
}
