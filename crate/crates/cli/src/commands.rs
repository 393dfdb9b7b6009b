use std::time::Instant;

use serde::Serialize;

use tetra_ising::critical::{
    auto_step, chi_closed, exponent_fit, finite_observables, m0_closed, stencil_for, thermo_observables, z_values, Chi,
    ObservableSet, ThermoOptions,
};
use tetra_ising::exactalg::{int, parse_exact, ExactScalar};
use tetra_ising::hpreal::HpReal;
use tetra_ising::mapcount::enumerate;
use tetra_ising::series::{coefficient_sequence, z_exact, IsingParams, Symbols};
use tetra_ising::singular::{branches_at_rho, radius_with, Enclosure, RadiusOptions, SingularityReport};
use tetra_ising::Error;

use crate::args::{CoeffsArgs, EnumerateArgs, ExponentFitArgs, ObservablesArgs, Point, PuiseuxArgs, RadiusArgs};
use crate::report::{decimal, digits_for_bits, exact, float, real, Provenance, Report};

pub enum Failure {
    /// Bad flags or values; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

pub type Outcome = std::result::Result<Report, Failure>;

fn parse(name: &str, text: &str) -> std::result::Result<ExactScalar, Failure> {
    parse_exact(text).map_err(|_| Failure::Usage(format!("--{name}: cannot read {text:?} as a rational")))
}

fn parse_point(p: &Point) -> std::result::Result<(ExactScalar, ExactScalar), Failure> {
    Ok((parse("nu", &p.nu)?, parse("c", &p.c)?))
}

fn parse_list(name: &str, text: &str) -> std::result::Result<Vec<ExactScalar>, Failure> {
    text.split(',').map(|t| parse(name, t)).collect()
}

#[derive(Serialize)]
struct Coefficient {
    n: usize,
    value: String,
}

#[derive(Serialize)]
struct CoeffsOut {
    command: &'static str,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<String>,
    coefficients: Vec<Coefficient>,
    provenance: Provenance,
}

pub fn coeffs(a: &CoeffsArgs, bits: usize) -> Outcome {
    if a.n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let (mode, point, values): (_, _, Vec<String>) = if a.symbolic {
        let z = Symbols::symbolic().z_series(a.n_max)?;
        ("symbolic", None, (1..=a.n_max).map(|n| z.coeff(n).to_string()).collect())
    } else {
        let nu = parse("nu", a.nu.as_deref().unwrap_or_default())?;
        let c = parse("c", a.c.as_deref().unwrap_or_default())?;
        if a.numeric {
            let params = IsingParams::numeric(nu.clone(), c.clone(), bits)?;
            let digits = digits_for_bits(bits / 2);
            let z = coefficient_sequence(&params, a.n_max)?;
            ("numeric", Some((nu, c)), z.iter().map(|v| real(v, digits)).collect())
        } else {
            IsingParams::exact(nu.clone(), c.clone())?;
            let z = z_exact(&nu, &c, a.n_max)?;
            ("exact", Some((nu, c)), (1..=a.n_max).map(|n| exact(z.coeff(n))).collect())
        }
    };
    let rows = values.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), v.clone()]).collect();
    let out = CoeffsOut {
        command: "coeffs",
        mode,
        nu: point.as_ref().map(|(nu, _)| exact(nu)),
        c: point.as_ref().map(|(_, c)| exact(c)),
        coefficients: values.into_iter().enumerate().map(|(i, value)| Coefficient { n: i + 1, value }).collect(),
        provenance: Provenance::new(bits),
    };
    Ok(Report::new(out).with_table(&["n", "value"], rows))
}

#[derive(Serialize)]
struct EnumerateOut {
    command: &'static str,
    n: usize,
    z: String,
    maps: String,
    matchings: u64,
    connected_by_genus: Vec<u64>,
    timing_ms: u128,
    provenance: Provenance,
}

pub fn enumerate_cmd(a: &EnumerateArgs, bits: usize) -> Outcome {
    let start = Instant::now();
    let e = enumerate(a.n)?;
    let out = EnumerateOut {
        command: "enumerate",
        n: a.n,
        z: e.partition_function().to_string(),
        maps: exact(&e.rooted_maps()),
        matchings: e.matchings,
        connected_by_genus: e.connected_by_genus.clone(),
        timing_ms: start.elapsed().as_millis(),
        provenance: Provenance::new(bits),
    };
    Ok(Report::new(out))
}

/// `"p/q"` when the enclosure is a point, otherwise the midpoint in decimal.
fn enclosure(e: &Enclosure, digits: usize) -> String {
    match e.exact() {
        Some(q) => exact(q),
        None => decimal(&e.mid(), digits),
    }
}

#[derive(Serialize)]
struct RadiusPoint {
    nu: String,
    c: String,
    rho: String,
    mu: String,
    s_at_rho: String,
    exponent: String,
    exact: bool,
    rho_width: String,
    uniqueness_checked: bool,
    root_count: usize,
    s_bound: String,
    warnings: Vec<String>,
}

fn radius_point(r: &SingularityReport, digits: usize) -> RadiusPoint {
    RadiusPoint {
        nu: exact(&r.nu),
        c: exact(&r.c),
        rho: enclosure(&r.rho, digits),
        mu: enclosure(&r.mu, digits),
        s_at_rho: enclosure(&r.s_at_rho, digits),
        exponent: r.exponent.to_string(),
        exact: r.rho.exact().is_some(),
        rho_width: decimal(&r.rho.width(), 3),
        uniqueness_checked: r.uniqueness_checked,
        root_count: r.root_count,
        s_bound: exact(&r.bound),
        warnings: r.warnings.clone(),
    }
}

#[derive(Serialize)]
struct RadiusSweep {
    command: &'static str,
    points: Vec<RadiusPoint>,
    provenance: Provenance,
}

#[derive(Serialize)]
struct RadiusSingle {
    command: &'static str,
    #[serde(flatten)]
    point: RadiusPoint,
    provenance: Provenance,
}

/// Runs `f` over `items` on up to `jobs` threads, keeping input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    let chunk = items.len().div_ceil(jobs).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker")).collect()
    })
}

pub fn radius(a: &RadiusArgs, bits: usize, jobs: usize) -> Outcome {
    let nus = parse_list("nu", &a.nu)?;
    let cs = parse_list("c", &a.c)?;
    let tol = parse("tol", &a.tol)?;
    if tol <= int(0) {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let digits = {
        let t = tetra_ising::exactalg::scalar::to_f64(&tol);
        ((-t.log10()).ceil().max(1.0) as usize + 2).min(digits_for_bits(bits))
    };
    let grid: Vec<(ExactScalar, ExactScalar)> =
        nus.iter().flat_map(|nu| cs.iter().map(move |c| (nu.clone(), c.clone()))).collect();
    let opts = RadiusOptions { tol, allow_outside: a.allow_outside, ..RadiusOptions::default() };
    let results = parallel_map(&grid, jobs, |(nu, c)| -> tetra_ising::Result<SingularityReport> {
        radius_with(&IsingParams::exact(nu.clone(), c.clone())?, &opts)
    });
    let points = results.into_iter().map(|r| r.map(|r| radius_point(&r, digits))).collect::<Result<Vec<_>, _>>()?;
    let rows = points
        .iter()
        .map(|p| vec![p.nu.clone(), p.c.clone(), p.rho.clone(), p.mu.clone(), p.exponent.clone()])
        .collect();
    let header: &[&str] = &["nu", "c", "rho", "mu", "exponent"];
    let mut provenance = Provenance::new(bits);
    for p in &points {
        provenance.warnings.extend(p.warnings.iter().map(|w| format!("({}, {}): {w}", p.nu, p.c)));
    }
    let report = if points.len() == 1 {
        let point = points.into_iter().next().expect("one point");
        Report::new(RadiusSingle { command: "radius", point, provenance })
    } else {
        Report::new(RadiusSweep { command: "radius", points, provenance })
    };
    Ok(report.with_table(header, rows))
}

#[derive(Serialize)]
struct Term {
    exponent: String,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct BranchOut {
    ramification: u32,
    terminated: bool,
    leading_exponent: Option<String>,
    singular_exponent: Option<String>,
    terms: Vec<Term>,
}

#[derive(Serialize)]
struct PuiseuxOut {
    command: &'static str,
    nu: String,
    c: String,
    s_sample: String,
    s_exact: bool,
    exponent: Option<String>,
    branches: Vec<BranchOut>,
    provenance: Provenance,
}

pub fn puiseux(a: &PuiseuxArgs, bits: usize) -> Outcome {
    let (nu, c) = parse_point(&a.point)?;
    if a.terms == 0 {
        return Err(Failure::Usage("--terms must be at least 1".into()));
    }
    let params = IsingParams::exact(nu.clone(), c.clone())?;
    let (s, branches) = branches_at_rho(&params, a.terms)?;
    let s_exact = s.denom().bits() < 64;
    let exponent = branches.iter().filter_map(|b| b.singular_exponent()).min();
    let out = PuiseuxOut {
        command: "puiseux",
        nu: exact(&nu),
        c: exact(&c),
        s_sample: if s_exact { exact(&s) } else { decimal(&s, 40) },
        s_exact,
        exponent: exponent.map(|e| e.to_string()),
        branches: branches
            .iter()
            .map(|b| BranchOut {
                ramification: b.ramification,
                terminated: b.terminated,
                leading_exponent: b.leading_exponent().map(|e| e.to_string()),
                singular_exponent: b.singular_exponent().map(|e| e.to_string()),
                terms: b
                    .terms
                    .iter()
                    .map(|t| Term { exponent: t.exponent.to_string(), re: float(t.coef.re), im: float(t.coef.im) })
                    .collect(),
            })
            .collect(),
        provenance: Provenance::new(bits),
    };
    Ok(Report::new(out))
}

#[derive(Serialize)]
struct ObservablesOut {
    command: &'static str,
    nu: String,
    c: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    free_energy: String,
    magnetization: String,
    chi: String,
    #[serde(rename = "M0", skip_serializing_if = "Option::is_none")]
    m0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chi_closed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stencil: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    step: Option<String>,
    provenance: Provenance,
}

fn chi_text(chi: &Chi) -> String {
    match chi {
        Chi::Finite(x) => float(*x),
        Chi::Infinite => "inf".into(),
    }
}

pub fn observables(a: &ObservablesArgs, bits: usize) -> Outcome {
    let (nu, c) = parse_point(&a.point)?;
    IsingParams::exact(nu.clone(), c.clone())?;
    let mut provenance = Provenance::new(bits);
    let (set, stencil, step): (ObservableSet, _, _) = match a.n {
        Some(n) => (finite_observables(n, &nu, &c, bits)?, None, None),
        None => {
            let h = match &a.h {
                Some(text) => parse("h", text)?,
                None => auto_step(&nu, &c),
            };
            if h <= int(0) {
                return Err(Failure::Usage("--h must be positive".into()));
            }
            let set = thermo_observables(&nu, &c, &ThermoOptions::new(h.clone(), a.tol))?;
            if set.chi == Chi::Infinite {
                // taken from the closed form, no differencing
                (set, None, None)
            } else {
                (set, Some(format!("{:?}", stencil_for(&nu, &c)).to_lowercase()), Some(exact(&h)))
            }
        }
    };
    let at_one = c == int(1) && a.n.is_none();
    let m0 = if at_one { Some(m0_closed(&nu, bits)?.to_string()) } else { None };
    let chi_cl =
        if at_one { Some(chi_closed(&nu, bits)?.map_or_else(|| "inf".to_string(), |v| v.to_string())) } else { None };
    if at_one && set.chi == Chi::Infinite {
        provenance.warnings.push("chi diverges at c = 1 for nu >= 4; magnetization is the limit from c > 1".into());
    }
    let out = ObservablesOut {
        command: "observables",
        nu: exact(&nu),
        c: exact(&c),
        n: set.n,
        free_energy: float(set.f),
        magnetization: float(set.m),
        chi: chi_text(&set.chi),
        m0,
        chi_closed: chi_cl,
        stencil,
        step,
        provenance,
    };
    Ok(Report::new(out))
}

#[derive(Serialize)]
struct FitOut {
    command: &'static str,
    nu: String,
    c: String,
    exponent: String,
    aitken_exponent: String,
    estimates_agree: bool,
    amplitude: String,
    mu: String,
    mu_estimate: String,
    residual: String,
    n_range: [usize; 2],
    provenance: Provenance,
}

pub fn exponent_fit_cmd(a: &ExponentFitArgs, bits: usize) -> Outcome {
    let (nu, c) = parse_point(&a.point)?;
    let n_min = a.n_min.unwrap_or(a.n_max / 4).max(2);
    if a.n_max <= n_min {
        return Err(Failure::Usage("--n-max must exceed --n-min".into()));
    }
    let params = IsingParams::exact(nu.clone(), c.clone())?;
    let opts = RadiusOptions {
        tol: tetra_ising::exactalg::scalar::dyadic_eps(bits as u32),
        scan_uniqueness: false,
        ..RadiusOptions::default()
    };
    let report = radius_with(&params, &opts)?;
    let mu = HpReal::from_rational(&report.mu.mid(), bits);
    let z = z_values(&nu, &c, a.n_max, bits)?;
    let fit = exponent_fit(&z, &mu, (n_min, a.n_max))?;
    let mut provenance = Provenance::new(bits);
    provenance.warnings = report.warnings.clone();
    let out = FitOut {
        command: "exponent-fit",
        nu: exact(&nu),
        c: exact(&c),
        exponent: float(fit.alpha_exponent),
        aitken_exponent: float(fit.aitken_exponent),
        estimates_agree: fit.estimates_agree(0.05),
        amplitude: float(fit.amplitude),
        mu: real(&mu, 30),
        mu_estimate: float(fit.mu_estimate),
        residual: float(fit.residual),
        n_range: [n_min, a.n_max],
        provenance,
    };
    Ok(Report::new(out))
}
