use num_rational::Rational64;
use serde::Serialize;

use tetra_ising::critical::{chi_closed, m0_closed};
use tetra_ising::exactalg::scalar::dyadic_eps;
use tetra_ising::exactalg::{int, ratio, ExactScalar};
use tetra_ising::hpreal::HpReal;
use tetra_ising::mapcount::bruteforce_z;
use tetra_ising::series::{IsingParams, Symbols};
use tetra_ising::singular::{
    discriminant_cofactor, dominant_exponent, lagrangian_z, locate_rho, radius_numeric, rho_closed_form,
    rho_high_branch, rho_low_branch, s_at_rho_closed_form, s_high_branch, s_low_branch, ClosedValue,
};

use crate::report::{Provenance, Report};

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct CheckOut {
    command: &'static str,
    passed: bool,
    checks: Vec<Check>,
    provenance: Provenance,
}

fn run(name: impl Into<String>, f: impl FnOnce() -> tetra_ising::Result<(bool, String)>) -> Check {
    let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check { name: name.into(), pass, detail }
}

fn point(nu: &ExactScalar, c: &ExactScalar) -> tetra_ising::Result<IsingParams> {
    IsingParams::exact(nu.clone(), c.clone())
}

pub fn check(bits: usize) -> Report {
    let mut checks = Vec::new();

    for nu in [int(2), int(5)] {
        checks.push(run(format!("discriminant divisible by P1^3 P2 P3 at nu = {nu}"), || {
            let q = discriminant_cofactor(&nu)?;
            let deg = q.degree().unwrap_or(0);
            Ok((!q.is_zero() && deg <= 1, format!("quotient z-degree {deg}")))
        }));
    }

    checks.push(run("branch continuity at nu = 4", || {
        let nu = int(4);
        let rho = ratio(2, 405);
        let s = ratio(1, 45);
        let pass = rho_low_branch(&nu, 128)? == ClosedValue::Exact(rho.clone())
            && rho_high_branch(&nu)? == rho
            && s_low_branch(&nu, 128)? == ClosedValue::Exact(s.clone())
            && s_high_branch(&nu)? == s;
        Ok((pass, "rho = 2/405, S(rho) = 1/45 on both branches".into()))
    }));

    for nu in [ratio(1, 2), int(2), int(5)] {
        for c in [ratio(9, 10), ratio(19, 20), int(1)] {
            checks.push(run(format!("one root of Q2 in (0, bound] at ({nu}, {c})"), || {
                let count = match locate_rho(&point(&nu, &c)?, &dyadic_eps(20)) {
                    Ok(l) => l.root_count,
                    Err(tetra_ising::Error::NoRootInRange { count }) => count,
                    Err(e) => return Err(e),
                };
                Ok((count == 1, format!("{count} roots")))
            }));
        }
    }

    for nu in [ratio(1, 4), int(2), int(5), int(9)] {
        checks.push(run(format!("radius matches closed form at nu = {nu}"), || {
            let r = radius_numeric(&point(&nu, &int(1))?, &dyadic_eps(60))?;
            let closed = rho_closed_form(&nu, 256)?.to_hp(256);
            let err = (HpReal::from_rational(&r.rho.mid(), 256) - closed).to_f64().abs();
            Ok((err < 1e-10, format!("difference {err:e}")))
        }));
    }

    for nu in [ratio(1, 4), int(4), int(5), int(9)] {
        checks.push(run(format!("z(S(rho)) = rho at nu = {nu}"), || {
            let s = s_at_rho_closed_form(&nu, 128)?;
            let rho = rho_closed_form(&nu, 128)?;
            let (Some(s), Some(rho)) = (s.exact(), rho.exact()) else {
                return Ok((false, "closed forms are not rational here".into()));
            };
            let z = lagrangian_z(&point(&nu, &int(1))?, s)?;
            Ok((z == *rho, format!("z = {z}")))
        }));
    }

    checks.push(run("closed-form observables", || {
        let pass = m0_closed(&int(4), 64)? == ClosedValue::Exact(int(0))
            && m0_closed(&int(5), 64)? == ClosedValue::Exact(ratio(45, 67))
            && chi_closed(&int(1), 64)? == Some(ClosedValue::Exact(int(1)));
        Ok((pass, "M0(4) = 0, M0(5) = 45/67, chi(1, 1) = 1".into()))
    }));

    for (nu, want) in
        [(int(4), Rational64::new(1, 3)), (int(2), Rational64::new(1, 2)), (int(5), Rational64::new(1, 2))]
    {
        checks.push(run(format!("singular exponent at ({nu}, 1)"), || {
            let e = dominant_exponent(&point(&nu, &int(1))?)?;
            Ok((e == want, format!("{e}")))
        }));
    }

    checks.push(run("enumeration matches series for n <= 3", || {
        let z = Symbols::symbolic().z_series(3)?;
        let mut pass = true;
        for n in 1..=3 {
            pass &= bruteforce_z(n)? == *z.coeff(n);
        }
        Ok((pass, "Z_1, Z_2, Z_3".into()))
    }));

    let passed = checks.iter().all(|c| c.pass);
    let rows = checks.iter().map(|c| vec![c.name.clone(), c.pass.to_string(), c.detail.clone()]).collect();
    let mut report = Report::new(CheckOut { command: "check", passed, checks, provenance: Provenance::new(bits) })
        .with_table(&["check", "pass", "detail"], rows);
    report.ok = passed;
    report
}
