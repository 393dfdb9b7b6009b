use std::sync::OnceLock;

use proptest::prelude::*;

use tetra_ising::exactalg::{int, ratio, ExactScalar, ParamPoly, Ring};
use tetra_ising::hpreal::HpReal;
use tetra_ising::series::{coefficient_sequence, IsingParams, Symbols, TruncatedSeries};

const SYMBOLIC_ORDER: usize = 12;
const BITS: usize = 128;

fn symbolic_z() -> &'static TruncatedSeries<ParamPoly> {
    static Z: OnceLock<TruncatedSeries<ParamPoly>> = OnceLock::new();
    Z.get_or_init(|| Symbols::symbolic().z_series(SYMBOLIC_ORDER).unwrap())
}

#[test]
fn s_coefficients_are_nonnegative_integers() {
    let s = Symbols::symbolic().solve_s(10).unwrap();
    for n in 0..=10 {
        assert!(s.coeff(n).has_nonneg_integer_coeffs(), "S_{n} = {}", s.coeff(n));
    }
}

#[test]
fn z_coefficients_are_laurent_in_c_with_parity() {
    let z = symbolic_z();
    for n in 1..=6 {
        let zn = z.coeff(n);
        assert!(zn.has_nonneg_coeffs(), "Z_{n} = {zn}");
        let (lo, hi) = zn.c_degree_range().unwrap();
        assert!(-(n as i32) <= lo && hi <= n as i32, "Z_{n}: c-degrees {lo}..{hi}");
        for (&(_, b), _) in zn.terms() {
            assert_eq!((b - n as i32).rem_euclid(2), 0, "Z_{n}: c^{b}");
        }
    }
}

#[test]
fn fixed_point_residual_vanishes() {
    let sym = Symbols::symbolic();
    let order = 8;
    let s = sym.solve_s(order).unwrap();
    let (n, d) = sym.lagrangian();
    let z = TruncatedSeries::variable(order, &ParamPoly::zero());
    let d_s = s.compose_poly(&d);
    let residual = s.mul(&s.compose_poly(&n)).sub(&z.mul(&d_s).mul(&d_s));
    for k in 0..=order {
        assert!(residual.coeff(k).is_zero(), "z^{k}: {}", residual.coeff(k));
    }
}

#[test]
fn scaling_identity_holds() {
    let sym = Symbols::symbolic();
    let order = 6;
    let big = order + 2;
    let s = sym.solve_s(big).unwrap();
    let zc = sym.z_of_cz_from(&s, order).unwrap();
    let (c, w) = (ParamPoly::c(), sym.w());
    let one = TruncatedSeries::constant(ParamPoly::one(), big);
    let factor = one.add(&s.scale(&ParamPoly::int(3).mul(&c).mul(&c).mul(&w)));
    let lhs = TruncatedSeries::from_coeffs(zc.coeffs().to_vec(), big, &ParamPoly::zero())
        .shift_up(2)
        .mul(&factor)
        .scale(&ParamPoly::int(9).mul(&w));
    let rhs = sym.pol_z_series(&s, big);
    for k in 0..=big {
        assert_eq!(lhs.coeff(k), rhs.coeff(k), "z^{k}");
    }
}

#[test]
fn exact_point_agrees_with_symbolic() {
    let z = symbolic_z();
    for (nu, c) in [(int(2), int(1)), (ratio(1, 2), ratio(3, 2)), (int(1), ratio(4, 5))] {
        let at = tetra_ising::series::z_exact(&nu, &c, 6).unwrap();
        for n in 1..=6 {
            assert_eq!(*at.coeff(n), z.coeff(n).eval(&nu, &c).unwrap(), "({nu},{c}) n = {n}");
        }
    }
}

fn rational_point() -> impl Strategy<Value = (ExactScalar, ExactScalar)> {
    let nu = (1i64..=60, 1i64..=10)
        .prop_filter("numeric mode excludes nu = 1", |(p, q)| p != q)
        .prop_map(|(p, q)| ratio(p, q));
    let c = (5i64..=20, 10i64..=10).prop_map(|(p, q)| ratio(p, q));
    (nu, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn numeric_agrees_with_symbolic((nu, c) in rational_point()) {
        let params = IsingParams::numeric(nu.clone(), c.clone(), BITS).unwrap();
        let values = coefficient_sequence(&params, SYMBOLIC_ORDER).unwrap();
        for (i, v) in values.iter().enumerate() {
            let want = HpReal::from_rational(&symbolic_z().coeff(i + 1).eval(&nu, &c).unwrap(), 2 * BITS);
            prop_assert!(v.agrees_to_bits(&want, BITS / 2), "({}, {}) n = {}", nu, c, i + 1);
        }
    }
}
