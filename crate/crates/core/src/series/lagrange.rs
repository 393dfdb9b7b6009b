use num_traits::{One, Signed};

use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};
use crate::exactalg::{int, ExactScalar, Field, ParamPoly, Ring, UniPoly};
use crate::hpreal::HpReal;

/// How the coefficients of the series are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Coefficients in `Q[nu, c, 1/c]`; the point stored in the params is ignored.
    Symbolic,
    /// Coefficients as binary floats at the stored rational point.
    NumericAtPoint { precision_bits: usize },
    /// Coefficients as exact rationals at the stored rational point.
    ExactAtPoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsingParams {
    pub nu: ExactScalar,
    pub c: ExactScalar,
    pub mode: Mode,
}

impl IsingParams {
    pub fn symbolic() -> Self {
        IsingParams { nu: ExactScalar::one(), c: ExactScalar::one(), mode: Mode::Symbolic }
    }

    pub fn numeric(nu: ExactScalar, c: ExactScalar, precision_bits: usize) -> Result<Self> {
        let p = IsingParams { nu, c, mode: Mode::NumericAtPoint { precision_bits } };
        p.validate()?;
        Ok(p)
    }

    pub fn exact(nu: ExactScalar, c: ExactScalar) -> Result<Self> {
        let p = IsingParams { nu, c, mode: Mode::ExactAtPoint };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.nu.is_positive() || !self.c.is_positive() {
            return Err(Error::InvalidParameter("nu and c must be positive".into()));
        }
        match self.mode {
            Mode::NumericAtPoint { precision_bits } => {
                if precision_bits < 16 {
                    return Err(Error::InvalidParameter("precision must be at least 16 bits".into()));
                }
                if One::is_one(&self.nu) {
                    return Err(Error::NumericModeAtNuOne);
                }
            }
            Mode::Symbolic | Mode::ExactAtPoint => {}
        }
        Ok(())
    }
}

/// Coefficient rings the pipeline runs over.
pub trait SeriesCoeff: Ring {
    /// Division by a constant: exact for the exact rings, rounded for floats.
    fn divide(&self, d: &Self) -> Result<Self>;

    /// Whether a value that must vanish identically does so, relative to
    /// `scale`.
    fn negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
}

impl SeriesCoeff for ParamPoly {
    fn divide(&self, d: &Self) -> Result<Self> {
        self.exact_div(d)
    }
}

impl SeriesCoeff for ExactScalar {
    fn divide(&self, d: &Self) -> Result<Self> {
        Field::div(self, d)
    }
}

impl SeriesCoeff for HpReal {
    fn divide(&self, d: &Self) -> Result<Self> {
        Field::div(self, d)
    }

    fn negligible(&self, scale: &Self) -> bool {
        if self.is_zero() {
            return true;
        }
        let bits = (self.precision() / 2) as i64;
        let e = self.exponent().unwrap_or(i32::MIN) as i64;
        let s = scale.exponent().unwrap_or(0).max(1) as i64;
        e < s - bits
    }
}

/// The parameters as elements of the coefficient ring.
#[derive(Clone, Debug)]
pub struct Symbols<R> {
    pub nu: R,
    pub c: R,
    /// `1/c`, used to turn `Z(nu, c, cz)` into `Z(nu, c, z)`.
    pub c_inv: R,
}

impl Symbols<ParamPoly> {
    pub fn symbolic() -> Self {
        Symbols { nu: ParamPoly::nu(), c: ParamPoly::c(), c_inv: ParamPoly::monomial(ExactScalar::one(), 0, -1) }
    }

    /// `nu` symbolic, `c` a fixed rational.
    pub fn nu_only(c: &ExactScalar) -> Self {
        Symbols { nu: ParamPoly::nu(), c: ParamPoly::constant(c.clone()), c_inv: ParamPoly::constant(c.recip()) }
    }
}

impl Symbols<ExactScalar> {
    pub fn exact(nu: &ExactScalar, c: &ExactScalar) -> Self {
        Symbols { nu: nu.clone(), c: c.clone(), c_inv: c.recip() }
    }
}

impl Symbols<HpReal> {
    pub fn numeric(nu: &ExactScalar, c: &ExactScalar, bits: usize) -> Self {
        Symbols {
            nu: HpReal::from_rational(nu, bits),
            c: HpReal::from_rational(c, bits),
            c_inv: HpReal::from_rational(&c.recip(), bits),
        }
    }
}

impl<R: SeriesCoeff> Symbols<R> {
    fn k(&self, n: i64) -> R {
        self.nu.scalar_like(&int(n))
    }

    /// `1 - nu^2`.
    pub fn w(&self) -> R {
        self.nu.one_like().sub(&self.nu.mul(&self.nu))
    }

    /// `(N, D)` with the Lagrangian equation `z = S N(S) / D(S)^2`.
    pub fn lagrangian(&self) -> (UniPoly<R>, UniPoly<R>) {
        let (nu2, c2, w) = (self.nu.mul(&self.nu), self.c.mul(&self.c), self.w());
        let one = self.nu.one_like();
        let zero = self.nu.zero_like();
        let n = UniPoly::new(vec![
            one.clone(),
            self.k(-3).mul(&nu2).mul(&c2.add(&one)),
            self.k(-3).mul(&c2).mul(&w).mul(&self.k(3).mul(&nu2).add(&self.k(7))),
            zero.clone(),
            self.k(135).mul(&c2.pow(2)).mul(&w.pow(3)),
            zero.clone(),
            self.k(-243).mul(&c2.pow(3)).mul(&w.pow(5)),
        ]);
        let d = UniPoly::new(vec![one, zero, self.k(-9).mul(&c2).mul(&w.pow(2))]);
        (n, d)
    }

    /// `Pol_Z(s, z) = P_0(s) + z P_1(s) + z^2 P_2(s)`.
    pub fn pol_z_parts(&self) -> [UniPoly<R>; 3] {
        let (nu2, c2, w) = (self.nu.mul(&self.nu), self.c.mul(&self.c), self.w());
        let zero = self.nu.zero_like();
        let k = |n| self.k(n);
        let c2w = c2.mul(&w);
        let p0 = UniPoly::new(vec![
            zero.clone(),
            zero.clone(),
            k(5),
            k(-6).mul(&c2).add(&k(-15)).mul(&nu2).sub(&k(9).mul(&c2)),
            k(3).mul(&c2w).mul(&k(-3).mul(&nu2).sub(&k(47))),
            k(-27).mul(&c2).mul(&w.pow(2)).mul(&k(5).mul(&c2).sub(&nu2)),
            k(351).mul(&c2.pow(2)).mul(&w.pow(3)),
            k(405).mul(&c2.pow(3)).mul(&w.pow(4)),
        ]);
        let p1 = UniPoly::new(vec![
            zero.clone(),
            k(3).mul(&nu2).sub(&k(8)),
            k(9).mul(&w).mul(&k(4).mul(&c2).add(&nu2)),
            k(252).mul(&w.pow(2)).mul(&c2),
            k(108).mul(&c2.pow(2)).mul(&w.pow(3)),
            k(-324).mul(&c2.pow(2)).mul(&w.pow(4)),
        ]);
        let p2 = UniPoly::new(vec![k(3).mul(&w), k(-27).mul(&w.pow(2)).mul(&c2), k(-108).mul(&c2).mul(&w.pow(3))]);
        [p0, p1, p2]
    }

    /// `S` to order `order` by order-doubling Newton iteration on
    /// `F(S) = S N(S) - z D(S)^2`.
    pub fn solve_s(&self, order: usize) -> Result<TruncatedSeries<R>> {
        if order == 0 {
            return Err(Error::InvalidParameter("series order must be at least 1".into()));
        }
        let (n, d) = self.lagrangian();
        let (dn, dd) = (n.derivative(), d.derivative());
        let zero = self.nu.zero_like();
        // Correct modulo z^2.
        let mut s = TruncatedSeries::variable(order, &zero);
        let mut correct = 2;
        while correct <= order {
            let target = (2 * correct - 1).min(order);
            let st = s.truncate(target);
            let z = TruncatedSeries::variable(target, &zero);
            let pw = st.powers(6);
            let eval = |p: &UniPoly<R>| TruncatedSeries::eval_with_powers(p, &pw);
            let n_s = eval(&n);
            let d_s = eval(&d);
            let f = st.mul(&n_s).sub(&z.mul(&d_s).mul(&d_s));
            let fp = n_s.add(&st.mul(&eval(&dn))).sub(&z.mul(&d_s).mul(&eval(&dd)).scale(&self.k(2)));
            let step = f.mul(&fp.inv_unit()?);
            s = st.sub(&step).truncate(order);
            correct = target + 1;
        }
        Ok(s)
    }

    /// `Pol_Z(S(z), nu, c, z)` truncated at `z^order`.
    pub fn pol_z_series(&self, s: &TruncatedSeries<R>, order: usize) -> TruncatedSeries<R> {
        let s = s.truncate(order);
        let [p0, p1, p2] = self.pol_z_parts();
        let pw = s.powers(7);
        let eval = |p: &UniPoly<R>| TruncatedSeries::eval_with_powers(p, &pw);
        eval(&p0).add(&eval(&p1).shift_up(1)).add(&eval(&p2).shift_up(2))
    }

    /// Coefficients of `Z(nu, c, cz)`, indices `0..=order`.
    pub fn z_of_cz(&self, order: usize) -> Result<TruncatedSeries<R>> {
        let s = self.solve_s(order + 2)?;
        self.z_of_cz_from(&s, order)
    }

    /// As [`Self::z_of_cz`], reusing a precomputed `S` of order at least
    /// `order + 2`.
    pub fn z_of_cz_from(&self, s: &TruncatedSeries<R>, order: usize) -> Result<TruncatedSeries<R>> {
        let big = order + 2;
        if s.order() < big {
            return Err(Error::InvalidParameter("S is truncated too early".into()));
        }
        let s = s.truncate(big);
        let mut w_ser = self.pol_z_series(&s, big);
        // Z(cz) has no constant term, so the three lowest coefficients of
        // Pol_Z(S) cancel identically.
        let scale = w_ser.coeffs().get(3).cloned().unwrap_or_else(|| self.nu.one_like());
        let mut coeffs = w_ser.clone().into_coeffs();
        for (k, a) in coeffs.iter_mut().take(3).enumerate() {
            if !a.negligible(&scale) {
                return Err(Error::InvalidParameter(format!("coefficient z^{k} of Pol_Z(S) does not cancel")));
            }
            *a = a.zero_like();
        }
        w_ser = TruncatedSeries::from_coeffs(coeffs, big, &self.nu);
        let denom = TruncatedSeries::constant(self.nu.one_like(), big)
            .add(&s.scale(&self.k(3).mul(&self.c).mul(&self.c).mul(&self.w())));
        let q = w_ser.mul(&denom.inv_unit()?).shift_down(2)?;
        let nine_w = self.k(9).mul(&self.w());
        q.try_map(|a| a.divide(&nine_w))
    }

    /// Coefficients `Z_n(nu, c)`, `n = 0..=order` (`Z_0 = 0`).
    pub fn z_series(&self, order: usize) -> Result<TruncatedSeries<R>> {
        let zc = self.z_of_cz(order)?;
        Ok(self.rescale(&zc))
    }

    /// `a_n -> a_n c^-n`.
    pub fn rescale(&self, zc: &TruncatedSeries<R>) -> TruncatedSeries<R> {
        let mut factor = self.nu.one_like();
        let mut out = Vec::with_capacity(zc.order() + 1);
        for a in zc.coeffs() {
            out.push(a.mul(&factor));
            factor = factor.mul(&self.c_inv);
        }
        TruncatedSeries::from_coeffs(out, zc.order(), &self.nu)
    }
}

/// A series in whichever representation the mode selects.
#[derive(Clone, Debug, PartialEq)]
pub enum Series {
    Symbolic(TruncatedSeries<ParamPoly>),
    Exact(TruncatedSeries<ExactScalar>),
    Numeric(TruncatedSeries<HpReal>),
}

impl Series {
    pub fn order(&self) -> usize {
        match self {
            Series::Symbolic(s) => s.order(),
            Series::Exact(s) => s.order(),
            Series::Numeric(s) => s.order(),
        }
    }

    /// Coefficient `n` rendered as text.
    pub fn coeff_string(&self, n: usize) -> String {
        match self {
            Series::Symbolic(s) => s.coeff(n).to_string(),
            Series::Exact(s) => crate::exactalg::format_exact(s.coeff(n)),
            Series::Numeric(s) => s.coeff(n).to_string(),
        }
    }
}

/// `(N, D)` as polynomials in `S` over `Q[nu, c, 1/c]`, or at the point.
pub fn lagrangian_numer_denom(params: &IsingParams) -> Result<(UniPoly<ParamPoly>, UniPoly<ParamPoly>)> {
    params.validate()?;
    match params.mode {
        Mode::Symbolic => Ok(Symbols::symbolic().lagrangian()),
        _ => {
            let (n, d) = Symbols::exact(&params.nu, &params.c).lagrangian();
            Ok((n.map(|a| ParamPoly::constant(a.clone())), d.map(|a| ParamPoly::constant(a.clone()))))
        }
    }
}

/// Runs `f` at `bits` and `2 bits` and keeps the low-precision result if the
/// two agree to `bits / 2` bits in every coefficient.
pub fn audited<F>(bits: usize, f: F) -> Result<Vec<HpReal>>
where
    F: Fn(usize) -> Result<Vec<HpReal>>,
{
    let lo = f(bits)?;
    let hi = f(2 * bits)?;
    for (index, (a, b)) in lo.iter().zip(&hi).enumerate() {
        if !a.agrees_to_bits(b, bits / 2) {
            return Err(Error::PrecisionExhausted { index, bits, doubled: 2 * bits });
        }
    }
    Ok(lo)
}

/// The fixed point `S` of the Lagrangian equation.
pub fn solve_s(params: &IsingParams, order: usize) -> Result<Series> {
    params.validate()?;
    Ok(match params.mode {
        Mode::Symbolic => Series::Symbolic(Symbols::symbolic().solve_s(order)?),
        Mode::ExactAtPoint => Series::Exact(Symbols::exact(&params.nu, &params.c).solve_s(order)?),
        Mode::NumericAtPoint { precision_bits } => {
            let coeffs = audited(precision_bits, |b| {
                Ok(Symbols::numeric(&params.nu, &params.c, b).solve_s(order)?.into_coeffs())
            })?;
            let t = coeffs[0].clone();
            Series::Numeric(TruncatedSeries::from_coeffs(coeffs, order, &t))
        }
    })
}

/// `Pol_Z(S(z), nu, c, z)` for a series produced by [`solve_s`].
pub fn pol_z_eval(s: &Series, params: &IsingParams, order: usize) -> Result<Series> {
    params.validate()?;
    if s.order() < order {
        return Err(Error::InvalidParameter("S is truncated below the requested order".into()));
    }
    Ok(match (s, params.mode) {
        (Series::Symbolic(s), Mode::Symbolic) => Series::Symbolic(Symbols::symbolic().pol_z_series(s, order)),
        (Series::Exact(s), Mode::ExactAtPoint) => {
            Series::Exact(Symbols::exact(&params.nu, &params.c).pol_z_series(s, order))
        }
        (Series::Numeric(s), Mode::NumericAtPoint { .. }) => {
            let bits = s.coeff(0).precision();
            Series::Numeric(Symbols::numeric(&params.nu, &params.c, bits).pol_z_series(s, order))
        }
        _ => return Err(Error::InvalidParameter("series representation does not match mode".into())),
    })
}

/// `Z(nu, c, z) = sum Z_n z^n` up to `z^order`.
pub fn solve_z(params: &IsingParams, order: usize) -> Result<Series> {
    params.validate()?;
    if order == 0 {
        return Err(Error::InvalidParameter("series order must be at least 1".into()));
    }
    Ok(match params.mode {
        Mode::Symbolic => Series::Symbolic(Symbols::symbolic().z_series(order)?),
        Mode::ExactAtPoint => Series::Exact(z_exact(&params.nu, &params.c, order)?),
        Mode::NumericAtPoint { precision_bits } => {
            let coeffs = audited(precision_bits, |b| {
                Ok(Symbols::numeric(&params.nu, &params.c, b).z_series(order)?.into_coeffs())
            })?;
            let t = coeffs[0].clone();
            Series::Numeric(TruncatedSeries::from_coeffs(coeffs, order, &t))
        }
    })
}

/// Exact `Z_n` at a rational point. At `nu = 1` the pipeline runs with `nu`
/// kept symbolic so the division by `1 - nu^2` is exact, then evaluates.
pub fn z_exact(nu: &ExactScalar, c: &ExactScalar, order: usize) -> Result<TruncatedSeries<ExactScalar>> {
    if One::is_one(nu) {
        let z = Symbols::nu_only(c).z_series(order)?;
        let one = ExactScalar::one();
        return z.try_map(|a| a.eval(&one, &one));
    }
    Symbols::exact(nu, c).z_series(order)
}

/// High-precision values `Z_1..Z_n_max` at a point, audited at two precisions.
pub fn coefficient_sequence(params: &IsingParams, n_max: usize) -> Result<Vec<HpReal>> {
    params.validate()?;
    if !matches!(params.mode, Mode::NumericAtPoint { .. }) {
        return Err(Error::InvalidParameter("coefficient_sequence needs numeric mode".into()));
    }
    let z = match solve_z(params, n_max)? {
        Series::Numeric(z) => z,
        _ => unreachable!(),
    };
    let out: Vec<HpReal> = z.into_coeffs().into_iter().skip(1).collect();
    debug_assert_eq!(out.len(), n_max);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn pp(terms: &[(i64, u32, i32)]) -> ParamPoly {
        ParamPoly::from_terms(terms.iter().map(|&(q, a, b)| ((a, b), int(q))))
    }

    #[test]
    fn lagrangian_at_nu_one_and_support() {
        let (n, d) = Symbols::exact(&int(1), &int(1)).lagrangian();
        assert_eq!(n, UniPoly::from_ints(&[1, -6]));
        assert_eq!(d, UniPoly::from_ints(&[1]));
        let (n, d) = Symbols::symbolic().lagrangian();
        let degs = |p: &UniPoly<ParamPoly>| -> Vec<usize> {
            p.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i).collect()
        };
        assert_eq!(degs(&n), vec![0, 1, 2, 4, 6]);
        assert_eq!(degs(&d), vec![0, 2]);
    }

    #[test]
    fn lagrangian_at_nu_zero() {
        // nu = 0 lies outside the parameter range but the polynomial is defined there.
        let sym = Symbols::exact(&int(0), &int(2));
        let (n, _) = sym.lagrangian();
        // 1 - 21 c^2 S^2 + 135 c^4 S^4 - 243 c^6 S^6 at c = 2
        assert_eq!(n, UniPoly::from_ints(&[1, 0, -84, 0, 2160, 0, -15552]));
    }

    #[test]
    fn s_low_order_coefficients() {
        let s = Symbols::symbolic().solve_s(4).unwrap();
        assert!(s.coeff(0).is_zero());
        assert_eq!(*s.coeff(1), ParamPoly::one());
        assert_eq!(*s.coeff(2), pp(&[(3, 2, 2), (3, 2, 0)]));
    }

    #[test]
    fn z_low_order_coefficients() {
        let z = Symbols::symbolic().z_series(3).unwrap();
        assert!(z.coeff(0).is_zero());
        assert_eq!(*z.coeff(1), pp(&[(2, 2, 1)]));
        assert_eq!(*z.coeff(2), pp(&[(9, 4, 2), (8, 2, 0), (1, 0, 0)]));
        assert_eq!(*z.coeff(3), pp(&[(54, 6, 3), (72, 4, 1), (36, 2, 1), (36, 4, -1), (18, 2, -1)]));
    }

    #[test]
    fn exact_point_values() {
        let z = z_exact(&int(2), &int(1), 2).unwrap();
        assert_eq!(*z.coeff(2), int(177));
        let z = z_exact(&ratio(1, 2), &int(1), 1).unwrap();
        assert_eq!(*z.coeff(1), ratio(1, 2));
        // Rooted quartic maps 2, 9, 54, 378 weighted by 2^(n-1).
        let z = z_exact(&int(1), &int(1), 4).unwrap();
        assert_eq!(z.coeffs()[1..], [int(2), int(18), int(216), int(3024)]);
    }

    #[test]
    fn numeric_mode_rejects_nu_one() {
        assert_eq!(IsingParams::numeric(int(1), int(1), 128).unwrap_err(), Error::NumericModeAtNuOne);
    }

    #[test]
    fn numeric_matches_exact() {
        let params = IsingParams::numeric(int(2), ratio(9, 10), 192).unwrap();
        let seq = coefficient_sequence(&params, 8).unwrap();
        let exact = z_exact(&int(2), &ratio(9, 10), 8).unwrap();
        for (n, x) in seq.iter().enumerate() {
            let q = HpReal::from_rational(exact.coeff(n + 1), 192);
            assert!(x.agrees_to_bits(&q, 90), "n = {}", n + 1);
        }
    }
}
