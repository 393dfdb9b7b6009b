use crate::error::{Error, Result};
use crate::exactalg::{discriminant, int, poly_exact_div, ExactScalar, Ring, UniPoly};
use crate::series::{IsingParams, Mode, Symbols};

/// Factors of the characteristic equation `phi(S) - S phi'(S) = 0`,
/// `phi = D^2 / N`, over the rationals at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct CharFactors {
    /// `(1 + 3c(1 - nu^2)S)(1 - 3c(1 - nu^2)S)`, which is `D`.
    pub q1: UniPoly<ExactScalar>,
    /// `D N - 2 S D' N + S D N'`.
    pub q2: UniPoly<ExactScalar>,
}

fn point(params: &IsingParams) -> Result<Symbols<ExactScalar>> {
    params.validate()?;
    if params.mode == Mode::Symbolic {
        return Err(Error::InvalidParameter("this operation works at a rational point, not symbolically".into()));
    }
    Ok(Symbols::exact(&params.nu, &params.c))
}

pub fn char_factors(params: &IsingParams) -> Result<CharFactors> {
    let sym = point(params)?;
    let (n, d) = sym.lagrangian();
    let s = UniPoly::<ExactScalar>::x();
    let q2 = d.mul(&n).sub(&s.mul(&d.derivative()).mul(&n).scale(&int(2))).add(&s.mul(&d).mul(&n.derivative()));
    let k = sym.c.clone() * int(3) * sym.w();
    let q1 = UniPoly::new(vec![int(1), k.clone()]).mul(&UniPoly::new(vec![int(1), -k]));
    // phi - S phi' = D (D N - 2 S D' N + S D N') / N^2
    let numer = d
        .mul(&d)
        .mul(&n)
        .sub(&s.mul(&d.mul(&d.derivative()).mul(&n).scale(&int(2)).sub(&d.mul(&d).mul(&n.derivative()))));
    if q1.mul(&q2) != numer || q1 != d {
        return Err(Error::FactorizationMismatch);
    }
    let expected_degree = if sym.w().is_zero() { 1 } else { 8 };
    if q2.degree() != Some(expected_degree) {
        return Err(Error::FactorizationMismatch);
    }
    Ok(CharFactors { q1, q2 })
}

/// `z = S N(S) / D(S)^2` at a rational `S`, with the common factor of
/// numerator and denominator cancelled first (it vanishes at `S(rho)` when
/// `c = 1`, `nu >= 4`).
pub fn lagrangian_z(params: &IsingParams, s: &ExactScalar) -> Result<ExactScalar> {
    let f = primitive_poly(params)?;
    let den = f.a.eval(s);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(f.b.eval(s) / den)
}

/// A cancelling polynomial `A(S) z - B(S)` of `S`, derived from the
/// cleared Lagrangian equation `z D(S)^2 - S N(S)`.
///
/// At `c = 1` the cleared form carries a repeated `z`-independent factor,
/// `(1 + 3(1 - nu^2)S)^2`; `content` records what was divided out.
#[derive(Clone, Debug, PartialEq)]
pub struct CancellingPoly {
    pub a: UniPoly<ExactScalar>,
    pub b: UniPoly<ExactScalar>,
    /// The removed `z`-independent factor (monic).
    pub content: UniPoly<ExactScalar>,
}

impl CancellingPoly {
    /// As a polynomial in `S` with coefficients in `Q[z]`.
    pub fn in_s(&self) -> UniPoly<UniPoly<ExactScalar>> {
        let len = self.a.coeffs().len().max(self.b.coeffs().len());
        let zero = ExactScalar::from_integer(0.into());
        let coeffs = (0..len)
            .map(|k| {
                let ak = self.a.coeff(k).cloned().unwrap_or_else(|| zero.clone());
                let bk = self.b.coeff(k).cloned().unwrap_or_else(|| zero.clone());
                UniPoly::new(vec![-bk, ak])
            })
            .collect();
        UniPoly::new(coeffs)
    }

    /// `A(s) z - B(s)`.
    pub fn eval(&self, z: &ExactScalar, s: &ExactScalar) -> ExactScalar {
        self.a.eval(s) * z - self.b.eval(s)
    }

    pub fn s_degree(&self) -> usize {
        self.a.degree().unwrap_or(0).max(self.b.degree().unwrap_or(0))
    }
}

/// The Lagrangian equation with denominators cleared, before removing content.
pub fn cleared_form(params: &IsingParams) -> Result<(UniPoly<ExactScalar>, UniPoly<ExactScalar>)> {
    let (n, d) = point(params)?.lagrangian();
    Ok((d.mul(&d), UniPoly::<ExactScalar>::x().mul(&n)))
}

/// The cleared form divided by the repeated part of its content, so that it
/// is squarefree as a polynomial in `S`. Generic points leave it unchanged.
pub fn cancelling_poly(params: &IsingParams) -> Result<CancellingPoly> {
    let (a, b) = cleared_form(params)?;
    let g = a.gcd(&b)?;
    let repeated = poly_exact_div(&g, &g.squarefree_part()?)?;
    Ok(CancellingPoly { a: poly_exact_div(&a, &repeated)?, b: poly_exact_div(&b, &repeated)?, content: repeated })
}

/// The cleared form divided by all of its content: the primitive part as a
/// polynomial in `z`. Its only branches are those of `S` and its conjugates.
pub fn primitive_poly(params: &IsingParams) -> Result<CancellingPoly> {
    let (a, b) = cleared_form(params)?;
    let g = a.gcd(&b)?;
    Ok(CancellingPoly { a: poly_exact_div(&a, &g)?, b: poly_exact_div(&b, &g)?, content: g })
}

/// Discriminant in `S` of [`cancelling_poly`], a polynomial in `z`.
///
/// The cleared form itself has an identically vanishing discriminant at
/// `c = 1`.
pub fn discriminant_in_z(params: &IsingParams) -> Result<UniPoly<ExactScalar>> {
    let f = cancelling_poly(params)?.in_s();
    discriminant(&f)
}

/// Discriminant of the cleared form itself, content included.
pub fn discriminant_of_cleared(params: &IsingParams) -> Result<UniPoly<ExactScalar>> {
    let (a, b) = cleared_form(params)?;
    let f = CancellingPoly { a, b, content: UniPoly::from_ints(&[1]) }.in_s();
    discriminant(&f)
}

/// `P1 = 36(nu^2 - 1)^2 z - 3 nu^2 + 8`.
pub fn p1(nu: &ExactScalar) -> UniPoly<ExactScalar> {
    let nu2 = nu * nu;
    let t = &nu2 - int(1);
    UniPoly::new(vec![int(8) - int(3) * &nu2, int(36) * &t * &t])
}

/// `P2 = 81(nu^2 - 1)^2 (nu + 1)^2 z^2 + 36(3 nu - 1)(nu + 1)^2 z - 16 nu + 4`.
pub fn p2(nu: &ExactScalar) -> UniPoly<ExactScalar> {
    let t = nu * nu - int(1);
    let u = nu + int(1);
    UniPoly::new(vec![int(4) - int(16) * nu, int(36) * (int(3) * nu - int(1)) * &u * &u, int(81) * &t * &t * &u * &u])
}

/// `P3(nu, z) = P2(-nu, z)`.
pub fn p3(nu: &ExactScalar) -> UniPoly<ExactScalar> {
    p2(&-nu)
}

/// Quotient of the discriminant by `P1^3 P2 P3` at `c = 1`.
pub fn discriminant_cofactor(nu: &ExactScalar) -> Result<UniPoly<ExactScalar>> {
    let params = IsingParams::exact(nu.clone(), int(1))?;
    let disc = discriminant_in_z(&params)?;
    let p = p1(nu).pow(3).mul(&p2(nu)).mul(&p3(nu));
    poly_exact_div(&disc, &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{isolate_real_roots, ratio};

    fn at(nu: ExactScalar, c: ExactScalar) -> IsingParams {
        IsingParams::exact(nu, c).unwrap()
    }

    #[test]
    fn q2_has_degree_eight() {
        let f = char_factors(&at(int(2), ratio(9, 10))).unwrap();
        assert_eq!(f.q2.degree(), Some(8));
        assert_eq!(f.q1.degree(), Some(2));
    }

    #[test]
    fn q2_at_nu_one() {
        let f = char_factors(&at(int(1), int(1))).unwrap();
        assert_eq!(f.q1, UniPoly::from_ints(&[1]));
        // N = 1 - 6S, so N + S N' = 1 - 12 S
        assert_eq!(f.q2, UniPoly::from_ints(&[1, -12]));
    }

    #[test]
    fn content_appears_only_at_c_one() {
        assert_eq!(cancelling_poly(&at(int(2), ratio(9, 10))).unwrap().content.degree(), Some(0));
        assert_eq!(cancelling_poly(&at(int(2), ratio(9, 10))).unwrap().s_degree(), 7);
        // (1 + 3(1 - nu^2) S)^2 at nu = 2; one copy is kept.
        let cp = cancelling_poly(&at(int(2), int(1))).unwrap();
        assert_eq!(cp.content, UniPoly::from_ints(&[-1, 9]).monic().unwrap());
        assert_eq!(cp.s_degree(), 6);
        let pp = primitive_poly(&at(int(2), int(1))).unwrap();
        assert_eq!(pp.content, UniPoly::from_ints(&[1, -9]).pow(2).monic().unwrap());
        assert_eq!(pp.s_degree(), 5);
    }

    #[test]
    fn cleared_discriminant_vanishes_at_c_one() {
        assert!(discriminant_of_cleared(&at(int(2), int(1))).unwrap().is_zero());
    }

    #[test]
    fn p1_root_at_nu_four() {
        let ivs = isolate_real_roots(&p1(&int(4))).unwrap();
        assert_eq!(ivs.len(), 1);
        assert_eq!(p1(&int(4)).eval(&ratio(2, 405)), int(0));
    }

    #[test]
    fn discriminant_divisibility() {
        for nu in [int(2), int(5)] {
            let q = discriminant_cofactor(&nu).unwrap();
            assert_eq!(q.degree(), Some(0), "nu = {nu}");
        }
    }

    #[test]
    fn discriminant_degree_bound() {
        let d = discriminant_in_z(&at(int(2), ratio(19, 20))).unwrap();
        assert!(d.degree().unwrap() <= 8);
    }
}
