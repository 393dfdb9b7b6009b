//! Resultants and discriminants by the subresultant remainder sequence.

use super::ring::ExactDiv;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Resultant with the convention `res(p, q) = lc(q)^deg(p) * prod p(beta)`
/// over the roots `beta` of `q`.
///
/// This differs from the Sylvester-matrix determinant by `(-1)^(deg p * deg q)`.
pub fn resultant<R: ExactDiv>(p: &UniPoly<R>, q: &UniPoly<R>) -> Result<R> {
    let (m, n) = match (p.degree(), q.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::InvalidParameter("resultant of a zero polynomial".into())),
    };
    let sylvester = sylvester_resultant(p, q)?;
    Ok(if (m * n) % 2 == 1 { sylvester.neg() } else { sylvester })
}

/// Determinant of the Sylvester matrix, i.e. `lc(a)^deg(b) * prod b(alpha)`.
fn sylvester_resultant<R: ExactDiv>(a: &UniPoly<R>, b: &UniPoly<R>) -> Result<R> {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_flip = false;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign_flip = true;
        }
    }
    let template = a.leading().unwrap().clone();
    if b.degree() == Some(0) {
        let r = b.leading().unwrap().pow(a.degree().unwrap() as u32);
        return Ok(if sign_flip { r.neg() } else { r });
    }
    let mut g = template.one_like();
    let mut h = template.one_like();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_flip = !sign_flip;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = g.mul(&h.pow(delta as u32));
        b = r.exact_div_scalar(&divisor)?;
        g = a.leading().unwrap().clone();
        if delta > 0 {
            h = g.pow(delta as u32).exact_div(&h.pow(delta as u32 - 1))?;
        }
        match b.degree() {
            None => return Ok(template.zero_like()),
            Some(0) => {
                let da = a.degree().unwrap() as u32;
                let res = b.leading().unwrap().pow(da).exact_div(&h.pow(da - 1))?;
                return Ok(if sign_flip { res.neg() } else { res });
            }
            Some(_) => {}
        }
    }
}

/// `disc(p) = (-1)^(d(d-1)/2) res(p, p') / lc(p)`, `d = deg p >= 1`.
pub fn discriminant<R: ExactDiv>(p: &UniPoly<R>) -> Result<R> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidParameter("discriminant needs degree at least one".into())),
    };
    if d == 1 {
        return Ok(p.leading().unwrap().one_like());
    }
    let res = resultant(p, &p.derivative())?;
    let q = res.exact_div(p.leading().unwrap())?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { q.neg() } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::param::ParamPoly;
    use crate::exactalg::ring::Ring;
    use crate::exactalg::scalar::{int, ExactScalar};

    fn p(c: &[i64]) -> UniPoly<ExactScalar> {
        UniPoly::from_ints(c)
    }

    #[test]
    fn linear_pair_sign_convention() {
        // res(x - a, x - b) = b - a
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-7, 1])).unwrap(), int(4));
    }

    #[test]
    fn shared_root_gives_zero() {
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).unwrap(), int(0));
    }

    #[test]
    fn evaluates_at_root_of_linear() {
        // res(x^2 + 1, x - 1) = 1^2 * (1 + 1) = 2
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 1])).unwrap(), int(2));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 0, 1])).unwrap(), int(2));
    }

    #[test]
    fn quadratic_and_cubic_discriminants() {
        // x^2 + 3x + 1: 9 - 4
        assert_eq!(discriminant(&p(&[1, 3, 1])).unwrap(), int(5));
        // x^3 + 2x + 5: -4*8 - 27*25
        assert_eq!(discriminant(&p(&[5, 2, 0, 1])).unwrap(), int(-32 - 675));
        // (x - 1)^2 (x + 2)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(discriminant(&f).unwrap(), int(0));
    }

    #[test]
    fn symbolic_quadratic_discriminant() {
        // x^2 + nu x + c  ->  nu^2 - 4c
        let nu = ParamPoly::nu();
        let c = ParamPoly::c();
        let f = UniPoly::new(vec![c.clone(), nu.clone(), ParamPoly::one()]);
        let expected = nu.mul(&nu).sub(&c.mul_int(4));
        assert_eq!(discriminant(&f).unwrap(), expected);
    }

    #[test]
    fn resultant_over_polynomial_coefficients() {
        // Eliminating y from y - x and y^2 - 2 gives x^2 - 2 (up to sign).
        let x = UniPoly::from_ints(&[0, 1]);
        let one = UniPoly::from_ints(&[1]);
        let f = UniPoly::new(vec![x.neg(), one.clone()]);
        let g = UniPoly::new(vec![UniPoly::from_ints(&[-2]), UniPoly::zero(), one]);
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, UniPoly::from_ints(&[-2, 0, 1]));
    }
}
