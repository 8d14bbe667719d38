use super::{EvenCircleParams, FamilyError, OddCircleParams};
use crate::calculus::{hessian_poly, hessian_rational};
use crate::polycore::{int, BivPoly, PlaneRationalFunction, Rational, UniPoly};

/// `x^2 + y^2`
fn radius_sq() -> BivPoly {
    BivPoly::monomial(int(1), 2, 0) + BivPoly::monomial(int(1), 0, 2)
}

/// `x^2 + y^2 + 1`
pub(crate) fn odd_factor() -> BivPoly {
    radius_sq() + BivPoly::one()
}

/// `u - c` as a polynomial in `u`.
fn shifted_u(c: &Rational) -> UniPoly {
    UniPoly::from_coeffs(vec![-c, int(1)])
}

/// Radial profile: the Hessian is `4 s t` (even case) or
/// `4 s t / (x^2 + y^2 + 1)^(2n + 3)` (odd case), where `s`, `t` are `s_tilde`,
/// `t_tilde` with `x^2` replaced by `x^2 + y^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialPair {
    pub s_tilde: UniPoly,
    pub t_tilde: UniPoly,
}

impl RadialPair {
    pub fn s(&self) -> BivPoly {
        lift_radial(&self.s_tilde).expect("even polynomial by construction")
    }

    pub fn t(&self) -> BivPoly {
        lift_radial(&self.t_tilde).expect("even polynomial by construction")
    }
}

/// Replaces `x^2` by `x^2 + y^2` in an even polynomial; `None` if some odd
/// power of `x` occurs.
pub fn lift_radial(p: &UniPoly) -> Option<BivPoly> {
    let coeffs = p.coeffs();
    if coeffs.iter().skip(1).step_by(2).any(|c| c != &int(0)) {
        return None;
    }
    let in_u = UniPoly::from_coeffs(coeffs.iter().step_by(2).cloned().collect());
    Some(BivPoly::from_univariate_x(&in_u).substitute(&radius_sq(), &BivPoly::zero()))
}

pub fn build_even_circles(params: &EvenCircleParams) -> BivPoly {
    let u = radius_sq();
    params.radii().iter().fold(BivPoly::one(), |acc, m| {
        &acc * &(&u - &BivPoly::constant(m * m))
    })
}

/// `sum_j prod_{i != j} (u - m_i^2)` and the same with `2u` times the sum over
/// ordered pairs `j != l`, as polynomials in `u`.
fn even_profile(squares: &[Rational]) -> (UniPoly, UniPoly) {
    let n = squares.len();
    let prod_except = |skip: &[usize]| {
        (0..n)
            .filter(|i| !skip.contains(i))
            .fold(UniPoly::one(), |acc, i| &acc * &shifted_u(&squares[i]))
    };
    let s = (0..n).fold(UniPoly::zero(), |acc, j| &acc + &prod_except(&[j]));
    let mut pairs = UniPoly::zero();
    for j in 0..n {
        for l in (0..n).filter(|&l| l != j) {
            pairs = &pairs + &prod_except(&[j, l]);
        }
    }
    let two_u = UniPoly::from_coeffs(vec![int(0), int(2)]);
    let t = &s + &(&two_u * &pairs);
    (s, t)
}

/// `s_tilde`, `t_tilde` of the even family, checked against `Hess f = 4 s t`.
pub fn radial_even(params: &EvenCircleParams) -> Result<RadialPair, FamilyError> {
    let squares: Vec<Rational> = params.radii().iter().map(|m| m * m).collect();
    let (s, t) = even_profile(&squares);
    let pair = RadialPair {
        s_tilde: s.in_square(),
        t_tilde: t.in_square(),
    };
    let lhs = hessian_poly(&build_even_circles(params));
    let rhs = (&pair.s() * &pair.t()).scale(&int(4));
    if lhs != rhs {
        return Err(FamilyError::IdentityFailed(format!(
            "Hess f = {lhs} but 4 s t = {rhs}"
        )));
    }
    Ok(pair)
}

pub fn build_odd_circles(params: &OddCircleParams) -> PlaneRationalFunction {
    let u = radius_sq();
    let n = params.n();
    let num = (1..=n).fold(BivPoly::one(), |acc, k| {
        &acc * &(&u - &BivPoly::constant(int(i64::from(k * k))))
    });
    let den = odd_factor().pow(n);
    PlaneRationalFunction::with_factors(num, den, vec![odd_factor()])
        .expect("denominator is a power of a nonzero polynomial")
}

/// `s_tilde`, `t_tilde` of the odd family, checked against
/// `Hess f = 4 s t / (x^2 + y^2 + 1)^(2n + 3)` after clearing denominators.
pub fn radial_odd(params: &OddCircleParams) -> Result<RadialPair, FamilyError> {
    let n = params.n() as usize;
    let sq: Vec<Rational> = (1..=n as i64).map(|k| int(k * k)).collect();
    let w: Vec<Rational> = (1..=n as i64).map(|k| int(k * k + 1)).collect();
    let prod_except = |skip: &[usize]| {
        (0..n)
            .filter(|i| !skip.contains(i))
            .fold(UniPoly::one(), |acc, i| &acc * &shifted_u(&sq[i]))
    };
    let s = (0..n).fold(UniPoly::zero(), |acc, j| {
        &acc + &prod_except(&[j]).scale(&w[j])
    });
    let mut pairs = UniPoly::zero();
    for j in 0..n {
        for l in (0..n).filter(|&l| l != j) {
            pairs = &pairs + &prod_except(&[j, l]).scale(&(&w[j] * &w[l]));
        }
    }
    let one_minus_3u = UniPoly::from_ints(&[1, -3]);
    let two_u = UniPoly::from_ints(&[0, 2]);
    let t = &(&one_minus_3u * &s) + &(&two_u * &pairs);
    let pair = RadialPair {
        s_tilde: s.in_square(),
        t_tilde: t.in_square(),
    };

    let hess = hessian_rational(&build_odd_circles(params))?;
    let exponent = 2 * params.n() + 3;
    let lhs = hess.num() * &odd_factor().pow(exponent);
    let rhs = &(&pair.s() * &pair.t()).scale(&int(4)) * hess.den();
    if lhs != rhs {
        return Err(FamilyError::IdentityFailed(format!(
            "Hess f = {hess} does not match 4 s t / (x^2 + y^2 + 1)^{exponent}"
        )));
    }
    Ok(pair)
}
