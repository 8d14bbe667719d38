//! Certificates for special parabolic points: `Hess f = 0`, the Hessian
//! curve is smooth there, the unique asymptotic direction has contact order
//! at least 4, and the 4-jet is not a (signed) perfect square.

use serde::{Deserialize, Serialize};

use super::{hessian_poly, CalculusError, GraphFunction};
use crate::polycore::{
    is_square_form, rational_to_f64, serde_rational, BivPoly, ExactField, PolyError, Rational,
    RationalField, UniPoly,
};
use crate::realroots::{IsolatingInterval, RealRootField};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum CertPoint {
    Exact {
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        y: Rational,
    },
    /// `base + theta * dir`, `theta` the unique root of `defining_poly` in
    /// `interval`.
    Algebraic {
        #[serde(with = "serde_rational::pair")]
        base: (Rational, Rational),
        #[serde(with = "serde_rational::pair")]
        dir: (Rational, Rational),
        defining_poly: String,
        interval: IsolatingInterval,
        approx: [f64; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertDirection {
    /// Present when the direction is rational.
    pub exact: Option<[String; 2]>,
    pub approx: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialPointCertificate {
    pub point: CertPoint,
    pub hess_zero: bool,
    pub grad_hess_nonzero: bool,
    pub unique_asymptotic_direction: Option<CertDirection>,
    pub contact_order_ge_4: bool,
    pub jet_non_square: bool,
    pub verdict: bool,
}

struct Checks {
    grad_hess_nonzero: bool,
    direction: Option<CertDirection>,
    contact_order_ge_4: bool,
    jet_non_square: bool,
}

fn run_checks<F: ExactField>(
    field: &F,
    f: &GraphFunction,
    hess_num: &BivPoly,
    x: &F::Elem,
    y: &F::Elem,
) -> Result<Checks, CalculusError> {
    let pole = || CalculusError::Pole(format!("{x:?}"), format!("{y:?}"));
    let jet = f.jet(field, x, y, 4).ok_or_else(pole)?;
    let (a, b, c) = jet.second_form(field);
    let disc = field.sub(&field.mul(&b, &b), &field.mul(&a, &c));
    if !field.is_zero(&disc) {
        return Err(CalculusError::NotParabolic);
    }
    let grad_hess_nonzero = !field.is_zero(&hess_num.dx().eval_in(field, x, y))
        || !field.is_zero(&hess_num.dy().eval_in(field, x, y));

    // With B^2 = AC the form is A (dx + (B/A) dy)^2, so (-B, A) or (C, -B)
    // spans its kernel; all three zero means every direction is asymptotic.
    let kernel = if !field.is_zero(&a) {
        Some((field.neg(&b), a.clone()))
    } else if !field.is_zero(&c) {
        Some((c.clone(), field.neg(&b)))
    } else {
        None
    };
    let (direction, contact_order_ge_4) = match kernel {
        Some((vx, vy)) => {
            let (vx, vy) = normalize(field, vx, vy);
            let ge4 = field.is_zero(&jet.along(field, &vx, &vy, 3));
            let exact = match (field.as_rational(&vx), field.as_rational(&vy)) {
                (Some(p), Some(q)) => Some([p.to_string(), q.to_string()]),
                _ => None,
            };
            let dir = CertDirection {
                exact,
                approx: [field.approx(&vx), field.approx(&vy)],
            };
            (Some(dir), ge4)
        }
        None => (None, false),
    };
    let jet_non_square = !(is_square_form(field, &jet) || is_square_form(field, &jet.neg(field)));
    Ok(Checks {
        grad_hess_nonzero,
        direction,
        contact_order_ge_4,
        jet_non_square,
    })
}

fn normalize<F: ExactField>(field: &F, vx: F::Elem, vy: F::Elem) -> (F::Elem, F::Elem) {
    match field.inv(&vx) {
        Some(inv) => (field.one(), field.mul(&vy, &inv)),
        None => (field.zero(), field.one()),
    }
}

fn assemble(point: CertPoint, checks: Checks) -> SpecialPointCertificate {
    let verdict = checks.grad_hess_nonzero
        && checks.direction.is_some()
        && checks.contact_order_ge_4
        && checks.jet_non_square;
    SpecialPointCertificate {
        point,
        hess_zero: true,
        grad_hess_nonzero: checks.grad_hess_nonzero,
        unique_asymptotic_direction: checks.direction,
        contact_order_ge_4: checks.contact_order_ge_4,
        jet_non_square: checks.jet_non_square,
        verdict,
    }
}

/// Certificate at a rational parabolic point.
pub fn certify_special_parabolic(
    f: &GraphFunction,
    p: &(Rational, Rational),
) -> Result<SpecialPointCertificate, CalculusError> {
    let hess = hessian_numerator_for_cert(f);
    let checks = run_checks(&RationalField, f, &hess, &p.0, &p.1)?;
    Ok(assemble(
        CertPoint::Exact {
            x: p.0.clone(),
            y: p.1.clone(),
        },
        checks,
    ))
}

/// Certificate at the point `base + theta * dir`, where `theta` is the root
/// of `poly` isolated by `interval`. Used when the parabolic point is
/// irrational.
pub fn certify_special_at_root(
    f: &GraphFunction,
    base: &(Rational, Rational),
    dir: &(Rational, Rational),
    poly: &UniPoly,
    interval: &IsolatingInterval,
) -> Result<SpecialPointCertificate, CalculusError> {
    let zero = Rational::from_integer(0.into());
    if dir.0 == zero && dir.1 == zero {
        return Err(PolyError::ZeroDirection.into());
    }
    let field = RealRootField::new(poly, interval).map_err(|e| {
        CalculusError::Poly(PolyError::Parse {
            input: poly.to_string(),
            reason: e.to_string(),
        })
    })?;
    let theta = field.theta();
    let x = field.add(&field.from_rational(&base.0), &field.scale(&theta, &dir.0));
    let y = field.add(&field.from_rational(&base.1), &field.scale(&theta, &dir.1));
    let hess = hessian_numerator_for_cert(f);
    let checks = run_checks(&field, f, &hess, &x, &y)?;
    let approx = [field.approx(&x), field.approx(&y)];
    Ok(assemble(
        CertPoint::Algebraic {
            base: base.clone(),
            dir: dir.clone(),
            defining_poly: poly.to_string(),
            interval: field.interval().clone(),
            approx,
        },
        checks,
    ))
}

fn hessian_numerator_for_cert(f: &GraphFunction) -> BivPoly {
    match f {
        GraphFunction::Poly(p) => hessian_poly(p),
        GraphFunction::Rational(_) => f.hessian_numerator(),
    }
}

impl SpecialPointCertificate {
    pub fn approx_point(&self) -> [f64; 2] {
        match &self.point {
            CertPoint::Exact { x, y } => [rational_to_f64(x), rational_to_f64(y)],
            CertPoint::Algebraic { approx, .. } => *approx,
        }
    }
}
