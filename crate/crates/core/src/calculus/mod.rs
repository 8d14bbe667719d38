//! Second-order geometry of graph surfaces `z = f(x, y)`: the Hessian,
//! point types, asymptotic directions and contact orders.
//!
//! At a point `p` the second fundamental form is `A dx^2 + 2B dx dy + C dy^2`
//! with `(A, B, C) = (f_xx, f_xy, f_yy)(p)`. Its discriminant `B^2 - AC`
//! equals `-Hess f(p)` and decides the type of the point: negative is
//! elliptic, zero parabolic, positive hyperbolic.

mod certificate;

pub use certificate::{
    certify_special_at_root, certify_special_parabolic, CertDirection, CertPoint,
    SpecialPointCertificate,
};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{
    int, rational_sqrt, BivPoly, ExactField, Jet, PlaneRationalFunction, PolyError, QuadraticField,
    Rational, RationalField,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("point ({0}, {1}) is a pole of the function")]
    Pole(String, String),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("point is not parabolic (Hess f != 0)")]
    NotParabolic,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A function whose graph is studied: a polynomial or a quotient of
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFunction {
    Poly(BivPoly),
    Rational(PlaneRationalFunction),
}

impl From<BivPoly> for GraphFunction {
    fn from(p: BivPoly) -> Self {
        GraphFunction::Poly(p)
    }
}

impl From<PlaneRationalFunction> for GraphFunction {
    fn from(f: PlaneRationalFunction) -> Self {
        GraphFunction::Rational(f)
    }
}

impl GraphFunction {
    pub fn degree(&self) -> u32 {
        match self {
            GraphFunction::Poly(p) => p.degree().unwrap_or(0),
            GraphFunction::Rational(f) => f
                .num()
                .degree()
                .unwrap_or(0)
                .max(f.den().degree().unwrap_or(0)),
        }
    }

    /// Taylor jet at a point; `None` at a pole.
    pub fn jet<F: ExactField>(
        &self,
        field: &F,
        x: &F::Elem,
        y: &F::Elem,
        order: u32,
    ) -> Option<Jet<F::Elem>> {
        match self {
            GraphFunction::Poly(p) => Some(Jet::of_poly(field, p, x, y, order)),
            GraphFunction::Rational(f) => {
                let n = Jet::of_poly(field, f.num(), x, y, order);
                let d = Jet::of_poly(field, f.den(), x, y, order);
                n.div(field, &d)
            }
        }
    }

    /// Numerator of the Hessian; its zero set is the Hessian curve wherever
    /// the function is defined.
    pub fn hessian_numerator(&self) -> BivPoly {
        match self {
            GraphFunction::Poly(p) => hessian_poly(p),
            GraphFunction::Rational(f) => hessian_rational(f)
                .expect("denominator nonzero by construction")
                .num()
                .clone(),
        }
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        match self {
            GraphFunction::Poly(p) => Some(p.evaluate(x, y)),
            GraphFunction::Rational(f) => f.evaluate(x, y),
        }
    }

    fn rational_jet(
        &self,
        p: &(Rational, Rational),
        order: u32,
    ) -> Result<Jet<Rational>, CalculusError> {
        self.jet(&RationalField, &p.0, &p.1, order)
            .ok_or_else(|| CalculusError::Pole(p.0.to_string(), p.1.to_string()))
    }
}

/// `f_xx f_yy - f_xy^2`.
pub fn hessian_poly(f: &BivPoly) -> BivPoly {
    let fx = f.dx();
    let fy = f.dy();
    let fxx = fx.dx();
    let fyy = fy.dy();
    let fxy = fx.dy();
    &(&fxx * &fyy) - &(&fxy * &fxy)
}

/// Hessian of `N / D` by the quotient rule, reduced with the denominator's
/// known factors (and `D` itself).
pub fn hessian_rational(f: &PlaneRationalFunction) -> Result<PlaneRationalFunction, CalculusError> {
    let (n, d) = (f.num(), f.den());
    if d.is_zero() {
        return Err(PolyError::ZeroDenominator.into());
    }
    let (nx, ny, dx, dy) = (n.dx(), n.dy(), d.dx(), d.dy());
    // f_x = U / D^2, f_y = V / D^2
    let u = &(&nx * d) - &(n * &dx);
    let v = &(&ny * d) - &(n * &dy);
    // second derivatives over D^3
    let two = BivPoly::constant(int(2));
    let fxx = &(&u.dx() * d) - &(&(&two * &u) * &dx);
    let fyy = &(&v.dy() * d) - &(&(&two * &v) * &dy);
    let fxy = &(&u.dy() * d) - &(&(&two * &u) * &dy);
    let num = &(&fxx * &fyy) - &(&fxy * &fxy);
    let den = d.pow(6);
    let mut factors = f.known_factors().to_vec();
    if !d.is_constant() {
        factors.push(d.clone());
    }
    let h = PlaneRationalFunction::with_factors(num, den, factors)?;
    Ok(h.reduced())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl std::fmt::Display for PointClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PointClass::Elliptic => "Elliptic",
            PointClass::Parabolic => "Parabolic",
            PointClass::Hyperbolic => "Hyperbolic",
        };
        f.write_str(s)
    }
}

/// `(A, B, C) = (f_xx, f_xy, f_yy)` at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl SecondForm {
    /// `B^2 - AC`
    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - &self.a * &self.c
    }

    pub fn classify(&self) -> PointClass {
        match self.discriminant().cmp(&Rational::from_integer(0.into())) {
            Ordering::Less => PointClass::Elliptic,
            Ordering::Equal => PointClass::Parabolic,
            Ordering::Greater => PointClass::Hyperbolic,
        }
    }
}

pub fn second_form(
    f: &GraphFunction,
    p: &(Rational, Rational),
) -> Result<SecondForm, CalculusError> {
    let jet = f.rational_jet(p, 2)?;
    let (a, b, c) = jet.second_form(&RationalField);
    Ok(SecondForm { a, b, c })
}

pub fn classify_point(
    f: &GraphFunction,
    p: &(Rational, Rational),
) -> Result<PointClass, CalculusError> {
    Ok(second_form(f, p)?.classify())
}

/// Tangent direction `(dx, dy)` in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Direction {
    /// Normalized so that `dx = 1`, or `(0, 1)`.
    Rational(Rational, Rational),
    /// `(s, 1)` where `s` is a root of `a s^2 + 2 b s + c = 0` whose
    /// discriminant `b^2 - ac` is positive but not a rational square; `plus`
    /// selects `s = (-b + sqrt(b^2 - ac)) / a`.
    Quadratic {
        a: Rational,
        b: Rational,
        c: Rational,
        plus: bool,
    },
}

impl Direction {
    pub fn rational(dx: Rational, dy: Rational) -> Result<Self, CalculusError> {
        let zero = Rational::from_integer(0.into());
        if dx == zero && dy == zero {
            return Err(CalculusError::ZeroDirection);
        }
        if dx != zero {
            Ok(Direction::Rational(int(1), dy / dx))
        } else {
            Ok(Direction::Rational(zero, int(1)))
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        match self {
            Direction::Rational(x, y) => (
                crate::polycore::rational_to_f64(x),
                crate::polycore::rational_to_f64(y),
            ),
            Direction::Quadratic { .. } => {
                let (field, (sx, sy)) = self.in_quadratic_field().expect("quadratic direction");
                (field.approx(&sx), field.approx(&sy))
            }
        }
    }

    /// The irrational direction as a pair of field elements.
    pub fn in_quadratic_field(
        &self,
    ) -> Option<(
        QuadraticField,
        (crate::polycore::QuadElem, crate::polycore::QuadElem),
    )> {
        let Direction::Quadratic { a, b, c, plus } = self else {
            return None;
        };
        let field = QuadraticField::new(b * b - a * c)?;
        let sign = if *plus { int(1) } else { int(-1) };
        let s = field.elem(-b / a, sign / a);
        Some((field.clone(), (s, field.one())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AsymptoticDirections {
    None,
    One(Direction),
    Two(Direction, Direction),
    All,
}

impl AsymptoticDirections {
    pub fn directions(&self) -> Vec<Direction> {
        match self {
            AsymptoticDirections::None | AsymptoticDirections::All => Vec::new(),
            AsymptoticDirections::One(d) => vec![d.clone()],
            AsymptoticDirections::Two(d, e) => vec![d.clone(), e.clone()],
        }
    }
}

/// Real solutions of `A dx^2 + 2B dx dy + C dy^2 = 0` at `p`.
pub fn asymptotic_directions(
    f: &GraphFunction,
    p: &(Rational, Rational),
) -> Result<AsymptoticDirections, CalculusError> {
    let SecondForm { a, b, c } = second_form(f, p)?;
    let zero = Rational::from_integer(0.into());
    if a == zero && b == zero && c == zero {
        return Ok(AsymptoticDirections::All);
    }
    let disc = &b * &b - &a * &c;
    match disc.cmp(&zero) {
        Ordering::Less => Ok(AsymptoticDirections::None),
        Ordering::Equal => {
            let d = if a != zero {
                Direction::rational(-b, a)?
            } else {
                Direction::rational(int(1), zero)?
            };
            Ok(AsymptoticDirections::One(d))
        }
        Ordering::Greater => {
            if a == zero {
                // dy (2B dx + C dy) = 0
                let d1 = Direction::rational(int(1), zero)?;
                let d2 = Direction::rational(c, -(&b * int(2)))?;
                return Ok(order_pair(d1, d2));
            }
            match rational_sqrt(&disc) {
                Some(r) => {
                    // dx/dy = (-B ± r)/A
                    let d1 = Direction::rational((-&b + &r) / &a, int(1))?;
                    let d2 = Direction::rational((-&b - &r) / &a, int(1))?;
                    Ok(order_pair(d1, d2))
                }
                None => Ok(AsymptoticDirections::Two(
                    Direction::Quadratic {
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                        plus: true,
                    },
                    Direction::Quadratic {
                        a,
                        b,
                        c,
                        plus: false,
                    },
                )),
            }
        }
    }
}

fn order_pair(d1: Direction, d2: Direction) -> AsymptoticDirections {
    let key = |d: &Direction| match d {
        Direction::Rational(x, y) => (x != &Rational::from_integer(1.into()), y.clone()),
        Direction::Quadratic { .. } => (true, Rational::from_integer(0.into())),
    };
    if key(&d1) <= key(&d2) {
        AsymptoticDirections::Two(d1, d2)
    } else {
        AsymptoticDirections::Two(d2, d1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContactOrder {
    Finite(u32),
    Infinite,
}

impl ContactOrder {
    pub fn at_least(&self, k: u32) -> bool {
        match self {
            ContactOrder::Finite(n) => *n >= k,
            ContactOrder::Infinite => true,
        }
    }
}

/// Vanishing order at `t = 0` of `f(p + t v) - f(p) - t (grad f(p) . v)`.
///
/// `cap` defaults to `deg f + 1`. For polynomials the expansion is exact, so
/// `Infinite` means the line lies on the graph.
pub fn contact_order(
    f: &GraphFunction,
    p: &(Rational, Rational),
    dir: &Direction,
    cap: Option<u32>,
) -> Result<ContactOrder, CalculusError> {
    match dir {
        Direction::Rational(dx, dy) => {
            let field = RationalField;
            contact_order_in(&field, f, (&p.0, &p.1), (dx, dy), cap)
        }
        Direction::Quadratic { .. } => {
            let (field, (sx, sy)) = dir
                .in_quadratic_field()
                .ok_or(CalculusError::ZeroDirection)?;
            let px = field.from_rational(&p.0);
            let py = field.from_rational(&p.1);
            contact_order_in(&field, f, (&px, &py), (&sx, &sy), cap)
        }
    }
}

/// [`contact_order`] over any exact field.
pub fn contact_order_in<F: ExactField>(
    field: &F,
    f: &GraphFunction,
    p: (&F::Elem, &F::Elem),
    v: (&F::Elem, &F::Elem),
    cap: Option<u32>,
) -> Result<ContactOrder, CalculusError> {
    if field.is_zero(v.0) && field.is_zero(v.1) {
        return Err(CalculusError::ZeroDirection);
    }
    let cap = cap.unwrap_or(f.degree() + 1);
    let pole = || CalculusError::Pole(format!("{:?}", p.0), format!("{:?}", p.1));
    match f {
        GraphFunction::Poly(poly) => {
            let deg = poly.degree().unwrap_or(0);
            let jet = Jet::of_poly(field, poly, p.0, p.1, deg.max(2));
            for k in 2..=deg.min(cap) {
                if !field.is_zero(&jet.along(field, v.0, v.1, k)) {
                    return Ok(ContactOrder::Finite(k));
                }
            }
            Ok(ContactOrder::Infinite)
        }
        GraphFunction::Rational(rf) => {
            // h(t) D(p + tv) = N(p + tv) - D(p + tv)(f0 + f1 t), a polynomial
            let dn = rf.num().degree().unwrap_or(0);
            let dd = rf.den().degree().unwrap_or(0);
            let top = dn.max(dd + 1).max(2);
            let jn = Jet::of_poly(field, rf.num(), p.0, p.1, top);
            let jd = Jet::of_poly(field, rf.den(), p.0, p.1, top);
            let n: Vec<_> = (0..=top).map(|k| jn.along(field, v.0, v.1, k)).collect();
            let d: Vec<_> = (0..=top).map(|k| jd.along(field, v.0, v.1, k)).collect();
            let d0_inv = field.inv(&d[0]).ok_or_else(pole)?;
            let f0 = field.mul(&n[0], &d0_inv);
            let f1 = field.mul(
                &field.sub(&field.mul(&n[1], &d[0]), &field.mul(&n[0], &d[1])),
                &field.mul(&d0_inv, &d0_inv),
            );
            for k in 2..=top {
                let g = field.sub(
                    &n[k as usize],
                    &field.add(
                        &field.mul(&d[k as usize], &f0),
                        &field.mul(&d[k as usize - 1], &f1),
                    ),
                );
                if !field.is_zero(&g) {
                    return Ok(if k <= cap {
                        ContactOrder::Finite(k)
                    } else {
                        ContactOrder::Infinite
                    });
                }
            }
            Ok(ContactOrder::Infinite)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, parse_rational_function, ratio};

    fn f(s: &str) -> GraphFunction {
        parse_poly(s).unwrap().into()
    }

    fn pt(x: i64, y: i64) -> (Rational, Rational) {
        (int(x), int(y))
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(
            hessian_poly(&parse_poly("x^2 + y^2").unwrap()),
            parse_poly("4").unwrap()
        );
        assert_eq!(
            hessian_poly(&parse_poly("x*y").unwrap()),
            parse_poly("-1").unwrap()
        );
        assert_eq!(
            hessian_poly(&parse_poly("(y - x)*(y + x)").unwrap()),
            parse_poly("-4").unwrap()
        );
    }

    #[test]
    fn hessian_of_quotient() {
        let g = parse_rational_function("(x^2 + y^2 - 1) / (x^2 + y^2 + 1)").unwrap();
        let h = hessian_rational(&g).unwrap();
        assert_eq!(h.num(), &parse_poly("16 - 48*x^2 - 48*y^2").unwrap());
        assert_eq!(h.den(), &parse_poly("(x^2 + y^2 + 1)^5").unwrap());
        assert_eq!(h.evaluate(&int(0), &int(0)), Some(int(16)));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_point(&f("x^2 + y^2"), &pt(0, 0)),
            Ok(PointClass::Elliptic)
        );
        assert_eq!(
            classify_point(&f("x*y"), &pt(1, 1)),
            Ok(PointClass::Hyperbolic)
        );
        assert_eq!(
            classify_point(&f("x^2"), &pt(3, -2)),
            Ok(PointClass::Parabolic)
        );
        let pole = parse_rational_function("(x) / (x - 1)").unwrap();
        assert!(matches!(
            classify_point(&pole.into(), &pt(1, 0)),
            Err(CalculusError::Pole(..))
        ));
    }

    #[test]
    fn direction_examples() {
        let two = asymptotic_directions(&f("x*y"), &pt(0, 0)).unwrap();
        assert_eq!(
            two,
            AsymptoticDirections::Two(
                Direction::Rational(int(1), int(0)),
                Direction::Rational(int(0), int(1))
            )
        );
        assert_eq!(
            asymptotic_directions(&f("x^2 + y^2"), &pt(0, 0)),
            Ok(AsymptoticDirections::None)
        );
        assert_eq!(
            asymptotic_directions(&f("x^2"), &pt(0, 0)),
            Ok(AsymptoticDirections::One(Direction::Rational(
                int(0),
                int(1)
            )))
        );
        assert_eq!(
            asymptotic_directions(&f("x^3"), &pt(0, 0)),
            Ok(AsymptoticDirections::All)
        );
    }

    #[test]
    fn contact_examples() {
        let e1 = Direction::Rational(int(1), int(0));
        assert_eq!(
            contact_order(&f("x^2 + y^2"), &pt(0, 0), &e1, None),
            Ok(ContactOrder::Finite(2))
        );
        assert_eq!(
            contact_order(&f("y^2 - x^3"), &pt(0, 0), &e1, None),
            Ok(ContactOrder::Finite(3))
        );
        assert_eq!(
            contact_order(&f("x*y"), &pt(0, 0), &e1, None),
            Ok(ContactOrder::Infinite)
        );
    }

    #[test]
    fn contact_along_irrational_directions() {
        // x^2 - 2 y^2 + x^3: directions (±sqrt 2, 1) at the origin
        let g = f("x^2 - 2*y^2 + x^3");
        let dirs = asymptotic_directions(&g, &pt(0, 0)).unwrap();
        let ds = dirs.directions();
        assert_eq!(ds.len(), 2);
        for d in &ds {
            assert!(matches!(d, Direction::Quadratic { .. }));
            assert_eq!(
                contact_order(&g, &pt(0, 0), d, None),
                Ok(ContactOrder::Finite(3))
            );
        }
        let (ax, ay) = ds[0].approx();
        assert!((ax / ay - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn contact_for_quotients() {
        // the line y = 0 lies on the graph of y / (1 + x^2)
        let g: GraphFunction = parse_rational_function("(y) / (1 + x^2)").unwrap().into();
        let e1 = Direction::Rational(int(1), int(0));
        assert_eq!(
            contact_order(&g, &pt(0, 0), &e1, None),
            Ok(ContactOrder::Infinite)
        );
        let h: GraphFunction = parse_rational_function("(x^3) / (1 + y^2)").unwrap().into();
        assert_eq!(
            contact_order(&h, &pt(0, 0), &e1, None),
            Ok(ContactOrder::Finite(3))
        );
        let d = Direction::rational(int(1), ratio(1, 2)).unwrap();
        assert!(contact_order(&h, &(int(1), int(0)), &d, None)
            .unwrap()
            .at_least(2));
    }
}
