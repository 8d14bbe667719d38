use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{BivPoly, PolyError, Rational};

/// `T(x, y) = linear * (x, y) + translation`, with `det(linear) != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AffineRepr", into = "AffineRepr")]
pub struct AffineMap2 {
    linear: [[Rational; 2]; 2],
    translation: [Rational; 2],
    det: Rational,
}

impl AffineMap2 {
    pub fn new(linear: [[Rational; 2]; 2], translation: [Rational; 2]) -> Result<Self, PolyError> {
        let det = &linear[0][0] * &linear[1][1] - &linear[0][1] * &linear[1][0];
        if det.is_zero() {
            return Err(PolyError::SingularMap);
        }
        Ok(Self {
            linear,
            translation,
            det,
        })
    }

    pub fn identity() -> Self {
        Self::translation(Rational::zero(), Rational::zero())
    }

    pub fn translation(tx: Rational, ty: Rational) -> Self {
        let (o, z) = (Rational::one(), Rational::zero());
        Self {
            linear: [[o.clone(), z.clone()], [z, o.clone()]],
            translation: [tx, ty],
            det: o,
        }
    }

    pub fn linear(&self) -> &[[Rational; 2]; 2] {
        &self.linear
    }

    pub fn translation_part(&self) -> &[Rational; 2] {
        &self.translation
    }

    /// Determinant of the linear part.
    pub fn jacobian(&self) -> &Rational {
        &self.det
    }

    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let m = &self.linear;
        (
            &m[0][0] * x + &m[0][1] * y + &self.translation[0],
            &m[1][0] * x + &m[1][1] * y + &self.translation[1],
        )
    }

    pub fn inverse(&self) -> Self {
        let m = &self.linear;
        let d = &self.det;
        let inv = [[&m[1][1] / d, -&m[0][1] / d], [-&m[1][0] / d, &m[0][0] / d]];
        let t = &self.translation;
        let tx = -(&inv[0][0] * &t[0] + &inv[0][1] * &t[1]);
        let ty = -(&inv[1][0] * &t[0] + &inv[1][1] * &t[1]);
        Self {
            linear: inv,
            translation: [tx, ty],
            det: d.recip(),
        }
    }

    /// The two coordinate functions of `T` as degree-1 polynomials.
    pub fn component_polys(&self) -> (BivPoly, BivPoly) {
        let m = &self.linear;
        (
            BivPoly::linear(
                m[0][0].clone(),
                m[0][1].clone(),
                self.translation[0].clone(),
            ),
            BivPoly::linear(
                m[1][0].clone(),
                m[1][1].clone(),
                self.translation[1].clone(),
            ),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct AffineRepr {
    #[serde(with = "super::serde_rational::vec")]
    linear: Vec<Rational>,
    #[serde(with = "super::serde_rational::vec")]
    translation: Vec<Rational>,
}

impl From<AffineMap2> for AffineRepr {
    fn from(t: AffineMap2) -> Self {
        let [[a, b], [c, d]] = t.linear;
        AffineRepr {
            linear: vec![a, b, c, d],
            translation: t.translation.to_vec(),
        }
    }
}

impl TryFrom<AffineRepr> for AffineMap2 {
    type Error = PolyError;
    fn try_from(r: AffineRepr) -> Result<Self, PolyError> {
        let bad = |what: &str| PolyError::Parse {
            input: what.to_string(),
            reason: "expected 4 linear entries and 2 translation entries".into(),
        };
        let [a, b, c, d]: [Rational; 4] = r.linear.try_into().map_err(|_| bad("linear"))?;
        let [tx, ty]: [Rational; 2] = r.translation.try_into().map_err(|_| bad("translation"))?;
        AffineMap2::new([[a, b], [c, d]], [tx, ty])
    }
}
