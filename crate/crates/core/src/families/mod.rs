//! The three function families and their closed-form auxiliary polynomials.
//!
//! * outer ovals: `f = (y - a x)(y - b x) prod (x - a_i) prod (x - b_j)`;
//! * even circles: `f = prod (x^2 + y^2 - m_i^2)`;
//! * odd circles: `f = prod (x^2 + y^2 - k^2) / (x^2 + y^2 + 1)`, `k = 1..n`.

mod circles;
mod outer;

pub use circles::{
    build_even_circles, build_odd_circles, lift_radial, radial_even, radial_odd, RadialPair,
};
pub use outer::{
    build_outer_oval, check_good_position, shifted_alpha_beta, AlphaBeta, GoodPosition,
    GoodPositionWitness, Line,
};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{CalculusError, GraphFunction};
use crate::polycore::{serde_rational, PolyError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: a != b violated (a = b = {0})")]
    EqualSlopes(String),
    #[error("invalid parameters: a_m < ... < a_1 < 0 violated at a_{index} = {value}")]
    AListOrder { index: usize, value: String },
    #[error("invalid parameters: 0 < b_1 < ... < b_n violated at b_{index} = {value}")]
    BListOrder { index: usize, value: String },
    #[error("invalid parameters: 0 < m_1 < ... < m_n violated at m_{index} = {value}")]
    RadiiOrder { index: usize, value: String },
    #[error("invalid parameters: n >= 1 violated")]
    EmptyFamily,
    #[error("internal identity check failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// Lines `y = a x`, `y = b x`, `x = a_i`, `x = b_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OuterRepr", into = "OuterRepr")]
pub struct OuterOvalParams {
    a: Rational,
    b: Rational,
    a_list: Vec<Rational>,
    b_list: Vec<Rational>,
}

impl OuterOvalParams {
    pub fn new(
        a: Rational,
        b: Rational,
        a_list: Vec<Rational>,
        b_list: Vec<Rational>,
    ) -> Result<Self, FamilyError> {
        if a == b {
            return Err(FamilyError::EqualSlopes(a.to_string()));
        }
        let mut prev = Rational::zero();
        for (i, ai) in a_list.iter().enumerate() {
            if ai >= &prev {
                return Err(FamilyError::AListOrder {
                    index: i + 1,
                    value: ai.to_string(),
                });
            }
            prev = ai.clone();
        }
        let mut prev = Rational::zero();
        for (j, bj) in b_list.iter().enumerate() {
            if bj <= &prev {
                return Err(FamilyError::BListOrder {
                    index: j + 1,
                    value: bj.to_string(),
                });
            }
            prev = bj.clone();
        }
        Ok(Self {
            a,
            b,
            a_list,
            b_list,
        })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `a_1, ..., a_m` (decreasing).
    pub fn a_list(&self) -> &[Rational] {
        &self.a_list
    }

    /// `b_1, ..., b_n` (increasing).
    pub fn b_list(&self) -> &[Rational] {
        &self.b_list
    }

    pub fn m(&self) -> usize {
        self.a_list.len()
    }

    pub fn n(&self) -> usize {
        self.b_list.len()
    }

    /// `(a + b) / 2`, the slope of the symmetry shear.
    pub fn mid_slope(&self) -> Rational {
        (&self.a + &self.b) / Rational::from_integer(2.into())
    }

    /// All vertical-line abscissas in increasing order.
    pub fn verticals(&self) -> Vec<Rational> {
        self.a_list
            .iter()
            .rev()
            .chain(&self.b_list)
            .cloned()
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct OuterRepr {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    #[serde(default, with = "serde_rational::vec")]
    a_list: Vec<Rational>,
    #[serde(default, with = "serde_rational::vec")]
    b_list: Vec<Rational>,
}

impl From<OuterOvalParams> for OuterRepr {
    fn from(p: OuterOvalParams) -> Self {
        OuterRepr {
            a: p.a,
            b: p.b,
            a_list: p.a_list,
            b_list: p.b_list,
        }
    }
}

impl TryFrom<OuterRepr> for OuterOvalParams {
    type Error = FamilyError;
    fn try_from(r: OuterRepr) -> Result<Self, FamilyError> {
        OuterOvalParams::new(r.a, r.b, r.a_list, r.b_list)
    }
}

/// Radii `0 < m_1 < ... < m_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EvenRepr", into = "EvenRepr")]
pub struct EvenCircleParams {
    radii: Vec<Rational>,
}

impl EvenCircleParams {
    pub fn new(radii: Vec<Rational>) -> Result<Self, FamilyError> {
        if radii.is_empty() {
            return Err(FamilyError::EmptyFamily);
        }
        let mut prev = Rational::zero();
        for (i, r) in radii.iter().enumerate() {
            if !r.is_positive() || r <= &prev {
                return Err(FamilyError::RadiiOrder {
                    index: i + 1,
                    value: r.to_string(),
                });
            }
            prev = r.clone();
        }
        Ok(Self { radii })
    }

    pub fn radii(&self) -> &[Rational] {
        &self.radii
    }

    pub fn n(&self) -> usize {
        self.radii.len()
    }
}

#[derive(Serialize, Deserialize)]
struct EvenRepr {
    #[serde(with = "serde_rational::vec")]
    radii: Vec<Rational>,
}

impl From<EvenCircleParams> for EvenRepr {
    fn from(p: EvenCircleParams) -> Self {
        EvenRepr { radii: p.radii }
    }
}

impl TryFrom<EvenRepr> for EvenCircleParams {
    type Error = FamilyError;
    fn try_from(r: EvenRepr) -> Result<Self, FamilyError> {
        EvenCircleParams::new(r.radii)
    }
}

/// Circles of radii `1..n` divided by `(x^2 + y^2 + 1)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OddRepr", into = "OddRepr")]
pub struct OddCircleParams {
    n: u32,
}

impl OddCircleParams {
    pub fn new(n: u32) -> Result<Self, FamilyError> {
        if n < 1 {
            return Err(FamilyError::EmptyFamily);
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

#[derive(Serialize, Deserialize)]
struct OddRepr {
    n: u32,
}

impl From<OddCircleParams> for OddRepr {
    fn from(p: OddCircleParams) -> Self {
        OddRepr { n: p.n }
    }
}

impl TryFrom<OddRepr> for OddCircleParams {
    type Error = FamilyError;
    fn try_from(r: OddRepr) -> Result<Self, FamilyError> {
        OddCircleParams::new(r.n)
    }
}

/// A validated family instance, as read from CLI flags or a JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Outer(OuterOvalParams),
    Even(EvenCircleParams),
    Odd(OddCircleParams),
}

impl FamilySpec {
    pub fn function(&self) -> GraphFunction {
        match self {
            FamilySpec::Outer(p) => build_outer_oval(p).into(),
            FamilySpec::Even(p) => build_even_circles(p).into(),
            FamilySpec::Odd(p) => build_odd_circles(p).into(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Outer(_) => "outer",
            FamilySpec::Even(_) => "even",
            FamilySpec::Odd(_) => "odd",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::int;

    #[test]
    fn validation_names_the_inequality() {
        let e = OuterOvalParams::new(int(1), int(1), vec![], vec![]).unwrap_err();
        assert!(e.to_string().contains("a != b"));
        let e = OuterOvalParams::new(int(1), int(-1), vec![int(-2), int(-1)], vec![]).unwrap_err();
        assert!(matches!(e, FamilyError::AListOrder { index: 2, .. }));
        let e = OuterOvalParams::new(int(1), int(-1), vec![], vec![int(0)]).unwrap_err();
        assert!(e.to_string().contains("0 < b_1"));
        assert!(EvenCircleParams::new(vec![int(2), int(1)]).is_err());
        assert!(EvenCircleParams::new(vec![]).is_err());
        assert!(OddCircleParams::new(0).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let s = r#"{"family":"outer","a":"1","b":"-1","a_list":["-1"],"b_list":["1"]}"#;
        let spec: FamilySpec = serde_json::from_str(s).unwrap();
        assert_eq!(
            spec,
            FamilySpec::Outer(
                OuterOvalParams::new(int(1), int(-1), vec![int(-1)], vec![int(1)]).unwrap()
            )
        );
        assert_eq!(serde_json::to_string(&spec).unwrap(), s);
        let even: FamilySpec =
            serde_json::from_str(r#"{"family":"even","radii":["1","3/2"]}"#).unwrap();
        assert!(matches!(even, FamilySpec::Even(ref p) if p.n() == 2));
        let odd: FamilySpec = serde_json::from_str(r#"{"family":"odd","n":2}"#).unwrap();
        assert_eq!(odd, FamilySpec::Odd(OddCircleParams::new(2).unwrap()));
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family":"odd","n":0}"#).is_err());
        assert!(
            serde_json::from_str::<FamilySpec>(r#"{"family":"even","radii":["0.5"]}"#).is_err()
        );
    }
}
