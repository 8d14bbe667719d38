//! Exact polynomial arithmetic over the rationals.
//!
//! Everything downstream (Hessians, root isolation, certificates) is built on
//! the types in this module: [`BivPoly`] for polynomials in `x, y`,
//! [`UniPoly`] for restrictions to lines, [`PlaneRationalFunction`] for
//! quotients and [`AffineMap2`] for changes of coordinates.

mod affine;
mod bivariate;
mod field;
mod jet;
mod rational_fn;
mod text;
mod univariate;

pub use affine::AffineMap2;
pub use bivariate::{BivPoly, Var};
pub use field::{ExactField, QuadElem, QuadraticField, RationalField};
pub use jet::{is_square_form, Jet};
pub use rational_fn::{rational_reduce, PlaneRationalFunction};
pub use text::{parse_poly, parse_rational_function};
pub use univariate::UniPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficient field of every exact computation in the crate.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("affine map is singular (determinant 0)")]
    SingularMap,
    #[error("expected only terms of degree 2..=4, found x^{0}*y^{1}")]
    JetDegree(u32, u32),
    #[error("max_degree must be at least 2, got {0}")]
    JetOrder(u32),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or an integer. Decimal notation is rejected so that no float
/// ever sneaks into the exact core.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let err = |reason: &str| PolyError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err("empty number"));
    }
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(err(
            "decimal notation is not accepted; write an exact fraction p/q",
        ));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let parse_int = |x: &str, allow_sign: bool| -> Result<BigInt, PolyError> {
        let digits = x.strip_prefix(['+', '-']).unwrap_or(x);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err("not an integer or fraction"));
        }
        if !allow_sign && digits.len() != x.len() {
            return Err(err("sign not allowed in denominator"));
        }
        x.parse::<BigInt>().map_err(|_| err("not an integer"))
    };
    let num = parse_int(n, true)?;
    let den = parse_int(d, false)?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Returns `Some(sqrt)` when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators of `coeffs` (1 for none).
pub(crate) fn denominator_lcm<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> BigInt {
    coeffs.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator outside f64 range: scale both down
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    })
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_rational, Rational};
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod pair {
        use super::super::{parse_rational, Rational};
        use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
            [v.0.to_string(), v.1.to_string()].serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<(Rational, Rational), D::Error> {
            let [a, b] = <[String; 2]>::deserialize(d)?;
            Ok((
                parse_rational(&a).map_err(D::Error::custom)?,
                parse_rational(&b).map_err(D::Error::custom)?,
            ))
        }
    }
}
