use std::fmt;

use num_traits::One;

use super::{BivPoly, PolyError, Rational};

/// `num / den` with `den` nonzero. `factors` lists known polynomial factors
/// of the denominator; reduction only ever cancels these (and `den` itself),
/// there is no general multivariate factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneRationalFunction {
    num: BivPoly,
    den: BivPoly,
    factors: Vec<BivPoly>,
}

impl PlaneRationalFunction {
    pub fn new(num: BivPoly, den: BivPoly) -> Result<Self, PolyError> {
        Self::with_factors(num, den, Vec::new())
    }

    pub fn with_factors(
        num: BivPoly,
        den: BivPoly,
        factors: Vec<BivPoly>,
    ) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self { num, den, factors })
    }

    pub fn from_poly(p: BivPoly) -> Self {
        Self {
            num: p,
            den: BivPoly::one(),
            factors: Vec::new(),
        }
    }

    pub fn num(&self) -> &BivPoly {
        &self.num
    }

    pub fn den(&self) -> &BivPoly {
        &self.den
    }

    pub fn known_factors(&self) -> &[BivPoly] {
        &self.factors
    }

    /// `None` at a pole.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let d = self.den.evaluate(x, y);
        if d == Rational::from_integer(0.into()) {
            return None;
        }
        Some(self.num.evaluate(x, y) / d)
    }

    /// Same function with both sides cleared of shared known factors.
    pub fn reduced(&self) -> Self {
        rational_reduce(self).expect("denominator is nonzero by construction")
    }
}

impl fmt::Display for PlaneRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Cancels common factors found by: exact division of the numerator by the
/// whole denominator, then repeated division of both sides by each known
/// factor. The denominator is finally scaled so that its leading coefficient
/// (graded lex) is 1.
pub fn rational_reduce(f: &PlaneRationalFunction) -> Result<PlaneRationalFunction, PolyError> {
    if f.den.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    let mut num = f.num.clone();
    let mut den = f.den.clone();
    if !den.is_constant() {
        if let Some(q) = num.div_exact(&den) {
            num = q;
            den = BivPoly::one();
        }
    }
    for g in &f.factors {
        if g.is_constant() {
            continue;
        }
        while !den.is_constant() {
            match (num.div_exact(g), den.div_exact(g)) {
                (Some(n), Some(d)) => {
                    num = n;
                    den = d;
                }
                _ => break,
            }
        }
    }
    let lead = den
        .leading_term()
        .map(|(_, c)| c.clone())
        .expect("nonzero denominator");
    if !lead.is_one() {
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    Ok(PlaneRationalFunction {
        num,
        den,
        factors: f.factors.clone(),
    })
}
