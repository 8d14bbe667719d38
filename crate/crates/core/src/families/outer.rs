use serde::{Deserialize, Serialize};

use super::{FamilyError, OuterOvalParams};
use crate::calculus::hessian_poly;
use crate::polycore::{int, serde_rational, BivPoly, Rational, UniPoly};
use crate::realroots::{exact_root, isolate_roots, IsolatingInterval};

/// One line of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Line {
    /// `y = slope * x`
    Through0 {
        #[serde(with = "serde_rational")]
        slope: Rational,
    },
    /// `x = at`
    Vertical {
        #[serde(with = "serde_rational")]
        at: Rational,
    },
}

impl Line {
    pub fn poly(&self) -> BivPoly {
        match self {
            Line::Through0 { slope } => BivPoly::linear(-slope, int(1), int(0)),
            Line::Vertical { at } => BivPoly::linear(int(1), int(0), -at),
        }
    }

    /// `(base, dir)` of the parametrization `t -> base + t dir`; the
    /// parameter is `x` on the slanted lines and `y` on verticals.
    pub fn parametrization(&self) -> ((Rational, Rational), (Rational, Rational)) {
        match self {
            Line::Through0 { slope } => ((int(0), int(0)), (int(1), slope.clone())),
            Line::Vertical { at } => ((at.clone(), int(0)), (int(0), int(1))),
        }
    }

    pub fn point_at(&self, t: &Rational) -> (Rational, Rational) {
        let ((bx, by), (dx, dy)) = self.parametrization();
        (bx + t * dx, by + t * dy)
    }
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Through0 { slope } => write!(f, "y = {slope}*x"),
            Line::Vertical { at } => write!(f, "x = {at}"),
        }
    }
}

impl OuterOvalParams {
    /// `y = a x`, `y = b x`, then `x = a_i`, then `x = b_j`.
    pub fn lines(&self) -> Vec<Line> {
        let mut out = vec![
            Line::Through0 {
                slope: self.a().clone(),
            },
            Line::Through0 {
                slope: self.b().clone(),
            },
        ];
        out.extend(
            self.a_list()
                .iter()
                .map(|ai| Line::Vertical { at: ai.clone() }),
        );
        out.extend(
            self.b_list()
                .iter()
                .map(|bj| Line::Vertical { at: bj.clone() }),
        );
        out
    }
}

pub fn build_outer_oval(params: &OuterOvalParams) -> BivPoly {
    params
        .lines()
        .iter()
        .fold(BivPoly::one(), |acc, l| &acc * &l.poly())
}

/// A critical point of the product of the other lines found on `line`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPositionWitness {
    pub line: Line,
    /// Isolates the line parameter of the critical point.
    pub parameter: IsolatingInterval,
    /// The critical point itself when it is rational.
    #[serde(with = "option_pair")]
    pub point: Option<(Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodPosition {
    Good,
    Bad(Box<GoodPositionWitness>),
}

impl GoodPosition {
    pub fn is_good(&self) -> bool {
        matches!(self, GoodPosition::Good)
    }
}

/// For every line, whether the product of the remaining lines has a critical
/// point on it: both partials restricted to the line share a real root.
pub fn check_good_position(params: &OuterOvalParams) -> GoodPosition {
    let lines = params.lines();
    for (k, line) in lines.iter().enumerate() {
        let others = lines
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .fold(BivPoly::one(), |acc, (_, l)| &acc * &l.poly());
        let (base, dir) = line.parametrization();
        let restrict = |p: &BivPoly| {
            p.restrict_to_line((&base.0, &base.1), (&dir.0, &dir.1))
                .expect("line directions are nonzero")
        };
        let gx = restrict(&others.dx());
        let gy = restrict(&others.dy());
        let g = gx.gcd(&gy);
        if g.is_zero() {
            // both partials vanish along the whole line
            let t = int(0);
            return GoodPosition::Bad(Box::new(GoodPositionWitness {
                line: line.clone(),
                parameter: IsolatingInterval {
                    lo: int(-1),
                    hi: t.clone(),
                    multiplicity_one: false,
                },
                point: Some(line.point_at(&t)),
            }));
        }
        if g.is_constant() {
            continue;
        }
        let roots = isolate_roots(&g).expect("nonzero gcd");
        if let Some(iv) = roots.into_iter().next() {
            let point = exact_root(&g, &iv, 8).map(|t| line.point_at(&t));
            return GoodPosition::Bad(Box::new(GoodPositionWitness {
                line: line.clone(),
                parameter: iv,
                point,
            }));
        }
    }
    GoodPosition::Good
}

/// `Hess f (x, u + c x) = beta(x) u^2 + alpha(x)`, `c = (a + b) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: UniPoly,
    pub beta: UniPoly,
}

pub fn shifted_alpha_beta(params: &OuterOvalParams) -> Result<AlphaBeta, FamilyError> {
    let hess = hessian_poly(&build_outer_oval(params));
    let shear = BivPoly::linear(params.mid_slope(), int(1), int(0));
    let shifted = hess.substitute(&BivPoly::x(), &shear);
    let coeffs = shifted.coefficients_in_y();
    if coeffs.len() > 3 || coeffs.get(1).is_some_and(|c| !c.is_zero()) {
        return Err(FamilyError::IdentityFailed(format!(
            "Hessian in the sheared variable is not of the form beta u^2 + alpha: {shifted}"
        )));
    }
    let get = |k: usize| coeffs.get(k).cloned().unwrap_or_else(UniPoly::zero);
    let (alpha, beta) = (get(0), get(2));
    Ok(AlphaBeta { alpha, beta })
}

mod option_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::polycore::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(
        v: &Option<(Rational, Rational)>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|(x, y)| [x.to_string(), y.to_string()])
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<(Rational, Rational)>, D::Error> {
        let v = Option::<[String; 2]>::deserialize(d)?;
        v.map(|[x, y]| {
            Ok((
                parse_rational(&x).map_err(serde::de::Error::custom)?,
                parse_rational(&y).map_err(serde::de::Error::custom)?,
            ))
        })
        .transpose()
    }
}
