//! Tracing of implicit curves `{P = 0}` from exact grid signs, component
//! counting, nesting and sample-based classification of complement regions.

mod grid;
mod nesting;
mod regions;
mod trace;

pub use grid::ExactEvaluator;
pub use nesting::{nesting_forest, point_in_polygon, NestingForest};
pub use regions::{
    classify_regions, classify_regions_with, RegionClassification, RegionSummary, SampledPoint,
};
pub use trace::{
    trace_curve, trace_curve_with, Orientation, SignGrid, TraceOptions, TraceResult,
    TracedComponent,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::CalculusError;
use crate::families::{radial_even, radial_odd, FamilyError, FamilySpec};
use crate::polycore::{int, ratio, rational_to_f64, serde_rational, PolyError, Rational, UniPoly};
use crate::realroots::{isolate_roots, refine_root};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("base resolution must be at least 16, got {0}")]
    Resolution(usize),
    #[error("bounding box is degenerate")]
    DegenerateBox,
    #[error("cannot trace the zero polynomial")]
    ZeroPolynomial,
    #[error("{0} traced component(s) leave the bounding box")]
    NonClosed(usize),
    #[error(transparent)]
    Calculus(CalculusError),
}

/// Axis-parallel rectangle `[x0, x1] x [y0, y1]` with rational corners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    #[serde(with = "serde_rational")]
    pub x0: Rational,
    #[serde(with = "serde_rational")]
    pub y0: Rational,
    #[serde(with = "serde_rational")]
    pub x1: Rational,
    #[serde(with = "serde_rational")]
    pub y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self, PolyError> {
        if x0 >= x1 || y0 >= y1 {
            return Err(PolyError::Parse {
                input: format!("[{x0}, {x1}] x [{y0}, {y1}]"),
                reason: "rectangle must have positive width and height".into(),
            });
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    /// `[-h, h]^2`
    pub fn centered_square(h: Rational) -> Result<Self, PolyError> {
        Self::new(-h.clone(), -h.clone(), h.clone(), h)
    }

    pub fn size_f64(&self) -> (f64, f64) {
        (
            rational_to_f64(&(&self.x1 - &self.x0)),
            rational_to_f64(&(&self.y1 - &self.y0)),
        )
    }

    pub fn as_f64(&self) -> [f64; 4] {
        [
            rational_to_f64(&self.x0),
            rational_to_f64(&self.y0),
            rational_to_f64(&self.x1),
            rational_to_f64(&self.y1),
        ]
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        &self.x0 <= x && x <= &self.x1 && &self.y0 <= y && y <= &self.y1
    }
}

impl std::fmt::Display for Rect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]", self.x0, self.x1, self.y0, self.y1)
    }
}

/// Number of traced components; fails if any of them is open.
pub fn count_components(components: &[TracedComponent]) -> Result<usize, TopologyError> {
    let open = components.iter().filter(|c| !c.closed).count();
    if open > 0 {
        return Err(TopologyError::NonClosed(open));
    }
    Ok(components.len())
}

/// A rectangle containing every bounded component of the family's Hessian
/// curve.
///
/// Outer ovals lie in the compact polygons cut out by the arrangement, so the
/// box spans the outermost verticals and the two slanted lines over them,
/// with a margin of 1. Circles have radius at most the largest positive root
/// of the radial profile; the box is the square of half-side that bound
/// (rounded up) plus 1.
pub fn auto_bbox(spec: &FamilySpec) -> Result<Rect, FamilyError> {
    let one = int(1);
    match spec {
        FamilySpec::Outer(p) => {
            let lo = p.a_list().last().cloned().unwrap_or_else(|| int(0));
            let hi = p.b_list().last().cloned().unwrap_or_else(|| int(0));
            let ys = [p.a() * &lo, p.a() * &hi, p.b() * &lo, p.b() * &hi];
            let ymin = ys.iter().min().expect("four values").clone();
            let ymax = ys.iter().max().expect("four values").clone();
            Ok(Rect::new(lo - &one, ymin - &one, hi + &one, ymax + &one)?)
        }
        FamilySpec::Even(p) => {
            let pair = radial_even(p)?;
            circle_box(&[&pair.s_tilde, &pair.t_tilde])
        }
        FamilySpec::Odd(p) => {
            let pair = radial_odd(p)?;
            circle_box(&[&pair.s_tilde, &pair.t_tilde])
        }
    }
}

fn circle_box(profiles: &[&UniPoly]) -> Result<Rect, FamilyError> {
    let mut bound = int(1);
    for p in profiles {
        if p.is_constant() {
            continue;
        }
        for iv in isolate_roots(p).map_err(|e| PolyError::Parse {
            input: p.to_string(),
            reason: e.to_string(),
        })? {
            let iv = refine_root(p, &iv, &ratio(1, 8)).expect("interval isolates a root");
            if iv.hi > bound {
                bound = iv.hi.clone();
            }
        }
    }
    let half = Rational::from_integer(bound.ceil().to_integer()) + int(1);
    Ok(Rect::centered_square(half)?)
}

/// Summary of one trace: counts, nesting and the diagnostics of the
/// saddle-cell handling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub resolution: usize,
    pub component_count: usize,
    pub open_components: usize,
    /// Present when every component is closed.
    pub nesting: Option<NestingForest>,
    pub vertical_tangents: Vec<usize>,
    pub saddle_cells: usize,
    pub center_rule_cells: usize,
    pub zero_vertices: usize,
}

impl TopologyReport {
    pub fn from_trace(t: &TraceResult) -> Self {
        Self {
            resolution: t.resolution,
            component_count: t.components.len(),
            open_components: t.open_components(),
            nesting: nesting_forest(&t.components).ok(),
            vertical_tangents: t
                .components
                .iter()
                .map(|c| c.vertical_tangent_count)
                .collect(),
            saddle_cells: t.saddle_cells,
            center_rule_cells: t.center_rule_cells,
            zero_vertices: t.zero_vertices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{EvenCircleParams, OddCircleParams, OuterOvalParams};

    #[test]
    fn bbox_examples() {
        let even = FamilySpec::Even(EvenCircleParams::new(vec![int(1), int(2)]).unwrap());
        assert_eq!(
            auto_bbox(&even).unwrap(),
            Rect::centered_square(int(3)).unwrap()
        );
        let odd = FamilySpec::Odd(OddCircleParams::new(1).unwrap());
        assert_eq!(
            auto_bbox(&odd).unwrap(),
            Rect::centered_square(int(2)).unwrap()
        );
        let outer = FamilySpec::Outer(
            OuterOvalParams::new(int(1), int(-1), vec![int(-1)], vec![int(1)]).unwrap(),
        );
        assert_eq!(
            auto_bbox(&outer).unwrap(),
            Rect::centered_square(int(2)).unwrap()
        );
    }

    #[test]
    fn counting() {
        let p = crate::polycore::parse_poly("x^2 + y^2 + 1").unwrap();
        let t = trace_curve(&p, &Rect::centered_square(int(2)).unwrap(), 32, 4).unwrap();
        assert_eq!(count_components(&t.components), Ok(0));
        let line = crate::polycore::parse_poly("y - 1/3").unwrap();
        let t = trace_curve(&line, &Rect::centered_square(int(2)).unwrap(), 32, 4).unwrap();
        assert_eq!(
            count_components(&t.components),
            Err(TopologyError::NonClosed(1))
        );
    }
}
