use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{nesting_forest, TopologyError, TraceResult, TracedComponent};
use crate::calculus::{classify_point, GraphFunction, PointClass};
use crate::par::{map_indexed, Exec};
use crate::polycore::{int, rational_to_f64, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledPoint {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    pub class: PointClass,
    /// Outside the traced box, in the unbounded region.
    pub far_field: bool,
}

/// One complement region, identified by its innermost enclosing component
/// (`None` for the unbounded region).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub container: Option<usize>,
    pub samples: Vec<SampledPoint>,
    /// Set only when there are samples and all of them agree.
    pub verdict: Option<PointClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionClassification {
    pub regions: Vec<RegionSummary>,
}

impl RegionClassification {
    pub fn unbounded(&self) -> &RegionSummary {
        self.regions
            .iter()
            .find(|r| r.container.is_none())
            .expect("the unbounded region is always present")
    }

    pub fn all_unanimous(&self) -> bool {
        self.regions.iter().all(|r| r.verdict.is_some())
    }
}

/// Sampling resolution: sample coordinates are multiples of `bbox / 2^16`.
const DYADIC_STEPS: i64 = 1 << 16;

pub fn classify_regions(
    f: &GraphFunction,
    trace: &TraceResult,
    samples_per_region: usize,
    seed: u64,
) -> Result<RegionClassification, TopologyError> {
    classify_regions_with(f, trace, samples_per_region, seed, Exec::Parallel)
}

pub fn classify_regions_with(
    f: &GraphFunction,
    trace: &TraceResult,
    samples_per_region: usize,
    seed: u64,
    exec: Exec,
) -> Result<RegionClassification, TopologyError> {
    let forest = nesting_forest(&trace.components)?;
    let comps = &trace.components;
    let bbox = &trace.bbox;
    let (cw, ch) = trace.cell_size();
    let tol = 0.5 * cw.max(ch);

    let n_regions = comps.len() + 1;
    let slot = |c: Option<usize>| c.map_or(0, |i| i + 1);
    let mut picked: Vec<Vec<(Rational, Rational, bool)>> = vec![Vec::new(); n_regions];

    // far field: corners and edge midpoints of the box scaled by 3 about its center
    let two = int(2);
    let (cx, cy) = ((&bbox.x0 + &bbox.x1) / &two, (&bbox.y0 + &bbox.y1) / &two);
    let (hx, hy) = (
        (&bbox.x1 - &bbox.x0) * int(3) / &two,
        (&bbox.y1 - &bbox.y0) * int(3) / &two,
    );
    for (sx, sy) in [
        (-1, -1),
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
    ] {
        picked[0].push((&cx + &hx * int(sx), &cy + &hy * int(sy), true));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 4000 + 400 * samples_per_region * n_regions;
    let steps = Rational::from_integer(DYADIC_STEPS.into());
    let (w, h) = (&bbox.x1 - &bbox.x0, &bbox.y1 - &bbox.y0);
    for _ in 0..budget {
        if picked
            .iter()
            .all(|v| v.iter().filter(|p| !p.2).count() >= samples_per_region)
        {
            break;
        }
        let kx = rng.gen_range(1..DYADIC_STEPS);
        let ky = rng.gen_range(1..DYADIC_STEPS);
        let x = &bbox.x0 + &w * int(kx) / &steps;
        let y = &bbox.y0 + &h * int(ky) / &steps;
        let p = [rational_to_f64(&x), rational_to_f64(&y)];
        if near_curve(comps, p, tol) {
            continue;
        }
        let s = slot(forest.container_of(comps, p));
        if picked[s].iter().filter(|q| !q.2).count() < samples_per_region {
            picked[s].push((x, y, false));
        }
    }

    let flat: Vec<(usize, Rational, Rational, bool)> = picked
        .into_iter()
        .enumerate()
        .flat_map(|(s, v)| v.into_iter().map(move |(x, y, far)| (s, x, y, far)))
        .collect();
    let classes = map_indexed(exec, flat.len(), |k| {
        let (_, x, y, _) = &flat[k];
        classify_point(f, &(x.clone(), y.clone()))
    });

    let mut regions: Vec<RegionSummary> = (0..n_regions)
        .map(|s| RegionSummary {
            container: s.checked_sub(1),
            samples: Vec::new(),
            verdict: None,
        })
        .collect();
    for ((s, x, y, far_field), class) in flat.into_iter().zip(classes) {
        let class = class.map_err(TopologyError::Calculus)?;
        regions[s].samples.push(SampledPoint {
            x,
            y,
            class,
            far_field,
        });
    }
    for r in &mut regions {
        let first = r.samples.first().map(|p| p.class);
        if first.is_some() && r.samples.iter().all(|p| Some(p.class) == first) {
            r.verdict = first;
        }
    }
    Ok(RegionClassification { regions })
}

fn near_curve(comps: &[TracedComponent], p: [f64; 2], tol: f64) -> bool {
    comps.iter().any(|c| {
        let b = c.bounding_box;
        if p[0] < b[0] - tol || p[0] > b[2] + tol || p[1] < b[1] - tol || p[1] > b[3] + tol {
            return false;
        }
        c.polyline
            .windows(2)
            .any(|s| segment_distance(p, s[0], s[1]) < tol)
    })
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
    (qx * qx + qy * qy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::hessian_poly;
    use crate::polycore::parse_poly;
    use crate::topology::{trace_curve, Rect};

    #[test]
    fn annulus_regions() {
        // Hess of (u - 1)(u - 4) vanishes on two circles; outside is elliptic
        let f = parse_poly("(x^2 + y^2 - 1)*(x^2 + y^2 - 4)").unwrap();
        let hess = hessian_poly(&f);
        let bbox = Rect::new(int(-3), int(-3), int(3), int(3)).unwrap();
        let trace = trace_curve(&hess, &bbox, 64, 6).unwrap();
        assert_eq!(trace.components.len(), 2);
        let rc = classify_regions(&f.into(), &trace, 5, 7).unwrap();
        assert_eq!(rc.regions.len(), 3);
        assert!(rc.all_unanimous());
        assert_eq!(rc.unbounded().verdict, Some(PointClass::Elliptic));
        assert!(rc.unbounded().samples.iter().any(|s| s.far_field));
        let verdicts: Vec<_> = rc.regions.iter().map(|r| r.verdict).collect();
        assert!(verdicts.contains(&Some(PointClass::Hyperbolic)));
    }
}
