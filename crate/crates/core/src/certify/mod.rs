//! Theorem-level verifiers. Each assembles exact algebra, traced topology
//! and exact classification of sampled points into a [`TheoremReport`].

mod circles;
mod theorem1;

pub use circles::{verify_theorem2, verify_theorem3};
pub use theorem1::verify_theorem1;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::calculus::{hessian_poly, CalculusError};
use crate::families::{FamilyError, FamilySpec, GoodPositionWitness};
use crate::par::Exec;
use crate::polycore::{AffineMap2, BivPoly, PolyError, UniPoly};
use crate::realroots::{is_square_free, isolate_roots, positive_root_count};
use crate::topology::{trace_curve_with, Rect, TopologyError, TraceOptions, TraceResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("parameters are not in good position: {} contains a critical point of the other lines' product", .0.line)]
    NotGoodPosition(Box<GoodPositionWitness>),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Traced,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub expected: Value,
    pub observed: Value,
    pub method: Method,
    pub pass: bool,
    pub evidence: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub family: FamilySpec,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
    pub overall: bool,
    /// Wall-clock milliseconds per phase.
    pub timings_ms: BTreeMap<String, f64>,
}

impl TheoremReport {
    fn new(theorem: &str, family: FamilySpec) -> Self {
        Self {
            theorem: theorem.to_string(),
            family,
            claims: Vec::new(),
            notes: Vec::new(),
            overall: true,
            timings_ms: BTreeMap::new(),
        }
    }

    fn push(&mut self, claim: Claim) {
        self.overall &= claim.pass;
        self.claims.push(claim);
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms
            .insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// JSON with keys in sorted order; only `timings_ms` varies between runs.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is serializable")
    }

    /// One line per claim.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{} [{}]: {}\n",
            self.theorem,
            self.family.name(),
            if self.overall { "PASS" } else { "FAIL" }
        );
        for c in &self.claims {
            out.push_str(&format!(
                "  {} {:<22} expected {} observed {} ({:?})\n",
                if c.pass { "ok  " } else { "FAIL" },
                c.id,
                c.expected,
                c.observed,
                c.method
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub resolution: usize,
    /// Used when the traced topology disagrees with the expected one.
    pub retry_resolution: usize,
    pub max_depth: u32,
    pub seed: u64,
    pub samples_per_region: usize,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            resolution: 128,
            retry_resolution: 512,
            max_depth: 6,
            seed: 0x5eed,
            samples_per_region: 8,
            exec: Exec::Parallel,
        }
    }
}

/// Traces at the base resolution and, if `accept` rejects the result, once
/// more at the retry resolution.
fn trace_with_retry(
    p: &BivPoly,
    bbox: &Rect,
    opts: &VerifyOptions,
    accept: impl Fn(&TraceResult) -> bool,
) -> Result<(TraceResult, Vec<usize>), TopologyError> {
    let mut tried = vec![opts.resolution];
    let run = |n: usize| {
        trace_curve_with(
            p,
            bbox,
            &TraceOptions {
                base_resolution: n,
                max_depth: opts.max_depth,
                exec: opts.exec,
            },
        )
    };
    let first = run(opts.resolution)?;
    if accept(&first) || opts.retry_resolution <= opts.resolution {
        return Ok((first, tried));
    }
    tried.push(opts.retry_resolution);
    Ok((run(opts.retry_resolution)?, tried))
}

fn trace_evidence(t: &TraceResult, tried: &[usize]) -> Value {
    json!({
        "bbox": t.bbox,
        "resolution": t.resolution,
        "resolutions_tried": tried,
        "max_depth": t.max_depth,
        "saddle_cells": t.saddle_cells,
        "center_rule_cells": t.center_rule_cells,
        "zero_vertices": t.zero_vertices,
        "open_components": t.open_components(),
        "vertical_tangents": t.components.iter().map(|c| c.vertical_tangent_count).collect::<Vec<_>>(),
        "areas": t.components.iter().map(|c| c.area).collect::<Vec<_>>(),
    })
}

/// Positive-root count and simplicity of a radial profile.
fn positive_simple_roots(p: &UniPoly) -> (usize, bool) {
    if p.is_constant() {
        return (0, !p.is_zero());
    }
    let count = positive_root_count(p).expect("nonzero profile");
    (count, is_square_free(p))
}

fn intervals_json(p: &UniPoly) -> Value {
    if p.is_constant() {
        return json!([]);
    }
    json!(isolate_roots(p).expect("nonzero polynomial"))
}

/// `Hess((f ∘ T) / J) = (Hess f) ∘ T`, compared term by term.
pub fn verify_affine_invariance(f: &BivPoly, t: &AffineMap2) -> bool {
    let lhs = hessian_poly(&f.compose_affine(t).scale(&t.jacobian().recip()));
    let rhs = hessian_poly(f).compose_affine(t);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{int, parse_poly};

    fn map(a: i64, b: i64, c: i64, d: i64, tx: i64, ty: i64) -> AffineMap2 {
        AffineMap2::new([[int(a), int(b)], [int(c), int(d)]], [int(tx), int(ty)]).unwrap()
    }

    #[test]
    fn affine_examples() {
        let f = parse_poly("x^2 + y^2").unwrap();
        assert!(verify_affine_invariance(&f, &AffineMap2::identity()));
        assert!(verify_affine_invariance(&f, &map(2, 0, 0, 1, 0, 0)));
        let g = parse_poly("x*y").unwrap();
        assert!(verify_affine_invariance(&g, &map(1, 1, 0, 1, 0, 1)));
        let h = parse_poly("x^3*y - 2*y^4 + x").unwrap();
        assert!(verify_affine_invariance(&h, &map(2, -1, 3, 5, 7, -2)));
    }
}
