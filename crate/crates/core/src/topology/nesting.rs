use serde::{Deserialize, Serialize};

use super::{TopologyError, TracedComponent};

/// `parent[i]` is the innermost component enclosing component `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingForest {
    pub parent: Vec<Option<usize>>,
}

impl NestingForest {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edge_count() == 0
    }

    /// Number of enclosing components.
    pub fn depth(&self, i: usize) -> usize {
        let mut d = 0;
        let mut cur = self.parent[i];
        while let Some(p) = cur {
            d += 1;
            cur = self.parent[p];
        }
        d
    }

    /// A single chain `c_0 ⊂ c_1 ⊂ ... ⊂ c_k` (trivially true for 0 or 1 nodes).
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        let mut children = vec![0usize; n];
        for p in self.parent.iter().flatten() {
            children[*p] += 1;
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        n <= 1 || (roots == 1 && children.iter().all(|&c| c <= 1))
    }

    /// Indices ordered from outermost to innermost when the forest is a chain.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        if !self.is_chain() {
            return None;
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.depth(i));
        Some(order)
    }

    /// Innermost component containing `p`, given the traced polylines.
    pub fn container_of(&self, components: &[TracedComponent], p: [f64; 2]) -> Option<usize> {
        components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.closed && point_in_polygon(p, &c.polyline))
            .max_by(|(a, _), (b, _)| self.depth(*a).cmp(&self.depth(*b)))
            .map(|(i, _)| i)
    }
}

/// Even-odd rule with a ray towards `+x`. Vertices on the ray are treated as
/// lying slightly above it (half-open test), which is the usual symbolic
/// perturbation for ray casting.
pub fn point_in_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> bool {
    let mut inside = false;
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

pub fn nesting_forest(components: &[TracedComponent]) -> Result<NestingForest, TopologyError> {
    let open = components.iter().filter(|c| !c.closed).count();
    if open > 0 {
        return Err(TopologyError::NonClosed(open));
    }
    let parent = components
        .iter()
        .enumerate()
        .map(|(i, ci)| {
            let probe = ci.polyline[0];
            components
                .iter()
                .enumerate()
                .filter(|&(j, cj)| j != i && point_in_polygon(probe, &cj.polyline))
                .min_by(|(_, a), (_, b)| a.area.total_cmp(&b.area))
                .map(|(j, _)| j)
        })
        .collect();
    Ok(NestingForest { parent })
}
