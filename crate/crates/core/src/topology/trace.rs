//! Marching squares on exact grid signs.

use num_bigint::{BigInt, Sign};
use serde::{Deserialize, Serialize};

use super::grid::{crossing_fraction, linspace, ExactEvaluator};
use super::{Rect, TopologyError};
use crate::par::{map_indexed, Exec};
use crate::polycore::{rational_to_f64, BivPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracedComponent {
    /// Closed components repeat their first point at the end.
    pub polyline: Vec<[f64; 2]>,
    pub closed: bool,
    /// `[min_x, min_y, max_x, max_y]`
    pub bounding_box: [f64; 4],
    pub orientation: Orientation,
    /// Absolute enclosed area (0 for open chains).
    pub area: f64,
    /// Local extrema of `x` along the curve, with half-cell hysteresis.
    pub vertical_tangent_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceOptions {
    pub base_resolution: usize,
    pub max_depth: u32,
    pub exec: Exec,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            base_resolution: 128,
            max_depth: 6,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceResult {
    pub components: Vec<TracedComponent>,
    pub bbox: Rect,
    pub resolution: usize,
    pub max_depth: u32,
    /// Grid vertices where the polynomial is exactly zero (counted as positive).
    pub zero_vertices: usize,
    pub saddle_cells: usize,
    /// Saddles still ambiguous at `max_depth`, decided by the center sign.
    pub center_rule_cells: usize,
}

impl TraceResult {
    pub fn cell_size(&self) -> (f64, f64) {
        let (w, h) = self.bbox.size_f64();
        (w / self.resolution as f64, h / self.resolution as f64)
    }

    pub fn open_components(&self) -> usize {
        self.components.iter().filter(|c| !c.closed).count()
    }
}

pub fn trace_curve(
    p: &BivPoly,
    bbox: &Rect,
    base_resolution: usize,
    max_depth: u32,
) -> Result<TraceResult, TopologyError> {
    trace_curve_with(
        p,
        bbox,
        &TraceOptions {
            base_resolution,
            max_depth,
            ..TraceOptions::default()
        },
    )
}

/// Evaluated sign grid over `bbox`.
pub struct SignGrid {
    pub n: usize,
    pub xs: Vec<Rational>,
    pub ys: Vec<Rational>,
    pub values: Vec<BigInt>,
}

impl SignGrid {
    pub fn evaluate(ev: &ExactEvaluator, bbox: &Rect, n: usize, exec: Exec) -> Self {
        let xs = linspace(&bbox.x0, &bbox.x1, n);
        let ys = linspace(&bbox.y0, &bbox.y1, n);
        let values = ev.values(&xs, &ys, exec);
        Self { n, xs, ys, values }
    }

    fn value(&self, i: usize, j: usize) -> &BigInt {
        &self.values[j * (self.n + 1) + i]
    }

    /// Zero counts as positive.
    fn positive(&self, i: usize, j: usize) -> bool {
        self.value(i, j).sign() != Sign::Minus
    }
}

pub fn trace_curve_with(
    p: &BivPoly,
    bbox: &Rect,
    opts: &TraceOptions,
) -> Result<TraceResult, TopologyError> {
    let n = opts.base_resolution;
    if n < 16 {
        return Err(TopologyError::Resolution(n));
    }
    if bbox.x0 >= bbox.x1 || bbox.y0 >= bbox.y1 {
        return Err(TopologyError::DegenerateBox);
    }
    if p.is_zero() {
        return Err(TopologyError::ZeroPolynomial);
    }
    let ev = ExactEvaluator::new(p);
    let grid = SignGrid::evaluate(&ev, bbox, n, opts.exec);
    let zero_vertices = grid
        .values
        .iter()
        .filter(|v| v.sign() == Sign::NoSign)
        .count();

    let mut saddles = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let (a, b, c, d) = corners(&grid, i, j);
            if a == c && b == d && a != b {
                saddles.push((i, j));
            }
        }
    }
    let decisions = map_indexed(opts.exec, saddles.len(), |k| {
        let (i, j) = saddles[k];
        resolve_saddle(&ev, &grid, i, j, opts.max_depth)
    });
    let center_rule_cells = decisions.iter().filter(|d| d.by_center).count();

    let edges = EdgeIndex { n };
    let mut links = vec![[NONE; 2]; edges.count()];
    let mut add = |e1: usize, e2: usize| {
        link(&mut links, e1, e2);
        link(&mut links, e2, e1);
    };
    let mut saddle_iter = saddles.iter().zip(&decisions).peekable();
    for j in 0..n {
        for i in 0..n {
            let (s00, s10, s11, s01) = corners(&grid, i, j);
            let bottom = edges.horizontal(i, j);
            let top = edges.horizontal(i, j + 1);
            let left = edges.vertical(i, j);
            let right = edges.vertical(i + 1, j);
            let mut crossing = Vec::with_capacity(4);
            if s00 != s10 {
                crossing.push(bottom);
            }
            if s10 != s11 {
                crossing.push(right);
            }
            if s11 != s01 {
                crossing.push(top);
            }
            if s01 != s00 {
                crossing.push(left);
            }
            match crossing.len() {
                0 => {}
                2 => add(crossing[0], crossing[1]),
                4 => {
                    let (_, dec) = saddle_iter
                        .next_if(|((si, sj), _)| (*si, *sj) == (i, j))
                        .expect("saddles are visited in grid order");
                    if dec.diagonal_00_11_connected {
                        // cut off corners (1,0) and (0,1)
                        add(bottom, right);
                        add(left, top);
                    } else {
                        add(bottom, left);
                        add(right, top);
                    }
                }
                _ => unreachable!("a cell has an even number of sign changes"),
            }
        }
    }

    let point = |e: usize| edge_point(&grid, &edges, e);
    let cell = {
        let (w, h) = bbox.size_f64();
        (w / n as f64).min(h / n as f64)
    };
    let mut visited = vec![false; links.len()];
    let mut components = Vec::new();
    // open chains start at edges with a single neighbour
    for start in 0..links.len() {
        let deg = degree(&links[start]);
        if visited[start] || deg != 1 {
            continue;
        }
        let chain = walk(&links, &mut visited, start);
        components.push(make_component(
            chain.iter().map(|&e| point(e)).collect(),
            false,
            cell,
        ));
    }
    for start in 0..links.len() {
        if visited[start] || degree(&links[start]) != 2 {
            continue;
        }
        let mut chain = walk(&links, &mut visited, start);
        chain.push(start);
        components.push(make_component(
            chain.iter().map(|&e| point(e)).collect(),
            true,
            cell,
        ));
    }

    Ok(TraceResult {
        components,
        bbox: bbox.clone(),
        resolution: n,
        max_depth: opts.max_depth,
        zero_vertices,
        saddle_cells: saddles.len(),
        center_rule_cells,
    })
}

const NONE: usize = usize::MAX;

fn link(links: &mut [[usize; 2]], from: usize, to: usize) {
    let slot = &mut links[from];
    if slot[0] == NONE {
        slot[0] = to;
    } else {
        debug_assert_eq!(slot[1], NONE, "an edge borders at most two cells");
        slot[1] = to;
    }
}

fn degree(l: &[usize; 2]) -> usize {
    l.iter().filter(|&&e| e != NONE).count()
}

fn walk(links: &[[usize; 2]], visited: &mut [bool], start: usize) -> Vec<usize> {
    let mut chain = vec![start];
    visited[start] = true;
    let mut cur = start;
    loop {
        let next = links[cur]
            .iter()
            .copied()
            .find(|&e| e != NONE && !visited[e]);
        match next {
            Some(e) => {
                visited[e] = true;
                chain.push(e);
                cur = e;
            }
            None => return chain,
        }
    }
}

struct EdgeIndex {
    n: usize,
}

impl EdgeIndex {
    fn horizontal_count(&self) -> usize {
        self.n * (self.n + 1)
    }

    fn count(&self) -> usize {
        2 * self.horizontal_count()
    }

    /// Edge from vertex `(i, j)` to `(i + 1, j)`.
    fn horizontal(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    /// Edge from vertex `(i, j)` to `(i, j + 1)`.
    fn vertical(&self, i: usize, j: usize) -> usize {
        self.horizontal_count() + j * (self.n + 1) + i
    }

    fn endpoints(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let h = self.horizontal_count();
        if e < h {
            let (j, i) = (e / self.n, e % self.n);
            ((i, j), (i + 1, j))
        } else {
            let e = e - h;
            let (j, i) = (e / (self.n + 1), e % (self.n + 1));
            ((i, j), (i, j + 1))
        }
    }
}

fn corners(g: &SignGrid, i: usize, j: usize) -> (bool, bool, bool, bool) {
    (
        g.positive(i, j),
        g.positive(i + 1, j),
        g.positive(i + 1, j + 1),
        g.positive(i, j + 1),
    )
}

fn edge_point(g: &SignGrid, edges: &EdgeIndex, e: usize) -> [f64; 2] {
    let ((i0, j0), (i1, j1)) = edges.endpoints(e);
    let t = crossing_fraction(g.value(i0, j0), g.value(i1, j1));
    let (x0, y0) = (rational_to_f64(&g.xs[i0]), rational_to_f64(&g.ys[j0]));
    let (x1, y1) = (rational_to_f64(&g.xs[i1]), rational_to_f64(&g.ys[j1]));
    [x0 + t * (x1 - x0), y0 + t * (y1 - y0)]
}

struct SaddleDecision {
    diagonal_00_11_connected: bool,
    by_center: bool,
}

/// Decides which diagonal pair of equal-sign corners is joined inside the
/// cell, by 4-connectivity of same-sign vertices on refined subgrids.
fn resolve_saddle(
    ev: &ExactEvaluator,
    g: &SignGrid,
    i: usize,
    j: usize,
    max_depth: u32,
) -> SaddleDecision {
    for depth in 1..=max_depth {
        let k = 1usize << depth;
        let xs = linspace(&g.xs[i], &g.xs[i + 1], k);
        let ys = linspace(&g.ys[j], &g.ys[j + 1], k);
        let pos: Vec<bool> = ev
            .values(&xs, &ys, Exec::Sequential)
            .iter()
            .map(|v| v.sign() != Sign::Minus)
            .collect();
        let a = connected(&pos, k, (0, 0), (k, k));
        let b = connected(&pos, k, (k, 0), (0, k));
        if a != b {
            return SaddleDecision {
                diagonal_00_11_connected: a,
                by_center: false,
            };
        }
    }
    let half = Rational::from_integer(2.into());
    let cx = (&g.xs[i] + &g.xs[i + 1]) / &half;
    let cy = (&g.ys[j] + &g.ys[j + 1]) / &half;
    let center_pos = ev.sign_at(&cx, &cy) != Sign::Minus;
    SaddleDecision {
        diagonal_00_11_connected: center_pos == g.positive(i, j),
        by_center: true,
    }
}

/// Whether `from` and `to` lie in the same 4-connected same-sign cluster of a
/// `(k + 1) x (k + 1)` sign grid.
fn connected(pos: &[bool], k: usize, from: (usize, usize), to: (usize, usize)) -> bool {
    let w = k + 1;
    let idx = |(i, j): (usize, usize)| j * w + i;
    let s = pos[idx(from)];
    if pos[idx(to)] != s {
        return false;
    }
    let mut seen = vec![false; w * w];
    let mut stack = vec![from];
    seen[idx(from)] = true;
    while let Some((i, j)) = stack.pop() {
        if (i, j) == to {
            return true;
        }
        let mut push = |q: (usize, usize)| {
            if !seen[idx(q)] && pos[idx(q)] == s {
                seen[idx(q)] = true;
                stack.push(q);
            }
        };
        if i > 0 {
            push((i - 1, j));
        }
        if i < k {
            push((i + 1, j));
        }
        if j > 0 {
            push((i, j - 1));
        }
        if j < k {
            push((i, j + 1));
        }
    }
    false
}

fn make_component(mut pts: Vec<[f64; 2]>, closed: bool, cell: f64) -> TracedComponent {
    if closed && pts.first() != pts.last() {
        let first = pts[0];
        pts.push(first);
    }
    let mut bb = [
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    ];
    for p in &pts {
        bb[0] = bb[0].min(p[0]);
        bb[1] = bb[1].min(p[1]);
        bb[2] = bb[2].max(p[0]);
        bb[3] = bb[3].max(p[1]);
    }
    let signed = if closed { signed_area(&pts) } else { 0.0 };
    TracedComponent {
        vertical_tangent_count: if closed {
            x_extrema(&pts, 0.5 * cell)
        } else {
            0
        },
        polyline: pts,
        closed,
        bounding_box: bb,
        orientation: if signed >= 0.0 {
            Orientation::CounterClockwise
        } else {
            Orientation::Clockwise
        },
        area: signed.abs(),
    }
}

fn signed_area(pts: &[[f64; 2]]) -> f64 {
    pts.windows(2)
        .map(|w| w[0][0] * w[1][1] - w[1][0] * w[0][1])
        .sum::<f64>()
        / 2.0
}

/// Number of local extrema of `x` around a closed polyline, ignoring
/// reversals smaller than `eps`.
fn x_extrema(pts: &[[f64; 2]], eps: f64) -> usize {
    let ring = &pts[..pts.len() - 1];
    if ring.len() < 3 {
        return 0;
    }
    let start = (0..ring.len())
        .min_by(|&a, &b| ring[a][0].total_cmp(&ring[b][0]))
        .expect("nonempty ring");
    let mut rising = true;
    let mut ext = ring[start][0];
    let mut count = 0;
    for k in 1..=ring.len() {
        let x = ring[(start + k) % ring.len()][0];
        if rising {
            if x > ext {
                ext = x;
            } else if ext - x > eps {
                count += 1;
                rising = false;
                ext = x;
            }
        } else if x < ext {
            ext = x;
        } else if x - ext > eps {
            count += 1;
            rising = true;
            ext = x;
        }
    }
    if !rising {
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{int, parse_poly, ratio};

    fn square(h: i64) -> Rect {
        Rect::new(int(-h), int(-h), int(h), int(h)).unwrap()
    }

    #[test]
    fn unit_circle() {
        let p = parse_poly("x^2 + y^2 - 1").unwrap();
        let t = trace_curve(&p, &square(2), 64, 6).unwrap();
        assert_eq!(t.components.len(), 1);
        let c = &t.components[0];
        assert!(c.closed);
        assert_eq!(c.polyline.first(), c.polyline.last());
        assert!((c.area - std::f64::consts::PI).abs() / std::f64::consts::PI < 0.02);
        assert_eq!(c.vertical_tangent_count, 2);
    }

    #[test]
    fn empty_and_open_curves() {
        let t = trace_curve(&parse_poly("x^2 + y^2 + 1").unwrap(), &square(2), 32, 3).unwrap();
        assert!(t.components.is_empty());
        let t = trace_curve(&parse_poly("x - 1/3").unwrap(), &square(2), 32, 3).unwrap();
        assert_eq!(t.components.len(), 1);
        assert!(!t.components[0].closed);
        assert!(trace_curve(&parse_poly("x").unwrap(), &square(1), 8, 3).is_err());
    }

    #[test]
    fn saddles_resolved_by_subdivision() {
        // the origin is a cell center; xy -/+ 1/100 puts a saddle cell there
        let bbox = Rect::new(ratio(-17, 8), ratio(-17, 8), ratio(15, 8), ratio(15, 8)).unwrap();
        for (src, joined_positive) in [("x*y - 1/100", false), ("x*y + 1/100", true)] {
            let p = parse_poly(src).unwrap();
            let t = trace_curve(&p, &bbox, 16, 6).unwrap();
            assert!(t.saddle_cells >= 1);
            assert_eq!(t.center_rule_cells, 0);
            assert_eq!(t.components.len(), 2, "{src}");
            assert!(t.components.iter().all(|c| !c.closed));
            // branches stay in opposite quadrants
            let quadrant = |c: &TracedComponent| {
                let m = c.polyline[c.polyline.len() / 2];
                (m[0] > 0.0) == (m[1] > 0.0)
            };
            assert!(
                t.components.iter().all(|c| quadrant(c) != joined_positive),
                "{src}"
            );
            let seq = trace_curve_with(
                &p,
                &bbox,
                &TraceOptions {
                    base_resolution: 16,
                    max_depth: 6,
                    exec: Exec::Sequential,
                },
            )
            .unwrap();
            assert_eq!(t, seq);
        }
    }
}
