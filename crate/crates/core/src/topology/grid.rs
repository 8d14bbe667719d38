//! Exact evaluation of a bivariate polynomial on rectangular grids of
//! rational points.
//!
//! For grid coordinates `X_i / D_x`, `Y_j / D_y` with integer numerators the
//! value `D_x^dx * D_y^dy * L * p(X_i / D_x, Y_j / D_y)` is an integer with the
//! sign of `p`, computed by homogenized Horner schemes over `BigInt`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::par::{map_indexed, Exec};
use crate::polycore::{BivPoly, Rational, Var};

#[derive(Debug, Clone)]
pub struct ExactEvaluator {
    dx: usize,
    dy: usize,
    /// `coeffs[j][i]` multiplies `x^i y^j`.
    coeffs: Vec<Vec<BigInt>>,
}

impl ExactEvaluator {
    pub fn new(p: &BivPoly) -> Self {
        let dx = p.degree_in(Var::X) as usize;
        let dy = p.degree_in(Var::Y) as usize;
        let (_, ints) = p.integer_form();
        let mut coeffs = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        for ((i, j), c) in ints {
            coeffs[j as usize][i as usize] = c;
        }
        Self { dx, dy, coeffs }
    }

    /// Scaled values at every `(xs[i], ys[j])`, row-major (`j * xs.len() + i`).
    pub fn values(&self, xs: &[Rational], ys: &[Rational], exec: Exec) -> Vec<BigInt> {
        let (xn, xd) = common_denominator(xs);
        let (yn, yd) = common_denominator(ys);
        let xd_pows = powers(&xd, self.dx);
        let yd_pows = powers(&yd, self.dy);
        let rows: Vec<Vec<BigInt>> = map_indexed(exec, ys.len(), |j| {
            // a_i = sum_k c_ik Y^k D_y^(dy - k), by Horner in Y
            let y = &yn[j];
            let a: Vec<BigInt> = (0..=self.dx)
                .map(|i| {
                    let mut h = self.coeffs[self.dy][i].clone();
                    for k in (0..self.dy).rev() {
                        h = h * y + &self.coeffs[k][i] * &yd_pows[self.dy - k];
                    }
                    h
                })
                .collect();
            xn.iter()
                .map(|x| {
                    let mut h = a[self.dx].clone();
                    for i in (0..self.dx).rev() {
                        h = h * x + &a[i] * &xd_pows[self.dx - i];
                    }
                    h
                })
                .collect()
        });
        rows.into_iter().flatten().collect()
    }

    pub fn sign_at(&self, x: &Rational, y: &Rational) -> Sign {
        self.values(
            std::slice::from_ref(x),
            std::slice::from_ref(y),
            Exec::Sequential,
        )[0]
        .sign()
    }
}

fn common_denominator(vs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = vs.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = vs.iter().map(|v| v.numer() * (&d / v.denom())).collect();
    (nums, d)
}

fn powers(b: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for k in 0..n {
        let next = &out[k] * b;
        out.push(next);
    }
    out
}

/// `a / (a - b)` as a float, for interpolating a sign change between two
/// scaled values of arbitrary size.
pub(crate) fn crossing_fraction(a: &BigInt, b: &BigInt) -> f64 {
    let diff = a - b;
    if diff.is_zero() {
        return 0.5;
    }
    let bits = a.bits().max(diff.bits());
    let shift = bits.saturating_sub(60);
    let af = (a >> shift).to_f64().unwrap_or(0.0);
    let df = (&diff >> shift).to_f64().unwrap_or(1.0);
    if df == 0.0 {
        return 0.5;
    }
    (af / df).clamp(0.0, 1.0)
}

/// `n + 1` equally spaced rationals from `lo` to `hi`.
pub(crate) fn linspace(lo: &Rational, hi: &Rational, n: usize) -> Vec<Rational> {
    let step = (hi - lo) / Rational::from_integer(BigInt::from(n));
    (0..=n)
        .map(|k| lo + &step * Rational::from_integer(BigInt::from(k)))
        .collect()
}
