#![allow(dead_code)]

use hesslab::polycore::{ratio, AffineMap2, BivPoly, Rational, UniPoly};
use proptest::prelude::*;

/// `p/q` with `|p| <= 12`, `1 <= q <= 6`.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != ratio(0, 1))
}

/// Bivariate polynomial of total degree at most `deg` with up to `terms` terms.
pub fn biv_poly(deg: u32, terms: usize) -> impl Strategy<Value = BivPoly> {
    prop::collection::vec((0..=deg, 0..=deg, small_rational()), 1..=terms).prop_map(move |ts| {
        ts.into_iter()
            .filter(|(i, j, _)| i + j <= deg)
            .fold(BivPoly::zero(), |acc, (i, j, c)| {
                &acc + &BivPoly::monomial(c, i, j)
            })
    })
}

/// Univariate polynomial of degree at most `deg` with small integer coefficients.
pub fn uni_poly(deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 1..=deg + 1).prop_map(|cs| UniPoly::from_ints(&cs))
}

/// Affine map with rational entries and `1/4 <= |det| <= 4`.
pub fn affine_map() -> impl Strategy<Value = AffineMap2> {
    (
        [
            small_rational(),
            small_rational(),
            small_rational(),
            small_rational(),
        ],
        [small_rational(), small_rational()],
    )
        .prop_filter_map("determinant out of range", |([a, b, c, d], [tx, ty])| {
            let det = &a * &d - &b * &c;
            let abs = if det < ratio(0, 1) { -det } else { det };
            if abs < ratio(1, 4) || abs > ratio(4, 1) {
                return None;
            }
            AffineMap2::new([[a, b], [c, d]], [tx, ty]).ok()
        })
}

pub fn rational_point() -> impl Strategy<Value = (Rational, Rational)> {
    (small_rational(), small_rational())
}
