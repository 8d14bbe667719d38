//! Sturm-sequence real root counting, isolation and bisection refinement over
//! the rationals, plus [`RealRootField`]: exact arithmetic at one isolated
//! real root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{int, rational_to_f64, ExactField, Rational, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("empty interval: lower bound {lo} is not below upper bound {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("interval ({lo}, {hi}] contains {count} roots, expected exactly one")]
    NotIsolating {
        lo: String,
        hi: String,
        count: usize,
    },
    #[error("refinement width must be positive")]
    NonPositiveWidth,
}

/// Interval endpoint that may be infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::At(r)
    }
}

/// `(lo, hi]` holding exactly one real root of the target polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "crate::polycore::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::polycore::serde_rational")]
    pub hi: Rational,
    /// The root is simple in the (not square-free reduced) polynomial.
    pub multiplicity_one: bool,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / int(2)))
    }
}

/// All real roots lie in `(-B, B)` with `B = 1 + max|c_i| / |lead|`.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.lead().abs();
    let n = p.coeffs().len();
    let max = p.coeffs()[..n.saturating_sub(1)]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max / lead
}

/// Sturm sequence of the square-free part, each entry scaled by a positive
/// constant.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let p0 = p.square_free();
    let mut seq = vec![p0.clone()];
    if p0.is_constant() {
        return seq;
    }
    let mut prev = p0.clone();
    let mut cur = p0.derivative();
    while !cur.is_zero() {
        seq.push(cur.clone());
        let r = prev.rem(&cur);
        let next = if r.is_zero() {
            r
        } else {
            let l = r.lead().abs();
            (-&r).scale(&l.recip())
        };
        prev = cur;
        cur = next;
    }
    seq
}

fn variations(seq: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for q in seq {
        let s = q.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn resolve(p: &UniPoly, b: &Bound) -> Rational {
    match b {
        Bound::At(r) => r.clone(),
        Bound::NegInf => -cauchy_bound(p),
        Bound::PosInf => cauchy_bound(p),
    }
}

fn count_with(seq: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
    variations(seq, lo) - variations(seq, hi)
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: Bound, hi: Bound) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(0);
    }
    let (lo, hi) = (resolve(p, &lo), resolve(p, &hi));
    if lo >= hi {
        return Err(RootError::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(count_with(&sturm_sequence(p), &lo, &hi))
}

/// Distinct real roots in `(0, +inf)`.
pub fn positive_root_count(p: &UniPoly) -> Result<usize, RootError> {
    sturm_count(p, Bound::At(Rational::zero()), Bound::PosInf)
}

/// Whether every root of `p` (real or complex) is simple.
pub fn is_square_free(p: &UniPoly) -> bool {
    p.gcd(&p.derivative()).is_constant()
}

/// One isolating interval per distinct real root, sorted left to right.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(p);
    let repeated = p.gcd(&p.derivative());
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_with(&seq, &lo, &hi) {
            0 => {}
            1 => {
                let multiplicity_one = repeated.is_constant()
                    || sturm_count(&repeated, Bound::At(lo.clone()), Bound::At(hi.clone()))
                        .map_or(true, |c| c == 0);
                out.push(IsolatingInterval {
                    lo,
                    hi,
                    multiplicity_one,
                });
            }
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Bisects `iv` until its width is at most `width`. Fails if `iv` does not
/// isolate a root of `p`.
pub fn refine_root(
    p: &UniPoly,
    iv: &IsolatingInterval,
    width: &Rational,
) -> Result<IsolatingInterval, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(RootError::NonPositiveWidth);
    }
    let seq = sturm_sequence(p);
    let count = if iv.lo < iv.hi {
        count_with(&seq, &iv.lo, &iv.hi)
    } else {
        0
    };
    if count != 1 {
        return Err(RootError::NotIsolating {
            lo: iv.lo.to_string(),
            hi: iv.hi.to_string(),
            count,
        });
    }
    let sf = &seq[0];
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / int(2);
        let (s_lo, s_mid) = (sf.sign_at(&lo), sf.sign_at(&mid));
        let left = if s_lo != 0 && s_mid != 0 {
            // a simple root of the square-free part changes sign
            s_lo != s_mid
        } else if s_mid == 0 {
            true
        } else {
            count_with(&seq, &lo, &mid) == 1
        };
        if left {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(IsolatingInterval {
        lo,
        hi,
        multiplicity_one: iv.multiplicity_one,
    })
}

/// The rational with the smallest denominator strictly inside `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    // 0 <= lo < hi: continued-fraction descent
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if &next < hi {
        return next;
    }
    if lo.is_integer() {
        // (n, n + f): n + 1/k with the smallest k such that 1/k < f
        let k = (hi - &fl).recip().floor() + Rational::one();
        return fl + k.recip();
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Exact rational value of the root in `iv`, if that root is rational with a
/// small enough denominator to be found by `rounds` bisection steps.
pub fn exact_root(p: &UniPoly, iv: &IsolatingInterval, rounds: u32) -> Option<Rational> {
    if p.eval(&iv.hi).is_zero() {
        return Some(iv.hi.clone());
    }
    let sf = p.square_free();
    if sf.degree() == Some(1) {
        let r = -sf.coeff(0) / sf.coeff(1);
        return iv.contains(&r).then_some(r);
    }
    let mut cur = iv.clone();
    for k in 0..=rounds {
        let s = simplest_between(&cur.lo, &cur.hi);
        if p.eval(&s).is_zero() {
            return Some(s);
        }
        if k < rounds {
            let w = cur.width() / int(16);
            cur = refine_root(p, &cur, &w).ok()?;
            if p.eval(&cur.hi).is_zero() {
                return Some(cur.hi.clone());
            }
        }
    }
    None
}

/// Rational roots of `p` recovered exactly, one entry per isolating interval
/// (`None` where the root is irrational or was not found).
pub fn try_rational_roots(
    p: &UniPoly,
) -> Result<Vec<(IsolatingInterval, Option<Rational>)>, RootError> {
    let ivs = isolate_roots(p)?;
    Ok(ivs
        .into_iter()
        .map(|iv| {
            let r = exact_root(p, &iv, 6);
            (iv, r)
        })
        .collect())
}

/// Exact arithmetic in `Q(θ)` where `θ` is the unique root of a square-free
/// polynomial inside an isolating interval.
///
/// Elements are fractions of polynomials in `θ`, reduced modulo the defining
/// polynomial. The defining polynomial need not be irreducible: zero tests go
/// through `gcd` with it and a root count on the interval, so they are exact
/// for the specific root `θ`.
#[derive(Debug, Clone)]
pub struct RealRootField {
    poly: UniPoly,
    interval: IsolatingInterval,
}

/// `num(θ) / den(θ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootElem {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RealRootField {
    /// `interval` must isolate a root of `poly`.
    pub fn new(poly: &UniPoly, interval: &IsolatingInterval) -> Result<Self, RootError> {
        let sf = poly.square_free();
        let fine = refine_root(
            &sf,
            interval,
            &Rational::new(BigInt::one(), BigInt::one() << 24),
        )?;
        Ok(Self {
            poly: sf,
            interval: fine,
        })
    }

    pub fn defining_poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn interval(&self) -> &IsolatingInterval {
        &self.interval
    }

    /// The generator `θ`.
    pub fn theta(&self) -> RootElem {
        self.from_poly(&UniPoly::x())
    }

    pub fn from_poly(&self, p: &UniPoly) -> RootElem {
        RootElem {
            num: self.reduce(p),
            den: UniPoly::one(),
        }
    }

    fn reduce(&self, p: &UniPoly) -> UniPoly {
        if self.poly.degree().unwrap_or(0) == 0 {
            return p.clone();
        }
        p.rem(&self.poly)
    }

    /// Sign of `q(θ)`.
    pub fn sign_of_poly(&self, q: &UniPoly) -> Ordering {
        if q.is_zero() {
            return Ordering::Equal;
        }
        if q.is_constant() {
            return q.lead().cmp(&Rational::zero());
        }
        let g = q.gcd(&self.poly);
        if !g.is_constant() {
            let hits = sturm_count(
                &g,
                Bound::At(self.interval.lo.clone()),
                Bound::At(self.interval.hi.clone()),
            )
            .unwrap_or(0);
            if hits > 0 {
                return Ordering::Equal;
            }
        }
        // q(θ) != 0: shrink until q has no root in the interval
        let mut iv = self.interval.clone();
        loop {
            let c = sturm_count(q, Bound::At(iv.lo.clone()), Bound::At(iv.hi.clone())).unwrap_or(0);
            if c == 0 {
                return q.eval(&iv.hi).cmp(&Rational::zero());
            }
            let w = iv.width() / int(4);
            iv = refine_root(&self.poly, &iv, &w).expect("interval stays isolating");
        }
    }
}

impl ExactField for RealRootField {
    type Elem = RootElem;

    fn from_rational(&self, r: &Rational) -> RootElem {
        RootElem {
            num: UniPoly::constant(r.clone()),
            den: UniPoly::one(),
        }
    }
    fn add(&self, a: &RootElem, b: &RootElem) -> RootElem {
        if a.den == b.den {
            return RootElem {
                num: self.reduce(&(&a.num + &b.num)),
                den: a.den.clone(),
            };
        }
        RootElem {
            num: self.reduce(&(&(&a.num * &b.den) + &(&b.num * &a.den))),
            den: self.reduce(&(&a.den * &b.den)),
        }
    }
    fn sub(&self, a: &RootElem, b: &RootElem) -> RootElem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RootElem, b: &RootElem) -> RootElem {
        RootElem {
            num: self.reduce(&(&a.num * &b.num)),
            den: self.reduce(&(&a.den * &b.den)),
        }
    }
    fn neg(&self, a: &RootElem) -> RootElem {
        RootElem {
            num: -&a.num,
            den: a.den.clone(),
        }
    }
    fn inv(&self, a: &RootElem) -> Option<RootElem> {
        if self.sign_of_poly(&a.num) == Ordering::Equal {
            return None;
        }
        Some(RootElem {
            num: a.den.clone(),
            den: a.num.clone(),
        })
    }
    fn sign(&self, a: &RootElem) -> Ordering {
        let sn = self.sign_of_poly(&a.num);
        let sd = self.sign_of_poly(&a.den);
        if sd == Ordering::Less {
            sn.reverse()
        } else {
            sn
        }
    }
    fn approx(&self, a: &RootElem) -> f64 {
        let t = (&self.interval.lo + &self.interval.hi) / int(2);
        rational_to_f64(&(a.num.eval(&t) / a.den.eval(&t)))
    }
    fn as_rational(&self, a: &RootElem) -> Option<Rational> {
        (a.num.is_constant() && a.den.is_constant()).then(|| a.num.coeff(0) / a.den.coeff(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::ratio;

    fn at(n: i64) -> Bound {
        Bound::At(int(n))
    }

    #[test]
    fn counts() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, at(-2), at(2)), Ok(2));
        let q = UniPoly::from_ints(&[-5, 0, 2]);
        assert_eq!(sturm_count(&q, at(0), Bound::PosInf), Ok(1));
        assert_eq!(sturm_count(&p.pow(2), at(-2), at(2)), Ok(2));
        assert_eq!(
            sturm_count(&UniPoly::zero(), at(0), at(1)),
            Err(RootError::ZeroPolynomial)
        );
        // right endpoint included, left excluded
        assert_eq!(sturm_count(&p, at(-1), at(1)), Ok(1));
    }

    #[test]
    fn isolation() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_roots(&p).unwrap();
        assert_eq!(ivs.len(), 2);
        let r2 = 2f64.sqrt();
        for (iv, root) in ivs.iter().zip([-r2, r2]) {
            assert!(rational_to_f64(&iv.lo) < root && root < rational_to_f64(&iv.hi));
            assert!(iv.multiplicity_one);
        }
        assert!(isolate_roots(&UniPoly::from_ints(&[3])).unwrap().is_empty());
        let q = UniPoly::from_ints(&[-5, 0, 6]);
        let ivs = isolate_roots(&q).unwrap();
        let pos = refine_root(&q, &ivs[1], &ratio(1, 1 << 20)).unwrap();
        assert!((pos.midpoint_f64() - (5.0f64 / 6.0).sqrt()).abs() < 1e-5);
    }

    #[test]
    fn refinement() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let iv = IsolatingInterval {
            lo: int(1),
            hi: int(2),
            multiplicity_one: true,
        };
        let r = refine_root(&p, &iv, &ratio(1, 1024)).unwrap();
        assert!(r.width() <= ratio(1, 1024));
        assert!(r.lo < ratio(14142136, 10000000) && r.hi > ratio(14142135, 10000000));
        let third = UniPoly::from_coeffs(vec![ratio(-1, 3), int(1)]);
        let iv = IsolatingInterval {
            lo: int(0),
            hi: int(1),
            multiplicity_one: true,
        };
        let r = refine_root(&third, &iv, &ratio(1, 8)).unwrap();
        assert!(r.contains(&ratio(1, 3)));
        let bad = IsolatingInterval {
            lo: int(-2),
            hi: int(2),
            multiplicity_one: true,
        };
        assert!(matches!(
            refine_root(&p, &bad, &ratio(1, 2)),
            Err(RootError::NotIsolating { count: 2, .. })
        ));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&ratio(-1, 3), &ratio(1, 2)), int(0));
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(2, 5));
        assert_eq!(simplest_between(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_between(&ratio(1, 2), &ratio(7, 2)), int(1));
        assert_eq!(simplest_between(&int(1), &int(3)), int(2));
        assert_eq!(simplest_between(&int(2), &ratio(5, 2)), ratio(7, 3));
        assert_eq!(simplest_between(&ratio(-5, 2), &int(-2)), ratio(-7, 3));
    }

    #[test]
    fn exact_rational_roots() {
        let p = &UniPoly::linear_root(&ratio(2, 7)) * &UniPoly::from_ints(&[-2, 0, 1]);
        let roots = try_rational_roots(&p).unwrap();
        let found: Vec<_> = roots.iter().filter_map(|(_, r)| r.clone()).collect();
        assert_eq!(found, vec![ratio(2, 7)]);
    }

    #[test]
    fn root_field_signs() {
        // θ = sqrt(2) as root of x^2 - 2 in (1, 2]
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let iv = isolate_roots(&p).unwrap().pop().unwrap();
        let k = RealRootField::new(&p, &iv).unwrap();
        let t = k.theta();
        let t2 = k.mul(&t, &t);
        assert_eq!(k.as_rational(&t2), Some(int(2)));
        let d = k.sub(&t, &k.from_rational(&ratio(141, 100)));
        assert_eq!(k.sign(&d), Ordering::Greater);
        let e = k.sub(&t, &k.from_rational(&ratio(142, 100)));
        assert_eq!(k.sign(&e), Ordering::Less);
        let inv = k.inv(&t).unwrap();
        assert!(k.is_zero(&k.sub(&k.mul(&inv, &t), &k.one())));
    }
}
