use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::{rational_sqrt, rational_to_f64, Rational};

/// An ordered field with exact zero and sign tests.
///
/// The differential-geometric checks are written once against this trait and
/// run over plain rationals, over a real quadratic extension (irrational
/// asymptotic directions) and over the real algebraic number picked out by an
/// isolating interval (irrational special points).
pub trait ExactField {
    type Elem: Clone + Debug;

    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn sign(&self, a: &Self::Elem) -> Ordering;
    /// Floating approximation, display only.
    fn approx(&self, a: &Self::Elem) -> f64;
    /// The element as a rational, when it is one.
    fn as_rational(&self, a: &Self::Elem) -> Option<Rational>;

    fn zero(&self) -> Self::Elem {
        self.from_rational(&Rational::zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_rational(&Rational::one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.sign(a) == Ordering::Equal
    }

    fn scale(&self, a: &Self::Elem, r: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(r))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl ExactField for RationalField {
    type Elem = Rational;

    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn sign(&self, a: &Rational) -> Ordering {
        a.cmp(&Rational::zero())
    }
    fn approx(&self, a: &Rational) -> f64 {
        rational_to_f64(a)
    }
    fn as_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
}

/// `a + b*sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
}

/// Real quadratic field `Q(sqrt(d))` with `d > 0` not a rational square.
#[derive(Debug, Clone)]
pub struct QuadraticField {
    d: Rational,
}

impl QuadraticField {
    /// `None` when `d` is not positive or is already a rational square.
    pub fn new(d: Rational) -> Option<Self> {
        if !d.is_positive() || rational_sqrt(&d).is_some() {
            return None;
        }
        Some(Self { d })
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn sqrt_d(&self) -> QuadElem {
        QuadElem {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadElem {
        QuadElem { a, b }
    }
}

fn sign_of(r: &Rational) -> Ordering {
    r.cmp(&Rational::zero())
}

impl ExactField for QuadraticField {
    type Elem = QuadElem;

    fn from_rational(&self, r: &Rational) -> QuadElem {
        QuadElem {
            a: r.clone(),
            b: Rational::zero(),
        }
    }
    fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }
    fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: &x.a - &y.a,
            b: &x.b - &y.b,
        }
    }
    fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: &x.a * &y.a + &x.b * &y.b * &self.d,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }
    fn neg(&self, x: &QuadElem) -> QuadElem {
        QuadElem { a: -&x.a, b: -&x.b }
    }
    fn inv(&self, x: &QuadElem) -> Option<QuadElem> {
        let norm = &x.a * &x.a - &x.b * &x.b * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(QuadElem {
            a: &x.a / &norm,
            b: -&x.b / &norm,
        })
    }
    fn sign(&self, x: &QuadElem) -> Ordering {
        let sa = sign_of(&x.a);
        let sb = sign_of(&x.b);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        let a2 = &x.a * &x.a;
        let b2d = &x.b * &x.b * &self.d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }
    fn approx(&self, x: &QuadElem) -> f64 {
        rational_to_f64(&x.a) + rational_to_f64(&x.b) * rational_to_f64(&self.d).sqrt()
    }
    fn as_rational(&self, x: &QuadElem) -> Option<Rational> {
        x.b.is_zero().then(|| x.a.clone())
    }
}
