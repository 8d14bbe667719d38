use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{binomial, denominator_lcm, int, AffineMap2, ExactField, PolyError, Rational, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Sparse polynomial in `x, y`: exponent pair `(i, j)` for `x^i y^j` mapped
/// to a nonzero rational coefficient. The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    /// Builds from `(i, j, coefficient)` triples; repeated exponents add up.
    pub fn from_terms(iter: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in iter {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// `a*x + b*y + c`
    pub fn linear(a: Rational, b: Rational, c: Rational) -> Self {
        Self::from_terms([((1, 0), a), ((0, 1), b), ((0, 0), c)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i + j == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
            .unwrap_or(0)
    }

    /// Leading term under graded lexicographic order (total degree, then
    /// power of `x`).
    pub fn leading_term(&self) -> Option<((u32, u32), &Rational)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(&k, c)| (k, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Common positive scale `L` and integer coefficients with
    /// `self = (1/L) * sum c_ij x^i y^j`.
    pub fn integer_form(&self) -> (BigInt, BTreeMap<(u32, u32), BigInt>) {
        let l = denominator_lcm(self.terms.values());
        let ints = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.numer() * (&l / c.denom())))
            .collect();
        (l, ints)
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => {
                    terms.insert((i - 1, j), c * int(i as i64));
                }
                Var::Y if j > 0 => {
                    terms.insert((i, j - 1), c * int(j as i64));
                }
                _ => {}
            }
        }
        Self { terms }
    }

    pub fn dx(&self) -> Self {
        self.partial(Var::X)
    }

    pub fn dy(&self) -> Self {
        self.partial(Var::Y)
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        self.restrict_y(y).eval(x)
    }

    /// Value in an arbitrary exact field.
    pub fn eval_in<F: ExactField>(&self, field: &F, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let dx = self.degree_in(Var::X) as usize;
        let dy = self.degree_in(Var::Y) as usize;
        let xp = powers(field, x, dx);
        let yp = powers(field, y, dy);
        let mut acc = field.zero();
        for (&(i, j), c) in &self.terms {
            let m = field.mul(&xp[i as usize], &yp[j as usize]);
            acc = field.add(&acc, &field.mul(&field.from_rational(c), &m));
        }
        acc
    }

    /// Univariate polynomial in `x` obtained by fixing `y`.
    pub fn restrict_y(&self, y: &Rational) -> UniPoly {
        let dx = self.degree_in(Var::X) as usize;
        let mut coeffs = vec![Rational::zero(); dx + 1];
        let mut ypow: HashMap<u32, Rational> = HashMap::new();
        for (&(i, j), c) in &self.terms {
            let yj = ypow.entry(j).or_insert_with(|| pow_rat(y, j));
            coeffs[i as usize] += c * &*yj;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// `t -> p(base + t*dir)`.
    pub fn restrict_to_line(
        &self,
        base: (&Rational, &Rational),
        dir: (&Rational, &Rational),
    ) -> Result<UniPoly, PolyError> {
        if dir.0.is_zero() && dir.1.is_zero() {
            return Err(PolyError::ZeroDirection);
        }
        let xl = UniPoly::from_coeffs(vec![base.0.clone(), dir.0.clone()]);
        let yl = UniPoly::from_coeffs(vec![base.1.clone(), dir.1.clone()]);
        let xp = uni_powers(&xl, self.degree_in(Var::X) as usize);
        let yp = uni_powers(&yl, self.degree_in(Var::Y) as usize);
        let mut acc = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        Ok(acc)
    }

    /// `p(X(x, y), Y(x, y))`.
    pub fn substitute(&self, xs: &BivPoly, ys: &BivPoly) -> BivPoly {
        let xp = biv_powers(xs, self.degree_in(Var::X) as usize);
        let yp = biv_powers(ys, self.degree_in(Var::Y) as usize);
        let mut acc = BivPoly::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        acc
    }

    /// `p ∘ T` expanded exactly.
    pub fn compose_affine(&self, t: &AffineMap2) -> BivPoly {
        let (xs, ys) = t.component_polys();
        self.substitute(&xs, &ys)
    }

    /// Terms of degree `2..=max_degree` of `p(point + (x, y))`.
    pub fn translate_jet(
        &self,
        point: (&Rational, &Rational),
        max_degree: u32,
    ) -> Result<BivPoly, PolyError> {
        if max_degree < 2 {
            return Err(PolyError::JetOrder(max_degree));
        }
        let shift = AffineMap2::translation(point.0.clone(), point.1.clone());
        let shifted = self.compose_affine(&shift);
        Ok(shifted.truncate_degrees(2, max_degree))
    }

    /// Keeps only terms with total degree in `lo..=hi`.
    pub fn truncate_degrees(&self, lo: u32, hi: u32) -> BivPoly {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| (lo..=hi).contains(&(i + j)))
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BivPoly) -> Option<BivPoly> {
        let ((di, dj), dc) = d.leading_term()?;
        let dc_inv = dc.recip();
        let mut rem: BTreeMap<(u32, u32, u32), Rational> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((i + j, i, j), c.clone()))
            .collect();
        let mut quot = BTreeMap::new();
        while let Some((&(_, i, j), c)) = rem.iter().next_back() {
            if i < di || j < dj {
                return None;
            }
            let (qi, qj) = (i - di, j - dj);
            let qc = c * &dc_inv;
            for (&(ti, tj), tc) in &d.terms {
                let key = (ti + tj + qi + qj, ti + qi, tj + qj);
                let e = rem.entry(key).or_insert_with(Rational::zero);
                *e -= &qc * tc;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert((qi, qj), qc);
        }
        Some(Self { terms: quot })
    }

    /// Univariate polynomial in `x` if `self` has no `y`.
    pub fn as_univariate_x(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|&(_, j)| j > 0) {
            return None;
        }
        Some(self.restrict_y(&Rational::zero()))
    }

    pub fn from_univariate_x(p: &UniPoly) -> BivPoly {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c.clone())),
        )
    }

    /// Coefficients of `self` viewed as a polynomial in `y` over `Q[x]`.
    pub fn coefficients_in_y(&self) -> Vec<UniPoly> {
        let dy = self.degree_in(Var::Y) as usize;
        let mut rows = vec![BTreeMap::<u32, Rational>::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize].insert(i, c.clone());
        }
        rows.into_iter()
            .map(|row| {
                let n = row.keys().max().map_or(0, |&m| m as usize + 1);
                let mut coeffs = vec![Rational::zero(); n];
                for (i, c) in row {
                    coeffs[i as usize] = c;
                }
                UniPoly::from_coeffs(coeffs)
            })
            .collect()
    }
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

fn powers<F: ExactField>(field: &F, x: &F::Elem, n: usize) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(field.one());
    for k in 0..n {
        let next = field.mul(&out[k], x);
        out.push(next);
    }
    out
}

fn uni_powers(p: &UniPoly, n: usize) -> Vec<UniPoly> {
    let mut out = vec![UniPoly::one()];
    for k in 0..n {
        let next = &out[k] * p;
        out.push(next);
    }
    out
}

fn biv_powers(p: &BivPoly, n: usize) -> Vec<BivPoly> {
    let mut out = vec![BivPoly::one()];
    for k in 0..n {
        let next = &out[k] * p;
        out.push(next);
    }
    out
}

/// Taylor coefficient of `x^a y^b` of `p` recentered at `(px, py)`, in any
/// exact field. Used for local jets.
pub(crate) fn shifted_coefficient<F: ExactField>(
    p: &BivPoly,
    field: &F,
    xp: &[F::Elem],
    yp: &[F::Elem],
    a: u32,
    b: u32,
) -> F::Elem {
    let mut acc = field.zero();
    for (&(i, j), c) in &p.terms {
        if i < a || j < b {
            continue;
        }
        let w = c * Rational::from_integer(binomial(i, a) * binomial(j, b));
        let m = field.mul(&xp[(i - a) as usize], &yp[(j - b) as usize]);
        acc = field.add(&acc, &field.mul(&field.from_rational(&w), &m));
    }
    acc
}

pub(crate) fn field_powers<F: ExactField>(field: &F, x: &F::Elem, n: usize) -> Vec<F::Elem> {
    powers(field, x, n)
}

impl fmt::Debug for BivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivPoly({self})")
    }
}

impl fmt::Display for BivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || i + j == 0 {
                parts.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &BivPoly {
    type Output = BivPoly;
    fn add(self, rhs: &BivPoly) -> BivPoly {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            let e = terms.entry(k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(&k);
            }
        }
        BivPoly { terms }
    }
}

impl Sub for &BivPoly {
    type Output = BivPoly;
    fn sub(self, rhs: &BivPoly) -> BivPoly {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            let e = terms.entry(k).or_insert_with(Rational::zero);
            *e -= c;
            if e.is_zero() {
                terms.remove(&k);
            }
        }
        BivPoly { terms }
    }
}

impl Mul for &BivPoly {
    type Output = BivPoly;
    fn mul(self, rhs: &BivPoly) -> BivPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivPoly::zero();
        }
        // accumulate over the integers, divide once at the end
        let (la, ia) = self.integer_form();
        let (lb, ib) = rhs.integer_form();
        let mut acc: HashMap<(u32, u32), BigInt> = HashMap::new();
        for (&(i, j), a) in &ia {
            for (&(k, l), b) in &ib {
                *acc.entry((i + k, j + l)).or_insert_with(BigInt::zero) += a * b;
            }
        }
        let scale = la * lb;
        BivPoly {
            terms: acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, Rational::new(v, scale.clone())))
                .collect(),
        }
    }
}

impl Neg for &BivPoly {
    type Output = BivPoly;
    fn neg(self) -> BivPoly {
        BivPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivPoly {
            type Output = BivPoly;
            fn $m(self, rhs: BivPoly) -> BivPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivPoly {
    type Output = BivPoly;
    fn neg(self) -> BivPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, ratio};

    fn p(s: &str) -> BivPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x - 1") * &p("x + 1"), p("x^2 - 1"));
        assert_eq!(&p("x^3 + y") + &BivPoly::zero(), p("x^3 + y"));
        assert_eq!(p("x + y").pow(2), p("x^2 + 2*x*y + y^2"));
        assert!((&p("x*y") - &p("x*y")).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x^2*y").dx(), p("2*x*y"));
        assert!(p("x^2").dy().is_zero());
        assert_eq!(p("(y - x)").dx(), p("-1"));
        assert_eq!((&p("y - x") * &p("y + x")).dx(), p("-2*x"));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p("x^2 + y^2 - 1").evaluate(&int(1), &int(0)), int(0));
        assert_eq!(p("x*y").evaluate(&int(2), &int(3)), int(6));
        assert_eq!(p("2*x^2 - 5").evaluate(&ratio(3, 2), &int(0)), ratio(-1, 2));
    }

    #[test]
    fn line_restrictions() {
        let z = int(0);
        let one = int(1);
        let r = p("x^2 + y^2")
            .restrict_to_line((&z, &z), (&one, &z))
            .unwrap();
        assert_eq!(r, UniPoly::from_ints(&[0, 0, 1]));
        let r = p("x*y").restrict_to_line((&z, &z), (&one, &one)).unwrap();
        assert_eq!(r, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(
            p("x").restrict_to_line((&z, &z), (&z, &z)),
            Err(PolyError::ZeroDirection)
        );
    }

    #[test]
    fn jets() {
        let z = int(0);
        let one = int(1);
        assert_eq!(
            p("x^2 + y^2").translate_jet((&z, &z), 4).unwrap(),
            p("x^2 + y^2")
        );
        assert_eq!(
            p("(x - 1)^2").translate_jet((&one, &z), 4).unwrap(),
            p("x^2")
        );
        assert_eq!(
            p("x^3").translate_jet((&one, &z), 4).unwrap(),
            p("3*x^2 + x^3")
        );
        assert!(p("x^3").translate_jet((&one, &z), 1).is_err());
    }

    #[test]
    fn exact_division() {
        let u1 = p("x^2 + y^2 + 1");
        let prod = &p("x^2 + y^2 - 1") * &u1;
        assert_eq!(prod.div_exact(&u1), Some(p("x^2 + y^2 - 1")));
        assert_eq!(p("x^2 + y").div_exact(&p("x + 1")), None);
        assert_eq!(p("x^2 - 1").div_exact(&p("x + 1")), Some(p("x - 1")));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("1 + x*y - 1/2*x^2").to_string(), "-1/2*x^2 + x*y + 1");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(BivPoly::zero().to_string(), "0");
    }
}
