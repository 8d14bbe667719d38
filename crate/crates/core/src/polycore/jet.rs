use std::cmp::Ordering;

use super::bivariate::{field_powers, shifted_coefficient};
use super::{BivPoly, ExactField, Var};

/// Truncated Taylor expansion at a point: `coeff(i, j)` is the coefficient of
/// `X^i Y^j` for `i + j <= order`, with `(X, Y)` the offset from the point.
#[derive(Debug, Clone)]
pub struct Jet<E> {
    order: u32,
    // row i holds coefficients j = 0..=order-i
    rows: Vec<Vec<E>>,
}

impl<E: Clone> Jet<E> {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, i: u32, j: u32) -> &E {
        &self.rows[i as usize][j as usize]
    }

    fn filled<F: ExactField<Elem = E>>(field: &F, order: u32) -> Self {
        Self {
            order,
            rows: (0..=order)
                .map(|i| vec![field.zero(); (order - i + 1) as usize])
                .collect(),
        }
    }

    /// Jet of a polynomial at `(px, py)`.
    pub fn of_poly<F: ExactField<Elem = E>>(
        field: &F,
        p: &BivPoly,
        px: &E,
        py: &E,
        order: u32,
    ) -> Self {
        let xp = field_powers(field, px, p.degree_in(Var::X) as usize);
        let yp = field_powers(field, py, p.degree_in(Var::Y) as usize);
        let mut jet = Self::filled(field, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                jet.rows[i as usize][j as usize] = shifted_coefficient(p, field, &xp, &yp, i, j);
            }
        }
        jet
    }

    pub fn mul<F: ExactField<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::filled(field, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                let mut acc = field.zero();
                for a in 0..=i {
                    for b in 0..=j {
                        let t = field.mul(self.coeff(a, b), other.coeff(i - a, j - b));
                        acc = field.add(&acc, &t);
                    }
                }
                out.rows[i as usize][j as usize] = acc;
            }
        }
        out
    }

    /// Truncated quotient `self / den`; `None` if `den` vanishes at the point.
    pub fn div<F: ExactField<Elem = E>>(&self, field: &F, den: &Self) -> Option<Self> {
        let order = self.order.min(den.order);
        let d0_inv = field.inv(den.coeff(0, 0))?;
        let mut q = Self::filled(field, order);
        // solve q * den = self degree by degree
        for deg in 0..=order {
            for i in 0..=deg {
                let j = deg - i;
                let mut acc = self.coeff(i, j).clone();
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let t = field.mul(den.coeff(a, b), q.coeff(i - a, j - b));
                        acc = field.sub(&acc, &t);
                    }
                }
                q.rows[i as usize][j as usize] = field.mul(&acc, &d0_inv);
            }
        }
        Some(q)
    }

    pub fn neg<F: ExactField<Elem = E>>(&self, field: &F) -> Self {
        Self {
            order: self.order,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| field.neg(c)).collect())
                .collect(),
        }
    }

    /// Coefficient of `t^k` in `t -> jet(t*vx, t*vy)`.
    pub fn along<F: ExactField<Elem = E>>(&self, field: &F, vx: &E, vy: &E, k: u32) -> E {
        let xp = field_powers(field, vx, k as usize);
        let yp = field_powers(field, vy, k as usize);
        let mut acc = field.zero();
        for i in 0..=k {
            let t = field.mul(
                self.coeff(i, k - i),
                &field.mul(&xp[i as usize], &yp[(k - i) as usize]),
            );
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// `(f_xx, f_xy, f_yy)` at the point.
    pub fn second_form<F: ExactField<Elem = E>>(&self, field: &F) -> (E, E, E) {
        let two = field.from_rational(&super::int(2));
        (
            field.mul(&two, self.coeff(2, 0)),
            self.coeff(1, 1).clone(),
            field.mul(&two, self.coeff(0, 2)),
        )
    }
}

/// Decides whether the degree 2..=4 part of a jet equals `q^2` for some real
/// polynomial `q` (necessarily of degree <= 2 without constant term).
///
/// Coefficient matching: if the quadratic part is `λ L^2` with `L` linear and
/// `λ > 0`, then `q = sqrt(λ) L + M / (2 sqrt(λ))` where `M = Q3 / L`, and the
/// quartic part must equal `M^2 / (4 λ)`. Every step is a rational identity in
/// the field, so no square roots are ever taken.
pub fn is_square_form<F: ExactField>(field: &F, jet: &Jet<F::Elem>) -> bool {
    assert!(jet.order() >= 4, "square test needs a 4-jet");
    let c = |i: u32, j: u32| jet.coeff(i, j).clone();
    let z = |e: &F::Elem| field.is_zero(e);
    let (p, r, s) = (c(2, 0), c(1, 1), c(0, 2));
    if !(z(&p) && z(&r) && z(&s)) {
        // rank one: r^2 = 4 p s
        let four = field.from_rational(&super::int(4));
        let disc = field.sub(&field.mul(&r, &r), &field.mul(&four, &field.mul(&p, &s)));
        if !z(&disc) {
            return false;
        }
        // orient so that the X^2 coefficient is the nonzero one
        let swap = z(&p);
        let get = |i: u32, j: u32| if swap { c(j, i) } else { c(i, j) };
        let lambda = get(2, 0);
        if field.sign(&lambda) != Ordering::Greater {
            return false;
        }
        let two = field.from_rational(&super::int(2));
        let mu = field
            .div(&get(1, 1), &field.mul(&two, &lambda))
            .expect("lambda is nonzero");
        // Q3 = (X + mu Y)(m20 X^2 + m11 XY + m02 Y^2)
        let m20 = get(3, 0);
        let m11 = field.sub(&get(2, 1), &field.mul(&mu, &m20));
        let m02 = field.sub(&get(1, 2), &field.mul(&mu, &m11));
        let rem = field.sub(&get(0, 3), &field.mul(&mu, &m02));
        if !z(&rem) {
            return false;
        }
        let four_lambda = field.mul(&four, &lambda);
        let sq = [
            field.mul(&m20, &m20),
            field.mul(&two, &field.mul(&m20, &m11)),
            field.add(
                &field.mul(&m11, &m11),
                &field.mul(&two, &field.mul(&m20, &m02)),
            ),
            field.mul(&two, &field.mul(&m11, &m02)),
            field.mul(&m02, &m02),
        ];
        return (0..5u32).all(|k| {
            let rhs = field.mul(&four_lambda, &get(4 - k, k));
            z(&field.sub(&sq[k as usize], &rhs))
        });
    }
    // no quadratic part: the cubic part must vanish and the quartic be a square
    if !(0..=3).all(|i| z(jet.coeff(i, 3 - i))) {
        return false;
    }
    is_square_quartic(field, [c(4, 0), c(3, 1), c(2, 2), c(1, 3), c(0, 4)])
}

fn is_square_quartic<F: ExactField>(field: &F, q: [F::Elem; 5]) -> bool {
    let z = |e: &F::Elem| field.is_zero(e);
    let [c40, c31, c22, c13, c04] = q;
    let two = field.from_rational(&super::int(2));
    let four = field.from_rational(&super::int(4));
    match field.sign(&c40) {
        Ordering::Less => false,
        Ordering::Greater => {
            // q2 = g X^2 + d XY + e Y^2 with g^2 = c40, d = c31/(2g),
            // e = (c22 - d^2)/(2g)
            let e0 = field.sub(
                &c22,
                &field
                    .div(&field.mul(&c31, &c31), &field.mul(&four, &c40))
                    .expect("c40 nonzero"),
            );
            let c13_expected = field
                .div(&field.mul(&c31, &e0), &field.mul(&two, &c40))
                .expect("c40 nonzero");
            let c04_expected = field
                .div(&field.mul(&e0, &e0), &field.mul(&four, &c40))
                .expect("c40 nonzero");
            z(&field.sub(&c13, &c13_expected)) && z(&field.sub(&c04, &c04_expected))
        }
        Ordering::Equal => {
            if !z(&c31) {
                return false;
            }
            match field.sign(&c22) {
                Ordering::Less => false,
                Ordering::Greater => {
                    let expected = field
                        .div(&field.mul(&c13, &c13), &field.mul(&four, &c22))
                        .expect("c22 nonzero");
                    z(&field.sub(&c04, &expected))
                }
                Ordering::Equal => z(&c13) && field.sign(&c04) != Ordering::Less,
            }
        }
    }
}
