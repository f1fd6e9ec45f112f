//! Sparse bivariate polynomials in `x`, `y` with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::univar::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent pair of `x^x y^y`, ordered graded-lexicographically
/// (total degree first, then the power of `x`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    pub const fn degree(&self) -> u32 {
        self.x + self.y
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.x {
            0 => {}
            1 => parts.push("x".to_string()),
            e => parts.push(format!("x^{e}")),
        }
        match self.y {
            0 => {}
            1 => parts.push("y".to_string()),
            e => parts.push(format!("y^{e}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `Σ a_{i,j} x^i y^j`. Zero coefficients are never stored, so structural
/// equality is polynomial equality, and iteration runs in ascending
/// graded-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarPoly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> Default for BivarPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> BivarPoly<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c · x^i y^j`
    pub fn term(c: T, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::term(T::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(T::one(), 0, 1)
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), T)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(Monomial::new(i, j), c);
        }
        out
    }

    fn add_term(&mut self, mono: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).max()
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
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

    /// `self(x ← p, y ← q)`
    pub fn substitute(&self, p: &Self, q: &Self) -> Self {
        let max_x = self.degree_in_x().unwrap_or(0) as usize;
        let max_y = self.degree_in_y().unwrap_or(0) as usize;
        let mut p_pows = vec![Self::one()];
        for k in 1..=max_x {
            p_pows.push(&p_pows[k - 1] * p);
        }
        let mut q_pows = vec![Self::one()];
        for k in 1..=max_y {
            q_pows.push(&q_pows[k - 1] * q);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let prod = &p_pows[m.x as usize] * &q_pows[m.y as usize];
            for (pm, pc) in prod.terms {
                out.add_term(pm, pc * c.clone());
            }
        }
        out
    }

    /// Exact division by `x^a y^b`.
    pub fn divide_by_monomial(&self, a: u32, b: u32) -> Result<Self> {
        let d = Monomial::new(a, b);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !d.divides(m) {
                return Err(Error::NonDivisible {
                    term: Self::term(c.clone(), m.x, m.y).to_string(),
                    a,
                    b,
                });
            }
            terms.insert(Monomial::new(m.x - a, m.y - b), c.clone());
        }
        Ok(Self { terms })
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| ((m.x - 1, m.y), c.clone() * T::from_int(m.x as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| ((m.x, m.y - 1), c.clone() * T::from_int(m.y as i64))),
        )
    }

    /// Coefficient list in `y`: entry `k` is the coefficient of `y^k`, a
    /// polynomial in `x`.
    pub fn y_coefficients(&self) -> Vec<UniPoly<T>> {
        let dy = match self.degree_in_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut dense: Vec<Vec<T>> = vec![Vec::new(); dy + 1];
        for (m, c) in &self.terms {
            let row = &mut dense[m.y as usize];
            if row.len() <= m.x as usize {
                row.resize(m.x as usize + 1, T::zero());
            }
            row[m.x as usize] = c.clone();
        }
        dense.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coefficients(coeffs: &[UniPoly<T>]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(k, u)| {
            u.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| ((i as u32, k as u32), c.clone()))
        }))
    }

    /// Embeds a polynomial in `x` alone.
    pub fn from_univariate_x(u: &UniPoly<T>) -> Self {
        Self::from_y_coefficients(std::slice::from_ref(u))
    }

    /// The polynomial as a univariate polynomial in `x`, if `y` does not occur.
    pub fn as_univariate_x(&self) -> Option<UniPoly<T>> {
        if self.degree_in_y().unwrap_or(0) > 0 {
            return None;
        }
        Some(
            self.y_coefficients()
                .into_iter()
                .next()
                .unwrap_or_else(UniPoly::zero),
        )
    }

    /// Quotient of an exact division, or `None` when `divisor` does not divide
    /// `self`. Plain multivariate division by leading terms.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let q = Self::term(c / lc.clone(), m.x - lm.x, m.y - lm.y);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Scales so the greatest term (graded lex) has coefficient 1.
    pub fn monic(&self) -> Self {
        match self.terms.values().next_back() {
            None => Self::zero(),
            Some(lc) => self.scalar_mul(&(T::one() / lc.clone())),
        }
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            acc + c.clone()
                * num_traits::pow(x.clone(), m.x as usize)
                * num_traits::pow(y.clone(), m.y as usize)
        })
    }
}

impl<T: Scalar> Add for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn add(self, rhs: Self) -> BivarPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn sub(self, rhs: Self) -> BivarPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Neg for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn neg(self) -> BivarPoly<T> {
        BivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<T: Scalar> Mul for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn mul(self, rhs: Self) -> BivarPoly<T> {
        let mut out = BivarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(
                    Monomial::new(ma.x + mb.x, ma.y + mb.y),
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for BivarPoly<T> {
            type Output = BivarPoly<T>;
            fn $method(self, rhs: Self) -> BivarPoly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> fmt::Display for BivarPoly<T> {
    /// Renders in the input grammar: terms in ascending graded order,
    /// non-integral coefficients parenthesized, e.g. `y^2 + (1/2)*x*y - x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (idx == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let coeff = if abs.is_integral() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            if m.degree() == 0 {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::{Poly, Rat};

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn cusp() -> Poly {
        Poly::from_terms([((0, 2), r(1, 1)), ((3, 0), r(-1, 1))])
    }

    #[test]
    fn graded_order_iteration() {
        let p = Poly::from_terms([
            ((3, 0), r(1, 1)),
            ((0, 2), r(1, 1)),
            ((1, 1), r(1, 1)),
            ((0, 0), r(2, 1)),
        ]);
        let monos: Vec<_> = p.terms().map(|(m, _)| (m.x, m.y)).collect();
        assert_eq!(monos, vec![(0, 0), (0, 2), (1, 1), (3, 0)]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = cusp();
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(&p * &Poly::one(), p);
        assert_eq!((&p - &p).num_terms(), 0);
    }

    #[test]
    fn blowup_substitution_of_cusp() {
        // y <- v x in y^2 - x^3, then divide by x^2: v^2 - x
        let f = cusp();
        let sub = f.substitute(&Poly::x(), &(&Poly::y() * &Poly::x()));
        let strict = sub.divide_by_monomial(2, 0).unwrap();
        let expected = Poly::from_terms([((0, 2), r(1, 1)), ((1, 0), r(-1, 1))]);
        assert_eq!(strict, expected);
    }

    #[test]
    fn non_divisible_is_reported() {
        let err = cusp().divide_by_monomial(3, 0).unwrap_err();
        assert_eq!(err.code(), "NON_DIVISIBLE");
    }

    #[test]
    fn degrees_and_parts() {
        let f = &cusp() + &Poly::term(r(2, 3), 2, 1);
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(f.degree_in_y(), Some(2));
        assert_eq!(f.homogeneous_part(2), Poly::y().pow(2));
        assert_eq!(
            f.partial_y(),
            &Poly::term(r(2, 1), 0, 1) + &Poly::term(r(2, 3), 2, 0)
        );
        assert_eq!(f.eval(&r(1, 1), &r(1, 1)), r(2, 3));
    }

    #[test]
    fn exact_division() {
        let a = &cusp() + &Poly::term(r(1, 2), 1, 1);
        let b = &Poly::x() - &Poly::term(r(3, 1), 0, 2);
        assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        assert_eq!((&a * &b).exact_div(&a), Some(b.clone()));
        assert_eq!(a.exact_div(&b), None);
        assert_eq!(Poly::zero().exact_div(&b), Some(Poly::zero()));
        assert_eq!(a.exact_div(&Poly::zero()), None);
    }

    #[test]
    fn y_coefficient_roundtrip() {
        let f = &cusp() + &Poly::term(r(5, 1), 2, 1);
        let cs = f.y_coefficients();
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_y_coefficients(&cs), f);
    }

    #[test]
    fn display_form() {
        assert_eq!(cusp().to_string(), "y^2 - x^3");
        let p = &Poly::term(r(1, 2), 1, 1) + &Poly::y();
        assert_eq!(p.to_string(), "y + (1/2)*x*y");
        assert_eq!(Poly::term(r(-3, 1), 0, 0).to_string(), "-3");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
