//! Sparse multivariate polynomials over the rationals, Gröbner bases and a
//! solver for zero-dimensional systems.

mod groebner;
mod solve;
mod surd;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

pub use groebner::{groebner, reduce};
pub use solve::{solve_determined, Solution, SolveOutcome};
pub use surd::Surd;

use crate::symexpr::Expr;
use crate::Rational;

/// Exponent vector with trailing zeros trimmed. The derived ordering is the
/// lexicographic monomial order with variable 0 largest.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Monomial(v)
    }

    pub fn from_exponents(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.degree(i) + other.degree(i)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= other.degree(i))
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents((0..other.0.len()).map(|i| other.degree(i) - self.degree(i)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.degree(i).max(other.degree(i))).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is `x_i^k` with k > 0, return i.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect();
        if nz.len() == 1 {
            Some(nz[0])
        } else {
            None
        }
    }

    /// Largest variable index with nonzero exponent, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().rposition(|e| *e > 0)
    }

    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|e| *e > 0)
    }
}

/// Polynomial with rational coefficients; terms keyed by lex-ordered monomial.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(q: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), q);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(i), Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading monomial and coefficient under lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, q)| (k.mul(m), q * c)).collect() }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.degree(i)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.degree(i) > 0)
    }

    /// Smallest variable index occurring, if any.
    pub fn min_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::min_var).min()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    /// Evaluate with variable `i` taking value `vals[i]` in a field `K`.
    pub fn eval_in<K>(&self, vals: &dyn Fn(usize) -> K) -> K
    where
        K: Clone + Zero + One + std::ops::Add<Output = K> + std::ops::Mul<Output = K> + From<Rational>,
    {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t: K = K::from(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t * vals(i);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Convert back to an expression, variable `i` rendered as `atoms[i]`.
    pub fn to_expr(&self, atoms: &[Expr]) -> Expr {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut fs = vec![Expr::rational(c.clone())];
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        fs.push(atoms[i].pow(e as i64));
                    }
                }
                Expr::product(fs)
            })
            .collect();
        Expr::sum(terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0);
        let atoms: Vec<Expr> = (0..n).map(|i| Expr::sym(&format!("v{i}"))).collect();
        write!(f, "{}", self.to_expr(&atoms))
    }
}
