//! Multivector fields in coordinates and the Schouten–Nijenhuis bracket.
//!
//! A degree-k field is stored as its coefficients on sorted blades
//! `∂_{i1}∧…∧∂_{ik}`, i1 < … < ik, so a bivector `½Λ^{μν}∂_μ∧∂_ν` has
//! coefficient Λ^{μν} on `∂_μ∧∂_ν` for μ < ν. The bracket is computed in the
//! odd-variable picture, ∂_μ ↦ ξ_μ.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::symexpr::Expr;
use crate::ExprMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    pub dim: usize,
    pub degree: usize,
    /// Nonzero coefficients keyed by 0-based sorted blades.
    coeffs: BTreeMap<Vec<usize>, Expr>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

impl Multivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Multivector { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn function(dim: usize, f: Expr) -> Self {
        let mut m = Multivector::zero(dim, 0);
        m.add_to(&[], f);
        m
    }

    pub fn vector(components: &[Expr]) -> Self {
        let mut m = Multivector::zero(components.len(), 1);
        for (i, c) in components.iter().enumerate() {
            m.add_to(&[i], c.clone());
        }
        m
    }

    /// From an antisymmetric matrix Λ^{μν}; only the upper triangle is read.
    pub fn bivector(lambda: &ExprMatrix) -> Self {
        let n = lambda.rows();
        let mut m = Multivector::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                m.add_to(&[i, j], lambda[(i, j)].clone());
            }
        }
        m
    }

    /// Add `value` to the component with indices `idx` in any order.
    pub fn add_to(&mut self, idx: &[usize], value: Expr) {
        debug_assert_eq!(idx.len(), self.degree);
        let Some((key, odd)) = sort_sign(idx) else { return };
        let value = if odd { -value } else { value };
        let slot = self.coeffs.entry(key).or_insert_with(Expr::zero);
        *slot = &*slot + value;
        self.coeffs.retain(|_, v| !v.is_structurally_zero());
    }

    /// Fully antisymmetric component, any index order.
    pub fn component(&self, idx: &[usize]) -> Expr {
        match sort_sign(idx) {
            None => Expr::zero(),
            Some((key, odd)) => {
                let v = self.coeffs.get(&key).cloned().unwrap_or_else(Expr::zero);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Nonzero blade coefficients, blades 0-based and sorted.
    pub fn blades(&self) -> impl Iterator<Item = (&Vec<usize>, &Expr)> {
        self.coeffs.iter()
    }

    /// Coefficient on every sorted blade of the degree, zeros included.
    pub fn all_blades(&self) -> Vec<(Vec<usize>, Expr)> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut keys = Vec::new();
        rec(0, self.dim, self.degree, &mut Vec::new(), &mut keys);
        keys.into_iter().map(|k| (k.clone(), self.component(&k))).collect()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn map(&self, f: impl Fn(&Expr) -> Expr) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.add_to(k, f(v));
        }
        out
    }

    pub fn scale(&self, s: &Expr) -> Multivector {
        self.map(|v| s * v)
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_to(k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(&Expr::int(-1)))
    }

    fn compatible(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "degree {} in dimension {} against degree {} in dimension {}",
                self.degree, self.dim, other.degree, other.dim
            )));
        }
        Ok(())
    }

    /// Exterior product in the odd variables.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("dimensions {} and {}", self.dim, other.dim)));
        }
        let mut out = Multivector::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_to(&idx, x * y);
            }
        }
        Ok(out)
    }

    /// ∂/∂x_{mu+1} of every coefficient.
    fn dx(&self, mu: usize) -> Multivector {
        self.map(|v| v.dx(mu + 1))
    }

    /// Derivative in ξ_mu from the left (`right = false`) or the right.
    fn dxi(&self, mu: usize, right: bool) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.degree.saturating_sub(1));
        for (k, v) in &self.coeffs {
            if let Some(pos) = k.iter().position(|&i| i == mu) {
                let moves = if right { k.len() - 1 - pos } else { pos };
                let rest: Vec<usize> = k.iter().copied().filter(|&i| i != mu).collect();
                out.add_to(&rest, if moves % 2 == 1 { -v } else { v.clone() });
            }
        }
        out
    }

    pub fn terms_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, v)| {
                if k.is_empty() {
                    return v.to_string();
                }
                let blade: Vec<String> = k.iter().map(|i| format!("d{}", i + 1)).collect();
                format!("({v}) {}", blade.join("^"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.terms_string())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > 3 {
        return Err(Error::DimensionUnsupported(dim));
    }
    Ok(())
}

/// Schouten–Nijenhuis bracket of a degree-p and a degree-q field, degree
/// p+q-1. On vector fields it is the Lie bracket, `[[E, P]]` is the Lie
/// derivative of P along E, and the sign on bivectors gives
/// `[[Λ, Λ]] = 2 ∂1^∂2^∂3` for `Λ = x3 ∂1^∂3 + ∂2^∂3`.
pub fn schouten(p: &Multivector, q: &Multivector) -> Result<Multivector> {
    if p.dim != q.dim {
        return Err(Error::Dimension(format!("dimensions {} and {}", p.dim, q.dim)));
    }
    let degree = (p.degree + q.degree).saturating_sub(1);
    let mut out = Multivector::zero(p.dim, degree);
    if p.degree + q.degree == 0 {
        return Ok(out);
    }
    for mu in 0..p.dim {
        if p.degree > 0 {
            out = out.add(&p.dxi(mu, true).wedge(&q.dx(mu))?)?;
        }
        if q.degree > 0 {
            out = out.sub(&p.dx(mu).wedge(&q.dxi(mu, false))?)?;
        }
    }
    if p.degree % 2 == 0 {
        out = out.scale(&Expr::int(-1));
    }
    Ok(out)
}

/// `[[Λ, Λ]]` for a bivector.
pub fn schouten_ll(lambda: &Multivector) -> Result<Multivector> {
    check_dim(lambda.dim)?;
    if lambda.degree != 2 {
        return Err(Error::Invalid(format!("expected a bivector, found degree {}", lambda.degree)));
    }
    schouten(lambda, lambda)
}

/// `[[E, Λ]]`, the Lie derivative of Λ along E.
pub fn schouten_el(e: &Multivector, lambda: &Multivector) -> Result<Multivector> {
    if e.degree != 1 || lambda.degree != 2 {
        return Err(Error::Invalid("expected a vector field and a bivector".into()));
    }
    schouten(e, lambda)
}

/// `E ∧ Λ`, coefficient `E^1Λ^{23} + E^2Λ^{31} + E^3Λ^{12}` on ∂1^∂2^∂3.
pub fn wedge(e: &Multivector, lambda: &Multivector) -> Result<Multivector> {
    check_dim(e.dim)?;
    if e.degree != 1 || lambda.degree != 2 {
        return Err(Error::Invalid("expected a vector field and a bivector".into()));
    }
    e.wedge(lambda)
}
