//! Hamiltonian vector fields and Jacobi brackets of a structure in
//! coordinates, closure of Vessiot–Guldberg algebras, and the six worked
//! Jacobi–Lie systems.

mod examples;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

pub use examples::{example_spec, example_specs, verify_example, ExampleReport, ExampleSpec, FieldReport, Relation, SecondClass};

use crate::error::{Error, EvalError, Result};
use crate::group_geom::GroupJacobiStructure;
use crate::liealg::{catalog, LieAlgebra};
use crate::report::{CheckRecord, Verdict};
use crate::scalar::{HpFloat, Scalar};
use crate::symexpr::{eval_with, Expr, Symbol, ZeroTester};
use crate::Rational;

/// Components `X^1, ..., X^n` on `∂_1, ..., ∂_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField(pub Vec<Expr>);

impl VectorField {
    pub fn zero(dim: usize) -> Self {
        VectorField(vec![Expr::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `X(f) = X^μ ∂_μ f`.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.0.iter().enumerate().map(|(mu, c)| c * f.dx(mu + 1)).sum()
    }

    pub fn scale(&self, s: &Expr) -> VectorField {
        VectorField(self.0.iter().map(|c| s * c).collect())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn free_symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.0.iter().flat_map(|c| c.free_symbols()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn component_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_structurally_zero())
            .map(|(i, c)| format!("({c}) d{}", i + 1))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Serialize for VectorField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.component_strings().serialize(s)
    }
}

/// `X_f^μ = Λ^{νμ} ∂_ν f + f E^μ`.
pub fn hamiltonian_vf(jg: &GroupJacobiStructure, f: &Expr) -> VectorField {
    let n = jg.dim();
    let df: Vec<Expr> = (0..n).map(|nu| f.dx(nu + 1)).collect();
    VectorField(
        (0..n)
            .map(|mu| {
                let s: Expr = (0..n).map(|nu| &jg.lambda[(nu, mu)] * &df[nu]).sum();
                s + f * &jg.reeb[mu]
            })
            .collect(),
    )
}

/// `{f, g} = Λ^{μν} ∂_μ f ∂_ν g + f E(g) - g E(f)`.
pub fn jacobi_bracket(jg: &GroupJacobiStructure, f: &Expr, g: &Expr) -> Expr {
    let n = jg.dim();
    let df: Vec<Expr> = (0..n).map(|m| f.dx(m + 1)).collect();
    let dg: Vec<Expr> = (0..n).map(|m| g.dx(m + 1)).collect();
    let mut terms = Vec::new();
    for m in 0..n {
        for v in 0..n {
            terms.push(&jg.lambda[(m, v)] * &df[m] * &dg[v]);
        }
        terms.push(f * &jg.reeb[m] * &dg[m]);
        terms.push(-(g * &jg.reeb[m] * &df[m]));
    }
    Expr::sum(terms)
}

/// Lie bracket `[X, Y]^μ = X^ν ∂_ν Y^μ - Y^ν ∂_ν X^μ`.
pub fn commutator(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.dim() != y.dim() {
        return Err(Error::Dimension(format!("vector fields of dimension {} and {}", x.dim(), y.dim())));
    }
    Ok(VectorField(y.0.iter().zip(&x.0).map(|(ym, xm)| x.apply(ym) - y.apply(xm)).collect()))
}

/// First candidate whose Hamiltonian field equals `x`.
pub fn hamiltonian_of(jg: &GroupJacobiStructure, x: &VectorField, candidates: &[Expr], tester: &mut ZeroTester) -> Option<Expr> {
    candidates.iter().find(|f| fields_equal(&hamiltonian_vf(jg, f), x, tester)).cloned()
}

fn fields_equal(a: &VectorField, b: &VectorField, tester: &mut ZeroTester) -> bool {
    a.dim() == b.dim() && a.sub(b).0.iter().all(|c| tester.test(c).is_zero())
}

/// Draw a point for `syms` at which every expression evaluates to a finite
/// value, rejecting points outside the domain.
fn sample_values(syms: &[Symbol], exprs: &[&Expr], tester: &mut ZeroTester) -> Option<(BTreeMap<Symbol, Rational>, Vec<f64>)> {
    for _ in 0..tester.max_rejections {
        let at: BTreeMap<Symbol, Rational> = syms
            .iter()
            .map(|s| {
                let p: i64 = tester.rng().gen_range(-20..=20);
                let q: i64 = tester.rng().gen_range(1..=8);
                (s.clone(), Rational::new(p.into(), q.into()))
            })
            .collect();
        let look = |s: &Symbol| at.get(s).map(HpFloat::from_rational);
        let vals: std::result::Result<Vec<f64>, EvalError> =
            exprs.iter().map(|e| eval_with::<HpFloat>(e, &look).map(|v| v.to_f64())).collect();
        match vals {
            Ok(v) if v.iter().all(|x| x.is_finite()) => return Some((at, v)),
            _ => continue,
        }
    }
    None
}

fn symbols_of(fields: &[&VectorField]) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = fields.iter().flat_map(|x| x.free_symbols()).collect();
    out.sort();
    out.dedup();
    out
}

/// Rows `[X_1(p), ..., X_r(p) | target(p)]` over sample points, one row per
/// point and component.
fn sample_system(gens: &[VectorField], target: Option<&VectorField>, tester: &mut ZeroTester) -> Result<Vec<Vec<f64>>> {
    let mut all: Vec<&VectorField> = gens.iter().collect();
    all.extend(target);
    let syms = symbols_of(&all);
    let exprs: Vec<&Expr> = all.iter().flat_map(|x| x.0.iter()).collect();
    let n = gens.first().map_or(0, VectorField::dim);
    let points = gens.len() + 4;
    let mut rows = Vec::new();
    for _ in 0..points {
        let (_, v) = sample_values(&syms, &exprs, tester)
            .ok_or_else(|| Error::Invalid("no sample point inside the domain of the fields".into()))?;
        for mu in 0..n {
            rows.push(all.iter().enumerate().map(|(k, _)| v[k * n + mu]).collect());
        }
    }
    Ok(rows)
}

/// Row-reduce in place with partial pivoting; returns the pivot columns
/// among the first `cols`.
fn row_reduce(m: &mut [Vec<f64>], cols: usize) -> Vec<usize> {
    let scale = m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    let tol = 1e-9 * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else { break };
        if m[p][c].abs() <= tol {
            continue;
        }
        m.swap(r, p);
        let pivot = m[r][c];
        for x in m[r].iter_mut() {
            *x /= pivot;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0.0 {
                let k = m[i][c];
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(row) {
                    *x -= k * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Linear independence over the constants, by rank at random points.
pub fn independent(gens: &[VectorField], tester: &mut ZeroTester) -> Result<bool> {
    if gens.is_empty() {
        return Ok(true);
    }
    let mut m = sample_system(gens, None, tester)?;
    Ok(row_reduce(&mut m, gens.len()).len() == gens.len())
}

/// Closest fraction with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0).then(|| Rational::new(h1.into(), k1.into()))
}

/// Constant coefficients of `target` in the span of `gens`, certified by an
/// exact or numeric zero test of the remainder.
pub fn span_coefficients(gens: &[VectorField], target: &VectorField, tester: &mut ZeroTester) -> Result<Option<Vec<Rational>>> {
    let r = gens.len();
    let mut m = sample_system(gens, Some(target), tester)?;
    let pivots = row_reduce(&mut m, r);
    if pivots.len() < r {
        return Err(Error::DependentGenerators(format!("rank {} of {r}", pivots.len())));
    }
    let scale = m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    if m.iter().skip(r).any(|row| row[r].abs() > 1e-7 * scale) {
        return Ok(None);
    }
    let mut coeffs = Vec::with_capacity(r);
    for row in m.iter().take(r) {
        match rationalize(row[r], 1000) {
            Some(q) => coeffs.push(q),
            None => return Ok(None),
        }
    }
    let combo = gens.iter().zip(&coeffs).fold(VectorField::zero(target.dim()), |acc, (x, c)| acc.add(&x.scale(&Expr::rational(c.clone()))));
    Ok(fields_equal(target, &combo, tester).then_some(coeffs))
}

/// One entry `[X_i, X_j] = Σ c_k X_k` of the commutator table, 0-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Commutator {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|q| q.to_string()).collect::<Vec<_>>().serialize(s)
}

impl fmt::Display for Commutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Expr = self.coeffs.iter().enumerate().map(|(k, c)| Expr::rational(c.clone()) * Expr::sym(&format!("X{}", k + 1))).sum();
        write!(f, "[X{}, X{}] = {}", self.i + 1, self.j + 1, rhs)
    }
}

/// Vessiot–Guldberg closure of a list of vector fields.
#[derive(Clone, Debug, Serialize)]
pub struct LieSystemReport {
    pub generators: Vec<VectorField>,
    /// Every pair i < j, zero brackets included; empty when not closed.
    pub table: Vec<Commutator>,
    pub closed: bool,
    /// Pairs whose bracket left the span.
    pub outside_span: Vec<String>,
    /// Catalog algebra with the same constants in some basis `±X_σ(i)`.
    pub matched: Option<String>,
    pub basis: Option<Vec<String>>,
}

impl LieSystemReport {
    pub fn nonzero(&self) -> impl Iterator<Item = &Commutator> {
        self.table.iter().filter(|c| c.coeffs.iter().any(|q| !q.is_zero()))
    }

    /// Coefficients of `[X_i, X_j]`, 0-based, i < j.
    pub fn bracket(&self, i: usize, j: usize) -> Option<&[Rational]> {
        self.table.iter().find(|c| c.i == i && c.j == j).map(|c| c.coeffs.as_slice())
    }
}

impl fmt::Display for LieSystemReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.closed {
            return write!(f, "not closed: {}", self.outside_span.join("; "));
        }
        let lines: Vec<String> = self.nonzero().map(|c| c.to_string()).collect();
        write!(f, "closed")?;
        if lines.is_empty() {
            write!(f, ", abelian")?;
        } else {
            write!(f, ", {}", lines.join(", "))?;
        }
        match (&self.matched, &self.basis) {
            (Some(m), Some(b)) => write!(f, "; matches {m} with basis {}", b.join(", ")),
            _ => write!(f, "; no catalog match"),
        }
    }
}

/// Pairwise commutators of `gens`, expressed in their span.
pub fn closure_check(gens: &[VectorField], tester: &mut ZeroTester) -> Result<LieSystemReport> {
    if let Some(x) = gens.iter().find(|x| x.dim() != gens[0].dim()) {
        return Err(Error::Dimension(format!("generator of dimension {}", x.dim())));
    }
    if !independent(gens, tester)? {
        return Err(Error::DependentGenerators(format!("{} fields", gens.len())));
    }
    let r = gens.len();
    let mut table = Vec::new();
    let mut outside = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let c = commutator(&gens[i], &gens[j])?;
            if c.0.iter().all(|x| tester.test(x).is_zero()) {
                table.push(Commutator { i, j, coeffs: vec![Rational::zero(); r] });
                continue;
            }
            match span_coefficients(gens, &c, tester)? {
                Some(coeffs) => table.push(Commutator { i, j, coeffs }),
                None => outside.push(format!("[X{}, X{}] = {c}", i + 1, j + 1)),
            }
        }
    }
    let closed = outside.is_empty();
    let (matched, basis) = if closed {
        match match_catalog(r, &table)? {
            Some((name, basis)) => (Some(name), Some(basis)),
            None => (None, None),
        }
    } else {
        table.clear();
        (None, None)
    };
    Ok(LieSystemReport { generators: gens.to_vec(), table, closed, outside_span: outside, matched, basis })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Search concrete catalog algebras for one whose constants agree with the
/// table in a basis `Y_i = s_i X_σ(i)`, `s_i = ±1`.
fn match_catalog(r: usize, table: &[Commutator]) -> Result<Option<(String, Vec<String>)>> {
    let c = |i: usize, j: usize, k: usize| -> Rational {
        if i == j {
            return Rational::zero();
        }
        let (a, b, s) = if i < j { (i, j, Rational::one()) } else { (j, i, -Rational::one()) };
        table.iter().find(|t| t.i == a && t.j == b).map_or_else(Rational::zero, |t| s * t.coeffs[k].clone())
    };
    let algebras: Vec<LieAlgebra> = catalog()?.into_iter().filter(|l| l.dim == r && l.is_concrete()).collect();
    for l in &algebras {
        let f = l.rational_constants()?;
        for sigma in permutations(r) {
            for signs in 0..(1u32 << r) {
                let s = |i: usize| if signs >> i & 1 == 1 { -Rational::one() } else { Rational::one() };
                let ok = (0..r).all(|i| {
                    (0..r).all(|j| {
                        (0..r).all(|m| s(i) * s(j) * s(m) * c(sigma[i], sigma[j], sigma[m]) == f[(i * r + j) * r + m])
                    })
                });
                if ok {
                    let basis = (0..r)
                        .map(|i| format!("Y{} = {}X{}", i + 1, if s(i).is_negative() { "-" } else { "" }, sigma[i] + 1))
                        .collect();
                    return Ok(Some((l.name.clone(), basis)));
                }
            }
        }
    }
    Ok(None)
}

/// `[X_f, X_g] - X_{f,g}` at random points, relative tolerance `rel`.
/// The morphism property of Jacobi brackets; exact evaluation is used when
/// the fields are transcendental-free.
pub fn morphism_check(
    jg: &GroupJacobiStructure,
    f: &Expr,
    g: &Expr,
    points: usize,
    rel: f64,
    tester: &mut ZeroTester,
) -> Result<CheckRecord> {
    let xf = hamiltonian_vf(jg, f);
    let xg = hamiltonian_vf(jg, g);
    let lhs = commutator(&xf, &xg)?;
    let rhs = hamiltonian_vf(jg, &jacobi_bracket(jg, f, g));
    let name = format!("[X_f, X_g] = X_{{f,g}} for f = {f}, g = {g}");
    let syms = symbols_of(&[&lhs, &rhs]);
    let exprs: Vec<&Expr> = lhs.0.iter().chain(&rhs.0).collect();
    let n = lhs.dim();
    let exact = exprs.iter().all(|e| !e.has_functions());
    for _ in 0..points {
        let Some((at, v)) = sample_values(&syms, &exprs, tester) else {
            return Ok(CheckRecord::fail(name, vec!["no sample point inside the domain".into()]));
        };
        for mu in 0..n {
            if exact {
                let look = |s: &Symbol| at.get(s).cloned();
                let a = eval_with::<Rational>(&lhs.0[mu], &look)?;
                let b = eval_with::<Rational>(&rhs.0[mu], &look)?;
                if a != b {
                    return Ok(CheckRecord::fail(name, vec![format!("component {} differs: {a} vs {b}", mu + 1)]));
                }
            } else {
                let (a, b) = (v[mu], v[n + mu]);
                if (a - b).abs() > rel * a.abs().max(b.abs()).max(1.0) {
                    return Ok(CheckRecord::fail(name, vec![format!("component {} differs: {a:e} vs {b:e}", mu + 1)]));
                }
            }
        }
    }
    Ok(CheckRecord::new(name, if exact { Verdict::Pass } else { Verdict::NumericPass }, vec![]))
}

/// Random polynomial of total degree at most `deg` in x1..xn with small
/// integer coefficients.
pub fn random_polynomial(dim: usize, deg: u32, tester: &mut ZeroTester) -> Expr {
    let mut monomials: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..dim {
        monomials = monomials
            .into_iter()
            .flat_map(|m| {
                let used: u32 = m.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut m = m.clone();
                    m.push(k);
                    m
                })
            })
            .collect();
    }
    monomials
        .into_iter()
        .map(|m| {
            let c: i64 = tester.rng().gen_range(-3..=3);
            let mono: Expr = m.iter().enumerate().map(|(i, &k)| Expr::x(i + 1).pow(k as i64)).product();
            Expr::int(c) * mono
        })
        .sum()
}
