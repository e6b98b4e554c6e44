use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::{adjoint, LieAlgebra};
use crate::data;
use crate::error::{Error, Result};
use crate::report::CheckRecord;
use crate::symexpr::{subst, Expr, Symbol, ZeroTester};
use crate::{ExprMatrix, Matrix, Rational, RationalMatrix};

/// One parametric piece of an automorphism group.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub matrix: ExprMatrix,
    /// Expressions that must not vanish (the determinant among them).
    pub nonvanishing: Vec<Expr>,
    /// Free parameters `a_ij`, sorted.
    pub params: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    /// Every invertible matrix.
    General,
    /// Listed parametric branches.
    Branches,
    /// Only the defining bracket condition is known; the string names the group.
    Constraint(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismFamily {
    pub algebra: String,
    pub kind: FamilyKind,
    branches: Vec<Branch>,
}

impl Branch {
    fn new(matrix: ExprMatrix, mut nonvanishing: Vec<Expr>) -> Branch {
        let mut params: Vec<Symbol> = matrix.entries().flat_map(|e| e.free_symbols()).collect();
        params.sort();
        params.dedup();
        let det = matrix.det();
        if !nonvanishing.contains(&det) {
            nonvanishing.push(det);
        }
        Branch { matrix, nonvanishing, params }
    }

    /// Matrix of symbols `a_ij` over all entries.
    pub fn generic(dim: usize) -> Branch {
        Branch::new(Matrix::from_fn(dim, dim, |i, j| Expr::sym(&format!("a{}{}", i + 1, j + 1))), vec![])
    }

    pub fn instantiate(&self, values: &BTreeMap<Symbol, Expr>) -> ExprMatrix {
        self.matrix.map(|e| subst(e, values))
    }

    /// Random admissible instance with small rational entries.
    pub fn random_instance(&self, tester: &mut ZeroTester) -> RationalMatrix {
        loop {
            let values: BTreeMap<Symbol, Expr> = self
                .params
                .iter()
                .map(|p| {
                    let n: i64 = tester.rng().gen_range(-4..=4);
                    let d: i64 = tester.rng().gen_range(1..=3);
                    (p.clone(), Expr::frac(n, d))
                })
                .collect();
            if self.nonvanishing.iter().any(|c| subst(c, &values).is_structurally_zero()) {
                continue;
            }
            let m = self.instantiate(&values);
            if let Some(r) = to_rational(&m) {
                return r;
            }
        }
    }
}

fn to_rational(m: &ExprMatrix) -> Option<RationalMatrix> {
    let rows: Option<Vec<Vec<Rational>>> =
        m.to_rows().iter().map(|r| r.iter().map(|e| e.as_const().cloned()).collect()).collect();
    rows.map(Matrix::from_rows)
}

impl AutomorphismFamily {
    /// Parametric branches. Constraint-only groups have none.
    pub fn branches(&self) -> Result<&[Branch]> {
        match &self.kind {
            FamilyKind::Constraint(g) => Err(Error::UnsupportedAlgebra(
                self.algebra.clone(),
                format!("automorphism group {g} has no parametric form"),
            )),
            _ => Ok(&self.branches),
        }
    }

    /// Random group element. Constraint groups use a Cayley transform of a
    /// Killing-skew matrix, checked against the bracket condition.
    pub fn random_instance(&self, l: &LieAlgebra, tester: &mut ZeroTester) -> Result<RationalMatrix> {
        match &self.kind {
            FamilyKind::Constraint(_) => cayley_instance(l, tester),
            _ => {
                let k = tester.rng().gen_range(0..self.branches.len());
                Ok(self.branches[k].random_instance(tester))
            }
        }
    }
}

fn killing(l: &LieAlgebra) -> Result<RationalMatrix> {
    let f = l.rational_constants()?;
    let n = l.dim;
    let at = |a: usize, b: usize, c: usize| &f[(a * n + b) * n + c];
    Ok(Matrix::from_fn(n, n, |a, b| {
        let mut s = Rational::zero();
        for c in 0..n {
            for d in 0..n {
                s += at(a, c, d) * at(b, d, c);
            }
        }
        s
    }))
}

/// A with `A K Aᵗ = K` from B = (I - M)(I + M)⁻¹, M = K⁻¹S, A = Bᵗ.
pub(crate) fn cayley_instance(l: &LieAlgebra, tester: &mut ZeroTester) -> Result<RationalMatrix> {
    let n = l.dim;
    let k = killing(l)?;
    let kinv = k
        .inverse()
        .ok_or_else(|| Error::UnsupportedAlgebra(l.name.clone(), "degenerate Killing form".into()))?;
    let id = Matrix::<Rational>::identity(n);
    for _ in 0..1000 {
        let mut s = Matrix::<Rational>::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let p: i64 = tester.rng().gen_range(-3..=3);
                let q: i64 = tester.rng().gen_range(1..=3);
                let v = Rational::new(BigInt::from(p), BigInt::from(q));
                s[(i, j)] = v.clone();
                s[(j, i)] = -v;
            }
        }
        let m = kinv.mul(&s);
        let Some(inv) = id.add(&m).inverse() else { continue };
        let a = id.sub(&m).mul(&inv).transpose();
        if is_automorphism(l, &a.to_expr(), tester) {
            return Ok(a);
        }
    }
    Err(Error::UnsupportedAlgebra(l.name.clone(), "no automorphism found by random search".into()))
}

fn parse_family(rec: &data::Record, dim: usize) -> Result<(FamilyKind, Option<Branch>)> {
    match rec.field(1) {
        "general" => Ok((FamilyKind::General, Some(Branch::generic(dim)))),
        "constraint" => Ok((FamilyKind::Constraint(rec.field(2).to_string()), None)),
        "branch" => {
            let rows = rec.matrix(rec.field(2))?;
            if rows.len() != dim {
                return Err(rec.error("matrix size does not match the algebra"));
            }
            let nonvanishing = rec
                .field(3)
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| rec.expr(s))
                .collect::<Result<Vec<_>>>()?;
            Ok((FamilyKind::Branches, Some(Branch::new(Matrix::from_rows(rows), nonvanishing))))
        }
        k => Err(rec.error(format!("unknown family kind `{k}`"))),
    }
}

pub fn automorphism_family(l: &LieAlgebra) -> Result<AutomorphismFamily> {
    let mut kind = None;
    let mut branches = Vec::new();
    for rec in data::load_records(data::AUTOMORPHISMS, "automorphisms", 3)? {
        if rec.field(0) != l.name {
            continue;
        }
        let (k, b) = parse_family(&rec, l.dim)?;
        if kind.as_ref().is_some_and(|prev| *prev != k) {
            return Err(rec.error("mixed family kinds for one algebra"));
        }
        kind = Some(k);
        branches.extend(b);
    }
    let kind = kind.ok_or_else(|| Error::UnknownAlgebra(l.name.clone()))?;
    Ok(AutomorphismFamily { algebra: l.name.clone(), kind, branches })
}

/// Components `A_a^k f_kl^m A_b^l - f_ab^c A_c^m`, indexed `[a][b][m]`.
pub fn automorphism_defect(l: &LieAlgebra, a: &ExprMatrix) -> Vec<Expr> {
    let n = l.dim;
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut lhs = Vec::new();
                for k in 0..n {
                    for q in 0..n {
                        if !l.f(k, q, m).is_structurally_zero() {
                            lhs.push(&a[(i, k)] * l.f(k, q, m) * &a[(j, q)]);
                        }
                    }
                }
                let rhs: Expr = (0..n).map(|c| l.f(i, j, c) * &a[(c, m)]).sum();
                out.push(Expr::sum(lhs) - rhs);
            }
        }
    }
    out
}

/// Bracket preservation plus a determinant that is not identically zero.
pub fn is_automorphism(l: &LieAlgebra, a: &ExprMatrix, tester: &mut ZeroTester) -> bool {
    if a.rows() != l.dim || a.cols() != l.dim {
        return false;
    }
    automorphism_defect(l, a).iter().all(|e| tester.test(e).is_zero()) && !tester.test(&a.det()).is_zero()
}

/// The two matrix forms of the automorphism condition, written with the
/// adjoint matrices.
pub fn matrix_identities_check(l: &LieAlgebra, a: &ExprMatrix, tester: &mut ZeroTester) -> Vec<CheckRecord> {
    let n = l.dim;
    let ad = adjoint(l);
    let at = a.transpose();
    let mut first = Vec::new();
    for m in 0..n {
        let lhs = a.mul(&ad.y[m]).mul(&at);
        let rhs = (0..n).fold(Matrix::zeros(n, n), |acc: ExprMatrix, c| acc.add(&ad.y[c].scale(&a[(c, m)])));
        let d = lhs.sub(&rhs);
        for i in 0..n {
            for j in 0..n {
                first.push((format!("m={} ({},{})", m + 1, i + 1, j + 1), d[(i, j)].clone()));
            }
        }
    }
    let mut second = Vec::new();
    for b in 0..n {
        let lhs = (0..n).fold(Matrix::zeros(n, n), |acc: ExprMatrix, q| acc.add(&a.mul(&ad.chi[q]).scale(&a[(b, q)])));
        let d = lhs.sub(&ad.chi[b].mul(a));
        for i in 0..n {
            for j in 0..n {
                second.push((format!("b={} ({},{})", b + 1, i + 1, j + 1), d[(i, j)].clone()));
            }
        }
    }
    vec![
        CheckRecord::all_zero("A Y^m At = Y^c A_c^m", first.iter().map(|(k, e)| (k.clone(), e)), tester),
        CheckRecord::all_zero("A chi_l A_b^l = chi_b A", second.iter().map(|(k, e)| (k.clone(), e)), tester),
    ]
}
