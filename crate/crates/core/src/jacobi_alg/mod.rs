//! Jacobi structures on a Lie algebra: residuals of the algebraic Jacobi
//! equations, the published tables, automorphism transforms, equivalence
//! search and a grid cross-check.

mod equivalence;
mod grid;
mod search;
mod table;

use std::collections::BTreeMap;
use std::fmt;


pub use equivalence::{are_equivalent, rational_witness, EquivalenceOutcome};
pub use grid::{grid_enumerate, GridReport, GridSolution};
pub use search::{find_solution, SearchOutcome};
pub(crate) use table::{parse_components, parse_upper};
pub use table::{table_row, table_rows, table_rows_for, RowKind, SolutionFamily};

use crate::error::{Error, Result};
use crate::liealg::{adjoint, LieAlgebra};
use crate::report::CheckRecord;
use crate::scalar::Ring;
use crate::symexpr::{subst, Expr, Symbol, ZeroTester};
use crate::{ExprMatrix, Matrix, Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    NonZero,
    Zero,
    /// The symbol is explicitly unrestricted.
    Free,
}

/// A table comment such as `lambda12 != lambda13`, stored as `expr rel 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SideCondition {
    pub expr: Expr,
    pub relation: Relation,
    /// Not printed in the source; implied by a denominator.
    pub inferred: bool,
}

impl fmt::Display for SideCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::NonZero => write!(f, "{} != 0", self.expr)?,
            Relation::Zero => write!(f, "{} = 0", self.expr)?,
            Relation::Free => write!(f, "free {}", self.expr)?,
        }
        if self.inferred {
            f.write_str(" (inferred)")?;
        }
        Ok(())
    }
}

/// Constant bivector `Λ^{ab}` and vector `E^a` on the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgJacobiStructure {
    pub lambda: ExprMatrix,
    pub reeb: Vec<Expr>,
    pub conditions: Vec<SideCondition>,
}

impl AlgJacobiStructure {
    pub fn new(lambda: ExprMatrix, reeb: Vec<Expr>) -> Result<Self> {
        let n = reeb.len();
        if lambda.rows() != n || lambda.cols() != n {
            return Err(Error::Dimension(format!("{}x{} bivector with {n} reeb components", lambda.rows(), lambda.cols())));
        }
        if !lambda.is_antisymmetric() {
            return Err(Error::Invalid("bivector matrix is not antisymmetric".into()));
        }
        Ok(AlgJacobiStructure { lambda, reeb, conditions: vec![] })
    }

    /// From upper-triangular entries `(i, j, value)`, 0-based, i < j.
    pub fn from_upper(dim: usize, upper: &[(usize, usize, Expr)], reeb: Vec<Expr>) -> Result<Self> {
        let mut lambda = Matrix::zeros(dim, dim);
        for (i, j, v) in upper {
            if *i >= *j || *j >= dim {
                return Err(Error::Invalid(format!("bad bivector index ({}, {})", i + 1, j + 1)));
            }
            lambda[(*i, *j)] = v.clone();
            lambda[(*j, *i)] = -v;
        }
        AlgJacobiStructure::new(lambda, reeb)
    }

    pub fn zero(dim: usize) -> Self {
        AlgJacobiStructure { lambda: Matrix::zeros(dim, dim), reeb: vec![Expr::zero(); dim], conditions: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.reeb.len()
    }

    /// Free symbols of the entries, sorted.
    pub fn parameters(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.lambda.entries().chain(&self.reeb).flat_map(|e| e.free_symbols()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn substitute(&self, map: &BTreeMap<Symbol, Expr>) -> AlgJacobiStructure {
        AlgJacobiStructure {
            lambda: self.lambda.map(|e| subst(e, map)),
            reeb: self.reeb.iter().map(|e| subst(e, map)).collect(),
            conditions: self
                .conditions
                .iter()
                .map(|c| SideCondition { expr: subst(&c.expr, map), ..c.clone() })
                .collect(),
        }
    }

    /// Exact rational entries, if every entry is a constant.
    pub fn to_rational(&self) -> Option<(RationalMatrix, Vec<Rational>)> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.lambda[(i, j)].as_const()?.clone();
            }
        }
        let e = self.reeb.iter().map(|x| x.as_const().cloned()).collect::<Option<Vec<_>>>()?;
        Some((m, e))
    }

    pub fn upper_entries(&self) -> Vec<(usize, usize, &Expr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, &self.lambda[(i, j)]));
            }
        }
        out
    }

    /// `Lambda = 1*d1^d3 + ...` style text.
    pub fn lambda_string(&self) -> String {
        let terms: Vec<String> = self
            .upper_entries()
            .into_iter()
            .filter(|(_, _, e)| !e.is_structurally_zero())
            .map(|(i, j, e)| format!("({e}) d{}^d{}", i + 1, j + 1))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn reeb_string(&self) -> String {
        let parts: Vec<String> = self.reeb.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for AlgJacobiStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda = {}, E = {}", self.lambda_string(), self.reeb_string())
    }
}

fn check_dims(l: &LieAlgebra, j: &AlgJacobiStructure) -> Result<()> {
    if l.dim != j.dim() {
        return Err(Error::Dimension(format!("algebra {} has dimension {}, structure {}", l.name, l.dim, j.dim())));
    }
    Ok(())
}

/// Bivector residual over any ring, indexed `[f][h][e]`:
///
/// `c_bc^f Λ^{hb}Λ^{ce} + c_bd^e Λ^{hb}Λ^{fd} + c_ba^h Λ^{eb}Λ^{af}
///  + E^f Λ^{eh} + E^e Λ^{hf} + E^h Λ^{fe}`
///
/// with `c` the frame constants.
pub fn bivector_residual_with<T: Ring>(c: &[T], lam: &Matrix<T>, reeb: &[T]) -> Vec<T> {
    let n = reeb.len();
    let cc = |a: usize, b: usize, d: usize| &c[(a * n + b) * n + d];
    // t[x][y][z] = sum_{b,d} c_bd^x Λ^{yb} Λ^{dz}
    let mut t = vec![T::zero(); n * n * n];
    for x in 0..n {
        for b in 0..n {
            for d in 0..n {
                let k = cc(b, d, x);
                if *k == T::zero() {
                    continue;
                }
                for y in 0..n {
                    if lam[(y, b)] == T::zero() {
                        continue;
                    }
                    let ky = k.clone() * lam[(y, b)].clone();
                    for z in 0..n {
                        let i = (x * n + y) * n + z;
                        t[i] = t[i].clone() + ky.clone() * lam[(d, z)].clone();
                    }
                }
            }
        }
    }
    let tt = |x: usize, y: usize, z: usize| t[(x * n + y) * n + z].clone();
    let mut out = Vec::with_capacity(n * n * n);
    for f in 0..n {
        for h in 0..n {
            for e in 0..n {
                // c_bd^e Λ^{hb} Λ^{fd} = -c_bd^e Λ^{hb} Λ^{df}
                out.push(
                    tt(f, h, e) - tt(e, h, f) + tt(h, e, f)
                        + reeb[f].clone() * lam[(e, h)].clone()
                        + reeb[e].clone() * lam[(h, f)].clone()
                        + reeb[h].clone() * lam[(f, e)].clone(),
                );
            }
        }
    }
    out
}

/// Reeb residual over any ring, indexed `[d][e]`:
/// `c_ac^d E^a Λ^{ce} + c_ab^e E^a Λ^{db}`.
pub fn reeb_residual_with<T: Ring>(c: &[T], lam: &Matrix<T>, reeb: &[T]) -> Vec<T> {
    let n = reeb.len();
    let cc = |a: usize, b: usize, d: usize| &c[(a * n + b) * n + d];
    let mut out = Vec::with_capacity(n * n);
    for d in 0..n {
        for e in 0..n {
            let mut s = T::zero();
            for a in 0..n {
                if reeb[a] == T::zero() {
                    continue;
                }
                for b in 0..n {
                    s = s + reeb[a].clone() * (cc(a, b, d).clone() * lam[(b, e)].clone() + cc(a, b, e).clone() * lam[(d, b)].clone());
                }
            }
            out.push(s);
        }
    }
    out
}

pub fn residual_bivector(l: &LieAlgebra, j: &AlgJacobiStructure) -> Result<Vec<Expr>> {
    check_dims(l, j)?;
    Ok(bivector_residual_with(&l.frame_constants(), &j.lambda, &j.reeb))
}

pub fn residual_reeb(l: &LieAlgebra, j: &AlgJacobiStructure) -> Result<Vec<Expr>> {
    check_dims(l, j)?;
    Ok(reeb_residual_with(&l.frame_constants(), &j.lambda, &j.reeb))
}

/// The bivector residual assembled from the adjoint matrices:
/// `Λ^{ce} χ_cᵗ Λ + Λ Y^e Λ + Λ χ_b Λ^{be} - E^e Λ + E ⊗ Λ^{e·} + Λ^{·e} ⊗ E`,
/// entry `(f, h)` of the e-th matrix.
pub fn residual_bivector_matrix(l: &LieAlgebra, j: &AlgJacobiStructure) -> Result<Vec<Expr>> {
    check_dims(l, j)?;
    let n = l.dim;
    let ad = adjoint(l);
    let lam = &j.lambda;
    let mut out = vec![Expr::zero(); n * n * n];
    for e in 0..n {
        let mut m = lam.mul(&ad.y[e]).mul(lam);
        for c in 0..n {
            m = m.add(&ad.chi[c].transpose().mul(lam).scale(&lam[(c, e)]));
            m = m.add(&lam.mul(&ad.chi[c]).scale(&lam[(c, e)]));
        }
        for f in 0..n {
            for h in 0..n {
                out[(f * n + h) * n + e] = &m[(f, h)] - &j.reeb[e] * &lam[(f, h)]
                    + &j.reeb[f] * &lam[(e, h)]
                    + &lam[(f, e)] * &j.reeb[h];
            }
        }
    }
    Ok(out)
}

/// `(Λ χ_a - (Λ χ_a)ᵗ) E^a`, entry `(d, e)`.
pub fn residual_reeb_matrix(l: &LieAlgebra, j: &AlgJacobiStructure) -> Result<Vec<Expr>> {
    check_dims(l, j)?;
    let n = l.dim;
    let ad = adjoint(l);
    let mut m: ExprMatrix = Matrix::zeros(n, n);
    for a in 0..n {
        let p = j.lambda.mul(&ad.chi[a]);
        m = m.add(&p.sub(&p.transpose()).scale(&j.reeb[a]));
    }
    Ok(m.entries().cloned().collect())
}

fn labelled3(n: usize, v: &[Expr]) -> Vec<(String, &Expr)> {
    let mut out = Vec::new();
    for (k, e) in v.iter().enumerate() {
        out.push((format!("({},{},{})", k / (n * n) + 1, (k / n) % n + 1, k % n + 1), e));
    }
    out
}

fn labelled2(n: usize, v: &[Expr]) -> Vec<(String, &Expr)> {
    v.iter().enumerate().map(|(k, e)| (format!("({},{})", k / n + 1, k % n + 1), e)).collect()
}

/// Both residuals symbolically in the free parameters, plus agreement of the
/// tensor and matrix forms.
pub fn verify_structure(l: &LieAlgebra, j: &AlgJacobiStructure, tester: &mut ZeroTester) -> Result<Vec<CheckRecord>> {
    let n = l.dim;
    let rb = residual_bivector(l, j)?;
    let rr = residual_reeb(l, j)?;
    let mb = residual_bivector_matrix(l, j)?;
    let mr = residual_reeb_matrix(l, j)?;
    let db: Vec<Expr> = rb.iter().zip(&mb).map(|(a, b)| a - b).collect();
    let dr: Vec<Expr> = rr.iter().zip(&mr).map(|(a, b)| a - b).collect();
    Ok(vec![
        CheckRecord::all_zero("bivector residual", labelled3(n, &rb), tester),
        CheckRecord::all_zero("reeb residual", labelled2(n, &rr), tester),
        CheckRecord::all_zero("tensor and matrix forms agree", labelled3(n, &db).into_iter().chain(labelled2(n, &dr)), tester),
    ])
}

pub fn verify_family(l: &LieAlgebra, family: &SolutionFamily, tester: &mut ZeroTester) -> Result<Vec<CheckRecord>> {
    let mut recs = verify_structure(l, &family.structure, tester)?;
    for r in &mut recs {
        r.name = format!("{} row {}: {}", family.algebra, family.id, r.name);
    }
    Ok(recs)
}

/// `(Aᵗ Λ A, E A)` over any ring.
pub fn transform_with<T: Ring>(lam: &Matrix<T>, reeb: &[T], a: &Matrix<T>) -> (Matrix<T>, Vec<T>) {
    (a.transpose().mul(lam).mul(a), a.vec_mul(reeb))
}

/// The structure `J` with `Λ = Aᵗ Λ' A`, `E = E' A` for `J' = j`.
pub fn transform(j: &AlgJacobiStructure, a: &ExprMatrix) -> Result<AlgJacobiStructure> {
    let n = j.dim();
    if a.rows() != n || a.cols() != n {
        return Err(Error::Dimension(format!("{}x{} matrix on a {n}-dimensional structure", a.rows(), a.cols())));
    }
    if a.det().is_structurally_zero() {
        return Err(Error::SingularMatrix);
    }
    let (lambda, reeb) = transform_with(&j.lambda, &j.reeb, a);
    Ok(AlgJacobiStructure { lambda, reeb, conditions: vec![] })
}
