//! Exhaustive search over small rational grids, matched back to the tables.

use rayon::prelude::*;
use serde::Serialize;

use super::search::find_solution;
use super::{bivector_residual_with, reeb_residual_with, Relation, RowKind, SolutionFamily};
use crate::error::Result;
use crate::liealg::LieAlgebra;
use crate::symexpr::ratfun::{to_ratfun, AtomTable};
use crate::symexpr::{Expr, Symbol};
use crate::{Matrix, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct GridSolution {
    /// Upper-triangular bivector entries in the order 12, 13, 23.
    pub lambda: Vec<String>,
    pub reeb: Vec<String>,
    /// Table families containing this point.
    pub families: Vec<String>,
    /// Reached only in the closure of a family, where one of its
    /// denominators vanishes.
    pub closure_only: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub algebra: String,
    pub grid: Vec<String>,
    pub candidates: usize,
    pub solutions: Vec<GridSolution>,
}

impl GridReport {
    pub fn unmatched(&self) -> impl Iterator<Item = &GridSolution> {
        self.solutions.iter().filter(|s| s.families.is_empty())
    }
}

fn digits(mut k: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(k % base);
        k /= base;
    }
    out.reverse();
    out
}

/// Does the point lie on the family? `strict` also enforces the family's
/// denominators and inferred conditions.
fn member(fam: &SolutionFamily, upper: &[Rational], reeb: &[Rational], strict: bool) -> Result<bool> {
    let j = &fam.structure;
    let unknowns: Vec<Symbol> = fam.params.clone();
    let mut eqs = Vec::new();
    let mut nonzero = Vec::new();
    let targets = j.upper_entries().into_iter().map(|(_, _, e)| e.clone()).zip(upper).chain(j.reeb.iter().cloned().zip(reeb));
    for (e, q) in targets {
        let mut t = AtomTable::closed(&unknowns);
        let r = to_ratfun(&(e - Expr::rational(q.clone())), &mut t)?;
        eqs.push(r.num.to_expr(t.atoms()));
        if strict && !r.den.is_constant() {
            nonzero.push(r.den.to_expr(t.atoms()));
        }
    }
    for c in &j.conditions {
        match c.relation {
            Relation::NonZero if strict || !c.inferred => nonzero.push(c.expr.clone()),
            Relation::Zero => eqs.push(c.expr.clone()),
            _ => {}
        }
    }
    eqs.retain(|e| !e.is_structurally_zero());
    Ok(find_solution(&eqs, &unknowns, &nonzero, 200)?.solution.is_some())
}

/// All `(Λ, E)` with entries from `grid` that solve the Jacobi equations of
/// the concrete algebra `l`, each tested against the family rows given.
pub fn grid_enumerate(l: &LieAlgebra, grid: &[Rational], rows: &[SolutionFamily]) -> Result<GridReport> {
    let c: Vec<Rational> = l.rational_constants()?.into_iter().map(|q| -q).collect();
    let n = l.dim;
    let k = n * (n - 1) / 2;
    let slots = k + n;
    let total = grid.len().pow(slots as u32);
    let families: Vec<&SolutionFamily> = rows.iter().filter(|r| r.algebra == l.name && r.kind == RowKind::Family).collect();
    let hits: Vec<(Vec<Rational>, Vec<Rational>)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let pick: Vec<Rational> = digits(idx, grid.len(), slots).into_iter().map(|d| grid[d].clone()).collect();
            let mut lam = Matrix::zeros(n, n);
            let mut p = 0;
            for i in 0..n {
                for j in i + 1..n {
                    lam[(i, j)] = pick[p].clone();
                    lam[(j, i)] = -pick[p].clone();
                    p += 1;
                }
            }
            let reeb = &pick[k..];
            let zero = Rational::from_integer(0.into());
            let ok = bivector_residual_with(&c, &lam, reeb).iter().all(|x| *x == zero)
                && reeb_residual_with(&c, &lam, reeb).iter().all(|x| *x == zero);
            ok.then(|| (pick[..k].to_vec(), reeb.to_vec()))
        })
        .collect();
    let solutions: Vec<GridSolution> = hits
        .par_iter()
        .map(|(upper, reeb)| -> Result<GridSolution> {
            let mut strict = Vec::new();
            for f in &families {
                if member(f, upper, reeb, true)? {
                    strict.push(f.id.clone());
                }
            }
            let mut closure_only = false;
            if strict.is_empty() {
                for f in &families {
                    if member(f, upper, reeb, false)? {
                        strict.push(f.id.clone());
                        closure_only = true;
                    }
                }
            }
            Ok(GridSolution {
                lambda: upper.iter().map(|q| q.to_string()).collect(),
                reeb: reeb.iter().map(|q| q.to_string()).collect(),
                families: strict,
                closure_only,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GridReport {
        algebra: l.name.clone(),
        grid: grid.iter().map(|q| q.to_string()).collect(),
        candidates: total,
        solutions,
    })
}
