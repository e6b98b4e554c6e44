use num_traits::Zero;

use super::search::find_solution;
use super::{transform_with, AlgJacobiStructure};
use crate::error::{Error, Result};
use crate::liealg::{automorphism_family, Branch, FamilyKind, LieAlgebra};
use crate::poly::{Solution, Surd};
use crate::symexpr::{Expr, Symbol, ZeroTester};
use crate::{Matrix, Rational};

/// Result of an equivalence search.
#[derive(Clone, Debug)]
pub struct EquivalenceOutcome {
    /// A with `J1 = transform(J2, A)`, entries in ℚ or one ℚ(√d).
    pub witness: Option<Matrix<Surd>>,
    /// Index of the branch that produced the witness; `None` for the
    /// random search.
    pub branch: Option<usize>,
    /// Branch parameters fixed by hand to reach a zero-dimensional system.
    pub bound: Vec<(Symbol, Rational)>,
    /// No witness exists in any branch, proved by the solver.
    pub certified_absent: bool,
    pub method: String,
}

fn concrete(j: &AlgJacobiStructure, which: &str) -> Result<(Matrix<Rational>, Vec<Rational>)> {
    j.to_rational().ok_or_else(|| {
        let names: Vec<String> = j.parameters().iter().map(|s| s.to_string()).collect();
        Error::UnboundParameter(format!("{which} has free parameters {}", names.join(", ")))
    })
}

fn surd_matrix(m: &Matrix<Rational>) -> Matrix<Surd> {
    m.map(|q| Surd::rational(q.clone()))
}

fn surd_vec(v: &[Rational]) -> Vec<Surd> {
    v.iter().map(|q| Surd::rational(q.clone())).collect()
}

/// Exact check of `J1 = transform(J2, A)` and `det A != 0`.
fn verify_witness(
    j1: &(Matrix<Rational>, Vec<Rational>),
    j2: &(Matrix<Rational>, Vec<Rational>),
    a: &Matrix<Surd>,
) -> bool {
    if a.det().is_zero() {
        return false;
    }
    let (lam, reeb) = transform_with(&surd_matrix(&j2.0), &surd_vec(&j2.1), a);
    lam == surd_matrix(&j1.0) && reeb == surd_vec(&j1.1)
}

fn branch_system(
    l: &LieAlgebra,
    branch: &Branch,
    j1: &(Matrix<Rational>, Vec<Rational>),
    j2: &(Matrix<Rational>, Vec<Rational>),
    constrained: bool,
) -> Vec<Expr> {
    let n = l.dim;
    let a = &branch.matrix;
    let (lam, reeb) = transform_with(&j2.0.to_expr(), &j2.1.iter().map(|q| Expr::rational(q.clone())).collect::<Vec<_>>(), a);
    let mut eqs = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            eqs.push(&lam[(i, k)] - Expr::rational(j1.0[(i, k)].clone()));
        }
    }
    for (e, target) in reeb.iter().zip(&j1.1) {
        eqs.push(e - Expr::rational(target.clone()));
    }
    if constrained {
        eqs.extend(crate::liealg::automorphism_defect(l, a));
    }
    eqs.retain(|e| !e.is_structurally_zero());
    eqs
}

fn instantiate(branch: &Branch, s: &Solution) -> Option<Matrix<Surd>> {
    let n = branch.matrix.rows();
    let mut out = Matrix::from_fn(n, n, |_, _| Surd::zero());
    for i in 0..n {
        for k in 0..n {
            out[(i, k)] = s.eval(&branch.matrix[(i, k)])?;
        }
    }
    Some(out)
}


/// Search the automorphism group of `l` for A with `J1 = transform(J2, A)`.
///
/// Both structures must be concrete. Parametric branches go through the
/// polynomial solver; VIII and IX are searched as the generic matrix
/// constrained by bracket preservation, then by random Cayley samples.
pub fn are_equivalent(
    l: &LieAlgebra,
    j1: &AlgJacobiStructure,
    j2: &AlgJacobiStructure,
    tester: &mut ZeroTester,
) -> Result<EquivalenceOutcome> {
    if !l.is_concrete() {
        return Err(Error::UnboundParameter("a".into()));
    }
    if j1.dim() != l.dim || j2.dim() != l.dim {
        return Err(Error::Dimension(format!("structures do not match algebra {}", l.name)));
    }
    let c1 = concrete(j1, "first structure")?;
    let c2 = concrete(j2, "second structure")?;
    if c1 == c2 {
        return Ok(EquivalenceOutcome {
            witness: Some(surd_matrix(&Matrix::identity(l.dim))),
            branch: Some(0),
            bound: vec![],
            certified_absent: false,
            method: "identity".into(),
        });
    }
    let fam = automorphism_family(l)?;
    let constrained = matches!(fam.kind, FamilyKind::Constraint(_));
    let branches: Vec<Branch> = match fam.branches() {
        Ok(b) => b.to_vec(),
        Err(_) => vec![Branch::generic(l.dim)],
    };
    let mut all_certified = true;
    for (bi, branch) in branches.iter().enumerate() {
        let eqs = branch_system(l, branch, &c1, &c2, constrained);
        let out = find_solution(&eqs, &branch.params, &branch.nonvanishing, 400)?;
        all_certified &= out.certified_empty;
        if let Some(sol) = out.solution {
            let Some(a) = instantiate(branch, &sol) else { continue };
            if verify_witness(&c1, &c2, &a) {
                return Ok(EquivalenceOutcome {
                    witness: Some(a),
                    branch: Some(bi),
                    bound: out.bound,
                    certified_absent: false,
                    method: if out.certified_empty { "solver".into() } else { "solver with bound parameters".into() },
                });
            }
        }
    }
    if constrained {
        // Random elements of the group, each verified exactly.
        for _ in 0..200 {
            let a = fam.random_instance(l, tester)?;
            let a = surd_matrix(&a);
            if verify_witness(&c1, &c2, &a) {
                return Ok(EquivalenceOutcome {
                    witness: Some(a),
                    branch: None,
                    bound: vec![],
                    certified_absent: false,
                    method: "random search".into(),
                });
            }
        }
    }
    Ok(EquivalenceOutcome {
        witness: None,
        branch: None,
        bound: vec![],
        certified_absent: all_certified,
        method: if all_certified { "solver: inconsistent".into() } else { "search exhausted".into() },
    })
}

/// Witness as an expression matrix when every entry is rational.
pub fn rational_witness(a: &Matrix<Surd>) -> Option<Matrix<Expr>> {
    let n = a.rows();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            m[(i, k)] = Expr::rational(a[(i, k)].as_rational()?.clone());
        }
    }
    Some(m)
}
