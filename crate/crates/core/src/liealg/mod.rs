//! Lie algebra catalog of real two- and three-dimensional algebras, adjoint
//! matrices, structure checks and automorphism groups.

mod automorphism;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

pub use automorphism::{
    automorphism_defect, automorphism_family, is_automorphism, matrix_identities_check, AutomorphismFamily, Branch, FamilyKind,
};

use crate::data;
use crate::error::{Error, Result};
use crate::report::CheckRecord;
use crate::symexpr::{subst_one, Expr, Symbol, ZeroTester};
use crate::{ExprMatrix, Matrix, Rational};

/// Structure constants `f_ab^c` with `[X_a, X_b] = f_ab^c X_c`. Indices are
/// 0-based in the API and 1-based in printed output.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    pub name: String,
    pub dim: usize,
    /// Bianchi parameter of VIa and VIIa while it is still symbolic.
    pub param: Option<Symbol>,
    f: Vec<Expr>,
}

impl LieAlgebra {
    /// Build from a full `dim³` array indexed `[a][b][c]`. No validation;
    /// run [`check_structure`] for that.
    pub fn from_constants(name: &str, dim: usize, param: Option<Symbol>, f: Vec<Expr>) -> Result<Self> {
        if f.len() != dim * dim * dim {
            return Err(Error::Dimension(format!("{} structure constants for dimension {dim}", f.len())));
        }
        Ok(LieAlgebra { name: name.into(), dim, param, f })
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> &Expr {
        &self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn set_f(&mut self, a: usize, b: usize, c: usize, v: Expr) {
        let d = self.dim;
        self.f[(a * d + b) * d + c] = v;
    }

    pub fn constants(&self) -> &[Expr] {
        &self.f
    }

    /// Constants of the left-invariant frame on the group, `c = -f`. The
    /// algebraic Jacobi residuals contract with these.
    pub fn frame_constants(&self) -> Vec<Expr> {
        self.f.iter().map(|e| -e).collect()
    }

    pub fn is_concrete(&self) -> bool {
        self.param.is_none()
    }

    /// Bind the Bianchi parameter. VIa needs `a > 0, a != 1`; VIIa `a > 0`.
    pub fn instantiate(&self, value: &Rational) -> Result<LieAlgebra> {
        let Some(p) = &self.param else {
            return Err(Error::Invalid(format!("{} has no parameter", self.name)));
        };
        if *value <= Rational::zero() || (self.name == "VIa" && value.is_one()) {
            return Err(Error::Invalid(format!("parameter value {value} not allowed for {}", self.name)));
        }
        let v = Expr::rational(value.clone());
        Ok(LieAlgebra {
            name: self.name.clone(),
            dim: self.dim,
            param: None,
            f: self.f.iter().map(|e| subst_one(e, p, &v)).collect(),
        })
    }

    /// Constants as exact rationals; fails while `a` is symbolic.
    pub fn rational_constants(&self) -> Result<Vec<Rational>> {
        self.f
            .iter()
            .map(|e| e.as_const().cloned().ok_or_else(|| Error::UnboundParameter("a".into())))
            .collect()
    }

    /// Nonzero brackets as `(a, b, [coefficients])` for a < b.
    pub fn brackets(&self) -> Vec<(usize, usize, Vec<Expr>)> {
        let mut out = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let cs: Vec<Expr> = (0..self.dim).map(|c| self.f(a, b, c).clone()).collect();
                if cs.iter().any(|c| !c.is_structurally_zero()) {
                    out.push((a, b, cs));
                }
            }
        }
        out
    }

    /// `[X1, X2] = -X2 - X3` style lines.
    pub fn bracket_lines(&self) -> Vec<String> {
        self.brackets()
            .into_iter()
            .map(|(a, b, cs)| {
                let rhs: Expr = cs.iter().enumerate().map(|(c, k)| k * Expr::sym(&format!("X{}", c + 1))).sum();
                format!("[X{}, X{}] = {}", a + 1, b + 1, rhs)
            })
            .collect()
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)?;
        if let Some(p) = &self.param {
            write!(f, ", parameter {p}")?;
        }
        let lines = self.bracket_lines();
        if lines.is_empty() {
            write!(f, "\n  abelian")?;
        }
        for l in lines {
            write!(f, "\n  {l}")?;
        }
        Ok(())
    }
}

fn parse_algebra(rec: &data::Record) -> Result<LieAlgebra> {
    let name = rec.field(0);
    let dim: usize = rec.field(1).parse().map_err(|_| rec.error("bad dimension"))?;
    if !(2..=3).contains(&dim) {
        return Err(rec.error("dimension must be 2 or 3"));
    }
    let param = match rec.field(2) {
        "" => None,
        p => Some(Symbol::new(p)),
    };
    let mut f = vec![Expr::zero(); dim * dim * dim];
    for entry in rec.field(3).split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = entry.split_once('=').ok_or_else(|| rec.error(format!("bad bracket `{entry}`")))?;
        let idx: Vec<usize> = lhs
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(',')
            .map(|s| s.trim().parse::<usize>().ok().filter(|&k| (1..=dim).contains(&k)))
            .collect::<Option<_>>()
            .ok_or_else(|| rec.error(format!("bad bracket indices `{lhs}`")))?;
        let [i, j] = idx[..] else {
            return Err(rec.error(format!("bad bracket indices `{lhs}`")));
        };
        let cs: Vec<Expr> = rhs.split(',').map(|c| rec.expr(c)).collect::<Result<_>>()?;
        if cs.len() != dim {
            return Err(rec.error("bracket needs one coefficient per basis element"));
        }
        for (c, v) in cs.into_iter().enumerate() {
            f[((i - 1) * dim + (j - 1)) * dim + c] = v.clone();
            f[((j - 1) * dim + (i - 1)) * dim + c] = -v;
        }
    }
    LieAlgebra::from_constants(name, dim, param, f)
}

/// All 13 algebras in catalog order.
pub fn catalog() -> Result<Vec<LieAlgebra>> {
    data::load_records(data::ALGEBRAS, "algebras", 3)?.iter().map(parse_algebra).collect()
}

pub fn algebra(name: &str) -> Result<LieAlgebra> {
    catalog()?.into_iter().find(|l| l.name == name).ok_or_else(|| Error::UnknownAlgebra(name.into()))
}

/// Concrete algebra for a name, binding `a` when the algebra has one.
pub fn concrete_algebra(name: &str, a: Option<&Rational>) -> Result<LieAlgebra> {
    let l = algebra(name)?;
    match (&l.param, a) {
        (None, _) => Ok(l),
        (Some(_), Some(v)) => l.instantiate(v),
        (Some(p), None) => Err(Error::UnboundParameter(p.name().into())),
    }
}

/// Antisymmetry and Jacobi identity, per component.
pub fn check_structure(l: &LieAlgebra, tester: &mut ZeroTester) -> Vec<CheckRecord> {
    let n = l.dim;
    let mut anti = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                anti.push((format!("f_{}{}^{} + f_{}{}^{}", a + 1, b + 1, c + 1, b + 1, a + 1, c + 1), l.f(a, b, c) + l.f(b, a, c)));
            }
        }
    }
    let mut jac = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let s: Expr = (0..n)
                        .map(|d| {
                            l.f(a, b, d) * l.f(d, c, e) + l.f(b, c, d) * l.f(d, a, e) + l.f(c, a, d) * l.f(d, b, e)
                        })
                        .sum();
                    jac.push((format!("jacobi ({},{},{};{})", a + 1, b + 1, c + 1, e + 1), s));
                }
            }
        }
    }
    vec![
        CheckRecord::all_zero(format!("{} antisymmetry", l.name), anti.iter().map(|(k, e)| (k.clone(), e)), tester),
        CheckRecord::all_zero(format!("{} Jacobi identity", l.name), jac.iter().map(|(k, e)| (k.clone(), e)), tester),
    ]
}

/// Adjoint matrices: `(chi_a)[b][c] = -f_ab^c`, `(y^c)[a][b] = -f_ab^c`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdjointRep {
    #[serde(serialize_with = "ser_mats")]
    pub chi: Vec<ExprMatrix>,
    #[serde(serialize_with = "ser_mats")]
    pub y: Vec<ExprMatrix>,
}

fn ser_mats<S: serde::Serializer>(ms: &[ExprMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<String>>> =
        ms.iter().map(|m| m.to_rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

pub fn adjoint(l: &LieAlgebra) -> AdjointRep {
    let n = l.dim;
    AdjointRep {
        chi: (0..n).map(|a| Matrix::from_fn(n, n, |b, c| -l.f(a, b, c))).collect(),
        y: (0..n).map(|c| Matrix::from_fn(n, n, |a, b| -l.f(a, b, c))).collect(),
    }
}
