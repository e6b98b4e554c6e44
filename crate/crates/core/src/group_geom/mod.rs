//! Geometry on the group: catalog vielbeins, the Maurer–Cartan check, lifting
//! algebra-level structures to coordinates, the coordinate Jacobi equations
//! and the Schouten–Nijenhuis form of the Jacobi conditions.

mod multivector;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use multivector::{schouten, schouten_el, schouten_ll, wedge, Multivector};

use crate::data;
use crate::error::{Error, Result};
use crate::jacobi_alg::AlgJacobiStructure;
use crate::liealg::LieAlgebra;
use crate::report::CheckRecord;
use crate::symexpr::{subst, Expr, Symbol, ZeroTester};
use crate::{ExprMatrix, Matrix};

/// Left-invariant frame of a group in coordinates x1..xn.
#[derive(Clone, Debug, PartialEq)]
pub struct Vielbein {
    pub group: String,
    /// `inv_e[(mu, a)] = e_a^mu`, the ∂_mu component of the frame field e_a.
    pub inv_e: ExprMatrix,
    /// Matrix inverse, `e[(a, mu)] = e^a_mu`.
    pub e: ExprMatrix,
}

impl Vielbein {
    pub fn new(group: &str, inv_e: ExprMatrix) -> Result<Self> {
        let e = inv_e.inverse().ok_or(Error::SingularMatrix)?;
        Ok(Vielbein { group: group.into(), inv_e, e })
    }

    pub fn dim(&self) -> usize {
        self.inv_e.rows()
    }
}

impl fmt::Display for Vielbein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: e_a^mu = {}", self.group, self.inv_e)
    }
}

/// Every vielbein in the catalog, file order.
pub fn vielbeins() -> Result<Vec<Vielbein>> {
    data::load_records(data::VIELBEINS, "vielbeins", 2)?
        .iter()
        .map(|r| Vielbein::new(r.field(0), Matrix::from_rows(r.matrix(r.field(1))?)).map_err(|e| r.error(e.to_string())))
        .collect()
}

pub fn vielbein_catalog(group: &str) -> Result<Vielbein> {
    vielbeins()?.into_iter().find(|v| v.group == group).ok_or_else(|| Error::UnknownGroup(group.into()))
}

/// `e · inv_e = 1`, componentwise.
pub fn inverse_check(v: &Vielbein, tester: &mut ZeroTester) -> CheckRecord {
    let prod = v.e.mul(&v.inv_e).sub(&Matrix::identity(v.dim()));
    let items: Vec<(String, Expr)> = prod
        .to_rows()
        .into_iter()
        .enumerate()
        .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, x)| (format!("({}, {})", i + 1, j + 1), x)))
        .collect();
    CheckRecord::all_zero(format!("{} vielbein inverse", v.group), items.iter().map(|(k, x)| (k.clone(), x)), tester)
}

/// `e^c_nu (e_a^mu ∂_mu e_b^nu - e_b^mu ∂_mu e_a^nu)`, flat `[a][b][c]`.
/// These are the constants of the frame fields, which are `-f` for the
/// catalog vielbeins.
pub fn maurer_cartan(v: &Vielbein) -> Vec<Expr> {
    let n = v.dim();
    let m = &v.inv_e;
    // d[(mu, nu, a)] = ∂_mu e_a^nu
    let d = |mu: usize, nu: usize, a: usize| m[(nu, a)].dx(mu + 1);
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            let comm: Vec<Expr> = (0..n)
                .map(|nu| (0..n).map(|mu| &m[(mu, a)] * d(mu, nu, b) - &m[(mu, b)] * d(mu, nu, a)).sum())
                .collect();
            for c in 0..n {
                out.push((0..n).map(|nu| &v.e[(c, nu)] * &comm[nu]).sum());
            }
        }
    }
    out
}

/// Frame constants from the vielbein against the algebra's, `c = -f`.
pub fn maurer_cartan_check(v: &Vielbein, l: &LieAlgebra, tester: &mut ZeroTester) -> Result<CheckRecord> {
    let n = v.dim();
    if n != l.dim {
        return Err(Error::Dimension(format!("vielbein {} has dimension {n}, algebra {} {}", v.group, l.name, l.dim)));
    }
    let computed = maurer_cartan(v);
    let expected = l.frame_constants();
    let mut items = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let k = (a * n + b) * n + c;
                items.push((format!("c_{}{}^{} + f_{}{}^{}", a + 1, b + 1, c + 1, a + 1, b + 1, c + 1), &computed[k] - &expected[k]));
            }
        }
    }
    Ok(CheckRecord::all_zero(
        format!("{} vielbein against {} (Maurer-Cartan)", v.group, l.name),
        items.iter().map(|(k, x)| (k.clone(), x)),
        tester,
    ))
}

/// Bivector Λ^{μν}(x) and vector field E^μ(x) in coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupJacobiStructure {
    pub lambda: ExprMatrix,
    pub reeb: Vec<Expr>,
}

impl GroupJacobiStructure {
    pub fn new(lambda: ExprMatrix, reeb: Vec<Expr>) -> Result<Self> {
        let j = AlgJacobiStructure::new(lambda, reeb)?;
        Ok(GroupJacobiStructure { lambda: j.lambda, reeb: j.reeb })
    }

    pub fn from_upper(dim: usize, upper: &[(usize, usize, Expr)], reeb: Vec<Expr>) -> Result<Self> {
        let j = AlgJacobiStructure::from_upper(dim, upper, reeb)?;
        Ok(GroupJacobiStructure { lambda: j.lambda, reeb: j.reeb })
    }

    pub fn dim(&self) -> usize {
        self.reeb.len()
    }

    pub fn bivector(&self) -> Multivector {
        Multivector::bivector(&self.lambda)
    }

    pub fn vector(&self) -> Multivector {
        Multivector::vector(&self.reeb)
    }

    pub fn substitute(&self, map: &BTreeMap<Symbol, Expr>) -> GroupJacobiStructure {
        GroupJacobiStructure {
            lambda: self.lambda.map(|e| subst(e, map)),
            reeb: self.reeb.iter().map(|e| subst(e, map)).collect(),
        }
    }

    pub fn add(&self, other: &GroupJacobiStructure) -> Result<GroupJacobiStructure> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension("structures of different dimension".into()));
        }
        GroupJacobiStructure::new(
            self.lambda.add(&other.lambda),
            self.reeb.iter().zip(&other.reeb).map(|(a, b)| a + b).collect(),
        )
    }

    /// Componentwise difference as labelled expressions, upper entries and E.
    pub fn differences(&self, other: &GroupJacobiStructure) -> Vec<(String, Expr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((format!("Lambda^{}{}", i + 1, j + 1), &self.lambda[(i, j)] - &other.lambda[(i, j)]));
            }
        }
        for i in 0..n {
            out.push((format!("E^{}", i + 1), &self.reeb[i] - &other.reeb[i]));
        }
        out
    }

    pub fn lambda_strings(&self) -> Vec<String> {
        self.upper_entries().map(|(_, _, e)| e.to_string()).collect()
    }

    fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &Expr)> {
        let n = self.dim();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, &self.lambda[(i, j)])))
    }
}

impl fmt::Display for GroupJacobiStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.reeb.iter().map(|e| e.to_string()).collect();
        write!(f, "Lambda = {}, E = ({})", self.bivector(), parts.join(", "))
    }
}

impl Serialize for GroupJacobiStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let upper: BTreeMap<String, String> =
            self.upper_entries().map(|(i, j, e)| (format!("{}{}", i + 1, j + 1), e.to_string())).collect();
        let reeb: Vec<String> = self.reeb.iter().map(|e| e.to_string()).collect();
        let mut st = s.serialize_struct("GroupJacobiStructure", 2)?;
        st.serialize_field("lambda", &upper)?;
        st.serialize_field("reeb", &reeb)?;
        st.end()
    }
}

/// `Λ^{μν} = e_a^μ e_b^ν Λ^{ab}`, `E^μ = e_a^μ E^a`.
pub fn lift_to_group(j: &AlgJacobiStructure, v: &Vielbein) -> Result<GroupJacobiStructure> {
    if j.dim() != v.dim() {
        return Err(Error::Dimension(format!("structure of dimension {} with vielbein of {}", j.dim(), v.dim())));
    }
    let m = &v.inv_e;
    Ok(GroupJacobiStructure { lambda: m.mul(&j.lambda).mul(&m.transpose()), reeb: m.mul_vec(&j.reeb) })
}

/// Left sides of the coordinate Jacobi equations. The first array is
/// indexed `[ν][λ][μ]`:
///
/// `Λ^{νρ}∂_ρΛ^{λμ} + Λ^{μρ}∂_ρΛ^{νλ} + Λ^{λρ}∂_ρΛ^{μν}
///  + E^λΛ^{μν} + E^μΛ^{νλ} + E^νΛ^{λμ}`,
///
/// the second `[μ][ν]`: `E^ρ∂_ρΛ^{μν} - Λ^{ρν}∂_ρE^μ - Λ^{μρ}∂_ρE^ν`.
pub fn coordinate_jacobi_residuals(jg: &GroupJacobiStructure) -> (Vec<Expr>, Vec<Expr>) {
    let n = jg.dim();
    let l = &jg.lambda;
    let e = &jg.reeb;
    let dl: Vec<ExprMatrix> = (0..n).map(|r| l.map(|x| x.dx(r + 1))).collect();
    let de: Vec<Vec<Expr>> = (0..n).map(|r| e.iter().map(|x| x.dx(r + 1)).collect()).collect();
    let mut first = Vec::with_capacity(n * n * n);
    for nu in 0..n {
        for la in 0..n {
            for mu in 0..n {
                let mut terms = Vec::new();
                for r in 0..n {
                    terms.push(&l[(nu, r)] * &dl[r][(la, mu)]);
                    terms.push(&l[(mu, r)] * &dl[r][(nu, la)]);
                    terms.push(&l[(la, r)] * &dl[r][(mu, nu)]);
                }
                terms.push(&e[la] * &l[(mu, nu)]);
                terms.push(&e[mu] * &l[(nu, la)]);
                terms.push(&e[nu] * &l[(la, mu)]);
                first.push(Expr::sum(terms));
            }
        }
    }
    let mut second = Vec::with_capacity(n * n);
    for mu in 0..n {
        for nu in 0..n {
            let terms: Vec<Expr> = (0..n)
                .flat_map(|r| {
                    [&e[r] * &dl[r][(mu, nu)], -(&l[(r, nu)] * &de[r][mu]), -(&l[(mu, r)] * &de[r][nu])]
                })
                .collect();
            second.push(Expr::sum(terms));
        }
    }
    (first, second)
}

/// `[[Λ, Λ]] - 2 E∧Λ` and `[[E, Λ]]`.
pub fn schouten_residuals(jg: &GroupJacobiStructure) -> Result<(Multivector, Multivector)> {
    let lam = jg.bivector();
    let e = jg.vector();
    let ll = schouten_ll(&lam)?;
    let w = wedge(&e, &lam)?;
    Ok((ll.sub(&w.scale(&Expr::int(2)))?, schouten_el(&e, &lam)?))
}

fn blade_label(prefix: &str, k: &[usize]) -> String {
    let idx: String = k.iter().map(|i| (i + 1).to_string()).collect();
    format!("{prefix}^{idx}")
}

/// Both Jacobi conditions in Schouten form, the coordinate equations, and
/// the identity linking them: the coordinate residual `[ν][λ][μ]` is
/// `-½([[Λ,Λ]] - 2E∧Λ)^{νλμ}` and the second equals `[[E, Λ]]`.
pub fn is_jacobi_manifold(jg: &GroupJacobiStructure, tester: &mut ZeroTester) -> Result<Vec<CheckRecord>> {
    let n = jg.dim();
    if n > 3 {
        return Err(Error::DimensionUnsupported(n));
    }
    let (r1, r2) = schouten_residuals(jg)?;
    let (c1, c2) = coordinate_jacobi_residuals(jg);
    let s1: Vec<(String, Expr)> = r1.all_blades().into_iter().map(|(k, x)| (blade_label("[[L,L]] - 2 E^L", &k), x)).collect();
    let s2: Vec<(String, Expr)> = r2.all_blades().into_iter().map(|(k, x)| (blade_label("[[E,L]]", &k), x)).collect();
    let mut coord = Vec::new();
    let mut link = Vec::new();
    let half = Expr::frac(1, 2);
    for nu in 0..n {
        for la in 0..n {
            for mu in 0..n {
                let x = &c1[(nu * n + la) * n + mu];
                let label = format!("({},{},{})", nu + 1, la + 1, mu + 1);
                coord.push((format!("first {label}"), x.clone()));
                link.push((format!("first {label}"), x + &half * r1.component(&[nu, la, mu])));
            }
        }
    }
    for mu in 0..n {
        for nu in 0..n {
            let x = &c2[mu * n + nu];
            let label = format!("({},{})", mu + 1, nu + 1);
            coord.push((format!("second {label}"), x.clone()));
            link.push((format!("second {label}"), x - r2.component(&[mu, nu])));
        }
    }
    let rec = |name: &str, items: &[(String, Expr)], t: &mut ZeroTester| {
        CheckRecord::all_zero(name, items.iter().map(|(k, x)| (k.clone(), x)), t)
    };
    Ok(vec![
        rec("[[Lambda, Lambda]] = 2 E ^ Lambda", &s1, tester),
        rec("[[E, Lambda]] = 0", &s2, tester),
        rec("coordinate Jacobi equations", &coord, tester),
        rec("Schouten and coordinate forms agree", &link, tester),
    ])
}
