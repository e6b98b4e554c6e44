use std::collections::BTreeMap;

use super::{AlgJacobiStructure, Relation, SideCondition};
use crate::data::{self, Record};
use crate::error::{Error, Result};
use crate::symexpr::{Expr, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// General solution family with free parameters.
    Family,
    /// Equivalence-class representative of a family.
    Representative,
}

/// One row of the published tables.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    pub algebra: String,
    /// `2` for a family, `2c` / `2c'` for its representatives.
    pub id: String,
    pub kind: RowKind,
    pub structure: AlgJacobiStructure,
    pub params: Vec<Symbol>,
    pub note: String,
}

impl SolutionFamily {
    /// Family number the row belongs to.
    pub fn family_id(&self) -> &str {
        self.id.trim_end_matches(['c', '\''])
    }

    /// The entry was changed from the print; see the note.
    pub fn corrected(&self) -> bool {
        self.note.starts_with("corrected:")
    }

    /// Replace a symbol everywhere, e.g. the Bianchi parameter `a`.
    pub fn bind(&self, values: &BTreeMap<Symbol, Expr>) -> SolutionFamily {
        let structure = self.structure.substitute(values);
        let params = structure.parameters();
        SolutionFamily { structure, params, ..self.clone() }
    }
}

/// Upper-triangular `ij = expr` entries separated by `,`, 0-based.
pub(crate) fn parse_upper(rec: &Record, text: &str, dim: usize) -> Result<Vec<(usize, usize, Expr)>> {
    let mut out = Vec::new();
    for entry in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (ij, v) = entry.split_once('=').ok_or_else(|| rec.error(format!("bad bivector entry `{entry}`")))?;
        let ij = ij.trim().as_bytes();
        let idx = |b: u8| (b as char).to_digit(10).map(|d| d as usize).filter(|&d| (1..=dim).contains(&d));
        let (Some(i), Some(j)) = (ij.first().copied().and_then(idx), ij.get(1).copied().and_then(idx)) else {
            return Err(rec.error(format!("bad bivector index in `{entry}`")));
        };
        if ij.len() != 2 || i >= j {
            return Err(rec.error(format!("bivector index must be `ij` with i < j in `{entry}`")));
        }
        out.push((i - 1, j - 1, rec.expr(v)?));
    }
    Ok(out)
}

/// Exactly `dim` expressions separated by `,`.
pub(crate) fn parse_components(rec: &Record, text: &str, dim: usize) -> Result<Vec<Expr>> {
    let v: Vec<Expr> = text.split(',').map(|s| rec.expr(s)).collect::<Result<_>>()?;
    if v.len() != dim {
        return Err(rec.error(format!("expected {dim} components, found {}", v.len())));
    }
    Ok(v)
}

fn parse_condition(rec: &Record, s: &str) -> Result<SideCondition> {
    let mut s = s.trim();
    let inferred = s.ends_with("(inferred)");
    if inferred {
        s = s.trim_end_matches("(inferred)").trim();
    }
    if let Some(sym) = s.strip_prefix("free ") {
        return Ok(SideCondition { expr: rec.expr(sym)?, relation: Relation::Free, inferred });
    }
    let (lhs, rhs, relation) = if let Some((l, r)) = s.split_once("!=") {
        (l, r, Relation::NonZero)
    } else if let Some((l, r)) = s.split_once('=') {
        (l, r, Relation::Zero)
    } else {
        return Err(rec.error(format!("bad condition `{s}`")));
    };
    Ok(SideCondition { expr: rec.expr(lhs)? - rec.expr(rhs)?, relation, inferred })
}

fn parse_row(rec: &Record, dims: &BTreeMap<String, usize>) -> Result<SolutionFamily> {
    let algebra = rec.field(0).to_string();
    let dim = *dims.get(&algebra).ok_or_else(|| rec.error(format!("unknown algebra `{algebra}`")))?;
    let id = rec.field(1).to_string();
    let kind = if id.contains('c') { RowKind::Representative } else { RowKind::Family };
    if id.trim_end_matches(['c', '\'']).parse::<u32>().is_err() {
        return Err(rec.error(format!("bad row id `{id}`")));
    }
    let upper = parse_upper(rec, rec.field(2), dim)?;
    let reeb = parse_components(rec, rec.field(3), dim)?;
    let mut structure = AlgJacobiStructure::from_upper(dim, &upper, reeb).map_err(|e| rec.error(e.to_string()))?;
    structure.conditions = rec
        .field(4)
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_condition(rec, s))
        .collect::<Result<_>>()?;
    let params = structure.parameters();
    Ok(SolutionFamily { algebra, id, kind, structure, params, note: rec.field(5).to_string() })
}

/// Every table row, in file order.
pub fn table_rows() -> Result<Vec<SolutionFamily>> {
    let dims: BTreeMap<String, usize> =
        crate::liealg::catalog()?.into_iter().map(|l| (l.name, l.dim)).collect();
    let rows: Vec<SolutionFamily> = data::load_records(data::TABLES, "tables", 4)?
        .iter()
        .map(|r| parse_row(r, &dims))
        .collect::<Result<_>>()?;
    Ok(rows)
}

pub fn table_rows_for(algebra: &str) -> Result<Vec<SolutionFamily>> {
    let rows = table_rows()?;
    if !crate::liealg::catalog()?.iter().any(|l| l.name == algebra) {
        return Err(Error::UnknownAlgebra(algebra.into()));
    }
    Ok(rows.into_iter().filter(|r| r.algebra == algebra).collect())
}

pub fn table_row(algebra: &str, id: &str) -> Result<SolutionFamily> {
    table_rows_for(algebra)?
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownRow(format!("{algebra} {id}")))
}
