//! The six worked Jacobi–Lie systems, read from `examples.txt`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{closure_check, hamiltonian_vf, jacobi_bracket, LieSystemReport, VectorField};
use crate::data::{self, Record};
use crate::error::{Error, Result};
use crate::group_geom::{is_jacobi_manifold, lift_to_group, maurer_cartan_check, schouten_ll, vielbein_catalog, wedge, GroupJacobiStructure};
use crate::jacobi_alg::{parse_components, parse_upper, table_row, verify_structure};
use crate::liealg::algebra;
use crate::report::{CheckRecord, Verdict};
use crate::symexpr::{subst, Expr, Symbol, ZeroTester};
use crate::{Matrix, Rational};

/// `[Xi, Xj] = Σ c_k X_k` or `{fi, fj} = Σ c_k f_k`, indices 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Rational>,
    pub text: String,
}

impl Relation {
    fn rhs(&self, items: &[Expr]) -> Expr {
        items.iter().zip(&self.coeffs).map(|(x, c)| Expr::rational(c.clone()) * x).sum()
    }
}

/// Printed data of one example.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSpec {
    pub number: usize,
    pub group: String,
    pub row: String,
    pub lambda: Vec<(usize, usize, Expr)>,
    pub reeb: Vec<Expr>,
    /// Hamiltonians in coordinates, after `rename`.
    pub hamiltonians: Vec<Expr>,
    /// Hamiltonians as printed.
    pub printed_hamiltonians: Vec<String>,
    pub rename: Vec<(Symbol, Expr)>,
    pub fields: Vec<VectorField>,
    pub commutators: Vec<Relation>,
    pub brackets: Vec<Relation>,
    pub spans: String,
    pub domain: Option<String>,
    pub second: Option<SecondClass>,
}

/// A second equivalence class whose Hamiltonian fields never form a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondClass {
    pub row: String,
    pub lambda: Vec<(usize, usize, Expr)>,
    pub reeb: Vec<Expr>,
}

impl ExampleSpec {
    pub fn printed_structure(&self) -> Result<GroupJacobiStructure> {
        GroupJacobiStructure::from_upper(self.reeb.len(), &self.lambda, self.reeb.clone())
    }
}

fn parse_relation(rec: &Record, text: &str, open: char, close: char, prefix: &str, count: usize) -> Result<Relation> {
    let bad = || rec.error(format!("bad relation `{text}`"));
    let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
    let inner = lhs.trim().strip_prefix(open).and_then(|s| s.strip_suffix(close)).ok_or_else(bad)?;
    let idx: Vec<usize> = inner
        .split(',')
        .map(|s| s.trim().strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok()).filter(|k| (1..=count).contains(k)))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let [i, j] = idx[..] else { return Err(bad()) };
    let rhs = rec.expr(rhs)?;
    let names: Vec<Symbol> = (1..=count).map(|k| Symbol::new(&format!("{prefix}{k}"))).collect();
    let mut coeffs = Vec::with_capacity(count);
    for s in &names {
        coeffs.push(rhs.diff(s).as_const().cloned().ok_or_else(bad)?);
    }
    let rebuilt: Expr = names.iter().zip(&coeffs).map(|(s, c)| Expr::rational(c.clone()) * Expr::symbol(s)).sum();
    if rebuilt != rhs {
        return Err(bad());
    }
    Ok(Relation { i: i - 1, j: j - 1, coeffs, text: text.trim().to_string() })
}

/// All examples in the catalog, in order.
pub fn example_specs() -> Result<Vec<ExampleSpec>> {
    let recs = data::load_records(data::EXAMPLES, "examples", 3)?;
    let mut by_number: BTreeMap<usize, Vec<&Record>> = BTreeMap::new();
    for r in &recs {
        let n: usize = r.field(0).parse().map_err(|_| r.error("bad example number"))?;
        by_number.entry(n).or_default().push(r);
    }
    by_number.into_iter().map(|(n, rs)| parse_example(n, &rs)).collect()
}

fn parse_example(number: usize, recs: &[&Record]) -> Result<ExampleSpec> {
    let first = recs[0];
    let get = |key: &str| recs.iter().find(|r| r.field(1) == key).copied();
    let need = |key: &str| get(key).ok_or_else(|| first.error(format!("example {number} has no `{key}`")));
    let group = need("group")?.field(2).to_string();
    let dim = algebra(&group).map_err(|e| first.error(e.to_string()))?.dim;
    let lam_rec = need("lambda")?;
    let lambda = parse_upper(lam_rec, lam_rec.field(2), dim)?;
    let reeb_rec = need("reeb")?;
    let reeb = parse_components(reeb_rec, reeb_rec.field(2), dim)?;
    let mut rename = Vec::new();
    if let Some(r) = get("rename") {
        for part in r.field(2).split(',') {
            let (a, b) = part.split_once('=').ok_or_else(|| r.error(format!("bad rename `{part}`")))?;
            rename.push((Symbol::new(a.trim()), r.expr(b)?));
        }
    }
    let map: BTreeMap<Symbol, Expr> = rename.iter().cloned().collect();
    let f_recs: Vec<&&Record> = recs.iter().filter(|r| r.field(1) == "f").collect();
    let printed_hamiltonians: Vec<String> = f_recs.iter().map(|r| r.field(2).to_string()).collect();
    let hamiltonians: Vec<Expr> = f_recs.iter().map(|r| Ok(subst(&r.expr(r.field(2))?, &map))).collect::<Result<_>>()?;
    let count = hamiltonians.len();
    let fields: Vec<VectorField> = recs
        .iter()
        .filter(|r| r.field(1) == "field")
        .map(|r| parse_components(r, r.field(2), dim).map(VectorField))
        .collect::<Result<_>>()?;
    if fields.len() != count {
        return Err(first.error(format!("example {number}: {} fields for {count} Hamiltonians", fields.len())));
    }
    let relations = |key: &str, open, close, prefix| -> Result<Vec<Relation>> {
        recs.iter().filter(|r| r.field(1) == key).map(|r| parse_relation(r, r.field(2), open, close, prefix, count)).collect()
    };
    let second = match get("second_row") {
        None => None,
        Some(r) => {
            let l = need("second_lambda")?;
            let e = need("second_reeb")?;
            Some(SecondClass {
                row: r.field(2).to_string(),
                lambda: parse_upper(l, l.field(2), dim)?,
                reeb: parse_components(e, e.field(2), dim)?,
            })
        }
    };
    Ok(ExampleSpec {
        number,
        group,
        row: need("row")?.field(2).to_string(),
        lambda,
        reeb,
        hamiltonians,
        printed_hamiltonians,
        rename,
        fields,
        commutators: relations("commutator", '[', ']', "X")?,
        brackets: relations("bracket", '{', '}', "f")?,
        spans: need("spans")?.field(2).to_string(),
        domain: get("domain").map(|r| r.field(2).to_string()),
        second,
    })
}

pub fn example_spec(n: usize) -> Result<ExampleSpec> {
    example_specs()?.into_iter().find(|e| e.number == n).ok_or(Error::UnknownExample(n))
}

/// Computed Hamiltonian field beside the printed one.
#[derive(Clone, Debug, Serialize)]
pub struct FieldReport {
    pub hamiltonian: String,
    pub computed: VectorField,
    pub printed: VectorField,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub number: usize,
    pub group: String,
    pub row: String,
    pub structure: GroupJacobiStructure,
    pub fields: Vec<FieldReport>,
    pub lie_system: LieSystemReport,
    pub second: Option<GroupJacobiStructure>,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

fn prefixed(prefix: &str, recs: Vec<CheckRecord>) -> impl Iterator<Item = CheckRecord> + '_ {
    recs.into_iter().map(move |mut r| {
        r.name = format!("{prefix}{}", r.name);
        r
    })
}

fn zero_record(name: String, items: &[(String, Expr)], tester: &mut ZeroTester) -> CheckRecord {
    CheckRecord::all_zero(name, items.iter().map(|(k, x)| (k.clone(), x)), tester)
}

/// Reproduce example `n` end to end. Differences from printed vector fields
/// are reported as discrepancies; the defining formula is authoritative.
pub fn verify_example(n: usize, tester: &mut ZeroTester) -> Result<ExampleReport> {
    let spec = example_spec(n)?;
    let l = algebra(&spec.group)?;
    let v = vielbein_catalog(&spec.group)?;
    let row = table_row(&spec.group, &spec.row)?;
    let mut records: Vec<CheckRecord> = Vec::new();
    let mut notes = Vec::new();

    records.extend(prefixed(&format!("{} row {}: ", l.name, row.id), verify_structure(&l, &row.structure, tester)?));
    records.push(maurer_cartan_check(&v, &l, tester)?);
    let jg = lift_to_group(&row.structure, &v)?;
    let printed = spec.printed_structure()?;
    records.push(zero_record("lifted structure equals the printed one".into(), &jg.differences(&printed), tester));
    records.extend(prefixed("group structure: ", is_jacobi_manifold(&jg, tester)?));

    let mut fields = Vec::new();
    let mut computed = Vec::new();
    for (k, f) in spec.hamiltonians.iter().enumerate() {
        let x = hamiltonian_vf(&jg, f);
        let diff: Vec<(String, Expr)> =
            x.sub(&spec.fields[k]).0.into_iter().enumerate().map(|(mu, d)| (format!("component {}", mu + 1), d)).collect();
        let mut rec = zero_record(format!("X{} equals the printed field", k + 1), &diff, tester);
        if rec.verdict == Verdict::Fail {
            rec.verdict = Verdict::Discrepancy;
            rec.detail.insert(0, format!("computed {x}"));
            rec.detail.insert(1, format!("printed {}", spec.fields[k]));
        }
        fields.push(FieldReport {
            hamiltonian: f.to_string(),
            computed: x.clone(),
            printed: spec.fields[k].clone(),
            verdict: rec.verdict,
        });
        records.push(rec);
        computed.push(x);
    }

    let lie_system = closure_check(&computed, tester)?;
    records.push(CheckRecord::from_bool("Hamiltonian fields close", lie_system.closed, lie_system.outside_span.clone()));
    let r = computed.len();
    let mut mismatched = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let printed: Vec<Rational> = spec
                .commutators
                .iter()
                .find(|c| c.i == i && c.j == j)
                .map_or_else(|| vec![Rational::zero(); r], |c| c.coeffs.clone());
            if lie_system.bracket(i, j) != Some(printed.as_slice()) {
                let got = lie_system.table.iter().find(|c| c.i == i && c.j == j).map_or("not in span".into(), |c| c.to_string());
                mismatched.push(format!("[X{}, X{}]: computed {got}", i + 1, j + 1));
            }
        }
    }
    let printed_list: Vec<&str> = spec.commutators.iter().map(|c| c.text.as_str()).collect();
    records.push(CheckRecord::from_bool(format!("commutators are exactly {}", printed_list.join(", ")), mismatched.is_empty(), mismatched));
    let span_ok = lie_system.matched.as_deref() == Some(spec.spans.as_str());
    records.push(CheckRecord::new(
        format!("fields span {}", spec.spans),
        if span_ok { Verdict::Pass } else { Verdict::Discrepancy },
        if span_ok { vec![] } else { vec![format!("computed table: {lie_system}")] },
    ));

    for b in &spec.brackets {
        let lhs = jacobi_bracket(&jg, &spec.hamiltonians[b.i], &spec.hamiltonians[b.j]);
        let d = &lhs - b.rhs(&spec.hamiltonians);
        records.push(zero_record(b.text.clone(), &[("difference".into(), d)], tester));
    }

    let second = match &spec.second {
        None => None,
        Some(sc) => {
            let row2 = table_row(&spec.group, &sc.row)?;
            let j2 = lift_to_group(&row2.structure, &v)?;
            let printed2 = GroupJacobiStructure::from_upper(l.dim, &sc.lambda, sc.reeb.clone())?;
            records.push(zero_record(format!("row {} lifted equals the printed one", sc.row), &j2.differences(&printed2), tester));
            records.extend(prefixed(&format!("row {} structure: ", sc.row), is_jacobi_manifold(&j2, tester)?));
            let ll = schouten_ll(&j2.bivector())?;
            let w = wedge(&j2.vector(), &j2.bivector())?;
            let items: Vec<(String, Expr)> = ll
                .all_blades()
                .into_iter()
                .map(|(_, x)| ("[[L,L]]".to_string(), x))
                .chain(w.all_blades().into_iter().map(|(_, x)| ("E^L".to_string(), x)))
                .collect();
            records.push(zero_record(format!("row {}: [[Lambda, Lambda]] = 0 = 2 E ^ Lambda", sc.row), &items, tester));
            let xs: Vec<VectorField> = spec.hamiltonians.iter().map(|f| hamiltonian_vf(&j2, f)).collect();
            // Pointwise dependence: the fields never give a frame.
            let det = Matrix::from_rows(xs.iter().map(|x| x.0.clone()).collect()).det();
            let mut rec = zero_record(
                format!("row {}: Hamiltonian fields of the same functions are pointwise dependent", sc.row),
                &[("det".into(), det)],
                tester,
            );
            if rec.verdict == Verdict::Fail {
                rec.detail.extend(xs.iter().enumerate().map(|(k, x)| format!("X{} = {x}", k + 1)));
            }
            records.push(rec);
            Some(j2)
        }
    };

    if !spec.rename.is_empty() {
        let parts: Vec<String> = spec.rename.iter().map(|(s, e)| format!("{s} as {e}")).collect();
        notes.push(format!("printed Hamiltonians use undeclared symbols, read {}", parts.join(", ")));
    }
    if let Some(d) = &spec.domain {
        notes.push(format!("formulas hold on the open set {d}"));
    }
    Ok(ExampleReport { number: n, group: spec.group, row: spec.row, structure: jg, fields, lie_system, second, records, notes })
}

impl fmt::Display for ExampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Example {}: group {}, table row {}", self.number, self.group, self.row)?;
        writeln!(f, "  structure: {}", self.structure)?;
        for (k, x) in self.fields.iter().enumerate() {
            writeln!(f, "  f{} = {}", k + 1, x.hamiltonian)?;
            writeln!(f, "    X{} = {}", k + 1, x.computed)?;
            if x.verdict == Verdict::Discrepancy {
                writeln!(f, "    printed: {}", x.printed)?;
            }
        }
        writeln!(f, "  Lie system: {}", self.lie_system)?;
        if let Some(s) = &self.second {
            writeln!(f, "  second class: {s}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
