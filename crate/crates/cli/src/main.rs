//! `jacobi`: catalog browsing, table verification and example reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use jacobi_core::group_geom::{
    inverse_check, is_jacobi_manifold, lift_to_group, maurer_cartan_check, vielbein_catalog, GroupJacobiStructure,
};
use jacobi_core::hamsys::{example_spec, hamiltonian_vf, jacobi_bracket, verify_example};
use jacobi_core::jacobi_alg::{
    are_equivalent, grid_enumerate, rational_witness, residual_bivector, residual_reeb, table_row, table_rows,
    table_rows_for, verify_family, AlgJacobiStructure, RowKind, SolutionFamily,
};
use jacobi_core::liealg::{algebra, catalog, check_structure, concrete_algebra, LieAlgebra};
use jacobi_core::poly::{solve_determined, Surd};
use jacobi_core::report::{CheckRecord, Verdict};
use jacobi_core::symexpr::{parse, ZeroTester};
use jacobi_core::{Error, Expr, Rational, Symbol};

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Jacobi structures on real low-dimensional Lie groups")]
struct Cli {
    /// Seed for every random sample (numeric zero tests, searches).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Browse the Lie algebra catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Antisymmetry and Jacobi identity of the structure constants.
    CheckStructure {
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Residuals of every table row, symbolically in its parameters.
    VerifyTable {
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Search for an automorphism relating two table rows.
    Equivalence {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Values for row parameters, `lambda12=1`.
        #[arg(long = "bind", value_name = "SYM=VAL")]
        bind: Vec<String>,
    },
    /// Solve the Jacobi equations with some unknowns fixed.
    Solve {
        #[command(flatten)]
        alg: AlgebraArg,
        /// Fix an unknown (`lambda12`, `e1`, ...) to a rational value.
        #[arg(long = "bind", value_name = "SYM=VAL")]
        bind: Vec<String>,
        /// Expression that must not vanish at a root.
        #[arg(long = "nonzero", value_name = "EXPR")]
        nonzero: Vec<String>,
    },
    /// Lift a table row to the group with its vielbein.
    Lift {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        row: String,
    },
    /// Jacobi manifold conditions for an example's printed structures.
    CheckManifold {
        #[arg(long)]
        example: usize,
    },
    /// Full reproduction of an example.
    Example { number: usize },
    /// Jacobi bracket of two functions on an example's group.
    Bracket {
        #[arg(long)]
        example: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Hamiltonian vector field of a function on an example's group.
    Hvf {
        #[arg(long)]
        example: usize,
        #[arg(long)]
        f: String,
    },
    /// All solutions with entries in an integer grid, matched to the tables.
    GridEnumerate {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        max: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Args, Debug)]
struct AlgebraArg {
    #[arg(long)]
    algebra: String,
    /// Value of the Bianchi parameter for VIa and VIIa.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Serialize, Default)]
struct Summary {
    pass: usize,
    fail: usize,
    numeric_pass: usize,
    discrepancy: usize,
}

#[derive(Serialize)]
struct Report {
    command: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    data: Value,
    records: Vec<CheckRecord>,
    summary: Summary,
    exit_status: u8,
    #[serde(skip)]
    text: String,
}

impl Report {
    fn new(command: String) -> Self {
        Report { command, data: Value::Null, records: vec![], summary: Summary::default(), exit_status: 0, text: String::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn finish(&mut self) {
        let mut s = Summary::default();
        for r in &self.records {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::NumericPass => s.numeric_pass += 1,
                Verdict::Discrepancy => s.discrepancy += 1,
            }
        }
        self.exit_status = u8::from(s.fail > 0);
        self.summary = s;
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            return serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        }
        let mut out = format!("$ {}\n", self.command);
        out.push_str(&self.text);
        for r in &self.records {
            let _ = writeln!(out, "{r}");
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} pass, {} numeric-pass, {} discrepancy, {} fail",
            s.pass, s.numeric_pass, s.discrepancy, s.fail
        );
        out
    }
}

fn rational(s: &str) -> Result<Rational, Error> {
    match parse(s)?.as_const() {
        Some(q) => Ok(q.clone()),
        None => Err(Error::Invalid(format!("`{s}` is not a rational number"))),
    }
}

fn bindings(items: &[String]) -> Result<BTreeMap<Symbol, Expr>, Error> {
    items
        .iter()
        .map(|b| {
            let (k, v) = b.split_once('=').ok_or_else(|| Error::Invalid(format!("binding `{b}` is not SYM=VAL")))?;
            Ok((Symbol::new(k.trim()), Expr::rational(rational(v)?)))
        })
        .collect()
}

fn concrete(alg: &AlgebraArg) -> Result<LieAlgebra, Error> {
    let a = alg.a.as_deref().map(rational).transpose()?;
    concrete_algebra(&alg.algebra, a.as_ref())
}

/// Row with the algebra parameter bound when a value is given.
fn bound_row(alg: &AlgebraArg, id: &str, extra: &BTreeMap<Symbol, Expr>) -> Result<SolutionFamily, Error> {
    let l = algebra(&alg.algebra)?;
    let mut values = extra.clone();
    if let (Some(p), Some(a)) = (&l.param, &alg.a) {
        values.insert(p.clone(), Expr::rational(rational(a)?));
    }
    Ok(table_row(&alg.algebra, id)?.bind(&values))
}

/// One record per row, merging its residual checks.
fn row_record(l: &LieAlgebra, row: &SolutionFamily, tester: &mut ZeroTester) -> Result<CheckRecord, Error> {
    let recs = verify_family(l, row, tester)?;
    let kind = match row.kind {
        RowKind::Family => "family",
        RowKind::Representative => "class",
    };
    let verdict = if recs.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if recs.iter().any(|r| r.verdict == Verdict::NumericPass) {
        Verdict::NumericPass
    } else {
        Verdict::Pass
    };
    let mut detail: Vec<String> = recs.iter().flat_map(|r| r.detail.iter().map(move |d| format!("{}: {d}", r.name))).collect();
    if row.corrected() {
        detail.push(row.note.clone());
    }
    Ok(CheckRecord::new(format!("{} {kind} {}: {}", row.algebra, row.id, row.structure), verdict, detail))
}

fn example_structure(n: usize) -> Result<GroupJacobiStructure, Error> {
    example_spec(n)?.printed_structure()
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), Error> {
    let mut tester = ZeroTester::new(cli.seed);
    let tester = &mut tester;
    match &cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            let algs = catalog()?;
            for l in &algs {
                report.line(format!("{} (dim {}), {} nonzero brackets", l.name, l.dim, l.brackets().len()));
            }
            report.data = json!(algs.iter().map(|l| json!({"name": l.name, "dim": l.dim})).collect::<Vec<_>>());
        }
        Command::Catalog { action: CatalogAction::Show { name } } => {
            let l = algebra(name)?;
            report.line(l.to_string());
            report.data = json!({"name": l.name, "dim": l.dim, "brackets": l.bracket_lines()});
        }
        Command::CheckStructure { algebra: name } => {
            let algs = match name {
                Some(n) => vec![algebra(n)?],
                None => catalog()?,
            };
            for l in &algs {
                report.records.extend(check_structure(l, tester));
            }
        }
        Command::VerifyTable { algebra: name } => {
            let rows = match name {
                Some(n) => {
                    algebra(n)?;
                    table_rows_for(n)?
                }
                None => table_rows()?,
            };
            let (fams, classes) = rows.iter().fold((0, 0), |(f, c), r| match r.kind {
                RowKind::Family => (f + 1, c),
                RowKind::Representative => (f, c + 1),
            });
            report.line(format!("{fams} family rows, {classes} class rows"));
            for row in &rows {
                let l = algebra(&row.algebra)?;
                report.records.push(row_record(&l, row, tester)?);
            }
            report.data = json!({"family_rows": fams, "class_rows": classes});
        }
        Command::Equivalence { alg, from, to, bind } => {
            let l = concrete(alg)?;
            let extra = bindings(bind)?;
            let j1 = bound_row(alg, from, &extra)?;
            let j2 = bound_row(alg, to, &extra)?;
            report.line(format!("from {}: {}", j1.id, j1.structure));
            report.line(format!("to   {}: {}", j2.id, j2.structure));
            let out = are_equivalent(&l, &j1.structure, &j2.structure, tester)?;
            let name = format!("{} row {} = transform(row {}, A)", l.name, from, to);
            match &out.witness {
                Some(a) => {
                    report.line(format!("A = {a}"));
                    report.line(format!("det A = {}", a.det()));
                    report.line(format!("method: {}", out.method));
                    for (s, v) in &out.bound {
                        report.line(format!("bound {s} = {v}"));
                    }
                    let entries: Vec<Vec<String>> =
                        a.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                    report.data = json!({"witness": entries, "rational": rational_witness(a).is_some(), "method": out.method});
                    report.records.push(CheckRecord::pass(name));
                }
                None => {
                    let why = if out.certified_absent { "no automorphism exists" } else { "search found no automorphism" };
                    report.data = json!({"witness": null, "certified_absent": out.certified_absent, "method": out.method});
                    report.records.push(CheckRecord::fail(name, vec![why.into()]));
                }
            }
        }
        Command::Solve { alg, bind, nonzero } => solve(alg, bind, nonzero, report)?,
        Command::Lift { algebra: name, row } => {
            let l = algebra(name)?;
            let fam = table_row(name, row)?;
            let v = vielbein_catalog(name)?;
            report.line(format!("{} row {}: {}", name, row, fam.structure));
            report.line(format!("vielbein: {v}"));
            let jg = lift_to_group(&fam.structure, &v)?;
            report.line(format!("lift: {jg}"));
            report.records.push(inverse_check(&v, tester));
            report.records.push(maurer_cartan_check(&v, &l, tester)?);
            report.records.extend(is_jacobi_manifold(&jg, tester)?);
            report.data = serde_json::to_value(&jg).expect("structure serializes");
        }
        Command::CheckManifold { example } => {
            let spec = example_spec(*example)?;
            let jg = spec.printed_structure()?;
            report.line(format!("Example {example}, row {}: {jg}", spec.row));
            for mut r in is_jacobi_manifold(&jg, tester)? {
                r.name = format!("row {}: {}", spec.row, r.name);
                report.records.push(r);
            }
            if let Some(sc) = &spec.second {
                let j2 = GroupJacobiStructure::from_upper(spec.reeb.len(), &sc.lambda, sc.reeb.clone())?;
                report.line(format!("Example {example}, row {}: {j2}", sc.row));
                for mut r in is_jacobi_manifold(&j2, tester)? {
                    r.name = format!("row {}: {}", sc.row, r.name);
                    report.records.push(r);
                }
            }
        }
        Command::Example { number } => {
            let rep = verify_example(*number, tester)?;
            report.line(rep.to_string());
            report.data = serde_json::to_value(&rep).expect("example report serializes");
            if let Value::Object(m) = &mut report.data {
                m.remove("records");
            }
            report.records = rep.records;
        }
        Command::Bracket { example, f, g } => {
            let jg = example_structure(*example)?;
            let (f, g) = (parse(f)?, parse(g)?);
            let b = jacobi_bracket(&jg, &f, &g);
            report.line(format!("{{{f}, {g}}} = {b}"));
            report.data = json!({"f": f.to_string(), "g": g.to_string(), "bracket": b.to_string()});
        }
        Command::Hvf { example, f } => {
            let jg = example_structure(*example)?;
            let f = parse(f)?;
            let x = hamiltonian_vf(&jg, &f);
            report.line(format!("X_{{{f}}} = {x}"));
            report.data = json!({"f": f.to_string(), "field": x});
        }
        Command::GridEnumerate { alg, min, max } => {
            if min > max {
                return Err(Error::Invalid(format!("empty grid {min}..{max}")));
            }
            let l = concrete(alg)?;
            let rows: Vec<SolutionFamily> = table_rows_for(&alg.algebra)?
                .into_iter()
                .map(|r| bound_row(alg, &r.id, &BTreeMap::new()))
                .collect::<Result<_, _>>()?;
            let grid: Vec<Rational> = (*min..=*max).map(|k| Rational::from_integer(k.into())).collect();
            let rep = grid_enumerate(&l, &grid, &rows)?;
            report.line(format!("{} candidates, {} solutions", rep.candidates, rep.solutions.len()));
            for s in &rep.solutions {
                let at = if s.families.is_empty() {
                    "outside every family".to_string()
                } else if s.closure_only {
                    format!("closure of {}", s.families.join(", "))
                } else {
                    format!("family {}", s.families.join(", "))
                };
                report.line(format!("  Lambda = ({}), E = ({}): {at}", s.lambda.join(", "), s.reeb.join(", ")));
            }
            let outside: Vec<String> = rep
                .unmatched()
                .map(|s| format!("Lambda = ({}), E = ({})", s.lambda.join(", "), s.reeb.join(", ")))
                .collect();
            let name = format!("{}: every grid solution lies in a published family", l.name);
            report.records.push(if outside.is_empty() {
                CheckRecord::pass(name)
            } else {
                CheckRecord::new(name, Verdict::Discrepancy, outside)
            });
            report.data = serde_json::to_value(&rep).expect("grid report serializes");
        }
    }
    Ok(())
}

fn solve(
    alg: &AlgebraArg,
    bind: &[String],
    nonzero: &[String],
    report: &mut Report,
) -> Result<(), Error> {
    let l = concrete(alg)?;
    let n = l.dim;
    let mut upper = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = format!("lambda{}{}", i + 1, j + 1);
            upper.push((i, j, Expr::sym(&s)));
            names.push(s);
        }
    }
    let reeb: Vec<Expr> = (1..=n).map(|k| Expr::sym(&format!("e{k}"))).collect();
    names.extend((1..=n).map(|k| format!("e{k}")));
    let general = AlgJacobiStructure::from_upper(n, &upper, reeb)?;
    let values = bindings(bind)?;
    if let Some(s) = values.keys().find(|s| !names.iter().any(|n| n == s.name())) {
        return Err(Error::Invalid(format!("`{s}` is not an unknown; expected one of {}", names.join(", "))));
    }
    let j = general.substitute(&values);
    let unknowns: Vec<Symbol> = names.iter().map(|s| Symbol::new(s)).filter(|s| !values.contains_key(s)).collect();
    let mut eqs = residual_bivector(&l, &j)?;
    eqs.extend(residual_reeb(&l, &j)?);
    eqs.retain(|e| !e.is_structurally_zero());
    let nz: Vec<Expr> = nonzero.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
    let out = solve_determined(&eqs, &unknowns, &nz)?;
    report.line(format!("{} equations in {} unknowns", eqs.len(), unknowns.len()));
    let zero = Surd::rational(Rational::from_integer(0.into()));
    let mut roots = Vec::new();
    for sol in &out.solutions {
        let text: Vec<String> = sol.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let text = text.join(", ");
        report.line(format!("root: {text}"));
        let ok = eqs.iter().all(|e| sol.eval(e).is_some_and(|v| v == zero));
        report.records.push(CheckRecord::from_bool(format!("root {text} solves the system"), ok, vec!["residual does not vanish".into()]));
        roots.push(text);
    }
    if out.solutions.is_empty() {
        report.line("no real roots");
    }
    if !out.complete {
        report.records.push(CheckRecord::new(
            "root list is complete",
            Verdict::Discrepancy,
            vec!["an eliminant factor lies outside the supported quadratic extensions".into()],
        ));
    }
    report.data = json!({"roots": roots, "complete": out.complete});
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report::new(std::iter::once("jacobi").chain(args.iter().skip(1).map(String::as_str)).collect::<Vec<_>>().join(" "));
    if let Err(e) = run(&cli, &mut report) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    report.finish();
    print!("{}", report.render(cli.json));
    ExitCode::from(report.exit_status)
}
