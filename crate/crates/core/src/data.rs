//! Bundled catalog files and the shared line-record reader.
//!
//! Every file starts with a header `# jacobi-catalog <kind> v1`. After it,
//! blank lines and lines starting with `#` are ignored and each remaining
//! line is one record with fields separated by `|`. Setting
//! `JACOBI_CATALOG_DIR` makes the loaders read `<dir>/<file>` instead of the
//! copy compiled into the binary, for any file present there.

use std::borrow::Cow;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::symexpr::{parse, Expr};

pub const ENV_DIR: &str = "JACOBI_CATALOG_DIR";

pub const ALGEBRAS: &str = "algebras.txt";
pub const AUTOMORPHISMS: &str = "automorphisms.txt";
pub const VIELBEINS: &str = "vielbeins.txt";
pub const TABLES: &str = "tables.txt";
pub const EXAMPLES: &str = "examples.txt";

fn bundled(name: &str) -> Option<&'static str> {
    Some(match name {
        ALGEBRAS => include_str!("../data/algebras.txt"),
        AUTOMORPHISMS => include_str!("../data/automorphisms.txt"),
        VIELBEINS => include_str!("../data/vielbeins.txt"),
        TABLES => include_str!("../data/tables.txt"),
        EXAMPLES => include_str!("../data/examples.txt"),
        _ => return None,
    })
}

/// Text of a catalog file, honouring the directory override.
pub fn load(name: &str) -> Result<Cow<'static, str>> {
    if let Some(dir) = std::env::var_os(ENV_DIR) {
        let path = PathBuf::from(dir).join(name);
        if path.is_file() {
            return std::fs::read_to_string(&path)
                .map(Cow::Owned)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())));
        }
    }
    bundled(name).map(Cow::Borrowed).ok_or_else(|| Error::Io(format!("no catalog file {name}")))
}

/// One data line split into trimmed fields.
#[derive(Clone, Debug)]
pub struct Record {
    pub file: String,
    pub line: usize,
    pub fields: Vec<String>,
}

impl Record {
    pub fn field(&self, i: usize) -> &str {
        self.fields.get(i).map(String::as_str).unwrap_or("")
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Data { file: self.file.clone(), line: self.line, msg: msg.into() }
    }

    pub fn expr(&self, s: &str) -> Result<Expr> {
        parse(s.trim()).map_err(|e| self.error(format!("`{}`: {e}", s.trim())))
    }

    /// `a; b; c` style matrix with rows split on `;` and entries on `,`.
    pub fn matrix(&self, s: &str) -> Result<Vec<Vec<Expr>>> {
        let rows: Vec<Vec<Expr>> = s
            .split(';')
            .map(|row| row.split(',').map(|x| self.expr(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(self.error("matrix is not square"));
        }
        Ok(rows)
    }
}

/// Split a catalog file into records, checking the header and arity.
pub fn records(name: &str, text: &str, kind: &str, min_fields: usize) -> Result<Vec<Record>> {
    let mut lines = text.lines().enumerate();
    let header = format!("# jacobi-catalog {kind} v1");
    match lines.next() {
        Some((_, l)) if l.trim() == header => {}
        _ => return Err(Error::Data { file: name.into(), line: 1, msg: format!("expected header `{header}`") }),
    }
    let mut out = Vec::new();
    for (i, l) in lines {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = l.split('|').map(|f| f.trim().to_string()).collect();
        let rec = Record { file: name.into(), line: i + 1, fields };
        if rec.fields.len() < min_fields {
            return Err(rec.error(format!("expected at least {min_fields} fields")));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Load and split in one step.
pub fn load_records(name: &str, kind: &str, min_fields: usize) -> Result<Vec<Record>> {
    let text = load(name)?;
    records(name, &text, kind, min_fields)
}
