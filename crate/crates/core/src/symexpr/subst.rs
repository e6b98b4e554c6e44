use std::collections::BTreeMap;

use super::canon::{make_func, make_pow, make_product, make_sum};
use super::{Expr, Node, Symbol};

/// Simultaneous substitution of symbols, result normalized.
pub fn subst(e: &Expr, map: &BTreeMap<Symbol, Expr>) -> Expr {
    if map.is_empty() {
        return e.clone();
    }
    match e.node() {
        Node::Const(_) => e.clone(),
        Node::Sym(s) => map.get(s).cloned().unwrap_or_else(|| e.clone()),
        Node::Pow(b, n) => make_pow(subst(b, map), *n),
        Node::Product(fs) => make_product(fs.iter().map(|f| subst(f, map)).collect()),
        Node::Sum(ts) => make_sum(ts.iter().map(|t| subst(t, map)).collect()),
        Node::Func(f, a) => make_func(*f, subst(a, map)),
    }
}

pub fn subst_one(e: &Expr, s: &Symbol, value: &Expr) -> Expr {
    let mut m = BTreeMap::new();
    m.insert(s.clone(), value.clone());
    subst(e, &m)
}
