//! Exact symbolic expressions over the rationals.
//!
//! Every [`Expr`] is kept in canonical form: the public constructors and the
//! arithmetic operators all route through the builders in [`canon`], so two
//! expressions that normalize to the same tree compare equal structurally.

mod canon;
mod diff;
mod eval;
mod parse;
mod print;
pub mod ratfun;
mod subst;
mod zero;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use canon::normalize;
pub use eval::{eval, eval_f64, eval_with, Assignment, Value};
pub use parse::parse;
pub use subst::{subst, subst_one};
pub use zero::{is_zero, ZeroTester, ZeroVerdict};

use crate::Rational;

/// A named symbol. Coordinates are `x1`, `x2`, ...; everything else is a
/// parameter or unknown.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Coordinate index for names of the form `x<k>`, k >= 1.
    pub fn coordinate_index(&self) -> Option<usize> {
        let rest = self.0.strip_prefix('x')?;
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok()
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }
}

/// Expression node. The derived ordering (variant first, then payload) is the
/// node ordering used to sort sums and products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Const(Rational),
    Sym(Symbol),
    /// Integer power; the exponent is never 0 or 1 in canonical form.
    Pow(Expr, i64),
    /// At most one leading `Const` coefficient, then factors sorted by base.
    Product(Vec<Expr>),
    Func(Func, Expr),
    /// Terms sorted by monomial, like terms collected.
    Sum(Vec<Expr>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr(Arc<Node>);

impl Expr {
    pub(crate) fn from_node(n: Node) -> Self {
        Expr(Arc::new(n))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn rational(q: Rational) -> Self {
        Expr::from_node(Node::Const(q))
    }

    pub fn int(n: i64) -> Self {
        Expr::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Expr::rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Expr::int(0)
    }

    pub fn one() -> Self {
        Expr::int(1)
    }

    pub fn sym(name: &str) -> Self {
        Expr::from_node(Node::Sym(Symbol::new(name)))
    }

    pub fn symbol(s: &Symbol) -> Self {
        Expr::from_node(Node::Sym(s.clone()))
    }

    /// Coordinate `x<k>`.
    pub fn x(k: usize) -> Self {
        Expr::sym(&format!("x{k}"))
    }

    pub fn sum(terms: Vec<Expr>) -> Self {
        canon::make_sum(terms)
    }

    pub fn product(factors: Vec<Expr>) -> Self {
        canon::make_product(factors)
    }

    pub fn pow(&self, n: i64) -> Self {
        canon::make_pow(self.clone(), n)
    }

    pub fn apply(f: Func, arg: Expr) -> Self {
        canon::make_func(f, arg)
    }

    pub fn exp(&self) -> Self {
        Expr::apply(Func::Exp, self.clone())
    }
    pub fn ln(&self) -> Self {
        Expr::apply(Func::Ln, self.clone())
    }
    pub fn sin(&self) -> Self {
        Expr::apply(Func::Sin, self.clone())
    }
    pub fn cos(&self) -> Self {
        Expr::apply(Func::Cos, self.clone())
    }
    pub fn sinh(&self) -> Self {
        Expr::apply(Func::Sinh, self.clone())
    }
    pub fn cosh(&self) -> Self {
        Expr::apply(Func::Cosh, self.clone())
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Structural test against the canonical zero.
    pub fn is_structurally_zero(&self) -> bool {
        matches!(self.node(), Node::Const(q) if q.is_zero())
    }

    pub fn is_structurally_one(&self) -> bool {
        matches!(self.node(), Node::Const(q) if q.is_one())
    }

    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Sym(s) => {
                out.insert(s.clone());
            }
            Node::Pow(b, _) => b.collect_symbols(out),
            Node::Func(_, a) => a.collect_symbols(out),
            Node::Product(xs) | Node::Sum(xs) => xs.iter().for_each(|x| x.collect_symbols(out)),
        }
    }

    pub fn contains_symbol(&self, s: &Symbol) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Sym(t) => t == s,
            Node::Pow(b, _) => b.contains_symbol(s),
            Node::Func(_, a) => a.contains_symbol(s),
            Node::Product(xs) | Node::Sum(xs) => xs.iter().any(|x| x.contains_symbol(s)),
        }
    }

    /// True if any exp/ln/trig node occurs.
    pub fn has_functions(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::Sym(_) => false,
            Node::Func(..) => true,
            Node::Pow(b, _) => b.has_functions(),
            Node::Product(xs) | Node::Sum(xs) => xs.iter().any(|x| x.has_functions()),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Const(_) | Node::Sym(_) => 0,
            Node::Pow(b, _) => b.size(),
            Node::Func(_, a) => a.size(),
            Node::Product(xs) | Node::Sum(xs) => xs.iter().map(Expr::size).sum(),
        }
    }

    pub fn diff(&self, v: &Symbol) -> Expr {
        diff::diff(self, v)
    }

    /// Partial derivative with respect to the coordinate `x<k>`.
    pub fn dx(&self, k: usize) -> Expr {
        self.diff(&Symbol::new(&format!("x{k}")))
    }

    /// Terms of a sum (a non-sum is a single term).
    pub fn terms(&self) -> Vec<Expr> {
        match self.node() {
            Node::Sum(ts) => ts.clone(),
            _ if self.is_structurally_zero() => vec![],
            _ => vec![self.clone()],
        }
    }

    /// Split into rational coefficient and the remaining monomial.
    pub fn coeff_and_monomial(&self) -> (Rational, Expr) {
        canon::split_coeff(self)
    }

    /// Sign of the leading coefficient; used for odd/even function parity.
    pub fn leading_sign_negative(&self) -> bool {
        canon::leading_negative(self)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(q: Rational) -> Self {
        Expr::rational(q)
    }
}

impl From<&Symbol> for Expr {
    fn from(s: &Symbol) -> Self {
        Expr::symbol(s)
    }
}

impl std::str::FromStr for Expr {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs.clone())
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| canon::make_sum(vec![a, b]));
binop!(Sub, sub, |a, b| canon::make_sum(vec![a, canon::negate(b)]));
binop!(Mul, mul, |a, b| canon::make_product(vec![a, b]));
binop!(Div, div, |a, b| canon::make_product(vec![a, canon::make_pow(b, -1)]));

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        canon::negate(self)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        canon::negate(self.clone())
    }
}

impl Zero for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_structurally_zero()
    }
}

impl One for Expr {
    fn one() -> Self {
        Expr::one()
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        canon::make_sum(iter.collect())
    }
}

impl std::iter::Product for Expr {
    fn product<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        canon::make_product(iter.collect())
    }
}
