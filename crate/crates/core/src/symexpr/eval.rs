use std::collections::BTreeMap;

use super::{Expr, Node, Symbol};
use crate::error::EvalError;
use crate::scalar::{HpFloat, Scalar};
use crate::Rational;

/// Exact rational values for symbols.
pub type Assignment = BTreeMap<Symbol, Rational>;

/// Result of [`eval`]: exact when no transcendental function occurs.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(HpFloat),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64(),
            Value::Approx(x) => x.to_f64(),
        }
    }
}

/// Evaluate into any [`Scalar`], looking symbols up through `lookup`.
pub fn eval_with<T: Scalar>(e: &Expr, lookup: &dyn Fn(&Symbol) -> Option<T>) -> Result<T, EvalError> {
    Ok(match e.node() {
        Node::Const(q) => T::from_rational(q),
        Node::Sym(s) => lookup(s).ok_or_else(|| EvalError::Unbound(s.name().to_string()))?,
        Node::Pow(b, n) => eval_with(b, lookup)?.powi(*n)?,
        Node::Product(fs) => {
            let mut acc = T::one();
            for f in fs {
                acc = acc * eval_with(f, lookup)?;
            }
            acc
        }
        Node::Sum(ts) => {
            let mut acc = T::zero();
            for t in ts {
                acc = acc + eval_with(t, lookup)?;
            }
            acc
        }
        Node::Func(f, a) => eval_with(a, lookup)?.apply(*f)?,
    })
}

/// Exact evaluation when possible, otherwise high-precision floating point.
pub fn eval(e: &Expr, at: &Assignment) -> Result<Value, EvalError> {
    if e.has_functions() {
        let look = |s: &Symbol| at.get(s).map(HpFloat::from_rational);
        eval_with::<HpFloat>(e, &look).map(Value::Approx)
    } else {
        let look = |s: &Symbol| at.get(s).cloned();
        eval_with::<Rational>(e, &look).map(Value::Exact)
    }
}

pub fn eval_f64(e: &Expr, at: &BTreeMap<Symbol, f64>) -> Result<f64, EvalError> {
    let look = |s: &Symbol| at.get(s).copied();
    eval_with::<f64>(e, &look)
}
