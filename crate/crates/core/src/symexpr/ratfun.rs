//! Conversion of expressions to quotients of polynomials over atoms.
//!
//! Symbols and function applications become polynomial variables; negative
//! powers become denominators. No gcd is taken, so the quotient is not
//! reduced, but the numerator is the zero polynomial exactly when the
//! expression is identically zero as a rational function of its atoms.

use std::collections::HashMap;

use super::{Expr, Node, Symbol};
use crate::error::Error;
use crate::poly::Poly;

/// Registry mapping atoms to polynomial variable indices.
#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    atoms: Vec<Expr>,
    index: HashMap<Expr, usize>,
    frozen: bool,
}

impl AtomTable {
    pub fn new() -> Self {
        AtomTable::default()
    }

    /// Table that only accepts the given symbols, in this index order.
    pub fn closed(vars: &[Symbol]) -> Self {
        let mut t = AtomTable::new();
        for v in vars {
            t.intern(&Expr::symbol(v)).expect("open table");
        }
        t.frozen = true;
        t
    }

    pub fn atoms(&self) -> &[Expr] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, e: &Expr) -> Option<usize> {
        self.index.get(e).copied()
    }

    fn intern(&mut self, e: &Expr) -> Result<usize, Error> {
        if let Some(&i) = self.index.get(e) {
            return Ok(i);
        }
        if self.frozen {
            return Err(Error::NotPolynomial(format!("unexpected `{e}`")));
        }
        let i = self.atoms.len();
        self.atoms.push(e.clone());
        self.index.insert(e.clone(), i);
        Ok(i)
    }
}

/// `num / den` with polynomial numerator and denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFun {
    pub num: Poly,
    pub den: Poly,
}

impl RatFun {
    fn poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    fn add(&self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun { num: self.num.add(&o.num), den: self.den.clone() };
        }
        if o.den.is_constant() && self.den.is_constant() {
            let c = o.den.constant_term() / self.den.constant_term();
            return RatFun { num: self.num.scale(&c).add(&o.num), den: o.den.clone() };
        }
        RatFun { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    fn mul(&self, o: &RatFun) -> RatFun {
        RatFun { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }
}

pub fn to_ratfun(e: &Expr, table: &mut AtomTable) -> Result<RatFun, Error> {
    Ok(match e.node() {
        Node::Const(q) => RatFun::poly(Poly::constant(q.clone())),
        Node::Sym(_) | Node::Func(..) => RatFun::poly(Poly::var(table.intern(e)?)),
        Node::Pow(b, n) => {
            let r = to_ratfun(b, table)?;
            let k = u32::try_from(n.unsigned_abs()).map_err(|_| Error::Invalid("exponent too large".into()))?;
            if *n > 0 {
                RatFun { num: r.num.pow(k), den: r.den.pow(k) }
            } else {
                if r.num.is_zero() {
                    return Err(Error::Invalid("division by zero".into()));
                }
                RatFun { num: r.den.pow(k), den: r.num.pow(k) }
            }
        }
        Node::Product(fs) => {
            let mut acc = RatFun::poly(Poly::one());
            for f in fs {
                acc = acc.mul(&to_ratfun(f, table)?);
            }
            acc
        }
        Node::Sum(ts) => {
            let mut acc = RatFun::poly(Poly::zero());
            for t in ts {
                acc = acc.add(&to_ratfun(t, table)?);
            }
            acc
        }
    })
}

/// Polynomial in the given symbols; rejects denominators and other atoms.
pub fn to_poly(e: &Expr, vars: &[Symbol]) -> Result<Poly, Error> {
    let mut t = AtomTable::closed(vars);
    let r = to_ratfun(e, &mut t)?;
    if !r.den.is_constant() {
        return Err(Error::NotPolynomial(format!("`{e}` has a non-constant denominator")));
    }
    Ok(r.num.scale(&r.den.constant_term().recip()))
}

/// True when the expression is identically zero as a rational function of
/// its atoms. `None` when the conversion fails (zero denominator).
pub fn is_rational_zero(e: &Expr) -> Option<bool> {
    let mut t = AtomTable::new();
    to_ratfun(e, &mut t).ok().map(|r| r.num.is_zero())
}
