//! Canonical-form builders.
//!
//! Rules: sums and products are flattened and sorted, like terms and like
//! bases are collected, constants folded, products distributed over sums with
//! positive exponent, sums under a negative power are scaled to a monic
//! leading term, exp factors are merged, and sin/sinh/cos/cosh absorb the sign
//! of their argument.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Expr, Func, Node};
use crate::Rational;

fn rat_pow(q: &Rational, n: i64) -> Rational {
    let e = i32::try_from(n).expect("exponent out of range");
    num_traits::Pow::pow(q, e)
}

fn monomial_from_factors(fs: &[Expr]) -> Expr {
    match fs.len() {
        0 => Expr::one(),
        1 => fs[0].clone(),
        _ => Expr::from_node(Node::Product(fs.to_vec())),
    }
}

/// Split a canonical term into its rational coefficient and monomial.
pub(super) fn split_coeff(t: &Expr) -> (Rational, Expr) {
    match t.node() {
        Node::Const(q) => (q.clone(), Expr::one()),
        Node::Product(fs) => match fs[0].node() {
            Node::Const(q) => (q.clone(), monomial_from_factors(&fs[1..])),
            _ => (Rational::one(), t.clone()),
        },
        _ => (Rational::one(), t.clone()),
    }
}

fn with_coeff(q: Rational, m: Expr) -> Expr {
    if m.is_structurally_one() {
        return Expr::rational(q);
    }
    if q.is_one() {
        return m;
    }
    let mut fs = vec![Expr::rational(q)];
    match m.node() {
        Node::Product(xs) => fs.extend(xs.iter().cloned()),
        _ => fs.push(m.clone()),
    }
    Expr::from_node(Node::Product(fs))
}

pub(super) fn leading_negative(e: &Expr) -> bool {
    match e.node() {
        Node::Const(q) => q.is_negative(),
        Node::Product(fs) => matches!(fs[0].node(), Node::Const(q) if q.is_negative()),
        Node::Sum(ts) => leading_negative(&ts[0]),
        _ => false,
    }
}

pub(super) fn negate(e: Expr) -> Expr {
    make_product(vec![Expr::int(-1), e])
}

fn add_term(acc: &mut BTreeMap<Expr, Rational>, t: &Expr) {
    if let Node::Sum(ts) = t.node() {
        for s in ts {
            add_term(acc, s);
        }
        return;
    }
    let (q, m) = split_coeff(t);
    if q.is_zero() {
        return;
    }
    let slot = acc.entry(m).or_insert_with(Rational::zero);
    *slot += q;
}

pub(crate) fn make_sum(terms: Vec<Expr>) -> Expr {
    let mut acc = BTreeMap::new();
    for t in &terms {
        add_term(&mut acc, t);
    }
    let mut out: Vec<Expr> = acc
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(m, q)| with_coeff(q, m))
        .collect();
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::from_node(Node::Sum(out)),
    }
}

/// Scale a sum so its leading term has coefficient 1: `s = c * t`.
fn monic(s: &Expr) -> (Rational, Expr) {
    let Node::Sum(ts) = s.node() else {
        return (Rational::one(), s.clone());
    };
    let (c, _) = split_coeff(&ts[0]);
    if c.is_one() {
        return (c, s.clone());
    }
    let scaled = ts
        .iter()
        .map(|t| {
            let (q, m) = split_coeff(t);
            with_coeff(q / &c, m)
        })
        .collect();
    (c, Expr::from_node(Node::Sum(scaled)))
}

struct ProductAcc {
    coeff: Rational,
    powers: BTreeMap<Expr, i64>,
    exp_args: Vec<Expr>,
}

impl ProductAcc {
    fn push(&mut self, f: &Expr, n: i64) {
        match f.node() {
            Node::Const(q) => {
                if q.is_zero() && n < 0 {
                    *self.powers.entry(f.clone()).or_insert(0) += n;
                } else {
                    self.coeff *= rat_pow(q, n);
                }
            }
            Node::Product(fs) => fs.iter().for_each(|g| self.push(g, n)),
            Node::Pow(b, m) => self.push_base(b, m * n),
            Node::Func(Func::Exp, u) => {
                let arg = if n == 1 { u.clone() } else { make_product(vec![Expr::int(n), u.clone()]) };
                self.exp_args.push(arg);
            }
            _ => self.push_base(f, n),
        }
    }

    fn push_base(&mut self, b: &Expr, n: i64) {
        match b.node() {
            Node::Const(q) if !q.is_zero() => self.coeff *= rat_pow(q, n),
            Node::Sum(_) => {
                let (c, t) = monic(b);
                self.coeff *= rat_pow(&c, n);
                *self.powers.entry(t).or_insert(0) += n;
            }
            _ => *self.powers.entry(b.clone()).or_insert(0) += n,
        }
    }
}

fn assemble(coeff: Rational, factors: Vec<Expr>) -> Expr {
    if coeff.is_zero() {
        return Expr::zero();
    }
    if factors.is_empty() {
        return Expr::rational(coeff);
    }
    if coeff.is_one() && factors.len() == 1 {
        return factors.into_iter().next().unwrap();
    }
    let mut fs = Vec::with_capacity(factors.len() + 1);
    if !coeff.is_one() {
        fs.push(Expr::rational(coeff));
    }
    fs.extend(factors);
    Expr::from_node(Node::Product(fs))
}

pub(crate) fn make_product(factors: Vec<Expr>) -> Expr {
    let mut acc = ProductAcc { coeff: Rational::one(), powers: BTreeMap::new(), exp_args: Vec::new() };
    for f in &factors {
        acc.push(f, 1);
    }
    if acc.coeff.is_zero() {
        return Expr::zero();
    }
    if !acc.exp_args.is_empty() {
        let e = make_func(Func::Exp, make_sum(std::mem::take(&mut acc.exp_args)));
        if !e.is_structurally_one() {
            *acc.powers.entry(e).or_insert(0) += 1;
        }
    }
    let mut plain = Vec::new();
    let mut expand = Vec::new();
    for (b, n) in acc.powers {
        if n == 0 {
            continue;
        }
        if n > 0 && matches!(b.node(), Node::Sum(_)) {
            expand.push((b, n));
        } else if n == 1 {
            plain.push(b);
        } else {
            plain.push(Expr::from_node(Node::Pow(b, n)));
        }
    }
    let head = assemble(acc.coeff, plain);
    if expand.is_empty() {
        return head;
    }
    let mut terms = vec![head];
    for (s, n) in expand {
        let s_terms = s.terms();
        for _ in 0..n {
            let mut next = Vec::with_capacity(terms.len() * s_terms.len());
            for t in &terms {
                for u in &s_terms {
                    next.push(make_product(vec![t.clone(), u.clone()]));
                }
            }
            terms = make_sum(next).terms();
        }
    }
    make_sum(terms)
}

pub(crate) fn make_pow(b: Expr, n: i64) -> Expr {
    if n == 0 {
        return Expr::one();
    }
    if n == 1 {
        return b;
    }
    match b.node() {
        Node::Const(q) => {
            if q.is_zero() {
                if n > 0 {
                    Expr::zero()
                } else {
                    Expr::from_node(Node::Pow(b.clone(), n))
                }
            } else {
                Expr::rational(rat_pow(q, n))
            }
        }
        Node::Product(fs) => make_product(fs.iter().map(|f| make_pow(f.clone(), n)).collect()),
        Node::Pow(c, m) => make_pow(c.clone(), m.checked_mul(n).expect("exponent overflow")),
        Node::Func(Func::Exp, u) => make_func(Func::Exp, make_product(vec![Expr::int(n), u.clone()])),
        Node::Sum(_) => make_product(vec![Expr::from_node(Node::Pow(b.clone(), n))]),
        _ => Expr::from_node(Node::Pow(b, n)),
    }
}

pub(crate) fn make_func(f: Func, a: Expr) -> Expr {
    let raw = |f, a| Expr::from_node(Node::Func(f, a));
    match f {
        Func::Exp => {
            if a.is_structurally_zero() {
                Expr::one()
            } else {
                raw(f, a)
            }
        }
        Func::Ln => {
            if a.is_structurally_one() {
                Expr::zero()
            } else if let Node::Func(Func::Exp, u) = a.node() {
                u.clone()
            } else {
                raw(f, a)
            }
        }
        Func::Sin | Func::Sinh => {
            if a.is_structurally_zero() {
                Expr::zero()
            } else if leading_negative(&a) {
                negate(raw(f, negate(a)))
            } else {
                raw(f, a)
            }
        }
        Func::Cos | Func::Cosh => {
            if a.is_structurally_zero() {
                Expr::one()
            } else if leading_negative(&a) {
                raw(f, negate(a))
            } else {
                raw(f, a)
            }
        }
    }
}

/// Rebuild an expression bottom-up through the canonical builders.
pub fn normalize(e: &Expr) -> Expr {
    match e.node() {
        Node::Const(_) | Node::Sym(_) => e.clone(),
        Node::Pow(b, n) => make_pow(normalize(b), *n),
        Node::Product(fs) => make_product(fs.iter().map(normalize).collect()),
        Node::Sum(ts) => make_sum(ts.iter().map(normalize).collect()),
        Node::Func(f, a) => make_func(*f, normalize(a)),
    }
}
