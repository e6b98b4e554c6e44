use std::fmt;

use num_traits::{One, Signed};

use super::canon::{leading_negative, negate};
use super::{Expr, Node};
use crate::Rational;

// Binding strength of the printed form: sums < products < powers < atoms.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const POWER: u8 = 3;
const ATOM: u8 = 4;

fn precedence(e: &Expr) -> u8 {
    match e.node() {
        Node::Const(q) => {
            if q.is_negative() {
                SUM
            } else if q.denom().is_one() {
                ATOM
            } else {
                PRODUCT
            }
        }
        Node::Sym(_) | Node::Func(..) => ATOM,
        Node::Pow(..) => POWER,
        Node::Product(_) => {
            if leading_negative(e) {
                SUM
            } else {
                PRODUCT
            }
        }
        Node::Sum(_) => SUM,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, need: u8) -> fmt::Result {
    if precedence(e) < need {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(q) => write_rational(f, q),
            Node::Sym(s) => write!(f, "{s}"),
            Node::Func(func, a) => write!(f, "{}({a})", func.name()),
            Node::Pow(b, n) => {
                write_child(f, b, ATOM)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Node::Product(fs) => {
                let mut rest = &fs[..];
                if let Node::Const(q) = fs[0].node() {
                    if *q == -Rational::one() {
                        f.write_str("-")?;
                    } else {
                        write_rational(f, q)?;
                        f.write_str("*")?;
                    }
                    rest = &fs[1..];
                }
                for (i, x) in rest.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write_child(f, x, POWER)?;
                }
                Ok(())
            }
            Node::Sum(ts) => {
                write!(f, "{}", ts[0])?;
                for t in &ts[1..] {
                    if leading_negative(t) {
                        f.write_str(" - ")?;
                        write_child(f, &negate(t.clone()), PRODUCT)?;
                    } else {
                        f.write_str(" + ")?;
                        write_child(f, t, PRODUCT)?;
                    }
                }
                Ok(())
            }
        }
    }
}
