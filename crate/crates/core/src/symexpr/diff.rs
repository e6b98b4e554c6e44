use super::canon::{make_func, make_pow, make_product, make_sum, negate};
use super::{Expr, Func, Node, Symbol};

pub(super) fn diff(e: &Expr, v: &Symbol) -> Expr {
    if !e.contains_symbol(v) {
        return Expr::zero();
    }
    match e.node() {
        Node::Const(_) => Expr::zero(),
        Node::Sym(s) => {
            if s == v {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Sum(ts) => make_sum(ts.iter().map(|t| diff(t, v)).collect()),
        Node::Product(fs) => {
            let mut terms = Vec::new();
            for i in 0..fs.len() {
                let d = diff(&fs[i], v);
                if d.is_structurally_zero() {
                    continue;
                }
                let mut factors: Vec<Expr> = fs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
                factors.push(d);
                terms.push(make_product(factors));
            }
            make_sum(terms)
        }
        Node::Pow(b, n) => make_product(vec![Expr::int(*n), make_pow(b.clone(), n - 1), diff(b, v)]),
        Node::Func(f, a) => {
            let da = diff(a, v);
            let outer = match f {
                Func::Exp => e.clone(),
                Func::Ln => make_pow(a.clone(), -1),
                Func::Sin => make_func(Func::Cos, a.clone()),
                Func::Cos => negate(make_func(Func::Sin, a.clone())),
                Func::Sinh => make_func(Func::Cosh, a.clone()),
                Func::Cosh => make_func(Func::Sinh, a.clone()),
            };
            make_product(vec![outer, da])
        }
    }
}
