use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{groebner, Poly, Surd};
use crate::error::Error;
use crate::symexpr::ratfun::{to_poly, to_ratfun, AtomTable};
use crate::symexpr::{Expr, Symbol};
use crate::Rational;

/// One real solution, each unknown in ℚ or a single quadratic extension.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub values: BTreeMap<Symbol, Surd>,
}

impl Solution {
    /// Evaluate a rational-function expression at the solution; `None` on a
    /// missing value, a function node, a zero denominator or mixed surds.
    pub fn eval(&self, e: &Expr) -> Option<Surd> {
        use crate::symexpr::Node;
        Some(match e.node() {
            Node::Const(q) => Surd::rational(q.clone()),
            Node::Sym(x) => self.values.get(x)?.clone(),
            Node::Pow(b, k) => {
                let b = self.eval(b)?;
                let b = if *k < 0 { b.inv()? } else { b };
                (0..k.unsigned_abs()).fold(Surd::one(), |acc, _| acc * b.clone())
            }
            Node::Product(fs) => fs.iter().try_fold(Surd::one(), |acc, f| Some(acc * self.eval(f)?))?,
            Node::Sum(ts) => ts.iter().try_fold(Surd::zero(), |acc, t| Some(acc + self.eval(t)?))?,
            Node::Func(..) => return None,
        })
    }

    pub fn is_rational(&self) -> bool {
        self.values.values().all(Surd::is_rational)
    }

    /// Rational values as expressions, for substitution.
    pub fn as_exprs(&self) -> Option<BTreeMap<Symbol, Expr>> {
        self.values.iter().map(|(k, v)| v.as_rational().map(|q| (k.clone(), Expr::rational(q.clone())))).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub solutions: Vec<Solution>,
    /// False when some eliminant had a factor outside the supported tower.
    pub complete: bool,
    /// Reduced lex Gröbner basis, printed over the unknowns.
    pub basis: Vec<Expr>,
}

type Uni = Vec<Surd>;

fn trim(p: &mut Uni) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn compatible_all(p: &Uni) -> Option<Option<BigInt>> {
    let mut d: Option<BigInt> = None;
    for c in p {
        if let Some(x) = &c.d {
            match &d {
                Some(y) if y != x => return None,
                _ => d = Some(x.clone()),
            }
        }
    }
    Some(d)
}

fn uni_rem(a: &Uni, b: &Uni) -> Uni {
    let mut r = a.clone();
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap().clone() * lead_inv.clone();
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bc.clone();
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn uni_eval(p: &Uni, x: &Surd) -> Surd {
    let mut acc = Surd::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Divide by (x - r), assuming r is a root.
fn deflate(p: &Uni, r: &Surd) -> Uni {
    let n = p.len() - 1;
    let mut q = vec![Surd::zero(); n];
    let mut carry = Surd::zero();
    for i in (0..n).rev() {
        carry = p[i + 1].clone() + carry * r.clone();
        q[i] = carry.clone();
    }
    q
}

const FACTOR_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > FACTOR_LIMIT {
        return None;
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if k > 0 {
            primes.push((p, k));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, k) in primes {
        let cur = divs.clone();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Some(divs.into_iter().map(BigInt::from).collect())
}

/// n = s² · d with d squarefree; `None` if n is too large to factor.
fn squarefree_split(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let v = n.abs().to_u64()?;
    if v > FACTOR_LIMIT {
        return None;
    }
    let (mut s, mut d, mut m) = (1u64, 1u64, v);
    let mut p = 2u64;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        s *= p.pow(k / 2);
        if k % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= m;
    let d = if n.is_negative() { -BigInt::from(d) } else { BigInt::from(d) };
    Some((BigInt::from(s), d))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Square root of a nonnegative field element inside ℚ or ℚ(√field), or a
/// fresh extension when `field` is `None` and the argument is rational.
/// `Err(())` means the root lies outside the supported tower.
fn sqrt_in(x: &Surd, field: &Option<BigInt>) -> Result<Option<Surd>, ()> {
    if x.signum() < 0 {
        return Ok(None);
    }
    if let Some(q) = x.as_rational() {
        if let Some(r) = rational_sqrt(q) {
            return Ok(Some(Surd::rational(r)));
        }
        // √(p/r) = √(p·r)/r = s√d / r
        let pr = q.numer() * q.denom();
        let (s, d) = squarefree_split(&pr).ok_or(())?;
        if field.as_ref().is_some_and(|f| *f != d) {
            return Err(());
        }
        return Ok(Some(Surd::new(Rational::zero(), Rational::new(s, q.denom().clone()), d)));
    }
    // (u + v√d) = (p + r√d)²  ⇔  p² + d r² = u, 2pr = v.
    let d = x.d.clone().unwrap();
    let dq = Rational::from_integer(d.clone());
    let norm = &x.a * &x.a - &x.b * &x.b * &dq;
    let t = rational_sqrt(&norm).ok_or(())?;
    for p2 in [(&x.a + &t) / Rational::from_integer(2.into()), (&x.a - &t) / Rational::from_integer(2.into())] {
        if let Some(p) = rational_sqrt(&p2) {
            if p.is_zero() {
                continue;
            }
            let r = &x.b / (Rational::from_integer(2.into()) * &p);
            let cand = Surd::new(p, r, d.clone());
            if cand.clone() * cand.clone() == *x {
                return Ok(Some(cand));
            }
        }
    }
    Err(())
}

/// Real roots inside the tower; the flag is false when some factor could
/// not be resolved.
fn real_roots(p: &Uni, field: &Option<BigInt>) -> (Vec<Surd>, bool) {
    let mut p = p.clone();
    trim(&mut p);
    let mut roots = Vec::new();
    if p.len() <= 1 {
        return (roots, true);
    }
    let Some(pfield) = compatible_all(&p) else {
        return (roots, false);
    };
    let field = pfield.or_else(|| field.clone());
    if p[0].is_zero() {
        roots.push(Surd::zero());
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
    }
    let mut complete = true;
    if p.iter().all(Surd::is_rational) && p.len() > 2 {
        // Rational root theorem on the integer-cleared polynomial.
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.a.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (&c.a * Rational::from_integer(lcm.clone())).to_integer()).collect();
        match (positive_divisors(&ints[0]), positive_divisors(ints.last().unwrap())) {
            (Some(ps), Some(qs)) => {
                let mut cands: Vec<Rational> = Vec::new();
                for num in &ps {
                    for den in &qs {
                        let r = Rational::new(num.clone(), den.clone());
                        cands.push(r.clone());
                        cands.push(-r);
                    }
                }
                cands.sort();
                cands.dedup();
                for r in cands {
                    let rs = Surd::rational(r);
                    while p.len() > 1 && uni_eval(&p, &rs).is_zero() {
                        p = deflate(&p, &rs);
                        if !roots.contains(&rs) {
                            roots.push(rs.clone());
                        }
                    }
                }
            }
            _ => complete = false,
        }
    }
    match p.len() {
        0 | 1 => {}
        2 => {
            let r = -(p[0].clone() * p[1].inv().unwrap());
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        3 => {
            let (c, b, a) = (p[0].clone(), p[1].clone(), p[2].clone());
            let four = Surd::rational(Rational::from_integer(4.into()));
            let disc = b.clone() * b.clone() - four * a.clone() * c;
            match sqrt_in(&disc, &field) {
                Ok(None) => {}
                Ok(Some(s)) => {
                    if !field.as_ref().is_none_or(|f| s.d.as_ref().is_none_or(|d| d == f)) {
                        complete = false;
                    } else {
                        let two_a_inv = (Surd::rational(Rational::from_integer(2.into())) * a).inv().unwrap();
                        for sgn in [1, -1] {
                            let sq = if sgn == 1 { s.clone() } else { -s.clone() };
                            let r = (-b.clone() + sq) * two_a_inv.clone();
                            if !roots.contains(&r) {
                                roots.push(r);
                            }
                        }
                    }
                }
                Err(()) => complete = false,
            }
        }
        _ => complete = false,
    }
    (roots, complete)
}

fn cmp_surd(x: &Surd, y: &Surd) -> Ordering {
    match (x.is_rational(), y.is_rational()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => x.a.cmp(&y.a),
        (false, false) => {
            if x.compatible(y) {
                (x.clone() - y.clone()).signum().cmp(&0)
            } else {
                x.d.cmp(&y.d)
            }
        }
    }
}

fn eval_poly(p: &Poly, vals: &[Surd]) -> Surd {
    p.eval_in(&|i| vals[i].clone())
}

/// Solve a zero-dimensional polynomial system exactly.
///
/// Unknowns are ordered by name; lex elimination puts the last unknown in
/// the univariate eliminant. Solutions are sorted by their values in that
/// name order, rationals first.
pub fn solve_determined(polys: &[Expr], unknowns: &[Symbol], nonzero: &[Expr]) -> Result<SolveOutcome, Error> {
    let mut vars = unknowns.to_vec();
    vars.sort();
    vars.dedup();
    let ps: Vec<Poly> = polys.iter().map(|e| to_poly(e, &vars)).collect::<Result<_, _>>()?;
    let mut conds = Vec::new();
    for c in nonzero {
        let mut t = AtomTable::closed(&vars);
        conds.push(to_ratfun(c, &mut t)?);
    }
    let gb = groebner(&ps);
    let atoms: Vec<Expr> = vars.iter().map(Expr::symbol).collect();
    let basis: Vec<Expr> = gb.iter().map(|g| g.to_expr(&atoms)).collect();
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(SolveOutcome { solutions: vec![], complete: true, basis });
    }
    let n = vars.len();
    let free: Vec<&str> = (0..n)
        .filter(|&i| !gb.iter().any(|g| g.leading_monomial().and_then(|m| m.pure_power_var()) == Some(i)))
        .map(|i| vars[i].name())
        .collect();
    if !free.is_empty() {
        return Err(Error::PositiveDimensional(free.join(", ")));
    }

    let mut complete = true;
    let mut partials: Vec<Vec<Surd>> = vec![vec![Surd::zero(); n]];
    for i in (0..n).rev() {
        let relevant: Vec<&Poly> = gb.iter().filter(|g| g.min_var() == Some(i)).collect();
        let mut next = Vec::new();
        for vals in &partials {
            let field = vals[i + 1..].iter().find_map(|v| v.d.clone());
            let mut g: Uni = Vec::new();
            for p in &relevant {
                let deg = p.degree_in(i) as usize;
                let mut uni = vec![Surd::zero(); deg + 1];
                for (m, c) in p.terms() {
                    let mut t = Surd::rational(c.clone());
                    for (j, &e) in m.exponents().iter().enumerate().skip(i + 1) {
                        for _ in 0..e {
                            t = t * vals[j].clone();
                        }
                    }
                    let k = m.degree(i) as usize;
                    uni[k] = uni[k].clone() + t;
                }
                trim(&mut uni);
                if uni.is_empty() {
                    continue;
                }
                if compatible_all(&uni).is_none() {
                    complete = false;
                    g.clear();
                    break;
                }
                g = if g.is_empty() { uni } else { uni_gcd(&g, &uni) };
            }
            if g.is_empty() {
                complete = false;
                continue;
            }
            let (roots, ok) = real_roots(&g, &field);
            complete &= ok;
            for r in roots {
                if field.is_some() && !r.compatible(&Surd::new(Rational::zero(), Rational::one(), field.clone().unwrap())) {
                    complete = false;
                    continue;
                }
                let mut v = vals.clone();
                v[i] = r;
                next.push(v);
            }
        }
        partials = next;
    }

    let mut solutions = Vec::new();
    'outer: for vals in partials {
        for p in &ps {
            if !eval_poly(p, &vals).is_zero() {
                continue 'outer;
            }
        }
        for c in &conds {
            if eval_poly(&c.num, &vals).is_zero() || eval_poly(&c.den, &vals).is_zero() {
                continue 'outer;
            }
        }
        solutions.push(Solution { values: vars.iter().cloned().zip(vals).collect() });
    }
    solutions.sort_by(|a, b| {
        for v in &vars {
            let o = cmp_surd(&a.values[v], &b.values[v]);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    });
    solutions.dedup();
    Ok(SolveOutcome { solutions, complete, basis })
}
