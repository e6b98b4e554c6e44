use std::collections::VecDeque;

use num_traits::One;

use super::{Monomial, Poly};

/// Full reduction of `p` modulo `basis`.
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let mut p = p.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = lm.quotient_of(&m);
                p = p.sub(&g.mul_monomial(&q, &(c / lc)));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                p.add_term(m, -c);
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&fm.quotient_of(&l), &fc.recip());
    let b = g.mul_monomial(&gm.quotient_of(&l), &gc.recip());
    a.sub(&b)
}

/// Reduced Gröbner basis under lex order (variable 0 largest), monic and
/// sorted by leading monomial. The unit ideal yields `[1]`.
pub fn groebner(polys: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = Vec::new();
    for p in polys {
        let r = reduce(p, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    if g.iter().any(Poly::is_constant) {
        return vec![Poly::one()];
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let (lm_i, lm_j) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
        if lm_i.coprime(lm_j) {
            continue;
        }
        let l = lm_i.lcm(lm_j);
        // Gebauer–Möller style chain criterion on a third basis element.
        if (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading_monomial().unwrap().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        }) {
            continue;
        }
        let r = reduce(&s_poly(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return vec![Poly::one()];
        }
        let k = g.len();
        g.push(r);
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }
    interreduce(g)
}

fn interreduce(g: Vec<Poly>) -> Vec<Poly> {
    let lms: Vec<Monomial> = g.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
    let mut keep: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, m)| {
            j != i && m.divides(&lms[i]) && (m != &lms[i] || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = Poly::monomial(keep[i].leading_monomial().unwrap().clone(), One::one());
        let tail = keep[i].sub(&lead);
        out.push(lead.add(&reduce(&tail, &others)).monic());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}
