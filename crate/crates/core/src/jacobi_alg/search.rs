//! Search for one real solution of a polynomial system, binding free
//! unknowns to small values when the system is positive-dimensional.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{solve_determined, Solution, Surd};
use crate::symexpr::{subst, Expr, Symbol};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub solution: Option<Solution>,
    /// Unknowns fixed by hand on the way to the solution.
    pub bound: Vec<(Symbol, Rational)>,
    /// The system was zero-dimensional or inconsistent without binding, and
    /// the solver proved there is no admissible real root.
    pub certified_empty: bool,
}

const TRIAL_VALUES: [(i64, i64); 7] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2)];

struct Dfs<'a> {
    polys: &'a [Expr],
    unknowns: &'a [Symbol],
    nonzero: &'a [Expr],
    budget: usize,
    /// First irrational solution seen; used if no rational one turns up.
    fallback: Option<(Solution, Vec<(Symbol, Rational)>)>,
}

impl Dfs<'_> {
    fn run(&mut self, fixed: &mut Vec<(Symbol, Rational)>) -> Result<Option<(Solution, Vec<(Symbol, Rational)>)>> {
        if self.budget == 0 {
            return Ok(None);
        }
        self.budget -= 1;
        let map: BTreeMap<Symbol, Expr> = fixed.iter().map(|(s, q)| (s.clone(), Expr::rational(q.clone()))).collect();
        let polys: Vec<Expr> = self.polys.iter().map(|p| subst(p, &map)).collect();
        let nonzero: Vec<Expr> = self.nonzero.iter().map(|p| subst(p, &map)).collect();
        let rest: Vec<Symbol> = self.unknowns.iter().filter(|u| !map.contains_key(*u)).cloned().collect();
        let with_fixed = |mut s: Solution| {
            for (k, v) in fixed.iter() {
                s.values.insert(k.clone(), Surd::rational(v.clone()));
            }
            s
        };
        match solve_determined(&polys, &rest, &nonzero) {
            Ok(out) => {
                let mut sols = out.solutions.into_iter();
                match sols.next() {
                    Some(s) if s.is_rational() => Ok(Some((with_fixed(s), fixed.clone()))),
                    Some(s) => {
                        if self.fallback.is_none() {
                            self.fallback = Some((with_fixed(s), fixed.clone()));
                        }
                        Ok(None)
                    }
                    None => Ok(None),
                }
            }
            Err(Error::PositiveDimensional(names)) => {
                let free: Vec<&str> = names.split(", ").collect();
                let Some(pick) = free.last().map(|n| Symbol::new(n)) else {
                    return Ok(None);
                };
                for (n, d) in TRIAL_VALUES {
                    fixed.push((pick.clone(), Rational::new(n.into(), d.into())));
                    let found = self.run(fixed)?;
                    fixed.pop();
                    if found.is_some() {
                        return Ok(found);
                    }
                }
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// First admissible real solution, binding free unknowns as needed and
/// preferring rational solutions.
/// `budget` caps the number of solver calls.
pub fn find_solution(polys: &[Expr], unknowns: &[Symbol], nonzero: &[Expr], budget: usize) -> Result<SearchOutcome> {
    match solve_determined(polys, unknowns, nonzero) {
        Ok(out) => {
            let empty = out.solutions.is_empty();
            return Ok(SearchOutcome {
                solution: out.solutions.into_iter().next(),
                bound: vec![],
                certified_empty: empty && out.complete,
            });
        }
        Err(Error::PositiveDimensional(_)) => {}
        Err(e) => return Err(e),
    }
    let mut dfs = Dfs { polys, unknowns, nonzero, budget, fallback: None };
    let found = dfs.run(&mut Vec::new())?.or(dfs.fallback);
    let (solution, bound) = match found {
        Some((s, b)) => (Some(s), b),
        None => (None, vec![]),
    };
    Ok(SearchOutcome { solution, bound, certified_empty: false })
}
