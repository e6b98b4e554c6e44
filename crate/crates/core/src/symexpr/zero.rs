use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ratfun::is_rational_zero;
use super::{Expr, Symbol};
use crate::error::EvalError;
use crate::scalar::{HpFloat, Scalar};
use crate::Rational;

/// Outcome of the two-tier zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroVerdict {
    /// Canonical form or cleared numerator is the zero polynomial.
    ExactZero,
    /// Below threshold at every sample point.
    NumericZero,
    NonZero,
    /// Not enough sample points inside the domain.
    Undetermined,
}

impl ZeroVerdict {
    pub fn is_zero(self) -> bool {
        matches!(self, ZeroVerdict::ExactZero | ZeroVerdict::NumericZero)
    }
}

impl fmt::Display for ZeroVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroVerdict::ExactZero => "exact-zero",
            ZeroVerdict::NumericZero => "numeric-zero",
            ZeroVerdict::NonZero => "nonzero",
            ZeroVerdict::Undetermined => "undetermined",
        })
    }
}

/// Seeded sampler for the numeric tier.
#[derive(Clone, Debug)]
pub struct ZeroTester {
    rng: ChaCha8Rng,
    pub points: usize,
    /// Samples are rejected when evaluation leaves the domain; give up after
    /// this many rejections per point.
    pub max_rejections: usize,
    pub threshold: f64,
}

impl ZeroTester {
    pub fn new(seed: u64) -> Self {
        ZeroTester { rng: ChaCha8Rng::seed_from_u64(seed), points: 20, max_rejections: 200, threshold: 1e-30 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform draw from {p/q : |p| ≤ 50, 1 ≤ q ≤ 50}.
    pub fn sample_rational(&mut self) -> Rational {
        let p: i64 = self.rng.gen_range(-50..=50);
        let q: i64 = self.rng.gen_range(1..=50);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn sample_point(&mut self, syms: impl IntoIterator<Item = Symbol>) -> BTreeMap<Symbol, Rational> {
        syms.into_iter().map(|s| (s, self.sample_rational())).collect()
    }

    pub fn test(&mut self, e: &Expr) -> ZeroVerdict {
        if e.is_structurally_zero() {
            return ZeroVerdict::ExactZero;
        }
        match is_rational_zero(e) {
            Some(true) => return ZeroVerdict::ExactZero,
            Some(false) if !e.has_functions() => return ZeroVerdict::NonZero,
            _ => {}
        }
        let syms = e.free_symbols();
        let threshold = HpFloat::from_f64(self.threshold);
        for _ in 0..self.points {
            let mut accepted = false;
            for _ in 0..self.max_rejections {
                let at = self.sample_point(syms.iter().cloned());
                let look = |s: &Symbol| at.get(s).map(HpFloat::from_rational);
                match super::eval_with::<HpFloat>(e, &look) {
                    Ok(v) => {
                        if v.abs() >= threshold {
                            return ZeroVerdict::NonZero;
                        }
                        accepted = true;
                        break;
                    }
                    Err(EvalError::Domain(_)) => continue,
                    Err(_) => return ZeroVerdict::Undetermined,
                }
            }
            if !accepted {
                return ZeroVerdict::Undetermined;
            }
        }
        ZeroVerdict::NumericZero
    }
}

/// Two-tier zero test with a tester seeded by `seed`.
pub fn is_zero(e: &Expr, seed: u64) -> ZeroVerdict {
    ZeroTester::new(seed).test(e)
}
