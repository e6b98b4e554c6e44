//! Scalar types that expressions and matrices are generic over.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::EvalError;
use crate::symexpr::Func;
use crate::Rational;

/// Commutative ring operations needed by the generic matrix and tensor code.
pub trait Ring:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// A ring that expressions can be evaluated into.
pub trait Scalar: Ring + fmt::Debug {
    fn from_rational(q: &Rational) -> Self;
    fn try_inv(&self) -> Result<Self, EvalError>;
    fn apply(&self, f: Func) -> Result<Self, EvalError>;
    fn to_f64(&self) -> f64;

    fn powi(&self, n: i64) -> Result<Self, EvalError> {
        let base = if n < 0 { self.try_inv()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq.clone();
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }
}

fn check_finite(v: f64, what: &str) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::Domain(format!("{what} is not finite")))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_rational(q: &Rational) -> Self {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }

            fn try_inv(&self) -> Result<Self, EvalError> {
                if *self == 0.0 {
                    return Err(EvalError::Domain("division by zero".into()));
                }
                Ok(1.0 / *self)
            }

            fn apply(&self, f: Func) -> Result<Self, EvalError> {
                let x = *self;
                if f == Func::Ln && x <= 0.0 {
                    return Err(EvalError::Domain("ln of a non-positive number".into()));
                }
                let v = match f {
                    Func::Exp => x.exp(),
                    Func::Ln => x.ln(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                };
                check_finite(v as f64, f.name()).map(|_| v)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn try_inv(&self) -> Result<Self, EvalError> {
        if self.is_zero() {
            return Err(EvalError::Domain("division by zero".into()));
        }
        Ok(self.recip())
    }

    fn apply(&self, f: Func) -> Result<Self, EvalError> {
        Err(EvalError::NotExact(f.name().into()))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Working precision of [`HpFloat`] in bits.
pub const HP_PRECISION: usize = 512;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

/// Binary floating point with [`HP_PRECISION`] bits of mantissa.
#[derive(Clone)]
pub struct HpFloat(BigFloat);

impl HpFloat {
    pub fn from_i64(n: i64) -> Self {
        HpFloat(BigFloat::from_i64(n, HP_PRECISION))
    }

    pub fn from_f64(x: f64) -> Self {
        HpFloat(BigFloat::from_f64(x, HP_PRECISION))
    }

    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => HpFloat::from_i64(v),
            None => CONSTS.with(|cc| {
                HpFloat(BigFloat::parse(&n.to_string(), Radix::Dec, HP_PRECISION, RM, &mut cc.borrow_mut()))
            }),
        }
    }

    pub fn abs(&self) -> Self {
        HpFloat(self.0.abs())
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn div(&self, other: &Self) -> Self {
        HpFloat(self.0.div(&other.0, HP_PRECISION, RM))
    }

    pub fn partial_cmp_f64(&self, x: f64) -> Option<Ordering> {
        self.partial_cmp(&HpFloat::from_f64(x))
    }
}

impl fmt::Debug for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl PartialEq for HpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for HpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl Add for HpFloat {
    type Output = HpFloat;
    fn add(self, rhs: HpFloat) -> HpFloat {
        HpFloat(self.0.add(&rhs.0, HP_PRECISION, RM))
    }
}

impl Sub for HpFloat {
    type Output = HpFloat;
    fn sub(self, rhs: HpFloat) -> HpFloat {
        HpFloat(self.0.sub(&rhs.0, HP_PRECISION, RM))
    }
}

impl Mul for HpFloat {
    type Output = HpFloat;
    fn mul(self, rhs: HpFloat) -> HpFloat {
        HpFloat(self.0.mul(&rhs.0, HP_PRECISION, RM))
    }
}

impl Neg for HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        HpFloat(self.0.neg())
    }
}

impl Zero for HpFloat {
    fn zero() -> Self {
        HpFloat::from_i64(0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for HpFloat {
    fn one() -> Self {
        HpFloat::from_i64(1)
    }
}

impl Scalar for HpFloat {
    fn from_rational(q: &Rational) -> Self {
        let n = HpFloat::from_bigint(q.numer());
        if q.denom().is_one() {
            return n;
        }
        n.div(&HpFloat::from_bigint(q.denom()))
    }

    fn try_inv(&self) -> Result<Self, EvalError> {
        if self.0.is_zero() {
            return Err(EvalError::Domain("division by zero".into()));
        }
        Ok(HpFloat::one().div(self))
    }

    fn apply(&self, f: Func) -> Result<Self, EvalError> {
        if f == Func::Ln && (self.0.is_zero() || self.0.is_negative()) {
            return Err(EvalError::Domain("ln of a non-positive number".into()));
        }
        let v = CONSTS.with(|cc| {
            let cc = &mut cc.borrow_mut();
            let x = &self.0;
            match f {
                Func::Exp => x.exp(HP_PRECISION, RM, cc),
                Func::Ln => x.ln(HP_PRECISION, RM, cc),
                Func::Sin => x.sin(HP_PRECISION, RM, cc),
                Func::Cos => x.cos(HP_PRECISION, RM, cc),
                Func::Sinh => x.sinh(HP_PRECISION, RM, cc),
                Func::Cosh => x.cosh(HP_PRECISION, RM, cc),
            }
        });
        if v.is_nan() || v.is_inf() {
            return Err(EvalError::Domain(format!("{} overflowed", f.name())));
        }
        Ok(HpFloat(v))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        self.0.to_string().parse().unwrap_or(f64::NAN)
    }
}
