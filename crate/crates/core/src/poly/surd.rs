use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Element `a + b·√d` of a real quadratic extension ℚ(√d), `d` a squarefree
/// integer other than 1. With `b = 0` the element is rational and `d` is
/// `None`. Mixing two different radicands panics; callers check
/// [`Surd::compatible`] first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
    pub d: Option<BigInt>,
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd { a, b: Rational::zero(), d: None }
    }

    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            Surd::rational(a)
        } else {
            Surd { a, b, d: Some(d) }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_none()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn compatible(&self, other: &Surd) -> bool {
        match (&self.d, &other.d) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        }
    }

    fn radicand(&self, other: &Surd) -> Option<BigInt> {
        match (&self.d, &other.d) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixed quadratic extensions");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn build(a: Rational, b: Rational, d: Option<BigInt>) -> Surd {
        match d {
            Some(d) => Surd::new(a, b, d),
            None => Surd::rational(a),
        }
    }

    pub fn inv(&self) -> Option<Surd> {
        match &self.d {
            None => (!self.a.is_zero()).then(|| Surd::rational(self.a.recip())),
            Some(d) => {
                let norm = &self.a * &self.a - &self.b * &self.b * Rational::from_integer(d.clone());
                if norm.is_zero() {
                    return None;
                }
                Some(Surd::new(&self.a / &norm, -&self.b / &norm, d.clone()))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        match &self.d {
            None => a,
            Some(d) => a + self.b.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt(),
        }
    }

    /// Sign of the real number, exact.
    pub fn signum(&self) -> i32 {
        let Some(d) = &self.d else {
            return if self.a.is_zero() { 0 } else if self.a.is_positive() { 1 } else { -1 };
        };
        // Compare a with -b√d by squaring.
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sa == 0 {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(d.clone());
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }
}

fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl From<Rational> for Surd {
    fn from(q: Rational) -> Self {
        Surd::rational(q)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::rational(Rational::one())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        Surd::build(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        Surd::build(self.a - o.a, self.b - o.b, d)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::build(-self.a, -self.b, self.d)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        let dq = d.clone().map(Rational::from_integer).unwrap_or_else(Rational::zero);
        let a = &self.a * &o.a + &self.b * &o.b * dq;
        let b = &self.a * &o.b + &self.b * &o.a;
        Surd::build(a, b, d)
    }
}

fn fmt_rat(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = &self.d else {
            return f.write_str(&fmt_rat(&self.a));
        };
        let root = if self.b.is_one() {
            format!("sqrt({d})")
        } else if self.b == -Rational::one() {
            format!("-sqrt({d})")
        } else {
            format!("{}*sqrt({d})", fmt_rat(&self.b))
        };
        if self.a.is_zero() {
            f.write_str(&root)
        } else if root.starts_with('-') {
            write!(f, "{} - {}", fmt_rat(&self.a), &root[1..])
        } else {
            write!(f, "{} + {}", fmt_rat(&self.a), root)
        }
    }
}
