use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::rational::Rational;

/// `a·① + b`: iteration counts and the exponent form of prime bases.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct GrossLinear {
    pub a: Rational,
    pub b: Rational,
}

impl GrossLinear {
    pub fn new(a: Rational, b: Rational) -> Self {
        GrossLinear { a, b }
    }

    pub fn finite(b: impl Into<Rational>) -> Self {
        GrossLinear {
            a: Rational::zero(),
            b: b.into(),
        }
    }

    /// `a·①` with no constant part.
    pub fn grossone(a: impl Into<Rational>) -> Self {
        GrossLinear {
            a: a.into(),
            b: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_zero()
    }

    /// Sign of the value, read off the leading coefficient.
    pub fn signum(&self) -> i32 {
        if self.a.is_zero() {
            self.b.signum()
        } else {
            self.a.signum()
        }
    }

    pub fn scale(&self, k: &Rational) -> GrossLinear {
        GrossLinear {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn offset(&self, k: impl Into<Rational>) -> GrossLinear {
        GrossLinear {
            a: self.a.clone(),
            b: &self.b + &k.into(),
        }
    }

    /// Value with ① replaced by `m`.
    pub fn at(&self, m: &Rational) -> Rational {
        &self.a * m + &self.b
    }
}

impl Add for &GrossLinear {
    type Output = GrossLinear;
    fn add(self, rhs: &GrossLinear) -> GrossLinear {
        GrossLinear {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &GrossLinear {
    type Output = GrossLinear;
    fn sub(self, rhs: &GrossLinear) -> GrossLinear {
        GrossLinear {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for &GrossLinear {
    type Output = GrossLinear;
    fn neg(self) -> GrossLinear {
        GrossLinear {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for GrossLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.signum()) {
            (true, _) => write!(f, "{}", self.b),
            (false, 0) => write!(f, "{}\u{2460}", coeff(&self.a)),
            (false, s) => {
                let op = if s > 0 { '+' } else { '-' };
                write!(f, "{}\u{2460}{op}{}", coeff(&self.a), self.b.abs())
            }
        }
    }
}

fn coeff(a: &Rational) -> String {
    if a.is_one() {
        String::new()
    } else if (-a).is_one() {
        "-".into()
    } else {
        a.to_string()
    }
}
