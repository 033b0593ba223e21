//! Finite substitution `① := M`.
//!
//! [`eval_at`] maps an expression to an exact rational. When powers of ①
//! are fractional and `M^g` is irrational, [`eval_radical`] evaluates into
//! `Q(s)` with `s = M^(1/D)`, stored as coordinates over `1, s, …, s^(D-1)`
//! and reduced by `s^D = M`. Both are ring homomorphisms, so equal gross
//! numbers always evaluate to equal values.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{GrossError, Result};
use crate::gross::{GrossExpr, GrossTerm};
use crate::rational::{exact_root, pow_rational, pow_rational_int, Rational};

fn prime_powers(t: &GrossTerm, m: &Rational) -> Result<Rational> {
    let mut out = Rational::one();
    for (p, a) in t.expmap().iter() {
        let e = (a * m).to_integer().ok_or_else(|| {
            GrossError::NonIntegerExponent(format!("{p}^({a}·{m}) is not an integer power"))
        })?;
        out = out * pow_rational_int(&Rational::from_int(p), &e)?;
    }
    Ok(out)
}

/// Exact value of `x` at `① = m`.
pub fn eval_at(x: &GrossExpr, m: &Rational) -> Result<Rational> {
    if !m.is_positive() {
        return Err(GrossError::NonIntegerExponent(format!("substitution value {m} must be positive")));
    }
    let mut total = Rational::zero();
    for t in x.terms() {
        let power = pow_rational(m, t.g()).ok_or_else(|| {
            GrossError::NonIntegerExponent(format!("{m}^({}) is irrational", t.g()))
        })?;
        total += &(t.coeff() * &power * prime_powers(t, m)?);
    }
    Ok(total)
}

/// Least `D` such that every power of ① in `x` is a multiple of `1/D`.
pub fn radical_degree(x: &GrossExpr) -> u32 {
    x.terms()
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(t.g().denom()))
        .to_u32()
        .unwrap_or(u32::MAX)
}

/// Element of `Q(M^(1/D))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalValue {
    m: Rational,
    coords: Vec<Rational>,
}

impl RadicalValue {
    pub fn zero(m: &Rational, degree: u32) -> Self {
        RadicalValue {
            m: m.clone(),
            coords: vec![Rational::zero(); degree.max(1) as usize],
        }
    }

    pub fn rational(m: &Rational, degree: u32, c: Rational) -> Self {
        let mut v = RadicalValue::zero(m, degree);
        v.coords[0] = c;
        v
    }

    /// `c·s^k` for any integer `k`.
    pub fn monomial(m: &Rational, degree: u32, c: Rational, k: &BigInt) -> Result<Self> {
        let d = BigInt::from(degree.max(1));
        let (q, r) = k.div_mod_floor(&d);
        let mut v = RadicalValue::zero(m, degree);
        v.coords[r.to_usize().unwrap_or(0)] = c * pow_rational_int(m, &q)?;
        Ok(v)
    }

    pub fn degree(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// The value when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Rational::is_zero).then(|| &self.coords[0])
    }

    /// Inverse of a value with exactly one nonzero coordinate.
    pub fn monomial_inverse(&self) -> Result<Self> {
        let nonzero: Vec<_> = self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        match nonzero.as_slice() {
            [(k, c)] => RadicalValue::monomial(&self.m, self.degree(), c.recip()?, &-BigInt::from(*k)),
            [] => Err(GrossError::DivisionByZero),
            _ => Err(GrossError::Unrepresentable("inverse of a radical sum".into())),
        }
    }

    /// Sign of the real value, with `s` the positive real root. Returns
    /// `None` if bisection does not separate the value from zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        let d = self.degree();
        if let Some(c) = self.as_rational() {
            return Some(c.signum().cmp(&0));
        }
        if let Some(s) = exact_root(&self.m, d) {
            return Some(self.eval_poly(&s, &s).0.signum().cmp(&0));
        }
        let mut lo = Rational::zero();
        let mut hi = if self.m > Rational::one() { self.m.clone() } else { Rational::one() };
        let two = Rational::from(2);
        for _ in 0..4096 {
            let (low, high) = self.eval_poly(&lo, &hi);
            if low.is_positive() {
                return Some(Ordering::Greater);
            }
            if high.is_negative() {
                return Some(Ordering::Less);
            }
            let mid = (&lo + &hi).checked_div(&two).ok()?;
            if pow_rational_int(&mid, &BigInt::from(d)).ok()? <= self.m {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        None
    }

    /// Bounds on the polynomial for `lo <= s <= hi`, `lo >= 0`.
    fn eval_poly(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let (mut low, mut high) = (Rational::zero(), Rational::zero());
        let (mut plo, mut phi) = (Rational::one(), Rational::one());
        for c in &self.coords {
            if c.is_positive() {
                low += &(c * &plo);
                high += &(c * &phi);
            } else if c.is_negative() {
                low += &(c * &phi);
                high += &(c * &plo);
            }
            plo = &plo * lo;
            phi = &phi * hi;
        }
        (low, high)
    }

    fn check(&self, other: &RadicalValue) {
        assert!(
            self.m == other.m && self.degree() == other.degree(),
            "radical values over different fields"
        );
    }
}

impl Add for &RadicalValue {
    type Output = RadicalValue;
    fn add(self, rhs: &RadicalValue) -> RadicalValue {
        self.check(rhs);
        RadicalValue {
            m: self.m.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RadicalValue {
    type Output = RadicalValue;
    fn sub(self, rhs: &RadicalValue) -> RadicalValue {
        self + &-rhs
    }
}

impl Neg for &RadicalValue {
    type Output = RadicalValue;
    fn neg(self) -> RadicalValue {
        RadicalValue {
            m: self.m.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RadicalValue {
    type Output = RadicalValue;
    fn mul(self, rhs: &RadicalValue) -> RadicalValue {
        self.check(rhs);
        let d = self.coords.len();
        let mut out = RadicalValue::zero(&self.m, d as u32);
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let prod = a * b;
                if i + j >= d {
                    out.coords[i + j - d] += &(prod * &self.m);
                } else {
                    out.coords[i + j] += &prod;
                }
            }
        }
        out
    }
}

/// Value of `x` at `① = m` in `Q(m^(1/degree))`. `degree` must be a
/// multiple of every denominator of the powers of ① in `x`.
pub fn eval_radical(x: &GrossExpr, m: &Rational, degree: u32) -> Result<RadicalValue> {
    if !m.is_positive() {
        return Err(GrossError::NonIntegerExponent(format!("substitution value {m} must be positive")));
    }
    let d = Rational::from(i64::from(degree.max(1)));
    let mut total = RadicalValue::zero(m, degree);
    for t in x.terms() {
        let k = (t.g() * &d).to_integer().ok_or_else(|| {
            GrossError::NonIntegerExponent(format!("power {} is not a multiple of 1/{degree}", t.g()))
        })?;
        let c = t.coeff() * &prime_powers(t, m)?;
        total = &total + &RadicalValue::monomial(m, degree, c, &k)?;
    }
    Ok(total)
}
