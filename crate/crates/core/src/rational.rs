//! Exact rationals, prime factorization of rationals and integer powers.
//!
//! [`Rational`] wraps `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator at construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GrossError, Result};

/// Largest absolute numerator or denominator [`factor_rational`] accepts.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// Arbitrary-precision exact fraction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(GrossError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(GrossError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Rational::one().checked_div(self)
    }

    /// The integer value, when the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer()?.to_i64()
    }

    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Terminating decimal expansion, if the denominator has no prime factor
    /// other than 2 and 5.
    pub fn to_decimal(&self) -> Option<String> {
        let mut den = self.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let (mut twos, mut fives) = (0u32, 0u32);
        while den.is_even() {
            den /= &two;
            twos += 1;
        }
        while (&den % &five).is_zero() {
            den /= &five;
            fives += 1;
        }
        if !den.is_one() {
            return None;
        }
        let places = twos.max(fives);
        if places == 0 {
            return Some(self.numer().to_string());
        }
        let scaled = self.numer().abs() * num_traits::pow(BigInt::from(10), places as usize)
            / self.denom();
        let digits = format!("{:0>width$}", scaled, width = places as usize + 1);
        let (int_part, frac_part) = digits.split_at(digits.len() - places as usize);
        let sign = if self.is_negative() { "-" } else { "" };
        Some(format!("{sign}{int_part}.{frac_part}"))
    }
}


impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `-12`, `3.1`, `.5`, `4/9` or `-45/10` exactly.
impl FromStr for Rational {
    type Err = GrossError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GrossError::Syntax {
            pos: 0,
            msg: format!("invalid rational '{s}'"),
        };
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let value = if let Some((n, d)) = body.split_once('/') {
            let n = parse_decimal(n).ok_or_else(bad)?;
            let d = parse_decimal(d).ok_or_else(bad)?;
            n.checked_div(&d)?
        } else {
            parse_decimal(body).ok_or_else(bad)?
        };
        Ok(if neg { -value } else { value })
    }
}

/// Unsigned decimal literal: digits with an optional fractional part.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Rational::new(num, den).ok()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Sparse map from primes to nonzero rational exponents.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePowerMap(BTreeMap<u64, Rational>);

impl PrimePowerMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, p: u64) -> Option<&Rational> {
        self.0.get(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.0.iter().map(|(p, e)| (*p, e))
    }

    /// Adds `e` to the exponent of `p`, dropping the entry if it becomes zero.
    pub fn accumulate(&mut self, p: u64, e: &Rational) {
        if e.is_zero() {
            return;
        }
        let slot = self.0.entry(p).or_default();
        *slot += e;
        if slot.is_zero() {
            self.0.remove(&p);
        }
    }

    /// Exponents multiplied by `k`.
    pub fn scaled(&self, k: &Rational) -> PrimePowerMap {
        if k.is_zero() {
            return PrimePowerMap::new();
        }
        PrimePowerMap(self.0.iter().map(|(p, e)| (*p, e * k)).collect())
    }

    pub fn added(&self, other: &PrimePowerMap) -> PrimePowerMap {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.accumulate(p, e);
        }
        out
    }

    pub fn subtracted(&self, other: &PrimePowerMap) -> PrimePowerMap {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.accumulate(p, &-e);
        }
        out
    }

    /// Least common multiple of the exponent denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// `∏ p^e` for integer exponents.
    pub fn unfactor(&self) -> Result<Rational> {
        let mut out = Rational::one();
        for (p, e) in self.iter() {
            let n = e.to_integer().ok_or_else(|| {
                GrossError::AlgebraicIrrational(format!("{p}^({e}) is not rational"))
            })?;
            out = out * pow_rational_int(&Rational::from_int(p), &n)?;
        }
        Ok(out)
    }
}

impl FromIterator<(u64, Rational)> for PrimePowerMap {
    fn from_iter<I: IntoIterator<Item = (u64, Rational)>>(iter: I) -> Self {
        let mut m = PrimePowerMap::new();
        for (p, e) in iter {
            m.accumulate(p, &e);
        }
        m
    }
}

impl fmt::Debug for PrimePowerMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// Primes up to `sqrt(FACTOR_LIMIT)`.
fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 1_000_000usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes() {
        if p * p > n {
            return true;
        }
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // n > 10^12: beyond the sieve's reach
    let mut d = small_primes().last().copied().unwrap_or(2) + 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn factor_u64(mut n: u64, sign: i64, out: &mut PrimePowerMap) {
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        let mut k = 0i64;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.accumulate(p, &Rational::from(sign * k));
        }
    }
    if n > 1 {
        out.accumulate(n, &Rational::from(sign));
    }
}

/// Splits a nonzero rational into its sign and prime exponents.
pub fn factor_rational(q: &Rational) -> Result<(i32, PrimePowerMap)> {
    if q.is_zero() {
        return Err(GrossError::ZeroFactorization);
    }
    let too_large = || GrossError::FactorizationTooLarge(q.to_string());
    let num = q.numer().abs().to_u64().filter(|n| *n <= FACTOR_LIMIT).ok_or_else(too_large)?;
    let den = q.denom().to_u64().filter(|d| *d <= FACTOR_LIMIT).ok_or_else(too_large)?;
    let mut map = PrimePowerMap::new();
    factor_u64(num, 1, &mut map);
    factor_u64(den, -1, &mut map);
    Ok((q.signum(), map))
}

/// Largest numerator or denominator, in bits, that an exact power may produce.
pub const MAX_POWER_BITS: u64 = 1 << 22;

/// Exact `q^n` for an integer exponent.
pub fn pow_rational_int(q: &Rational, n: &BigInt) -> Result<Rational> {
    if n.is_zero() {
        if q.is_zero() {
            return Err(GrossError::ZeroToNonpositive);
        }
        return Ok(Rational::one());
    }
    if q.is_zero() {
        return if n.is_positive() {
            Ok(Rational::zero())
        } else {
            Err(GrossError::ZeroToNonpositive)
        };
    }
    let e = n
        .abs()
        .to_usize()
        .filter(|e| *e <= u32::MAX as usize)
        .ok_or_else(|| GrossError::Unrepresentable(format!("exponent {n} is too large")))?;
    let bits = q.numer().bits().max(q.denom().bits());
    if bits.saturating_mul(e as u64) > MAX_POWER_BITS {
        return Err(GrossError::Unrepresentable(format!("({q})^{n} is too large to expand")));
    }
    let num = num_traits::pow(q.numer().clone(), e);
    let den = num_traits::pow(q.denom().clone(), e);
    if n.is_negative() {
        Rational::new(den, num)
    } else {
        Rational::new(num, den)
    }
}

/// Exact `k`-th root of a nonnegative rational when it is rational.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 || q.is_negative() {
        return None;
    }
    if k == 1 {
        return Some(q.clone());
    }
    let root = |x: &BigInt| {
        let r = x.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
    };
    Rational::new(root(q.numer())?, root(q.denom())?).ok()
}

/// `q^e` for a rational exponent, when the result is itself rational.
pub fn pow_rational(q: &Rational, e: &Rational) -> Option<Rational> {
    let k = e.denom().to_u32()?;
    let base = if k == 1 {
        q.clone()
    } else if q.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        -exact_root(&q.abs(), k)?
    } else {
        exact_root(q, k)?
    };
    pow_rational_int(&base, e.numer()).ok()
}
