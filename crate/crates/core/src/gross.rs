//! The grossone numeral system.
//!
//! A [`GrossExpr`] is a finite sum of [`GrossTerm`]s, each of the form
//! `c·①^g·∏ p^(a_p·①)` with rational `c`, `g` and `a_p`. Terms are kept
//! strictly decreasing by magnitude, so the first term decides the sign.
//!
//! Magnitudes are ordered lexicographically by `(Σ a_p·ln p, g)`. The log
//! part is never evaluated numerically: two log parts are compared by
//! clearing denominators and comparing integer power products.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{GrossError, Result};
use crate::linear::GrossLinear;
use crate::rational::{
    factor_rational, is_prime, pow_rational, pow_rational_int, PrimePowerMap, Rational,
};

/// Largest common exponent denominator accepted when comparing log parts.
pub const MAX_EXPONENT_DENOMINATOR: u64 = 10_000;

/// Default number of quotient terms produced by a truncating division.
pub const DEFAULT_MAX_TERMS: usize = 8;

/// Largest integer power computed by repeated multiplication of a sum.
const MAX_EXPANSION_POWER: u64 = 1 << 12;
/// Most terms an expanded power of a sum may have.
const MAX_EXPANSION_TERMS: u64 = 20_000;

/// One normalized monomial `coeff·①^g·∏ p^(a_p·①)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrossTerm {
    coeff: Rational,
    g: Rational,
    expmap: PrimePowerMap,
}

impl GrossTerm {
    /// `None` when `coeff` is zero.
    pub fn new(coeff: Rational, g: Rational, expmap: PrimePowerMap) -> Option<Self> {
        (!coeff.is_zero()).then_some(GrossTerm { coeff, g, expmap })
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Exponent of ①.
    pub fn g(&self) -> &Rational {
        &self.g
    }

    /// ①-coefficients of the prime exponents.
    pub fn expmap(&self) -> &PrimePowerMap {
        &self.expmap
    }

    pub fn is_finite_order(&self) -> bool {
        self.g.is_zero() && self.expmap.is_empty()
    }

    pub fn order_key(&self) -> OrderKey {
        OrderKey {
            log_part: self.expmap.clone(),
            g: self.g.clone(),
        }
    }

    /// Magnitude comparison, ignoring coefficients.
    pub fn cmp_order(&self, other: &GrossTerm) -> Ordering {
        compare_orders(&self.expmap, &self.g, &other.expmap, &other.g)
    }

    fn mul(&self, other: &GrossTerm) -> GrossTerm {
        GrossTerm {
            coeff: &self.coeff * &other.coeff,
            g: &self.g + &other.g,
            expmap: self.expmap.added(&other.expmap),
        }
    }

    fn div(&self, other: &GrossTerm) -> GrossTerm {
        GrossTerm {
            coeff: self.coeff.checked_div(&other.coeff).expect("term coefficients are nonzero"),
            g: &self.g - &other.g,
            expmap: self.expmap.subtracted(&other.expmap),
        }
    }

    fn scale(&self, k: &Rational) -> Option<GrossTerm> {
        GrossTerm::new(&self.coeff * k, self.g.clone(), self.expmap.clone())
    }

    /// The same term with coefficient one.
    pub fn unit(&self) -> GrossTerm {
        GrossTerm {
            coeff: Rational::one(),
            g: self.g.clone(),
            expmap: self.expmap.clone(),
        }
    }
}

impl fmt::Debug for GrossTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·①^{}·{:?}", self.coeff, self.g, self.expmap)
    }
}

/// Magnitude order of a term: the ①-linear log part `Σ a_p·ln p`, then `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderKey {
    pub log_part: PrimePowerMap,
    pub g: Rational,
}

impl OrderKey {
    /// Order of the finite numbers.
    pub fn finite() -> Self {
        OrderKey {
            log_part: PrimePowerMap::new(),
            g: Rational::zero(),
        }
    }

    /// Exact comparison; errors when the common denominator of all prime
    /// exponents of both keys exceeds [`MAX_EXPONENT_DENOMINATOR`].
    pub fn try_cmp(&self, other: &OrderKey) -> Result<Ordering> {
        let d = self.log_part.denominator_lcm().lcm(&other.log_part.denominator_lcm());
        if d > BigInt::from(MAX_EXPONENT_DENOMINATOR) {
            return Err(GrossError::ExponentDenominatorTooLarge(d.to_string()));
        }
        Ok(compare_orders(&self.log_part, &self.g, &other.log_part, &other.g))
    }
}

/// Sign of `Σ d_p·ln p`, decided by comparing `∏ p^(d_p·D)` over positive
/// and negative `d_p` after clearing denominators.
fn log_sign(diff: &PrimePowerMap) -> Ordering {
    if diff.is_empty() {
        return Ordering::Equal;
    }
    let positive = diff.iter().filter(|(_, e)| e.is_positive()).count();
    if positive == diff.len() {
        return Ordering::Greater;
    }
    if positive == 0 {
        return Ordering::Less;
    }
    let d = diff.denominator_lcm();
    let mut lhs = BigInt::one();
    let mut rhs = BigInt::one();
    for (p, e) in diff.iter() {
        let k = (e * &Rational::from_int(d.clone()))
            .to_integer()
            .expect("exponent scaled by common denominator");
        let k_abs = k.magnitude().to_usize().expect("exponent product fits in memory");
        let pk = num_traits::pow(BigInt::from(p), k_abs);
        if e.is_positive() {
            lhs *= pk;
        } else {
            rhs *= pk;
        }
    }
    lhs.cmp(&rhs)
}

fn compare_orders(
    map_a: &PrimePowerMap,
    g_a: &Rational,
    map_b: &PrimePowerMap,
    g_b: &Rational,
) -> Ordering {
    log_sign(&map_a.subtracted(map_b)).then_with(|| g_a.cmp(g_b))
}

/// Term before folding: prime exponents may carry constant parts.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub coeff: Rational,
    pub g: Rational,
    pub exponents: Vec<(u64, GrossLinear)>,
}

impl RawTerm {
    pub fn new(coeff: Rational, g: Rational) -> Self {
        RawTerm {
            coeff,
            g,
            exponents: Vec::new(),
        }
    }

    pub fn with_prime(mut self, p: u64, exponent: GrossLinear) -> Self {
        self.exponents.push((p, exponent));
        self
    }
}

/// Finite-finite-infinite-infinitesimal classification.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum NumKind {
    Zero,
    /// Only the finite order is present.
    PureFinite,
    /// Finite dominant term followed by infinitesimal terms.
    Finite,
    Infinite,
    Infinitesimal,
}

impl NumKind {
    pub fn name(self) -> &'static str {
        match self {
            NumKind::Zero => "Zero",
            NumKind::PureFinite => "PureFinite",
            NumKind::Finite => "Finite",
            NumKind::Infinite => "Infinite",
            NumKind::Infinitesimal => "Infinitesimal",
        }
    }

    pub fn from_name(s: &str) -> Option<NumKind> {
        [
            NumKind::Zero,
            NumKind::PureFinite,
            NumKind::Finite,
            NumKind::Infinite,
            NumKind::Infinitesimal,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

impl fmt::Display for NumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct NumClass {
    pub kind: NumKind,
    pub has_finite_part: bool,
    pub has_infinitesimal_part: bool,
}

/// Quotient and remainder of a truncating long division.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivResult {
    pub quotient: GrossExpr,
    pub remainder: GrossExpr,
    pub exact: bool,
}

impl DivResult {
    /// Order of the first omitted quotient term, when truncated.
    pub fn truncation_order(&self, divisor: &GrossExpr) -> Option<GrossTerm> {
        if self.exact {
            return None;
        }
        let r = self.remainder.leading()?;
        let y = divisor.leading()?;
        Some(r.div(y).unit())
    }
}

/// Normalized finite sum of terms, strictly decreasing by magnitude.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GrossExpr {
    terms: Vec<GrossTerm>,
}

impl GrossExpr {
    pub fn zero() -> Self {
        GrossExpr::default()
    }

    pub fn one() -> Self {
        GrossExpr::constant(Rational::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        GrossExpr::monomial(c, Rational::zero())
    }

    /// ①.
    pub fn grossone() -> Self {
        GrossExpr::monomial(Rational::one(), Rational::one())
    }

    /// `c·①^g`.
    pub fn monomial(c: impl Into<Rational>, g: Rational) -> Self {
        GrossExpr {
            terms: GrossTerm::new(c.into(), g, PrimePowerMap::new()).into_iter().collect(),
        }
    }

    pub fn from_linear(n: &GrossLinear) -> Self {
        &GrossExpr::monomial(n.a.clone(), Rational::one()) + &GrossExpr::constant(n.b.clone())
    }

    pub fn from_term(t: GrossTerm) -> Self {
        GrossExpr { terms: vec![t] }
    }

    /// `base^n` for a rational base and ①-linear exponent.
    pub fn base_pow(base: impl Into<Rational>, n: &GrossLinear) -> Result<Self> {
        GrossExpr::constant(base).pow(n)
    }

    /// Folds, merges, drops zeros and sorts raw terms.
    pub fn normalize(raw: impl IntoIterator<Item = RawTerm>) -> Result<Self> {
        let mut terms = Vec::new();
        for t in raw {
            let mut coeff = t.coeff;
            let mut expmap = PrimePowerMap::new();
            for (p, e) in &t.exponents {
                if !is_prime(*p) {
                    return Err(GrossError::NotPrime(*p));
                }
                let b = e.b.to_integer().ok_or_else(|| {
                    GrossError::AlgebraicIrrational(format!("{p}^({e}) has a non-integer constant part"))
                })?;
                coeff = coeff * pow_rational_int(&Rational::from_int(*p), &b)?;
                expmap.accumulate(*p, &e.a);
            }
            check_denominator(&expmap)?;
            terms.extend(GrossTerm::new(coeff, t.g, expmap));
        }
        Ok(GrossExpr::from_terms(terms))
    }

    /// Builds an expression from already folded terms.
    pub fn from_terms(terms: impl IntoIterator<Item = GrossTerm>) -> Self {
        let mut merged: BTreeMap<(Rational, PrimePowerMap), Rational> = BTreeMap::new();
        for t in terms {
            *merged.entry((t.g, t.expmap)).or_default() += &t.coeff;
        }
        let mut terms: Vec<GrossTerm> = merged
            .into_iter()
            .filter_map(|((g, expmap), coeff)| GrossTerm::new(coeff, g, expmap))
            .collect();
        terms.sort_by(|a, b| b.cmp_order(a));
        GrossExpr { terms }
    }

    /// Re-normalizes terms of untrusted provenance (for example decoded JSON).
    pub fn from_untrusted_terms(terms: Vec<GrossTerm>) -> Result<Self> {
        for t in &terms {
            for (p, _) in t.expmap.iter() {
                if !is_prime(p) {
                    return Err(GrossError::NotPrime(p));
                }
            }
            check_denominator(&t.expmap)?;
        }
        Ok(GrossExpr::from_terms(terms))
    }

    pub fn terms(&self) -> &[GrossTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    pub fn leading(&self) -> Option<&GrossTerm> {
        self.terms.first()
    }

    pub fn signum(&self) -> i32 {
        self.leading().map_or(0, |t| t.coeff.signum())
    }

    /// The value as a rational, when it is zero or a single finite term.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.is_finite_order() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// The value as `a·① + b`, when it has no other orders.
    pub fn as_linear(&self) -> Option<GrossLinear> {
        let mut out = GrossLinear::default();
        for t in &self.terms {
            if !t.expmap.is_empty() {
                return None;
            }
            if t.g.is_one() {
                out.a = t.coeff.clone();
            } else if t.g.is_zero() {
                out.b = t.coeff.clone();
            } else {
                return None;
            }
        }
        Some(out)
    }

    pub fn scale(&self, k: &Rational) -> GrossExpr {
        GrossExpr {
            terms: self.terms.iter().filter_map(|t| t.scale(k)).collect(),
        }
    }

    pub fn compare(&self, other: &GrossExpr) -> Ordering {
        (self - other).signum().cmp(&0)
    }

    pub fn classify(&self) -> NumClass {
        let Some(lead) = self.leading() else {
            return NumClass {
                kind: NumKind::Zero,
                has_finite_part: false,
                has_infinitesimal_part: false,
            };
        };
        let finite = GrossTerm {
            coeff: Rational::one(),
            g: Rational::zero(),
            expmap: PrimePowerMap::new(),
        };
        let has_finite_part = self.terms.iter().any(GrossTerm::is_finite_order);
        let has_infinitesimal_part = self
            .terms
            .last()
            .is_some_and(|t| t.cmp_order(&finite) == Ordering::Less);
        let kind = match lead.cmp_order(&finite) {
            Ordering::Greater => NumKind::Infinite,
            Ordering::Less => NumKind::Infinitesimal,
            Ordering::Equal if self.terms.len() == 1 => NumKind::PureFinite,
            Ordering::Equal => NumKind::Finite,
        };
        NumClass {
            kind,
            has_finite_part,
            has_infinitesimal_part,
        }
    }

    fn mul_term(&self, t: &GrossTerm) -> GrossExpr {
        // multiplying by one term preserves the order of the terms
        GrossExpr {
            terms: self.terms.iter().map(|s| s.mul(t)).collect(),
        }
    }

    /// Long division by dominant terms, stopping after `max_terms`
    /// quotient terms. `self = divisor·quotient + remainder` always holds.
    pub fn divmod(&self, divisor: &GrossExpr, max_terms: usize) -> Result<DivResult> {
        let lead = divisor.leading().ok_or(GrossError::DivisionByZero)?;
        let mut quotient = Vec::new();
        let mut remainder = self.clone();
        while quotient.len() < max_terms {
            let Some(r) = remainder.leading() else { break };
            let q = r.div(lead);
            remainder = &remainder - &divisor.mul_term(&q);
            quotient.push(q);
        }
        Ok(DivResult {
            quotient: GrossExpr::from_terms(quotient),
            exact: remainder.is_zero(),
            remainder,
        })
    }

    pub fn checked_div(&self, divisor: &GrossExpr) -> Result<DivResult> {
        self.divmod(divisor, DEFAULT_MAX_TERMS)
    }

    /// `self^n` where the result stays representable.
    pub fn pow(&self, n: &GrossLinear) -> Result<GrossExpr> {
        if n.is_zero() {
            return if self.is_zero() {
                Err(GrossError::ZeroToNonpositive)
            } else {
                Ok(GrossExpr::one())
            };
        }
        if self.is_zero() {
            return if n.signum() > 0 {
                Ok(GrossExpr::zero())
            } else {
                Err(GrossError::ZeroToNonpositive)
            };
        }
        if self.is_one() {
            return Ok(GrossExpr::one());
        }
        if !n.is_finite() {
            let c = self.as_rational().ok_or_else(|| {
                GrossError::Unrepresentable(format!("({self:?})^({n}): only rational bases take infinite exponents"))
            })?;
            return constant_pow_linear(&c, n);
        }
        let b = &n.b;
        if let Some(k) = b.to_integer() {
            return self.pow_integer(&k);
        }
        match self.terms.as_slice() {
            [t] if t.coeff.is_positive() => {
                let coeff = pow_rational(&t.coeff, b).ok_or_else(|| {
                    GrossError::AlgebraicIrrational(format!("({})^({b}) is irrational", t.coeff))
                })?;
                let expmap = t.expmap.scaled(b);
                check_denominator(&expmap)?;
                Ok(GrossExpr::from_term(GrossTerm {
                    coeff,
                    g: &t.g * b,
                    expmap,
                }))
            }
            _ => Err(GrossError::Unrepresentable(format!(
                "fractional power {b} of a sum or negative term"
            ))),
        }
    }

    fn pow_integer(&self, k: &BigInt) -> Result<GrossExpr> {
        if let [t] = self.terms.as_slice() {
            let kr = Rational::from_int(k.clone());
            let expmap = t.expmap.scaled(&kr);
            check_denominator(&expmap)?;
            return Ok(GrossExpr::from_term(GrossTerm {
                coeff: pow_rational_int(&t.coeff, k)?,
                g: &t.g * &kr,
                expmap,
            }));
        }
        let e = k
            .to_u64()
            .filter(|e| *e <= MAX_EXPANSION_POWER)
            .ok_or_else(|| {
                GrossError::Unrepresentable(format!("power {k} of a sum has no finite expansion here"))
            })?;
        // the expansion has up to C(e + t - 1, t - 1) terms for t addends
        let count: f64 = (1..self.terms.len()).map(|i| (e as f64 + i as f64) / i as f64).product();
        if count > MAX_EXPANSION_TERMS as f64 {
            return Err(GrossError::Unrepresentable(format!(
                "power {k} of a {}-term sum is too large to expand",
                self.terms.len()
            )));
        }
        let mut result = GrossExpr::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }
}

/// `c^(a·① + b)` for a rational `c`.
fn constant_pow_linear(c: &Rational, n: &GrossLinear) -> Result<GrossExpr> {
    if !c.is_positive() {
        return Err(GrossError::Unrepresentable(format!(
            "({c})^({n}): negative base with an infinite exponent"
        )));
    }
    let (_, factors) = factor_rational(c)?;
    let mut coeff = Rational::one();
    let mut expmap = PrimePowerMap::new();
    for (p, e) in factors.iter() {
        expmap.accumulate(p, &(e * &n.a));
        let folded = (e * &n.b).to_integer().ok_or_else(|| {
            GrossError::AlgebraicIrrational(format!("{p}^({}) is irrational", e * &n.b))
        })?;
        coeff = coeff * pow_rational_int(&Rational::from_int(p), &folded)?;
    }
    check_denominator(&expmap)?;
    Ok(GrossExpr::from_terms(GrossTerm::new(coeff, Rational::zero(), expmap)))
}

fn check_denominator(expmap: &PrimePowerMap) -> Result<()> {
    let d = expmap.denominator_lcm();
    if d > BigInt::from(MAX_EXPONENT_DENOMINATOR) {
        return Err(GrossError::ExponentDenominatorTooLarge(d.to_string()));
    }
    Ok(())
}

impl fmt::Debug for GrossExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::lang::print_canonical(self, true))
    }
}

impl fmt::Display for GrossExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::lang::print_canonical(self, false))
    }
}

impl PartialOrd for GrossExpr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrossExpr {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Add for &GrossExpr {
    type Output = GrossExpr;
    fn add(self, rhs: &GrossExpr) -> GrossExpr {
        GrossExpr::from_terms(self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Sub for &GrossExpr {
    type Output = GrossExpr;
    fn sub(self, rhs: &GrossExpr) -> GrossExpr {
        self + &-rhs
    }
}

impl Neg for &GrossExpr {
    type Output = GrossExpr;
    fn neg(self) -> GrossExpr {
        GrossExpr {
            terms: self
                .terms
                .iter()
                .map(|t| GrossTerm {
                    coeff: -&t.coeff,
                    ..t.clone()
                })
                .collect(),
        }
    }
}

impl Mul for &GrossExpr {
    type Output = GrossExpr;
    fn mul(self, rhs: &GrossExpr) -> GrossExpr {
        GrossExpr::from_terms(
            self.terms
                .iter()
                .flat_map(|a| rhs.terms.iter().map(move |b| a.mul(b))),
        )
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for GrossExpr {
            type Output = GrossExpr;
            fn $method(self, rhs: GrossExpr) -> GrossExpr {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for GrossExpr {
    type Output = GrossExpr;
    fn neg(self) -> GrossExpr {
        -&self
    }
}
