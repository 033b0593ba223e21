#![allow(dead_code)]

pub mod laws;

use grosskoch_core::koch::round_decimal;
use grosskoch_core::{GrossExpr, GrossTerm, PrimePowerMap, Rational};
use proptest::prelude::*;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num, den).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, prop::sample::select(vec![1i64, 2, 3, 4, 5, 10])).prop_map(|(n, d)| rational(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn exponent(dens: Vec<i64>, range: i64) -> impl Strategy<Value = Rational> {
    (-range..=range, prop::sample::select(dens)).prop_map(|(n, d)| rational(n, d))
}

/// Terms over primes 2, 3, 5 with small fractional exponents.
pub fn term() -> impl Strategy<Value = GrossTerm> {
    (
        nonzero_rational(),
        exponent(vec![1, 2, 5, 10], 30),
        prop::collection::vec(exponent(vec![1, 2, 3], 4), 3),
    )
        .prop_map(|(c, g, exps)| {
            let expmap: PrimePowerMap = [2u64, 3, 5].into_iter().zip(exps).filter(|(_, a)| !a.is_zero()).collect();
            GrossTerm::new(c, g, expmap).unwrap()
        })
}

pub fn expr() -> impl Strategy<Value = GrossExpr> {
    prop::collection::vec(term(), 0..=3).prop_map(GrossExpr::from_terms)
}

pub fn nonzero_expr() -> impl Strategy<Value = GrossExpr> {
    expr().prop_filter("nonzero", |x| !x.is_zero())
}

/// Integral exponents only, so that substituting an integer for ① is exact.
pub fn integral_expr() -> impl Strategy<Value = GrossExpr> {
    integral_expr_with(nonzero_rational())
}

/// Like [`integral_expr`] with integer coefficients in `-20..=20`.
pub fn integer_expr() -> impl Strategy<Value = GrossExpr> {
    integral_expr_with((-20i64..=20).prop_filter("nonzero", |c| *c != 0).prop_map(Rational::from))
}

fn integral_expr_with(coeff: impl Strategy<Value = Rational>) -> impl Strategy<Value = GrossExpr> {
    let t = (
        coeff,
        -3i64..=3,
        prop::collection::vec(-2i64..=2, 2),
    )
        .prop_map(|(c, g, exps)| {
            let expmap: PrimePowerMap = [2u64, 3]
                .into_iter()
                .zip(exps)
                .filter(|(_, a)| *a != 0)
                .map(|(p, a)| (p, Rational::from(a)))
                .collect();
            GrossTerm::new(c, Rational::from(g), expmap).unwrap()
        });
    prop::collection::vec(t, 0..=3).prop_map(GrossExpr::from_terms)
}

/// Bounds on `Σ_{k≥1} x^k/k = -ln(1 - x)` from `n` terms.
fn mercator(x: &Rational, n: i64) -> (Rational, Rational) {
    let mut sum = Rational::zero();
    let mut p = Rational::one();
    for k in 1..=n {
        p = &p * x;
        sum += &p.checked_div(&Rational::from(k)).unwrap();
    }
    // tail ≤ x^(n+1) / ((n+1)(1-x))
    let tail = (&p * x).checked_div(&(Rational::from(n + 1) * (Rational::one() - x))).unwrap();
    (sum.clone(), sum + tail)
}

/// `log 4 / log 3` rounded to `digits`, from ln 2 = -ln(1/2) and
/// ln(3/2) = -ln(2/3), each as a Mercator series.
pub fn mercator_dimension(digits: usize) -> String {
    let mut n = 16 * digits as i64 + 16;
    loop {
        let (l2_lo, l2_hi) = mercator(&rational(1, 2), n);
        let (r_lo, r_hi) = mercator(&rational(1, 3), n);
        let l3_lo = &l2_lo + &r_lo;
        let l3_hi = &l2_hi + &r_hi;
        let two = Rational::from(2);
        let lo = (&two * &l2_lo).checked_div(&l3_hi).unwrap();
        let hi = (&two * &l2_hi).checked_div(&l3_lo).unwrap();
        let (a, b) = (round_decimal(&lo, digits), round_decimal(&hi, digits));
        if a == b {
            return a;
        }
        n *= 2;
    }
}
