//! Algebraic laws shared by the property suites and the acceptance gate.

use std::cmp::Ordering;

use grosskoch_core::lang::{evaluate, expr_from_json, print_canonical, ToJson};
use grosskoch_core::GrossExpr;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type LawResult = Result<(), TestCaseError>;

pub fn ring_axioms(a: &GrossExpr, b: &GrossExpr, c: &GrossExpr) -> LawResult {
    let zero = GrossExpr::zero();
    let one = GrossExpr::one();
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a + &zero), a);
    prop_assert_eq!(&(a * &one), a);
    let same = a.clone();
    prop_assert_eq!(a - &same, zero.clone());
    prop_assert_eq!(a * &zero, zero);
    Ok(())
}

pub fn total_order(a: &GrossExpr, b: &GrossExpr, c: &GrossExpr) -> LawResult {
    prop_assert_eq!(a.compare(b), b.compare(a).reverse());
    prop_assert_eq!(a.compare(b) == Ordering::Equal, a == b);
    if a <= b && b <= c {
        prop_assert!(a <= c);
    }
    prop_assert_eq!(a.compare(b), (a - b).signum().cmp(&0));
    Ok(())
}

pub fn order_respects_arithmetic(a: &GrossExpr, b: &GrossExpr, c: &GrossExpr) -> LawResult {
    if a < b {
        prop_assert!(a + c < b + c);
        match c.signum() {
            1 => prop_assert!(a * c < b * c),
            -1 => prop_assert!(a * c > b * c),
            _ => prop_assert_eq!(a * c, b * c),
        }
    }
    if a.signum() > 0 && b.signum() > 0 {
        prop_assert_eq!((a * b).signum(), 1);
    }
    Ok(())
}

pub fn divmod_contract(x: &GrossExpr, y: &GrossExpr, max_terms: usize) -> LawResult {
    let d = x.divmod(y, max_terms).unwrap();
    prop_assert_eq!(&(&(y * &d.quotient) + &d.remainder), x);
    prop_assert_eq!(d.exact, d.remainder.is_zero());
    prop_assert!(d.quotient.terms().len() <= max_terms);
    if !d.exact {
        prop_assert_eq!(d.quotient.terms().len(), max_terms);
    }
    Ok(())
}

pub fn normalization_idempotent(x: &GrossExpr) -> LawResult {
    prop_assert_eq!(&GrossExpr::from_terms(x.terms().to_vec()), x);
    let mut shuffled = x.terms().to_vec();
    shuffled.reverse();
    prop_assert_eq!(&GrossExpr::from_terms(shuffled), x);
    Ok(())
}

pub fn printer_round_trip(x: &GrossExpr, ascii: bool) -> LawResult {
    let text = print_canonical(x, ascii);
    let back = evaluate(&text, 8).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert!(back.exact());
    prop_assert_eq!(&back.value, x);
    Ok(())
}

pub fn json_round_trip(x: &GrossExpr) -> LawResult {
    prop_assert_eq!(&expr_from_json(&x.to_json()).unwrap(), x);
    Ok(())
}
