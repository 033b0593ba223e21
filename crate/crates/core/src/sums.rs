//! Closed-form arithmetic and geometric sums with grossone-valued bounds.

use std::cmp::Ordering;

use crate::error::{GrossError, Result};
use crate::gross::GrossExpr;
use crate::linear::GrossLinear;
use crate::rational::Rational;

/// The two closed-form families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumSpec {
    ArithmeticSeries {
        first: GrossExpr,
        step: GrossExpr,
        count: GrossExpr,
        sequential: bool,
    },
    GeometricSeries {
        ratio: Rational,
        count: GrossLinear,
    },
}

impl SumSpec {
    pub fn evaluate(&self) -> Result<GrossExpr> {
        match self {
            SumSpec::ArithmeticSeries {
                first,
                step,
                count,
                sequential,
            } => sum_arith(first, step, count, *sequential),
            SumSpec::GeometricSeries { ratio, count } => sum_geometric(ratio, count),
        }
    }
}

/// `first + (first+step) + … ` over `count` addends. A sequential sum may
/// not have more than ① addends.
pub fn sum_arith(
    first: &GrossExpr,
    step: &GrossExpr,
    count: &GrossExpr,
    sequential: bool,
) -> Result<GrossExpr> {
    if count.compare(&GrossExpr::one()) == Ordering::Less {
        return Err(GrossError::NonpositiveCount);
    }
    if sequential && count.compare(&GrossExpr::grossone()) == Ordering::Greater {
        return Err(GrossError::SequentialLimitExceeded);
    }
    let pairs = count * &(count - &GrossExpr::one());
    Ok(&(count * first) + &(step * &pairs).scale(&Rational::new(1, 2)?))
}

/// `1 + ratio + … + ratio^(n-1) = (1 - ratio^n)/(1 - ratio)`.
pub fn sum_geometric(ratio: &Rational, n: &GrossLinear) -> Result<GrossExpr> {
    if ratio.is_one() {
        return Err(GrossError::UnitRatio);
    }
    if n.is_zero() {
        // empty sum, also when ratio^0 would be 0^0
        return Ok(GrossExpr::zero());
    }
    let power = GrossExpr::constant(ratio.clone()).pow(n)?;
    let scale = (Rational::one() - ratio).recip()?;
    Ok((&GrossExpr::one() - &power).scale(&scale))
}

/// Elements left after excluding `excluded` from a sequence of `original`.
pub fn subsequence_count(original: &GrossExpr, excluded: &GrossExpr) -> Result<GrossExpr> {
    if excluded.signum() < 0 || excluded.compare(original) == Ordering::Greater {
        return Err(GrossError::NegativeCount);
    }
    Ok(original - excluded)
}
