//! Grossone-valued measures of classical infinite sets.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{GrossError, Result};
use crate::gross::GrossExpr;
use crate::linear::GrossLinear;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SetId {
    Naturals,
    NaturalsMinus4,
    Evens,
    Odds,
    Squares,
    Integers,
    Pairs,
    QPrime,
    Q,
    A2,
    A2Closed,
    A10,
    C10,
}

impl SetId {
    pub const ALL: [SetId; 13] = [
        SetId::Naturals,
        SetId::NaturalsMinus4,
        SetId::Evens,
        SetId::Odds,
        SetId::Squares,
        SetId::Integers,
        SetId::Pairs,
        SetId::QPrime,
        SetId::Q,
        SetId::A2,
        SetId::A2Closed,
        SetId::A10,
        SetId::C10,
    ];

    pub fn description(self) -> &'static str {
        match self {
            SetId::Naturals => "natural numbers N",
            SetId::NaturalsMinus4 => "N \\ {3, 5, 10, 23}",
            SetId::Evens => "even numbers E",
            SetId::Odds => "odd numbers O",
            SetId::Squares => "square natural numbers G",
            SetId::Integers => "integers Z",
            SetId::Pairs => "pairs of natural numbers P",
            SetId::QPrime => "numerals Q' = {-p/q, p/q}",
            SetId::Q => "numerals Q = {0, -p/q, p/q}",
            SetId::A2 => "binary numerals A2 in [0,1)",
            SetId::A2Closed => "binary numerals A2' in [0,1]",
            SetId::A10 => "decimal numerals A10 in [0,1)",
            SetId::C10 => "decimal numerals C10 in [0,2)",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SetId::Naturals => "Naturals",
            SetId::NaturalsMinus4 => "NaturalsMinus4",
            SetId::Evens => "Evens",
            SetId::Odds => "Odds",
            SetId::Squares => "Squares",
            SetId::Integers => "Integers",
            SetId::Pairs => "Pairs",
            SetId::QPrime => "QPrime",
            SetId::Q => "Q",
            SetId::A2 => "A2",
            SetId::A2Closed => "A2Closed",
            SetId::A10 => "A10",
            SetId::C10 => "C10",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Cardinality {
    Countable,
    Continuum,
}

impl Cardinality {
    pub fn name(self) -> &'static str {
        match self {
            Cardinality::Countable => "countable",
            Cardinality::Continuum => "continuum",
        }
    }
}

/// An exact count, or `⌊inner⌋`, known only to lie in `(inner - 1, inner]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MeasureValue {
    Exact(GrossExpr),
    Floored(GrossExpr),
}

impl MeasureValue {
    /// `Floored` requires a single positive term.
    pub fn floored(inner: GrossExpr) -> Result<Self> {
        if inner.terms().len() != 1 || inner.signum() <= 0 {
            return Err(GrossError::Unrepresentable(
                "floor applies to a single positive term".into(),
            ));
        }
        Ok(MeasureValue::Floored(inner))
    }

    pub fn render(&self, ascii: bool) -> String {
        match self {
            MeasureValue::Exact(x) => crate::lang::print_canonical(x, ascii),
            MeasureValue::Floored(x) => format!("floor({})", crate::lang::print_canonical(x, ascii)),
        }
    }

    /// `(lower, upper, lower_open)` bounds on the value.
    fn bounds(&self) -> (GrossExpr, &GrossExpr, bool) {
        match self {
            MeasureValue::Exact(x) => (x.clone(), x, false),
            MeasureValue::Floored(x) => (x - &GrossExpr::one(), x, true),
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum MeasureOrdering {
    Less,
    Equal,
    Greater,
    Undecidable,
}

impl From<Ordering> for MeasureOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => MeasureOrdering::Less,
            Ordering::Equal => MeasureOrdering::Equal,
            Ordering::Greater => MeasureOrdering::Greater,
        }
    }
}

pub fn compare_measures(x: &MeasureValue, y: &MeasureValue) -> MeasureOrdering {
    use MeasureValue::*;
    match (x, y) {
        (Exact(a), Exact(b)) => a.compare(b).into(),
        (Floored(a), Floored(b)) if a == b => MeasureOrdering::Equal,
        _ => {
            let (x_lo, x_hi, x_open) = x.bounds();
            let (y_lo, y_hi, y_open) = y.bounds();
            // x ≤ x_hi ≤ y_lo < y, or x_hi < y_lo when y's lower end is closed
            let below = match x_hi.compare(&y_lo) {
                Ordering::Less => true,
                Ordering::Equal => y_open,
                Ordering::Greater => false,
            };
            let above = match y_hi.compare(&x_lo) {
                Ordering::Less => true,
                Ordering::Equal => x_open,
                Ordering::Greater => false,
            };
            match (below, above) {
                (true, _) => MeasureOrdering::Less,
                (_, true) => MeasureOrdering::Greater,
                _ => MeasureOrdering::Undecidable,
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeasureEntry {
    pub set_id: SetId,
    pub count: MeasureValue,
    pub cardinality: Cardinality,
}

fn g1() -> GrossExpr {
    GrossExpr::grossone()
}

fn c(n: i64) -> GrossExpr {
    GrossExpr::constant(n)
}

fn pow_g1(base: i64) -> GrossExpr {
    GrossExpr::base_pow(base, &GrossLinear::grossone(1)).expect("integer base")
}

fn half() -> Rational {
    Rational::new(1, 2).expect("nonzero")
}

pub fn measure(set_id: SetId) -> MeasureEntry {
    use Cardinality::*;
    use MeasureValue::Exact;
    let g2 = GrossExpr::monomial(1, Rational::from(2));
    let (count, cardinality) = match set_id {
        SetId::Naturals => (Exact(g1()), Countable),
        SetId::NaturalsMinus4 => (Exact(&g1() - &c(4)), Countable),
        SetId::Evens | SetId::Odds => (Exact(g1().scale(&half())), Countable),
        SetId::Squares => (MeasureValue::Floored(GrossExpr::monomial(1, half())), Countable),
        SetId::Integers => (Exact(&g1().scale(&Rational::from(2)) + &c(1)), Countable),
        SetId::Pairs => (Exact(g2), Countable),
        SetId::QPrime => (Exact(g2.scale(&Rational::from(2))), Countable),
        SetId::Q => (Exact(&g2.scale(&Rational::from(2)) + &c(1)), Countable),
        SetId::A2 => (Exact(pow_g1(2)), Continuum),
        SetId::A2Closed => (Exact(&pow_g1(2) + &c(1)), Continuum),
        SetId::A10 => (Exact(pow_g1(10)), Continuum),
        SetId::C10 => (Exact(pow_g1(10).scale(&Rational::from(2))), Continuum),
    };
    MeasureEntry {
        set_id,
        count,
        cardinality,
    }
}

pub fn catalog() -> Vec<MeasureEntry> {
    SetId::ALL.into_iter().map(measure).collect()
}

/// The increasing chain of measures, from `⌊√①⌋` to `2·10^①`.
pub fn chain_values() -> Vec<MeasureValue> {
    use MeasureValue::Exact;
    let entry = |id| measure(id).count;
    vec![
        entry(SetId::Squares),
        entry(SetId::Evens),
        entry(SetId::NaturalsMinus4),
        entry(SetId::Naturals),
        Exact(g1().scale(&Rational::from(2))),
        entry(SetId::Integers),
        entry(SetId::Pairs),
        Exact(&GrossExpr::monomial(2, Rational::from(2)) + &c(1)),
        entry(SetId::A2),
        entry(SetId::A2Closed),
        entry(SetId::A10),
        entry(SetId::C10),
    ]
}

/// Checks that every adjacent pair of `chain` compares `Less`.
pub fn check_chain(chain: &[MeasureValue]) -> Result<()> {
    for w in chain.windows(2) {
        if compare_measures(&w[0], &w[1]) != MeasureOrdering::Less {
            return Err(GrossError::ChainViolation(w[0].to_string(), w[1].to_string()));
        }
    }
    Ok(())
}

/// The checked ordering chain.
pub fn ordering_chain() -> Result<Vec<MeasureValue>> {
    let chain = chain_values();
    check_chain(&chain)?;
    Ok(chain)
}
