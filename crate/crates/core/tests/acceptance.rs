//! Acceptance gate. Runs every criterion, prints one line per criterion,
//! then fails if any criterion failed.

mod common;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use common::{expr, laws, mercator_dimension, nonzero_expr};
use grosskoch_core::batch::{first_recurrence_mismatch, Mode};
use grosskoch_core::koch::{
    area, fractal_dimension, perimeter, side_length, sides, Quantity, Unit,
};
use grosskoch_core::lang::{evaluate, parse, Ast, AstKind};
use grosskoch_core::oracle::{eval_at, eval_radical, RadicalValue};
use grosskoch_core::rational::pow_rational_int;
use grosskoch_core::sets::{
    catalog, compare_measures, ordering_chain, Cardinality, MeasureOrdering, MeasureValue, SetId,
};
use grosskoch_core::sums::sum_arith;
use grosskoch_core::{GrossExpr, GrossLinear, NumKind, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const IDENTITY_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(5);
const PROPERTY_LIMIT: Duration = Duration::from_secs(30);
const PROPERTY_CASES: u32 = 1000;
const ORACLE_POINTS: [i64; 2] = [60, 600];
/// Every power of ① below is a multiple of 1/10.
const RADICAL_DEGREE: u32 = 10;
const FINITE_STEPS: u32 = 20;
const DIMENSION_DIGITS: usize = 5;
const DIMENSION_TEXT: &str = "1.26186";
const DIMENSION_MAX_DIGITS: usize = 24;

#[derive(Clone, Copy, PartialEq, Debug)]
enum Rel {
    Eq,
    Gt,
}

/// `lhs rel rhs`, both sides in the expression language.
const IDENTITIES: &[(&str, Rel, &str)] = &[
    ("0*G1", Rel::Eq, "0"),
    ("G1*0", Rel::Eq, "0"),
    ("G1-G1", Rel::Eq, "0"),
    ("G1/G1", Rel::Eq, "1"),
    ("G1^0", Rel::Eq, "1"),
    ("1^G1", Rel::Eq, "1"),
    ("0^G1", Rel::Eq, "0"),
    ("0*G1^-1", Rel::Eq, "0"),
    ("G1^-1*0", Rel::Eq, "0"),
    ("G1^-1", Rel::Gt, "0"),
    ("G1^-3.1", Rel::Gt, "0"),
    ("G1^-1-G1^-1", Rel::Eq, "0"),
    ("G1^-1/G1^-1", Rel::Eq, "1"),
    ("(5+G1^-3.1)/G1^-3.1", Rel::Eq, "5*G1^3.1+1"),
    ("(G1^-1)^0", Rel::Eq, "1"),
    ("G1*G1^-1", Rel::Eq, "1"),
    ("G1*G1^-3.1", Rel::Eq, "G1^-2.1"),
    ("(G1^3.1+4*G1)/G1", Rel::Eq, "G1^2.1+4"),
    ("G1^3.1/G1^-3.1", Rel::Eq, "G1^6.2"),
    ("(G1^3.1)^0", Rel::Eq, "1"),
    ("G1^3.1*G1^-1", Rel::Eq, "G1^2.1"),
    ("G1^3.1*G1^-3.1", Rel::Eq, "1"),
    ("G1^-3.1", Rel::Eq, "1/G1^3.1"),
    ("3*4^(G1+2) - 3*4^G1", Rel::Eq, "45*4^G1"),
];

/// `Σ_{i=1}^{count} i·scale`, stated closed form.
struct SumCase {
    name: &'static str,
    count: &'static str,
    scale: &'static str,
    sequential: bool,
    expected: &'static str,
}

const SUMS: &[SumCase] = &[
    SumCase { name: "sum i, i=1..G1", count: "G1", scale: "1", sequential: true, expected: "0.5*G1^2+0.5*G1" },
    SumCase { name: "sum i/G1, i=1..G1", count: "G1", scale: "G1^-1", sequential: true, expected: "0.5*G1+0.5" },
    SumCase { name: "sum i, i=1..G1-1", count: "G1-1", scale: "1", sequential: true, expected: "0.5*G1^2-0.5*G1" },
    SumCase {
        name: "sum i/G1, i=1..3G1^2",
        count: "3*G1^2",
        scale: "G1^-1",
        sequential: false,
        expected: "4.5*G1^3+1.5*G1^2",
    },
];

#[derive(Clone, Copy)]
enum KochOp {
    Value,
    Ratio,
    Difference,
}

#[derive(Clone, Copy, PartialEq, Debug)]
enum Koch {
    Sides,
    SideLength,
    Perimeter,
    Area,
}

impl Koch {
    fn closed_form(self, n: &GrossLinear) -> Quantity {
        match self {
            Koch::Sides => sides(n),
            Koch::SideLength => side_length(n),
            Koch::Perimeter => perimeter(n),
            Koch::Area => area(n),
        }
        .unwrap()
    }
}

/// `quantity(n) op quantity(k) = expected`; `k` is unused for `Value`.
struct KochCase {
    name: &'static str,
    quantity: Koch,
    n: &'static str,
    k: &'static str,
    op: KochOp,
    expected: &'static str,
}

const fn koch(name: &'static str, quantity: Koch, n: &'static str, k: &'static str, op: KochOp, expected: &'static str) -> KochCase {
    KochCase { name, quantity, n, k, op, expected }
}

const KOCH: &[KochCase] = &[
    koch("N(G1)", Koch::Sides, "G1", "", KochOp::Value, "3*4^G1"),
    koch("L(G1)", Koch::SideLength, "G1", "", KochOp::Value, "1/3^G1"),
    koch("P(G1)", Koch::Perimeter, "G1", "", KochOp::Value, "4^G1/3^(G1-1)"),
    koch("P(G1)/P(G1-1)", Koch::Perimeter, "G1", "G1-1", KochOp::Ratio, "4/3"),
    koch("P(G1)-P(G1-1)", Koch::Perimeter, "G1", "G1-1", KochOp::Difference, "4^(G1-1)/3^(G1-1)"),
    koch("P(G1)/P(0.5G1)", Koch::Perimeter, "G1", "0.5*G1", KochOp::Ratio, "(4/3)^(0.5*G1)"),
    koch("N(G1+2)-N(G1)", Koch::Sides, "G1+2", "G1", KochOp::Difference, "45*4^G1"),
    koch("L(G1)-L(G1+2)", Koch::SideLength, "G1", "G1+2", KochOp::Difference, "8/(3^(G1+2))"),
    koch("A(G1)-A(G1-1)", Koch::Area, "G1", "G1-1", KochOp::Difference, "(1/3)*(4/9)^(G1-1)"),
];

fn value(src: &str) -> GrossExpr {
    let e = evaluate(src, 8).unwrap_or_else(|e| panic!("{src}: {e}"));
    assert!(e.exact(), "{src} is inexact");
    e.value
}

fn linear(src: &str) -> GrossLinear {
    value(src).as_linear().unwrap()
}

fn koch_value(case: &KochCase) -> (GrossExpr, Unit) {
    let x = case.quantity.closed_form(&linear(case.n));
    match case.op {
        KochOp::Value => (x.value, x.unit),
        KochOp::Ratio => {
            let (unit, d) = x.div(&case.quantity.closed_form(&linear(case.k)), 8).unwrap();
            assert!(d.exact);
            (d.quotient, unit)
        }
        KochOp::Difference => {
            let q = x.sub(&case.quantity.closed_form(&linear(case.k))).unwrap();
            (q.value, q.unit)
        }
    }
}

fn sum_value(case: &SumCase) -> GrossExpr {
    let scale = value(case.scale);
    sum_arith(&scale, &scale, &value(case.count), case.sequential).unwrap()
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn report(&mut self, n: usize, title: &str, elapsed: Duration, limit: Option<Duration>, failed: &[String], total: usize) {
        let in_time = limit.is_none_or(|l| elapsed < l);
        let ok = failed.is_empty() && in_time;
        if !ok {
            self.failures += 1;
        }
        let limit = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        println!(
            "criterion {n} {}: {title} ({}/{total} checks, {:.2}s{limit})",
            if ok { "PASS" } else { "FAIL" },
            total - failed.len(),
            elapsed.as_secs_f64(),
        );
        for f in failed {
            println!("    failed: {f}");
        }
    }
}

struct Checks(Vec<String>, usize);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new(), 0)
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.1 += 1;
        if !ok {
            self.0.push(what());
        }
    }
}

fn identity_suite() -> Checks {
    let mut c = Checks::new();
    for (lhs, rel, rhs) in IDENTITIES {
        let (l, r) = (value(lhs), value(rhs));
        let ok = match rel {
            Rel::Eq => l == r,
            Rel::Gt => l > r,
        };
        c.check(ok, || format!("{lhs} {rel:?} {rhs}, got {l:?}"));
    }
    for s in SUMS {
        let got = sum_value(s);
        c.check(got == value(s.expected), || format!("{} = {}, got {got:?}", s.name, s.expected));
    }
    for case in KOCH {
        let (got, unit) = koch_value(case);
        let expect_unit = match case.op {
            KochOp::Ratio => Unit::Count,
            _ => case.quantity.closed_form(&GrossLinear::finite(0)).unit,
        };
        c.check(got == value(case.expected) && unit == expect_unit, || {
            format!("{} = {} {}, got {got:?} {}", case.name, case.expected, expect_unit.name(), unit.name())
        });
    }
    let step = KOCH.iter().find(|k| k.name == "A(G1)-A(G1-1)").map(koch_value).unwrap().0;
    let class = step.classify();
    c.check(class.kind == NumKind::Infinitesimal && step.signum() > 0, || {
        format!("A(G1)-A(G1-1) is a positive infinitesimal, got {class:?}")
    });
    c
}

fn radical(m: &Rational, c: Rational) -> RadicalValue {
    RadicalValue::rational(m, RADICAL_DEGREE, c)
}

/// Substitutes `① := m` directly into the syntax tree, in
/// `Q(m^(1/RADICAL_DEGREE))`.
fn substitute(ast: &Ast, m: &Rational) -> Result<RadicalValue, String> {
    let d = RADICAL_DEGREE;
    Ok(match &ast.kind {
        AstKind::Literal(q) => radical(m, q.clone()),
        AstKind::Grossone => RadicalValue::monomial(m, d, Rational::one(), &BigInt::from(d)).map_err(|e| e.to_string())?,
        AstKind::Neg(x) => -&substitute(x, m)?,
        AstKind::Add(a, b) => &substitute(a, m)? + &substitute(b, m)?,
        AstKind::Sub(a, b) => &substitute(a, m)? - &substitute(b, m)?,
        AstKind::Mul(a, b) => &substitute(a, m)? * &substitute(b, m)?,
        AstKind::Div(a, b) => {
            &substitute(a, m)? * &substitute(b, m)?.monomial_inverse().map_err(|e| e.to_string())?
        }
        AstKind::Pow(base, exp) => {
            let e = substitute(exp, m)?.as_rational().cloned().ok_or("irrational exponent")?;
            if matches!(base.kind, AstKind::Grossone) {
                let k = (&e * &Rational::from(i64::from(d))).to_integer().ok_or("exponent off the radical grid")?;
                return RadicalValue::monomial(m, d, Rational::one(), &k).map_err(|e| e.to_string());
            }
            let b = substitute(base, m)?;
            let k = e.to_integer().ok_or("non-integer power of a non-grossone base")?;
            if let Some(q) = b.as_rational() {
                return Ok(radical(m, pow_rational_int(q, &k).map_err(|e| e.to_string())?));
            }
            let unit = if k < BigInt::from(0) { b.monomial_inverse().map_err(|e| e.to_string())? } else { b };
            let steps = k.magnitude().to_string().parse::<u32>().map_err(|e| e.to_string())?;
            (0..steps).fold(radical(m, Rational::one()), |acc, _| &acc * &unit)
        }
    })
}

/// Snowflake quantities after `n` explicit steps: `(N, L, P, A)`.
fn iterate_snowflake(n: i64) -> [Rational; 4] {
    let (mut sides, mut side, mut area) = (Rational::from(3), Rational::one(), Rational::one());
    let mut triangle = Rational::one();
    let ninth = Rational::new(1, 9).unwrap();
    for _ in 0..n {
        triangle = &triangle * &ninth;
        area = &area + &(&sides * &triangle);
        sides = &sides * &Rational::from(4);
        side = &side * &Rational::new(1, 3).unwrap();
    }
    let perimeter = &sides * &side;
    [sides, side, perimeter, area]
}

fn koch_at(case: &KochCase, m: &Rational) -> Rational {
    let slot = case.quantity as usize;
    let at = |src: &str| {
        let n = eval_at(&value(src), m).unwrap().to_i64().unwrap();
        iterate_snowflake(n)[slot].clone()
    };
    match case.op {
        KochOp::Value => at(case.n),
        KochOp::Ratio => at(case.n).checked_div(&at(case.k)).unwrap(),
        KochOp::Difference => at(case.n) - at(case.k),
    }
}

fn oracle_suite() -> Checks {
    let mut c = Checks::new();
    for &m in &ORACLE_POINTS {
        let mr = Rational::from(m);
        for (lhs, rel, rhs) in IDENTITIES {
            let left = substitute(&parse(lhs).unwrap(), &mr);
            let right = eval_radical(&value(rhs), &mr, RADICAL_DEGREE);
            let ok = match (&left, &right, rel) {
                (Ok(l), Ok(r), Rel::Eq) => l == r,
                (Ok(l), Ok(r), Rel::Gt) => (l - r).sign() == Some(Ordering::Greater),
                _ => false,
            };
            c.check(ok, || format!("{lhs} {rel:?} {rhs} at G1={m}"));
        }
        for s in SUMS {
            let count = eval_at(&value(s.count), &mr).unwrap().to_i64().unwrap();
            let scale = eval_at(&value(s.scale), &mr).unwrap();
            let brute: i64 = (1..=count).sum();
            let left = &Rational::from(brute) * &scale;
            let right = eval_at(&value(s.expected), &mr).unwrap();
            c.check(left == right, || format!("{} at G1={m}: brute force {left}, stated {right}", s.name));
        }
        for case in KOCH {
            let left = koch_at(case, &mr);
            let right = eval_at(&value(case.expected), &mr).unwrap();
            c.check(left == right, || format!("{} at G1={m}", case.name));
        }
    }
    let mismatch = first_recurrence_mismatch(Mode::Parallel, FINITE_STEPS).unwrap();
    c.check(mismatch.is_none(), || format!("closed forms differ from the recurrence at n={mismatch:?}"));
    c
}

fn limit_suite() -> Checks {
    let mut c = Checks::new();
    let a = area(&GrossLinear::grossone(1)).unwrap();
    let limit = Quantity::new(GrossExpr::constant(Rational::new(8, 5).unwrap()), Unit::AreaA0);
    let gap = limit.sub(&a).unwrap();
    let class = gap.value.classify();
    c.check(class.kind == NumKind::Infinitesimal && gap.value.signum() > 0, || {
        format!("8/5 a0 - A(G1) is a positive infinitesimal, got {class:?}")
    });
    c.check(gap.value == value("(3/5)*(4/9)^G1"), || format!("8/5 a0 - A(G1) = {:?}", gap.value));
    let p = perimeter(&GrossLinear::grossone(1)).unwrap().value.classify();
    c.check(p.kind == NumKind::Infinite, || format!("P(G1) is infinite, got {p:?}"));
    c
}

fn table_suite() -> Checks {
    use Cardinality::{Continuum, Countable};
    let expected: [(SetId, &str, Cardinality); 13] = [
        (SetId::Naturals, "G1", Countable),
        (SetId::NaturalsMinus4, "G1-4", Countable),
        (SetId::Evens, "G1/2", Countable),
        (SetId::Odds, "G1/2", Countable),
        (SetId::Squares, "floor G1^0.5", Countable),
        (SetId::Integers, "2*G1+1", Countable),
        (SetId::Pairs, "G1^2", Countable),
        (SetId::QPrime, "2*G1^2", Countable),
        (SetId::Q, "2*G1^2+1", Countable),
        (SetId::A2, "2^G1", Continuum),
        (SetId::A2Closed, "2^G1+1", Continuum),
        (SetId::A10, "10^G1", Continuum),
        (SetId::C10, "2*10^G1", Continuum),
    ];
    let measure = |src: &str| match src.strip_prefix("floor ") {
        Some(inner) => MeasureValue::Floored(value(inner)),
        None => MeasureValue::Exact(value(src)),
    };
    let mut c = Checks::new();
    let rows = catalog();
    c.check(rows.len() == expected.len(), || format!("{} rows", rows.len()));
    for (id, src, card) in expected {
        let row = rows.iter().find(|r| r.set_id == id);
        c.check(
            row.is_some_and(|r| r.count == measure(src) && r.cardinality == card),
            || format!("{id:?} = {src}, got {:?}", row.map(|r| r.count.to_string())),
        );
    }
    let chain_src = [
        "floor G1^0.5", "G1/2", "G1-4", "G1", "2*G1", "2*G1+1", "G1^2", "2*G1^2+1", "2^G1", "2^G1+1",
        "10^G1", "2*10^G1",
    ];
    match ordering_chain() {
        Ok(chain) => {
            let want: Vec<_> = chain_src.iter().map(|s| measure(s)).collect();
            c.check(chain == want, || format!("chain {chain:?}"));
            for w in chain.windows(2) {
                let o = compare_measures(&w[0], &w[1]);
                c.check(o == MeasureOrdering::Less, || format!("{} < {}, got {o:?}", w[0], w[1]));
            }
        }
        Err(e) => c.check(false, || format!("ordering chain: {e}")),
    }
    c
}

fn property_suite() -> Checks {
    let mut c = Checks::new();
    let mut run = |name: &str, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        });
        let r = f(&mut runner);
        c.check(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
    };
    let triple = (expr(), expr(), expr());
    run("ring axioms", &mut |t| {
        t.run(&triple, |(a, b, c)| laws::ring_axioms(&a, &b, &c)).map_err(|e| e.to_string())
    });
    run("total order", &mut |t| {
        t.run(&triple, |(a, b, c)| laws::total_order(&a, &b, &c)).map_err(|e| e.to_string())
    });
    run("order and arithmetic", &mut |t| {
        t.run(&triple, |(a, b, c)| laws::order_respects_arithmetic(&a, &b, &c)).map_err(|e| e.to_string())
    });
    run("divmod contract", &mut |t| {
        t.run(&(expr(), nonzero_expr(), 1usize..=6), |(x, y, k)| laws::divmod_contract(&x, &y, k))
            .map_err(|e| e.to_string())
    });
    run("normalization idempotence", &mut |t| {
        t.run(&expr(), |x| laws::normalization_idempotent(&x)).map_err(|e| e.to_string())
    });
    run("printer round trip", &mut |t| {
        t.run(&(expr(), any::<bool>()), |(x, ascii)| laws::printer_round_trip(&x, ascii)).map_err(|e| e.to_string())
    });
    run("json round trip", &mut |t| t.run(&expr(), |x| laws::json_round_trip(&x)).map_err(|e| e.to_string()));
    c
}

fn dimension_suite() -> Checks {
    let mut c = Checks::new();
    let d = fractal_dimension(DIMENSION_DIGITS);
    c.check(d.decimal == DIMENSION_TEXT, || format!("{DIMENSION_DIGITS} digits: {}", d.decimal));
    c.check(d.to_string() == format!("log4/log3 ≈ {DIMENSION_TEXT}"), || d.to_string());
    for digits in 0..=DIMENSION_MAX_DIGITS {
        let (got, want) = (fractal_dimension(digits).decimal, mercator_dimension(digits));
        c.check(got == want, || format!("{digits} digits: {got}, independent {want}"));
    }
    c
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate { failures: 0 };
    type Suite = fn() -> Checks;
    let suites: [(&str, Suite, Option<Duration>); 6] = [
        ("identity golden suite", identity_suite, Some(IDENTITY_LIMIT)),
        ("finite substitution and recurrence oracles", oracle_suite, Some(ORACLE_LIMIT)),
        ("limit consistency", limit_suite, None),
        ("set measure table and ordering chain", table_suite, None),
        ("randomized property suites", property_suite, Some(PROPERTY_LIMIT)),
        ("fractal dimension rendering", dimension_suite, None),
    ];
    for (i, (title, suite, limit)) in suites.into_iter().enumerate() {
        let start = Instant::now();
        let Checks(failed, total) = suite();
        gate.report(i + 1, title, start.elapsed(), limit, &failed, total);
    }
    assert_eq!(gate.failures, 0, "{} acceptance criteria failed", gate.failures);
}
