//! Koch snowflake quantities at finite and infinite iteration counts.
//!
//! Lengths are measured in units of the initiator side `l` and areas in
//! units of the initiator triangle area `a0 = (√3/4)·l²`, so every stored
//! coefficient stays rational.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{GrossError, Result};
use crate::gross::{DivResult, GrossExpr, NumClass};
use crate::linear::GrossLinear;
use crate::rational::Rational;
use crate::sums::sum_geometric;

/// Largest step count accepted by [`recurrence_oracle`].
pub const MAX_RECURRENCE_STEPS: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Unit {
    Count,
    LengthL,
    AreaL2,
    AreaA0,
}

impl Unit {
    pub fn name(self) -> &'static str {
        match self {
            Unit::Count => "count",
            Unit::LengthL => "l",
            Unit::AreaL2 => "l^2",
            Unit::AreaA0 => "a0",
        }
    }

    pub fn from_name(s: &str) -> Option<Unit> {
        [Unit::Count, Unit::LengthL, Unit::AreaL2, Unit::AreaA0]
            .into_iter()
            .find(|u| u.name() == s)
    }

    pub fn mul(self, other: Unit) -> Result<Unit> {
        match (self, other) {
            (Unit::Count, u) | (u, Unit::Count) => Ok(u),
            (Unit::LengthL, Unit::LengthL) => Ok(Unit::AreaL2),
            (a, b) => Err(GrossError::UnitMismatch(format!("{} × {}", a.name(), b.name()))),
        }
    }

    pub fn div(self, other: Unit) -> Result<Unit> {
        match (self, other) {
            (a, b) if a == b => Ok(Unit::Count),
            (u, Unit::Count) => Ok(u),
            (Unit::AreaL2, Unit::LengthL) => Ok(Unit::LengthL),
            (a, b) => Err(GrossError::UnitMismatch(format!("{} ÷ {}", a.name(), b.name()))),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gross number carrying a unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quantity {
    pub value: GrossExpr,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: GrossExpr, unit: Unit) -> Self {
        Quantity { value, unit }
    }

    pub fn class(&self) -> NumClass {
        self.value.classify()
    }

    fn same_unit(&self, other: &Quantity, op: &str) -> Result<()> {
        if self.unit != other.unit {
            return Err(GrossError::UnitMismatch(format!(
                "{} {op} {}",
                self.unit.name(),
                other.unit.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Quantity) -> Result<Quantity> {
        self.same_unit(other, "+")?;
        Ok(Quantity::new(&self.value + &other.value, self.unit))
    }

    pub fn sub(&self, other: &Quantity) -> Result<Quantity> {
        self.same_unit(other, "-")?;
        Ok(Quantity::new(&self.value - &other.value, self.unit))
    }

    pub fn mul(&self, other: &Quantity) -> Result<Quantity> {
        Ok(Quantity::new(&self.value * &other.value, self.unit.mul(other.unit)?))
    }

    /// Ratio via truncating long division; the quotient's unit is attached
    /// to the returned [`DivResult`] owner.
    pub fn div(&self, other: &Quantity, max_terms: usize) -> Result<(Unit, DivResult)> {
        let unit = self.unit.div(other.unit)?;
        Ok((unit, self.value.divmod(&other.value, max_terms)?))
    }
}

/// `N_n = 3·4^n`.
pub fn sides(n: &GrossLinear) -> Result<Quantity> {
    let v = GrossExpr::base_pow(4, n)?.scale(&Rational::from(3));
    Ok(Quantity::new(v, Unit::Count))
}

/// `L_n = l/3^n`.
pub fn side_length(n: &GrossLinear) -> Result<Quantity> {
    Ok(Quantity::new(GrossExpr::base_pow(Rational::new(1, 3)?, n)?, Unit::LengthL))
}

/// `P_n = N_n·L_n = (4^n/3^(n-1))·l`.
pub fn perimeter(n: &GrossLinear) -> Result<Quantity> {
    sides(n)?.mul(&side_length(n)?)
}

/// `T_n = N_(n-1) = 3·4^(n-1)` triangles added at step `n`.
pub fn added_triangles(n: &GrossLinear) -> Result<Quantity> {
    sides(&n.offset(-1))
}

/// `T_n·a_n` with `a_n = a0/9^n`, which equals `(1/3)(4/9)^(n-1)·a0`.
pub fn added_area(n: &GrossLinear) -> Result<Quantity> {
    let each = Quantity::new(GrossExpr::base_pow(Rational::new(1, 9)?, n)?, Unit::AreaA0);
    added_triangles(n)?.mul(&each)
}

/// `A_n = a0·(1 + (1/3)·Σ_{i<n} (4/9)^i) = (a0/5)(8 - 3(4/9)^n)`.
pub fn area(n: &GrossLinear) -> Result<Quantity> {
    let series = sum_geometric(&Rational::new(4, 9)?, n)?;
    let v = &GrossExpr::one() + &series.scale(&Rational::new(1, 3)?);
    Ok(Quantity::new(v, Unit::AreaA0))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SnowflakeReport {
    pub n: GrossLinear,
    pub sides: Quantity,
    pub side_length: Quantity,
    pub perimeter: Quantity,
    pub area: Quantity,
    pub added_triangles: Quantity,
    pub added_area: Quantity,
}

impl SnowflakeReport {
    /// Quantities in display order, with their conventional symbols.
    pub fn fields(&self) -> [(&'static str, &Quantity); 6] {
        [
            ("N", &self.sides),
            ("L", &self.side_length),
            ("P", &self.perimeter),
            ("A", &self.area),
            ("T", &self.added_triangles),
            ("added_area", &self.added_area),
        ]
    }
}

pub fn report(n: &GrossLinear) -> Result<SnowflakeReport> {
    Ok(SnowflakeReport {
        n: n.clone(),
        sides: sides(n)?,
        side_length: side_length(n)?,
        perimeter: perimeter(n)?,
        area: area(n)?,
        added_triangles: added_triangles(n)?,
        added_area: added_area(n)?,
    })
}

/// Ratio and difference of one quantity between two snowflakes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantityComparison {
    pub symbol: &'static str,
    /// `X_n / X_k`.
    pub ratio: DivResult,
    /// `X_n - X_k`.
    pub difference: Quantity,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComparisonReport {
    pub n: GrossLinear,
    pub k: GrossLinear,
    pub entries: Vec<QuantityComparison>,
}

impl ComparisonReport {
    pub fn get(&self, symbol: &str) -> Option<&QuantityComparison> {
        self.entries.iter().find(|e| e.symbol == symbol)
    }
}

pub fn compare_snowflakes(
    n: &GrossLinear,
    k: &GrossLinear,
    max_terms: usize,
) -> Result<ComparisonReport> {
    let a = report(n)?;
    let b = report(k)?;
    let pairs = [
        ("N", &a.sides, &b.sides),
        ("L", &a.side_length, &b.side_length),
        ("P", &a.perimeter, &b.perimeter),
        ("A", &a.area, &b.area),
    ];
    let entries = pairs
        .into_iter()
        .map(|(symbol, x, y)| {
            Ok(QuantityComparison {
                symbol,
                ratio: x.div(y, max_terms)?.1,
                difference: x.sub(y)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ComparisonReport {
        n: n.clone(),
        k: k.clone(),
        entries,
    })
}

/// Snowflake at a finite step, in exact rationals (`l` and `a0` units).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSnowflake {
    pub n: u32,
    pub sides: Rational,
    pub side_length: Rational,
    pub perimeter: Rational,
    pub area: Rational,
    pub added_triangles: Rational,
    pub added_area: Rational,
}

/// Iterates `N_n = 4N_(n-1)`, `L_n = L_(n-1)/3`, `A_n = A_(n-1) + T_n·a_n`
/// from the initiator triangle.
pub fn recurrence_oracle(steps: u32) -> Result<Vec<FiniteSnowflake>> {
    if steps > MAX_RECURRENCE_STEPS {
        return Err(GrossError::StepLimit {
            max: MAX_RECURRENCE_STEPS,
            got: steps,
        });
    }
    let third = Rational::new(1, 3)?;
    let ninth = Rational::new(1, 9)?;
    let mut cur = FiniteSnowflake {
        n: 0,
        sides: Rational::from(3),
        side_length: Rational::one(),
        perimeter: Rational::from(3),
        area: Rational::one(),
        added_triangles: Rational::zero(),
        added_area: Rational::zero(),
    };
    let mut triangle = Rational::one();
    let mut out = vec![cur.clone()];
    for n in 1..=steps {
        // one new triangle on every side of the previous step
        let added = cur.sides.clone();
        triangle = &triangle * &ninth;
        let added_area = &added * &triangle;
        let sides = &cur.sides * &Rational::from(4);
        let side_length = &cur.side_length * &third;
        cur = FiniteSnowflake {
            n,
            perimeter: &sides * &side_length,
            area: &cur.area + &added_area,
            sides,
            side_length,
            added_triangles: added,
            added_area,
        };
        out.push(cur.clone());
    }
    Ok(out)
}

/// `log 4 / log 3`, rendered to a number of decimals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractalDimension {
    pub log_numerator: u32,
    pub log_denominator: u32,
    pub digits: usize,
    pub decimal: String,
}

impl fmt::Display for FractalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "log{}/log{} ≈ {}",
            self.log_numerator, self.log_denominator, self.decimal
        )
    }
}

/// Lower and upper bounds of `2·atanh(z)` from `terms` series terms,
/// for `0 < z < 1`.
fn ln_bounds(z: &Rational, terms: usize) -> (Rational, Rational) {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for k in 0..terms {
        sum += &power.checked_div(&Rational::from(2 * k as i64 + 1)).expect("odd");
        power = &power * &z2;
    }
    // tail ≤ z^(2K+1) / ((2K+1)(1 - z²))
    let tail = power
        .checked_div(&(Rational::from(2 * terms as i64 + 1) * (Rational::one() - &z2)))
        .expect("z < 1");
    let two = Rational::from(2);
    (&sum * &two, (sum + tail) * two)
}

/// Rounds a positive rational half-up to `digits` decimals.
pub fn round_decimal(q: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * &Rational::from_int(scale.clone()) + Rational::new(1, 2).expect("nonzero");
    let n = scaled.floor();
    let int_part = &n / &scale;
    let frac = (&n % &scale).abs();
    if digits == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac:0>digits$}")
    }
}

/// Koch curve similarity dimension `log 4/log 3`, display only.
pub fn fractal_dimension(digits: usize) -> FractalDimension {
    let third = Rational::new(1, 3).expect("nonzero");
    let fifth = Rational::new(1, 5).expect("nonzero");
    let mut terms = digits + 8;
    let decimal = loop {
        // ln 2 = 2 atanh(1/3), ln 3 = ln 2 + 2 atanh(1/5)
        let (l2_lo, l2_hi) = ln_bounds(&third, terms);
        let (r_lo, r_hi) = ln_bounds(&fifth, terms);
        let l3_lo = &l2_lo + &r_lo;
        let l3_hi = &l2_hi + &r_hi;
        let two = Rational::from(2);
        let lo = (&l2_lo * &two).checked_div(&l3_hi).expect("positive");
        let hi = (&l2_hi * &two).checked_div(&l3_lo).expect("positive");
        let a = round_decimal(&lo, digits);
        if a == round_decimal(&hi, digits) {
            break a;
        }
        terms *= 2;
    };
    FractalDimension {
        log_numerator: 4,
        log_denominator: 3,
        digits,
        decimal,
    }
}

/// `a0 = (√3/4)·l²` as a decimal, for display next to areas in `a0` units.
pub fn a0_in_l2(digits: usize) -> String {
    // round(√3·10^d / 4) = floor((floor(√(3·10^(2d))) + 2) / 4)
    let scale = num_traits::pow(BigInt::from(10), digits);
    let root = (BigInt::from(3) * &scale * &scale).sqrt();
    let n = (root + 2) / 4;
    let q = Rational::new(n, scale).expect("nonzero");
    round_decimal(&q, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gross::NumKind;
    use crate::rational::PrimePowerMap;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn g1() -> GrossLinear {
        GrossLinear::grossone(1)
    }

    fn map(entries: &[(u64, &str)]) -> PrimePowerMap {
        entries.iter().map(|(p, e)| (*p, r(e))).collect()
    }

    fn base(b: &str, n: &GrossLinear) -> GrossExpr {
        GrossExpr::base_pow(r(b), n).unwrap()
    }

    #[test]
    fn sides_examples() {
        let n = sides(&g1()).unwrap();
        assert_eq!(n.value, base("4", &g1()).scale(&r("3")));
        assert_eq!(n.value.terms()[0].expmap(), &map(&[(2, "2")]));
        assert_eq!(sides(&GrossLinear::finite(0)).unwrap().value, GrossExpr::constant(3));
        let d = sides(&g1().offset(2)).unwrap().sub(&n).unwrap();
        assert_eq!(d.value, base("4", &g1()).scale(&r("45")));
    }

    #[test]
    fn side_length_examples() {
        let l = side_length(&g1()).unwrap();
        assert_eq!(l.unit, Unit::LengthL);
        assert_eq!(l.value, base("1/3", &g1()));
        assert!(side_length(&GrossLinear::finite(0)).unwrap().value.is_one());
        let d = l.sub(&side_length(&g1().offset(2)).unwrap()).unwrap();
        assert_eq!(d.value, base("1/3", &g1().offset(2)).scale(&r("8")));
    }

    #[test]
    fn perimeter_examples() {
        let p = perimeter(&g1()).unwrap();
        // 4^①/3^(①-1)
        let expected = &base("4", &g1()) * &base("1/3", &g1().offset(-1));
        assert_eq!(p.value, expected);
        assert_eq!(p.class().kind, NumKind::Infinite);
        let prev = perimeter(&g1().offset(-1)).unwrap();
        let (unit, ratio) = p.div(&prev, 8).unwrap();
        assert_eq!(unit, Unit::Count);
        assert!(ratio.exact);
        assert_eq!(ratio.quotient, GrossExpr::constant(r("4/3")));
        let half = perimeter(&GrossLinear::grossone(r("0.5"))).unwrap();
        let ratio = p.div(&half, 8).unwrap().1;
        assert_eq!(ratio.quotient, base("4/3", &GrossLinear::grossone(r("0.5"))));
        assert_eq!(ratio.quotient.classify().kind, NumKind::Infinite);
        let diff = p.sub(&prev).unwrap();
        assert_eq!(diff.value, base("4/3", &g1().offset(-1)));
        assert_eq!(diff.class().kind, NumKind::Infinite);
    }

    #[test]
    fn added_area_examples() {
        assert_eq!(added_area(&GrossLinear::finite(1)).unwrap().value, GrossExpr::constant(r("1/3")));
        let a = added_area(&g1()).unwrap();
        assert_eq!(a.unit, Unit::AreaA0);
        assert_eq!(a.value, base("4/9", &g1().offset(-1)).scale(&r("1/3")));
        assert_eq!(a.class().kind, NumKind::Infinitesimal);
        let t = added_triangles(&g1()).unwrap();
        assert_eq!(t.value, base("4", &g1().offset(-1)).scale(&r("3")));
    }

    #[test]
    fn area_examples() {
        assert!(area(&GrossLinear::finite(0)).unwrap().value.is_one());
        let a = area(&g1()).unwrap();
        let closed = (&GrossExpr::constant(8) - &base("4/9", &g1()).scale(&r("3"))).scale(&r("1/5"));
        assert_eq!(a.value, closed);
        let d = a.sub(&area(&g1().offset(-1)).unwrap()).unwrap();
        assert_eq!(d.value, base("4/9", &g1().offset(-1)).scale(&r("1/3")));
        assert_eq!(d.class().kind, NumKind::Infinitesimal);
        assert!(d.value.signum() > 0);
        let gap = Quantity::new(GrossExpr::constant(r("8/5")), Unit::AreaA0).sub(&a).unwrap();
        assert_eq!(gap.value, base("4/9", &g1()).scale(&r("3/5")));
        assert_eq!(gap.class().kind, NumKind::Infinitesimal);
    }

    #[test]
    fn finite_report_matches_recurrence() {
        let rep = report(&GrossLinear::finite(3)).unwrap();
        assert_eq!(rep.sides.value, GrossExpr::constant(192));
        assert_eq!(rep.side_length.value, GrossExpr::constant(r("1/27")));
        assert_eq!(rep.perimeter.value, GrossExpr::constant(r("64/9")));
        let a3 = (r("8") - r("3") * r("64/729")) * r("1/5");
        assert_eq!(rep.area.value, GrossExpr::constant(a3));
    }

    #[test]
    fn half_grossone_perimeter() {
        let n = GrossLinear::grossone(r("0.5"));
        let p = report(&n).unwrap().perimeter;
        let expected = &base("4", &n) * &base("1/3", &n.offset(-1));
        assert_eq!(p.value, expected);
    }

    #[test]
    fn comparisons() {
        let c = compare_snowflakes(&g1(), &g1().offset(2), 8).unwrap();
        assert_eq!(c.get("N").unwrap().difference.value, base("4", &g1()).scale(&r("-45")));
        assert_eq!(c.get("L").unwrap().difference.value, base("1/3", &g1().offset(2)).scale(&r("8")));
        assert_eq!(c.get("N").unwrap().ratio.quotient, GrossExpr::constant(r("1/16")));

        let same = compare_snowflakes(&g1(), &g1(), 8).unwrap();
        for e in &same.entries {
            assert!(e.difference.value.is_zero(), "{}", e.symbol);
            assert!(e.ratio.exact && e.ratio.quotient.is_one(), "{}", e.symbol);
        }

        let half = compare_snowflakes(&g1(), &GrossLinear::grossone(r("0.5")), 8).unwrap();
        assert_eq!(half.get("P").unwrap().ratio.quotient, base("4/3", &GrossLinear::grossone(r("0.5"))));
        // area ratio is an infinite series and gets truncated
        assert!(!half.get("A").unwrap().ratio.exact);
    }

    #[test]
    fn recurrence_examples() {
        let steps = recurrence_oracle(1).unwrap();
        let s1 = &steps[1];
        assert_eq!(s1.sides, r("12"));
        assert_eq!(s1.side_length, r("1/3"));
        assert_eq!(s1.perimeter, r("4"));
        assert_eq!(s1.area, r("4/3"));
        let s0 = &recurrence_oracle(0).unwrap()[0];
        assert_eq!((s0.sides.clone(), s0.perimeter.clone(), s0.area.clone()), (r("3"), r("3"), r("1")));
        assert_eq!(recurrence_oracle(65), Err(GrossError::StepLimit { max: 64, got: 65 }));
        let s20 = recurrence_oracle(20).unwrap().pop().unwrap();
        let rep = report(&GrossLinear::finite(20)).unwrap();
        assert_eq!(rep.area.value.as_rational().unwrap(), s20.area);
        assert_eq!(rep.perimeter.value.as_rational().unwrap(), s20.perimeter);
    }

    #[test]
    fn units() {
        assert_eq!(Unit::Count.mul(Unit::LengthL).unwrap(), Unit::LengthL);
        assert_eq!(Unit::LengthL.mul(Unit::LengthL).unwrap(), Unit::AreaL2);
        assert_eq!(Unit::Count.mul(Unit::AreaA0).unwrap(), Unit::AreaA0);
        assert_eq!(Unit::Count.mul(Unit::Count).unwrap(), Unit::Count);
        assert!(Unit::AreaL2.mul(Unit::AreaA0).is_err());
        assert!(Unit::LengthL.mul(Unit::AreaA0).is_err());
        let l2 = Quantity::new(GrossExpr::one(), Unit::AreaL2);
        let a0 = Quantity::new(GrossExpr::one(), Unit::AreaA0);
        assert!(matches!(l2.add(&a0), Err(GrossError::UnitMismatch(_))));
        assert!(l2.div(&a0, 4).is_err());
    }

    #[test]
    fn dimension_rendering() {
        assert_eq!(fractal_dimension(5).to_string(), "log4/log3 ≈ 1.26186");
        assert_eq!(fractal_dimension(2).decimal, "1.26");
        assert_eq!(fractal_dimension(0).decimal, "1");
        assert_eq!(a0_in_l2(5), "0.43301");
    }
}
