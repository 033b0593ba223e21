use serde_json::{json, Map, Value};

use crate::error::{GrossError, Result};
use crate::gross::{DivResult, GrossExpr, GrossTerm};
use crate::koch::{ComparisonReport, Quantity, SnowflakeReport, Unit};
use crate::lang::print_canonical;
use crate::linear::GrossLinear;
use crate::rational::{PrimePowerMap, Rational};
use crate::sets::{MeasureEntry, MeasureValue};

/// Compact JSON encoding. Rationals are strings of the form `"p/q"`.
pub trait ToJson {
    fn to_json_value(&self) -> Value;

    fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn linear(n: &GrossLinear) -> Value {
    json!({ "a": rational(&n.a), "b": rational(&n.b) })
}

fn term(t: &GrossTerm) -> Value {
    let expmap: Map<String, Value> = t
        .expmap()
        .iter()
        .map(|(p, a)| (p.to_string(), rational(a)))
        .collect();
    json!({ "coeff": rational(t.coeff()), "g": rational(t.g()), "expmap": expmap })
}

impl ToJson for GrossExpr {
    fn to_json_value(&self) -> Value {
        json!({
            "terms": self.terms().iter().map(term).collect::<Vec<_>>(),
            "class": self.classify().kind.name(),
        })
    }
}

impl ToJson for Quantity {
    fn to_json_value(&self) -> Value {
        json!({ "unit": self.unit.name(), "value": self.value.to_json_value() })
    }
}

impl ToJson for DivResult {
    fn to_json_value(&self) -> Value {
        json!({
            "quotient": self.quotient.to_json_value(),
            "remainder": self.remainder.to_json_value(),
            "exact": self.exact,
        })
    }
}

impl ToJson for SnowflakeReport {
    fn to_json_value(&self) -> Value {
        let mut quantities = Map::new();
        for (symbol, q) in self.fields() {
            quantities.insert(symbol.to_string(), q.to_json_value());
        }
        json!({ "n": linear(&self.n), "quantities": quantities })
    }
}

impl ToJson for ComparisonReport {
    fn to_json_value(&self) -> Value {
        let mut entries = Map::new();
        for e in &self.entries {
            entries.insert(
                e.symbol.to_string(),
                json!({
                    "ratio": e.ratio.to_json_value(),
                    "difference": e.difference.to_json_value(),
                }),
            );
        }
        json!({ "n": linear(&self.n), "k": linear(&self.k), "entries": entries })
    }
}

impl ToJson for MeasureValue {
    fn to_json_value(&self) -> Value {
        let (kind, x) = match self {
            MeasureValue::Exact(x) => ("exact", x),
            MeasureValue::Floored(x) => ("floor", x),
        };
        json!({ "kind": kind, "value": x.to_json_value(), "text": print_canonical(x, true) })
    }
}

impl ToJson for MeasureEntry {
    fn to_json_value(&self) -> Value {
        json!({
            "set": self.set_id.name(),
            "description": self.set_id.description(),
            "count": self.count.to_json_value(),
            "cardinality": self.cardinality.name(),
        })
    }
}

fn bad(msg: impl Into<String>) -> GrossError {
    GrossError::Json(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field '{key}'")))
}

fn decode_rational(v: &Value) -> Result<Rational> {
    v.as_str()
        .ok_or_else(|| bad("rational must be a string"))?
        .parse()
        .map_err(|_| bad(format!("invalid rational {v}")))
}

fn decode_term(v: &Value) -> Result<GrossTerm> {
    let coeff = decode_rational(field(v, "coeff")?)?;
    let g = decode_rational(field(v, "g")?)?;
    let expmap = field(v, "expmap")?
        .as_object()
        .ok_or_else(|| bad("expmap must be an object"))?
        .iter()
        .map(|(p, a)| {
            let p: u64 = p.parse().map_err(|_| bad(format!("invalid prime '{p}'")))?;
            Ok((p, decode_rational(a)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut map = PrimePowerMap::new();
    for (p, a) in expmap {
        if map.get(p).is_some() {
            return Err(bad(format!("duplicate prime {p}")));
        }
        map.accumulate(p, &a);
    }
    GrossTerm::new(coeff, g, map).ok_or_else(|| bad("zero coefficient"))
}

/// Decodes and validates an encoded `GrossExpr`. The `class` field is
/// recomputed and checked.
pub fn expr_from_json_value(v: &Value) -> Result<GrossExpr> {
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| bad("terms must be an array"))?
        .iter()
        .map(decode_term)
        .collect::<Result<Vec<_>>>()?;
    let x = GrossExpr::from_untrusted_terms(terms)?;
    if let Some(class) = v.get("class") {
        if class.as_str() != Some(x.classify().kind.name()) {
            return Err(bad(format!("class {class} does not match terms")));
        }
    }
    Ok(x)
}

pub fn expr_from_json(text: &str) -> Result<GrossExpr> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    expr_from_json_value(&v)
}

pub fn quantity_from_json(text: &str) -> Result<Quantity> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let unit = field(&v, "unit")?
        .as_str()
        .and_then(Unit::from_name)
        .ok_or_else(|| bad("unknown unit"))?;
    Ok(Quantity::new(expr_from_json_value(field(&v, "value")?)?, unit))
}
