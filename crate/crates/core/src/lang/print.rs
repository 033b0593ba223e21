use num_bigint::BigInt;

use crate::gross::{GrossExpr, GrossTerm};
use crate::lang::lexer::{GROSSONE, GROSSONE_ASCII};
use crate::rational::{PrimePowerMap, Rational, FACTOR_LIMIT};


fn symbol(ascii: bool) -> String {
    if ascii {
        GROSSONE_ASCII.to_string()
    } else {
        GROSSONE.to_string()
    }
}

fn is_power_of_ten(n: &BigInt) -> bool {
    let s = n.to_string();
    s.starts_with('1') && s[1..].bytes().all(|b| b == b'0')
}

/// Coefficients print as decimals when the denominator is 2 or a power of
/// ten, otherwise as `p/q`.
fn coefficient(c: &Rational) -> String {
    let den = c.denom();
    if den == &BigInt::from(2) || is_power_of_ten(den) {
        if let Some(d) = c.to_decimal() {
            return d;
        }
    }
    c.to_string()
}

/// A coefficient followed by `*`; plain fractions get parentheses.
fn factor_coefficient(c: &Rational) -> String {
    let s = coefficient(c);
    if c.is_integer() || s != c.to_string() {
        s
    } else {
        format!("({c})")
    }
}

/// Exponents print as decimals whenever they terminate.
fn exponent(e: &Rational) -> String {
    match e.to_decimal() {
        Some(d) => d,
        None => format!("({e})"),
    }
}

fn grossone_multiple(k: &Rational, ascii: bool) -> String {
    let g = symbol(ascii);
    if k.is_one() {
        g
    } else if (-k).is_one() {
        format!("(-{g})")
    } else {
        format!("({}*{g})", factor_coefficient(k))
    }
}

fn base(b: &Rational) -> String {
    if b.is_integer() && b.is_positive() {
        b.to_string()
    } else {
        format!("({b})")
    }
}

/// Exponential part `∏ p^(a_p·①)` as one rational base raised to a
/// multiple of ①, or prime by prime when that base is too large.
fn exponential(expmap: &PrimePowerMap, ascii: bool) -> Vec<String> {
    let l = expmap.denominator_lcm();
    let lr = Rational::from_int(l.clone());
    let integral = expmap.scaled(&lr);
    if let Ok(b) = integral.unfactor() {
        // bases the parser cannot factor back print prime by prime
        let limit = BigInt::from(FACTOR_LIMIT);
        if b.numer() <= &limit && b.denom() <= &limit {
            let k = Rational::one().checked_div(&lr).expect("lcm is positive");
            return vec![format!("{}^{}", base(&b), grossone_multiple(&k, ascii))];
        }
    }
    expmap
        .iter()
        .map(|(p, a)| format!("{p}^{}", grossone_multiple(a, ascii)))
        .collect()
}

fn term(t: &GrossTerm, ascii: bool, leading: bool) -> String {
    let c = if leading { t.coeff().clone() } else { t.coeff().abs() };
    let mut factors = Vec::new();
    if !t.g().is_zero() {
        let g = symbol(ascii);
        if t.g().is_one() {
            factors.push(g);
        } else {
            factors.push(format!("{g}^{}", exponent(t.g())));
        }
    }
    if !t.expmap().is_empty() {
        factors.extend(exponential(t.expmap(), ascii));
    }
    if factors.is_empty() {
        return coefficient(&c);
    }
    let body = factors.join("*");
    if c.is_one() {
        body
    } else if (-&c).is_one() {
        format!("-{body}")
    } else if c.is_negative() && !c.is_integer() {
        format!("-{}*{body}", factor_coefficient(&c.abs()))
    } else {
        format!("{}*{body}", factor_coefficient(&c))
    }
}

/// Paper-style rendering, terms from largest to smallest. `ascii` spells
/// grossone as `G1`.
pub fn print_canonical(x: &GrossExpr, ascii: bool) -> String {
    let mut out = String::new();
    for (i, t) in x.terms().iter().enumerate() {
        if i == 0 {
            out.push_str(&term(t, ascii, true));
        } else {
            out.push_str(if t.coeff().is_negative() { " - " } else { " + " });
            out.push_str(&term(t, ascii, false));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
