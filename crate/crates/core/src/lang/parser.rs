//! Recursive-descent parser and elaborator.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := NUMBER | GROSSONE | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so
//! `-2^2` is `-4` and `①^-1` is `①^(-1)`.

use crate::error::{GrossError, Result};
use crate::gross::{GrossExpr, GrossTerm};
use crate::lang::lexer::{tokenize, Token, TokenKind};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AstKind {
    Literal(Rational),
    Grossone,
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Box<Ast>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ast {
    pub kind: AstKind,
    pub pos: usize,
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, kind: TokenKind) -> Option<Token> {
        if self.peek().is_some_and(|t| t.kind == kind) {
            self.idx += 1;
            return Some(self.tokens[self.idx - 1].clone());
        }
        None
    }

    fn error(&self, msg: &str) -> GrossError {
        let found = self
            .peek()
            .map_or("end of input".to_string(), |t| format!("'{}'", t.lexeme));
        GrossError::Syntax {
            pos: self.pos(),
            msg: format!("{msg}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            let kind = match self.peek().map(|t| t.kind) {
                Some(TokenKind::Plus) => AstKind::Add,
                Some(TokenKind::Minus) => AstKind::Sub,
                _ => return Ok(lhs),
            };
            let pos = self.pos();
            self.idx += 1;
            let rhs = self.term()?;
            lhs = Ast {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            let kind = match self.peek().map(|t| t.kind) {
                Some(TokenKind::Star) => AstKind::Mul,
                Some(TokenKind::Slash) => AstKind::Div,
                _ => return Ok(lhs),
            };
            let pos = self.pos();
            self.idx += 1;
            let rhs = self.unary()?;
            lhs = Ast {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if let Some(t) = self.eat(TokenKind::Minus) {
            let inner = self.unary()?;
            return Ok(Ast {
                kind: AstKind::Neg(Box::new(inner)),
                pos: t.pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(t) = self.eat(TokenKind::Caret) {
            let exp = self.unary()?;
            return Ok(Ast {
                kind: AstKind::Pow(Box::new(base), Box::new(exp)),
                pos: t.pos,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("expected a number, grossone or '('"));
        };
        let kind = match tok.kind {
            TokenKind::Number => AstKind::Literal(tok.value()?),
            TokenKind::Grossone => AstKind::Grossone,
            TokenKind::LParen => {
                self.idx += 1;
                let inner = self.expr()?;
                if self.eat(TokenKind::RParen).is_none() {
                    return Err(self.error("expected ')'"));
                }
                return Ok(inner);
            }
            TokenKind::Identifier => {
                return Err(GrossError::UnknownIdentifier {
                    pos: tok.pos,
                    name: tok.lexeme,
                })
            }
            _ => return Err(self.error("expected a number, grossone or '('")),
        };
        self.idx += 1;
        Ok(Ast { kind, pos: tok.pos })
    }
}

pub fn parse(src: &str) -> Result<Ast> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        idx: 0,
        end: src.len(),
    };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("expected an operator"));
    }
    Ok(ast)
}

/// Elaborated value. `truncation` is the order of the largest term lost to
/// truncated division, when any division was inexact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Elaborated {
    pub value: GrossExpr,
    pub truncation: Option<GrossTerm>,
}

impl Elaborated {
    pub fn exact(&self) -> bool {
        self.truncation.is_none()
    }

    fn exact_value(value: GrossExpr) -> Self {
        Elaborated {
            value,
            truncation: None,
        }
    }
}

fn larger(a: Option<GrossTerm>, b: Option<GrossTerm>) -> Option<GrossTerm> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.cmp_order(&y).is_ge() { x } else { y }),
        (x, y) => x.or(y),
    }
}

/// Order of `err · lead`.
fn scaled(err: &Option<GrossTerm>, by: &GrossExpr) -> Option<GrossTerm> {
    let e = err.as_ref()?;
    let lead = by.leading()?;
    let prod = &GrossExpr::from_term(e.clone()) * &GrossExpr::from_term(lead.unit());
    prod.leading().map(GrossTerm::unit)
}

/// Evaluates the tree bottom-up; divisions keep at most `max_terms`
/// quotient terms.
pub fn elaborate(ast: &Ast, max_terms: usize) -> Result<Elaborated> {
    let at = |e: GrossError| e.at(ast.pos);
    match &ast.kind {
        AstKind::Literal(r) => Ok(Elaborated::exact_value(GrossExpr::constant(r.clone()))),
        AstKind::Grossone => Ok(Elaborated::exact_value(GrossExpr::grossone())),
        AstKind::Neg(x) => {
            let x = elaborate(x, max_terms)?;
            Ok(Elaborated {
                value: -&x.value,
                truncation: x.truncation,
            })
        }
        AstKind::Add(a, b) | AstKind::Sub(a, b) => {
            let a = elaborate(a, max_terms)?;
            let b = elaborate(b, max_terms)?;
            let value = if matches!(ast.kind, AstKind::Add(..)) {
                &a.value + &b.value
            } else {
                &a.value - &b.value
            };
            Ok(Elaborated {
                value,
                truncation: larger(a.truncation, b.truncation),
            })
        }
        AstKind::Mul(a, b) => {
            let a = elaborate(a, max_terms)?;
            let b = elaborate(b, max_terms)?;
            Ok(Elaborated {
                truncation: larger(scaled(&a.truncation, &b.value), scaled(&b.truncation, &a.value)),
                value: &a.value * &b.value,
            })
        }
        AstKind::Div(a, b) => {
            let a = elaborate(a, max_terms)?;
            let b = elaborate(b, max_terms)?;
            if !b.exact() {
                return Err(at(GrossError::Unrepresentable(
                    "division by a truncated quotient".into(),
                )));
            }
            let d = a.value.divmod(&b.value, max_terms).map_err(at)?;
            let own = d.truncation_order(&b.value);
            let carried = a.truncation.as_ref().and_then(|e| {
                let lead = b.value.leading()?.unit();
                let q = GrossExpr::from_term(e.clone()).divmod(&GrossExpr::from_term(lead), 1).ok()?;
                q.quotient.leading().map(GrossTerm::unit)
            });
            Ok(Elaborated {
                value: d.quotient,
                truncation: larger(own, carried),
            })
        }
        AstKind::Pow(base, exp) => {
            let x = elaborate(base, max_terms)?;
            let n = elaborate(exp, max_terms)?;
            let lin = match (n.exact(), n.value.as_linear()) {
                (true, Some(lin)) => lin,
                _ => {
                    return Err(GrossError::Unrepresentable(
                        "exponent must be a·① + b with rational a and b".into(),
                    )
                    .at(exp.pos))
                }
            };
            let value = x.value.pow(&lin).map_err(at)?;
            let truncation = match &x.truncation {
                None => None,
                Some(_) => {
                    let k = lin
                        .b
                        .to_i64()
                        .filter(|k| lin.is_finite() && *k >= 1)
                        .ok_or_else(|| at(GrossError::Unrepresentable(
                            "non-integer power of a truncated quotient".into(),
                        )))?;
                    let lead = GrossExpr::from_term(x.value.leading().map(GrossTerm::unit).ok_or_else(|| {
                        at(GrossError::Unrepresentable("power of a truncated zero".into()))
                    })?);
                    let rest = lead.pow(&crate::linear::GrossLinear::finite(k - 1)).map_err(at)?;
                    scaled(&x.truncation, &rest)
                }
            };
            Ok(Elaborated { value, truncation })
        }
    }
}

/// Parses and elaborates in one step.
pub fn evaluate(src: &str, max_terms: usize) -> Result<Elaborated> {
    elaborate(&parse(src)?, max_terms)
}
