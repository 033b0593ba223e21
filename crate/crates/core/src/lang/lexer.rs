use crate::error::{GrossError, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TokenKind {
    Number,
    Grossone,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Identifier,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset into the source.
    pub pos: usize,
}

impl Token {
    /// Exact value of a `Number` token.
    pub fn value(&self) -> Result<Rational> {
        self.lexeme.parse::<Rational>().map_err(|_| GrossError::Syntax {
            pos: self.pos,
            msg: format!("invalid number '{}'", self.lexeme),
        })
    }
}

pub const GROSSONE: char = '\u{2460}';
pub const GROSSONE_ASCII: &str = "G1";

/// Splits source text into tokens. A fraction `p/q` written without spaces
/// is a single number token.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < src.len() {
        let c = src[i..].chars().next().expect("in bounds");
        let start = i;
        let single = |kind| Token {
            kind,
            lexeme: c.to_string(),
            pos: start,
        };
        match c {
            c if c.is_whitespace() => {
                i += c.len_utf8();
                continue;
            }
            '+' => tokens.push(single(TokenKind::Plus)),
            '-' => tokens.push(single(TokenKind::Minus)),
            '*' => tokens.push(single(TokenKind::Star)),
            '/' => tokens.push(single(TokenKind::Slash)),
            '^' => tokens.push(single(TokenKind::Caret)),
            '(' => tokens.push(single(TokenKind::LParen)),
            ')' => tokens.push(single(TokenKind::RParen)),
            GROSSONE => tokens.push(single(TokenKind::Grossone)),
            '0'..='9' | '.' => {
                let mut j = digits_from(i);
                if j < bytes.len() && bytes[j] == b'.' {
                    j = digits_from(j + 1);
                }
                if j == i + 1 && c == '.' {
                    return Err(GrossError::Syntax {
                        pos: start,
                        msg: "expected digits around '.'".into(),
                    });
                }
                let is_fraction = j + 1 < bytes.len()
                    && bytes[j] == b'/'
                    && bytes[j + 1].is_ascii_digit()
                    && !src[i..j].contains('.');
                if is_fraction {
                    let k = digits_from(j + 1);
                    // "1/2.5" is a division, not a fraction literal
                    if !(k < bytes.len() && bytes[k] == b'.') {
                        j = k;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Number,
                    lexeme: src[i..j].to_string(),
                    pos: start,
                });
                i = j;
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while let Some(ch) = src[j..].chars().next() {
                    if ch.is_alphanumeric() || ch == '_' {
                        j += ch.len_utf8();
                    } else {
                        break;
                    }
                }
                let word = &src[i..j];
                let kind = if word == GROSSONE_ASCII {
                    TokenKind::Grossone
                } else {
                    TokenKind::Identifier
                };
                tokens.push(Token {
                    kind,
                    lexeme: word.to_string(),
                    pos: start,
                });
                i = j;
                continue;
            }
            other => {
                return Err(GrossError::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        }
        i += c.len_utf8();
    }
    Ok(tokens)
}
