//! Textual interface: lexer, parser, printer and JSON encoding.

pub mod json;
pub mod lexer;
pub mod parser;
pub mod print;

pub use json::{expr_from_json, expr_from_json_value, quantity_from_json, ToJson};
pub use parser::{elaborate, evaluate, parse, Ast, AstKind, Elaborated};
pub use print::print_canonical;
