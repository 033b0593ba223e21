//! Exact arithmetic with grossone (①), the Koch snowflake at finite and
//! infinite iteration counts, and the measure catalog of common sets.

pub mod batch;
pub mod error;
pub mod gross;
pub mod koch;
pub mod lang;
pub mod linear;
pub mod oracle;
pub mod rational;
pub mod sets;
pub mod sums;

pub use error::{GrossError, Result};
pub use gross::{DivResult, GrossExpr, GrossTerm, NumClass, NumKind, OrderKey, RawTerm};
pub use linear::GrossLinear;
pub use rational::{PrimePowerMap, Rational};
