//! Batch sweeps over many iteration counts or substitution points.
//!
//! With the `parallel` feature (on by default) `Mode::Parallel` runs on the
//! rayon pool; without it every mode runs sequentially.

use crate::error::Result;
use crate::gross::GrossExpr;
use crate::koch::{recurrence_oracle, report, SnowflakeReport};
use crate::linear::GrossLinear;
use crate::oracle::eval_at;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

/// Applies `f` to every item, stopping at the first error.
pub fn try_map<T, U, F>(mode: Mode, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn reports(mode: Mode, ns: &[GrossLinear]) -> Result<Vec<SnowflakeReport>> {
    try_map(mode, ns, report)
}

/// `x` with ① replaced by each of `ms`.
pub fn eval_many(mode: Mode, x: &GrossExpr, ms: &[Rational]) -> Result<Vec<Rational>> {
    try_map(mode, ms, |m| eval_at(x, m))
}

/// First finite step in `0..=steps` where the closed forms and the
/// recurrence disagree.
pub fn first_recurrence_mismatch(mode: Mode, steps: u32) -> Result<Option<u32>> {
    let expected = recurrence_oracle(steps)?;
    let checks = try_map(mode, &expected, |e| {
        let r = report(&GrossLinear::finite(i64::from(e.n)))?;
        let mut got = vec![&r.sides, &r.side_length, &r.perimeter, &r.area];
        let mut want = vec![&e.sides, &e.side_length, &e.perimeter, &e.area];
        // T_n = N_(n-1) only describes real steps, n >= 1
        if e.n > 0 {
            got.extend([&r.added_triangles, &r.added_area]);
            want.extend([&e.added_triangles, &e.added_area]);
        }
        let got: Vec<_> = got.into_iter().map(|q| q.value.as_rational()).collect();
        let want: Vec<_> = want.into_iter().map(|v| Some(v.clone())).collect();
        Ok((e.n, got == want))
    })?;
    Ok(checks.into_iter().find(|(_, ok)| !ok).map(|(n, _)| n))
}
