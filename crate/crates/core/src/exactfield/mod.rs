//! Exact scalars: multivariate polynomials and rational functions over the
//! rationals in a fixed list of named symbols.

mod expand;
mod gcd;
mod mpoly;
mod ratfunc;
mod symbol;

pub use expand::{series_expand, ExpansionPoint};
pub use gcd::gcd;
pub use mpoly::{MPoly, Monomial, Rat};
pub use ratfunc::{ratfunc_normalize, sym, RatFunc};
pub use symbol::{Symbol, NVARS};

use std::collections::HashMap;

use crate::error::Result;

/// Exact value of `f` at a point.
pub fn ratfunc_eval(f: &RatFunc, assignment: &HashMap<Symbol, Rat>) -> Result<Rat> {
    f.eval(assignment)
}

/// Small integer as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Builds an assignment map from `(symbol, integer)` pairs.
pub fn assignment(pairs: &[(Symbol, i64)]) -> HashMap<Symbol, Rat> {
    pairs.iter().map(|(s, v)| (*s, rat(*v))).collect()
}
