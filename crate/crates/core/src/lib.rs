//! Small roots of polynomial congruences.
//!
//! The crate has two halves. The constructive half finds every integer `x`
//! with `|x| <= X` and `f(x) ≡ 0 (mod N)` by lattice reduction ([`coppersmith`],
//! built on the exact LLL in [`lattice`]). The analytic half decides from
//! capacity theory whether such a search can succeed at all ([`capacity`]),
//! and supplies the integer-valued polynomial tools ([`binomial`]) and
//! obstruction bounds ([`negative`]) used to explore its limits.

pub mod arith;
pub mod binomial;
pub mod capacity;
pub mod cli;
pub mod coppersmith;
pub mod error;
pub mod lattice;
pub mod negative;
pub mod poly;

pub use error::{Error, Result};

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
