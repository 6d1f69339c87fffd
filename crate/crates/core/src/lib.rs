//! Exact Hurwitz numbers and Hodge integrals.
//!
//! Connected Hurwitz numbers `h_{g;k_1..k_n}` are computed by three
//! independent engines:
//!
//! - [`engines::brute_force_hurwitz`]: direct enumeration of transposition
//!   tuples with an orbit-based transitivity test,
//! - [`engines::connected_hurwitz`]: class-algebra counting through
//!   symmetric-group characters, followed by labeled-pole inclusion–exclusion,
//! - [`engines::cut_and_join_hurwitz`]: the cut-and-join recursion on a
//!   generating series in power-sum variables.
//!
//! The [`elsv`] module relates these numbers to Hodge integrals over moduli
//! spaces of curves, in both directions, and [`series`] checks the resulting
//! one-point integrals against the `(t/2 / sin(t/2))^{k+1}` generating series.
//!
//! Every value is an exact rational. There is no floating point anywhere.

pub mod elsv;
pub mod engines;
mod error;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod series;
pub mod symgroup;

pub use error::{Error, Result};
pub use rational::Rational;
pub use symgroup::{Partition, PoleProfile};
