//! Exact enumeration of records in rooted labelled (Cayley) trees and rooted
//! forests.
//!
//! A node of a rooted tree is a *record* when its label is the largest on the
//! path from the root to it. Rooted forests are modelled as trees hanging from
//! an auxiliary root labelled `0`, which is never a record.
//!
//! The crate provides:
//!
//! * tree representation, record detection and exhaustive enumeration through
//!   Prüfer codes ([`tree`], [`prufer`]);
//! * the record decomposition into bonsai and attachment sequences together
//!   with the type-indexed counting formulas ([`composition`],
//!   [`decomposition`]);
//! * closed forms, recurrences and brute-force oracles for the tree and forest
//!   record numbers ([`counting`]);
//! * a truncated bivariate exponential generating function calculus over exact
//!   rationals ([`series`]);
//! * log-concavity, peak, asymptotic and queueing analyses ([`analysis`]);
//! * cross-validation suites shared by the CLI and the test-suite ([`verify`]).

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod composition;
pub mod counting;
pub mod decomposition;
mod error;
pub mod prufer;
pub mod series;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
