//! Egalitarian values for cooperative games with level structures.
//!
//! A level game pairs a TU game `(N, v)` with a sequence of nested
//! partitions of `N`, from singletons up to the grand coalition. This crate
//! computes the equal-division style values on such games (ED, ESD, LED and
//! three level-aware equal surplus variants), checks the axioms that
//! characterize them, and loads games from a TOML file format.

pub mod axioms;
mod coalition;
pub mod error;
pub mod fee;
pub mod format;
mod game;
mod structure;
pub mod values;
mod worth;

pub use coalition::{Coalition, Members, PlayerId, Subsets, MAX_PLAYERS};
pub use error::{GameError, Result};
pub use game::{LevelGame, QuotientGame};
pub use structure::{LevelStructure, Partition};
pub use values::{compute, compute_exact, Allocation, RequiredCoalitions, ValueId};
pub use worth::{CharacteristicFunction, Restriction, MAX_COMPLETE_PLAYERS};
