//! Experiment plumbing: exhaustive tables, randomized search, bound tables
//! and the construction ledger.

pub mod bounds;
pub mod ledger;
pub mod search;
pub mod table;
