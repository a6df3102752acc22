//! Binary linear complementary dual (LCD) codes: GF(2) linear algebra, hull
//! and parity analysis, normal forms, constructions, and expansion of codes
//! over `F_{2^m}`.

pub mod code;
mod combin;
pub mod conjecture;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod expansion;
pub mod format;
pub mod gf2;
pub mod harness;
pub mod normal_form;

pub use code::{CoordinateSet, LinearCode, Parity, ParityClass};
pub use distance::{Engine, K_FULL, W_MAX};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
