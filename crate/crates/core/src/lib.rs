//! Exact Wedderburn data, central units and primitive idempotents for the
//! rational group algebras of small strongly monomial groups.

pub mod error;
pub mod algebra;
pub mod exactnum;
pub mod group;
pub mod shoda;
pub mod units;
pub mod idem;
pub mod unitgens;

pub use error::{Error, Result};
