//! Finite simplicial sets, lifting problems, homotopy truncation of
//! quasi-categories and of operads.

pub mod constructions;
pub mod degreewise;
pub mod error;
pub mod io;
pub mod operad;
pub mod report;
pub mod simplex;
pub mod smap;
pub mod solver;
pub mod sset;
pub mod truncation;

pub use error::{Error, Result};
pub use simplex::Simplex;
pub use smap::SMap;
pub use sset::{SSet, SSetBuilder};
