//! Truncated `Fin_*`, ∞-operads presented over its nerve, `d`-operads and
//! the `d`-homotopy operad.

pub mod alg;
pub mod colored;
pub mod data;
pub mod extract;
pub mod finstar;
pub mod mul;
pub mod truncate;

pub use colored::{ColoredOperad, OperadTables};
pub use data::{Arrows, OperadData};
pub use extract::to_colored;
pub use finstar::{FinStar, MapClass};
pub use truncate::{check_operad_map, h_d_operad, is_d_operad, iso_over_fin, OperadTruncation};
pub use mul::{multi_mapping_space, mul_truncation_verify, MultiMapSpace};
pub use alg::{alg_complex, AlgComplex};
