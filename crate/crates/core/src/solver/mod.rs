//! Search over simplicial maps: enumeration, extension and lifting
//! problems, homotopies relative to a subcomplex and bracket sets.

pub mod funcomplex;
pub mod homotopy;
pub mod lifting;
pub mod search;

pub use funcomplex::{fun_complex, FunComplex};
pub use homotopy::{homotopy_classes, is_homotopic_rel, HClassSet, Homotopy};
pub use lifting::{
    edge_is_equivalence, has_rlp, is_cocartesian_edge, is_inner_fibration_up_to, is_kan_up_to,
    is_quasicategory_up_to, pi0, Bound, QCat,
};
pub use search::{enumerate_maps, extend_map, ExtensionProblem, Mode, Solver, DEFAULT_BUDGET};
