//! Constructions on finite simplicial sets.

pub mod cones;
pub mod iso;
pub mod nerve;
pub mod product;
pub mod pushout;
pub mod standard;

pub use cones::{Cone, ConeKind, JoinPart, JoinPoint, RelCylinder};
pub use iso::iso_check;
pub use nerve::{Category, Chain, Functor, MorphismSpec, Nerve};
pub use product::Product;
pub use pushout::{quotient, Origin, Pushout};
pub use standard::{
    boundary, boundary_complex, horn, horn_complex, skeleton, subcomplex, standard, standard_complex, standard_skeleton,
    VertexComplex,
};
