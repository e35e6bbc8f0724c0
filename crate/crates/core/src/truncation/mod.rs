//! `d`-categories, the `d`-homotopy category and its mapping spaces.

pub mod alpha;
pub mod dcat;
pub mod hd;
pub mod lemmas;
pub mod mapping;
pub mod universal;

pub use alpha::{alpha_data, alpha_verify, AlphaData};
pub use dcat::{d_category_violation, is_d_category, DCatViolation};
pub use hd::{h_d, Truncation};
pub use lemmas::{cylinder_comparison, cylinder_lemma_verify, homotopy_rel_a_verify};
pub use mapping::{hom_middle, hom_right, hom_right_filtered, phi, MappingKind, MappingSpace};
pub use universal::{
    composition_verify, idempotence_verify, naturality_verify, theta_iso_verify, tower_verify,
    universal_property_verify,
};
