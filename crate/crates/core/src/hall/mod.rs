//! The Hall algebra in the stratum basis: expansions, Reineke inversion, the
//! counting measure, the vertex projector and polygon peeling.

mod element;
mod integrate;
mod peel;
mod product;
mod reineke;
mod serial;

pub use element::{FactorKind, HallElement, ProductExpression, ProductTerm};
pub use integrate::{
    full_to_semistable, integrate, integrate_full_product, integrate_semistable_product, SsVolumes,
};
pub use peel::{hn_projector, peel, replay, PeelCertificate, PeelStep};
pub use product::{expand_one, strata_to_product, torsion_split, TorsionTerm};
pub use reineke::reineke_invert;
pub use serial::{certificate_from_json, certificate_to_json, element_from_json, element_to_json, SCHEMA};
