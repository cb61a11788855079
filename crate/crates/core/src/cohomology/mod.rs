//! `H²(G, Q/Z)` of small groups from the normalized bar complex, and the Bogomolov kernel
//! of restrictions to bicyclic subgroups.

mod bogomolov;
mod cayley;
mod cochain;
mod model;
pub mod modlat;

pub use bogomolov::{
    bogomolov_multiplier, bogomolov_report, h2_qz, maximal_bicyclic_subgroups, restrict_cocycle, triviality_witness,
    verify_certificate, BogomolovReport, KernelCertificate, VanishingWitness,
};
pub use cayley::{bicyclic_subgroups, CayleyGroup, DEFAULT_COHOMOLOGY_BOUND};
pub use cochain::{bockstein, d1, d2, is_homomorphism, restrict, Cochain2};
pub use model::{BocksteinTerm, CohomologyModule, TrivialityWitness};

use crate::error::Result;
use crate::group::PermGroup;

pub fn cayley_from_permgroup(group: &PermGroup) -> Result<CayleyGroup> {
    CayleyGroup::from_permgroup(group, DEFAULT_COHOMOLOGY_BOUND)
}
