//! Finite-dimensional right modules over a bound quiver algebra.

mod hom;
mod module;
mod resolution;
mod submodule;

use thiserror::Error;

pub use hom::{hom_space, in_add, is_iso, is_iso_seeded, HomSpace, ModuleHom, DEFAULT_ISO_SEED, DEFAULT_ISO_TRIALS};
pub use module::Module;
pub use resolution::{
    first_syzygy, is_projective, largest_submodule_supported_on, projective_cover, strip_projective_summands,
    sum_of_projectives, syzygy, syzygy_dim, ProjectiveCover,
};
pub use submodule::Submodule;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("matrix shapes do not match the quiver")]
    ShapeMismatch,
    #[error("relation {0} does not act as zero")]
    RelationViolated(usize),
}

#[cfg(test)]
mod tests;
