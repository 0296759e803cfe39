use crate::linalg::Subspace;

use super::Module;

/// Per-vertex subspaces of an ambient module, each in RREF.
///
/// A `Submodule` does not hold its ambient module; operations take both.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn from_spaces(spaces: Vec<Subspace>) -> Self {
        Submodule { spaces }
    }

    pub fn zero(m: &Module) -> Self {
        let f = m.field();
        Submodule {
            spaces: m.dims().iter().map(|&d| Subspace::zero(f, d)).collect(),
        }
    }

    pub fn full(m: &Module) -> Self {
        let f = m.field();
        Submodule {
            spaces: m.dims().iter().map(|&d| Subspace::full(f, d)).collect(),
        }
    }

    pub fn space(&self, v: usize) -> &Subspace {
        &self.spaces[v]
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_contained_in(&self, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule {
            spaces: self
                .spaces
                .iter()
                .zip(&other.spaces)
                .map(|(a, b)| a.sum(b).expect("same ambient"))
                .collect(),
        }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule {
            spaces: self
                .spaces
                .iter()
                .zip(&other.spaces)
                .map(|(a, b)| a.intersect(b).expect("same ambient"))
                .collect(),
        }
    }

    /// Checks closure under every arrow of the ambient module.
    pub fn is_closed_in(&self, m: &Module) -> bool {
        m.algebra().quiver().arrows().iter().enumerate().all(|(ai, a)| {
            self.spaces[a.source]
                .basis()
                .iter()
                .all(|b| self.spaces[a.target].contains(&m.action(ai).apply(b)))
        })
    }
}
