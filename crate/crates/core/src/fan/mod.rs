//! Simplicial cones and finite windows of the periodic smoothing fans.
//!
//! Each fan family is a [`FanFamily`] strategy: a generator formula for its
//! maximal cones plus the lattice automorphisms translating it. Families are
//! looked up by name through [`FamilyRegistry`].

mod cone;
mod family;
mod registry;
mod window;

use serde::Serialize;

pub use cone::{apply, cone_is_smooth, share_facet, Cone};
pub use family::{
    EllipticSmoothing, FanFamily, FanKind, HopfSmoothing, IndexShift, MumfordNeron,
    RationalSmoothing,
};
pub use registry::FamilyRegistry;
pub use window::{cone_at, deflection, hinge_ray, index_tuples, FanWindow, IndexRange};

pub(crate) use window::{hinge_from, FanWindowJson};

use crate::error::{Error, Result};
use crate::lattice::{is_unimodular, IntMatrix};

/// A group element acting on the toric variety: a unimodular lattice part and
/// symbolic labels for its torus translation, one per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub lattice_part: IntMatrix,
    pub torus_part: Vec<String>,
}

impl GroupElement {
    pub fn new(lattice_part: IntMatrix, torus_part: Vec<String>) -> Result<Self> {
        if !is_unimodular(&lattice_part) {
            return Err(Error::InvalidDatum(format!(
                "lattice part {lattice_part} is not unimodular"
            )));
        }
        if torus_part.len() != lattice_part.dim() {
            return Err(Error::DimMismatch {
                matrix: lattice_part.dim(),
                cone: torus_part.len(),
            });
        }
        Ok(GroupElement {
            lattice_part,
            torus_part,
        })
    }

    /// Pure lattice automorphism with trivial torus translation.
    pub fn lattice(lattice_part: IntMatrix) -> Result<Self> {
        let dim = lattice_part.dim();
        Self::new(lattice_part, vec!["1".to_string(); dim])
    }

    pub fn apply(&self, cone: &Cone) -> Result<Cone> {
        apply(&self.lattice_part, cone)
    }
}
