use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{extends_to_basis, rational_rank, IntMatrix, IntVec};

/// A simplicial rational cone given by primitive, linearly independent rays.
/// Rays are kept in lexicographic order so equal cones compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cone {
    rays: Vec<IntVec>,
    #[serde(skip)]
    rank: usize,
}

impl Cone {
    pub fn new(mut rays: Vec<IntVec>) -> Result<Self> {
        let rank = rays
            .first()
            .map(IntVec::rank)
            .ok_or_else(|| Error::InvalidCone("cone without rays".into()))?;
        if let Some(bad) = rays.iter().find(|r| r.rank() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: bad.rank(),
            });
        }
        if let Some(bad) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(Error::InvalidCone(format!("ray {bad} is not primitive")));
        }
        let stacked: Vec<_> = rays.iter().map(|r| r.entries().to_vec()).collect();
        if rational_rank(&stacked) != rays.len() {
            return Err(Error::InvalidCone("rays are linearly dependent".into()));
        }
        rays.sort();
        Ok(Cone { rays, rank })
    }

    pub fn from_i64_rays<R: AsRef<[i64]>>(rays: &[R]) -> Result<Self> {
        Self::new(rays.iter().map(|r| IntVec::from_i64s(r.as_ref())).collect())
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Rank of the ambient lattice.
    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn contains_ray(&self, ray: &IntVec) -> bool {
        self.rays.binary_search(ray).is_ok()
    }

    pub fn common_rays(&self, other: &Cone) -> Vec<IntVec> {
        self.rays
            .iter()
            .filter(|r| other.contains_ray(r))
            .cloned()
            .collect()
    }
}

/// Smooth iff the rays extend to a basis of the ambient lattice.
pub fn cone_is_smooth(cone: &Cone) -> bool {
    extends_to_basis(&cone.rays).unwrap_or(false)
}

/// Right action of a lattice automorphism on a cone. A cone in `Z^r` is
/// regarded inside `Z^r ⊕ 0` when the matrix is larger; the image must stay
/// in that sublattice.
pub fn apply(matrix: &IntMatrix, cone: &Cone) -> Result<Cone> {
    let (dim, rank) = (matrix.dim(), cone.ambient_rank());
    if dim < rank {
        return Err(Error::DimMismatch {
            matrix: dim,
            cone: rank,
        });
    }
    let mut image = Vec::with_capacity(cone.dim());
    for ray in cone.rays() {
        let mut out = matrix.act_on(&ray.embed(dim))?.into_entries();
        if out[rank..]
            .iter()
            .any(|x| x != &num_bigint::BigInt::from(0))
        {
            return Err(Error::DimMismatch {
                matrix: dim,
                cone: rank,
            });
        }
        out.truncate(rank);
        image.push(IntVec::new(out));
    }
    Cone::new(image)
}

/// Facet adjacency of two cones of equal dimension: they share all but one
/// ray. Equal cones are not adjacent.
pub fn share_facet(a: &Cone, b: &Cone) -> bool {
    if a.ambient_rank() != b.ambient_rank() || a.dim() != b.dim() || a == b {
        return false;
    }
    a.common_rays(b).len() + 1 == a.dim()
}
