//! The periodic fans as interchangeable strategies behind [`FanFamily`].

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{binom2, IntMatrix, IntVec};

/// Which periodic fan a window or family is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanKind {
    /// Chain of cones `⟨(m,1),(m+1,1)⟩` in `Z^2`.
    MumfordNeron,
    /// Chain `⟨(m, e·C(m,2), 1), (m+1, e·C(m+1,2), 1)⟩` in `Z^3`.
    HopfSmoothing { e: u64 },
    /// Chain `⟨(0,n,1),(0,n+1,1)⟩` in `Z^3`.
    EllipticSmoothing,
    /// Product-like fan `σ_{m,n}` in `Z^4`.
    RationalSmoothing { e: u64 },
}

impl FanKind {
    pub fn name(&self) -> &'static str {
        match self {
            FanKind::MumfordNeron => "mumford",
            FanKind::HopfSmoothing { .. } => "hopf",
            FanKind::EllipticSmoothing => "elliptic",
            FanKind::RationalSmoothing { .. } => "rational",
        }
    }

    pub fn degree(&self) -> Option<u64> {
        match *self {
            FanKind::HopfSmoothing { e } | FanKind::RationalSmoothing { e } => Some(e),
            _ => None,
        }
    }

    /// The strategy object implementing this kind.
    pub fn family(&self) -> Box<dyn FanFamily> {
        match *self {
            FanKind::MumfordNeron => Box::new(MumfordNeron),
            FanKind::HopfSmoothing { e } => Box::new(HopfSmoothing { e }),
            FanKind::EllipticSmoothing => Box::new(EllipticSmoothing),
            FanKind::RationalSmoothing { e } => Box::new(RationalSmoothing { e }),
        }
    }
}

impl fmt::Display for FanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            Some(e) => write!(f, "{}(e={e})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// A lattice automorphism of the fan that shifts cone indices by `shift`.
#[derive(Debug, Clone)]
pub struct IndexShift {
    pub name: &'static str,
    pub matrix: IntMatrix,
    pub shift: Vec<i64>,
}

/// One periodic fan: its generator formula, the lattice automorphisms that
/// translate it, and the hinge-ray deflection it should exhibit.
pub trait FanFamily: Send + Sync {
    fn kind(&self) -> FanKind;

    /// Number of integer indices labelling a maximal cone.
    fn arity(&self) -> usize;

    fn ambient_rank(&self) -> usize;

    /// Generator formula. `index.len() == self.arity()` is checked by callers.
    fn cone_unchecked(&self, index: &[i64]) -> Cone;

    /// Expected value of `v_{i-1} + v_{i+1} - 2 v_i` along `direction`.
    fn expected_deflection(&self, direction: usize) -> IntVec;

    /// Lattice automorphisms translating the fan.
    fn shifts(&self) -> Vec<IndexShift>;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn cone(&self, index: &[i64]) -> Result<Cone> {
        if index.len() != self.arity() {
            return Err(Error::ArityMismatch {
                family: self.name(),
                expected: self.arity(),
                found: index.len(),
            });
        }
        Ok(self.cone_unchecked(index))
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Ray `(m, e·C(m,2), 1)` of the Hopf chain.
fn parabola_ray(m: i64, e: u64, tail: &[i64]) -> IntVec {
    let m = big(m);
    let mut v = vec![m.clone(), BigInt::from(e) * binom2(&m)];
    v.extend(tail.iter().map(|&x| big(x)));
    IntVec::new(v)
}

fn literal_cone(rays: Vec<IntVec>) -> Cone {
    Cone::new(rays).expect("generator formula yields a simplicial cone")
}

pub struct MumfordNeron;

impl FanFamily for MumfordNeron {
    fn kind(&self) -> FanKind {
        FanKind::MumfordNeron
    }
    fn arity(&self) -> usize {
        1
    }
    fn ambient_rank(&self) -> usize {
        2
    }
    fn cone_unchecked(&self, index: &[i64]) -> Cone {
        let m = index[0];
        literal_cone(vec![
            IntVec::from_i64s(&[m, 1]),
            IntVec::from_i64s(&[m + 1, 1]),
        ])
    }
    fn expected_deflection(&self, _direction: usize) -> IntVec {
        IntVec::zero(2)
    }
    fn shifts(&self) -> Vec<IndexShift> {
        vec![IndexShift {
            name: "T",
            matrix: IntMatrix::from_i64_rows(&[[1, 0], [1, 1]]),
            shift: vec![1],
        }]
    }
}

pub struct HopfSmoothing {
    pub e: u64,
}

impl HopfSmoothing {
    pub fn phi(e: u64) -> IntMatrix {
        let e = i64::try_from(e).expect("degree fits in i64");
        IntMatrix::from_i64_rows(&[[1, e, 0], [0, 1, 0], [1, 0, 1]])
    }
}

impl FanFamily for HopfSmoothing {
    fn kind(&self) -> FanKind {
        FanKind::HopfSmoothing { e: self.e }
    }
    fn arity(&self) -> usize {
        1
    }
    fn ambient_rank(&self) -> usize {
        3
    }
    fn cone_unchecked(&self, index: &[i64]) -> Cone {
        let m = index[0];
        literal_cone(vec![
            parabola_ray(m, self.e, &[1]),
            parabola_ray(m + 1, self.e, &[1]),
        ])
    }
    fn expected_deflection(&self, _direction: usize) -> IntVec {
        IntVec::new(vec![big(0), BigInt::from(self.e), big(0)])
    }
    fn shifts(&self) -> Vec<IndexShift> {
        vec![IndexShift {
            name: "Phi",
            matrix: Self::phi(self.e),
            shift: vec![1],
        }]
    }
}

pub struct EllipticSmoothing;

impl EllipticSmoothing {
    pub fn psi() -> IntMatrix {
        IntMatrix::from_i64_rows(&[[1, 0, 0], [0, 1, 0], [0, 1, 1]])
    }

    /// Lattice part of the torus automorphism `(t1,t2,t3) ↦ (α t1, t1^k t2, t3)`.
    pub fn phi_lattice(k: u64) -> IntMatrix {
        let k = i64::try_from(k).expect("exponent fits in i64");
        IntMatrix::from_i64_rows(&[[1, k, 0], [0, 1, 0], [0, 0, 1]])
    }
}

impl FanFamily for EllipticSmoothing {
    fn kind(&self) -> FanKind {
        FanKind::EllipticSmoothing
    }
    fn arity(&self) -> usize {
        1
    }
    fn ambient_rank(&self) -> usize {
        3
    }
    fn cone_unchecked(&self, index: &[i64]) -> Cone {
        let n = index[0];
        literal_cone(vec![
            IntVec::from_i64s(&[0, n, 1]),
            IntVec::from_i64s(&[0, n + 1, 1]),
        ])
    }
    fn expected_deflection(&self, _direction: usize) -> IntVec {
        IntVec::zero(3)
    }
    fn shifts(&self) -> Vec<IndexShift> {
        vec![IndexShift {
            name: "Psi",
            matrix: Self::psi(),
            shift: vec![1],
        }]
    }
}

pub struct RationalSmoothing {
    pub e: u64,
}

impl RationalSmoothing {
    pub fn phi(e: u64) -> IntMatrix {
        let e = i64::try_from(e).expect("degree fits in i64");
        IntMatrix::from_i64_rows(&[
            [1, e, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [1, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 1, 0, 0, 1],
        ])
    }

    pub fn psi() -> IntMatrix {
        IntMatrix::from_i64_rows(&[
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ])
    }
}

impl FanFamily for RationalSmoothing {
    fn kind(&self) -> FanKind {
        FanKind::RationalSmoothing { e: self.e }
    }
    fn arity(&self) -> usize {
        2
    }
    fn ambient_rank(&self) -> usize {
        4
    }
    fn cone_unchecked(&self, index: &[i64]) -> Cone {
        let (m, n) = (index[0], index[1]);
        literal_cone(vec![
            parabola_ray(m, self.e, &[1, 0]),
            parabola_ray(m + 1, self.e, &[1, 0]),
            IntVec::from_i64s(&[0, n, 0, 1]),
            IntVec::from_i64s(&[0, n + 1, 0, 1]),
        ])
    }
    fn expected_deflection(&self, direction: usize) -> IntVec {
        match direction {
            0 => IntVec::new(vec![big(0), BigInt::from(self.e), big(0), big(0)]),
            _ => IntVec::zero(4),
        }
    }
    fn shifts(&self) -> Vec<IndexShift> {
        vec![
            IndexShift {
                name: "Phi",
                matrix: Self::phi(self.e),
                shift: vec![1, 0],
            },
            IndexShift {
                name: "Psi",
                matrix: Self::psi(),
                shift: vec![0, 1],
            },
        ]
    }
}
