//! Per-type cohomology, tangent and versal data, one strategy per
//! normalization type.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Stratum, SurfaceDatum};
use crate::error::{Error, Result};
use crate::json::from_tagged_value;

/// `(h⁰, h¹, h²)` of the tangent sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[u32; 3]", from = "[u32; 3]")]
pub struct Cohomology {
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
}

impl From<Cohomology> for [u32; 3] {
    fn from(c: Cohomology) -> Self {
        [c.h0, c.h1, c.h2]
    }
}

impl From<[u32; 3]> for Cohomology {
    fn from([h0, h1, h2]: [u32; 3]) -> Self {
        Cohomology { h0, h1, h2 }
    }
}

/// `(dim T⁰, dim T¹, dim T²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[u32; 3]", from = "[u32; 3]")]
pub struct TangentDims {
    pub t0: u32,
    pub t1: u32,
    pub t2: u32,
}

impl From<TangentDims> for [u32; 3] {
    fn from(t: TangentDims) -> Self {
        [t.t0, t.t1, t.t2]
    }
}

impl From<[u32; 3]> for TangentDims {
    fn from([t0, t1, t2]: [u32; 3]) -> Self {
        TangentDims { t0, t1, t2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tangent {
    Available(TangentDims),
    Unavailable(TangentUnavailable),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentUnavailable {
    pub unavailable: String,
    /// Embedding dimension of the versal base, when known.
    pub dim_t1: Option<u32>,
}

impl Tangent {
    pub fn unavailable(reason: &str, dim_t1: Option<u32>) -> Self {
        Tangent::Unavailable(TangentUnavailable {
            unavailable: reason.to_string(),
            dim_t1,
        })
    }

    pub fn dims(&self) -> Option<TangentDims> {
        match self {
            Tangent::Available(t) => Some(*t),
            Tangent::Unavailable(_) => None,
        }
    }
}

/// Shape of the base of the semiuniversal deformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum Versal {
    SmoothBaseWithCurve {
        dim_v: u32,
        dim_loc_triv: u32,
    },
    TwoSmoothSurfaces {
        dim_v1: u32,
        dim_v2: u32,
        dim_intersection: u32,
    },
    SmoothFourfold {
        dim_v: u32,
        dim_loc_triv: u32,
    },
    Unavailable,
}

impl fmt::Display for Versal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Versal::SmoothBaseWithCurve {
                dim_v,
                dim_loc_triv,
            } => {
                write!(f, "SmoothBaseWithCurve({dim_v},{dim_loc_triv})")
            }
            Versal::TwoSmoothSurfaces {
                dim_v1,
                dim_v2,
                dim_intersection,
            } => write!(f, "TwoSmoothSurfaces({dim_v1},{dim_v2},{dim_intersection})"),
            Versal::SmoothFourfold {
                dim_v,
                dim_loc_triv,
            } => {
                write!(f, "SmoothFourfold({dim_v},{dim_loc_triv})")
            }
            Versal::Unavailable => f.write_str("Unavailable"),
        }
    }
}

/// Rules specific to one normalization type.
pub trait DegenerationType: Send + Sync {
    fn stratum(&self) -> Stratum;

    /// Parses this type's datum fields (without the `type` tag).
    fn parse_datum(&self, value: Value) -> Result<SurfaceDatum>;

    fn cohomology(&self, e: u64) -> Cohomology;

    fn tangent(&self, e: u64) -> Tangent;

    fn versal(&self, e: u64) -> Versal;

    /// Statements of the criteria applied, for classification reports.
    fn rules(&self) -> &'static [&'static str];

    fn name(&self) -> &'static str {
        self.stratum().name()
    }
}

const fn coh(h0: u32, h1: u32, h2: u32) -> Cohomology {
    Cohomology { h0, h1, h2 }
}

const fn tan(t0: u32, t1: u32, t2: u32) -> Tangent {
    Tangent::Available(TangentDims { t0, t1, t2 })
}

const DEGREE_ZERO: &str = "degree 0: only the embedding dimension of the base is known";

pub struct HopfType;

impl DegenerationType for HopfType {
    fn stratum(&self) -> Stratum {
        Stratum::Hopf
    }
    fn parse_datum(&self, value: Value) -> Result<SurfaceDatum> {
        Ok(SurfaceDatum::Hopf(from_tagged_value(value)?))
    }
    fn cohomology(&self, _e: u64) -> Cohomology {
        coh(1, 1, 0)
    }
    fn tangent(&self, _e: u64) -> Tangent {
        tan(1, 2, 1)
    }
    fn versal(&self, _e: u64) -> Versal {
        Versal::SmoothBaseWithCurve {
            dim_v: 2,
            dim_loc_triv: 1,
        }
    }
    fn rules(&self) -> &'static [&'static str] {
        &[
            "K_X = 0 iff the gluing matrix is (1, b; 0, 1)",
            "d-semistable iff (n1 - n2)^2 = 0 and b(n1 - n2) = 0 mod n",
            "degree e = gcd(n, n1 - n2), warp w = n / gcd(n, n1 - n2, b)",
            "smooths to a Kodaira surface of degree e/w",
        ]
    }
}

pub struct EllipticRuledType;

impl DegenerationType for EllipticRuledType {
    fn stratum(&self) -> Stratum {
        Stratum::EllipticRuled
    }
    fn parse_datum(&self, value: Value) -> Result<SurfaceDatum> {
        Ok(SurfaceDatum::EllipticRuled(from_tagged_value(value)?))
    }
    fn cohomology(&self, e: u64) -> Cohomology {
        if e > 0 {
            coh(1, 2, 1)
        } else {
            coh(2, 3, 1)
        }
    }
    fn tangent(&self, e: u64) -> Tangent {
        if e > 0 {
            tan(1, 3, 2)
        } else {
            Tangent::unavailable(DEGREE_ZERO, Some(4))
        }
    }
    fn versal(&self, e: u64) -> Versal {
        ruled_versal(e)
    }
    fn rules(&self) -> &'static [&'static str] {
        &[
            "K_X = 0 iff the gluing automorphism of the elliptic base is a translation",
            "d-semistable iff the warp w divides the degree e",
            "e > 0 smooths to a Kodaira surface of degree e/w; e = 0 only to complex tori",
        ]
    }
}

pub struct RationalType;

impl DegenerationType for RationalType {
    fn stratum(&self) -> Stratum {
        Stratum::Rational
    }
    fn parse_datum(&self, value: Value) -> Result<SurfaceDatum> {
        Ok(SurfaceDatum::Rational(from_tagged_value(value)?))
    }
    fn cohomology(&self, e: u64) -> Cohomology {
        if e > 0 {
            coh(1, 2, 0)
        } else {
            coh(2, 3, 0)
        }
    }
    fn tangent(&self, e: u64) -> Tangent {
        if e > 0 {
            tan(1, 3, 2)
        } else {
            Tangent::unavailable(DEGREE_ZERO, Some(4))
        }
    }
    fn versal(&self, e: u64) -> Versal {
        ruled_versal(e)
    }
    fn rules(&self) -> &'static [&'static str] {
        &[
            "K_X = 0 iff the hexagon gluing is untwisted",
            "d-semistable iff the warp w divides the degree e",
            "e > 0 smooths to a Kodaira surface of degree e/w; e = 0 only to complex tori",
        ]
    }
}

fn ruled_versal(e: u64) -> Versal {
    if e > 0 {
        Versal::TwoSmoothSurfaces {
            dim_v1: 2,
            dim_v2: 2,
            dim_intersection: 1,
        }
    } else {
        Versal::SmoothFourfold {
            dim_v: 4,
            dim_loc_triv: 3,
        }
    }
}

/// Normalization types addressable by name.
pub struct TypeRegistry {
    entries: BTreeMap<&'static str, Box<dyn DegenerationType>>,
}

impl TypeRegistry {
    pub fn empty() -> Self {
        TypeRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, t: Box<dyn DegenerationType>) {
        self.entries.insert(t.name(), t);
    }

    pub fn get(&self, name: &str) -> Result<&dyn DegenerationType> {
        self.entries
            .get(name)
            .map(Box::as_ref)
            .ok_or_else(|| Error::Unknown {
                what: "surface type",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for TypeRegistry {
    fn default() -> Self {
        let mut r = TypeRegistry::empty();
        r.register(Box::new(HopfType));
        r.register(Box::new(EllipticRuledType));
        r.register(Box::new(RationalType));
        r
    }
}

/// Strategy object for a stratum.
pub fn degeneration_type(stratum: Stratum) -> &'static dyn DegenerationType {
    match stratum {
        Stratum::Hopf => &HopfType,
        Stratum::EllipticRuled => &EllipticRuledType,
        Stratum::Rational => &RationalType,
    }
}

pub fn cohomology_table(stratum: Stratum, e: u64) -> Cohomology {
    degeneration_type(stratum).cohomology(e)
}

pub fn tangent_table(stratum: Stratum, e: u64) -> Tangent {
    degeneration_type(stratum).tangent(e)
}

pub fn versal_descriptor(stratum: Stratum, e: u64) -> Versal {
    degeneration_type(stratum).versal(e)
}
