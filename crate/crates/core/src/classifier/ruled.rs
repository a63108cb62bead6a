//! Surfaces with ruled normalization: over an elliptic curve, or rational.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{classify_gluing, GluingClass, PolygonGluing};

/// Degree `e` of the `P¹`-bundle, order `w` of the gluing automorphism `ψ`
/// (0 for infinite order) and whether `ψ` is a translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticRuledDatum {
    pub e: u64,
    pub w: u64,
    pub translation: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_label: Option<String>,
}

/// Hirzebruch degree `e`, warp `w` of the vertical gluing parameter, and the
/// gluing type of the anticanonical hexagon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalDatum {
    pub e: u64,
    pub w: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub untwisted: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gluing: Option<PolygonGluing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizontal_labels: Option<[String; 2]>,
}

impl RationalDatum {
    pub fn new(e: u64, w: u64, untwisted: bool) -> Self {
        RationalDatum {
            e,
            w,
            untwisted: Some(untwisted),
            gluing: None,
            horizontal_labels: None,
        }
    }

    /// Untwistedness, read from the flag or derived from an explicit gluing.
    pub fn is_untwisted(&self) -> Result<bool> {
        let derived = match &self.gluing {
            Some(g) => match classify_gluing(g) {
                GluingClass::Untwisted => Some(true),
                GluingClass::Twisted => Some(false),
                GluingClass::Invalid => {
                    return Err(Error::InvalidDatum(format!(
                        "hexagon gluing is not normal crossing: {}",
                        g.violations().join("; ")
                    )))
                }
            },
            None => None,
        };
        match (self.untwisted, derived) {
            (Some(a), Some(b)) if a != b => Err(Error::InconsistentData(format!(
                "untwisted = {a} contradicts the supplied gluing"
            ))),
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(Error::InvalidDatum(
                "rational datum needs `untwisted` or `gluing`".into(),
            )),
        }
    }
}

/// `w | e`, with warp 0 (infinite order) dividing only degree 0.
pub fn ruled_dsemistable(e: u64, w: u64) -> bool {
    match w {
        0 => e == 0,
        w => e.is_multiple_of(w),
    }
}
