//! Numerical constraints on the double curve of a d-semistable surface.

use serde::{Deserialize, Serialize};

/// Self-intersections of the two preimages `C'_1, C'_2` of a component of the
/// double curve, and its number of triple points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub self_intersection_1: i64,
    pub self_intersection_2: i64,
    pub triple_points: u64,
}

/// Triple point formula: `-(C'_1)² - (C'_2)²` equals the triple point count.
pub fn triple_point_consistent(cfg: &CurveConfig) -> bool {
    let lhs = -i128::from(cfg.self_intersection_1) - i128::from(cfg.self_intersection_2);
    lhs == i128::from(cfg.triple_points)
}

/// A singular connected component of `D` with `c` components and `s`
/// singular points has a preimage made of Néron polygons with `2c`
/// components and `3s` nodes, which must agree.
pub fn neron_component_check(components: u64, singularities: u64) -> bool {
    components >= 1
        && singularities >= 1
        && u128::from(components) * 2 == u128::from(singularities) * 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MinimalModel {
    ProjectivePlane,
    Hirzebruch,
}

impl MinimalModel {
    /// `K²` of the minimal model.
    pub fn canonical_square(self) -> u64 {
        match self {
            MinimalModel::ProjectivePlane => 9,
            MinimalModel::Hirzebruch => 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RationalModel {
    pub minimal_model: MinimalModel,
    pub polygon_size: u64,
    pub blowups: u64,
}

/// Rational normalizations: the anticanonical cycle is a Néron `m`-gon with
/// `m = K²_{S'} - n`, and `m` must be a positive multiple of 6.
pub fn enumerate_rational_models() -> Vec<RationalModel> {
    let mut out = Vec::new();
    for model in [MinimalModel::ProjectivePlane, MinimalModel::Hirzebruch] {
        let k2 = model.canonical_square();
        for blowups in 0..k2 {
            let m = k2 - blowups;
            if m % 6 == 0 {
                out.push(RationalModel {
                    minimal_model: model,
                    polygon_size: m,
                    blowups,
                });
            }
        }
    }
    out
}
