//! Identifications of the Néron 6-gon onto the three-line curve `D`.
//!
//! Components `C_0..C_5` are indexed cyclically with node `p_i = C_i ∩ C_{i+1}`.
//! `D` has components `D_0, D_1, D_2` meeting in two triple points `0` and `∞`
//! (black ids 0 and 1).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::bicoloured::{pullback_rank, BicolouredGraph, GraphMorphism};
use crate::error::Result;

pub const POLYGON: usize = 6;
const TARGET_COMPONENTS: u8 = 3;
const TARGET_POINTS: u8 = 2;

/// Component map `C_i ↦ D_{components[i]}` and node map
/// `p_i ↦ nodes[i] ∈ {0, ∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonGluing {
    pub components: [u8; POLYGON],
    pub nodes: [u8; POLYGON],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GluingClass {
    Untwisted,
    Twisted,
    Invalid,
}

impl fmt::Display for GluingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GluingClass::Untwisted => "Untwisted",
            GluingClass::Twisted => "Twisted",
            GluingClass::Invalid => "Invalid",
        })
    }
}

fn at(xs: &[u8; POLYGON], i: isize) -> u8 {
    xs[i.rem_euclid(POLYGON as isize) as usize]
}

impl PolygonGluing {
    /// Normal-crossing constraints: each `D_j` receives exactly two components,
    /// no two adjacent components are identified, the two nodes on a component
    /// go to distinct points, and at most three points of `S` lie over a point.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.components.iter().any(|&c| c >= TARGET_COMPONENTS)
            || self.nodes.iter().any(|&p| p >= TARGET_POINTS)
        {
            out.push("label out of range".to_string());
            return out;
        }
        for j in 0..TARGET_COMPONENTS {
            let k = self.components.iter().filter(|&&c| c == j).count();
            if k != 2 {
                out.push(format!("D_{j} has {k} preimage components"));
            }
        }
        for i in 0..POLYGON as isize {
            if at(&self.components, i) == at(&self.components, i + 1) {
                out.push(format!(
                    "adjacent components C_{i}, C_{} identified",
                    (i + 1) % 6
                ));
            }
            if at(&self.nodes, i - 1) == at(&self.nodes, i) {
                out.push(format!("both nodes of C_{i} land on one point"));
            }
        }
        for p in 0..TARGET_POINTS {
            let k = self.nodes.iter().filter(|&&x| x == p).count();
            if k > 3 {
                out.push(format!("{k} nodes over one point of D"));
            }
        }
        out
    }

    fn is_untwisted(&self) -> bool {
        (0..POLYGON as isize).all(|i| {
            at(&self.components, i) == at(&self.components, i + 3)
                && at(&self.nodes, i) == at(&self.nodes, i + 2)
        })
    }

    fn is_twisted(&self) -> bool {
        let c = |i| at(&self.components, i);
        let p = |i| at(&self.nodes, i);
        (0..POLYGON as isize).any(|i| {
            c(i) == c(i + 3) && c(i + 1) == c(i - 1) && c(i + 2) == c(i - 2) && p(i) == p(i - 2)
        })
    }

    /// Rotation `C_i ↦ C_{i+1}`.
    pub fn rotated(&self) -> Self {
        let mut g = *self;
        for i in 0..POLYGON {
            g.components[(i + 1) % POLYGON] = self.components[i];
            g.nodes[(i + 1) % POLYGON] = self.nodes[i];
        }
        g
    }

    /// Reflection `C_i ↦ C_{-i}`, which sends `p_i` to `p_{-i-1}`.
    pub fn reflected(&self) -> Self {
        let mut g = *self;
        for i in 0..POLYGON {
            g.components[(POLYGON - i) % POLYGON] = self.components[i];
            g.nodes[(2 * POLYGON - i - 1) % POLYGON] = self.nodes[i];
        }
        g
    }

    /// Target labels renumbered in order of first appearance.
    pub fn relabelled(&self) -> Self {
        fn first_seen(xs: &[u8; POLYGON]) -> [u8; POLYGON] {
            let mut map = BTreeMap::new();
            let mut out = [0; POLYGON];
            for (o, x) in out.iter_mut().zip(xs) {
                let next = map.len() as u8;
                *o = *map.entry(*x).or_insert(next);
            }
            out
        }
        PolygonGluing {
            components: first_seen(&self.components),
            nodes: first_seen(&self.nodes),
        }
    }

    /// Orbit representative under the dihedral group of the hexagon combined
    /// with relabelling the targets.
    pub fn canonical(&self) -> Self {
        let mut best = self.relabelled();
        let mut g = *self;
        for _ in 0..POLYGON {
            for h in [g, g.reflected()] {
                best = best.min(h.relabelled());
            }
            g = g.rotated();
        }
        best
    }

    /// Every label assignment, valid or not.
    pub fn all_candidates() -> impl Iterator<Item = PolygonGluing> {
        let comps = TARGET_COMPONENTS as usize;
        let points = TARGET_POINTS as usize;
        (0..comps.pow(6)).flat_map(move |cidx| {
            (0..points.pow(6)).map(move |nidx| PolygonGluing {
                components: digits(cidx, comps),
                nodes: digits(nidx, points),
            })
        })
    }
}

fn digits(mut x: usize, base: usize) -> [u8; POLYGON] {
    let mut out = [0; POLYGON];
    for d in out.iter_mut() {
        *d = (x % base) as u8;
        x /= base;
    }
    out
}

pub fn classify_gluing(g: &PolygonGluing) -> GluingClass {
    if !g.violations().is_empty() {
        GluingClass::Invalid
    } else if g.is_untwisted() {
        GluingClass::Untwisted
    } else if g.is_twisted() {
        GluingClass::Twisted
    } else {
        GluingClass::Invalid
    }
}

/// Bicoloured graph of the Néron `k`-gon: white `i` is `C_i`, black `i` is
/// the node `C_i ∩ C_{i+1}`.
pub fn neron_polygon_graph(k: u32) -> BicolouredGraph {
    let white: Vec<u32> = (0..k).collect();
    let edges = (0..k).flat_map(|i| [(i, i), ((i + 1) % k, i)]).collect();
    BicolouredGraph::new(white.clone(), white, edges).expect("polygon graph is well formed")
}

/// Bicoloured graph of `D`: three lines through two common points.
pub fn triple_line_graph() -> BicolouredGraph {
    let edges = (0..3).flat_map(|j| [(j, 0), (j, 1)]).collect();
    BicolouredGraph::new(vec![0, 1, 2], vec![0, 1], edges)
        .expect("triple-line graph is well formed")
}

/// Graph morphism `Γ(C) → Γ(D)` induced by the gluing.
pub fn induced_morphism(g: &PolygonGluing) -> Result<GraphMorphism> {
    let white_map = (0..POLYGON as u32)
        .map(|i| (i, u32::from(g.components[i as usize])))
        .collect();
    let black_map = (0..POLYGON as u32)
        .map(|i| (i, u32::from(g.nodes[i as usize])))
        .collect();
    GraphMorphism::from_vertex_maps(
        neron_polygon_graph(POLYGON as u32),
        triple_line_graph(),
        white_map,
        black_map,
    )
}

/// One line of the gluing enumeration stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingRecord {
    pub components: [u8; POLYGON],
    pub nodes: [u8; POLYGON],
    pub class: GluingClass,
    pub pullback_rank: Option<usize>,
    pub orbit: [[u8; POLYGON]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingOrbit {
    pub representative: PolygonGluing,
    pub class: GluingClass,
    pub size: usize,
    pub pullback_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingEnumeration {
    pub candidates: usize,
    pub valid: usize,
    pub untwisted: usize,
    pub twisted: usize,
    pub symmetry: &'static str,
    pub orbits: Vec<GluingOrbit>,
    #[serde(skip)]
    pub records: Vec<GluingRecord>,
}

/// Classification of one candidate; the pullback rank is computed only for
/// valid gluings.
pub fn gluing_record(g: &PolygonGluing) -> Result<GluingRecord> {
    let class = classify_gluing(g);
    let pullback_rank = match class {
        GluingClass::Invalid => None,
        _ => Some(pullback_rank(&induced_morphism(g)?)?),
    };
    let rep = g.canonical();
    Ok(GluingRecord {
        components: g.components,
        nodes: g.nodes,
        class,
        pullback_rank,
        orbit: [rep.components, rep.nodes],
    })
}

/// Classifies every candidate gluing and computes the pullback rank for the
/// valid ones.
pub fn enumerate_gluings() -> Result<GluingEnumeration> {
    let mut records = Vec::new();
    let mut candidates = 0;
    let mut orbits: BTreeMap<PolygonGluing, GluingOrbit> = BTreeMap::new();
    for g in PolygonGluing::all_candidates() {
        candidates += 1;
        if classify_gluing(&g) == GluingClass::Invalid {
            continue;
        }
        let record = gluing_record(&g)?;
        let rank = record.pullback_rank.expect("valid gluing has a rank");
        let rep = PolygonGluing {
            components: record.orbit[0],
            nodes: record.orbit[1],
        };
        orbits
            .entry(rep)
            .and_modify(|o| o.size += 1)
            .or_insert(GluingOrbit {
                representative: rep,
                class: record.class,
                size: 1,
                pullback_rank: rank,
            });
        records.push(record);
    }
    let count = |c| records.iter().filter(|r| r.class == c).count();
    Ok(GluingEnumeration {
        candidates,
        valid: records.len(),
        untwisted: count(GluingClass::Untwisted),
        twisted: count(GluingClass::Twisted),
        symmetry: "dihedral group of the hexagon x relabelling of D",
        orbits: orbits.into_values().collect(),
        records,
    })
}
