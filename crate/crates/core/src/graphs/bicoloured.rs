use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use petgraph::algo::connected_components;
use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::rational_rank;

/// Dual graph of a seminormal curve: white vertices are irreducible
/// components, black vertices singular points, edges the branches through a
/// singular point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct BicolouredGraph {
    white: Vec<u32>,
    black: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    white: Vec<u32>,
    black: Vec<u32>,
    edges: Vec<[u32; 2]>,
}

impl TryFrom<RawGraph> for BicolouredGraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        BicolouredGraph::new(
            raw.white,
            raw.black,
            raw.edges.into_iter().map(|[w, b]| (w, b)).collect(),
        )
    }
}

impl From<BicolouredGraph> for RawGraph {
    fn from(g: BicolouredGraph) -> Self {
        RawGraph {
            white: g.white,
            black: g.black,
            edges: g.edges.into_iter().map(|(w, b)| [w, b]).collect(),
        }
    }
}

fn unique(ids: &[u32], colour: &str) -> Result<BTreeSet<u32>> {
    let set: BTreeSet<u32> = ids.iter().copied().collect();
    if set.len() != ids.len() {
        return Err(Error::InvalidGraph(format!("duplicate {colour} vertex id")));
    }
    Ok(set)
}

impl BicolouredGraph {
    /// Edges are `(white, black)` pairs. Every black vertex needs at least two
    /// branches through it.
    pub fn new(white: Vec<u32>, black: Vec<u32>, edges: Vec<(u32, u32)>) -> Result<Self> {
        let whites = unique(&white, "white")?;
        let blacks = unique(&black, "black")?;
        let mut valence: BTreeMap<u32, usize> = blacks.iter().map(|&b| (b, 0)).collect();
        for &(w, b) in &edges {
            if !whites.contains(&w) {
                return Err(Error::InvalidGraph(format!(
                    "edge uses unknown white vertex {w}"
                )));
            }
            *valence.get_mut(&b).ok_or_else(|| {
                Error::InvalidGraph(format!("edge uses unknown black vertex {b}"))
            })? += 1;
        }
        if let Some((b, v)) = valence.iter().find(|(_, &v)| v < 2) {
            return Err(Error::InvalidGraph(format!(
                "black vertex {b} has valence {v}"
            )));
        }
        Ok(BicolouredGraph {
            white,
            black,
            edges,
        })
    }

    pub fn white(&self) -> &[u32] {
        &self.white
    }

    pub fn black(&self) -> &[u32] {
        &self.black
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.white.len() + self.black.len()
    }

    fn white_pos(&self) -> BTreeMap<u32, usize> {
        self.white
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, i))
            .collect()
    }

    fn black_pos(&self) -> BTreeMap<u32, usize> {
        let offset = self.white.len();
        self.black
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, offset + i))
            .collect()
    }

    /// Edge endpoints as positions in `white ++ black`.
    fn edge_positions(&self) -> Vec<(usize, usize)> {
        let (wp, bp) = (self.white_pos(), self.black_pos());
        self.edges.iter().map(|(w, b)| (wp[w], bp[b])).collect()
    }

    pub fn component_count(&self) -> usize {
        let mut g = UnGraph::<(), ()>::with_capacity(self.vertex_count(), self.edges.len());
        let nodes: Vec<_> = (0..self.vertex_count()).map(|_| g.add_node(())).collect();
        for (w, b) in self.edge_positions() {
            g.add_edge(nodes[w], nodes[b], ());
        }
        connected_components(&g)
    }

    /// Coboundary of each vertex indicator, as a cochain on edges. Edges are
    /// oriented white → black.
    pub(crate) fn coboundary_rows(&self) -> Vec<Vec<BigInt>> {
        let positions = self.edge_positions();
        (0..self.vertex_count())
            .map(|v| {
                positions
                    .iter()
                    .map(|&(w, b)| BigInt::from(i32::from(v == b) - i32::from(v == w)))
                    .collect()
            })
            .collect()
    }

    /// Disjoint union, relabelling `other` past the largest ids of `self`.
    pub fn disjoint_union(&self, other: &BicolouredGraph) -> BicolouredGraph {
        let wo = self.white.iter().max().map_or(0, |m| m + 1);
        let bo = self.black.iter().max().map_or(0, |m| m + 1);
        let mut white = self.white.clone();
        white.extend(other.white.iter().map(|w| w + wo));
        let mut black = self.black.clone();
        black.extend(other.black.iter().map(|b| b + bo));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|(w, b)| (w + wo, b + bo)));
        BicolouredGraph {
            white,
            black,
            edges,
        }
    }
}

/// First Betti number `E - V + #components`.
pub fn betti1(g: &BicolouredGraph) -> usize {
    g.edges.len() + g.component_count() - g.vertex_count()
}

/// A map of bicoloured graphs, given on vertices by id and on edges by
/// position in the respective edge lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphMorphism {
    pub source: BicolouredGraph,
    pub target: BicolouredGraph,
    pub white_map: BTreeMap<u32, u32>,
    pub black_map: BTreeMap<u32, u32>,
    pub edge_map: Vec<usize>,
}

impl GraphMorphism {
    pub fn new(
        source: BicolouredGraph,
        target: BicolouredGraph,
        white_map: BTreeMap<u32, u32>,
        black_map: BTreeMap<u32, u32>,
        edge_map: Vec<usize>,
    ) -> Result<Self> {
        let m = GraphMorphism {
            source,
            target,
            white_map,
            black_map,
            edge_map,
        };
        m.validate()?;
        Ok(m)
    }

    /// Derives the edge map from the vertex maps; each image edge must be
    /// unique in the target.
    pub fn from_vertex_maps(
        source: BicolouredGraph,
        target: BicolouredGraph,
        white_map: BTreeMap<u32, u32>,
        black_map: BTreeMap<u32, u32>,
    ) -> Result<Self> {
        let mut edge_map = Vec::with_capacity(source.edges.len());
        for (w, b) in &source.edges {
            let image = (
                *white_map.get(w).ok_or_else(|| missing("white", *w))?,
                *black_map.get(b).ok_or_else(|| missing("black", *b))?,
            );
            let mut hits = target
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| **e == image);
            let (idx, _) = hits
                .next()
                .ok_or_else(|| Error::MalformedMorphism(format!("no target edge {image:?}")))?;
            if hits.next().is_some() {
                return Err(Error::MalformedMorphism(format!(
                    "target edge {image:?} is not unique; give the edge map explicitly"
                )));
            }
            edge_map.push(idx);
        }
        Self::new(source, target, white_map, black_map, edge_map)
    }

    pub fn identity(g: &BicolouredGraph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            white_map: g.white.iter().map(|&w| (w, w)).collect(),
            black_map: g.black.iter().map(|&b| (b, b)).collect(),
            edge_map: (0..g.edges.len()).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let tw: BTreeSet<_> = self.target.white.iter().collect();
        let tb: BTreeSet<_> = self.target.black.iter().collect();
        for w in &self.source.white {
            let img = self.white_map.get(w).ok_or_else(|| missing("white", *w))?;
            if !tw.contains(img) {
                return Err(Error::MalformedMorphism(format!(
                    "white vertex {w} maps outside the target"
                )));
            }
        }
        for b in &self.source.black {
            let img = self.black_map.get(b).ok_or_else(|| missing("black", *b))?;
            if !tb.contains(img) {
                return Err(Error::MalformedMorphism(format!(
                    "black vertex {b} maps outside the target"
                )));
            }
        }
        if self.edge_map.len() != self.source.edges.len() {
            return Err(Error::MalformedMorphism(format!(
                "edge map has {} entries for {} edges",
                self.edge_map.len(),
                self.source.edges.len()
            )));
        }
        for (k, (&(w, b), &f)) in self.source.edges.iter().zip(&self.edge_map).enumerate() {
            let Some(&(tw, tb)) = self.target.edges.get(f) else {
                return Err(Error::MalformedMorphism(format!(
                    "edge {k} maps to missing target edge {f}"
                )));
            };
            if self.white_map[&w] != tw || self.black_map[&b] != tb {
                return Err(Error::MalformedMorphism(format!(
                    "edge {k} is not mapped compatibly with its endpoints"
                )));
            }
        }
        Ok(())
    }
}

fn missing(colour: &str, id: u32) -> Error {
    Error::MalformedMorphism(format!("{colour} vertex {id} has no image"))
}

/// Rank of `φ*: H¹(target) → H¹(source)` over the rationals.
pub fn pullback_rank(phi: &GraphMorphism) -> Result<usize> {
    phi.validate()?;
    let boundaries = phi.source.coboundary_rows();
    let base = rational_rank(&boundaries);
    let mut rows = boundaries;
    for f in 0..phi.target.edges.len() {
        rows.push(
            phi.edge_map
                .iter()
                .map(|&img| BigInt::from(u8::from(img == f)))
                .collect(),
        );
    }
    Ok(rational_rank(&rows) - base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_lines_meeting() -> BicolouredGraph {
        BicolouredGraph::new(vec![0, 1], vec![0], vec![(0, 0), (1, 0)]).unwrap()
    }

    #[test]
    fn tree_has_no_cycles() {
        assert_eq!(betti1(&two_lines_meeting()), 0);
    }

    #[test]
    fn nodal_curve_has_one_cycle() {
        // One component through a node twice: Neron 1-gon.
        let g = BicolouredGraph::new(vec![0], vec![0], vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(betti1(&g), 1);
        assert_eq!(pullback_rank(&GraphMorphism::identity(&g)).unwrap(), 1);
    }

    #[test]
    fn graph_validation() {
        assert!(BicolouredGraph::new(vec![0, 0], vec![], vec![]).is_err());
        assert!(BicolouredGraph::new(vec![0], vec![0], vec![(0, 0)]).is_err());
        assert!(BicolouredGraph::new(vec![0], vec![0], vec![(1, 0), (0, 0)]).is_err());
        assert!(BicolouredGraph::new(vec![0], vec![0], vec![(0, 3), (0, 0)]).is_err());
    }

    #[test]
    fn json_shape() {
        let g = two_lines_meeting();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"white":[0,1],"black":[0],"edges":[[0,0],[1,0]]}"#);
        let back: BicolouredGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<BicolouredGraph>(
            r#"{"white":[0],"black":[0],"edges":[[0,0]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<BicolouredGraph>(
            r#"{"white":[],"black":[],"edges":[],"extra":1}"#
        )
        .is_err());
    }

    #[test]
    fn morphism_validation() {
        let g = two_lines_meeting();
        let mut bad = GraphMorphism::identity(&g);
        bad.edge_map = vec![1, 0];
        assert!(matches!(
            pullback_rank(&bad),
            Err(Error::MalformedMorphism(_))
        ));
        bad.edge_map = vec![0];
        assert!(bad.validate().is_err());
        let mut bad = GraphMorphism::identity(&g);
        bad.white_map.insert(1, 9);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn collapsing_a_cycle_kills_pullback() {
        let cycle = BicolouredGraph::new(vec![0], vec![0], vec![(0, 0), (0, 0)]).unwrap();
        let tree = two_lines_meeting();
        // Map the tree onto the 1-gon; H¹(tree) = 0 so the pullback is zero.
        let phi = GraphMorphism::new(
            tree,
            cycle,
            [(0, 0), (1, 0)].into_iter().collect(),
            [(0, 0)].into_iter().collect(),
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(pullback_rank(&phi).unwrap(), 0);
    }
}
