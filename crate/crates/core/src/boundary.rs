//! Boundary strata of the moduli of primary Kodaira surfaces of fixed degree,
//! and the adjacencies between them witnessed by quadruple-point families.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::classifier::Stratum;
use crate::error::{Error, Result};
use crate::json::to_tagged_string;

/// Isomorphism type of a boundary component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParamSpace {
    PuncturedDisk,
    CStar,
    ComplexLine,
}

impl ParamSpace {
    pub fn of(stratum: Stratum) -> Self {
        match stratum {
            Stratum::Hopf => ParamSpace::PuncturedDisk,
            Stratum::Rational => ParamSpace::CStar,
            Stratum::EllipticRuled => ParamSpace::ComplexLine,
        }
    }
}

/// One boundary component, keyed by `(stratum, e, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StratumComponent {
    #[serde(rename = "type")]
    pub stratum: Stratum,
    pub e: u64,
    pub w: u64,
    pub param_space: ParamSpace,
}

impl StratumComponent {
    pub fn new(stratum: Stratum, e: u64, w: u64) -> Result<Self> {
        if w == 0 || e == 0 || !e.is_multiple_of(w) {
            return Err(Error::NotDivisible {
                dividend: e,
                divisor: w,
            });
        }
        Ok(StratumComponent {
            stratum,
            e,
            w,
            param_space: ParamSpace::of(stratum),
        })
    }

    pub fn key(&self) -> (Stratum, u64, u64) {
        (self.stratum, self.e, self.w)
    }

    /// Degree of the smooth surfaces this component bounds.
    pub fn degree(&self) -> u64 {
        self.e / self.w
    }
}

impl fmt::Display for StratumComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.stratum, self.e, self.w)
    }
}

/// Components bounding the surfaces of degree `d`: one per type and warp
/// `w ≤ w_max`, with `e = d·w`. Ordered by warp, then Hopf, rational,
/// elliptic.
pub fn enumerate_components(d: u64, w_max: u64) -> Result<Vec<StratumComponent>> {
    if d == 0 || w_max == 0 {
        return Err(Error::InvalidDatum(
            "degree and maximal warp must be positive".into(),
        ));
    }
    let mut out = Vec::new();
    for w in 1..=w_max {
        let e = d
            .checked_mul(w)
            .ok_or_else(|| Error::InvalidDatum(format!("degree {d} times warp {w} overflows")))?;
        for stratum in Stratum::ALL {
            out.push(StratumComponent::new(stratum, e, w)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// Quadruple-point family with elliptic ruled and Hopf fibres on the two
    /// coordinate axes, keeping `(e, w)`.
    X1Family,
    /// Quadruple-point family with rational `(e, 1)` and elliptic ruled
    /// `(2e, 2)` fibres.
    X2Family,
}

impl Witness {
    pub fn reference(self) -> &'static str {
        match self {
            Witness::X1Family => {
                "X1: fibres over C*x0 elliptic ruled, over 0xC* Hopf, both of degree e and warp w"
            }
            Witness::X2Family => {
                "X2: fibres rational of degree e and warp 1, and elliptic ruled of degree 2e and warp 2"
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjacencyEdge {
    pub endpoints: [StratumComponent; 2],
    pub witness: Witness,
    pub witness_ref: &'static str,
}

fn edge(a: StratumComponent, b: StratumComponent, witness: Witness) -> AdjacencyEdge {
    AdjacencyEdge {
        endpoints: [a, b],
        witness,
        witness_ref: witness.reference(),
    }
}

/// Edges among `components`: every X1 pair first, then every X2 pair, each in
/// the order of the elliptic ruled endpoint.
pub fn adjacency_edges(components: &[StratumComponent]) -> Vec<AdjacencyEdge> {
    let find = |s: Stratum, e: u64, w: u64| components.iter().find(|c| c.key() == (s, e, w));
    let elliptic = || {
        components
            .iter()
            .filter(|c| c.stratum == Stratum::EllipticRuled)
    };
    let mut out = Vec::new();
    for er in elliptic() {
        if let Some(h) = find(Stratum::Hopf, er.e, er.w) {
            out.push(edge(*er, *h, Witness::X1Family));
        }
    }
    for er in elliptic().filter(|c| c.w == 2 && c.e % 2 == 0) {
        if let Some(r) = find(Stratum::Rational, er.e / 2, 1) {
            out.push(edge(*r, *er, Witness::X2Family));
        }
    }
    out
}

/// Local structure of the completed moduli space near a quadruple-point
/// surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalModel {
    pub model: &'static str,
    pub removed: &'static str,
    pub normal_crossing_obstruction: &'static str,
    pub quadruple_point_ring: &'static str,
    pub embedding_dim: u32,
    pub conjectural: &'static [&'static str],
    pub caveats: &'static [&'static str],
}

pub fn local_model() -> LocalModel {
    LocalModel {
        model: "blowup of (∞,0) in P¹×Δ",
        removed: "two points on exceptional divisor",
        normal_crossing_obstruction: "the boundary is not of normal crossing type",
        quadruple_point_ring: "T1*T2, T3*T4",
        embedding_dim: 4,
        conjectural: &["Hopf-rational connector: no family joining the two strata is known"],
        caveats: &[
            "components are not subdivided by the discrete invariant of lifts of the group action",
        ],
    }
}

/// Components, edges and local model for one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryGraph {
    pub degree: u64,
    pub max_warp: u64,
    pub components: Vec<StratumComponent>,
    pub edges: Vec<AdjacencyEdge>,
    pub local_model: LocalModel,
}

impl BoundaryGraph {
    pub fn build(degree: u64, max_warp: u64) -> Result<Self> {
        let components = enumerate_components(degree, max_warp)?;
        let edges = adjacency_edges(&components);
        Ok(BoundaryGraph {
            degree,
            max_warp,
            components,
            edges,
            local_model: local_model(),
        })
    }

    pub fn to_json(&self) -> String {
        to_tagged_string(self)
    }

    /// Graphviz rendering of the adjacency graph.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph boundary_d{} {{\n", self.degree);
        for c in &self.components {
            let _ = writeln!(s, "  \"{c}\" [label=\"{c}\\n{:?}\"];", c.param_space);
        }
        for e in &self.edges {
            let [a, b] = e.endpoints;
            let _ = writeln!(s, "  \"{a}\" -- \"{b}\" [label=\"{:?}\"];", e.witness);
        }
        s.push_str("}\n");
        s
    }
}
