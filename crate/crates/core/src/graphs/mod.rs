//! Dual graphs of seminormal curves and the combinatorics of the double
//! curve: Betti numbers, pullbacks on `H¹`, polygon gluings, and the numeric
//! constraints coming from the triple point formula.

mod bicoloured;
mod curves;
mod gluing;

pub use bicoloured::{betti1, pullback_rank, BicolouredGraph, GraphMorphism};
pub use curves::{
    enumerate_rational_models, neron_component_check, triple_point_consistent, CurveConfig,
    MinimalModel, RationalModel,
};
pub use gluing::{
    classify_gluing, enumerate_gluings, gluing_record, induced_morphism, neron_polygon_graph,
    triple_line_graph, GluingClass, GluingEnumeration, GluingOrbit, GluingRecord, PolygonGluing,
    POLYGON,
};
