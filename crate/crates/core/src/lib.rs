//! Exact computation of the zonal-polynomial expansion of `Z_n` through
//! gluings of a 2n-gon, admissible colourings, genus-one closed forms and the
//! census of reduced maps.

pub mod acceptance;
pub mod admissibility;
pub mod cache;
pub mod census;
pub mod engine;
pub mod error;
pub mod genus1;
pub mod partition;
pub mod polygon;
pub mod report;

pub use admissibility::{
    admissible_colorings, enumerate_q, hall_condition, orientation_walk_condition, BipartiteGraph,
    QColoring,
};
pub use census::{
    census_classes, is_reduced, is_reduced_bipartite, stabilizer_order, verify_decorations,
    CensusFilter, DecorationReport, Multigraph, ReducedMapClass, SymmetryGroup,
};
pub use engine::{
    coefficient, full_expansion, genus_part, tally, Coefficient, EngineConfig, GenusPolynomial,
    Tally,
};
pub use error::{Error, Result};
pub use genus1::{
    closed_form_coefficient, lassalle_scan, three_way_check, ClosedFormResult, Provenance,
};
pub use partition::Partition;
pub use polygon::{
    enumerate_gluings, enumerate_twisted_gluings, glue, ColorConvention, GluedMap, Gluing,
    PolygonSpec, Twist, VertexColor,
};
