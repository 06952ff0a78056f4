//! Closures, line points, socle and semisimplicity.

pub mod classes;
pub mod closure;
pub mod line_point;
pub mod quotient;
pub mod socle;
pub mod verdict;
pub mod vertex_set;

pub use classes::{line_point_classes, line_point_equivalent, LinePointClass, LinePointClasses, Meeting};
pub use closure::{
    closure_strata, connect_witness, hereditary_closure, is_hereditary, is_saturated_hereditary,
    saturated_hereditary_closure,
};
pub use line_point::{
    is_line_point, line_points, unique_path, InfinitePathDescriptor, LinePointCertificate, LinePoints, NoReason,
    PathKind, UniquePath,
};
pub use quotient::quotient_graph;
pub use socle::{is_cofinal_and_aperiodic, is_semisimple, socle_essential, socle_is_zero, socle_vertices};
pub use verdict::{AnalysisOptions, Verdict3, DEFAULT_DEPTH_BOUND};
pub use vertex_set::{LatticeSet, LevelSet, VertexSet};
