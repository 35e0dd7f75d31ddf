//! Tree-like construction histories of finite graphs.
//!
//! The crate builds, for any finite graph, the set of terms recording its
//! destruction by vertex removal (consecutive removals joined by `*`,
//! simultaneous ones by `+`), maps those terms onto trifunctional partial
//! orders and their linear extensions, and materializes the resulting
//! collapse of the permutohedron into graph-dependent polytope skeletons.

pub mod collapse;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod relation;
pub mod relationship;
pub mod sterm;
pub mod var;
pub mod verify;

pub use collapse::{
    class_of_permutation, collapse, permutohedron, verify_class_connected, verify_partition,
    CollapseSkeleton, ExportFormat, PermutohedronSkeleton,
};
pub use error::{Error, Result};
pub use graph::{destruction_film, reconstruct_graph, t_forests, ForestSet, Graph};
pub use relation::Relation;
pub use relationship::{
    extend_with_pair, find_q1_not_q2_witness, linear_extensions, map_e, map_l, map_p,
    Permutation, Relationship, ShuffleMode,
};
pub use sterm::{parse_sterm, render_sterm, sterm_of_ftp, STerm};
pub use var::VarName;
pub use verify::{run_all, Status, VerificationReport, VerifyConfig};
