//! Analysis of graph products of groups: ends and semistability at
//! infinity, derived directly from the graph and vertex-group annotations,
//! with checkable certificates, explicit presentations and a brute-force
//! normal-form oracle.

pub mod certify;
pub mod classify;
pub mod graph;
pub mod oracle;
pub mod presentation;
pub mod report;
pub mod serial;

pub use certify::{build_certificate, check_certificate, Certificate, CertifyError, Rule, Verdict};
pub use classify::{
    bad_vertices, ends_of, one_ended_and_semistable, semistability_of, ClassifyError, EndsClass, EndsVerdict,
    SemistabilityStatus, SemistabilityVerdict, Session,
};
pub use graph::{
    find_finite_complete_separators, full_subgraph, link, star, Ends, GraphError, Order, ProductGraph,
    Separator, Truth, VertexGroup, VertexSet,
};
pub use oracle::{EndsEstimate, EstimateParams, FiniteGroupTable, Oracle, OracleError};
pub use presentation::{standard_presentation, Presentation, PresentationError};
pub use serial::{parse_input, serialize_graph, InputError};
