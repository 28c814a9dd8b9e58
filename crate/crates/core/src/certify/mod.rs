//! Semistability certificates: trees of applications of combination
//! theorems over visual subgroups, with a generator and an independent
//! checker.
//!
//! Rules and what they assert about the subject's group:
//!
//! | rule          | justification                                                   |
//! |---------------|-----------------------------------------------------------------|
//! | `LeafVertex`  | the vertex group's own annotation                               |
//! | `Product`     | direct product of two infinite f.p. groups is 1-ended semistable |
//! | `FiniteIndex` | semistability passes both ways across a finite-index subgroup   |
//! | `AmalgamSS`   | amalgam of semistable f.p. groups over a f.g. group             |
//! | `UnionMM`     | union of 1-ended semistable subgroups meeting in an infinite f.g. subgroup |
//! | `SplitNonSS`  | splitting over a finite group with a non-semistable factor      |

mod build;
mod check;
mod dot;
mod json;

use thiserror::Error;

use crate::classify::ClassifyError;
use crate::graph::VertexSet;

pub use build::{build_certificate, build_certificate_for};
pub use check::{check_certificate, check_with_session, CheckReport, CheckViolation};
pub use dot::export_certificate_dot;
pub use json::{certificate_from_json, certificate_to_json, certificate_to_value, CERT_FORMAT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Semistable,
    NotSemistable,
}

impl Verdict {
    pub fn flipped(self) -> Self {
        match self {
            Verdict::Semistable => Verdict::NotSemistable,
            Verdict::NotSemistable => Verdict::Semistable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Semistable => "semistable",
            Verdict::NotSemistable => "not_semistable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    LeafVertex {
        vertex: usize,
    },
    Product {
        factor1: VertexSet,
        factor2: VertexSet,
    },
    FiniteIndex {
        core: VertexSet,
        finite_partner: VertexSet,
        child: Box<Certificate>,
    },
    AmalgamSS {
        a: VertexSet,
        b: VertexSet,
        c: VertexSet,
        child_a: Box<Certificate>,
        child_b: Box<Certificate>,
    },
    UnionMM {
        a: VertexSet,
        b: VertexSet,
        child_a: Box<Certificate>,
        child_b: Box<Certificate>,
    },
    SplitNonSS {
        a: VertexSet,
        b: VertexSet,
        c: VertexSet,
        child_a: Box<Certificate>,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::LeafVertex { .. } => "LeafVertex",
            Rule::Product { .. } => "Product",
            Rule::FiniteIndex { .. } => "FiniteIndex",
            Rule::AmalgamSS { .. } => "AmalgamSS",
            Rule::UnionMM { .. } => "UnionMM",
            Rule::SplitNonSS { .. } => "SplitNonSS",
        }
    }
}

/// One node of a certificate: a claim about the full subgraph `subject`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: VertexSet,
    pub verdict: Verdict,
    pub rule: Rule,
}

impl Certificate {
    pub fn leaf(vertex: usize, verdict: Verdict) -> Self {
        Certificate { subject: VertexSet::singleton(vertex), verdict, rule: Rule::LeafVertex { vertex } }
    }

    pub fn children(&self) -> Vec<&Certificate> {
        match &self.rule {
            Rule::LeafVertex { .. } | Rule::Product { .. } => vec![],
            Rule::FiniteIndex { child, .. } => vec![child],
            Rule::AmalgamSS { child_a, child_b, .. } | Rule::UnionMM { child_a, child_b, .. } => {
                vec![child_a, child_b]
            }
            Rule::SplitNonSS { child_a, .. } => vec![child_a],
        }
    }

    pub fn children_mut(&mut self) -> Vec<&mut Certificate> {
        match &mut self.rule {
            Rule::LeafVertex { .. } | Rule::Product { .. } => vec![],
            Rule::FiniteIndex { child, .. } => vec![child],
            Rule::AmalgamSS { child_a, child_b, .. } | Rule::UnionMM { child_a, child_b, .. } => {
                vec![child_a, child_b]
            }
            Rule::SplitNonSS { child_a, .. } => vec![child_a],
        }
    }

    /// Vertex-set parameters of the rule (not including the subject).
    pub fn params_mut(&mut self) -> Vec<&mut VertexSet> {
        match &mut self.rule {
            Rule::LeafVertex { .. } => vec![],
            Rule::Product { factor1, factor2 } => vec![factor1, factor2],
            Rule::FiniteIndex { core, finite_partner, .. } => vec![core, finite_partner],
            Rule::AmalgamSS { a, b, c, .. } | Rule::SplitNonSS { a, b, c, .. } => vec![a, b, c],
            Rule::UnionMM { a, b, .. } => vec![a, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Certificate> {
        let mut out = vec![self];
        for c in self.children() {
            out.extend(c.nodes());
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CertifyError {
    #[error("semistability verdict is unknown; no certificate can be built")]
    UnknownVerdict,
    #[error("the empty graph has no certificate")]
    EmptySubject,
    #[error("certificate search exhausted without an accepted certificate")]
    SearchExhausted,
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}
