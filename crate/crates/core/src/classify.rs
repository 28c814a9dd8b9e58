//! Number of ends and semistability at infinity for graph products, read
//! off the annotated graph.
//!
//! The semistability test is the bad-vertex criterion: a graph product of
//! finitely presented groups is not semistable exactly when some vertex
//! group is not semistable and its link is complete with all vertex groups
//! finite. Disconnected graphs are handled component by component (free
//! products over the trivial group). Unknown annotations propagate: a
//! verdict is only definite when no completion of the unknowns could
//! change it.

use std::cell::RefCell;
use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{
    components, is_complete, separators_within, spans_finite_subgroup, Ends, GraphError, Order, ProductGraph,
    Separator, Truth, VertexSet, DEFAULT_SEPARATOR_BOUND,
};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ClassifyError {
    #[error("vertex group '{0}' is not finitely presented")]
    NotFinitelyPresented(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndsClass {
    Zero,
    One,
    MoreThanOne,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndsWitness {
    /// A finite complete separator: the group visually splits over it.
    Separator(Separator),
    /// The graph is complete and this is the single infinite vertex, which
    /// has more than one end.
    CompleteGraphVertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndsVerdict {
    pub class: EndsClass,
    pub witness: Option<EndsWitness>,
    /// Set for the empty graph, whose group is trivial.
    pub trivial_group: bool,
}

impl EndsVerdict {
    fn plain(class: EndsClass) -> Self {
        EndsVerdict { class, witness: None, trivial_group: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemistabilityStatus {
    Semistable,
    NotSemistable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistabilityVerdict {
    pub status: SemistabilityStatus,
    /// First definite bad vertex, present iff `status` is `NotSemistable`.
    pub witness: Option<usize>,
    pub bad: Vec<usize>,
    /// Vertices of unknown status whose link spans a finite subgroup.
    pub potential: Vec<usize>,
    /// The verdict combines more than one connected component.
    pub componentwise: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BadVertices {
    pub definite: Vec<usize>,
    pub potential: Vec<usize>,
}

/// Classifier state for one graph. Results are memoized per vertex subset;
/// a session is meant for a single thread of analysis.
pub struct Session<'g> {
    graph: &'g ProductGraph,
    bound: usize,
    ends_memo: RefCell<HashMap<VertexSet, EndsVerdict>>,
    ss_memo: RefCell<HashMap<VertexSet, SemistabilityVerdict>>,
}

impl<'g> Session<'g> {
    pub fn new(graph: &'g ProductGraph) -> Self {
        Self::with_bound(graph, DEFAULT_SEPARATOR_BOUND)
    }

    pub fn with_bound(graph: &'g ProductGraph, bound: usize) -> Self {
        Session {
            graph,
            bound,
            ends_memo: RefCell::new(HashMap::new()),
            ss_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &'g ProductGraph {
        self.graph
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Bad and potentially bad vertices of the full subgraph on `s`.
    pub fn bad_vertices(&self, s: VertexSet) -> BadVertices {
        let g = self.graph;
        let mut out = BadVertices::default();
        for v in s {
            if spans_finite_subgroup(g, g.link_in(s, v)) != Truth::Yes {
                continue;
            }
            match g.vertex(v).semistable {
                Truth::No => out.definite.push(v),
                Truth::Unknown => out.potential.push(v),
                Truth::Yes => {}
            }
        }
        out
    }

    pub fn semistability(&self, s: VertexSet) -> Result<SemistabilityVerdict, ClassifyError> {
        self.graph.check_set(s)?;
        if let Some(v) = self.ss_memo.borrow().get(&s) {
            return Ok(v.clone());
        }
        if let Some(v) = s.iter().find(|&v| !self.graph.vertex(v).finitely_presented) {
            return Err(ClassifyError::NotFinitelyPresented(self.graph.name(v).to_string()));
        }
        let comps = components(self.graph, s);
        let mut bad = Vec::new();
        let mut potential = Vec::new();
        let mut statuses = Vec::new();
        for c in &comps {
            // Links inside a component equal links inside `s`.
            let b = self.bad_vertices(*c);
            statuses.push(status_of(&b));
            bad.extend(b.definite);
            potential.extend(b.potential);
        }
        bad.sort_unstable();
        potential.sort_unstable();
        let status = if statuses.contains(&SemistabilityStatus::NotSemistable) {
            SemistabilityStatus::NotSemistable
        } else if statuses.contains(&SemistabilityStatus::Unknown) {
            SemistabilityStatus::Unknown
        } else {
            SemistabilityStatus::Semistable
        };
        let verdict = SemistabilityVerdict {
            status,
            witness: (status == SemistabilityStatus::NotSemistable).then(|| bad[0]),
            bad,
            potential,
            componentwise: comps.len() > 1,
        };
        self.ss_memo.borrow_mut().insert(s, verdict.clone());
        Ok(verdict)
    }

    pub fn ends(&self, s: VertexSet) -> Result<EndsVerdict, ClassifyError> {
        self.graph.check_set(s)?;
        if let Some(v) = self.ends_memo.borrow().get(&s) {
            return Ok(v.clone());
        }
        let verdict = self.compute_ends(s)?;
        self.ends_memo.borrow_mut().insert(s, verdict.clone());
        Ok(verdict)
    }

    fn compute_ends(&self, s: VertexSet) -> Result<EndsVerdict, ClassifyError> {
        let g = self.graph;
        if s.is_empty() {
            return Ok(EndsVerdict { class: EndsClass::Zero, witness: None, trivial_group: true });
        }
        if is_complete(g, s) {
            let infinite: Vec<usize> = s.iter().filter(|&v| g.vertex(v).order == Order::Infinite).collect();
            return Ok(match infinite[..] {
                [] => EndsVerdict::plain(EndsClass::Zero),
                // finite extension of the single infinite factor
                [u] => match g.vertex(u).ends {
                    Ends::Two | Ends::Many => EndsVerdict {
                        class: EndsClass::MoreThanOne,
                        witness: Some(EndsWitness::CompleteGraphVertex(u)),
                        trivial_group: false,
                    },
                    Ends::One => EndsVerdict::plain(EndsClass::One),
                    Ends::Unknown | Ends::Zero => EndsVerdict::plain(EndsClass::Unknown),
                },
                // contains a product of two infinite groups with finite index
                _ => EndsVerdict::plain(EndsClass::One),
            });
        }
        let seps = separators_within(g, s, self.bound)?;
        Ok(match seps.into_iter().next() {
            Some(sep) => EndsVerdict {
                class: EndsClass::MoreThanOne,
                witness: Some(EndsWitness::Separator(sep)),
                trivial_group: false,
            },
            None => EndsVerdict::plain(EndsClass::One),
        })
    }

    /// One-ended and semistable, three-valued.
    pub fn one_ended_and_semistable(&self, s: VertexSet) -> Result<Truth, ClassifyError> {
        let ends = self.ends(s)?.class;
        let ss = self.semistability(s)?.status;
        Ok(match (ends, ss) {
            (EndsClass::Zero | EndsClass::MoreThanOne, _) => Truth::No,
            (_, SemistabilityStatus::NotSemistable) => Truth::No,
            (EndsClass::One, SemistabilityStatus::Semistable) => Truth::Yes,
            _ => Truth::Unknown,
        })
    }
}

fn status_of(b: &BadVertices) -> SemistabilityStatus {
    if !b.definite.is_empty() {
        SemistabilityStatus::NotSemistable
    } else if !b.potential.is_empty() {
        SemistabilityStatus::Unknown
    } else {
        SemistabilityStatus::Semistable
    }
}

pub fn bad_vertices(g: &ProductGraph) -> BadVertices {
    Session::new(g).bad_vertices(g.all())
}

pub fn semistability_of(g: &ProductGraph) -> Result<SemistabilityVerdict, ClassifyError> {
    Session::new(g).semistability(g.all())
}

pub fn ends_of(g: &ProductGraph) -> Result<EndsVerdict, ClassifyError> {
    Session::new(g).ends(g.all())
}

pub fn one_ended_and_semistable(g: &ProductGraph, s: VertexSet) -> Result<Truth, ClassifyError> {
    Session::new(g).one_ended_and_semistable(s)
}
