//! Annotated graphs that define graph products, and the purely
//! graph-theoretic queries the classifiers are built on.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::oracle::FiniteGroupTable;
use crate::presentation::LocalPresentation;

/// Hard ceiling on graph size: vertex sets are 64-bit masks.
pub const MAX_GRAPH_VERTICES: usize = 64;

/// Default vertex-count bound for separator enumeration.
pub const DEFAULT_SEPARATOR_BOUND: usize = 24;

/// A set of vertices of one [`ProductGraph`], as a bitmask over vertex
/// indices. Iteration always follows the global vertex order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The first `n` vertices.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GRAPH_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest vertex index in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Ordering by size, then lexicographically on the sorted index list.
    pub fn canonical_cmp(self, other: Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

/// Number of ends of a single vertex group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ends {
    Zero,
    One,
    Two,
    Many,
    Unknown,
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }
}

/// What is known about one vertex group.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexGroup {
    pub name: String,
    pub order: Order,
    pub ends: Ends,
    pub semistable: Truth,
    pub finitely_presented: bool,
    pub presentation: Option<LocalPresentation>,
    pub table: Option<FiniteGroupTable>,
}

impl VertexGroup {
    /// A finite group of order `n` with no concrete data attached.
    pub fn finite(name: impl Into<String>, n: u64) -> Self {
        VertexGroup {
            name: name.into(),
            order: Order::Finite(n),
            ends: Ends::Zero,
            semistable: Truth::Yes,
            finitely_presented: true,
            presentation: None,
            table: None,
        }
    }

    pub fn infinite(name: impl Into<String>, ends: Ends, semistable: Truth) -> Self {
        VertexGroup {
            name: name.into(),
            order: Order::Infinite,
            ends,
            semistable,
            finitely_presented: true,
            presentation: None,
            table: None,
        }
    }

    /// A finite group realized by a multiplication table.
    pub fn from_table(name: impl Into<String>, table: FiniteGroupTable) -> Self {
        let mut g = VertexGroup::finite(name, table.order() as u64);
        g.table = Some(table);
        g
    }

    /// `Z_2 = <x : x^2>` with both a table and an explicit presentation.
    pub fn z2(name: impl Into<String>) -> Self {
        let mut g = VertexGroup::from_table(name, FiniteGroupTable::cyclic(2));
        g.presentation = Some(LocalPresentation::cyclic("x", 2));
        g
    }

    pub fn with_presentation(mut self, p: LocalPresentation) -> Self {
        self.presentation = Some(p);
        self.finitely_presented = true;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.order.is_finite()
    }
}

/// One broken invariant of a [`ProductGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooManyVertices(usize),
    DuplicateName(String),
    SelfLoop(String),
    DuplicateEdge(String, String),
    UnknownEndpoint(String),
    TrivialGroup(String),
    FiniteWithEnds(String),
    InfiniteWithZeroEnds(String),
    FiniteNotSemistable(String),
    TableOrderMismatch { vertex: String, table: usize, order: Order },
    TableOnInfinite(String),
    PresentationNotFp(String),
    BadPresentation { vertex: String, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyVertices(n) => {
                write!(f, "graph has {n} vertices, at most {MAX_GRAPH_VERTICES} supported")
            }
            Violation::DuplicateName(v) => write!(f, "duplicate vertex name '{v}'"),
            Violation::SelfLoop(v) => write!(f, "self-loop at '{v}'"),
            Violation::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            Violation::UnknownEndpoint(v) => write!(f, "edge endpoint '{v}' is not a vertex"),
            Violation::TrivialGroup(v) => {
                write!(f, "vertex '{v}' has the trivial group; delete the vertex instead")
            }
            Violation::FiniteWithEnds(v) => {
                write!(f, "vertex '{v}': finite order requires ends 'zero'")
            }
            Violation::InfiniteWithZeroEnds(v) => {
                write!(f, "vertex '{v}': ends 'zero' requires a finite order")
            }
            Violation::FiniteNotSemistable(v) => {
                write!(f, "vertex '{v}': finite groups are semistable")
            }
            Violation::TableOrderMismatch { vertex, table, order } => {
                write!(f, "vertex '{vertex}': table has {table} elements but order is {order:?}")
            }
            Violation::TableOnInfinite(v) => {
                write!(f, "vertex '{v}': multiplication table given for an infinite group")
            }
            Violation::PresentationNotFp(v) => {
                write!(f, "vertex '{v}': presentation given but group flagged not finitely presented")
            }
            Violation::BadPresentation { vertex, reason } => {
                write!(f, "vertex '{vertex}': {reason}")
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("vertex set {0:?} is not contained in the graph")]
    SetOutOfRange(VertexSet),
    #[error("separator enumeration bound exceeded: {vertices} vertices > bound {bound}")]
    BoundExceeded { vertices: usize, bound: usize },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A finite simple graph annotated with vertex groups.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    vertices: Vec<VertexGroup>,
    edges: Vec<(String, String)>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
}

impl PartialEq for ProductGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl ProductGraph {
    /// Builds and validates a graph.
    pub fn new<I, S>(vertices: Vec<VertexGroup>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let g = Self::unchecked(vertices, edges);
        let violations = validate_graph(&g);
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    /// Builds a graph without validating it. Malformed edges are kept in the
    /// edge list (so [`validate_graph`] can report them) but ignored for
    /// adjacency.
    pub fn unchecked<I, S>(vertices: Vec<VertexGroup>, edges: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let edges: Vec<(String, String)> = edges.into_iter().map(|(u, v)| (u.into(), v.into())).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            index.entry(v.name.clone()).or_insert(i);
        }
        let mut adj = vec![VertexSet::EMPTY; vertices.len()];
        for (u, v) in &edges {
            if let (Some(&i), Some(&j)) = (index.get(u), index.get(v)) {
                if i != j && i < MAX_GRAPH_VERTICES && j < MAX_GRAPH_VERTICES {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        ProductGraph { vertices, edges, index, adj }
    }

    pub fn empty() -> Self {
        Self::unchecked(Vec::new(), Vec::<(String, String)>::new())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexGroup] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &VertexGroup {
        &self.vertices[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Every vertex of the graph.
    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len().min(MAX_GRAPH_VERTICES))
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Link of `v` inside the full subgraph on `within`.
    pub fn link_in(&self, within: VertexSet, v: usize) -> VertexSet {
        self.adj[v].intersection(within)
    }

    /// Star of `v` inside the full subgraph on `within`.
    pub fn star_in(&self, within: VertexSet, v: usize) -> VertexSet {
        self.link_in(within, v).with(v)
    }

    /// Canonical edge list over indices: `(i, j)` with `i < j`, sorted.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.adj.len() {
            for j in self.adj[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref()).ok_or_else(|| GraphError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect()
    }

    pub fn names(&self, s: VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.name(v)).collect()
    }

    pub fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            Err(GraphError::SetOutOfRange(s))
        }
    }

    pub fn all_finite(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.vertices[v].is_finite())
    }
}

/// Lists every broken invariant; an empty list means the graph is valid.
pub fn validate_graph(g: &ProductGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.len() > MAX_GRAPH_VERTICES {
        out.push(Violation::TooManyVertices(g.len()));
    }
    let mut seen = HashMap::new();
    for v in &g.vertices {
        if seen.insert(v.name.as_str(), ()).is_some() {
            out.push(Violation::DuplicateName(v.name.clone()));
        }
    }
    let mut edge_seen = HashMap::new();
    for (u, v) in &g.edges {
        let (iu, iv) = (g.index_of(u), g.index_of(v));
        if iu.is_none() {
            out.push(Violation::UnknownEndpoint(u.clone()));
        }
        if iv.is_none() {
            out.push(Violation::UnknownEndpoint(v.clone()));
        }
        let (Some(iu), Some(iv)) = (iu, iv) else { continue };
        if iu == iv {
            out.push(Violation::SelfLoop(u.clone()));
            continue;
        }
        let key = (iu.min(iv), iu.max(iv));
        if edge_seen.insert(key, ()).is_some() {
            out.push(Violation::DuplicateEdge(u.clone(), v.clone()));
        }
    }
    for v in &g.vertices {
        out.extend(vertex_violations(v));
    }
    out
}

fn vertex_violations(v: &VertexGroup) -> Vec<Violation> {
    let mut out = Vec::new();
    let name = || v.name.clone();
    match v.order {
        Order::Finite(n) => {
            if n <= 1 {
                out.push(Violation::TrivialGroup(name()));
            }
            if v.ends != Ends::Zero {
                out.push(Violation::FiniteWithEnds(name()));
            }
            if v.semistable != Truth::Yes {
                out.push(Violation::FiniteNotSemistable(name()));
            }
        }
        Order::Infinite => {
            if v.ends == Ends::Zero {
                out.push(Violation::InfiniteWithZeroEnds(name()));
            }
        }
    }
    if let Some(t) = &v.table {
        match v.order {
            Order::Finite(n) if n as usize == t.order() => {}
            Order::Finite(_) => {
                out.push(Violation::TableOrderMismatch { vertex: name(), table: t.order(), order: v.order })
            }
            Order::Infinite => out.push(Violation::TableOnInfinite(name())),
        }
    }
    if let Some(p) = &v.presentation {
        if !v.finitely_presented {
            out.push(Violation::PresentationNotFp(name()));
        }
        if let Err(reason) = p.check() {
            out.push(Violation::BadPresentation { vertex: name(), reason });
        }
    }
    out
}

/// The full subgraph on `s`, with annotations copied unchanged.
pub fn full_subgraph(g: &ProductGraph, s: VertexSet) -> Result<ProductGraph, GraphError> {
    g.check_set(s)?;
    let vertices = s.iter().map(|v| g.vertices[v].clone()).collect();
    let edges = g
        .edge_indices()
        .into_iter()
        .filter(|&(i, j)| s.contains(i) && s.contains(j))
        .map(|(i, j)| (g.name(i).to_string(), g.name(j).to_string()));
    Ok(ProductGraph::unchecked(vertices, edges))
}

pub fn link(g: &ProductGraph, v: &str) -> Result<VertexSet, GraphError> {
    let i = g.index_of(v).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    Ok(g.neighbors(i))
}

pub fn star(g: &ProductGraph, v: &str) -> Result<VertexSet, GraphError> {
    let i = g.index_of(v).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    Ok(g.neighbors(i).with(i))
}

/// Every pair of distinct vertices of `s` is adjacent.
pub fn is_complete(g: &ProductGraph, s: VertexSet) -> bool {
    s.iter().all(|v| s.without(v).is_subset(g.neighbors(v)))
}

/// Whether the vertex groups of `s` generate a finite subgroup. A complete
/// graph product of finite groups is their direct product; any non-adjacent
/// pair generates a free product of two non-trivial groups.
pub fn spans_finite_subgroup(g: &ProductGraph, s: VertexSet) -> Truth {
    Truth::from(is_complete(g, s) && g.all_finite(s))
}

/// Connected components of the full subgraph on `within`, ordered by their
/// lowest vertex.
pub fn components(g: &ProductGraph, within: VertexSet) -> Vec<VertexSet> {
    let mut rest = within;
    let mut out = Vec::new();
    while let Some(start) = rest.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(g.link_in(within, v));
            }
            frontier = next.difference(comp);
            comp = comp.union(frontier);
        }
        rest = rest.difference(comp);
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &ProductGraph, within: VertexSet) -> bool {
    components(g, within).len() <= 1
}

/// A complete separating subgraph with all vertex groups finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub delta: VertexSet,
    /// Components left after removing `delta`, by lowest vertex.
    pub parts: Vec<VertexSet>,
    /// No other returned separator is a proper subset of this one.
    pub minimal: bool,
}

pub fn find_finite_complete_separators(g: &ProductGraph) -> Result<Vec<Separator>, GraphError> {
    separators_within(g, g.all(), DEFAULT_SEPARATOR_BOUND)
}

/// Enumerates every finite complete separator of the full subgraph on
/// `within`, sorted by size then lexicographic vertex order.
pub fn separators_within(
    g: &ProductGraph,
    within: VertexSet,
    bound: usize,
) -> Result<Vec<Separator>, GraphError> {
    g.check_set(within)?;
    if within.len() > bound {
        return Err(GraphError::BoundExceeded { vertices: within.len(), bound });
    }
    if is_complete(g, within) {
        return Ok(Vec::new());
    }
    let candidates: VertexSet = within.iter().filter(|&v| g.vertex(v).is_finite()).collect();
    let mut found = Vec::new();
    let mut stack = vec![(VertexSet::EMPTY, candidates)];
    while let Some((clique, allowed)) = stack.pop() {
        let parts = components(g, within.difference(clique));
        if parts.len() >= 2 {
            found.push(Separator { delta: clique, parts, minimal: false });
        }
        for v in allowed {
            let above: VertexSet = allowed.iter().filter(|&u| u > v).collect();
            stack.push((clique.with(v), above.intersection(g.neighbors(v))));
        }
    }
    found.sort_by(|a, b| a.delta.canonical_cmp(b.delta));
    let deltas: Vec<VertexSet> = found.iter().map(|s| s.delta).collect();
    for s in &mut found {
        s.minimal = !deltas.iter().any(|&d| d != s.delta && d.is_subset(s.delta));
    }
    Ok(found)
}
