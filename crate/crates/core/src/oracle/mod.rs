//! Concrete arithmetic in graph products whose vertex groups are all finite
//! and given by multiplication tables. Used to cross-check the analytic
//! classifiers.

mod ends;
mod table;

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use thiserror::Error;

use crate::graph::{ProductGraph, VertexSet};

pub use ends::{EndsEstimate, EndsReport, EstimateParams};
pub use table::{FiniteGroupTable, TableError, EXHAUSTIVE_ASSOC_LIMIT, SAMPLED_ASSOC_TRIPLES};

/// Default element cap for Cayley-ball enumeration.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("vertex '{0}' has no multiplication table")]
    MissingTable(String),
    #[error("syllable ({vertex}, {elem}) does not name a group element")]
    InvalidSyllable { vertex: usize, elem: usize },
    #[error("ball exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// One vertex-group element inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub elem: usize,
}

impl Syllable {
    pub fn new(vertex: usize, elem: usize) -> Self {
        Syllable { vertex, elem }
    }
}

/// Reduced syllable sequence in canonical (lexicographically least
/// shuffle) order. The empty form is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalForm(Vec<Syllable>);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    /// Syllable length; `is_identity` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupOrder {
    Finite(usize),
    ExceedsBound,
}

/// A ball in the Cayley graph for the generating set of all non-identity
/// vertex-group elements.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    /// Elements in breadth-first discovery order.
    pub elements: Vec<NormalForm>,
    pub dist: Vec<usize>,
    /// Undirected edges `(i, j)`, `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// No element outside the ball is adjacent to it: the whole group fits.
    pub closed: bool,
}

impl Ball {
    /// Number of elements at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for &d in &self.dist {
            out[d] += 1;
        }
        out
    }
}

/// Word arithmetic for a graph product with all vertex groups tabulated.
pub struct Oracle<'g> {
    graph: &'g ProductGraph,
    tables: Vec<&'g FiniteGroupTable>,
}

impl<'g> Oracle<'g> {
    pub fn new(graph: &'g ProductGraph) -> Result<Self, OracleError> {
        let tables = graph
            .vertices()
            .iter()
            .map(|v| v.table.as_ref().ok_or_else(|| OracleError::MissingTable(v.name.clone())))
            .collect::<Result<_, _>>()?;
        Ok(Oracle { graph, tables })
    }

    pub fn graph(&self) -> &ProductGraph {
        self.graph
    }

    fn check(&self, s: Syllable) -> Result<(), OracleError> {
        match self.tables.get(s.vertex) {
            Some(t) if s.elem < t.order() => Ok(()),
            _ => Err(OracleError::InvalidSyllable { vertex: s.vertex, elem: s.elem }),
        }
    }

    /// Right-multiplies a reduced word by one syllable, keeping it reduced.
    /// The syllable travels left past commuting syllables until it meets one
    /// of its own vertex (merge) or a blocking one (append).
    fn push(&self, word: &mut Vec<Syllable>, s: Syllable) {
        if s.elem == 0 {
            return;
        }
        for j in (0..word.len()).rev() {
            let u = word[j].vertex;
            if u == s.vertex {
                let e = self.tables[u].mul(word[j].elem, s.elem);
                if e == 0 {
                    word.remove(j);
                } else {
                    word[j].elem = e;
                }
                return;
            }
            if !self.graph.adjacent(u, s.vertex) {
                break;
            }
        }
        word.push(s);
    }

    /// Left-greedy ordering: repeatedly emit the lowest-vertex syllable that
    /// commutes with everything still in front of it.
    fn canonicalize(&self, mut word: Vec<Syllable>) -> NormalForm {
        let mut out = Vec::with_capacity(word.len());
        while !word.is_empty() {
            let mut ahead = VertexSet::EMPTY;
            let mut best: Option<usize> = None;
            for (i, s) in word.iter().enumerate() {
                if ahead.is_subset(self.graph.neighbors(s.vertex))
                    && best.is_none_or(|b| s.vertex < word[b].vertex)
                {
                    best = Some(i);
                }
                ahead.insert(s.vertex);
            }
            out.push(word.remove(best.expect("a reduced word has a movable syllable")));
        }
        NormalForm(out)
    }

    pub fn reduce(&self, word: &[Syllable]) -> Result<NormalForm, OracleError> {
        let mut w = Vec::with_capacity(word.len());
        for &s in word {
            self.check(s)?;
            self.push(&mut w, s);
        }
        Ok(self.canonicalize(w))
    }

    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        let mut w = x.0.clone();
        for &s in &y.0 {
            self.push(&mut w, s);
        }
        self.canonicalize(w)
    }

    pub fn inverse(&self, x: &NormalForm) -> NormalForm {
        let w: Vec<Syllable> =
            x.0.iter().rev().map(|s| Syllable::new(s.vertex, self.tables[s.vertex].inv(s.elem))).collect();
        self.canonicalize(w)
    }

    fn times(&self, x: &NormalForm, s: Syllable) -> NormalForm {
        let mut w = x.0.clone();
        self.push(&mut w, s);
        self.canonicalize(w)
    }

    /// Every non-identity element of every vertex group in `s`.
    pub fn generators(&self, s: VertexSet) -> Vec<Syllable> {
        s.iter().flat_map(|v| (1..self.tables[v].order()).map(move |e| Syllable::new(v, e))).collect()
    }

    /// Order of the subgroup generated by the vertex groups of `s`, by
    /// closure enumeration.
    pub fn subgroup_order(&self, s: VertexSet, bound: usize) -> Result<SubgroupOrder, OracleError> {
        if bound == 0 {
            return Err(OracleError::InvalidParams("bound must be at least 1".into()));
        }
        self.graph.check_set(s).map_err(|e| OracleError::InvalidParams(e.to_string()))?;
        let gens = self.generators(s);
        let mut seen: FxHashSet<NormalForm> = [NormalForm::identity()].into_iter().collect();
        let mut queue = VecDeque::from([NormalForm::identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.times(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Ok(SubgroupOrder::ExceedsBound);
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(SubgroupOrder::Finite(seen.len()))
    }

    pub fn cayley_ball(&self, radius: usize, cap: usize) -> Result<Ball, OracleError> {
        let gens = self.generators(self.graph.all());
        let mut index: FxHashMap<NormalForm, usize> = [(NormalForm::identity(), 0)].into_iter().collect();
        let mut elements = vec![NormalForm::identity()];
        let mut dist = vec![0];
        let mut edges = Vec::new();
        let mut closed = true;
        let mut i = 0;
        while i < elements.len() {
            let d = dist[i];
            for &g in &gens {
                let y = self.times(&elements[i], g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None if d < radius => {
                        if elements.len() >= cap {
                            return Err(OracleError::CapExceeded(cap));
                        }
                        let j = elements.len();
                        index.insert(y.clone(), j);
                        elements.push(y);
                        dist.push(d + 1);
                        j
                    }
                    None => {
                        closed = false;
                        continue;
                    }
                };
                if i < j {
                    edges.push((i, j));
                }
            }
            i += 1;
        }
        edges.sort_unstable();
        Ok(Ball { radius, elements, dist, edges, closed })
    }

    pub fn estimate_ends(&self, params: &EstimateParams) -> Result<EndsReport, OracleError> {
        ends::estimate(self, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexGroup;

    fn z2(names: &[&str], edges: &[(&str, &str)]) -> ProductGraph {
        let vs = names.iter().map(|n| VertexGroup::z2(*n)).collect();
        ProductGraph::new(vs, edges.iter().copied()).unwrap()
    }

    fn syl(v: usize) -> Syllable {
        Syllable::new(v, 1)
    }

    #[test]
    fn reduce_examples() {
        let g = z2(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let o = Oracle::new(&g).unwrap();
        assert!(o.reduce(&[]).unwrap().is_identity());
        assert_eq!(o.reduce(&[syl(0), syl(1), syl(0)]).unwrap().syllables(), &[syl(1)]);
        assert_eq!(o.reduce(&[syl(0), syl(2), syl(0)]).unwrap().syllables(), &[syl(0), syl(2), syl(0)]);
        // b commutes with a and c, so it moves to the front of [c][b]
        assert_eq!(o.reduce(&[syl(2), syl(1)]).unwrap().syllables(), &[syl(1), syl(2)]);
        assert_eq!(
            o.reduce(&[Syllable::new(0, 2)]),
            Err(OracleError::InvalidSyllable { vertex: 0, elem: 2 })
        );
    }

    #[test]
    fn missing_table() {
        let g = ProductGraph::new(vec![VertexGroup::finite("a", 2)], Vec::<(String, String)>::new()).unwrap();
        assert!(matches!(Oracle::new(&g), Err(OracleError::MissingTable(_))));
    }

    #[test]
    fn multiply_examples() {
        let g = z2(&["a", "c"], &[]);
        let o = Oracle::new(&g).unwrap();
        let x = o.reduce(&[syl(0), syl(1)]).unwrap();
        let y = o.reduce(&[syl(1), syl(0)]).unwrap();
        assert!(o.multiply(&x, &y).is_identity());
        assert_eq!(o.multiply(&x, &NormalForm::identity()), x);
        assert!(o.multiply(&x, &o.inverse(&x)).is_identity());
    }

    #[test]
    fn subgroup_orders() {
        let g = z2(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let o = Oracle::new(&g).unwrap();
        assert_eq!(o.subgroup_order(g.set_of(&["a", "b"]).unwrap(), 100), Ok(SubgroupOrder::Finite(4)));
        assert_eq!(o.subgroup_order(g.set_of(&["a", "c"]).unwrap(), 100), Ok(SubgroupOrder::ExceedsBound));
        assert_eq!(o.subgroup_order(VertexSet::EMPTY, 1), Ok(SubgroupOrder::Finite(1)));
        assert!(o.subgroup_order(VertexSet::EMPTY, 0).is_err());
    }

    #[test]
    fn ball_examples() {
        let g = z2(&["a", "c"], &[]);
        let o = Oracle::new(&g).unwrap();
        let b0 = o.cayley_ball(0, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b0.elements.len(), 1);
        assert!(b0.edges.is_empty());
        let b3 = o.cayley_ball(3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b3.sphere_sizes(), vec![1, 2, 2, 2]);
        assert!(!b3.closed);

        let t = z2(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let o = Oracle::new(&t).unwrap();
        let b = o.cayley_ball(3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.elements.len(), 8);
        assert!(b.closed);

        let g = z2(&["a", "b", "c"], &[]);
        let o = Oracle::new(&g).unwrap();
        assert_eq!(o.cayley_ball(10, 50).unwrap_err(), OracleError::CapExceeded(50));
    }

    #[test]
    fn nonabelian_vertex_merges_in_order() {
        let d3 = FiniteGroupTable::dihedral(3);
        let g = ProductGraph::new(
            vec![VertexGroup::from_table("d", d3.clone()), VertexGroup::z2("z")],
            Vec::<(String, String)>::new(),
        )
        .unwrap();
        let o = Oracle::new(&g).unwrap();
        let (r, s) = (Syllable::new(0, 1), Syllable::new(0, 3));
        let rs = o.reduce(&[r, s]).unwrap();
        let sr = o.reduce(&[s, r]).unwrap();
        assert_eq!(rs.syllables(), &[Syllable::new(0, d3.mul(1, 3))]);
        assert_ne!(rs, sr);
    }
}
