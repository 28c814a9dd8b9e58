//! Shared fixtures and brute-force reference implementations for the
//! integration tests. Everything here works from plain adjacency matrices
//! and edge lists, never from the library's vertex-set machinery.

#![allow(dead_code)]

use std::collections::HashMap;

use graphprod::graph::{Ends, ProductGraph, Truth, VertexGroup};
use graphprod::oracle::FiniteGroupTable;

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Plain description of a graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Shape {
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            m[u][v] = true;
            m[v][u] = true;
        }
        m
    }

    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges.iter().map(|&(u, v)| (NAMES[u].to_string(), NAMES[v].to_string())).collect()
    }

    pub fn build(&self, groups: Vec<VertexGroup>) -> ProductGraph {
        ProductGraph::new(groups, self.edge_names()).unwrap()
    }
}

fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, m: &[Vec<bool>]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if m[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// chosen as the edge mask that is smallest over all relabelings.
pub fn graphs_up_to_iso(n: usize) -> Vec<Shape> {
    let slots = edge_slots(n);
    let mut slot_index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in slots.iter().enumerate() {
        slot_index[i][j] = k;
        slot_index[j][i] = k;
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << slots.len()) {
        let canonical = perms.iter().all(|p| {
            let mut image = 0u32;
            for (k, &(i, j)) in slots.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    image |= 1 << slot_index[p[i]][p[j]];
                }
            }
            image >= mask
        });
        if canonical {
            let edges =
                slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            out.push(Shape { n, edges });
        }
    }
    out
}

pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Shape> {
    graphs_up_to_iso(n).into_iter().filter(|s| connected(s.n, &s.matrix())).collect()
}

/// The four statuses of the exhaustive suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Finite2,
    OneEndedSemistable,
    ManyEndedSemistable,
    OneEndedNotSemistable,
}

pub const PALETTE: [Status; 4] =
    [Status::Finite2, Status::OneEndedSemistable, Status::ManyEndedSemistable, Status::OneEndedNotSemistable];

impl Status {
    pub fn group(self, name: &str) -> VertexGroup {
        match self {
            Status::Finite2 => VertexGroup::finite(name, 2),
            Status::OneEndedSemistable => VertexGroup::infinite(name, Ends::One, Truth::Yes),
            Status::ManyEndedSemistable => VertexGroup::infinite(name, Ends::Many, Truth::Yes),
            Status::OneEndedNotSemistable => VertexGroup::infinite(name, Ends::One, Truth::No),
        }
    }

    pub fn finite(self) -> bool {
        self == Status::Finite2
    }
}

/// Every assignment of palette statuses to `n` vertices.
pub fn assignments(n: usize) -> impl Iterator<Item = Vec<Status>> {
    (0..4usize.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let s = PALETTE[code % 4];
                code /= 4;
                s
            })
            .collect()
    })
}

pub fn annotated(shape: &Shape, statuses: &[Status]) -> ProductGraph {
    shape.build(statuses.iter().enumerate().map(|(i, s)| s.group(NAMES[i])).collect())
}

/// Reference predicate: some vertex is non-semistable and its neighbors
/// are pairwise adjacent finite-group vertices.
pub fn has_bad_vertex(shape: &Shape, statuses: &[Status]) -> bool {
    let m = shape.matrix();
    (0..shape.n).any(|v| {
        let nbrs: Vec<usize> = (0..shape.n).filter(|&u| m[v][u]).collect();
        statuses[v] == Status::OneEndedNotSemistable
            && nbrs.iter().all(|&u| statuses[u].finite())
            && nbrs.iter().all(|&x| nbrs.iter().all(|&y| x == y || m[x][y]))
    })
}

/// Number of connected components of the graph restricted to `keep`.
pub fn component_count(m: &[Vec<bool>], keep: &[bool]) -> usize {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !keep[s] || seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if keep[v] && m[u][v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// All subsets (as sorted index lists) that are complete, made of finite
/// vertices, and whose removal leaves at least two components.
pub fn brute_separators(m: &[Vec<bool>], finite: &[bool]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if !members.iter().all(|&i| finite[i]) {
            continue;
        }
        if !members.iter().all(|&x| members.iter().all(|&y| x == y || m[x][y])) {
            continue;
        }
        let keep: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 0).collect();
        if component_count(m, &keep) >= 2 {
            out.push(members);
        }
    }
    out
}

/// Reference ends class: "zero", "one", "more" or "unknown".
pub fn reference_ends(shape: &Shape, groups: &[VertexGroup]) -> &'static str {
    let m = shape.matrix();
    let n = shape.n;
    if n == 0 {
        return "zero";
    }
    let complete = (0..n).all(|i| (0..n).all(|j| i == j || m[i][j]));
    let infinite: Vec<usize> = (0..n).filter(|&i| !groups[i].is_finite()).collect();
    if complete {
        return match infinite.len() {
            0 => "zero",
            1 => match groups[infinite[0]].ends {
                Ends::One => "one",
                Ends::Two | Ends::Many => "more",
                _ => "unknown",
            },
            _ => "one",
        };
    }
    let finite: Vec<bool> = groups.iter().map(|g| g.is_finite()).collect();
    if brute_separators(&m, &finite).is_empty() {
        "one"
    } else {
        "more"
    }
}

pub fn z2_graph(shape: &Shape) -> ProductGraph {
    shape.build((0..shape.n).map(|i| VertexGroup::z2(NAMES[i])).collect())
}

pub fn table_vertex(name: &str, t: FiniteGroupTable) -> VertexGroup {
    VertexGroup::from_table(name, t)
}

/// A graph product instance with multiplication tables, plus its
/// expected ends class ("zero", "one" or "more").
pub struct CatalogEntry {
    pub name: &'static str,
    pub graph: ProductGraph,
    pub expected: &'static str,
}

fn shape(n: usize, edges: &[(usize, usize)]) -> Shape {
    Shape { n, edges: edges.to_vec() }
}

fn tabled(s: &Shape, orders: &[usize]) -> ProductGraph {
    s.build(
        orders
            .iter()
            .enumerate()
            .map(|(i, &k)| table_vertex(NAMES[i], FiniteGroupTable::cyclic(k)))
            .collect(),
    )
}

pub fn catalog() -> Vec<CatalogEntry> {
    let z2 = |s: Shape| {
        let k = vec![2; s.n];
        tabled(&s, &k)
    };
    vec![
        CatalogEntry {
            name: "triangle/Z2",
            graph: z2(shape(3, &[(0, 1), (1, 2), (0, 2)])),
            expected: "zero",
        },
        CatalogEntry { name: "path-3/Z2", graph: z2(shape(3, &[(0, 1), (1, 2)])), expected: "more" },
        CatalogEntry { name: "two isolated Z2", graph: z2(shape(2, &[])), expected: "more" },
        CatalogEntry { name: "three isolated Z2", graph: z2(shape(3, &[])), expected: "more" },
        CatalogEntry {
            name: "square/Z2",
            graph: z2(shape(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
            expected: "one",
        },
        CatalogEntry {
            // a and d are the non-adjacent pair
            name: "K4 minus an edge, Z6 at a",
            graph: tabled(&shape(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]), &[6, 2, 2, 2]),
            expected: "more",
        },
        CatalogEntry { name: "single Z2", graph: z2(shape(1, &[])), expected: "zero" },
        CatalogEntry { name: "single Z3", graph: tabled(&shape(1, &[]), &[3]), expected: "zero" },
        CatalogEntry {
            name: "pentagon/Z2",
            graph: z2(shape(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
            expected: "one",
        },
        CatalogEntry { name: "edge Z2-Z3", graph: tabled(&shape(2, &[(0, 1)]), &[2, 3]), expected: "zero" },
        CatalogEntry { name: "path-4/Z2", graph: z2(shape(4, &[(0, 1), (1, 2), (2, 3)])), expected: "more" },
        CatalogEntry {
            name: "K_{2,3}/Z2",
            graph: z2(shape(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])),
            expected: "one",
        },
        CatalogEntry {
            name: "triangle/Z3",
            graph: tabled(&shape(3, &[(0, 1), (1, 2), (0, 2)]), &[3, 3, 3]),
            expected: "zero",
        },
        CatalogEntry { name: "edge plus isolated Z2", graph: z2(shape(3, &[(0, 1)])), expected: "more" },
        CatalogEntry {
            name: "dihedral D3 edge Z2",
            graph: shape(2, &[(0, 1)]).build(vec![
                table_vertex("a", FiniteGroupTable::dihedral(3)),
                table_vertex("b", FiniteGroupTable::cyclic(2)),
            ]),
            expected: "zero",
        },
        CatalogEntry {
            name: "D3 free product Z2",
            graph: shape(2, &[]).build(vec![
                table_vertex("a", FiniteGroupTable::dihedral(3)),
                table_vertex("b", FiniteGroupTable::cyclic(2)),
            ]),
            expected: "more",
        },
    ]
}

/// Brute-force congruence closure. Generators are all non-identity
/// elements of all vertex groups. Every word of length at most `radius`
/// is a node; nodes are joined when one word turns into the other by
/// swapping adjacent letters from adjacent vertices, or by multiplying
/// two adjacent letters from the same vertex (one letter, or none when the
/// product is the identity). Such moves never lengthen a word, so the
/// classes are exactly the group elements of length at most `radius`.
/// Returns the number of classes whose shortest word has each length.
pub fn congruence_sphere_sizes(g: &ProductGraph, radius: usize) -> Vec<usize> {
    let tables: Vec<&FiniteGroupTable> = g.vertices().iter().map(|v| v.table.as_ref().unwrap()).collect();
    let names: Vec<&str> = g.vertices().iter().map(|v| v.name.as_str()).collect();
    let adjacent = |u: usize, v: usize| {
        g.edges().iter().any(|(x, y)| (x == names[u] && y == names[v]) || (x == names[v] && y == names[u]))
    };
    let n = names.len();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| u != v && adjacent(u, v)).collect()).collect();
    let letters: Vec<(usize, usize)> =
        (0..n).flat_map(|v| (1..tables[v].order()).map(move |e| (v, e))).collect();

    let mut words: Vec<Vec<(usize, usize)>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut x: Vec<(usize, usize)> = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<&[(usize, usize)], usize> =
        words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, w) in words.iter().enumerate() {
        for k in 0..w.len().saturating_sub(1) {
            let ((u, a), (v, b)) = (w[k], w[k + 1]);
            let mut x = w.clone();
            if u == v {
                let prod = tables[u].mul(a, b);
                if prod == 0 {
                    x.drain(k..k + 2);
                } else {
                    x[k] = (u, prod);
                    x.remove(k + 1);
                }
            } else if adj[u][v] {
                x.swap(k, k + 1);
            } else {
                continue;
            }
            let j = index[x.as_slice()];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut shortest: HashMap<usize, usize> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        let r = find(&mut parent, i);
        let e = shortest.entry(r).or_insert(w.len());
        *e = (*e).min(w.len());
    }
    let mut sizes = vec![0; radius + 1];
    for &len in shortest.values() {
        sizes[len] += 1;
    }
    sizes
}
