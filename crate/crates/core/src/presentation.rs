//! Standard presentations of graph products, visual amalgam decompositions
//! and retractions by generator-killing Tietze moves.
//!
//! Text format, one item per line:
//!
//! ```text
//! gen <vertex> <symbol>
//! rel <symbol>^<±1> <symbol>^<±1> ...
//! ```
//!
//! Generators are written in presentation order; relators are written in
//! canonical (length, lexicographic) order.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{components, full_subgraph, GraphError, ProductGraph, VertexSet};
use crate::oracle::FiniteGroupTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: String,
    /// Always `1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(symbol: impl Into<String>, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { symbol: symbol.into(), exp }
    }

    pub fn inverse(&self) -> Self {
        Letter { symbol: self.symbol.clone(), exp: -self.exp }
    }
}

pub type Word = Vec<Letter>;

/// Cancels adjacent `x x^-1` pairs until none remain.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for l in word {
        match out.last() {
            Some(top) if top.symbol == l.symbol && top.exp == -l.exp => {
                out.pop();
            }
            _ => out.push(l.clone()),
        }
    }
    out
}

/// Relator order used for file output: shorter words first, then
/// letter-by-letter comparison on (symbol, exponent).
pub fn canonical_word_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn commutator(a: &str, b: &str) -> Word {
    vec![Letter::new(a, 1), Letter::new(b, 1), Letter::new(a, -1), Letter::new(b, -1)]
}

fn symbol_ok(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '^')
}

/// Parses `x^2 y x^-1`-style text; `x^k` expands to `|k|` letters.
pub fn parse_word(text: &str) -> Result<Word, String> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (sym, exp) = match tok.split_once('^') {
            Some((s, e)) => {
                let e: i64 = e.parse().map_err(|_| format!("bad exponent in '{tok}'"))?;
                (s, e)
            }
            None => (tok, 1),
        };
        if !symbol_ok(sym) {
            return Err(format!("bad symbol in '{tok}'"));
        }
        if exp == 0 || exp.abs() > 1 << 16 {
            return Err(format!("exponent out of range in '{tok}'"));
        }
        let sign = if exp > 0 { 1 } else { -1 };
        out.extend((0..exp.abs()).map(|_| Letter::new(sym, sign)));
    }
    Ok(out)
}

pub fn format_word(w: &[Letter]) -> String {
    w.iter().map(|l| format!("{}^{}", l.symbol, l.exp)).collect::<Vec<_>>().join(" ")
}

/// A presentation of one vertex group, in that group's own symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl LocalPresentation {
    /// `<x : x^n>`.
    pub fn cyclic(symbol: &str, n: usize) -> Self {
        LocalPresentation {
            generators: vec![symbol.to_string()],
            relators: vec![(0..n).map(|_| Letter::new(symbol, 1)).collect()],
        }
    }

    /// The full multiplication-table presentation, with the identity
    /// eliminated: generator `g<i>` for each non-identity element `i`, and a
    /// relator `g<i> g<j> g<k>^-1` for every product `i * j = k`.
    pub fn from_table(t: &FiniteGroupTable) -> Self {
        let n = t.order();
        let sym = |i: usize| format!("g{i}");
        let mut relators = Vec::new();
        for i in 1..n {
            for j in 1..n {
                let k = t.mul(i, j);
                let mut w = vec![Letter::new(sym(i), 1), Letter::new(sym(j), 1)];
                if k != 0 {
                    w.push(Letter::new(sym(k), -1));
                }
                relators.push(w);
            }
        }
        LocalPresentation { generators: (1..n).map(sym).collect(), relators }
    }

    pub fn check(&self) -> Result<(), String> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !symbol_ok(g) {
                return Err(format!("bad generator symbol '{g}'"));
            }
            if !seen.insert(g.as_str()) {
                return Err(format!("duplicate generator '{g}'"));
            }
        }
        for r in &self.relators {
            if let Some(l) = r.iter().find(|l| !seen.contains(l.symbol.as_str())) {
                return Err(format!("relator uses undeclared symbol '{}'", l.symbol));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub symbol: String,
    pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("vertex '{0}' has neither a presentation nor a multiplication table")]
    MissingPresentation(String),
    #[error("generator symbol '{0}' is not unique")]
    DuplicateSymbol(String),
    #[error("relator uses undeclared symbol '{0}'")]
    UndeclaredSymbol(String),
    #[error("vertex set does not separate the graph")]
    NotSeparating,
    #[error("one side of the amalgam is empty")]
    EmptySide,
    #[error("invalid amalgam sides: {0}")]
    BadSides(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("retraction does not reproduce the subgraph's standard presentation")]
    RetractMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl Presentation {
    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|g| g.symbol.as_str())
    }

    pub fn check(&self) -> Result<(), PresentationError> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.symbol.as_str()) {
                return Err(PresentationError::DuplicateSymbol(g.symbol.clone()));
            }
        }
        for r in &self.relators {
            if let Some(l) = r.iter().find(|l| !seen.contains(l.symbol.as_str())) {
                return Err(PresentationError::UndeclaredSymbol(l.symbol.clone()));
            }
        }
        Ok(())
    }

    /// Same generators, relators in canonical order.
    pub fn canonical(&self) -> Presentation {
        let mut relators = self.relators.clone();
        relators.sort_by(canonical_word_cmp);
        Presentation { generators: self.generators.clone(), relators }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            let _ = writeln!(out, "gen {} {}", g.vertex, g.symbol);
        }
        for r in self.canonical().relators {
            let _ = writeln!(out, "rel {}", format_word(&r));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Presentation, PresentationError> {
        let mut p = Presentation::default();
        for (i, line) in text.lines().enumerate() {
            let err = |msg: String| PresentationError::Parse { line: i + 1, msg };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (kind, rest) = line.split_once(' ').unwrap_or((line, ""));
            match kind {
                "gen" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [vertex, symbol] = parts[..] else {
                        return Err(err("expected 'gen <vertex> <symbol>'".into()));
                    };
                    p.generators.push(Generator { symbol: symbol.into(), vertex: vertex.into() });
                }
                "rel" => {
                    let w = parse_word(rest).map_err(err)?;
                    if w.iter().any(|l| l.exp.abs() != 1) {
                        return Err(err("exponents must be ±1".into()));
                    }
                    p.relators.push(w);
                }
                other => return Err(err(format!("unknown record '{other}'"))),
            }
        }
        p.check()?;
        Ok(p)
    }

    /// Relators as a multiset.
    pub fn relator_counts(&self) -> HashMap<&Word, usize> {
        let mut m = HashMap::new();
        for r in &self.relators {
            *m.entry(r).or_insert(0) += 1;
        }
        m
    }
}

fn vertex_presentation(g: &ProductGraph, v: usize) -> Result<LocalPresentation, PresentationError> {
    let vg = g.vertex(v);
    match (&vg.presentation, &vg.table) {
        (Some(p), _) => Ok(p.clone()),
        (None, Some(t)) => Ok(LocalPresentation::from_table(t)),
        (None, None) => Err(PresentationError::MissingPresentation(vg.name.clone())),
    }
}

pub fn qualified(vertex: &str, symbol: &str) -> String {
    format!("{vertex}.{symbol}")
}

/// Generators are the disjoint union of the vertex generators; relators are
/// the vertex relators followed by one commutator per pair of generators of
/// adjacent vertices, lower vertex first.
pub fn standard_presentation(g: &ProductGraph) -> Result<Presentation, PresentationError> {
    let mut p = Presentation::default();
    let mut gens_of: Vec<Vec<String>> = Vec::with_capacity(g.len());
    for v in 0..g.len() {
        let local = vertex_presentation(g, v)?;
        let name = g.name(v);
        let q = |s: &str| qualified(name, s);
        let syms: Vec<String> = local.generators.iter().map(|s| q(s)).collect();
        for s in &syms {
            p.generators.push(Generator { symbol: s.clone(), vertex: name.to_string() });
        }
        for r in &local.relators {
            let w: Word = r.iter().map(|l| Letter::new(q(&l.symbol), l.exp)).collect();
            let w = free_reduce(&w);
            if !w.is_empty() {
                p.relators.push(w);
            }
        }
        gens_of.push(syms);
    }
    for (i, j) in g.edge_indices() {
        for a in &gens_of[i] {
            for b in &gens_of[j] {
                p.relators.push(commutator(a, b));
            }
        }
    }
    p.check()?;
    Ok(p)
}

/// Visual decomposition `G = G_A *_{G_Delta} G_B` along a separating subgraph.
#[derive(Clone, Debug, PartialEq)]
pub struct AmalgamDecomposition {
    pub graph_a: VertexSet,
    pub graph_b: VertexSet,
    pub graph_delta: VertexSet,
    pub pres_a: Presentation,
    pub pres_b: Presentation,
    pub pres_delta: Presentation,
}

impl AmalgamDecomposition {
    /// `R_A + R_B - R_Delta`, the relators of the amalgam presentation once
    /// the copies of the `Delta` generators are identified.
    pub fn amalgam_relators(&self) -> HashMap<Word, usize> {
        let mut m: HashMap<Word, usize> = HashMap::new();
        for r in self.pres_a.relators.iter().chain(&self.pres_b.relators) {
            *m.entry(r.clone()).or_insert(0) += 1;
        }
        for r in &self.pres_delta.relators {
            if let Some(c) = m.get_mut(r) {
                *c -= 1;
                if *c == 0 {
                    m.remove(r);
                }
            }
        }
        m
    }
}

/// Decomposes along `delta`. Without explicit `sides`, `A` is the component
/// of `g - delta` holding the lowest vertex and `B` is everything else.
pub fn amalgam_presentations(
    g: &ProductGraph,
    delta: VertexSet,
    sides: Option<(VertexSet, VertexSet)>,
) -> Result<AmalgamDecomposition, PresentationError> {
    g.check_set(delta)?;
    let rest = g.all().difference(delta);
    let (a, b) = match sides {
        Some((a, b)) => {
            g.check_set(a)?;
            g.check_set(b)?;
            if a.is_empty() || b.is_empty() {
                return Err(PresentationError::EmptySide);
            }
            if !a.is_disjoint(b) || a.union(b) != rest {
                return Err(PresentationError::BadSides(
                    "sides must partition the vertices outside delta".into(),
                ));
            }
            if a.iter().any(|v| !g.neighbors(v).is_disjoint(b)) {
                return Err(PresentationError::BadSides("an edge joins the two sides".into()));
            }
            (a, b)
        }
        None => {
            let comps = components(g, rest);
            if comps.len() < 2 {
                return Err(PresentationError::NotSeparating);
            }
            (comps[0], rest.difference(comps[0]))
        }
    };
    let (graph_a, graph_b) = (a.union(delta), b.union(delta));
    let pres = |s: VertexSet| -> Result<Presentation, PresentationError> {
        standard_presentation(&full_subgraph(g, s)?)
    };
    Ok(AmalgamDecomposition {
        graph_a,
        graph_b,
        graph_delta: delta,
        pres_a: pres(graph_a)?,
        pres_b: pres(graph_b)?,
        pres_delta: pres(delta)?,
    })
}

/// Presentation of the full subgraph on `s`, obtained from the standard
/// presentation of `g` by killing every generator outside `s`.
pub fn retract_presentation(g: &ProductGraph, s: VertexSet) -> Result<Presentation, PresentationError> {
    g.check_set(s)?;
    let full = standard_presentation(g)?;
    let keep: HashSet<&str> = s.iter().map(|v| g.name(v)).collect();
    let killed: HashSet<&str> = full
        .generators
        .iter()
        .filter(|gen| !keep.contains(gen.vertex.as_str()))
        .map(|gen| gen.symbol.as_str())
        .collect();
    let generators: Vec<Generator> =
        full.generators.iter().filter(|gen| !killed.contains(gen.symbol.as_str())).cloned().collect();
    let mut relators: Vec<Word> = Vec::new();
    let mut present: HashSet<Word> = HashSet::new();
    for r in &full.relators {
        let touched = r.iter().any(|l| killed.contains(l.symbol.as_str()));
        if !touched {
            present.insert(r.clone());
            relators.push(r.clone());
            continue;
        }
        let stripped: Word = r.iter().filter(|l| !killed.contains(l.symbol.as_str())).cloned().collect();
        let w = free_reduce(&stripped);
        if w.is_empty() || present.contains(&w) {
            continue;
        }
        present.insert(w.clone());
        relators.push(w);
    }
    let retracted = Presentation { generators, relators };
    let direct = standard_presentation(&full_subgraph(g, s)?)?;
    if retracted.canonical() != direct.canonical() {
        return Err(PresentationError::RetractMismatch);
    }
    Ok(retracted)
}

/// A graph product over a finite graph is finitely presented exactly when
/// every vertex group is.
pub fn check_finitely_presented(g: &ProductGraph) -> bool {
    g.vertices().iter().all(|v| v.finitely_presented)
}
