//! Library results against brute-force reference implementations on
//! exhaustive families of small graphs.

mod common;

use common::*;
use graphprod::classify::{ends_of, semistability_of, EndsClass, SemistabilityStatus};
use graphprod::graph::{
    separators_within, Ends, ProductGraph, Truth, VertexGroup, VertexSet, DEFAULT_SEPARATOR_BOUND,
};

fn finite_mask_graph(shape: &Shape, mask: u32) -> ProductGraph {
    let groups = (0..shape.n)
        .map(|i| {
            if mask >> i & 1 == 1 {
                VertexGroup::finite(NAMES[i], 2 + i as u64)
            } else {
                VertexGroup::infinite(NAMES[i], Ends::One, Truth::Yes)
            }
        })
        .collect();
    shape.build(groups)
}

#[test]
fn separators_match_brute_force() {
    for n in 1..=6 {
        for shape in graphs_up_to_iso(n) {
            let m = shape.matrix();
            for mask in 0u32..(1 << n) {
                let g = finite_mask_graph(&shape, mask);
                let finite: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                let complete = (0..n).all(|i| (0..n).all(|j| i == j || m[i][j]));
                let mut expected = if complete { vec![] } else { brute_separators(&m, &finite) };
                expected.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
                let got = separators_within(&g, g.all(), DEFAULT_SEPARATOR_BOUND).unwrap();
                let got_sets: Vec<Vec<usize>> = got.iter().map(|s| s.delta.to_vec()).collect();
                assert_eq!(got_sets, expected, "{shape:?} finite mask {mask:#b}");
                for s in &got {
                    let minimal = !expected
                        .iter()
                        .any(|d| d.len() < s.delta.len() && d.iter().all(|v| s.delta.contains(*v)));
                    assert_eq!(s.minimal, minimal, "{shape:?} {mask:#b} {:?}", s.delta);
                    let keep: Vec<bool> = (0..n).map(|i| !s.delta.contains(i)).collect();
                    assert_eq!(s.parts.len(), component_count(&m, &keep));
                    let union = s.parts.iter().fold(VertexSet::EMPTY, |a, &p| a.union(p));
                    assert_eq!(union, g.all().difference(s.delta));
                }
            }
        }
    }
}

/// Statuses beyond the acceptance palette, including unknown annotations.
fn wide_palette(i: usize, code: usize) -> VertexGroup {
    let name = NAMES[i];
    match code {
        0 => VertexGroup::finite(name, 2),
        1 => VertexGroup::infinite(name, Ends::One, Truth::Yes),
        2 => VertexGroup::infinite(name, Ends::Two, Truth::Yes),
        3 => VertexGroup::infinite(name, Ends::Many, Truth::No),
        4 => VertexGroup::infinite(name, Ends::Unknown, Truth::Unknown),
        _ => VertexGroup::infinite(name, Ends::One, Truth::No),
    }
}

const WIDE: usize = 6;

fn reference_semistability(shape: &Shape, groups: &[VertexGroup]) -> SemistabilityStatus {
    let m = shape.matrix();
    let obstructed = |v: usize| {
        let nbrs: Vec<usize> = (0..shape.n).filter(|&u| m[v][u]).collect();
        nbrs.iter().all(|&u| groups[u].is_finite())
            && nbrs.iter().all(|&x| nbrs.iter().all(|&y| x == y || m[x][y]))
    };
    let definite = (0..shape.n).any(|v| groups[v].semistable == Truth::No && obstructed(v));
    let potential = (0..shape.n).any(|v| groups[v].semistable == Truth::Unknown && obstructed(v));
    if definite {
        SemistabilityStatus::NotSemistable
    } else if potential {
        SemistabilityStatus::Unknown
    } else {
        SemistabilityStatus::Semistable
    }
}

#[test]
fn classifier_matches_reference_on_all_small_graphs() {
    for n in 1..=4 {
        for shape in graphs_up_to_iso(n) {
            for mut code in 0..WIDE.pow(n as u32) {
                let groups: Vec<VertexGroup> = (0..n)
                    .map(|i| {
                        let c = code % WIDE;
                        code /= WIDE;
                        wide_palette(i, c)
                    })
                    .collect();
                let g = shape.build(groups.clone());
                let ends = match ends_of(&g).unwrap().class {
                    EndsClass::Zero => "zero",
                    EndsClass::One => "one",
                    EndsClass::MoreThanOne => "more",
                    EndsClass::Unknown => "unknown",
                };
                assert_eq!(ends, reference_ends(&shape, &groups), "{shape:?} {groups:?}");
                let ss = semistability_of(&g).unwrap();
                assert_eq!(ss.status, reference_semistability(&shape, &groups), "{shape:?} {groups:?}");
                assert_eq!(ss.witness.is_some(), ss.status == SemistabilityStatus::NotSemistable);
                if let Some(w) = ss.witness {
                    assert_eq!(groups[w].semistable, Truth::No);
                }
            }
        }
    }
}

#[test]
fn disconnected_graphs_combine_componentwise() {
    for n in 2..=5 {
        for shape in graphs_up_to_iso(n) {
            let m = shape.matrix();
            if component_count(&m, &vec![true; n]) < 2 {
                continue;
            }
            for a in assignments(n) {
                let g = annotated(&shape, &a);
                let v = semistability_of(&g).unwrap();
                assert!(v.componentwise);
                let expected = if has_bad_vertex(&shape, &a) {
                    SemistabilityStatus::NotSemistable
                } else {
                    SemistabilityStatus::Semistable
                };
                assert_eq!(v.status, expected, "{shape:?} {a:?}");
                assert_eq!(ends_of(&g).unwrap().class, EndsClass::MoreThanOne);
            }
        }
    }
}

#[test]
fn enumeration_counts_isomorphism_classes() {
    let all: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
    let connected: Vec<usize> = (1..=6).map(|n| connected_graphs_up_to_iso(n).len()).collect();
    assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
}

#[test]
fn catalog_expectations_match_classifier() {
    for e in catalog() {
        let class = match ends_of(&e.graph).unwrap().class {
            EndsClass::Zero => "zero",
            EndsClass::One => "one",
            EndsClass::MoreThanOne => "more",
            EndsClass::Unknown => "unknown",
        };
        assert_eq!(class, e.expected, "{}", e.name);
    }
}
