use crate::classify::Session;
use crate::graph::{spans_finite_subgroup, ProductGraph, Truth, VertexSet};

use super::{Certificate, CertifyError, Rule, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckViolation {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub condition: &'static str,
    pub explanation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub accepted: bool,
    pub violation: Option<CheckViolation>,
}

pub fn check_certificate(g: &ProductGraph, c: &Certificate) -> Result<CheckReport, CertifyError> {
    check_with_session(&Session::new(g), c)
}

/// Verifies every node's side conditions. Malformed references (vertex
/// indices outside the graph) are an error, not a rejection.
pub fn check_with_session(s: &Session<'_>, c: &Certificate) -> Result<CheckReport, CertifyError> {
    well_formed(s.graph(), c)?;
    let mut path = Vec::new();
    let violation = walk(s, c, &mut path);
    Ok(CheckReport { accepted: violation.is_none(), violation })
}

fn well_formed(g: &ProductGraph, c: &Certificate) -> Result<(), CertifyError> {
    let all = g.all();
    let mut sets = vec![c.subject];
    let mut c2 = c.clone();
    sets.extend(c2.params_mut().into_iter().map(|s| *s));
    if let Some(bad) = sets.into_iter().find(|s| !s.is_subset(all)) {
        return Err(CertifyError::Malformed(format!("vertex set {bad:?} outside the graph")));
    }
    if let Rule::LeafVertex { vertex } = c.rule {
        if vertex >= g.len() {
            return Err(CertifyError::Malformed(format!("leaf vertex {vertex} outside the graph")));
        }
    }
    c.children().into_iter().try_for_each(|ch| well_formed(g, ch))
}

fn walk(s: &Session<'_>, c: &Certificate, path: &mut Vec<usize>) -> Option<CheckViolation> {
    if let Err((condition, explanation)) = check_node(s, c) {
        return Some(CheckViolation { path: path.clone(), rule: c.rule.name(), condition, explanation });
    }
    for (i, ch) in c.children().into_iter().enumerate() {
        path.push(i);
        if let Some(v) = walk(s, ch, path) {
            return Some(v);
        }
        path.pop();
    }
    None
}

type Failure = (&'static str, String);

fn require(ok: bool, condition: &'static str, explain: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err((condition, explain()))
    }
}

/// Side conditions of a single node, using only its children's subjects and
/// verdicts. The subject's own semistability is never looked up.
pub(super) fn check_node(s: &Session<'_>, c: &Certificate) -> Result<(), Failure> {
    let g = s.graph();
    let names = |x: VertexSet| format!("{{{}}}", g.names(x).join(", "));
    let subject = c.subject;
    require(!subject.is_empty(), "nonempty_subject", || "subject is empty".into())?;
    require(subject.iter().all(|v| g.vertex(v).finitely_presented), "finitely_presented", || {
        format!("{} has a vertex group that is not finitely presented", names(subject))
    })?;
    let verdict_is = |want: Verdict| {
        require(c.verdict == want, "verdict", || {
            format!("rule concludes {}, node claims {}", want.as_str(), c.verdict.as_str())
        })
    };
    let child_on = |child: &Certificate, set: VertexSet, which: &'static str| {
        require(child.subject == set, "child_subject", || {
            format!("{which} child certifies {} instead of {}", names(child.subject), names(set))
        })
    };
    let joined = |x: VertexSet, y: VertexSet| x.iter().all(|v| y.is_subset(g.neighbors(v)));
    let visual_split = |a: VertexSet, b: VertexSet, cc: VertexSet| -> Result<(), Failure> {
        require(a.intersection(b) == cc, "c_is_intersection", || {
            format!("{} is not the intersection of {} and {}", names(cc), names(a), names(b))
        })?;
        require(a.union(b) == subject, "covers_subject", || {
            format!("{} and {} do not cover {}", names(a), names(b), names(subject))
        })?;
        let (ra, rb) = (a.difference(cc), b.difference(cc));
        require(ra.iter().all(|v| g.neighbors(v).is_disjoint(rb)), "visual_splitting", || {
            format!("an edge joins {} to {}", names(ra), names(rb))
        })
    };

    match &c.rule {
        Rule::LeafVertex { vertex } => {
            require(subject == VertexSet::singleton(*vertex), "subject_is_vertex", || {
                format!("subject {} is not {{{}}}", names(subject), g.name(*vertex))
            })?;
            let expected = match g.vertex(*vertex).semistable {
                Truth::Yes => Verdict::Semistable,
                Truth::No => Verdict::NotSemistable,
                Truth::Unknown => {
                    return Err((
                        "annotation_known",
                        format!("vertex '{}' has unknown semistability", g.name(*vertex)),
                    ))
                }
            };
            require(c.verdict == expected, "verdict_matches_annotation", || {
                format!("annotation says {}, node claims {}", expected.as_str(), c.verdict.as_str())
            })
        }
        Rule::Product { factor1, factor2 } => {
            verdict_is(Verdict::Semistable)?;
            let (f1, f2) = (*factor1, *factor2);
            require(
                !f1.is_empty() && !f2.is_empty() && f1.is_disjoint(f2) && f1.union(f2) == subject,
                "disjoint_union",
                || format!("{} and {} do not partition {}", names(f1), names(f2), names(subject)),
            )?;
            require(joined(f1, f2), "factors_commute", || {
                format!("some vertex of {} is not adjacent to all of {}", names(f1), names(f2))
            })?;
            require(
                spans_finite_subgroup(g, f1) == Truth::No && spans_finite_subgroup(g, f2) == Truth::No,
                "factors_infinite",
                || format!("{} or {} spans a finite subgroup", names(f1), names(f2)),
            )
        }
        Rule::FiniteIndex { core, finite_partner, child } => {
            let (k, f) = (*core, *finite_partner);
            require(k.is_disjoint(f) && k.union(f) == subject, "disjoint_union", || {
                format!("{} and {} do not partition {}", names(k), names(f), names(subject))
            })?;
            require(joined(k, f), "factors_commute", || {
                format!("some vertex of {} is not adjacent to all of {}", names(k), names(f))
            })?;
            require(spans_finite_subgroup(g, f) == Truth::Yes, "partner_finite", || {
                format!("{} does not span a finite subgroup", names(f))
            })?;
            child_on(child, k, "core")?;
            require(child.verdict == c.verdict, "verdict_transfers", || {
                format!("core is {}, node claims {}", child.verdict.as_str(), c.verdict.as_str())
            })
        }
        Rule::AmalgamSS { a, b, c: cc, child_a, child_b } => {
            verdict_is(Verdict::Semistable)?;
            visual_split(*a, *b, *cc)?;
            child_on(child_a, *a, "first")?;
            child_on(child_b, *b, "second")?;
            require(
                child_a.verdict == Verdict::Semistable && child_b.verdict == Verdict::Semistable,
                "children_semistable",
                || "both factors must be certified semistable".into(),
            )
        }
        Rule::UnionMM { a, b, child_a, child_b } => {
            verdict_is(Verdict::Semistable)?;
            let (a, b) = (*a, *b);
            require(a.union(b) == subject, "covers_subject", || {
                format!("{} and {} do not cover {}", names(a), names(b), names(subject))
            })?;
            require(a != subject && b != subject, "proper_parts", || {
                "each part must be a proper full subgraph of the subject".into()
            })?;
            child_on(child_a, a, "first")?;
            child_on(child_b, b, "second")?;
            for part in [a, b] {
                let t =
                    s.one_ended_and_semistable(part).map_err(|e| ("one_ended_semistable", e.to_string()))?;
                require(t == Truth::Yes, "one_ended_semistable", || {
                    format!("{} is not known to be 1-ended and semistable", names(part))
                })?;
            }
            require(
                spans_finite_subgroup(g, a.intersection(b)) == Truth::No,
                "infinite_intersection",
                || format!("{} spans a finite subgroup", names(a.intersection(b))),
            )?;
            require(
                child_a.verdict == Verdict::Semistable && child_b.verdict == Verdict::Semistable,
                "children_semistable",
                || "both parts must be certified semistable".into(),
            )
        }
        Rule::SplitNonSS { a, b, c: cc, child_a } => {
            verdict_is(Verdict::NotSemistable)?;
            visual_split(*a, *b, *cc)?;
            require(spans_finite_subgroup(g, *cc) == Truth::Yes, "finite_amalgamated", || {
                format!("{} does not span a finite subgroup", names(*cc))
            })?;
            child_on(child_a, *a, "first")?;
            require(child_a.verdict == Verdict::NotSemistable, "factor_not_semistable", || {
                "the first factor must be certified not semistable".into()
            })
        }
    }
}
