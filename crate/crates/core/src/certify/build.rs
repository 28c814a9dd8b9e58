use std::cell::RefCell;
use std::collections::HashMap;

use crate::classify::{SemistabilityStatus, Session};
use crate::graph::{components, spans_finite_subgroup, ProductGraph, Truth, VertexSet};

use super::check::check_node;
use super::{Certificate, CertifyError, Rule, Verdict};

/// Builds a certificate for the whole graph.
pub fn build_certificate(g: &ProductGraph) -> Result<Certificate, CertifyError> {
    build_certificate_for(&Session::new(g), g.all())
}

/// Builds a certificate for the full subgraph on `subject`. Every emitted
/// node has passed the checker's local side conditions.
pub fn build_certificate_for(s: &Session<'_>, subject: VertexSet) -> Result<Certificate, CertifyError> {
    s.graph().check_set(subject).map_err(|e| CertifyError::Malformed(e.to_string()))?;
    if subject.is_empty() {
        return Err(CertifyError::EmptySubject);
    }
    Builder { s, memo: RefCell::new(HashMap::new()) }.cert(subject)
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Leaf,
    Components,
    /// The subject is the star of this vertex.
    Star(usize),
    /// Split along the link of one vertex: `(S - v) *_{lk v} st(v)`.
    VertexSplit(usize),
    /// Grow a connected set `W` of infinite vertices from this start, fold
    /// the stars of `W` together and split along their boundary.
    GreedyUnion(usize),
}

struct Builder<'s, 'g> {
    s: &'s Session<'g>,
    memo: RefCell<HashMap<VertexSet, Result<Certificate, CertifyError>>>,
}

fn boxed(c: Certificate) -> Box<Certificate> {
    Box::new(c)
}

impl Builder<'_, '_> {
    fn g(&self) -> &ProductGraph {
        self.s.graph()
    }

    fn cert(&self, x: VertexSet) -> Result<Certificate, CertifyError> {
        if let Some(r) = self.memo.borrow().get(&x) {
            return r.clone();
        }
        let r = self.compute(x);
        self.memo.borrow_mut().insert(x, r.clone());
        r
    }

    fn accept(&self, c: Certificate) -> Result<Certificate, CertifyError> {
        match check_node(self.s, &c) {
            Ok(()) => Ok(c),
            Err(_) => Err(CertifyError::SearchExhausted),
        }
    }

    fn compute(&self, x: VertexSet) -> Result<Certificate, CertifyError> {
        let verdict = self.s.semistability(x)?;
        match verdict.status {
            SemistabilityStatus::Unknown => Err(CertifyError::UnknownVerdict),
            SemistabilityStatus::NotSemistable => {
                let v = verdict.witness.expect("not semistable verdicts carry a witness");
                self.accept(self.not_semistable(x, v))
            }
            SemistabilityStatus::Semistable => {
                for m in self.moves(x) {
                    match self.apply(x, m) {
                        Ok(c) => match self.accept(c) {
                            Ok(c) => return Ok(c),
                            Err(_) => continue,
                        },
                        Err(CertifyError::Classify(e)) => return Err(CertifyError::Classify(e)),
                        Err(_) => continue,
                    }
                }
                Err(CertifyError::SearchExhausted)
            }
        }
    }

    /// A bad vertex `v`: its star is `G_v` times a finite group, and the
    /// rest of the subject attaches over that finite link.
    fn not_semistable(&self, x: VertexSet, v: usize) -> Certificate {
        let g = self.g();
        let lk = g.link_in(x, v);
        let st = lk.with(v);
        let leaf = Certificate::leaf(v, Verdict::NotSemistable);
        let core = if lk.is_empty() {
            leaf
        } else {
            Certificate {
                subject: st,
                verdict: Verdict::NotSemistable,
                rule: Rule::FiniteIndex {
                    core: VertexSet::singleton(v),
                    finite_partner: lk,
                    child: boxed(leaf),
                },
            }
        };
        if st == x {
            return core;
        }
        Certificate {
            subject: x,
            verdict: Verdict::NotSemistable,
            rule: Rule::SplitNonSS { a: st, b: x.without(v), c: lk, child_a: boxed(core) },
        }
    }

    fn moves(&self, x: VertexSet) -> Vec<Move> {
        let g = self.g();
        if x.len() == 1 {
            return vec![Move::Leaf];
        }
        if components(g, x).len() > 1 {
            return vec![Move::Components];
        }
        let stars: Vec<Move> = x.iter().filter(|&w| g.star_in(x, w) == x).map(Move::Star).collect();
        if !stars.is_empty() {
            return stars;
        }
        let splits = x.iter().map(Move::VertexSplit);
        let unsettled: Vec<usize> = x.iter().filter(|&v| g.vertex(v).semistable != Truth::Yes).collect();
        if unsettled.is_empty() {
            splits.collect()
        } else {
            unsettled.into_iter().map(Move::GreedyUnion).chain(splits).collect()
        }
    }

    fn semistable_cert(&self, x: VertexSet) -> Result<Certificate, CertifyError> {
        if self.s.semistability(x)?.status != SemistabilityStatus::Semistable {
            return Err(CertifyError::SearchExhausted);
        }
        self.cert(x)
    }

    fn apply(&self, x: VertexSet, m: Move) -> Result<Certificate, CertifyError> {
        let g = self.g();
        let semistable = |rule| Certificate { subject: x, verdict: Verdict::Semistable, rule };
        match m {
            Move::Leaf => {
                let v = x.first().expect("nonempty");
                Ok(Certificate::leaf(v, Verdict::Semistable))
            }
            Move::Components => {
                let first = components(g, x)[0];
                let rest = x.difference(first);
                Ok(semistable(Rule::AmalgamSS {
                    a: first,
                    b: rest,
                    c: VertexSet::EMPTY,
                    child_a: boxed(self.semistable_cert(first)?),
                    child_b: boxed(self.semistable_cert(rest)?),
                }))
            }
            Move::Star(w) => {
                let lk = x.without(w);
                let single = VertexSet::singleton(w);
                if spans_finite_subgroup(g, lk) == Truth::Yes {
                    Ok(semistable(Rule::FiniteIndex {
                        core: single,
                        finite_partner: lk,
                        child: boxed(Certificate::leaf(w, Verdict::Semistable)),
                    }))
                } else if !g.vertex(w).is_finite() {
                    Ok(semistable(Rule::Product { factor1: single, factor2: lk }))
                } else {
                    Ok(semistable(Rule::FiniteIndex {
                        core: lk,
                        finite_partner: single,
                        child: boxed(self.semistable_cert(lk)?),
                    }))
                }
            }
            Move::VertexSplit(v) => {
                let st = g.star_in(x, v);
                if st == x {
                    return Err(CertifyError::SearchExhausted);
                }
                let rest = x.without(v);
                Ok(semistable(Rule::AmalgamSS {
                    a: rest,
                    b: st,
                    c: st.without(v),
                    child_a: boxed(self.semistable_cert(rest)?),
                    child_b: boxed(self.semistable_cert(st)?),
                }))
            }
            Move::GreedyUnion(start) => self.greedy_union(x, start),
        }
    }

    fn greedy_union(&self, x: VertexSet, start: usize) -> Result<Certificate, CertifyError> {
        let g = self.g();
        let usable =
            |w: usize| !g.vertex(w).is_finite() && spans_finite_subgroup(g, g.link_in(x, w)) == Truth::No;
        if !usable(start) {
            return Err(CertifyError::SearchExhausted);
        }
        // Grow W until the complement has no (potentially) bad vertex.
        let mut order = vec![start];
        let mut w_set = VertexSet::singleton(start);
        loop {
            let rest = x.difference(w_set);
            if rest.is_empty() {
                break;
            }
            let b = self.s.bad_vertices(rest);
            let Some(&u) = b.definite.iter().chain(&b.potential).min() else { break };
            if !usable(u) || g.neighbors(u).is_disjoint(w_set) {
                return Err(CertifyError::SearchExhausted);
            }
            order.push(u);
            w_set.insert(u);
        }

        let star_cert = |w: usize| {
            let lk = g.link_in(x, w);
            Certificate {
                subject: lk.with(w),
                verdict: Verdict::Semistable,
                rule: Rule::Product { factor1: VertexSet::singleton(w), factor2: lk },
            }
        };
        let mut union = star_cert(order[0]);
        for &w in &order[1..] {
            let st = g.star_in(x, w);
            if st.is_subset(union.subject) {
                continue;
            }
            if union.subject.is_subset(st) {
                union = star_cert(w);
                continue;
            }
            let a = union.subject;
            union = self.accept(Certificate {
                subject: a.union(st),
                verdict: Verdict::Semistable,
                rule: Rule::UnionMM { a, b: st, child_a: boxed(union), child_b: boxed(star_cert(w)) },
            })?;
        }
        let u = union.subject;
        if u == x {
            return Ok(union);
        }
        let rest = x.difference(w_set);
        Ok(Certificate {
            subject: x,
            verdict: Verdict::Semistable,
            rule: Rule::AmalgamSS {
                a: rest,
                b: u,
                c: u.difference(w_set),
                child_a: boxed(self.semistable_cert(rest)?),
                child_b: boxed(union),
            },
        })
    }
}
