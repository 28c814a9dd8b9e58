//! `cert-v1` JSON encoding. Vertex sets are written as arrays of vertex
//! names in graph order.

use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, ProductGraph, VertexSet};

use super::{Certificate, CertifyError, Rule, Verdict};

pub const CERT_FORMAT: &str = "cert-v1";

#[derive(Serialize, Deserialize)]
struct CertFile {
    format: String,
    root: Node,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Node {
    rule: String,
    subject: Vec<String>,
    verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factor1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factor2: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    core: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    finite_partner: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<Vec<String>>,
    children: Vec<Node>,
}

fn names(g: &ProductGraph, s: VertexSet) -> Vec<String> {
    g.names(s).into_iter().map(String::from).collect()
}

fn encode(g: &ProductGraph, c: &Certificate) -> Node {
    let set = |s: VertexSet| Some(names(g, s));
    let mut n = Node {
        rule: c.rule.name().to_string(),
        subject: names(g, c.subject),
        verdict: c.verdict.as_str().to_string(),
        vertex: None,
        factor1: None,
        factor2: None,
        core: None,
        finite_partner: None,
        a: None,
        b: None,
        c: None,
        children: c.children().into_iter().map(|ch| encode(g, ch)).collect(),
    };
    match &c.rule {
        Rule::LeafVertex { vertex } => n.vertex = Some(g.name(*vertex).to_string()),
        Rule::Product { factor1, factor2 } => {
            n.factor1 = set(*factor1);
            n.factor2 = set(*factor2);
        }
        Rule::FiniteIndex { core, finite_partner, .. } => {
            n.core = set(*core);
            n.finite_partner = set(*finite_partner);
        }
        Rule::AmalgamSS { a, b, c: cc, .. } | Rule::SplitNonSS { a, b, c: cc, .. } => {
            n.a = set(*a);
            n.b = set(*b);
            n.c = set(*cc);
        }
        Rule::UnionMM { a, b, .. } => {
            n.a = set(*a);
            n.b = set(*b);
        }
    }
    n
}

pub fn certificate_to_value(g: &ProductGraph, c: &Certificate) -> serde_json::Value {
    serde_json::to_value(CertFile { format: CERT_FORMAT.into(), root: encode(g, c) })
        .expect("certificate serializes")
}

pub fn certificate_to_json(g: &ProductGraph, c: &Certificate) -> String {
    serde_json::to_string_pretty(&certificate_to_value(g, c)).expect("certificate serializes")
}

fn malformed(msg: impl Into<String>) -> CertifyError {
    CertifyError::Malformed(msg.into())
}

fn decode(g: &ProductGraph, n: Node) -> Result<Certificate, CertifyError> {
    let set = |field: &str, v: &Option<Vec<String>>| -> Result<VertexSet, CertifyError> {
        let v = v.as_ref().ok_or_else(|| malformed(format!("{} node lacks '{field}'", n.rule)))?;
        g.set_of(v).map_err(|e: GraphError| malformed(e.to_string()))
    };
    let subject = g.set_of(&n.subject).map_err(|e| malformed(e.to_string()))?;
    let verdict = match n.verdict.as_str() {
        "semistable" => Verdict::Semistable,
        "not_semistable" => Verdict::NotSemistable,
        other => return Err(malformed(format!("unknown verdict '{other}'"))),
    };
    let arity = match n.rule.as_str() {
        "LeafVertex" | "Product" => 0,
        "FiniteIndex" | "SplitNonSS" => 1,
        "AmalgamSS" | "UnionMM" => 2,
        other => return Err(malformed(format!("unknown rule '{other}'"))),
    };
    if n.children.len() != arity {
        return Err(malformed(format!(
            "{} node has {} children, expected {arity}",
            n.rule,
            n.children.len()
        )));
    }
    let rule = match n.rule.as_str() {
        "LeafVertex" => {
            let name = n.vertex.as_ref().ok_or_else(|| malformed("LeafVertex node lacks 'vertex'"))?;
            let vertex = g.index_of(name).ok_or_else(|| malformed(format!("unknown vertex '{name}'")))?;
            Rule::LeafVertex { vertex }
        }
        "Product" => {
            Rule::Product { factor1: set("factor1", &n.factor1)?, factor2: set("factor2", &n.factor2)? }
        }
        _ => {
            let (core, finite_partner) = if n.rule == "FiniteIndex" {
                (set("core", &n.core)?, set("finite_partner", &n.finite_partner)?)
            } else {
                (VertexSet::EMPTY, VertexSet::EMPTY)
            };
            let (a, b) = if n.rule == "FiniteIndex" {
                (VertexSet::EMPTY, VertexSet::EMPTY)
            } else {
                (set("a", &n.a)?, set("b", &n.b)?)
            };
            let c = if matches!(n.rule.as_str(), "AmalgamSS" | "SplitNonSS") {
                set("c", &n.c)?
            } else {
                VertexSet::EMPTY
            };
            let rule_name = n.rule.clone();
            let mut kids = n.children.into_iter().map(|ch| decode(g, ch).map(Box::new));
            let mut next = || kids.next().expect("arity checked");
            match rule_name.as_str() {
                "FiniteIndex" => Rule::FiniteIndex { core, finite_partner, child: next()? },
                "AmalgamSS" => Rule::AmalgamSS { a, b, c, child_a: next()?, child_b: next()? },
                "UnionMM" => Rule::UnionMM { a, b, child_a: next()?, child_b: next()? },
                _ => Rule::SplitNonSS { a, b, c, child_a: next()? },
            }
        }
    };
    Ok(Certificate { subject, verdict, rule })
}

/// Parses a `cert-v1` document against `g`.
pub fn certificate_from_json(g: &ProductGraph, text: &str) -> Result<Certificate, CertifyError> {
    let file: CertFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    if file.format != CERT_FORMAT {
        return Err(malformed(format!("unsupported format '{}'", file.format)));
    }
    decode(g, file.root)
}
