//! JSON renderings of analysis results (`report-v1`).
//!
//! Vertex sets are written as arrays of vertex names in graph order. Maps
//! are emitted with sorted keys, so identical inputs give identical bytes.

use serde_json::{json, Value};

use crate::certify::{build_certificate_for, certificate_to_value, Certificate, CertifyError};
use crate::classify::{
    ClassifyError, EndsClass, EndsVerdict, EndsWitness, SemistabilityStatus, SemistabilityVerdict, Session,
};
use crate::graph::{ProductGraph, Separator, VertexSet};
use crate::oracle::{EndsEstimate, EndsReport, EstimateParams};

pub const REPORT_FORMAT: &str = "report-v1";

pub fn set_json(g: &ProductGraph, s: VertexSet) -> Value {
    json!(g.names(s))
}

pub fn ends_class_str(c: EndsClass) -> &'static str {
    match c {
        EndsClass::Zero => "zero",
        EndsClass::One => "one",
        EndsClass::MoreThanOne => "more_than_one",
        EndsClass::Unknown => "unknown",
    }
}

pub fn status_str(s: SemistabilityStatus) -> &'static str {
    match s {
        SemistabilityStatus::Semistable => "semistable",
        SemistabilityStatus::NotSemistable => "not_semistable",
        SemistabilityStatus::Unknown => "unknown",
    }
}

pub fn separator_json(g: &ProductGraph, sep: &Separator) -> Value {
    json!({
        "delta": set_json(g, sep.delta),
        "parts": sep.parts.iter().map(|p| set_json(g, *p)).collect::<Vec<_>>(),
        "minimal": sep.minimal,
    })
}

pub fn separators_json(g: &ProductGraph, seps: &[Separator]) -> Value {
    json!({ "separators": seps.iter().map(|s| separator_json(g, s)).collect::<Vec<_>>() })
}

pub fn ends_json(g: &ProductGraph, v: &EndsVerdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(EndsWitness::Separator(sep)) => {
            let mut w = separator_json(g, sep);
            w["kind"] = json!("separator");
            w
        }
        Some(EndsWitness::CompleteGraphVertex(i)) => {
            json!({ "kind": "complete_graph_vertex", "vertex": g.name(*i) })
        }
    };
    json!({
        "verdict": ends_class_str(v.class),
        "witness": witness,
        "trivial_group": v.trivial_group,
    })
}

pub fn semistability_json(g: &ProductGraph, v: &SemistabilityVerdict) -> Value {
    let names = |vs: &[usize]| vs.iter().map(|&i| g.name(i).to_string()).collect::<Vec<_>>();
    json!({
        "verdict": status_str(v.status),
        "witness": v.witness.map(|i| g.name(i).to_string()),
        "bad_vertices": names(&v.bad),
        "potential_bad_vertices": names(&v.potential),
        "componentwise_extension": v.componentwise,
    })
}

pub fn oracle_ends_json(report: &EndsReport, params: &EstimateParams) -> Value {
    let (estimate, order) = match report.estimate {
        EndsEstimate::Zero { order } => ("zero", Some(order)),
        EndsEstimate::One => ("one", None),
        EndsEstimate::Two => ("two", None),
        EndsEstimate::Many => ("many", None),
        EndsEstimate::Inconclusive => ("inconclusive", None),
    };
    json!({
        "estimate": estimate,
        "order": order,
        "counts": report.counts.iter().map(|&(r, c)| json!({ "radius": r, "components": c })).collect::<Vec<_>>(),
        "params": {
            "inner": params.inner,
            "outer": params.outer,
            "stability": params.stability,
            "cap": params.cap,
        },
    })
}

/// Everything `analyze` reports about one subject.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub subject: VertexSet,
    pub ends: EndsVerdict,
    pub semistability: SemistabilityVerdict,
    pub certificate: Result<Certificate, CertifyError>,
}

impl Analysis {
    pub fn is_definite(&self) -> bool {
        self.ends.class != EndsClass::Unknown && self.semistability.status != SemistabilityStatus::Unknown
    }

    pub fn to_value(&self, g: &ProductGraph) -> Value {
        let mut notes = Vec::new();
        if self.ends.trivial_group {
            notes.push("empty graph: the group is trivial and reported as zero-ended".to_string());
        }
        if self.semistability.componentwise {
            notes.push("disconnected graph: verdict combined over connected components".to_string());
        }
        let certificate = match &self.certificate {
            Ok(c) => certificate_to_value(g, c),
            Err(e) => {
                notes.push(format!("no certificate: {e}"));
                Value::Null
            }
        };
        envelope(
            "analyze",
            g,
            self.subject,
            vec![
                ("ends", ends_json(g, &self.ends)),
                ("semistability", semistability_json(g, &self.semistability)),
                ("certificate", certificate),
                ("notes", json!(notes)),
            ],
        )
    }
}

pub fn analyze(session: &Session<'_>, subject: VertexSet) -> Result<Analysis, ClassifyError> {
    let ends = session.ends(subject)?;
    let semistability = session.semistability(subject)?;
    let certificate = build_certificate_for(session, subject);
    if let Err(CertifyError::Classify(e)) = certificate {
        return Err(e);
    }
    Ok(Analysis { subject, ends, semistability, certificate })
}

/// A `report-v1` object: format tag, command name and subject, then `fields`.
pub fn envelope(command: &str, g: &ProductGraph, subject: VertexSet, fields: Vec<(&str, Value)>) -> Value {
    let mut v = json!({
        "format": REPORT_FORMAT,
        "command": command,
        "subject": set_json(g, subject),
    });
    for (k, x) in fields {
        v[k] = x;
    }
    v
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}
