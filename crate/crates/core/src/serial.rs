//! The JSON graph description format.
//!
//! ```json
//! {"vertices": [{"name": "a", "order": 2},
//!               {"name": "z", "order": "infinite", "ends": "one",
//!                "semistable": "no", "fp": true}],
//!  "edges": [["a", "z"]]}
//! ```
//!
//! Optional per-vertex fields: `presentation` (`{"generators": [..],
//! "relators": ["x^2", ..]}`) and `table` (`{"elements": [..], "mul":
//! [[..], ..]}`, element 0 the identity). Omitted `ends`/`semistable` default
//! to `zero`/`yes` for finite groups and `unknown` otherwise; omitted `fp`
//! defaults to `true`. `order` may be omitted when a table is given.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{validate_graph, Ends, Order, ProductGraph, Truth, VertexGroup, Violation};
use crate::oracle::FiniteGroupTable;
use crate::presentation::{format_word, parse_word, LocalPresentation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("schema error at line {line}, column {column}: {msg}")]
    Schema { line: usize, column: usize, msg: String },
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
    #[error("invariant violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexFile>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<OrderField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ends: Option<EndsField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    semistable: Option<TruthField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fp: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<PresentationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<TableFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderField {
    Finite(u64),
    Word(String),
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum EndsField {
    Zero,
    One,
    Two,
    Many,
    Unknown,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum TruthField {
    Yes,
    No,
    Unknown,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
}

impl From<EndsField> for Ends {
    fn from(e: EndsField) -> Self {
        match e {
            EndsField::Zero => Ends::Zero,
            EndsField::One => Ends::One,
            EndsField::Two => Ends::Two,
            EndsField::Many => Ends::Many,
            EndsField::Unknown => Ends::Unknown,
        }
    }
}

impl From<Ends> for EndsField {
    fn from(e: Ends) -> Self {
        match e {
            Ends::Zero => EndsField::Zero,
            Ends::One => EndsField::One,
            Ends::Two => EndsField::Two,
            Ends::Many => EndsField::Many,
            Ends::Unknown => EndsField::Unknown,
        }
    }
}

impl From<TruthField> for Truth {
    fn from(t: TruthField) -> Self {
        match t {
            TruthField::Yes => Truth::Yes,
            TruthField::No => Truth::No,
            TruthField::Unknown => Truth::Unknown,
        }
    }
}

impl From<Truth> for TruthField {
    fn from(t: Truth) -> Self {
        match t {
            Truth::Yes => TruthField::Yes,
            Truth::No => TruthField::No,
            Truth::Unknown => TruthField::Unknown,
        }
    }
}

fn vertex_from_file(i: usize, v: VertexFile) -> Result<VertexGroup, InputError> {
    let path = |field: &str| format!("vertices[{i}] ('{}').{field}", v.name);
    let table = match &v.table {
        Some(t) => Some(
            FiniteGroupTable::new(t.elements.clone(), t.mul.clone())
                .map_err(|e| InputError::Field { path: path("table"), msg: e.to_string() })?,
        ),
        None => None,
    };
    let order = match (&v.order, &table) {
        (Some(OrderField::Finite(n)), _) => Order::Finite(*n),
        (Some(OrderField::Word(w)), _) if w == "infinite" => Order::Infinite,
        (Some(OrderField::Word(w)), _) => {
            return Err(InputError::Field {
                path: path("order"),
                msg: format!("expected a positive integer or \"infinite\", got \"{w}\""),
            })
        }
        (None, Some(t)) => Order::Finite(t.order() as u64),
        (None, None) => return Err(InputError::Field { path: path("order"), msg: "missing field".into() }),
    };
    let presentation = match &v.presentation {
        Some(p) => {
            let relators = p
                .relators
                .iter()
                .map(|r| parse_word(r))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|msg| InputError::Field { path: path("presentation"), msg })?;
            Some(LocalPresentation { generators: p.generators.clone(), relators })
        }
        None => None,
    };
    let finite = order.is_finite();
    let ends = v.ends.map(Ends::from).unwrap_or(if finite { Ends::Zero } else { Ends::Unknown });
    let semistable =
        v.semistable.map(Truth::from).unwrap_or(if finite { Truth::Yes } else { Truth::Unknown });
    Ok(VertexGroup {
        name: v.name,
        order,
        ends,
        semistable,
        finitely_presented: v.fp.unwrap_or(true),
        presentation,
        table,
    })
}

/// Parses and validates a graph description.
pub fn parse_input(bytes: &[u8]) -> Result<ProductGraph, InputError> {
    let file: GraphFile = serde_json::from_slice(bytes).map_err(|e| {
        let (line, column, msg) = (e.line(), e.column(), e.to_string());
        if e.is_data() {
            InputError::Schema { line, column, msg }
        } else {
            InputError::Json { line, column, msg }
        }
    })?;
    let vertices = file
        .vertices
        .into_iter()
        .enumerate()
        .map(|(i, v)| vertex_from_file(i, v))
        .collect::<Result<Vec<_>, _>>()?;
    let g = ProductGraph::unchecked(vertices, file.edges);
    let violations = validate_graph(&g);
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(InputError::Invalid(violations))
    }
}

/// Writes every field explicitly, so `parse_input(serialize_graph(g)) == g`.
pub fn serialize_graph(g: &ProductGraph) -> String {
    let vertices = g
        .vertices()
        .iter()
        .map(|v| VertexFile {
            name: v.name.clone(),
            order: Some(match v.order {
                Order::Finite(n) => OrderField::Finite(n),
                Order::Infinite => OrderField::Word("infinite".into()),
            }),
            ends: Some(v.ends.into()),
            semistable: Some(v.semistable.into()),
            fp: Some(v.finitely_presented),
            presentation: v.presentation.as_ref().map(|p| PresentationFile {
                generators: p.generators.clone(),
                relators: p.relators.iter().map(|r| format_word(r)).collect(),
            }),
            table: v
                .table
                .as_ref()
                .map(|t| TableFile { elements: t.elements().to_vec(), mul: t.rows().to_vec() }),
        })
        .collect();
    let file = GraphFile { vertices, edges: g.edges().to_vec() };
    serde_json::to_string_pretty(&file).expect("graph serializes")
}
