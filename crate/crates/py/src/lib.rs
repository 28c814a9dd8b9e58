//! Python module `graphprod`: parse a graph description, classify it,
//! build and check certificates, print presentations and run the ball
//! oracle. Structured results come back as plain dicts and lists.

use graphprod::certify::{
    build_certificate, certificate_from_json, certificate_to_json, check_certificate, export_certificate_dot,
};
use graphprod::classify::Session;
use graphprod::graph::{find_finite_complete_separators, ProductGraph, VertexSet};
use graphprod::oracle::{EstimateParams, Oracle, DEFAULT_BALL_CAP};
use graphprod::presentation::standard_presentation;
use graphprod::report::{self, analyze};
use graphprod::serial::{parse_input, serialize_graph};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(runtime_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A validated graph product description.
#[pyclass(name = "Graph", module = "graphprod", frozen)]
struct PyGraph {
    inner: ProductGraph,
}

impl PyGraph {
    fn subject(&self, vertices: Option<Vec<String>>) -> PyResult<VertexSet> {
        match vertices {
            None => Ok(self.inner.all()),
            Some(names) => self.inner.set_of(&names).map_err(value_err),
        }
    }
}

#[pymethods]
impl PyGraph {
    /// Parses the JSON graph format; raises ValueError with diagnostics.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_input(text.as_bytes()).map(|inner| PyGraph { inner }).map_err(value_err)
    }

    fn to_json(&self) -> String {
        serialize_graph(&self.inner)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.name.clone()).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.inner.edges().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.len(), self.inner.edges().len())
    }

    /// `"zero"`, `"one"`, `"more_than_one"` or `"unknown"`.
    #[pyo3(signature = (vertices=None))]
    fn ends(&self, vertices: Option<Vec<String>>) -> PyResult<&'static str> {
        let s = self.subject(vertices)?;
        let v = Session::new(&self.inner).ends(s).map_err(runtime_err)?;
        Ok(report::ends_class_str(v.class))
    }

    /// `"semistable"`, `"not_semistable"` or `"unknown"`.
    #[pyo3(signature = (vertices=None))]
    fn semistability(&self, vertices: Option<Vec<String>>) -> PyResult<&'static str> {
        let s = self.subject(vertices)?;
        let v = Session::new(&self.inner).semistability(s).map_err(runtime_err)?;
        Ok(report::status_str(v.status))
    }

    /// Definite bad vertices of the whole graph.
    fn bad_vertices(&self) -> Vec<String> {
        let b = graphprod::classify::bad_vertices(&self.inner);
        b.definite.iter().map(|&i| self.inner.name(i).to_string()).collect()
    }

    /// Finite complete separators, each as a sorted list of vertex names.
    fn separators(&self) -> PyResult<Vec<Vec<String>>> {
        let seps = find_finite_complete_separators(&self.inner).map_err(runtime_err)?;
        Ok(seps.iter().map(|s| self.inner.names(s.delta).into_iter().map(String::from).collect()).collect())
    }

    /// The full `report-v1` analysis as a dict.
    #[pyo3(signature = (vertices=None))]
    fn analyze<'py>(&self, py: Python<'py>, vertices: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
        let s = self.subject(vertices)?;
        let a = analyze(&Session::new(&self.inner), s).map_err(runtime_err)?;
        to_py(py, &a.to_value(&self.inner))
    }

    /// A `cert-v1` certificate, as JSON text.
    fn certificate(&self) -> PyResult<String> {
        build_certificate(&self.inner).map(|c| certificate_to_json(&self.inner, &c)).map_err(runtime_err)
    }

    fn certificate_dot(&self) -> PyResult<String> {
        build_certificate(&self.inner).map(|c| export_certificate_dot(&self.inner, &c)).map_err(runtime_err)
    }

    /// Checks a `cert-v1` document; returns `(accepted, reason)`.
    fn check_certificate(&self, text: &str) -> PyResult<(bool, Option<String>)> {
        let c = certificate_from_json(&self.inner, text).map_err(value_err)?;
        let r = check_certificate(&self.inner, &c).map_err(value_err)?;
        let reason = r.violation.map(|v| format!("{} {}: {}", v.rule, v.condition, v.explanation));
        Ok((r.accepted, reason))
    }

    /// Standard presentation in the line-oriented text format.
    fn presentation(&self) -> PyResult<String> {
        standard_presentation(&self.inner).map(|p| p.to_text()).map_err(runtime_err)
    }

    /// Number of elements at each distance up to `radius`.
    #[pyo3(signature = (radius, cap=DEFAULT_BALL_CAP))]
    fn sphere_sizes(&self, radius: usize, cap: usize) -> PyResult<Vec<usize>> {
        let o = Oracle::new(&self.inner).map_err(value_err)?;
        Ok(o.cayley_ball(radius, cap).map_err(runtime_err)?.sphere_sizes())
    }

    /// Ends estimate from Cayley graph balls, as a dict.
    #[pyo3(signature = (inner=4, outer=12, stability=3, cap=DEFAULT_BALL_CAP))]
    fn oracle_ends<'py>(
        &self,
        py: Python<'py>,
        inner: usize,
        outer: usize,
        stability: usize,
        cap: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let params = EstimateParams { inner, outer, stability, cap };
        let o = Oracle::new(&self.inner).map_err(value_err)?;
        let r = o.estimate_ends(&params).map_err(runtime_err)?;
        to_py(py, &report::oracle_ends_json(&r, &params))
    }
}

#[pymodule(name = "graphprod")]
fn graphprod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("REPORT_FORMAT", report::REPORT_FORMAT)?;
    m.add("CERT_FORMAT", graphprod::certify::CERT_FORMAT)?;
    Ok(())
}
