//! Python bindings: graphs, destruction forests, term/order conversion,
//! skeleton collapse, and the verification harness.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sforest::graph::{destruction_film, t_forests};
use sforest::relation::Relation;
use sforest::sterm::{parse_sterm, render_sterm, sterm_of_ftp};
use sforest::var::VarName;
use sforest::{collapse, linear_extensions, run_all, ExportFormat, VerifyConfig};

/// A residual graph as (vertices, edges); a frame holds the parallel
/// residual graphs after one global removal step.
type PyFrame = Vec<(Vec<String>, Vec<(String, String)>)>;

/// A relation as (domain, pairs).
type PyRelation = (Vec<String>, Vec<(String, String)>);

/// A skeleton as (sorted vertex labels, index edges).
type PySkeleton = (Vec<String>, Vec<(usize, usize)>);

fn value_err(e: sforest::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn var(name: &str) -> PyResult<VarName> {
    VarName::new(name).map_err(value_err)
}

fn relation(domain: Vec<String>, pairs: Vec<(String, String)>) -> PyResult<Relation> {
    let domain = domain.iter().map(|s| var(s)).collect::<PyResult<Vec<_>>>()?;
    let pairs = pairs
        .iter()
        .map(|(a, b)| Ok((var(a)?, var(b)?)))
        .collect::<PyResult<Vec<_>>>()?;
    Relation::new(domain, pairs).map_err(value_err)
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: sforest::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let vertices = vertices.iter().map(|s| var(s)).collect::<PyResult<Vec<_>>>()?;
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((var(a)?, var(b)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyGraph { inner: sforest::Graph::new(vertices, edges).map_err(value_err)? })
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.to_string()).collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner.edges().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    /// Rendered destruction forests, sorted.
    fn forests(&self) -> Vec<String> {
        let mut out: Vec<String> =
            t_forests(&self.inner).forests.iter().map(render_sterm).collect();
        out.sort();
        out
    }

    /// Collapsed skeleton: sorted vertex labels and index edges.
    fn collapse(&self) -> PyResult<PySkeleton> {
        let skeleton = collapse(&self.inner).map_err(value_err)?;
        let labels = skeleton.vertices().iter().map(render_sterm).collect();
        let edges = skeleton.edges().iter().cloned().collect();
        Ok((labels, edges))
    }

    /// Collapsed skeleton in DOT or JSON text form.
    fn export_collapse(&self, format: &str) -> PyResult<String> {
        let format = match format {
            "dot" => ExportFormat::Dot,
            "json" => ExportFormat::Json,
            other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        };
        Ok(collapse(&self.inner).map_err(value_err)?.export(format))
    }

    /// Frames of the destruction film of one forest, each a list of
    /// (vertices, edges) residual graphs.
    fn film(&self, term: &str) -> PyResult<Vec<PyFrame>> {
        let t = parse_sterm(term).map_err(value_err)?;
        let frames = destruction_film(&self.inner, &t).map_err(value_err)?;
        Ok(frames
            .iter()
            .map(|frame| {
                frame
                    .graphs
                    .iter()
                    .map(|g| {
                        let vs = g.vertices().iter().map(|v| v.to_string()).collect();
                        let es = g
                            .edges()
                            .iter()
                            .map(|(a, b)| (a.to_string(), b.to_string()))
                            .collect();
                        (vs, es)
                    })
                    .collect()
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={:?}, edges={:?})", self.vertices(), self.edges())
    }
}

/// Canonical form of a term.
#[pyfunction]
fn canonical(term: &str) -> PyResult<String> {
    Ok(render_sterm(&parse_sterm(term).map_err(value_err)?))
}

/// The strict order of a diversified term, as (domain, pairs).
#[pyfunction]
fn kappa(term: &str) -> PyResult<PyRelation> {
    let t = parse_sterm(term).map_err(value_err)?;
    let r = t.kappa().map_err(value_err)?;
    let domain = r.domain().iter().map(|v| v.to_string()).collect();
    let pairs = r.pairs().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    Ok((domain, pairs))
}

/// The unique term of a trifunctional partial order.
#[pyfunction]
fn sterm_of(domain: Vec<String>, pairs: Vec<(String, String)>) -> PyResult<String> {
    let r = relation(domain, pairs)?;
    Ok(render_sterm(&sterm_of_ftp(&r).map_err(value_err)?))
}

/// All linear extensions of a partial order, as vertex sequences.
#[pyfunction]
fn extensions(
    domain: Vec<String>,
    pairs: Vec<(String, String)>,
) -> PyResult<Vec<Vec<String>>> {
    let r = relation(domain, pairs)?;
    Ok(linear_extensions(&r)
        .map_err(value_err)?
        .iter()
        .map(|p| p.sequence().iter().map(|v| v.to_string()).collect())
        .collect())
}

/// Runs the verification harness; returns (check id, passed) pairs.
#[pyfunction]
#[pyo3(signature = (max_n = 3, random_count = 0, seed = 0))]
fn verify(max_n: usize, random_count: usize, seed: u64) -> Vec<(String, bool)> {
    run_all(&VerifyConfig { max_n, random_count, seed })
        .into_iter()
        .map(|r| (r.proposition.clone(), r.is_pass()))
        .collect()
}

#[pymodule]
fn sforest_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(sterm_of, m)?)?;
    m.add_function(wrap_pyfunction!(extensions, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
