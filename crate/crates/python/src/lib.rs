//! Python bindings: a `Diagram` class over Gauss codes plus module-level
//! search and enumeration helpers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::BTreeMap;

use freelinks::{
    bounded_equiv, bracket_full, bracket_knot, bracket_rel, covering_k2, enumerate_knots as
    enumerate_knots_rs, kprime_from_k2, projection_kprime, turaev_delta, CanonMode, DeltaMode,
    DeltaOptions, EquivVerdict, Error, LinkDiagram, SearchBudget,
};

fn domain(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

/// A free-link diagram held as a multi-component Gauss code.
#[pyclass]
struct Diagram {
    inner: LinkDiagram,
}

#[pymethods]
impl Diagram {
    /// Parses the text format: components separated by `/`, `()` for a
    /// crossing-free circle.
    #[new]
    fn new(code: &str) -> PyResult<Self> {
        Ok(Diagram {
            inner: LinkDiagram::parse(code).map_err(domain)?,
        })
    }

    fn code(&self) -> String {
        self.inner.serialize()
    }

    fn components(&self) -> usize {
        self.inner.component_count()
    }

    fn crossings(&self) -> usize {
        self.inner.crossing_count()
    }

    /// Crossing label -> "pure" or "mixed".
    fn classify(&self) -> BTreeMap<String, String> {
        self.inner
            .classify()
            .into_iter()
            .map(|(k, v)| (k, v.to_string()))
            .collect()
    }

    /// Minimal serialization under relabeling, rotations, reflections and
    /// (unless `ordered`) component permutations.
    #[pyo3(signature = (ordered = false))]
    fn canonical(&self, ordered: bool) -> String {
        let mode = if ordered {
            CanonMode::Ordered
        } else {
            CanonMode::Unordered
        };
        self.inner.canonical(mode).text().to_string()
    }

    /// Gaussian parity of every pure crossing.
    fn gaussian_parities(&self) -> PyResult<BTreeMap<String, u8>> {
        Ok(freelinks::gaussian_assignment(&self.inner)
            .map_err(domain)?
            .values)
    }

    /// Parity of component `k`'s pure crossings relative to the other
    /// component of a two-component link.
    #[pyo3(signature = (k = 0))]
    fn relative_parities(&self, k: usize) -> PyResult<BTreeMap<String, u8>> {
        Ok(freelinks::pl_assignment(&self.inner, k).map_err(domain)?.values)
    }

    /// Terms of the bracket in the chosen space: "G", "G1" or "G2rel".
    #[pyo3(signature = (space = "G"))]
    fn bracket(&self, space: &str) -> PyResult<Vec<String>> {
        let value = match space {
            "G" => bracket_full(&self.inner),
            "G1" => bracket_knot(&self.inner),
            "G2rel" => bracket_rel(&self.inner),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown bracket space `{other}`"
                )))
            }
        }
        .map_err(domain)?;
        Ok(value.term_texts())
    }

    /// Terms of Turaev's cobracket; mode is "nonsplit" or
    /// "no-trivial-component".
    #[pyo3(signature = (mode = "no-trivial-component"))]
    fn turaev_delta(&self, mode: &str) -> PyResult<Vec<String>> {
        let mode = match mode {
            "nonsplit" => DeltaMode::Nonsplit,
            "no-trivial-component" => DeltaMode::NoTrivialComponent,
            other => {
                return Err(PyValueError::new_err(format!("unknown delta mode `{other}`")))
            }
        };
        let opts = DeltaOptions {
            mode,
            ..DeltaOptions::default()
        };
        Ok(turaev_delta(&self.inner, &opts).map_err(domain)?.term_texts())
    }

    /// The two-fold covering as a Gauss code.
    fn covering(&self) -> String {
        covering_k2(&self.inner).to_diagram().serialize()
    }

    /// One sheet of the covering.
    fn covering_sheet(&self) -> PyResult<String> {
        kprime_from_k2(&covering_k2(&self.inner))
            .map(|d| d.serialize())
            .map_err(domain)
    }

    /// The projection of a knot: both occurrences of every Gaussian-odd
    /// crossing removed.
    fn projection(&self) -> PyResult<String> {
        projection_kprime(&self.inner)
            .map(|d| d.serialize())
            .map_err(domain)
    }

    fn is_split(&self) -> PyResult<bool> {
        self.inner.is_split().map_err(domain)
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(\"{}\", components={}, crossings={})",
            self.inner.serialize(),
            self.inner.component_count(),
            self.inner.crossing_count()
        )
    }
}

/// Bounded equivalence search: "equivalent", "distinct:<invariant>" or
/// "unknown".
#[pyfunction]
#[pyo3(signature = (code1, code2, max_crossings = None, max_depth = 6, max_states = 4000))]
fn equivalent(
    code1: &str,
    code2: &str,
    max_crossings: Option<usize>,
    max_depth: usize,
    max_states: usize,
) -> PyResult<String> {
    let d1 = LinkDiagram::parse(code1).map_err(domain)?;
    let d2 = LinkDiagram::parse(code2).map_err(domain)?;
    let budget = SearchBudget {
        max_crossings: max_crossings
            .unwrap_or(d1.crossing_count().max(d2.crossing_count()) + 2),
        max_depth,
        max_states,
    };
    Ok(match bounded_equiv(&d1, &d2, &budget) {
        EquivVerdict::Equivalent(_) => "equivalent".to_string(),
        EquivVerdict::Distinct(invariant) => format!("distinct:{invariant}"),
        EquivVerdict::Unknown => "unknown".to_string(),
    })
}

/// All canonical knot diagrams with up to `max_chords` chords.
#[pyfunction]
fn enumerate_knots(max_chords: usize) -> PyResult<Vec<String>> {
    if max_chords > 8 {
        return Err(PyValueError::new_err("at most 8 chords"));
    }
    Ok(enumerate_knots_rs(max_chords)
        .iter()
        .map(|d| d.serialize())
        .collect())
}

#[pymodule]
fn freelinks_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Diagram>()?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_knots, m)?)?;
    Ok(())
}
