use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use level2::catalog::Statement;
use level2::hs::{involution_set, minimality_matrix};
use level2::invariants::{count as count_members, surjectivity_check};
use level2::run::{filtered_catalog, validate_generators as gate, verify_all, RunConfig, Variant};
use level2::verify::{action, Tier, DEFAULT_BUDGET};
use level2::{equal_mod_inner, Equality, GroupWord};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A word in the catalog generators, e.g. `R * Ybar(1,4)^-1`.
#[pyclass(name = "GenWord", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGenWord(level2::GenWord);

#[pymethods]
impl PyGenWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        level2::GenWord::from_str(text).map(PyGenWord).map_err(err)
    }

    fn inverse(&self) -> Self {
        PyGenWord(self.0.inverse())
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyGenWord(self.0.then(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GenWord('{}')", self.0)
    }
}

type Action = (Vec<Vec<u32>>, Vec<Vec<i64>>);

fn word_arg(w: &Bound<'_, PyAny>) -> PyResult<level2::GenWord> {
    if let Ok(g) = w.cast::<PyGenWord>() {
        return Ok(g.get().0.clone());
    }
    let s: String = w.extract()?;
    level2::GenWord::from_str(&s).map_err(err)
}

/// Mapping classes of N_g acting on the surface group.
#[pyclass(name = "Engine", frozen)]
struct PyEngine(level2::Engine);

#[pymethods]
impl PyEngine {
    #[new]
    fn new(genus: usize) -> PyResult<Self> {
        level2::Engine::new(genus).map(PyEngine).map_err(err)
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    /// Whether a surface-group word (e.g. `"a1 a1 a2^-1"`) is trivial.
    fn is_identity(&self, word: &str) -> PyResult<bool> {
        let w = GroupWord::from_str(word).map_err(err)?;
        self.0.ctx().check_letters(&w).map_err(err)?;
        Ok(self.0.ctx().is_identity(&w))
    }

    /// Images of the generators `a_1..a_g` under the mapping class.
    fn images(&self, word: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let f = self.0.realize(&word_arg(word)?).map_err(err)?;
        Ok(f.images().iter().map(|w| w.to_string()).collect())
    }

    /// `(mod2, integral)` action on homology, as lists of columns.
    fn action(&self, word: &Bound<'_, PyAny>) -> PyResult<Action> {
        let (m2, z) = action(&self.0, &word_arg(word)?).map_err(err)?;
        let g = self.0.genus();
        let mod2 = (0..g)
            .map(|c| (0..g).map(|r| u32::from(m2.entry(r, c))).collect())
            .collect();
        let int = z.columns().iter().map(|c| c.coords().to_vec()).collect();
        Ok((mod2, int))
    }

    fn is_level2(&self, word: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(action(&self.0, &word_arg(word)?)
            .map_err(err)?
            .0
            .is_identity())
    }

    /// Compare two mapping classes up to inner automorphism. Returns
    /// `("equal", witness)`, `("not_equal", reason)` or `("undecided", "")`.
    #[pyo3(signature = (lhs, rhs, budget = DEFAULT_BUDGET))]
    fn equal(
        &self,
        lhs: &Bound<'_, PyAny>,
        rhs: &Bound<'_, PyAny>,
        budget: usize,
    ) -> PyResult<(String, String)> {
        let f = self.0.realize(&word_arg(lhs)?).map_err(err)?;
        let h = self.0.realize(&word_arg(rhs)?).map_err(err)?;
        Ok(match equal_mod_inner(self.0.ctx(), &f, &h, budget) {
            Equality::Equal(w) => ("equal".into(), w.to_string()),
            Equality::NotEqual(why) => ("not_equal".into(), why),
            Equality::Undecided => ("undecided".into(), String::new()),
        })
    }
}

fn parse<T: FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(err)
}

/// Run the verifier and return the report as a dict.
#[pyfunction]
#[pyo3(signature = (genus, tier = "b", statement = None, variant = "corrected", budget = DEFAULT_BUDGET, jobs = 1, seed = 0, mutants = false))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    genus: Vec<usize>,
    tier: &str,
    statement: Option<String>,
    variant: &str,
    budget: usize,
    jobs: usize,
    seed: u64,
    mutants: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let config = RunConfig {
        genus,
        tier: parse::<Tier>(tier)?,
        statement,
        variant: parse::<Variant>(variant)?,
        budget,
        jobs: jobs.max(1),
        seed,
        mutants,
    };
    let report = py.detach(|| verify_all(&config)).map_err(err)?;
    json_to_py(py, &report.to_json())
}

/// Catalog statements as dicts with id, family, kind, text and as_printed.
#[pyfunction]
#[pyo3(signature = (genus, statement = None, variant = "both"))]
fn catalog<'py>(
    py: Python<'py>,
    genus: usize,
    statement: Option<&str>,
    variant: &str,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let stmts: Vec<Statement> = filtered_catalog(genus, statement, parse(variant)?).map_err(err)?;
    stmts
        .into_iter()
        .map(|s| {
            let d = PyDict::new(py);
            d.set_item("id", &s.id)?;
            d.set_item("family", &s.family)?;
            d.set_item("kind", s.kind.label())?;
            d.set_item("text", s.kind.describe())?;
            d.set_item("as_printed", s.as_printed)?;
            Ok(d)
        })
        .collect()
}

/// `(members, expected)` for the involution generating set.
#[pyfunction]
fn count(genus: usize) -> (usize, usize) {
    let c = count_members(genus);
    (c.members, c.expected)
}

#[pyfunction(name = "involution_set")]
fn involutions(genus: usize) -> Vec<PyGenWord> {
    involution_set(genus)
        .members
        .into_iter()
        .map(PyGenWord)
        .collect()
}

/// `(size, rank, invertible)` of the GF(2) change-of-basis matrix.
#[pyfunction]
fn minimality(genus: usize) -> (usize, usize, bool) {
    let m = minimality_matrix(genus);
    (m.size, m.rank, m.invertible)
}

/// `(bruteforce, closure)` orders of the mod-2 isometry group.
#[pyfunction]
fn isometry_orders(genus: usize) -> PyResult<(u64, u64)> {
    let r = surjectivity_check(genus).map_err(err)?;
    Ok((r.bruteforce, r.closure))
}

/// `(passed, [(check, detail) for failing checks])`.
#[pyfunction]
fn validate_generators(engine: &PyEngine) -> (bool, Vec<(String, String)>) {
    let r = gate(&engine.0);
    let bad = r
        .checks
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| (c.name, c.detail))
        .collect();
    (r.passed, bad)
}

#[pymodule]
#[pyo3(name = "level2")]
fn level2_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGenWord>()?;
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(involutions, m)?)?;
    m.add_function(wrap_pyfunction!(minimality, m)?)?;
    m.add_function(wrap_pyfunction!(isometry_orders, m)?)?;
    m.add_function(wrap_pyfunction!(validate_generators, m)?)?;
    Ok(())
}
