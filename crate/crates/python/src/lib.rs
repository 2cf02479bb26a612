//! Python bindings: lexicons, problems, search parameters and both searches.

use std::path::PathBuf;

use nonword::cli::Algorithm;
use nonword::{
    build_bigram_table, count_orthographic_neighbors, encode, Configuration, Criterion,
    FrequencyMode, Lexicon, LexiconError, NeighborIndex, NeighborRange, Objective, Problem,
    ProblemError, RunOutcome, SearchParams,
};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn lexicon_err(e: LexiconError) -> PyErr {
    match e {
        LexiconError::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn problem_err(e: ProblemError) -> PyErr {
    match e {
        ProblemError::Lexicon(inner) => lexicon_err(inner),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_mode(mode: &str) -> PyResult<FrequencyMode> {
    mode.parse().map_err(PyValueError::new_err)
}

/// A syllabified frequency lexicon.
#[pyclass(name = "Lexicon", module = "nonword", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyLexicon {
    inner: Lexicon,
}

#[pymethods]
impl PyLexicon {
    /// Parses `word<TAB>frequency<TAB>syll-syll` lines.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Lexicon::parse_str(text)
            .map(|inner| Self { inner })
            .map_err(lexicon_err)
    }

    #[staticmethod]
    fn from_path(path: PathBuf) -> PyResult<Self> {
        Lexicon::from_path(path)
            .map(|inner| Self { inner })
            .map_err(lexicon_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Lexicon({} entries)", self.inner.len())
    }

    fn is_word(&self, candidate: &str) -> bool {
        self.inner.is_word(candidate)
    }

    /// Entries as `(word, frequency, syllables)` tuples.
    fn entries(&self) -> Vec<(String, f64, Vec<String>)> {
        self.inner
            .entries()
            .iter()
            .map(|e| (e.word.clone(), e.frequency, e.syllables.clone()))
            .collect()
    }

    /// Sorted distinct syllables; a configuration indexes into this list.
    fn syllables(&self) -> PyResult<Vec<String>> {
        nonword::build_syllable_inventory(&self.inner)
            .map(|inv| inv.syllables().to_vec())
            .map_err(lexicon_err)
    }

    fn alphabet(&self) -> String {
        self.inner.alphabet().iter().collect()
    }

    fn type_view(&self) -> Self {
        Self {
            inner: self.inner.type_view(),
        }
    }

    fn to_tsv(&self) -> String {
        self.inner.to_tsv()
    }

    /// `(bigram, position, count)` rows sorted by bigram and position.
    #[pyo3(signature = (mode = "token"))]
    fn bigram_table(&self, mode: &str) -> PyResult<Vec<(String, usize, f64)>> {
        Ok(build_bigram_table(&self.inner, parse_mode(mode)?).sorted_entries())
    }

    /// Number of same-length words that differ from `candidate` in one letter.
    fn neighbors(&self, candidate: &str) -> usize {
        count_orthographic_neighbors(&NeighborIndex::new(&self.inner), candidate)
    }
}

/// Search settings. Defaults follow the reference protocol.
#[pyclass(
    name = "SearchParams",
    module = "nonword",
    get_all,
    set_all,
    from_py_object
)]
#[derive(Clone)]
pub struct PySearchParams {
    rep: u32,
    chaos: usize,
    increase: f64,
    decrease: f64,
    chi_max: usize,
    r_max: u64,
    max_iterations: u64,
    target_solutions: Option<usize>,
}

impl From<SearchParams> for PySearchParams {
    fn from(p: SearchParams) -> Self {
        Self {
            rep: p.rep,
            chaos: p.chaos,
            increase: p.increase,
            decrease: p.decrease,
            chi_max: p.chi_max,
            r_max: p.r_max,
            max_iterations: p.max_iterations,
            target_solutions: p.target_solutions,
        }
    }
}

impl PySearchParams {
    fn to_params(&self) -> PyResult<SearchParams> {
        let p = SearchParams {
            rep: self.rep,
            chaos: self.chaos,
            increase: self.increase,
            decrease: self.decrease,
            chi_max: self.chi_max,
            r_max: self.r_max,
            max_iterations: self.max_iterations,
            target_solutions: self.target_solutions,
        };
        p.validate()
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(p)
    }
}

#[pymethods]
impl PySearchParams {
    #[new]
    #[pyo3(signature = (
        *, rep = 3, chaos = 3, increase = 1.3, decrease = 0.8, chi_max = 300,
        r_max = 8000, max_iterations = 500, target_solutions = None
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        rep: u32,
        chaos: usize,
        increase: f64,
        decrease: f64,
        chi_max: usize,
        r_max: u64,
        max_iterations: u64,
        target_solutions: Option<usize>,
    ) -> PyResult<Self> {
        let p = Self {
            rep,
            chaos,
            increase,
            decrease,
            chi_max,
            r_max,
            max_iterations,
            target_solutions,
        };
        p.to_params()?;
        Ok(p)
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchParams(rep={}, chaos={}, increase={}, decrease={}, chi_max={}, r_max={}, max_iterations={}, target_solutions={:?})",
            self.rep, self.chaos, self.increase, self.decrease, self.chi_max, self.r_max,
            self.max_iterations, self.target_solutions
        )
    }
}

/// A lexicon, a criterion and a syllable count.
#[pyclass(name = "Problem", module = "nonword", frozen)]
pub struct PyProblem {
    inner: Problem,
}

impl PyProblem {
    fn configuration(&self, components: Vec<usize>) -> PyResult<Configuration> {
        if components.len() != self.inner.dimension() {
            return Err(PyValueError::new_err(format!(
                "expected {} components, got {}",
                self.inner.dimension(),
                components.len()
            )));
        }
        Ok(Configuration::new(components))
    }
}

#[pymethods]
impl PyProblem {
    /// `criterion` is "bigram" (uses `mode`, `delta_b`) or "neighbors"
    /// (uses `neighbor_range`, `delta_n`).
    #[new]
    #[pyo3(signature = (
        lexicon, criterion = "bigram", syllables = 2, *, mode = "token", delta_b = None,
        neighbor_range = (1, 4), delta_n = 100.0
    ))]
    fn new(
        lexicon: &PyLexicon,
        criterion: &str,
        syllables: usize,
        mode: &str,
        delta_b: Option<f64>,
        neighbor_range: (u32, u32),
        delta_n: f64,
    ) -> PyResult<Self> {
        let criterion = match criterion {
            "bigram" => Criterion::Bigram {
                mode: parse_mode(mode)?,
                delta: delta_b,
            },
            "neighbors" => Criterion::Neighbors {
                range: NeighborRange::new(neighbor_range.0, neighbor_range.1)
                    .map_err(problem_err)?,
                delta: delta_n,
            },
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown criterion `{other}` (expected bigram or neighbors)"
                )))
            }
        };
        Problem::new(lexicon.inner.clone(), criterion, syllables)
            .map(|inner| Self { inner })
            .map_err(problem_err)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn cardinality(&self) -> usize {
        self.inner.cardinality()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta()
    }

    fn syllables(&self) -> Vec<String> {
        self.inner.inventory().syllables().to_vec()
    }

    /// `(text, syllables)` of a configuration.
    fn decode(&self, components: Vec<usize>) -> PyResult<(String, Vec<String>)> {
        let w = self
            .inner
            .decode(&self.configuration(components)?)
            .map_err(problem_err)?;
        Ok((w.text().to_owned(), w.syllables().to_vec()))
    }

    /// Syllable indices, or `None` if a syllable is not in the inventory.
    fn encode(&self, syllables: Vec<String>) -> Option<Vec<usize>> {
        encode(&syllables, self.inner.inventory()).map(|v| v.components().to_vec())
    }

    /// Relaxed criterion in [0, 1]; 1 exactly for solutions.
    fn score(&self, components: Vec<usize>) -> PyResult<f64> {
        self.inner
            .score_configuration(&self.configuration(components)?)
            .map(|s| s.value())
            .map_err(problem_err)
    }
}

/// Solutions and statistics of one run.
#[pyclass(name = "RunResult", module = "nonword", frozen, get_all)]
pub struct PyRunResult {
    /// `(text, syllables, iteration)` in discovery order.
    solutions: Vec<(String, Vec<String>, u64)>,
    iterations: u64,
    diversifications: usize,
    elapsed_secs: f64,
}

impl From<RunOutcome> for PyRunResult {
    fn from(out: RunOutcome) -> Self {
        Self {
            solutions: out
                .solutions
                .iter()
                .map(|s| (s.text.clone(), s.syllables.clone(), s.iteration))
                .collect(),
            iterations: out.stats.iterations,
            diversifications: out.stats.diversifications,
            elapsed_secs: out.stats.elapsed_secs,
        }
    }
}

#[pymethods]
impl PyRunResult {
    fn texts(&self) -> Vec<String> {
        self.solutions.iter().map(|s| s.0.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.solutions.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "RunResult({} solutions, {} iterations, {} diversifications)",
            self.solutions.len(),
            self.iterations,
            self.diversifications
        )
    }
}

fn run(
    py: Python<'_>,
    algorithm: Algorithm,
    problem: &PyProblem,
    params: Option<PySearchParams>,
    seed: u64,
) -> PyResult<PyRunResult> {
    let params = match params {
        Some(p) => p.to_params()?,
        None => SearchParams::default(),
    };
    let outcome = py.detach(|| algorithm.run(&problem.inner, &params, seed));
    Ok(outcome.into())
}

/// Reactive tabu search seeded with `seed`.
#[pyfunction]
#[pyo3(signature = (problem, params = None, seed = 0))]
fn run_crs(
    py: Python<'_>,
    problem: &PyProblem,
    params: Option<PySearchParams>,
    seed: u64,
) -> PyResult<PyRunResult> {
    run(py, Algorithm::Crs, problem, params, seed)
}

/// Random-restart local search seeded with `seed`.
#[pyfunction]
#[pyo3(signature = (problem, params = None, seed = 0))]
fn run_cils(
    py: Python<'_>,
    problem: &PyProblem,
    params: Option<PySearchParams>,
    seed: u64,
) -> PyResult<PyRunResult> {
    run(py, Algorithm::Cils, problem, params, seed)
}

#[pymodule]
#[pyo3(name = "nonword")]
fn nonword_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLexicon>()?;
    m.add_class::<PySearchParams>()?;
    m.add_class::<PyProblem>()?;
    m.add_class::<PyRunResult>()?;
    m.add_function(wrap_pyfunction!(run_crs, m)?)?;
    m.add_function(wrap_pyfunction!(run_cils, m)?)?;
    Ok(())
}
