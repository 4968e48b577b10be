use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pyo3::exceptions::{PyIOError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mkball_core::archive::InsertOutcome;
use mkball_core::climber::climb_store;
use mkball_core::harness::{self, Model, RunConfig};
use mkball_core::{
    Bucket, ClimbOptions, Error, MoveIndex, NonDominatedArchive, ScoreStore, Solution,
    Subfunction, VectorMkLandscape, WeightVector,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[derive(FromPyObject)]
enum Bits {
    Text(String),
    List(Vec<bool>),
}

impl Bits {
    fn solution(self) -> PyResult<Solution> {
        match self {
            Bits::Text(s) => Solution::from_bitstring(&s).map_err(to_py),
            Bits::List(v) => Ok(Solution::new(v)),
        }
    }
}

#[pyclass(name = "Landscape", module = "mkball", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLandscape {
    inner: Arc<VectorMkLandscape>,
}

#[pymethods]
impl PyLandscape {
    /// `subfunctions` is a list of `(objective, mask, table)`.
    #[new]
    fn new(n: usize, d: usize, k: usize, q: u32, subfunctions: Vec<(usize, Vec<u32>, Vec<u32>)>) -> PyResult<Self> {
        let subs = subfunctions
            .into_iter()
            .map(|(i, mask, table)| Subfunction::new(i, mask, table))
            .collect();
        let f = VectorMkLandscape::new(n, d, k, q, subs).map_err(to_py)?;
        Ok(PyLandscape { inner: Arc::new(f) })
    }

    #[staticmethod]
    #[pyo3(signature = (n, k, d, q=100, seed=0))]
    fn adjacent(n: usize, k: usize, d: usize, q: u32, seed: u64) -> PyResult<Self> {
        let f = mkball_core::generate_adjacent_mnk(n, k, d, q, seed).map_err(to_py)?;
        Ok(PyLandscape { inner: Arc::new(f) })
    }

    #[staticmethod]
    #[pyo3(signature = (n, k, d, q=100, seed=0))]
    fn random(n: usize, k: usize, d: usize, q: u32, seed: u64) -> PyResult<Self> {
        let f = mkball_core::generate_random_mnk(n, k, d, q, seed).map_err(to_py)?;
        Ok(PyLandscape { inner: Arc::new(f) })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let f = mkball_core::load_instance(path).map_err(to_py)?;
        Ok(PyLandscape { inner: Arc::new(f) })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        mkball_core::save_instance(&self.inner, path).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn c(&self) -> usize {
        self.inner.c()
    }

    fn subfunctions(&self) -> Vec<(usize, Vec<u32>, Vec<u32>)> {
        self.inner
            .subfunctions()
            .iter()
            .map(|s| (s.objective(), s.mask().to_vec(), s.table().to_vec()))
            .collect()
    }

    fn evaluate(&self, x: Bits) -> PyResult<Vec<i64>> {
        self.inner.evaluate(&x.solution()?).map_err(to_py)
    }

    /// Sorted edge list of the co-occurrence graph.
    fn cooccurrence_edges(&self) -> Vec<(u32, u32)> {
        let g = self.inner.cooccurrence_graph();
        let mut out = Vec::new();
        for a in 0..g.n() {
            for &b in g.neighbors(a) {
                if (a as u32) < b {
                    out.push((a as u32, b));
                }
            }
        }
        out
    }

    fn move_basis(&self, r: usize) -> PyResult<Vec<Vec<u32>>> {
        if r == 0 {
            return Err(PyValueError::new_err("r must be >= 1"));
        }
        Ok(mkball_core::enumerate_moves(&self.inner.cooccurrence_graph(), r))
    }

    fn __repr__(&self) -> String {
        format!(
            "Landscape(n={}, d={}, k={}, q={})",
            self.inner.n(),
            self.inner.d(),
            self.inner.k(),
            self.inner.q()
        )
    }
}

#[pyclass(name = "Archive", module = "mkball")]
struct PyArchive {
    inner: NonDominatedArchive,
}

#[pymethods]
impl PyArchive {
    #[new]
    fn new(d: usize) -> Self {
        PyArchive {
            inner: NonDominatedArchive::new(d),
        }
    }

    /// Returns "added", "dominated" or "duplicate".
    #[pyo3(signature = (objectives, x=None))]
    fn insert(&mut self, objectives: Vec<i64>, x: Option<Bits>) -> PyResult<&'static str> {
        if objectives.len() != self.inner.d() {
            return Err(PyValueError::new_err("objective dimension mismatch"));
        }
        let x = match x {
            Some(b) => b.solution()?,
            None => Solution::zeros(0),
        };
        Ok(match self.inner.insert(&objectives, &x) {
            InsertOutcome::Added => "added",
            InsertOutcome::Dominated => "dominated",
            InsertOutcome::Duplicate => "duplicate",
        })
    }

    fn front(&self) -> Vec<Vec<i64>> {
        self.inner.front()
    }

    fn solutions(&self) -> Vec<(Vec<i64>, String)> {
        self.inner
            .entries()
            .iter()
            .map(|e| (e.objectives.clone(), e.solution.to_string()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Score store plus climber state for one start solution.
#[pyclass(name = "Climber", module = "mkball")]
struct PyClimber {
    f: Arc<VectorMkLandscape>,
    index: MoveIndex,
    store: ScoreStore,
    rng: ChaCha8Rng,
    archive: NonDominatedArchive,
}

#[pymethods]
impl PyClimber {
    #[new]
    #[pyo3(signature = (landscape, r, x, weights, seed=0))]
    fn new(landscape: &PyLandscape, r: usize, x: Bits, weights: Vec<f64>, seed: u64) -> PyResult<Self> {
        let f = landscape.inner.clone();
        let index = MoveIndex::new(&f, r).map_err(to_py)?;
        let w = WeightVector::new(weights).map_err(to_py)?;
        let store = ScoreStore::new(&f, &index, x.solution()?, w).map_err(to_py)?;
        Ok(PyClimber {
            archive: NonDominatedArchive::new(f.d()),
            f,
            index,
            store,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    fn solution(&self) -> String {
        self.store.solution().to_string()
    }

    fn objectives(&self) -> Vec<i64> {
        self.store.objectives().to_vec()
    }

    fn __len__(&self) -> usize {
        self.store.len()
    }

    /// `(variables, score vector, bucket)` for every move.
    fn scores(&self) -> Vec<(Vec<u32>, Vec<i64>, &'static str)> {
        self.index
            .ids()
            .map(|m| {
                (
                    self.index.vars(m).to_vec(),
                    self.store.score(m).to_vec(),
                    self.store.bucket(m).name(),
                )
            })
            .collect()
    }

    fn score(&self, vars: Vec<u32>) -> PyResult<Vec<i64>> {
        let mut vars = vars;
        vars.sort_unstable();
        let m = self
            .index
            .find(&vars)
            .ok_or_else(|| PyValueError::new_err("not a move of the basis"))?;
        Ok(self.store.score(m).to_vec())
    }

    fn bucket_counts(&self) -> (usize, usize, usize) {
        (
            self.store.count(Bucket::Strong),
            self.store.count(Bucket::WImproving),
            self.store.count(Bucket::Rest),
        )
    }

    /// Flips the variables of a basis move and updates all scores.
    fn apply(&mut self, vars: Vec<u32>) -> PyResult<()> {
        let mut vars = vars;
        vars.sort_unstable();
        let m = self
            .index
            .find(&vars)
            .ok_or_else(|| PyValueError::new_err("not a move of the basis"))?;
        self.store.update_scores(&self.f, &self.index, m);
        Ok(())
    }

    fn reclassify(&mut self, weights: Vec<f64>) -> PyResult<()> {
        let w = WeightVector::new(weights).map_err(to_py)?;
        self.store.reclassify(w).map_err(to_py)
    }

    /// Climbs to a local optimum; reported solutions go to the archive.
    #[pyo3(signature = (time_limit=None))]
    fn run<'py>(&mut self, py: Python<'py>, time_limit: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
        let deadline = match time_limit {
            Some(t) if t.is_finite() && t > 0.0 => Some(Instant::now() + Duration::from_secs_f64(t)),
            Some(_) => return Err(PyValueError::new_err("time_limit must be positive")),
            None => None,
        };
        let opts = ClimbOptions {
            deadline,
            log_trajectory: false,
        };
        let res = climb_store(&self.f, &self.index, &mut self.store, &mut self.archive, &mut self.rng, &opts);
        let out = PyDict::new(py);
        out.set_item("solution", res.solution.to_string())?;
        out.set_item("objectives", res.objectives)?;
        out.set_item("moves", res.moves)?;
        out.set_item("strong_moves", res.strong_moves)?;
        out.set_item("w_moves", res.w_moves)?;
        out.set_item("reports", res.reports)?;
        out.set_item("local_optimum", res.local_optimum)?;
        Ok(out)
    }

    fn front(&self) -> Vec<Vec<i64>> {
        self.archive.front()
    }
}

#[pyfunction]
fn dominates(a: Vec<i64>, b: Vec<i64>) -> PyResult<bool> {
    mkball_core::dominates(&a, &b).map_err(to_py)
}

#[pyfunction]
fn eas50(fronts: Vec<Vec<Vec<i64>>>) -> PyResult<Vec<Vec<i64>>> {
    harness::eas50(&fronts).map_err(to_py)
}

/// Runs a full experiment. Returns `{"fronts", "stats", "eas50"}`.
#[pyfunction]
#[pyo3(signature = (n, k, d, r, q=100, seed=0, time_limit=1.0, runs=1, max_restarts=None, model="adjacent", out=None))]
#[allow(clippy::too_many_arguments)]
fn multistart<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    d: usize,
    r: usize,
    q: u32,
    seed: u64,
    time_limit: f64,
    runs: usize,
    max_restarts: Option<u64>,
    model: &str,
    out: Option<PathBuf>,
) -> PyResult<Bound<'py, PyDict>> {
    let config = RunConfig {
        n,
        k,
        d,
        q,
        r,
        seed,
        time_limit,
        runs,
        max_restarts,
        out,
        model: model.parse::<Model>().map_err(to_py)?,
        ..Default::default()
    };
    let exp = py
        .detach(|| harness::run_experiment(&config))
        .map_err(to_py)?;
    let result = PyDict::new(py);
    let fronts: Vec<Vec<Vec<i64>>> = exp.runs.iter().map(|(a, _)| a.front()).collect();
    let stats = exp
        .runs
        .iter()
        .map(|(_, s)| {
            let st = PyDict::new(py);
            st.set_item("restarts", s.restarts)?;
            st.set_item("moves", s.total_moves)?;
            st.set_item("strong_moves", s.strong_moves)?;
            st.set_item("w_moves", s.w_moves)?;
            st.set_item("loop_secs", s.loop_secs)?;
            st.set_item("mean_us_per_move", s.mean_us_per_move)?;
            st.set_item("median_us_per_move", s.median_us_per_move)?;
            st.set_item("problem_init_ms", s.problem_init_ms)?;
            Ok(st)
        })
        .collect::<PyResult<Vec<_>>>()?;
    result.set_item("fronts", fronts)?;
    result.set_item("stats", stats)?;
    result.set_item("moves_in_basis", exp.moves_in_basis)?;
    result.set_item("eas50", exp.eas50)?;
    Ok(result)
}

#[pymodule]
fn mkball(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLandscape>()?;
    m.add_class::<PyArchive>()?;
    m.add_class::<PyClimber>()?;
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(eas50, m)?)?;
    m.add_function(wrap_pyfunction!(multistart, m)?)?;
    Ok(())
}
