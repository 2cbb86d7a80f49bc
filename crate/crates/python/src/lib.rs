//! Python bindings: codes, decoders, noise estimates and the bound/metric formulas.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qortho::bounds;
use qortho::builder;
use qortho::codefile;
use qortho::noise;
use qortho::quasi::{self, OverlapSpec, QuasiModelParams};
use qortho::{DistanceRecord, Field, MinWeight, PauliVector, SearchBudget, StabilizerCode};

create_exception!(qortho_py, VerificationError, PyException);
create_exception!(qortho_py, ResourceError, PyRuntimeError);

fn py_err(e: qortho::Error) -> PyErr {
    if e.is_verification() {
        VerificationError::new_err(e.to_string())
    } else if matches!(e, qortho::Error::Resource(_)) {
        ResourceError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for qortho::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn field(p: u32) -> PyResult<Field> {
    Field::new(p).py()
}

/// A verified stabilizer code.
#[pyclass(name = "Code", module = "qortho_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCode {
    inner: StabilizerCode,
}

#[pymethods]
impl PyCode {
    /// Build from generator strings `x|z` over GF(p).
    #[new]
    #[pyo3(signature = (name, generators, p = 2))]
    fn new(name: &str, generators: Vec<String>, p: u32) -> PyResult<Self> {
        let f = field(p)?;
        let gens = generators
            .iter()
            .map(|g| PauliVector::parse(f, g))
            .collect::<qortho::Result<Vec<_>>>()
            .py()?;
        Ok(PyCode {
            inner: StabilizerCode::new(name, gens).py()?,
        })
    }

    #[staticmethod]
    fn five_qubit() -> PyResult<Self> {
        Ok(PyCode {
            inner: builder::five_qubit().py()?,
        })
    }

    #[staticmethod]
    fn eight_three() -> PyResult<Self> {
        Ok(PyCode {
            inner: builder::eight_three(builder::eight_three_fixture()).py()?,
        })
    }

    #[staticmethod]
    fn ten_four() -> PyResult<Self> {
        Ok(PyCode {
            inner: builder::ten_four().py()?,
        })
    }

    /// Quadratic-residue code; its distance is left unknown until searched.
    #[staticmethod]
    #[pyo3(signature = (prime, max_prime = builder::DEFAULT_MAX_QR_PRIME))]
    fn quadratic_residue(prime: u64, max_prime: u64) -> PyResult<Self> {
        Ok(PyCode {
            inner: builder::quadratic_residue_code(prime, max_prime).py()?,
        })
    }

    #[staticmethod]
    fn from_code_file(text: &str) -> PyResult<Self> {
        Ok(PyCode {
            inner: codefile::from_code_file(text).py()?,
        })
    }

    fn to_code_file(&self) -> String {
        codefile::to_code_file(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn p(&self) -> u8 {
        self.inner.field().order()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `"3"`, `">=6"` or `"?"`.
    #[getter]
    fn distance(&self) -> String {
        self.inner.distance().to_string()
    }

    #[getter]
    fn t(&self) -> Option<usize> {
        self.inner.t()
    }

    fn parameters(&self) -> String {
        self.inner.parameters()
    }

    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(ToString::to_string).collect()
    }

    fn logicals(&self) -> Vec<(String, String)> {
        self.inner
            .logicals()
            .iter()
            .map(|l| (l.x.to_string(), l.z.to_string()))
            .collect()
    }

    fn verify(&self) -> PyResult<()> {
        self.inner.verify().py()
    }

    /// Search weights up to `w_max`. Returns `(d, witness)` when a logical is
    /// found, else `(None, None)`; the code is returned with its distance
    /// record updated.
    #[pyo3(signature = (w_max, claimed = None, force = false))]
    fn min_weight_logical(
        &self,
        py: Python<'_>,
        w_max: usize,
        claimed: Option<usize>,
        force: bool,
    ) -> PyResult<(Option<usize>, Option<String>, PyCode)> {
        let budget = SearchBudget {
            force,
            ..SearchBudget::default()
        };
        let found = py
            .detach(|| qortho::min_weight_logical(&self.inner, w_max, budget))
            .py()?;
        let updated = PyCode {
            inner: self.inner.clone().with_distance(found.record(claimed)),
        };
        Ok(match found {
            MinWeight::Exact { d, witness } => (Some(d), Some(witness.to_string()), updated),
            MinWeight::NoLogicalBelow(_) => (None, None, updated),
        })
    }

    /// Return a copy carrying an exact distance.
    fn with_exact_distance(&self, d: usize) -> PyCode {
        PyCode {
            inner: self.inner.clone().with_distance(DistanceRecord::Exact(d)),
        }
    }

    #[pyo3(signature = (tau, epsilon = 0.0, phi = 0.0))]
    fn effective_distance(&self, tau: f64, epsilon: f64, phi: f64) -> PyResult<usize> {
        quasi::effective_distance(&self.inner, tau, OverlapSpec::new(epsilon, phi).py()?).py()
    }

    fn __repr__(&self) -> String {
        format!("Code({:?}, {})", self.inner.name(), self.inner.parameters())
    }
}

#[pyclass(name = "SimResult", module = "qortho_py", frozen, get_all)]
struct PySimResult {
    p: f64,
    trials: u64,
    seed: u64,
    failures: u64,
    p_l: f64,
    ci_low: f64,
    ci_high: f64,
    /// Outcome counts in the order I, X, Y, Z, other, uncorrected.
    counts: Vec<u64>,
}

#[pyclass(name = "ExactResult", module = "qortho_py", frozen, get_all)]
struct PyExactResult {
    p: f64,
    w_cut: usize,
    p_l: f64,
    /// Channel weights in the order I, X, Y, Z, other, uncorrected.
    q: Vec<f64>,
    trunc_bound: f64,
}

/// Lookup-table decoder of coset leaders up to `w_max`.
#[pyclass(name = "Decoder", module = "qortho_py", frozen)]
struct PyDecoder {
    table: noise::DecoderTable,
}

#[pymethods]
impl PyDecoder {
    #[new]
    #[pyo3(signature = (code, w_max = None))]
    fn new(py: Python<'_>, code: &PyCode, w_max: Option<usize>) -> PyResult<Self> {
        let w = w_max.unwrap_or_else(|| noise::auto_decoder_weight(&code.inner, noise::DEFAULT_DECODER_BUDGET));
        let table = py.detach(|| noise::build_decoder(&code.inner, w)).py()?;
        Ok(PyDecoder { table })
    }

    #[getter]
    fn w_max(&self) -> usize {
        self.table.w_max()
    }

    #[getter]
    fn coverage(&self) -> f64 {
        self.table.coverage()
    }

    fn __len__(&self) -> usize {
        self.table.len()
    }

    /// Decode one error `x|z`; returns the outcome label.
    fn decode(&self, error: &str) -> PyResult<&'static str> {
        let e = PauliVector::parse(self.table.keys().field(), error).py()?;
        Ok(noise::run_trial(&self.table, &e).py()?.label())
    }

    #[pyo3(signature = (p, trials, seed = 42, workers = 1))]
    fn simulate(&self, py: Python<'_>, p: f64, trials: u64, seed: u64, workers: usize) -> PyResult<PySimResult> {
        let cfg = noise::NoiseConfig::new(p, trials, seed, workers).py()?;
        let r = py.detach(|| noise::estimate_logical_error(&self.table, &cfg)).py()?;
        Ok(PySimResult {
            p: r.p,
            trials: r.trials,
            seed: r.seed,
            failures: r.failures,
            p_l: r.p_l,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            counts: r.counts.to_vec(),
        })
    }

    #[pyo3(signature = (p, w_cut = None))]
    fn exact(&self, py: Python<'_>, p: f64, w_cut: Option<usize>) -> PyResult<PyExactResult> {
        let r = py
            .detach(|| noise::exact_logical_error(&self.table, p, w_cut, u128::MAX))
            .py()?;
        Ok(PyExactResult {
            p: r.p,
            w_cut: r.w_cut,
            p_l: r.p_l,
            q: r.q.to_vec(),
            trunc_bound: r.trunc_bound,
        })
    }

    /// Number of harmful weight-`w` patterns.
    fn harmful(&self, py: Python<'_>, w: usize) -> PyResult<u64> {
        Ok(py
            .detach(|| noise::count_harmful(&self.table, w, u128::MAX))
            .py()?
            .total)
    }

    /// Per-support harmful counts for weights `0..=w_cut`.
    fn per_support_table(&self, py: Python<'_>, w_cut: usize) -> PyResult<Vec<Option<f64>>> {
        Ok(py
            .detach(|| noise::enumerate_outcomes(&self.table, Some(w_cut), u128::MAX))
            .py()?
            .per_support_table())
    }
}

#[pyfunction]
fn gvb_orthogonal(delta: f64) -> PyResult<f64> {
    bounds::gvb_orthogonal(delta).py()
}

#[pyfunction]
fn gvb_quasi(delta: f64, q: f64) -> PyResult<f64> {
    bounds::gvb_quasi(delta, q).py()
}

#[pyfunction]
fn rate_hq(q: f64, delta: f64) -> PyResult<f64> {
    bounds::rate_hq(q, delta).py()
}

#[pyfunction]
fn entropy_hq(q: f64, x: f64) -> PyResult<f64> {
    bounds::entropy_hq(q, x).py()
}

/// `(fidelity_lb, trace_ub, suppression)` for a logical error rate.
#[pyfunction]
fn metric_row(p: f64, p_l: f64) -> PyResult<(f64, f64, Option<f64>)> {
    let r = bounds::metric_row(p, p_l).py()?;
    Ok((r.fidelity_lb, r.trace_ub, r.suppression))
}

#[pyfunction]
fn scaling_exponent(grid: Vec<(f64, f64)>) -> PyResult<Vec<(f64, Option<f64>)>> {
    bounds::scaling_exponent(&grid).py()
}

#[pyfunction]
fn pl_orthogonal(p: f64, t: usize, c_lead: f64) -> f64 {
    quasi::pl_orthogonal(p, t, c_lead)
}

#[pyfunction]
fn pl_quasi(p: f64, t: usize, c_lead: f64, c_leak: f64, epsilon: f64) -> PyResult<f64> {
    Ok(quasi::pl_quasi(
        p,
        &QuasiModelParams::new(t, c_lead, c_leak, epsilon).py()?,
    ))
}

#[pyfunction]
#[pyo3(signature = (n, p, per_support, local_paulis = 3))]
fn union_bound_pl(n: usize, p: f64, per_support: Vec<Option<f64>>, local_paulis: usize) -> f64 {
    noise::union_bound_pl(n, local_paulis, p, &per_support)
}

#[pyfunction]
fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    noise::wilson_interval(failures, trials)
}

#[pymodule]
fn qortho_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", qortho::codefile::TOOLKIT_VERSION)?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyDecoder>()?;
    m.add_class::<PySimResult>()?;
    m.add_class::<PyExactResult>()?;
    m.add_function(wrap_pyfunction!(gvb_orthogonal, m)?)?;
    m.add_function(wrap_pyfunction!(gvb_quasi, m)?)?;
    m.add_function(wrap_pyfunction!(rate_hq, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_hq, m)?)?;
    m.add_function(wrap_pyfunction!(metric_row, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(pl_orthogonal, m)?)?;
    m.add_function(wrap_pyfunction!(pl_quasi, m)?)?;
    m.add_function(wrap_pyfunction!(union_bound_pl, m)?)?;
    m.add_function(wrap_pyfunction!(wilson_interval, m)?)?;
    Ok(())
}
