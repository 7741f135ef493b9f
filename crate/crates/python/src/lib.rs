//! Python bindings. Rationals cross the boundary as strings such as `"3/2"`;
//! symbolic entries as their printed form.

use braid_simplex_core::exactalg::{format_rational, parse_rational, EdgeMatrix, Rational};
use braid_simplex_core::export::{orbit, Mesh};
use braid_simplex_core::garside::{dual_length, normal_form, DualPositiveWord};
use braid_simplex_core::noncrossing::{self as nc, Permutation};
use braid_simplex_core::rep::{self, BraidWord, RepMode};
use braid_simplex_core::rescale::{self, RescalingSpec};
use braid_simplex_core::simplex::{self, EdgeNormVector};
use braid_simplex_core::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for braid_simplex_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn rep_mode(name: &str) -> PyResult<RepMode> {
    name.parse::<RepMode>().py()
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).py()
}

fn norms(n: usize, values: Vec<String>) -> PyResult<EdgeNormVector<Rational>> {
    let a = values.iter().map(|s| rational(s)).collect::<PyResult<Vec<_>>>()?;
    EdgeNormVector::new(n, a).py()
}

fn rows<S: braid_simplex_core::exactalg::Scalar + std::fmt::Display>(m: &EdgeMatrix<S>) -> Vec<Vec<String>> {
    (0..m.dim()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

/// A noncrossing partition of `{1..n}`.
#[pyclass(name = "NcPartition", module = "braid_simplex", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyNcPartition {
    inner: nc::NcPartition,
}

impl From<nc::NcPartition> for PyNcPartition {
    fn from(inner: nc::NcPartition) -> Self {
        PyNcPartition { inner }
    }
}

#[pymethods]
impl PyNcPartition {
    #[new]
    fn new(n: usize, blocks: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(nc::NcPartition::from_nonsingleton_blocks(n, blocks).py()?.into())
    }

    /// Parses `"{1,3|4,5}"`; missing points become singletons.
    #[staticmethod]
    fn parse(s: &str, n: usize) -> PyResult<Self> {
        Ok(nc::NcPartition::parse(s, n).py()?.into())
    }

    /// From cycle notation such as `"(1,3,6)(4,5)"`.
    #[staticmethod]
    fn from_permutation(s: &str, n: usize) -> PyResult<Self> {
        let p = Permutation::parse(s, n).py()?;
        Ok(nc::NcPartition::from_permutation(&p).py()?.into())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.blocks().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn permutation(&self) -> String {
        self.inner.to_permutation().to_string()
    }

    fn lc(&self) -> PyResult<Self> {
        Ok(self.inner.lc().py()?.into())
    }

    fn rc(&self) -> PyResult<Self> {
        Ok(self.inner.rc().py()?.into())
    }

    fn meet(&self, other: &Self) -> PyResult<Self> {
        Ok(self.inner.meet(&other.inner).py()?.into())
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        Ok(self.inner.join(&other.inner).py()?.into())
    }

    fn leq(&self, other: &Self) -> PyResult<bool> {
        self.inner.leq(&other.inner).py()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NcPartition.parse('{}', {})", self.inner, self.inner.n())
    }
}

#[pyfunction]
fn catalan(n: usize) -> u64 {
    nc::catalan(n)
}

#[pyfunction]
fn enumerate_nc(n: usize) -> PyResult<Vec<PyNcPartition>> {
    Ok(nc::enumerate_nc(n).py()?.into_iter().map(Into::into).collect())
}

/// `(s3, s4, s5)` with `δ = s1 s2 s3 = s1 s4 s2 = s5 s1 s2`.
#[pyfunction]
fn five_permutations(s1: &PyNcPartition, s2: &PyNcPartition) -> PyResult<(PyNcPartition, PyNcPartition, PyNcPartition)> {
    let f = nc::five_permutations(&s1.inner, &s2.inner).py()?;
    Ok((f.s3.into(), f.s4.into(), f.s5.into()))
}

/// Rescaling matrix; symbolic unless `q` is given.
#[pyfunction]
#[pyo3(signature = (scaled, fixed, q=None))]
fn rescaling_matrix(scaled: &PyNcPartition, fixed: &PyNcPartition, q: Option<&str>) -> PyResult<Vec<Vec<String>>> {
    let spec = RescalingSpec::new(scaled.inner.clone(), fixed.inner.clone()).py()?;
    let m = rescale::rescaling_matrix(&spec).py()?;
    match q {
        None => Ok(rows(&m)),
        Some(q) => Ok(rows(&m.eval(&rational(q)?, &Rational::from_integer(1.into())).py()?)),
    }
}

/// Matrix of a braid word in `lkb`, `simplicial` or `perm`; symbolic unless `q` is given.
#[pyfunction]
#[pyo3(signature = (word, n, rep="simplicial", q=None, t=None))]
fn word_matrix(word: &str, n: usize, rep: &str, q: Option<&str>, t: Option<&str>) -> PyResult<Vec<Vec<String>>> {
    let w = BraidWord::parse(word, n).py()?;
    let mode = rep_mode(rep)?;
    match q {
        None => Ok(rows(&rep::evaluate_word(&w, mode).py()?)),
        Some(q) => {
            let t = rational(t.unwrap_or("1"))?;
            Ok(rows(&rep::evaluate_word_at(&w, mode, &rational(q)?, &t).py()?))
        }
    }
}

/// Image of an edge norm vector under a word at `q` (and `t = 1`).
#[pyfunction]
#[pyo3(signature = (word, n, norms_in, q, rep="simplicial"))]
fn act(word: &str, n: usize, norms_in: Vec<String>, q: &str, rep: &str) -> PyResult<Vec<String>> {
    let w = BraidWord::parse(word, n).py()?;
    let m = rep::evaluate_word_at(&w, rep_mode(rep)?, &rational(q)?, &Rational::from_integer(1.into())).py()?;
    let image = rep::act_on_norms(&m, &norms(n, norms_in)?).py()?;
    Ok(image.entries().iter().map(format_rational).collect())
}

#[pyfunction]
fn is_nondegenerate(n: usize, norms_in: Vec<String>) -> PyResult<bool> {
    match simplex::is_nondegenerate(&norms(n, norms_in)?) {
        Ok(b) => Ok(b),
        Err(Error::NonPositiveEntry(_)) => Ok(false),
        Err(e) => Err(err(e)),
    }
}

/// Euclidean coordinates of a simplex with the given squared edge lengths.
#[pyfunction]
fn embed(n: usize, norms_in: Vec<String>) -> PyResult<Vec<Vec<f64>>> {
    Ok(simplex::embed(&norms(n, norms_in)?).py()?.euclidean_f64())
}

#[pyfunction]
fn verify_theorem_b(n: usize) -> PyResult<(usize, usize)> {
    let r = rep::verify_theorem_b(n).py()?;
    Ok((r.passed(), r.total()))
}

#[pyfunction]
#[pyo3(signature = (n, trials=100, length=15, seed=0, qs=None))]
fn verify_theorem_a<'py>(
    py: Python<'py>,
    n: usize,
    trials: usize,
    length: usize,
    seed: u64,
    qs: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyDict>> {
    let qs = qs.unwrap_or_else(|| ["1/3", "1/2", "2", "3"].map(String::from).to_vec());
    let qs = qs.iter().map(|s| rational(s)).collect::<PyResult<Vec<_>>>()?;
    let r = rep::verify_theorem_a(n, &qs, length, trials, seed).py()?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("trials", r.trials)?;
    d.set_item("evaluations", r.evaluations)?;
    d.set_item("violations", r.violations.len())?;
    Ok(d)
}

/// Greedy normal form of a positive word; factors as partition strings.
#[pyfunction]
fn garside_normal_form(word: &str, n: usize) -> PyResult<(Vec<String>, usize)> {
    let w = DualPositiveWord::parse(word, n).py()?;
    let nf = normal_form(&w).py()?;
    Ok((nf.factors().iter().map(ToString::to_string).collect(), dual_length(&w).py()?))
}

/// OFF meshes of the regular simplex after `0..=steps` applications of `word`.
#[pyfunction]
fn export_orbit(word: &str, n: usize, q: &str, steps: usize) -> PyResult<Vec<String>> {
    let w = BraidWord::parse(word, n).py()?;
    let stages = orbit(&w, &rational(q)?, steps).py()?;
    Ok(stages.iter().map(|s| s.mesh.to_off()).collect())
}

#[pyfunction]
fn triangle_off(norms_in: Vec<String>) -> PyResult<String> {
    let p = simplex::embed(&norms(3, norms_in)?).py()?;
    Ok(Mesh::from_points(&p).py()?.to_off())
}

#[pymodule]
fn braid_simplex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNcPartition>()?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_nc, m)?)?;
    m.add_function(wrap_pyfunction!(five_permutations, m)?)?;
    m.add_function(wrap_pyfunction!(rescaling_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(word_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(act, m)?)?;
    m.add_function(wrap_pyfunction!(is_nondegenerate, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem_b, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem_a, m)?)?;
    m.add_function(wrap_pyfunction!(garside_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(export_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_off, m)?)?;
    Ok(())
}
