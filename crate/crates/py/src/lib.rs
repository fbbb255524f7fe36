//! Python bindings: exact forms, catalog access, stabilizers and the
//! verification suites. Rationals cross the boundary as `"p/q"` strings
//! (integers are also accepted on input).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use calibex_core::calibration::{self, catalog};
use calibex_core::exterior::{AlternatingForm, Vector};
use calibex_core::flags::character_sequence;
use calibex_core::group::Group;
use calibex_core::scalar::{self, Scalar};
use calibex_core::suite::{run_identity, run_suite, IdentityScope, SuiteName};
use calibex_core::wchain::{search_w_chain, SearchOutcome};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum RationalArg {
    Int(i64),
    Text(String),
}

impl RationalArg {
    fn into_scalar(self) -> PyResult<Scalar> {
        match self {
            RationalArg::Int(v) => Ok(scalar::int(v)),
            RationalArg::Text(t) => {
                scalar::parse(&t).ok_or_else(|| err(format!("not a rational: {t:?}")))
            }
        }
    }
}

fn to_vectors(vs: Vec<Vec<RationalArg>>) -> PyResult<Vec<Vector>> {
    vs.into_iter()
        .map(|v| {
            Ok(Vector(
                v.into_iter()
                    .map(RationalArg::into_scalar)
                    .collect::<PyResult<_>>()?,
            ))
        })
        .collect()
}

fn parse_group(name: &str) -> PyResult<Group> {
    name.parse().map_err(err)
}

/// An exact constant-coefficient alternating form on ℝⁿ (0-based offsets).
#[pyclass(name = "Form", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyForm {
    inner: AlternatingForm,
}

#[pymethods]
impl PyForm {
    /// `Form(dim, grade, [(offsets, coefficient), ...])`
    #[new]
    fn new(dim: usize, grade: usize, terms: Vec<(Vec<usize>, RationalArg)>) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(idx, c)| Ok((idx, c.into_scalar()?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyForm {
            inner: AlternatingForm::from_terms(dim, grade, terms).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn grade(&self) -> usize {
        self.inner.grade()
    }

    fn coefficient(&self, offsets: Vec<usize>) -> String {
        scalar::display(&self.inner.coefficient_at(&offsets))
    }

    /// Nonzero terms as (sorted offsets, "p/q") pairs.
    fn terms(&self) -> Vec<(Vec<usize>, String)> {
        self.inner
            .terms()
            .map(|(k, c)| (k.indices().to_vec(), scalar::display(c)))
            .collect()
    }

    fn wedge(&self, other: &PyForm) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.wedge(&other.inner).map_err(err)?,
        })
    }

    fn hodge(&self) -> PyForm {
        PyForm {
            inner: self.inner.hodge(),
        }
    }

    fn evaluate(&self, vectors: Vec<Vec<RationalArg>>) -> PyResult<String> {
        let vs = to_vectors(vectors)?;
        Ok(scalar::display(&self.inner.evaluate(&vs).map_err(err)?))
    }

    /// Renders with coordinate labels starting at `base`.
    #[pyo3(signature = (base = 0))]
    fn render(&self, base: usize) -> String {
        self.inner.render(base)
    }

    fn __eq__(&self, other: &PyForm) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Form({})", self.inner.render(0))
    }
}

/// A form from the calibration catalog: phi0, star_phi0, psi0, su3_omega0.
#[pyfunction]
fn catalog_form(name: &str) -> PyResult<PyForm> {
    let cat = catalog();
    let inner = match name {
        "phi0" => cat.phi0.clone(),
        "star_phi0" => cat.star_phi0.clone(),
        "psi0" => cat.psi0.clone(),
        "su3_omega0" => cat.su3_omega0.clone(),
        _ => return Err(err(format!("unknown catalog form {name:?}"))),
    };
    Ok(PyForm { inner })
}

#[pyfunction]
fn stabilizer_dim(forms: Vec<PyRef<'_, PyForm>>, n: usize) -> PyResult<usize> {
    let forms: Vec<AlternatingForm> = forms.iter().map(|f| f.inner.clone()).collect();
    Ok(calibex_core::stabilizer::stabilizer(&forms, n)
        .map_err(err)?
        .dim())
}

/// (c_0, …, c_{n−1}) for "g2" or "spin7".
#[pyfunction]
fn characters(group: &str) -> PyResult<Vec<usize>> {
    Ok(character_sequence(parse_group(group)?)
        .map_err(err)?
        .characters())
}

#[pyfunction]
fn assoc_residual(
    u: Vec<RationalArg>,
    v: Vec<RationalArg>,
    w: Vec<RationalArg>,
) -> PyResult<String> {
    let vs = to_vectors(vec![u, v, w])?;
    Ok(scalar::display(
        &calibration::assoc_residual(&vs[0], &vs[1], &vs[2]).map_err(err)?,
    ))
}

/// Runs a verification suite ("g2", "spin7", "su3") and returns the report as JSON.
#[pyfunction]
fn verify(suite: &str) -> PyResult<String> {
    let name = match suite {
        "g2" => SuiteName::G2,
        "spin7" => SuiteName::Spin7,
        "su3" => SuiteName::Su3,
        _ => return Err(err(format!("unknown suite {suite:?}"))),
    };
    Ok(run_suite(name).map_err(err)?.to_json())
}

#[pyfunction]
#[pyo3(signature = (samples, seed = 42))]
fn identity(samples: usize, seed: u64) -> PyResult<String> {
    if samples == 0 {
        return Err(err("samples must be at least 1"));
    }
    Ok(run_identity(samples, seed, IdentityScope::Both)
        .map_err(err)?
        .to_json())
}

/// The chain file as JSON, or None when no chain exists.
#[pyfunction]
fn search_wchain(group: &str) -> PyResult<Option<String>> {
    Ok(match search_w_chain(parse_group(group)?).map_err(err)? {
        SearchOutcome::Found(chain) => Some(chain.to_json()),
        SearchOutcome::NotFound { .. } => None,
    })
}

#[pymodule]
fn calibex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(catalog_form, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer_dim, m)?)?;
    m.add_function(wrap_pyfunction!(characters, m)?)?;
    m.add_function(wrap_pyfunction!(assoc_residual, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identity, m)?)?;
    m.add_function(wrap_pyfunction!(search_wchain, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
