//! Python bindings: exact double Hurwitz numbers as `int` / `Fraction`,
//! tropical covers as a thin wrapper class.

use num::bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hurwitz_core::enumerate::enumerate_covers;
use hurwitz_core::oracle::monodromy_count;
use hurwitz_core::rational::format_rational;
use hurwitz_core::real::SignSplitting;
use hurwitz_core::serialize::{cover_to_dot, cover_to_text};
use hurwitz_core::{Caps, Partition, Rational, TropicalCover};

fn err(e: hurwitz_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn caps(max_degree: Option<u64>, max_branch_points: Option<usize>) -> Caps {
    Caps {
        max_degree: max_degree.unwrap_or(Caps::ENUMERATION.max_degree),
        max_branch_points: max_branch_points.unwrap_or(Caps::ENUMERATION.max_branch_points),
    }
}

fn partition(parts: Vec<u64>) -> Partition {
    Partition::new(parts)
}

fn fraction(py: Python<'_>, r: &Rational) -> PyResult<Py<PyAny>> {
    let ctor = py.import("fractions")?.getattr("Fraction")?;
    let num: BigInt = r.numer().clone();
    let den: BigInt = r.denom().clone();
    Ok(ctor.call1((num, den))?.unbind())
}

/// A tropical cover of the line.
#[pyclass(name = "Cover")]
struct Cover {
    inner: TropicalCover,
}

#[pymethods]
impl Cover {
    #[getter]
    fn genus(&self) -> u64 {
        self.inner.genus
    }

    #[getter]
    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    #[getter]
    fn left_type(&self) -> Vec<u64> {
        self.inner.left_type().parts().to_vec()
    }

    #[getter]
    fn right_type(&self) -> Vec<u64> {
        self.inner.right_type().parts().to_vec()
    }

    #[getter]
    fn automorphisms(&self) -> u64 {
        self.inner.automorphism_count()
    }

    fn mult_complex(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        fraction(py, &self.inner.mult_complex())
    }

    fn is_zigzag(&self) -> PyResult<bool> {
        hurwitz_core::zigzag::is_zigzag(&self.inner).map_err(err)
    }

    fn to_text(&self) -> String {
        cover_to_text(&self.inner)
    }

    fn to_dot(&self) -> String {
        cover_to_dot(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Cover(genus={}, left=({}), right=({}), mult={})",
            self.inner.genus,
            self.inner.left_type(),
            self.inner.right_type(),
            format_rational(&self.inner.mult_complex()),
        )
    }
}

/// H^C_g(lam, mu) as a Fraction.
#[pyfunction]
#[pyo3(signature = (genus, lam, mu, max_degree=None, max_branch_points=None))]
fn hurwitz_complex(
    py: Python<'_>,
    genus: u64,
    lam: Vec<u64>,
    mu: Vec<u64>,
    max_degree: Option<u64>,
    max_branch_points: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let h = hurwitz_core::enumerate::hurwitz_complex(
        genus,
        &partition(lam),
        &partition(mu),
        caps(max_degree, max_branch_points),
    )
    .map_err(err)?;
    fraction(py, &h)
}

/// H^R_g(lam, mu; s) for a splitting given as a "+-" string or as the
/// canonical splitting with p positive signs.
#[pyfunction]
#[pyo3(signature = (genus, lam, mu, signs=None, p=None, max_degree=None, max_branch_points=None))]
fn hurwitz_real(
    genus: u64,
    lam: Vec<u64>,
    mu: Vec<u64>,
    signs: Option<String>,
    p: Option<usize>,
    max_degree: Option<u64>,
    max_branch_points: Option<usize>,
) -> PyResult<BigInt> {
    let lam = partition(lam);
    let mu = partition(mu);
    let r = hurwitz_core::simple_branch_count(&lam, &mu, genus).map_err(err)?;
    let s = match (signs, p) {
        (Some(s), None) => s.parse::<SignSplitting>().map_err(err)?,
        (None, Some(p)) if r >= 0 && p <= r as usize => SignSplitting::canonical(p, r as usize),
        _ => {
            return Err(PyValueError::new_err(
                "exactly one of signs and p is required, with p <= r",
            ))
        }
    };
    hurwitz_core::real::hurwitz_real(genus, &lam, &mu, &s, caps(max_degree, max_branch_points))
        .map_err(err)
}

/// Z_g(lam, mu).
#[pyfunction]
#[pyo3(signature = (genus, lam, mu, max_degree=None, max_branch_points=None))]
fn zigzag_number(
    genus: u64,
    lam: Vec<u64>,
    mu: Vec<u64>,
    max_degree: Option<u64>,
    max_branch_points: Option<usize>,
) -> PyResult<u128> {
    hurwitz_core::zigzag::zigzag_number(
        genus,
        &partition(lam),
        &partition(mu),
        caps(max_degree, max_branch_points),
    )
    .map_err(err)
}

/// Whether any zigzag cover of this type exists.
#[pyfunction]
fn zigzag_exists(genus: u64, lam: Vec<u64>, mu: Vec<u64>) -> PyResult<bool> {
    hurwitz_core::zigzag::zigzag_exists(genus, &partition(lam), &partition(mu)).map_err(err)
}

/// The factorial lower bound for Z_g(lam, mu).
#[pyfunction]
fn lower_bound(genus: u64, lam: Vec<u64>, mu: Vec<u64>) -> PyResult<BigInt> {
    hurwitz_core::zigzag::lower_bound(genus, &partition(lam), &partition(mu)).map_err(err)
}

/// Bends(k, lam, mu).
#[pyfunction]
fn bends(k: i64, lam: Vec<u64>, mu: Vec<u64>) -> PyResult<u64> {
    hurwitz_core::zigzag::bends(k, &partition(lam), &partition(mu)).map_err(err)
}

/// The symmetric-group monodromy count, as a Fraction.
#[pyfunction]
#[pyo3(signature = (genus, lam, mu, max_degree=None, max_branch_points=None))]
fn oracle(
    py: Python<'_>,
    genus: u64,
    lam: Vec<u64>,
    mu: Vec<u64>,
    max_degree: Option<u64>,
    max_branch_points: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let oracle_caps = Caps {
        max_degree: max_degree.unwrap_or(Caps::ORACLE.max_degree),
        max_branch_points: max_branch_points.unwrap_or(Caps::ORACLE.max_branch_points),
    };
    let h = monodromy_count(genus, &partition(lam), &partition(mu), oracle_caps).map_err(err)?;
    fraction(py, &h)
}

/// All tropical covers of the given type.
#[pyfunction]
#[pyo3(signature = (genus, lam, mu, max_degree=None, max_branch_points=None))]
fn covers(
    genus: u64,
    lam: Vec<u64>,
    mu: Vec<u64>,
    max_degree: Option<u64>,
    max_branch_points: Option<usize>,
) -> PyResult<Vec<Cover>> {
    let list = enumerate_covers(
        genus,
        &partition(lam),
        &partition(mu),
        caps(max_degree, max_branch_points),
    )
    .map_err(err)?;
    Ok(list.into_iter().map(|inner| Cover { inner }).collect())
}

/// One constructed zigzag cover of the given type.
#[pyfunction]
fn zigzag_witness(genus: u64, lam: Vec<u64>, mu: Vec<u64>) -> PyResult<Cover> {
    let inner =
        hurwitz_core::zigzag::construct_zigzag_witness(genus, &partition(lam), &partition(mu))
            .map_err(err)?;
    Ok(Cover { inner })
}

/// The asymptotic sweep table as a dict with `rows`, `m_0` and `truncated`.
#[pyfunction]
#[pyo3(signature = (genus, lam, mu, m_max, variant="ones", max_degree=None, max_branch_points=None))]
#[allow(clippy::too_many_arguments)]
fn sweep(
    py: Python<'_>,
    genus: u64,
    lam: Vec<u64>,
    mu: Vec<u64>,
    m_max: usize,
    variant: &str,
    max_degree: Option<u64>,
    max_branch_points: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let variant = match variant {
        "ones" => hurwitz_cli::Variant::Ones,
        "mixed" => hurwitz_cli::Variant::Mixed,
        "twos" => hurwitz_cli::Variant::Twos,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown variant {other:?}, expected ones, mixed or twos"
            )))
        }
    };
    let result = hurwitz_cli::sweep(
        genus,
        &partition(lam),
        &partition(mu),
        m_max,
        variant,
        caps(max_degree, max_branch_points),
    )
    .map_err(err)?;
    let rows = pyo3::types::PyList::empty(py);
    for row in &result.rows {
        let d = PyDict::new(py);
        d.set_item("m", row.m)?;
        d.set_item("z", row.z)?;
        d.set_item("z_prime", row.z_prime)?;
        d.set_item("z_dblprime", row.z_dblprime)?;
        d.set_item("h_complex", fraction(py, &row.h_complex)?)?;
        d.set_item("h_prime", fraction(py, &row.h_prime)?)?;
        d.set_item("h_dblprime", fraction(py, &row.h_dblprime)?)?;
        d.set_item("lower_bound", row.lower_bound.clone())?;
        d.set_item("bound_holds", row.bound_holds)?;
        rows.append(d)?;
    }
    let out = PyDict::new(py);
    out.set_item("rows", rows)?;
    out.set_item("m_0", result.m0)?;
    out.set_item("truncated", result.truncated.clone())?;
    Ok(out.unbind().into())
}

#[pymodule]
fn hurwitz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cover>()?;
    m.add_function(wrap_pyfunction!(hurwitz_complex, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_real, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag_number, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag_exists, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bends, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(covers, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag_witness, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
