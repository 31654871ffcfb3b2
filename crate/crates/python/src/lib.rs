//! Python bindings. Numbers may be passed as `int`, `str` (`"3/7"`, `"1.05"`)
//! or `fractions.Fraction`; exact results come back as `Fraction`.

use cdss::flowgraph::{build_gstar, min_cut};
use cdss::lrc::{alpha_msr_zero, irc_lrc_params, lrc_bound_check};
use cdss::oracle::brute_force_capacity;
use cdss::tradeoff::{beta_c_star, gamma_star, mbr_point, msr_point, tradeoff_curve, Threshold};
use cdss::{Rational, ResourcePoint, SystemParams};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: cdss::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = v.str()?.to_string();
    text.parse().map_err(value_error)
}

fn to_fraction(py: Python<'_>, v: Rational) -> PyResult<Py<PyAny>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    Ok(fraction.call1((v.numer(), v.denom()))?.unbind())
}

fn threshold(py: Python<'_>, t: Threshold) -> PyResult<Option<Py<PyAny>>> {
    t.value().map(|v| to_fraction(py, v)).transpose()
}

/// A clustered storage system with `n` nodes in `L` equal clusters, any `k`
/// of which recover the file.
#[pyclass(name = "System", frozen)]
struct PySystem {
    inner: SystemParams,
}

impl PySystem {
    fn resources(&self, alpha: &Bound<'_, PyAny>, beta_i: &Bound<'_, PyAny>, beta_c: &Bound<'_, PyAny>) -> PyResult<ResourcePoint> {
        ResourcePoint::new(&self.inner, to_rational(alpha)?, to_rational(beta_i)?, to_rational(beta_c)?)
            .map_err(value_error)
    }
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (n, k, clusters))]
    fn new(n: u32, k: u32, clusters: u32) -> PyResult<Self> {
        SystemParams::new(n, k, clusters)
            .map(|inner| PySystem { inner })
            .map_err(value_error)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn clusters(&self) -> u32 {
        self.inner.clusters
    }

    #[getter]
    fn nodes_per_cluster(&self) -> u32 {
        self.inner.nodes_per_cluster
    }

    fn __repr__(&self) -> String {
        format!("System(n={}, k={}, clusters={})", self.inner.n, self.inner.k, self.inner.clusters)
    }

    /// Capacity for storage `alpha` and per-helper bandwidths `beta_i`, `beta_c`.
    fn capacity(
        &self,
        py: Python<'_>,
        alpha: &Bound<'_, PyAny>,
        beta_i: &Bound<'_, PyAny>,
        beta_c: &Bound<'_, PyAny>,
    ) -> PyResult<Py<PyAny>> {
        let r = self.resources(alpha, beta_i, beta_c)?;
        to_fraction(py, cdss::capacity(&self.inner, &r).total)
    }

    /// Per-step terms of the capacity sum.
    fn capacity_terms(
        &self,
        py: Python<'_>,
        alpha: &Bound<'_, PyAny>,
        beta_i: &Bound<'_, PyAny>,
        beta_c: &Bound<'_, PyAny>,
    ) -> PyResult<Vec<Py<PyAny>>> {
        let r = self.resources(alpha, beta_i, beta_c)?;
        cdss::capacity(&self.inner, &r)
            .terms
            .into_iter()
            .map(|t| to_fraction(py, t))
            .collect()
    }

    /// Capacity for storage `alpha`, total repair bandwidth `gamma` and
    /// `epsilon = beta_c / beta_i`.
    fn capacity_gamma(
        &self,
        py: Python<'_>,
        alpha: &Bound<'_, PyAny>,
        gamma: &Bound<'_, PyAny>,
        epsilon: &Bound<'_, PyAny>,
    ) -> PyResult<Py<PyAny>> {
        let c = cdss::capacity_gamma_form(&self.inner, to_rational(alpha)?, to_rational(gamma)?, to_rational(epsilon)?)
            .map_err(value_error)?;
        to_fraction(py, c.total)
    }

    /// Capacity by exhaustive search over collector choices and orderings.
    fn brute_force_capacity(
        &self,
        py: Python<'_>,
        alpha: &Bound<'_, PyAny>,
        beta_i: &Bound<'_, PyAny>,
        beta_c: &Bound<'_, PyAny>,
    ) -> PyResult<Py<PyAny>> {
        let r = self.resources(alpha, beta_i, beta_c)?;
        let b = brute_force_capacity(&self.inner, &r).map_err(value_error)?;
        to_fraction(py, b.capacity)
    }

    /// Min-cut of the capacity-attaining information flow graph.
    fn min_cut(
        &self,
        py: Python<'_>,
        alpha: &Bound<'_, PyAny>,
        beta_i: &Bound<'_, PyAny>,
        beta_c: &Bound<'_, PyAny>,
    ) -> PyResult<Option<Py<PyAny>>> {
        let r = self.resources(alpha, beta_i, beta_c)?;
        min_cut(&build_gstar(&self.inner, &r))
            .value
            .finite()
            .map(|v| to_fraction(py, v))
            .transpose()
    }

    /// Text dump of the capacity-attaining graph.
    fn graph_dump(&self, alpha: &Bound<'_, PyAny>, beta_i: &Bound<'_, PyAny>, beta_c: &Bound<'_, PyAny>) -> PyResult<String> {
        let r = self.resources(alpha, beta_i, beta_c)?;
        Ok(build_gstar(&self.inner, &r).dump())
    }

    /// Least total repair bandwidth storing `file_size` at storage `alpha`,
    /// or `None` when infeasible.
    fn gamma_star(
        &self,
        py: Python<'_>,
        epsilon: &Bound<'_, PyAny>,
        alpha: &Bound<'_, PyAny>,
        file_size: &Bound<'_, PyAny>,
    ) -> PyResult<Option<Py<PyAny>>> {
        let t = gamma_star(&self.inner, to_rational(epsilon)?, to_rational(alpha)?, to_rational(file_size)?)
            .map_err(value_error)?;
        threshold(py, t)
    }

    /// Least cross-cluster bandwidth when intra-cluster helpers send `alpha`.
    fn beta_c_star(&self, py: Python<'_>, file_size: &Bound<'_, PyAny>, alpha: &Bound<'_, PyAny>) -> PyResult<Option<Py<PyAny>>> {
        let t = beta_c_star(&self.inner, to_rational(file_size)?, to_rational(alpha)?).map_err(value_error)?;
        threshold(py, t)
    }

    /// `(alpha, gamma)` at the left end of every segment of the tradeoff curve.
    fn tradeoff_breakpoints(
        &self,
        py: Python<'_>,
        epsilon: &Bound<'_, PyAny>,
        file_size: &Bound<'_, PyAny>,
    ) -> PyResult<Vec<(Py<PyAny>, Py<PyAny>)>> {
        let curve = tradeoff_curve(&self.inner, to_rational(epsilon)?, to_rational(file_size)?).map_err(value_error)?;
        curve
            .breakpoints()
            .into_iter()
            .map(|(a, g)| Ok((to_fraction(py, a)?, to_fraction(py, g)?)))
            .collect()
    }

    /// Minimum-storage point `(alpha, gamma)`.
    fn msr_point(&self, py: Python<'_>, epsilon: &Bound<'_, PyAny>, file_size: &Bound<'_, PyAny>) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
        let pt = msr_point(&self.inner, to_rational(epsilon)?, to_rational(file_size)?).map_err(value_error)?;
        Ok((to_fraction(py, pt.alpha)?, to_fraction(py, pt.gamma)?))
    }

    /// Minimum-bandwidth point `(alpha, gamma)`.
    fn mbr_point(&self, py: Python<'_>, epsilon: &Bound<'_, PyAny>, file_size: &Bound<'_, PyAny>) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
        let pt = mbr_point(&self.inner, to_rational(epsilon)?, to_rational(file_size)?).map_err(value_error)?;
        Ok((to_fraction(py, pt.alpha)?, to_fraction(py, pt.gamma)?))
    }

    /// Locality/distance bound check; `alpha` defaults to the least storage
    /// allowing zero cross-cluster traffic.
    #[pyo3(signature = (file_size, alpha = None))]
    fn lrc_check<'py>(
        &self,
        py: Python<'py>,
        file_size: &Bound<'py, PyAny>,
        alpha: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let m = to_rational(file_size)?;
        let alpha = match alpha {
            Some(a) => to_rational(a)?,
            None => alpha_msr_zero(&self.inner, m),
        };
        let params = irc_lrc_params(&self.inner, m, alpha).map_err(value_error)?;
        let rep = lrc_bound_check(&params);
        let d = PyDict::new(py);
        d.set_item("alpha", to_fraction(py, alpha)?)?;
        d.set_item("locality", params.l0)?;
        d.set_item("distance", params.m0)?;
        d.set_item("rhs", rep.rhs)?;
        d.set_item("slack", rep.slack)?;
        d.set_item("equality", rep.equality)?;
        Ok(d)
    }
}

/// Capacity of a system without clusters: `sum min(alpha, (n-i) beta)`.
#[pyfunction]
fn unclustered_capacity(py: Python<'_>, n: u32, k: u32, alpha: &Bound<'_, PyAny>, beta: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    to_fraction(py, cdss::capacity::unclustered_capacity(n, k, to_rational(alpha)?, to_rational(beta)?))
}

#[pymodule(name = "cdss")]
fn cdss_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(unclustered_capacity, m)?)?;
    Ok(())
}
