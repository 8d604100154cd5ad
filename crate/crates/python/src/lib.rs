//! Python bindings. Results come back as plain dicts and lists with the same
//! shape as the command-line JSON payloads; integers inside those payloads
//! are decimal strings.

use ncgraded::coherence::{
    check_fil_rate, enumerate_quadratic_monomial, monomial_family, parse_family, rational_series_from_family,
    rproc_certificate, rproc_verify, verify_coherent_family, CertificateOutcome,
};
use ncgraded::format::parse_expression_list;
use ncgraded::hilbert::{associated_monomial, rational_series_monomial, TruncatedSeries};
use ncgraded::report;
use ncgraded::syzygy::{coherence_probe, solve_linear_equation, verify_syzygies, EquationInstance, ProbeConfig};
use ncgraded::{complete_two_sided, parse_presentation, GroebnerBasis, Presentation};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;
use serde_json::{json, Value};

fn err(e: ncgraded::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    let json = py.import("json")?;
    json.call_method1("loads", (v.to_string(),))
}

/// A presentation together with its Gröbner basis through a degree bound.
#[pyclass(module = "ncgraded", frozen)]
struct Algebra {
    p: Presentation,
    gb: GroebnerBasis,
    bound: u32,
}

#[pymethods]
impl Algebra {
    #[new]
    #[pyo3(signature = (text, bound = 10))]
    fn new(py: Python<'_>, text: &str, bound: u32) -> PyResult<Algebra> {
        let p = parse_presentation(text).map_err(err)?;
        let gb = py.detach(|| complete_two_sided(&p, bound)).map_err(err)?;
        Ok(Algebra { p, gb, bound })
    }

    #[getter]
    fn bound(&self) -> u32 {
        self.bound
    }

    #[getter]
    fn complete(&self) -> bool {
        self.gb.is_complete()
    }

    fn basis(&self) -> Vec<String> {
        self.gb.elements().iter().map(|e| self.p.format_poly(e)).collect()
    }

    fn leading_words(&self) -> Vec<String> {
        self.gb.leading_words().iter().map(|w| self.p.format_word(w)).collect()
    }

    /// Graded dimensions of the quotient in degrees `0..=max`.
    #[pyo3(signature = (max = None))]
    fn dimensions<'py>(&self, py: Python<'py>, max: Option<u32>) -> PyResult<Bound<'py, PyList>> {
        let dims = self.gb.dimensions(max.unwrap_or(self.bound)).map_err(err)?;
        let int = py.import("builtins")?.getattr("int")?;
        let items = dims
            .iter()
            .map(|d| int.call1((d.to_string(),)))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let p = self.p.poly(expr).map_err(err)?;
        Ok(self.p.format_poly(&self.gb.reduce(&p).map_err(err)?))
    }

    fn contains(&self, expr: &str) -> PyResult<bool> {
        let p = self.p.poly(expr).map_err(err)?;
        self.gb.contains(&p).map_err(err)
    }

    /// Generators of the solutions of `sum x_i a_i = 0` for comma separated
    /// coefficients `a_i`.
    fn solve<'py>(&self, py: Python<'py>, coeffs: &str) -> PyResult<Bound<'py, PyAny>> {
        let coefficients = parse_expression_list(&self.p, coeffs).map_err(err)?;
        if coefficients.is_empty() {
            return Err(PyValueError::new_err("at least one coefficient is needed"));
        }
        let eq = EquationInstance::over_algebra(&coefficients, self.bound);
        let (s, verified) = py
            .detach(|| {
                let s = solve_linear_equation(&eq, &self.gb)?;
                let ok = verify_syzygies(&eq, &s, &self.gb)?;
                Ok((s, ok))
            })
            .map_err(err)?;
        to_py(py, &report::syzygies(&self.p, &coefficients, &s, verified))
    }

    /// Truncated Hilbert series, plus its rational form when `exact`.
    #[pyo3(signature = (exact = false))]
    fn hilbert<'py>(&self, py: Python<'py>, exact: bool) -> PyResult<Bound<'py, PyAny>> {
        let t = TruncatedSeries::from_basis(&self.gb, self.bound).map_err(err)?;
        let mut out = json!({ "coefficients": report::truncated(&t) });
        if exact {
            let m = associated_monomial(&self.p, &self.gb).map_err(err)?;
            let r = rational_series_monomial(&m).map_err(err)?;
            out["rational"] = report::rational(&r);
        }
        to_py(py, &out)
    }

    /// Verify a coherent family given as text, or discover one for a
    /// quadratic monomial algebra when `spec` is omitted.
    #[pyo3(signature = (spec = None, series = false, fil_rate = false))]
    fn family<'py>(
        &self,
        py: Python<'py>,
        spec: Option<&str>,
        series: bool,
        fil_rate: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let family = match spec {
            Some(text) => parse_family(&self.p, text),
            None => monomial_family(&self.p),
        }
        .map_err(err)?;
        let verdict = verify_coherent_family(&family, &self.gb, self.bound).map_err(err)?;
        let mut out = json!({ "verdict": report::family(&family, &verdict) });
        if series && verdict.verified {
            let solved = rational_series_from_family(&family, &verdict, &self.gb).map_err(err)?;
            out["solve"] = report::family_solve(&family, &solved);
        }
        if fil_rate && verdict.verified {
            let recs = check_fil_rate(&family, &verdict, &self.gb, 3, self.bound).map_err(err)?;
            out["fil_rate"] = report::fil_rate(&family, &recs);
        }
        to_py(py, &out)
    }

    /// r-processing certificate, checked through the bound when possible.
    #[pyo3(signature = (r = None))]
    fn rproc<'py>(&self, py: Python<'py>, r: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        let mut cert = rproc_certificate(&self.gb).map_err(err)?;
        let check = r.or(match &cert {
            CertificateOutcome::Certified(c) => Some(c.r),
            CertificateOutcome::Refused { .. } => None,
        });
        let mut verification = Value::Null;
        if let Some(r) = check.filter(|r| self.bound >= r + 2) {
            let v = rproc_verify(&self.gb, r, self.bound).map_err(err)?;
            if let CertificateOutcome::Certified(c) = &mut cert {
                c.upgrade(&v);
            }
            verification = report::rproc_verdict(&self.p, &v);
        }
        to_py(
            py,
            &json!({ "certificate": report::certificate(&self.p, &cert), "verification": verification }),
        )
    }

    #[pyo3(signature = (degree = 2, samples = 8, seed = 0))]
    fn probe<'py>(&self, py: Python<'py>, degree: u32, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let mut config = ProbeConfig::new(degree, self.bound);
        config.samples = samples;
        config.seed = seed;
        let rep = py.detach(|| coherence_probe(&self.gb, &config)).map_err(err)?;
        to_py(py, &report::probe(&self.p, &rep))
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra({} generators, {} relations, bound {})",
            self.p.generator_count(),
            self.p.relations().len(),
            self.bound
        )
    }
}

/// All quadratic monomial algebras on `gens` generators and their series.
#[pyfunction]
#[pyo3(signature = (gens, bound = 12))]
fn enumerate_quadratic<'py>(py: Python<'py>, gens: usize, bound: u32) -> PyResult<Bound<'py, PyAny>> {
    let e = py.detach(|| enumerate_quadratic_monomial(gens, bound)).map_err(err)?;
    to_py(py, &report::quadratic(&e))
}

#[pymodule]
#[pyo3(name = "ncgraded")]
fn ncgraded_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA", report::SCHEMA)?;
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(enumerate_quadratic, m)?)?;
    Ok(())
}
