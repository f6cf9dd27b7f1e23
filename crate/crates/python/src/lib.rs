//! Python bindings: `import heisloc`.
//!
//! Exact rationals cross the boundary as strings (`"-3/2"`), complex numbers as
//! Python `complex`, reports as JSON text.

use heisloc_core::estimate::coercivity::{coercivity_constant, CoercivityStatus};
use heisloc_core::estimate::cutoff::{cutoff_bound_check, cutoff_build, BoundConfig, Cutoff as CoreCutoff, CutoffParams};
use heisloc_core::estimate::nesting;
use heisloc_core::localization::{self, residual_structure_check};
use heisloc_core::report::render_named;
use heisloc_core::suite::{run_suite, SuiteConfig};
use heisloc_core::{scalar, Base, Generator, LocSign, MultiIndex, OperatorExpr, Scalar, Sigma, SignConvention};
use num_complex::Complex64;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;

fn err(e: heisloc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(name: &str, s: &str) -> PyResult<Scalar> {
    scalar::parse(s).ok_or_else(|| PyValueError::new_err(format!("{name}: cannot parse rational `{s}`")))
}

/// `"L2"`, `"Lb1"` or `"T"`.
fn parse_generator(s: &str, rank: usize) -> PyResult<Generator> {
    let g = if s == "T" {
        Generator::t()
    } else if let Some(i) = s.strip_prefix("Lb") {
        Generator::lbar(i.parse().map_err(|_| PyValueError::new_err(format!("bad generator `{s}`")))?)
    } else if let Some(i) = s.strip_prefix('L') {
        Generator::l(i.parse().map_err(|_| PyValueError::new_err(format!("bad generator `{s}`")))?)
    } else {
        return Err(PyValueError::new_err(format!("bad generator `{s}` (L<j>, Lb<j> or T)")));
    };
    g.validate(rank).map_err(err)?;
    Ok(g)
}

#[pyclass(name = "SignConvention", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PyConvention {
    inner: SignConvention,
}

#[pymethods]
impl PyConvention {
    #[new]
    #[pyo3(signature = (sigma = 1, loc_sign = "beta"))]
    fn new(sigma: i64, loc_sign: &str) -> PyResult<Self> {
        let sigma = Sigma::from_value(sigma).map_err(err)?;
        let loc_sign = match loc_sign {
            "alpha" => LocSign::Alpha,
            "beta" => LocSign::Beta,
            other => return Err(PyValueError::new_err(format!("loc_sign must be alpha or beta, got `{other}`"))),
        };
        Ok(PyConvention { inner: SignConvention::new(sigma, loc_sign) })
    }

    #[staticmethod]
    fn all() -> Vec<PyConvention> {
        SignConvention::all().into_iter().map(|inner| PyConvention { inner }).collect()
    }

    #[getter]
    fn sigma(&self) -> i64 {
        self.inner.sigma.value()
    }

    #[getter]
    fn loc_sign(&self) -> &'static str {
        match self.inner.loc_sign {
            LocSign::Alpha => "alpha",
            LocSign::Beta => "beta",
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignConvention(sigma={}, loc_sign='{}')", self.sigma(), self.loc_sign())
    }
}

/// Normal-ordered operator with jet coefficients, tied to one sign convention.
#[pyclass(name = "Expr", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyExpr {
    inner: OperatorExpr,
    conv: SignConvention,
}

impl PyExpr {
    fn wrap(&self, inner: OperatorExpr) -> PyExpr {
        PyExpr { inner, conv: self.conv }
    }

    fn same_conv(&self, other: &PyExpr) -> PyResult<()> {
        if self.conv == other.conv {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("convention mismatch: {} vs {}", self.conv, other.conv)))
        }
    }
}

#[pymethods]
impl PyExpr {
    #[staticmethod]
    #[pyo3(signature = (rank, conv = None))]
    fn zero(rank: usize, conv: Option<PyConvention>) -> PyResult<Self> {
        let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
        Ok(PyExpr { inner: OperatorExpr::zero(rank).map_err(err)?, conv })
    }

    #[staticmethod]
    #[pyo3(signature = (rank, conv = None))]
    fn one(rank: usize, conv: Option<PyConvention>) -> PyResult<Self> {
        let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
        Ok(PyExpr { inner: OperatorExpr::one(rank).map_err(err)?, conv })
    }

    /// Product of generators, e.g. `Expr.word(["Lb1", "L1"], 2)`.
    #[staticmethod]
    #[pyo3(signature = (letters, rank, conv = None))]
    fn word(letters: Vec<String>, rank: usize, conv: Option<PyConvention>) -> PyResult<Self> {
        let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
        let gens = letters.iter().map(|s| parse_generator(s, rank)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyExpr { inner: OperatorExpr::word(&gens, rank, conv).map_err(err)?, conv })
    }

    #[staticmethod]
    #[pyo3(signature = (name, rank, conv = None))]
    fn generator(name: &str, rank: usize, conv: Option<PyConvention>) -> PyResult<Self> {
        Self::word(vec![name.to_string()], rank, conv)
    }

    /// Multiplication by the cutoff function `Ψ`.
    #[staticmethod]
    #[pyo3(signature = (rank, conv = None))]
    fn cutoff(rank: usize, conv: Option<PyConvention>) -> PyResult<Self> {
        let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
        Ok(PyExpr { inner: OperatorExpr::cutoff(Base(0), rank).map_err(err)?, conv })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn convention(&self) -> PyConvention {
        PyConvention { inner: self.conv }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_weights(&self) -> Vec<u32> {
        self.inner.total_weights()
    }

    /// Terms as strings, in canonical order.
    fn terms(&self) -> Vec<String> {
        self.inner.terms().map(|t| t.to_string()).collect()
    }

    fn commutator(&self, other: &PyExpr) -> PyResult<Self> {
        self.same_conv(other)?;
        Ok(self.wrap(self.inner.commutator(&other.inner, self.conv).map_err(err)?))
    }

    fn adjoint(&self) -> PyResult<Self> {
        Ok(self.wrap(self.inner.adjoint(self.conv).map_err(err)?))
    }

    fn __add__(&self, other: &PyExpr) -> PyResult<Self> {
        self.same_conv(other)?;
        Ok(self.wrap(self.inner.add(&other.inner).map_err(err)?))
    }

    fn __sub__(&self, other: &PyExpr) -> PyResult<Self> {
        self.same_conv(other)?;
        Ok(self.wrap(self.inner.sub(&other.inner).map_err(err)?))
    }

    fn __neg__(&self) -> Self {
        self.wrap(self.inner.neg())
    }

    /// `Expr * Expr` composes; `Expr * int` or `Expr * "p/q"` scales.
    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(e) = other.extract::<PyExpr>() {
            self.same_conv(&e)?;
            return Ok(self.wrap(self.inner.mul(&e.inner, self.conv).map_err(err)?));
        }
        if let Ok(n) = other.extract::<i64>() {
            return Ok(self.wrap(self.inner.scale(&scalar::int(n))));
        }
        if let Ok(s) = other.extract::<String>() {
            return Ok(self.wrap(self.inner.scale(&rational("scale", &s)?)));
        }
        Err(PyTypeError::new_err("multiply by Expr, int or a rational string"))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if other.extract::<PyExpr>().is_ok() {
            return Err(PyTypeError::new_err("unsupported operand"));
        }
        self.__mul__(other)
    }

    fn __eq__(&self, other: &PyExpr) -> bool {
        self.conv == other.conv && self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({})", self.inner)
    }
}

/// `(T^p)_Ψ` in `rank` complex directions.
#[pyfunction]
#[pyo3(signature = (p, rank, conv = None))]
fn localized_t_power(p: u32, rank: usize, conv: Option<PyConvention>) -> PyResult<PyExpr> {
    let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
    let lp = localization::build_localized_t_power(p, Base(0), rank, conv).map_err(err)?;
    Ok(PyExpr { inner: lp.expr, conv })
}

#[pyclass(name = "Split", frozen, get_all)]
pub struct PySplit {
    commutator: PyExpr,
    principal: PyExpr,
    residual: PyExpr,
    structure_ok: bool,
    k_p: f64,
    offending: Vec<String>,
}

/// `[g, (T^p)_Ψ]` split into principal part and residual, with the shape check.
#[pyfunction]
#[pyo3(signature = (generator, p, rank, conv = None))]
fn split(generator: &str, p: u32, rank: usize, conv: Option<PyConvention>) -> PyResult<PySplit> {
    let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
    let g = parse_generator(generator, rank)?;
    let lp = localization::build_localized_t_power(p, Base(0), rank, conv).map_err(err)?;
    let s = localization::principal_residual_split(g, &lp).map_err(err)?;
    let check = residual_structure_check(&s.residual, p);
    let w = |inner| PyExpr { inner, conv };
    Ok(PySplit {
        commutator: w(s.commutator),
        principal: w(s.principal),
        residual: w(s.residual),
        structure_ok: check.pass,
        k_p: check.k_p,
        offending: check.offending,
    })
}

/// `{convention label: {check label: passed}}` and the passing conventions.
#[pyfunction]
fn convention_search(p_max: u32, rank: usize) -> PyResult<(Vec<(String, Vec<(String, bool)>)>, Vec<PyConvention>)> {
    let s = localization::convention_search(p_max, rank).map_err(err)?;
    let rows = s.rows.iter().map(|r| (r.conv.to_string(), r.checks.clone())).collect();
    let passing = s.passing().into_iter().map(|inner| PyConvention { inner }).collect();
    Ok((rows, passing))
}

/// Whether `[L̄^α, L^α]` matches the closed-form expansion.
#[pyfunction]
#[pyo3(signature = (alpha, conv = None))]
fn alpha_commutator_holds(alpha: Vec<u32>, conv: Option<PyConvention>) -> PyResult<bool> {
    let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
    let o = localization::alpha_commutator_check(&MultiIndex::from_vec(alpha), conv).map_err(err)?;
    Ok(o.equal)
}

/// Coefficient of `Ψ L̄^s T` in `[L L̄, Ψ L̄^s]`, as an exact rational string.
#[pyfunction]
#[pyo3(signature = (s, conv = None))]
fn lbar_power_coefficient(s: u32, conv: Option<PyConvention>) -> PyResult<String> {
    let conv = conv.map_or_else(SignConvention::default, |c| c.inner);
    let o = localization::section5_coefficient_check(s, conv).map_err(err)?;
    Ok(o.coefficient.to_string())
}

/// `(constant, status)` for `□_b + c`; status is `"ok"` or `"degenerate"`.
#[pyfunction]
fn coercivity(c: Complex64) -> PyResult<(f64, &'static str)> {
    let r = coercivity_constant(c).map_err(err)?;
    let status = match r.status {
        CoercivityStatus::Ok => "ok",
        CoercivityStatus::Degenerate => "degenerate",
    };
    Ok((r.constant, status))
}

/// Exact spline cutoff `Ψ_N`, equal to 1 on `[-r, r]`.
#[pyclass(name = "Cutoff", frozen)]
pub struct PyCutoff {
    inner: CoreCutoff,
}

#[pymethods]
impl PyCutoff {
    #[new]
    #[pyo3(signature = (n, d = "1/2", r = "1", factor = 3))]
    fn new(n: u32, d: &str, r: &str, factor: u32) -> PyResult<Self> {
        let mut params = CutoffParams::new(n, rational("d", d)?, rational("r", r)?);
        params.factor = factor;
        Ok(PyCutoff { inner: cutoff_build(params).map_err(err)? })
    }

    #[getter]
    fn max_order(&self) -> u32 {
        self.inner.params.max_classical_order()
    }

    #[getter]
    fn support(&self) -> (f64, f64) {
        let (a, b) = self.inner.psi.support();
        (scalar::to_f64(&a), scalar::to_f64(&b))
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.psi.eval_f64(x)
    }

    /// Exact value at a rational point, as a string.
    fn exact(&self, x: &str) -> PyResult<String> {
        Ok(self.inner.psi.eval(&rational("x", x)?).to_string())
    }

    /// `(C_emp, pass, [(k, sup upper bound, ceiling)])`.
    #[pyo3(signature = (k_max = None, c_budget = 12.0, method = "roots"))]
    fn bounds(&self, k_max: Option<u32>, c_budget: f64, method: &str) -> PyResult<(f64, bool, Vec<(u32, f64, f64)>)> {
        let cfg = BoundConfig { c_budget, method: method.parse().map_err(err)? };
        let k_max = k_max.unwrap_or_else(|| self.inner.params.max_classical_order());
        let rep = cutoff_bound_check(&self.inner, k_max, &cfg).map_err(err)?;
        let sups = rep.sups.iter().map(|s| (s.k, s.upper, s.ceiling)).collect();
        Ok((rep.c_emp, rep.pass, sups))
    }
}

/// `(levels as strings, sum of levels as string, minimal C)`.
#[pyfunction]
fn nesting_schedule(p: u64) -> PyResult<(Vec<String>, String, f64)> {
    let s = nesting::nesting_schedule(p).map_err(err)?;
    Ok((s.levels.iter().map(|d| d.to_string()).collect(), s.sum_d.to_string(), s.minimal_c))
}

/// `(rate, pass)` with rate `A(p)^{1/p}` compared against `32 C0`.
#[pyfunction]
#[pyo3(signature = (p, c0 = 1.0))]
fn growth_audit(p: u64, c0: f64) -> PyResult<(f64, bool)> {
    let s = nesting::nesting_schedule(p).map_err(err)?;
    let g = nesting::growth_audit(p, c0, &s).map_err(err)?;
    Ok((g.rate, g.pass))
}

/// Runs a suite subset and returns the rendered report (`json` or `markdown`).
#[pyfunction]
#[pyo3(signature = (subset = "all", p_max = None, n_minus1 = None, cutoff_n_max = None, c_list = None, seed = None, instances = None, format = "json"))]
#[allow(clippy::too_many_arguments)]
fn verify(
    subset: &str,
    p_max: Option<u32>,
    n_minus1: Option<usize>,
    cutoff_n_max: Option<u32>,
    c_list: Option<Vec<Complex64>>,
    seed: Option<u64>,
    instances: Option<usize>,
    format: &str,
) -> PyResult<String> {
    let mut cfg = SuiteConfig::default();
    if let Some(v) = p_max {
        cfg.p_max = v;
    }
    if let Some(v) = n_minus1 {
        cfg.n_minus1 = v;
    }
    if let Some(v) = cutoff_n_max {
        cfg.cutoff_n_max = v;
    }
    if let Some(v) = c_list {
        cfg.c_list = v;
    }
    if let Some(v) = seed {
        cfg.seed = v;
    }
    if let Some(v) = instances {
        cfg.property_instances = v;
    }
    let reports = run_suite(&cfg, subset.parse().map_err(err)?).map_err(err)?;
    render_named(&reports, format).map_err(err)
}

#[pymodule]
mod heisloc {
    #[pymodule_export]
    use super::{
        alpha_commutator_holds, coercivity, convention_search, growth_audit, localized_t_power, nesting_schedule,
        lbar_power_coefficient, split, verify, PyConvention, PyCutoff, PyExpr, PySplit,
    };
}
