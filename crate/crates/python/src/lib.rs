use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tropfrac_core::certify::{check_optimality, check_unboundedness, Verdict};
use tropfrac_core::io::{
    format_entry, parse_certificate, parse_instance, serialize_certificate, serialize_instance, CertificateDocument,
    InstanceDocument,
};
use tropfrac_core::solver::{solve, solve_homogeneous, Method, Outcome, SolveOptions, SolveOutcome};
use tropfrac_core::spectral::{game_at, reconstruct, HomogeneousInstance};
use tropfrac_core::tropical::{parse_rational, ExtendedNumber, Rational};
use tropfrac_core::TropError;

fn err(e: TropError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strings(v: &[ExtendedNumber]) -> Vec<String> {
    v.iter().map(format_entry).collect()
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

/// A parsed instance document (original or homogeneous form).
#[pyclass(module = "tropfrac", frozen)]
struct Instance {
    doc: InstanceDocument,
    hom: HomogeneousInstance,
}

#[pymethods]
impl Instance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = parse_instance(text).map_err(err)?;
        let hom = doc.homogeneous().map_err(err)?;
        Ok(Instance { doc, hom })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{}: {}", path, e)))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        serialize_instance(&self.doc)
    }

    /// Number of constraints.
    #[getter]
    fn m(&self) -> usize {
        self.hom.m()
    }

    /// Number of variables, not counting the homogenizing one.
    #[getter]
    fn n(&self) -> usize {
        self.hom.n()
    }

    #[getter]
    fn maximize(&self) -> bool {
        self.doc.maximize
    }

    /// Exact value of the parametric game at a 1-based Min node.
    #[pyo3(signature = (lam = "0", node = None))]
    fn game_value(&self, lam: &str, node: Option<usize>) -> PyResult<String> {
        let n = self.hom.n() + 1;
        let j = node.unwrap_or(n);
        if j == 0 || j > n {
            return Err(PyValueError::new_err(format!("node {} is outside 1..={}", j, n)));
        }
        let game = game_at(&self.hom, &self.hom.to_scaled(&rational(lam)?)).map_err(err)?;
        let v = tropfrac_core::game::game_value(&game, j - 1).map_err(err)?;
        Ok(self.hom.from_scaled(&v).to_string())
    }

    /// Affine pieces (lo, hi, alpha, beta, k) of the spectral function.
    fn spectral(&self) -> PyResult<Vec<(String, String, String, u8, usize)>> {
        let pieces = reconstruct(&self.hom).map_err(err)?;
        Ok(pieces
            .iter()
            .map(|p| (format_entry(&p.lo), format_entry(&p.hi), p.alpha.to_string(), p.beta, p.k))
            .collect())
    }

    /// Checks a certificate document; returns (accepted, reason).
    fn check(&self, certificate: &str) -> PyResult<(bool, Option<String>)> {
        let cert = parse_certificate(certificate, &self.hom).map_err(err)?;
        let verdict = match &cert {
            CertificateDocument::Optimality(c) => check_optimality(&self.hom, c),
            CertificateDocument::Unboundedness(c) => check_unboundedness(&self.hom, c),
        }
        .map_err(err)?;
        Ok(match verdict {
            Verdict::Accept => (true, None),
            Verdict::Reject(r) => (false, Some(r.to_string())),
        })
    }

    fn __repr__(&self) -> String {
        format!("Instance(m={}, n={}, maximize={})", self.hom.m(), self.hom.n(), self.doc.maximize)
    }
}

#[pyclass(module = "tropfrac", frozen, get_all)]
struct SolveResult {
    /// "optimal", "unbounded" or "infeasible".
    status: String,
    lam: Option<String>,
    witness: Option<Vec<String>>,
    /// (lambda, phi, least solution) per iterate.
    trace: Vec<(String, Option<String>, Option<Vec<String>>)>,
    oracle_calls: u64,
    certificate: Option<String>,
    note: Option<String>,
}

#[pymethods]
impl SolveResult {
    fn __repr__(&self) -> String {
        match &self.lam {
            Some(l) => format!("SolveResult({} {})", self.status, l),
            None => format!("SolveResult({})", self.status),
        }
    }
}

fn to_result(out: SolveOutcome) -> SolveResult {
    let trace = out
        .trace
        .iter()
        .map(|t| (t.lambda.to_string(), t.phi.as_ref().map(|p| p.to_string()), t.least_solution.as_deref().map(strings)))
        .collect();
    let (lam, witness, certificate, note) = match &out.outcome {
        Outcome::Optimal { lambda, witness, certificate } => (
            Some(lambda.to_string()),
            Some(strings(witness)),
            Some(serialize_certificate(&CertificateDocument::Optimality(certificate.clone()))),
            None,
        ),
        Outcome::Unbounded { certificate } => (
            None,
            None,
            certificate.as_ref().map(|c| serialize_certificate(&CertificateDocument::Unboundedness(c.clone()))),
            None,
        ),
        Outcome::Infeasible { evidence } => (None, None, None, Some(evidence.clone())),
    };
    SolveResult {
        status: out.status().to_string(),
        lam,
        witness,
        trace,
        oracle_calls: out.oracle_calls,
        certificate,
        note,
    }
}

/// Minimizes the instance's ratio (or maximizes, as the document says).
#[pyfunction(name = "solve")]
#[pyo3(signature = (instance, method = "newton", lambda0 = None, record_phi = false))]
fn solve_instance(
    py: Python<'_>,
    instance: &Instance,
    method: &str,
    lambda0: Option<&str>,
    record_phi: bool,
) -> PyResult<SolveResult> {
    let method: Method = method.parse().map_err(err)?;
    let lambda0 = lambda0.map(rational).transpose()?;
    let opts = SolveOptions { method, lambda0, record_phi };
    let out = py
        .detach(|| match instance.doc.minimization() {
            Some(inst) => solve(&inst, &opts),
            None => solve_homogeneous(&instance.hom, &opts),
        })
        .map_err(err)?;
    Ok(to_result(out))
}

#[pymodule]
fn tropfrac(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(solve_instance, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
