//! JSON instance and certificate documents, plus the text reports printed by
//! the command-line tool.
//!
//! Entries are JSON integers, rational strings ("-3/4", "2.5") or "-inf".
//! Strategies are 1-based successor arrays.

use serde_json::{Map, Value};

use crate::certify::{OptimalityCertificate, UnboundednessCertificate};
use crate::error::{Result, TropError};
use crate::game::{MaxStrategy, MinStrategy};
use crate::solver::{Method, Outcome, SolveOutcome};
use crate::spectral::{HomogeneousInstance, LfpInstance, SpectralPiece};
use crate::tropical::{parse_rational, ExtendedNumber, Rational, Semiring, TropMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousParts {
    pub c: TropMatrix,
    pub d: TropMatrix,
    pub u: Vec<ExtendedNumber>,
    pub v: Vec<ExtendedNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceForm {
    Original(LfpInstance),
    Homogeneous(HomogeneousParts),
}

/// An instance as written in the file; maximization is applied on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub form: InstanceForm,
    pub maximize: bool,
}

impl InstanceDocument {
    /// The minimization the solver works on. Maximizing a ratio is minimizing
    /// its inverse, so numerator and denominator trade places.
    pub fn minimization(&self) -> Option<LfpInstance> {
        match &self.form {
            InstanceForm::Original(inst) if self.maximize => Some(inst.clone().dualized()),
            InstanceForm::Original(inst) => Some(inst.clone()),
            InstanceForm::Homogeneous(_) => None,
        }
    }

    pub fn homogeneous(&self) -> Result<HomogeneousInstance> {
        match &self.form {
            InstanceForm::Original(_) => crate::spectral::homogenize(&self.minimization().expect("original form")),
            InstanceForm::Homogeneous(p) => {
                let (u, v) = if self.maximize { (&p.v, &p.u) } else { (&p.u, &p.v) };
                HomogeneousInstance::new(p.c.clone(), p.d.clone(), u.clone(), v.clone())
            }
        }
    }
}

fn syntax(e: serde_json::Error) -> TropError {
    TropError::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
}

fn field_err(path: &str, why: impl std::fmt::Display) -> TropError {
    TropError::Parse(format!("field {}: {}", path, why))
}

fn entry(v: &Value, path: &str) -> Result<ExtendedNumber> {
    match v {
        Value::Number(num) => {
            let text = num.to_string();
            parse_rational(&text).map(ExtendedNumber::Finite).map_err(|_| field_err(path, format!("{} is not exact", text)))
        }
        Value::String(s) if s.trim() == "-inf" => Ok(ExtendedNumber::NegInf),
        Value::String(s) => {
            parse_rational(s).map(ExtendedNumber::Finite).map_err(|_| field_err(path, format!("{:?} is not a rational or \"-inf\"", s)))
        }
        other => Err(field_err(path, format!("expected a number or \"-inf\", found {}", other))),
    }
}

fn vector(obj: &Map<String, Value>, key: &str, len: Option<usize>) -> Result<Vec<ExtendedNumber>> {
    let v = obj.get(key).ok_or_else(|| field_err(key, "missing"))?;
    let arr = v.as_array().ok_or_else(|| field_err(key, "expected an array"))?;
    if let Some(l) = len {
        if arr.len() != l {
            return Err(field_err(key, format!("has {} entries, expected {}", arr.len(), l)));
        }
    }
    arr.iter().enumerate().map(|(i, x)| entry(x, &format!("{}[{}]", key, i + 1))).collect()
}

fn matrix(obj: &Map<String, Value>, key: &str, rows: Option<usize>, cols: usize) -> Result<TropMatrix> {
    let v = obj.get(key).ok_or_else(|| field_err(key, "missing"))?;
    let arr = v.as_array().ok_or_else(|| field_err(key, "expected an array of rows"))?;
    if let Some(r) = rows {
        if arr.len() != r {
            return Err(field_err(key, format!("has {} rows, expected {}", arr.len(), r)));
        }
    }
    let mut entries = Vec::with_capacity(arr.len() * cols);
    for (i, row) in arr.iter().enumerate() {
        let path = format!("{}[{}]", key, i + 1);
        let r = row.as_array().ok_or_else(|| field_err(&path, "expected an array"))?;
        if r.len() != cols {
            return Err(field_err(&path, format!("has {} entries, expected {}", r.len(), cols)));
        }
        for (j, x) in r.iter().enumerate() {
            entries.push(entry(x, &format!("{}[{}][{}]", key, i + 1, j + 1))?);
        }
    }
    TropMatrix::new(arr.len(), cols, entries, Semiring::MaxPlus)
}

fn scalar(obj: &Map<String, Value>, key: &str) -> Result<ExtendedNumber> {
    entry(obj.get(key).ok_or_else(|| field_err(key, "missing"))?, key)
}

fn array_len(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_array)
        .map(Vec::len)
        .ok_or_else(|| field_err(key, "missing or not an array"))
}

pub fn parse_instance(text: &str) -> Result<InstanceDocument> {
    let root: Value = serde_json::from_str(text).map_err(syntax)?;
    let obj = root.as_object().ok_or_else(|| TropError::Parse("instance must be a JSON object".into()))?;
    let maximize = match obj.get("objective") {
        None => false,
        Some(Value::String(s)) if s == "minimize" => false,
        Some(Value::String(s)) if s == "maximize" => true,
        Some(other) => return Err(field_err("objective", format!("expected \"minimize\" or \"maximize\", found {}", other))),
    };
    let form = if obj.contains_key("C") {
        let n1 = array_len(obj, "u")?;
        let c = matrix(obj, "C", None, n1)?;
        let d = matrix(obj, "D", Some(c.rows()), n1)?;
        let u = vector(obj, "u", Some(n1))?;
        let v = vector(obj, "v", Some(n1))?;
        InstanceForm::Homogeneous(HomogeneousParts { c, d, u, v })
    } else if obj.contains_key("A") {
        let n = array_len(obj, "p")?;
        let a = matrix(obj, "A", None, n)?;
        let m = a.rows();
        let b = matrix(obj, "B", Some(m), n)?;
        let c = vector(obj, "c", Some(m))?;
        let d = vector(obj, "d", Some(m))?;
        let p = vector(obj, "p", Some(n))?;
        let q = vector(obj, "q", Some(n))?;
        let r = scalar(obj, "r")?;
        let s = scalar(obj, "s")?;
        InstanceForm::Original(LfpInstance { a, b, c, d, p, q, r, s })
    } else {
        return Err(TropError::Parse("instance needs either A,B,c,d,p,q,r,s or C,D,u,v".into()));
    };
    Ok(InstanceDocument { form, maximize })
}

/// Canonical text for an exact value: "-inf", an integer, or "p/q".
pub fn format_entry(e: &ExtendedNumber) -> String {
    match e {
        ExtendedNumber::NegInf => "-inf".into(),
        ExtendedNumber::PosInf => "+inf".into(),
        ExtendedNumber::Finite(r) => r.to_string(),
    }
}

fn entry_json(e: &ExtendedNumber) -> String {
    match e {
        ExtendedNumber::Finite(r) if r.is_integer() => r.to_string(),
        other => format!("\"{}\"", format_entry(other)),
    }
}

fn row_json(row: &[ExtendedNumber]) -> String {
    format!("[{}]", row.iter().map(entry_json).collect::<Vec<_>>().join(", "))
}

fn matrix_json(t: &TropMatrix) -> String {
    if t.rows() == 0 {
        return "[]".into();
    }
    let rows: Vec<String> = (0..t.rows()).map(|i| format!("    {}", row_json(t.row(i)))).collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

pub fn serialize_instance(doc: &InstanceDocument) -> String {
    let mut fields: Vec<(String, String)> = Vec::new();
    if doc.maximize {
        fields.push(("objective".into(), "\"maximize\"".into()));
    }
    match &doc.form {
        InstanceForm::Original(i) => {
            fields.push(("A".into(), matrix_json(&i.a)));
            fields.push(("B".into(), matrix_json(&i.b)));
            fields.push(("c".into(), row_json(&i.c)));
            fields.push(("d".into(), row_json(&i.d)));
            fields.push(("p".into(), row_json(&i.p)));
            fields.push(("q".into(), row_json(&i.q)));
            fields.push(("r".into(), entry_json(&i.r)));
            fields.push(("s".into(), entry_json(&i.s)));
        }
        InstanceForm::Homogeneous(p) => {
            fields.push(("C".into(), matrix_json(&p.c)));
            fields.push(("D".into(), matrix_json(&p.d)));
            fields.push(("u".into(), row_json(&p.u)));
            fields.push(("v".into(), row_json(&p.v)));
        }
    }
    let body: Vec<String> = fields.into_iter().map(|(k, v)| format!("  \"{}\": {}", k, v)).collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateDocument {
    Optimality(OptimalityCertificate),
    Unboundedness(UnboundednessCertificate),
}

fn strategy(obj: &Map<String, Value>, key: &str, len: usize, range: usize) -> Result<Vec<usize>> {
    let arr = obj
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| field_err(key, "missing or not an array"))?;
    if arr.len() != len {
        return Err(TropError::DimensionMismatch(format!("{} has {} entries, expected {}", key, arr.len(), len)));
    }
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            let k = v.as_u64().ok_or_else(|| field_err(&format!("{}[{}]", key, i + 1), "expected a positive integer"))?;
            if k == 0 || k as usize > range {
                return Err(TropError::DimensionMismatch(format!("{}[{}] = {} is outside 1..={}", key, i + 1, k, range)));
            }
            Ok(k as usize - 1)
        })
        .collect()
}

/// Parses a certificate for `h`; array lengths must match its dimensions.
pub fn parse_certificate(text: &str, h: &HomogeneousInstance) -> Result<CertificateDocument> {
    let root: Value = serde_json::from_str(text).map_err(syntax)?;
    let obj = root.as_object().ok_or_else(|| TropError::Parse("certificate must be a JSON object".into()))?;
    let (m, n) = (h.m(), h.n());
    match obj.get("type").and_then(Value::as_str) {
        Some("optimality") => {
            let lambda = match obj.get("lambda") {
                Some(Value::String(s)) => parse_rational(s).map_err(|e| field_err("lambda", e))?,
                Some(Value::Number(x)) => parse_rational(&x.to_string()).map_err(|e| field_err("lambda", e))?,
                _ => return Err(field_err("lambda", "missing or not a rational")),
            };
            let tau = MinStrategy(strategy(obj, "tau", n + 1, m + 1)?);
            let witness = match obj.get("witness") {
                None | Some(Value::Null) => None,
                Some(_) => {
                    let w = vector(obj, "witness", None)?;
                    if w.len() != n + 1 {
                        return Err(TropError::DimensionMismatch(format!(
                            "witness has {} entries, expected {}",
                            w.len(),
                            n + 1
                        )));
                    }
                    Some(w)
                }
            };
            Ok(CertificateDocument::Optimality(OptimalityCertificate { lambda, tau, witness }))
        }
        Some("unboundedness") => {
            let sigma = MaxStrategy(strategy(obj, "sigma", m + 1, n + 1)?);
            Ok(CertificateDocument::Unboundedness(UnboundednessCertificate { sigma }))
        }
        _ => Err(field_err("type", "expected \"optimality\" or \"unboundedness\"")),
    }
}

fn one_based(s: &[usize]) -> String {
    format!("[{}]", s.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(", "))
}

pub fn serialize_certificate(cert: &CertificateDocument) -> String {
    match cert {
        CertificateDocument::Optimality(c) => {
            let mut out = format!(
                "{{\n  \"type\": \"optimality\",\n  \"lambda\": \"{}\",\n  \"tau\": {}",
                c.lambda,
                one_based(&c.tau.0)
            );
            if let Some(w) = &c.witness {
                let parts: Vec<String> = w.iter().map(|e| format!("\"{}\"", format_entry(e))).collect();
                out.push_str(&format!(",\n  \"witness\": [{}]", parts.join(", ")));
            }
            out.push_str("\n}\n");
            out
        }
        CertificateDocument::Unboundedness(c) => {
            format!("{{\n  \"type\": \"unboundedness\",\n  \"sigma\": {}\n}}\n", one_based(&c.sigma.0))
        }
    }
}

fn join_vector(v: &[ExtendedNumber]) -> String {
    v.iter().map(format_entry).collect::<Vec<_>>().join(",")
}

/// Human-readable solve report. The first line is a version header; the
/// second is the status, followed by λ* when there is one.
pub fn format_report(out: &SolveOutcome, method: Method, maximize: bool) -> String {
    let mut lines = vec![format!("# tropfrac {}", env!("CARGO_PKG_VERSION"))];
    match &out.outcome {
        Outcome::Optimal { lambda, witness, .. } => {
            lines.push(format!("optimal {}", lambda));
            if maximize {
                lines.push(format!("maximum {}", -lambda));
            }
            lines.push(format!("witness {}", join_vector(witness)));
        }
        Outcome::Unbounded { certificate } => {
            lines.push("unbounded".into());
            if certificate.is_none() {
                lines.push("note objective reaches -inf at a feasible point".into());
            }
        }
        Outcome::Infeasible { evidence } => {
            lines.push("infeasible".into());
            lines.push(format!("note {}", evidence));
        }
    }
    lines.push(format!("method {}", method));
    lines.push(format!("iterations {}", out.trace.len()));
    lines.push(format!("oracle_calls {}", out.oracle_calls));
    if !out.trace.is_empty() {
        lines.push("trace k lambda phi least_solution".into());
        for (k, t) in out.trace.iter().enumerate() {
            let phi = t.phi.as_ref().map_or("-".to_string(), |p| p.to_string());
            let y = t.least_solution.as_deref().map_or("-".to_string(), join_vector);
            lines.push(format!("{} {} {} {}", k, t.lambda, phi, y));
        }
    }
    lines.join("\n") + "\n"
}

/// Evenly spaced λ covering every finite breakpoint with a margin of one.
pub fn sample_points(pieces: &[SpectralPiece], count: usize) -> Vec<Rational> {
    let breaks: Vec<&Rational> = pieces.iter().filter_map(|p| p.hi.finite()).collect();
    let one = Rational::from_integer(1.into());
    let lo = breaks.iter().min().map_or(-one.clone(), |b| *b - &one);
    let hi = breaks.iter().max().map_or(one.clone(), |b| *b + &one);
    let steps = count.max(2) - 1;
    let width = (&hi - &lo) / Rational::from_integer(steps.into());
    (0..=steps).map(|k| &lo + &width * Rational::from_integer(k.into())).collect()
}

/// Piece table followed by sampled (λ, φ(λ)) pairs, comma separated.
pub fn format_spectral(pieces: &[SpectralPiece], samples: &[(Rational, Rational)]) -> String {
    let mut out = String::from("lo,hi,alpha,beta,k\n");
    for p in pieces {
        out.push_str(&format!("{},{},{},{},{}\n", format_entry(&p.lo), format_entry(&p.hi), p.alpha, p.beta, p.k));
    }
    out.push_str("\nlambda,phi\n");
    for (l, v) in samples {
        out.push_str(&format!("{},{}\n", l, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::examples::*;
    use crate::tropical::rat;

    const EXAMPLE2: &str = r#"{
      "A": [["-inf","-inf"],["-inf","-inf"],["-inf","-inf"],["-inf",-3],["-inf",-4],["-inf",-5],["-inf",-6]],
      "B": [[-2,0],[0,-1],[1,-2],[2,"-inf"],[0,"-inf"],[-2,"-inf"],[-4,"-inf"]],
      "c": [0,0,0,0,"-inf","-inf","-inf"],
      "d": ["-inf","-inf","-inf","-inf",0,0,0],
      "p": [2,-4], "q": ["-inf","-inf"], "r": "-inf", "s": 0
    }"#;

    #[test]
    fn parses_example2() {
        let doc = parse_instance(EXAMPLE2).unwrap();
        assert_eq!(doc.minimization().unwrap(), example2());
        assert_eq!(parse_instance(&serialize_instance(&doc)).unwrap(), doc);
    }

    #[test]
    fn maximize_swaps_roles() {
        let text = r#"{"objective": "maximize",
          "A": [["-inf",-1],[-2,-2],[-1,"-inf"],[0,"-inf"]],
          "B": [[0,"-inf"],["-inf","-inf"],["-inf",0],["-inf",2]],
          "c": ["-inf","-inf","-inf","-inf"], "d": [0,0,0,0],
          "p": [1,3], "q": ["-inf","-inf"], "r": "-inf", "s": 0}"#;
        let doc = parse_instance(text).unwrap();
        assert_eq!(doc.minimization().unwrap(), example1());
        assert_eq!(parse_instance(&serialize_instance(&doc)).unwrap(), doc);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = EXAMPLE2.replace("[2,\"-inf\"]", "[2,\"+inf\"]");
        let err = parse_instance(&bad).unwrap_err().to_string();
        assert!(err.contains("B[4][2]"), "{}", err);
        let err = parse_instance("{\"A\": [}").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{}", err);
        let nan = EXAMPLE2.replace("\"s\": 0", "\"s\": \"NaN\"");
        assert!(parse_instance(&nan).unwrap_err().to_string().contains("field s"));
        let short = EXAMPLE2.replace("\"p\": [2,-4]", "\"p\": [2,-4,1]");
        assert!(parse_instance(&short).is_err());
    }

    #[test]
    fn certificate_round_trip_and_lengths() {
        let h = crate::spectral::homogenize(&example2()).unwrap();
        let text = r#"{"type":"optimality","lambda":"0","tau":[8,4,4],"witness":["-2","2","0"]}"#;
        let cert = parse_certificate(text, &h).unwrap();
        let CertificateDocument::Optimality(c) = &cert else { panic!() };
        assert_eq!(c.tau, MinStrategy(vec![7, 3, 3]));
        assert_eq!(c.lambda, rat(0));
        assert_eq!(parse_certificate(&serialize_certificate(&cert), &h).unwrap(), cert);
        let short = r#"{"type":"optimality","lambda":"0","tau":[8,4]}"#;
        assert!(matches!(parse_certificate(short, &h), Err(TropError::DimensionMismatch(_))));
        let range = r#"{"type":"optimality","lambda":"0","tau":[9,4,4]}"#;
        assert!(matches!(parse_certificate(range, &h), Err(TropError::DimensionMismatch(_))));
    }

    #[test]
    fn canonical_rationals() {
        assert_eq!(format_entry(&ExtendedNumber::Finite(crate::tropical::frac(6, 4))), "3/2");
        assert_eq!(format_entry(&ExtendedNumber::int(-3)), "-3");
        let doc = InstanceDocument {
            form: InstanceForm::Homogeneous(HomogeneousParts {
                c: TropMatrix::from_rows(vec![vec![ExtendedNumber::Finite(crate::tropical::frac(1, 2))]], Semiring::MaxPlus)
                    .unwrap(),
                d: TropMatrix::from_rows(vec![vec![ExtendedNumber::int(1)]], Semiring::MaxPlus).unwrap(),
                u: vec![ExtendedNumber::int(0)],
                v: vec![ExtendedNumber::int(0)],
            }),
            maximize: false,
        };
        let text = serialize_instance(&doc);
        assert!(text.contains("\"1/2\""));
        assert_eq!(parse_instance(&text).unwrap(), doc);
    }
}
