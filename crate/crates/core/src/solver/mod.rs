//! Minimal zero of the spectral function by bisection, positive Newton and
//! negative Newton iterations. Everything inside runs in the instance's
//! scaled integer units; outcomes and traces are reported in original units.

mod bisection;
mod newton;
mod precheck;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::certify::{make_optimality_certificate, make_unboundedness_certificate};
use crate::certify::{OptimalityCertificate, UnboundednessCertificate};
use crate::error::{Result, TropError};
use crate::spectral::{homogenize, initial_bounds, phi, phi_nonneg, HomogeneousInstance, LfpInstance};
use crate::tropical::{ExtendedNumber, Rational};

use bisection::bisection_solve;
pub use bisection::bisection_cap;
use newton::{negative_newton_solve, positive_newton_solve};
pub use newton::{left_optimal_max_strategy, newton_step, positive_newton_cap, NewtonStep};
pub use precheck::{precheck, unbounded_by_support, Precheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    PositiveNewton,
    Bisection,
    NegativeNewton,
}

impl FromStr for Method {
    type Err = TropError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newton" | "positive-newton" => Ok(Method::PositiveNewton),
            "bisection" => Ok(Method::Bisection),
            "negative-newton" => Ok(Method::NegativeNewton),
            other => Err(TropError::Parse(format!("unknown method '{}'", other))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::PositiveNewton => "newton",
            Method::Bisection => "bisection",
            Method::NegativeNewton => "negative-newton",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub method: Method,
    /// Starting point for positive Newton, original units; must be feasible.
    pub lambda0: Option<Rational>,
    /// Evaluate φ exactly at every iterate (one extra value computation each).
    pub record_phi: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { method: Method::PositiveNewton, lambda0: None, record_phi: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub lambda: Rational,
    pub phi: Option<Rational>,
    /// Least solution y of the Newton subproblem solved at this iterate.
    pub least_solution: Option<Vec<ExtendedNumber>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Unbounded,
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::Unbounded => "unbounded",
            Status::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Optimal { lambda: Rational, witness: Vec<ExtendedNumber>, certificate: OptimalityCertificate },
    /// The certificate is absent only when the objective's denominator is
    /// identically −∞ and no parametric game exists.
    Unbounded { certificate: Option<UnboundednessCertificate> },
    Infeasible { evidence: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub outcome: Outcome,
    pub trace: Vec<TraceEntry>,
    /// Oracle calls made by the chosen method after the prechecks.
    pub oracle_calls: u64,
}

impl SolveOutcome {
    pub fn status(&self) -> Status {
        match self.outcome {
            Outcome::Optimal { .. } => Status::Optimal,
            Outcome::Unbounded { .. } => Status::Unbounded,
            Outcome::Infeasible { .. } => Status::Infeasible,
        }
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match &self.outcome {
            Outcome::Optimal { lambda, .. } => Some(lambda),
            _ => None,
        }
    }
}

pub(crate) struct Run<'a> {
    pub h: &'a HomogeneousInstance,
    pub record_phi: bool,
    pub trace: Vec<TraceEntry>,
    pub oracle_calls: u64,
}

impl<'a> Run<'a> {
    pub fn new(h: &'a HomogeneousInstance, record_phi: bool) -> Self {
        Run { h, record_phi, trace: Vec::new(), oracle_calls: 0 }
    }

    pub fn record(&mut self, lambda: &Rational, least: Option<&[ExtendedNumber]>) -> Result<()> {
        let phi = if self.record_phi { Some(self.h.from_scaled(&phi(self.h, lambda)?)) } else { None };
        self.trace.push(TraceEntry {
            lambda: self.h.from_scaled(lambda),
            phi,
            least_solution: least.map(|y| self.h.vector_from_scaled(y)),
        });
        Ok(())
    }

    pub fn optimal(self, lambda: &Rational) -> Result<SolveOutcome> {
        let certificate = make_optimality_certificate(self.h, lambda)?;
        let y = certificate.witness.clone().expect("generated certificates carry a witness");
        let n = self.h.n();
        let shift = y[n].finite().expect("homogenizing coordinate is finite").clone();
        let witness = y[..n].iter().map(|e| e.add_rat(&-shift.clone())).collect();
        Ok(SolveOutcome {
            outcome: Outcome::Optimal { lambda: self.h.from_scaled(lambda), witness, certificate },
            trace: self.trace,
            oracle_calls: self.oracle_calls,
        })
    }

    pub fn unbounded(self) -> Result<SolveOutcome> {
        let certificate = make_unboundedness_certificate(self.h)?;
        Ok(SolveOutcome { outcome: Outcome::Unbounded { certificate }, trace: self.trace, oracle_calls: self.oracle_calls })
    }

    pub fn infeasible(self, evidence: String) -> SolveOutcome {
        SolveOutcome { outcome: Outcome::Infeasible { evidence }, trace: self.trace, oracle_calls: self.oracle_calls }
    }
}

/// Solves a homogeneous instance. λ* and witnesses come back in original
/// units; the witness is y with the homogenizing coordinate shifted to 0 and
/// dropped.
pub fn solve_homogeneous(h: &HomogeneousInstance, opts: &SolveOptions) -> Result<SolveOutcome> {
    let run = Run::new(h, opts.record_phi);
    let upper = match precheck(h)? {
        Precheck::Infeasible(why) => return Ok(run.infeasible(why)),
        Precheck::Unbounded(certificate) => {
            return Ok(SolveOutcome { outcome: Outcome::Unbounded { certificate }, trace: vec![], oracle_calls: 0 })
        }
        Precheck::OptimalAtLowerBound(lo) => {
            let mut run = run;
            let lo = Rational::from_integer(lo);
            run.record(&lo, None)?;
            return run.optimal(&lo);
        }
        Precheck::Proceed(hi) => hi,
    };
    match opts.method {
        Method::PositiveNewton => {
            let start = match &opts.lambda0 {
                None => upper,
                Some(l0) => {
                    let s = h.to_scaled(l0);
                    let s = s.numer().div_ceil(s.denom());
                    if !phi_nonneg(h, &Rational::from_integer(s.clone()))?.nonneg {
                        return Err(TropError::AssumptionViolated(format!("starting value {} is not feasible", l0)));
                    }
                    s
                }
            };
            positive_newton_solve(run, start)
        }
        Method::Bisection => bisection_solve(run, upper),
        Method::NegativeNewton => negative_newton_solve(run, upper),
    }
}

/// Solves the original program and checks the returned witness against it.
pub fn solve(inst: &LfpInstance, opts: &SolveOptions) -> Result<SolveOutcome> {
    let h = homogenize(inst)?;
    let out = solve_homogeneous(&h, opts)?;
    if let Outcome::Optimal { lambda, witness, .. } = &out.outcome {
        if !inst.is_feasible(witness) {
            return Err(TropError::InternalCertificateMismatch("witness violates a constraint".into()));
        }
        if inst.objective(witness) != ExtendedNumber::Finite(lambda.clone()) {
            return Err(TropError::InternalCertificateMismatch(format!(
                "witness objective {} differs from {}",
                inst.objective(witness),
                lambda
            )));
        }
    }
    Ok(out)
}

pub(crate) fn lower_bound(h: &HomogeneousInstance) -> BigInt {
    initial_bounds(h).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::examples::*;
    use crate::tropical::{ext_row, rat};
    use crate::game::MaxStrategy;

    fn lambdas(out: &SolveOutcome) -> Vec<Rational> {
        out.trace.iter().map(|t| t.lambda.clone()).collect()
    }

    fn newton_from(h: &HomogeneousInstance, start: i64) -> SolveOutcome {
        let opts = SolveOptions { lambda0: Some(rat(start)), record_phi: true, ..Default::default() };
        solve_homogeneous(h, &opts).unwrap()
    }

    #[test]
    fn example2_newton_trace() {
        let h = homogenize(&example2()).unwrap();
        let out = newton_from(&h, 15);
        assert_eq!(lambdas(&out), vec![rat(15), rat(4), rat(1), rat(0)]);
        let phis: Vec<_> = out.trace.iter().map(|t| t.phi.clone().unwrap()).collect();
        assert_eq!(phis, vec![crate::tropical::frac(11, 2), crate::tropical::frac(3, 2), crate::tropical::frac(1, 2), rat(0)]);
        let ys: Vec<_> = out.trace.iter().map(|t| t.least_solution.clone()).collect();
        assert_eq!(ys[0], Some(ext_row(&[Some(2), None, Some(0)])));
        assert_eq!(ys[1], Some(ext_row(&[Some(-1), Some(1), Some(0)])));
        assert_eq!(ys[2], Some(ext_row(&[Some(-2), Some(2), Some(0)])));
        assert_eq!(ys[3], None);
        assert_eq!(out.lambda(), Some(&rat(0)));
    }

    #[test]
    fn example2_given_strategy_step() {
        let h = homogenize(&example2()).unwrap();
        let step = newton_step(&h, &MaxStrategy(vec![0, 0, 0, 0, 0, 0, 0, 2])).unwrap();
        assert_eq!(step.lambda, ExtendedNumber::int(4));
        assert_eq!(step.solution.x, ext_row(&[Some(2), None, Some(0)]));
    }

    #[test]
    fn example1_newton_trace() {
        let h = homogenize(&example1()).unwrap();
        let out = newton_from(&h, 3);
        assert_eq!(lambdas(&out), vec![rat(3), rat(-4), rat(-5)]);
        assert_eq!(out.trace[0].least_solution, Some(ext_row(&[None, Some(0), Some(-1)])));
        assert_eq!(out.trace[1].least_solution, Some(ext_row(&[Some(-1), Some(0), Some(-2)])));
        assert_eq!(out.lambda(), Some(&rat(-5)));
    }

    #[test]
    fn example1_maximum_is_five() {
        let out = solve(&example1(), &SolveOptions::default()).unwrap();
        assert_eq!(out.lambda(), Some(&rat(-5)));
        let Outcome::Optimal { witness, .. } = &out.outcome else { panic!() };
        assert_eq!(example1().objective(witness), ExtendedNumber::int(-5));
    }

    #[test]
    fn example3_step_and_trace() {
        let h = example3();
        let step = newton_step(&h, &MaxStrategy(vec![3, 1, 0, 3, 0])).unwrap();
        assert_eq!(step.solution.z, ext_row(&[Some(-1), Some(-2)]));
        assert_eq!(step.lambda, ExtendedNumber::int(-4));
        let out = newton_from(&h, 0);
        assert_eq!(lambdas(&out), vec![rat(0), rat(-4)]);
    }

    #[test]
    fn methods_agree_on_examples() {
        let hs = [homogenize(&example1()).unwrap(), homogenize(&example2()).unwrap(), example3()];
        let expect = [rat(-5), rat(0), rat(-4)];
        for (h, want) in hs.iter().zip(&expect) {
            for method in [Method::PositiveNewton, Method::Bisection, Method::NegativeNewton] {
                let out = solve_homogeneous(h, &SolveOptions { method, ..Default::default() }).unwrap();
                assert_eq!(out.lambda(), Some(want), "{}", method);
                if method == Method::Bisection {
                    assert!(out.oracle_calls <= bisection_cap(h));
                }
            }
        }
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let h = homogenize(&example2()).unwrap();
        let opts = SolveOptions { lambda0: Some(rat(-1)), ..Default::default() };
        assert!(matches!(solve_homogeneous(&h, &opts), Err(TropError::AssumptionViolated(_))));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::PositiveNewton, Method::Bisection, Method::NegativeNewton] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("simplex".parse::<Method>().is_err());
    }
}
