//! Strategy certificates. An optimality certificate is a Min strategy τ plus
//! evidence that λ is feasible; an unboundedness certificate is a Max
//! strategy σ. Both are checked with SCCs and Karp means on the one-player
//! digraphs they induce.

use std::fmt;

use num_traits::Zero;

use crate::error::{Result, TropError};
use crate::game::{feasibility_witness, restrict_min, winning_oracle, MaxStrategy, MeanPayoffGame, MinStrategy};
use crate::spectral::{game_at, perturbed_game, phi_nonneg, HomogeneousInstance};
use crate::tropical::{cycle_time_vector, scc_and_access, cycle_means, ExtendedNumber, Mode, Rational, WeightedDigraph};

/// λ and witness are in the instance's original units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalityCertificate {
    pub lambda: Rational,
    pub tau: MinStrategy,
    pub witness: Option<Vec<ExtendedNumber>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnboundednessCertificate {
    pub sigma: MaxStrategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// (a) an accessible cycle of G^τ has positive weight.
    PositiveCycle,
    /// (b) without the parametric Max node, an accessible cycle is not negative.
    NonNegativeCycleAvoidingParameter,
    /// (c) λ is not feasible.
    Infeasible,
    /// An accessible cycle of G^σ passes through the parametric Max node.
    CycleThroughParameter,
    /// An accessible cycle of G^σ has negative weight.
    NegativeCycle,
}

impl Rejection {
    pub fn condition(self) -> &'static str {
        match self {
            Rejection::PositiveCycle => "(a)",
            Rejection::NonNegativeCycleAvoidingParameter => "(b)",
            Rejection::Infeasible => "(c)",
            Rejection::CycleThroughParameter => "(i)",
            Rejection::NegativeCycle => "(ii)",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self {
            Rejection::PositiveCycle => "a cycle accessible from the homogenizing node has positive weight",
            Rejection::NonNegativeCycleAvoidingParameter => {
                "a cycle avoiding the parametric row is accessible and not negative"
            }
            Rejection::Infeasible => "lambda is not feasible",
            Rejection::CycleThroughParameter => "an accessible cycle passes through the parametric row",
            Rejection::NegativeCycle => "an accessible cycle has negative weight",
        };
        write!(f, "condition {} fails: {}", self.condition(), what)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

pub fn check_optimality(h: &HomogeneousInstance, cert: &OptimalityCertificate) -> Result<Verdict> {
    let lambda = h.to_scaled(&cert.lambda);
    let game = game_at(h, &lambda)?;
    let n = h.n();
    let m = h.m();
    let one_player = restrict_min(&game, &cert.tau)?;
    let chi = cycle_time_vector(&one_player, Mode::Max)?;
    if chi[n] > ExtendedNumber::zero() {
        return Ok(Verdict::Reject(Rejection::PositiveCycle));
    }
    let mut cut = one_player;
    for (j, &i) in cert.tau.0.iter().enumerate() {
        if i == m {
            for l in 0..=n {
                cut.set(j, l, ExtendedNumber::NegInf);
            }
        }
    }
    let chi = cycle_time_vector(&cut, Mode::Max)?;
    if chi[n] >= ExtendedNumber::zero() {
        return Ok(Verdict::Reject(Rejection::NonNegativeCycleAvoidingParameter));
    }
    let feasible = match &cert.witness {
        Some(y) => {
            if y.len() != n + 1 {
                return Err(TropError::DimensionMismatch(format!(
                    "witness has {} entries, expected {}",
                    y.len(),
                    n + 1
                )));
            }
            y[n].is_finite() && h.admits(&lambda, &h.vector_to_scaled(y))
        }
        None => phi_nonneg(h, &lambda)?.nonneg,
    };
    if !feasible {
        return Ok(Verdict::Reject(Rejection::Infeasible));
    }
    Ok(Verdict::Accept)
}

/// Full bipartite digraph of G^σ: Min nodes 0..=n, Max nodes after them.
fn max_fixed_digraph(game: &MeanPayoffGame, sigma: &MaxStrategy) -> Result<WeightedDigraph> {
    game.check_max(sigma)?;
    let (m, n) = (game.m(), game.n());
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if let ExtendedNumber::Finite(a) = game.a().get(i, j) {
                arcs.push((j, n + i, -a.clone()));
            }
        }
        let l = sigma.0[i];
        arcs.push((n + i, l, game.b().get(i, l).finite().expect("checked").clone()));
    }
    WeightedDigraph::new(n + m, arcs)
}

pub fn check_unboundedness(h: &HomogeneousInstance, cert: &UnboundednessCertificate) -> Result<Verdict> {
    let game = game_at(h, &Rational::zero())?;
    let d = max_fixed_digraph(&game, &cert.sigma)?;
    let (n, m) = (game.n(), game.m());
    let parametric = n + m - 1;
    let sa = scc_and_access(&d, h.n());
    let comp = &sa.sccs.components[sa.sccs.component_of[parametric]];
    if sa.access[parametric] && comp.len() > 1 {
        return Ok(Verdict::Reject(Rejection::CycleThroughParameter));
    }
    let negative = cycle_means(&d, Mode::Min)
        .iter()
        .filter(|c| sa.access[c.nodes[0]])
        .any(|c| c.mean.as_ref().is_some_and(|v| *v < Rational::zero()));
    if negative {
        return Ok(Verdict::Reject(Rejection::NegativeCycle));
    }
    Ok(Verdict::Accept)
}

/// Min strategy from the game just left of λ (scaled units), where the
/// homogenizing node loses, plus a witness at λ.
pub fn make_optimality_certificate(h: &HomogeneousInstance, lambda: &Rational) -> Result<OptimalityCertificate> {
    let fail = TropError::CertificateSynthesisFailed;
    let left = winning_oracle(&perturbed_game(h, lambda)?);
    if left.winning[h.n()] {
        return Err(fail("the homogenizing node still wins left of lambda".into()));
    }
    let y = feasibility_witness(&game_at(h, lambda)?, h.n())
        .map_err(|e| fail(e.to_string()))?
        .ok_or_else(|| fail("lambda is not feasible".into()))?;
    let cert = OptimalityCertificate {
        lambda: h.from_scaled(lambda),
        tau: left.tau,
        witness: Some(h.vector_from_scaled(&y)),
    };
    match check_optimality(h, &cert)? {
        Verdict::Accept => Ok(cert),
        Verdict::Reject(r) => Err(fail(r.to_string())),
    }
}

/// A Max strategy winning far below every finite minimal zero; it certifies
/// an unbounded instance.
pub fn make_unboundedness_certificate(h: &HomogeneousInstance) -> Result<Option<UnboundednessCertificate>> {
    if !h.has_parametric_row() {
        return Ok(None);
    }
    let (lo, _) = crate::spectral::initial_bounds(h);
    let s = phi_nonneg(h, &Rational::from_integer(lo - 1))?;
    if !s.nonneg {
        return Ok(None);
    }
    let cert = UnboundednessCertificate { sigma: s.sigma };
    match check_unboundedness(h, &cert)? {
        Verdict::Accept => Ok(Some(cert)),
        Verdict::Reject(r) => Err(TropError::CertificateSynthesisFailed(r.to_string())),
    }
}
