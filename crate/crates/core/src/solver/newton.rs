use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Result, TropError};
use crate::game::int_game::IntGame;
use crate::game::value::{at_least, climb};
use crate::game::{anchored_least_solution, AnchoredSolution, MaxStrategy};
use crate::solver::{lower_bound, Run, SolveOutcome};
use crate::spectral::{perturbed_game, phi_nonneg, phi_tau, HomogeneousInstance};
use crate::tropical::{ExtendedNumber, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonStep {
    /// Column chosen by σ on the parametric row.
    pub anchor: usize,
    pub solution: AnchoredSolution,
    /// Minimal zero of φ^σ, scaled units.
    pub lambda: ExtendedNumber,
}

/// Minimal zero of φ^σ via the least solution of the σ-system anchored at
/// the column σ picks on the parametric row.
pub fn newton_step(h: &HomogeneousInstance, sigma: &MaxStrategy) -> Result<NewtonStep> {
    let m = h.m();
    if sigma.0.len() != m + 1 {
        return Err(TropError::InvalidStrategy(format!("expected {} choices, got {}", m + 1, sigma.0.len())));
    }
    let anchor = sigma.0[m];
    let Some(v) = h.den().get(anchor).and_then(|e| e.finite()) else {
        return Err(TropError::InvalidStrategy(format!("parametric row has no arc to column {}", anchor + 1)));
    };
    let solution = anchored_least_solution(h.lhs(), h.rhs(), &sigma.0[..m], anchor)?;
    let reach = h
        .num()
        .iter()
        .zip(&solution.x)
        .map(|(u, y)| u.add_max(y))
        .max()
        .unwrap_or(ExtendedNumber::NegInf);
    Ok(NewtonStep { anchor, lambda: reach.add_rat(&-v.clone()), solution })
}

/// A Max strategy optimal at λ − δ for small δ > 0, or `None` when φ is
/// already negative there (λ is the minimal zero).
pub fn left_optimal_max_strategy(h: &HomogeneousInstance, lambda: &Rational) -> Result<Option<MaxStrategy>> {
    let (g, _) = IntGame::from_game(&perturbed_game(h, lambda)?);
    let r = at_least(&g, &Rational::from_integer(0.into()));
    if !r.winning[h.n()] {
        return Ok(None);
    }
    Ok(Some(climb(&g, h.n(), r.sigma).0))
}

/// Iterations positive Newton may take from the upper bound.
pub fn positive_newton_cap(h: &HomogeneousInstance) -> BigInt {
    h.bound() * 4 * h.turns() + 1
}

fn cap_u128(b: &BigInt) -> u128 {
    u128::try_from(b).unwrap_or(u128::MAX)
}

pub(crate) fn positive_newton_solve(mut run: Run<'_>, start: BigInt) -> Result<SolveOutcome> {
    let h = run.h;
    let mut cap = positive_newton_cap(h);
    if start > crate::spectral::initial_bounds(h).1 {
        cap += 1;
    }
    let cap = cap_u128(&cap);
    let mut lambda = Rational::from_integer(start);
    let mut done: u128 = 0;
    loop {
        if done == cap {
            return Err(TropError::IterationCapExceeded(cap));
        }
        done += 1;
        run.oracle_calls += 1;
        let Some(sigma) = left_optimal_max_strategy(h, &lambda)? else {
            run.record(&lambda, None)?;
            return run.optimal(&lambda);
        };
        let step = newton_step(h, &sigma)?;
        run.record(&lambda, Some(&step.solution.x))?;
        match step.lambda {
            ExtendedNumber::Finite(next) if next < lambda => lambda = next,
            ExtendedNumber::Finite(_) => return run.optimal(&lambda),
            ExtendedNumber::NegInf => return run.unbounded(),
            ExtendedNumber::PosInf => unreachable!("the anchor column is finite"),
        }
    }
}

/// Smallest integer in (lo, hi] where `pred` holds, given it holds at hi
/// and is monotone.
fn first_integer(lo: &BigInt, hi: &BigInt, mut pred: impl FnMut(&BigInt) -> Result<bool>) -> Result<BigInt> {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if pred(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Walks up from the lower bound. Each step takes the Min strategy that wins
/// at the current iterate and jumps to the least zero of φ_τ, which is an
/// integer for integer data.
pub(crate) fn negative_newton_solve(mut run: Run<'_>, upper: BigInt) -> Result<SolveOutcome> {
    let h = run.h;
    let cap = cap_u128(&positive_newton_cap(h));
    let mut lambda = lower_bound(h);
    let mut done: u128 = 0;
    loop {
        if done == cap {
            return Err(TropError::IterationCapExceeded(cap));
        }
        done += 1;
        run.oracle_calls += 1;
        let here = Rational::from_integer(lambda.clone());
        let s = phi_nonneg(h, &here)?;
        run.record(&here, None)?;
        if s.nonneg {
            return run.optimal(&here);
        }
        let tau = s.tau;
        lambda = first_integer(&lambda, &upper, |l| {
            Ok(phi_tau(h, &tau, &Rational::from_integer(l.clone()))? >= Rational::from_integer(0.into()))
        })?;
    }
}
