use crate::error::{Result, TropError};
use crate::game::{MaxStrategy, MeanPayoffGame, MinStrategy};
use crate::tropical::{rat, Rational};

pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Mean payment per turn of the cycle reached from Min node `j`.
pub fn play_outcome(game: &MeanPayoffGame, j: usize, tau: &MinStrategy, sigma: &MaxStrategy) -> Result<Rational> {
    game.check_min(tau)?;
    game.check_max(sigma)?;
    if j >= game.n() {
        return Err(TropError::DimensionMismatch(format!("no Min node {}", j + 1)));
    }
    let mut seen = vec![None; game.n()];
    let mut prefix = vec![rat(0)];
    let mut node = j;
    loop {
        if let Some(at) = seen[node] {
            let turns = prefix.len() - 1 - at;
            return Ok((&prefix[prefix.len() - 1] - &prefix[at]) / rat(turns as i64));
        }
        seen[node] = Some(prefix.len() - 1);
        let i = tau.0[node];
        let next = sigma.0[i];
        let pay = game.b().get(i, next).finite().expect("valid") - game.a().get(i, node).finite().expect("valid");
        let total = &prefix[prefix.len() - 1] + pay;
        prefix.push(total);
        node = next;
    }
}

/// min over τ of max over σ of the play outcome.
pub fn brute_force_value(game: &MeanPayoffGame, j: usize) -> Result<Rational> {
    let (smax, smin) = game.strategy_counts();
    let pairs = smax.saturating_mul(smin);
    if pairs > ENUMERATION_CAP {
        return Err(TropError::TooLarge(pairs));
    }
    let sigmas = game.max_strategies(ENUMERATION_CAP).expect("capped");
    let taus = game.min_strategies(ENUMERATION_CAP).expect("capped");
    let mut best: Option<Rational> = None;
    for t in &taus {
        let mut inner: Option<Rational> = None;
        for s in &sigmas {
            let v = play_outcome(game, j, t, s)?;
            if inner.as_ref().is_none_or(|x| v > *x) {
                inner = Some(v);
            }
        }
        let inner = inner.expect("at least one strategy");
        if best.as_ref().is_none_or(|x| inner < *x) {
            best = Some(inner);
        }
    }
    Ok(best.expect("at least one strategy"))
}

/// max over σ of min over τ, for the value-existence check.
pub fn brute_force_lower_value(game: &MeanPayoffGame, j: usize) -> Result<Rational> {
    let (smax, smin) = game.strategy_counts();
    if smax.saturating_mul(smin) > ENUMERATION_CAP {
        return Err(TropError::TooLarge(smax.saturating_mul(smin)));
    }
    let sigmas = game.max_strategies(ENUMERATION_CAP).expect("capped");
    let taus = game.min_strategies(ENUMERATION_CAP).expect("capped");
    let mut best: Option<Rational> = None;
    for s in &sigmas {
        let mut inner: Option<Rational> = None;
        for t in &taus {
            let v = play_outcome(game, j, t, s)?;
            if inner.as_ref().is_none_or(|x| v < *x) {
                inner = Some(v);
            }
        }
        let inner = inner.expect("nonempty");
        if best.as_ref().is_none_or(|x| inner > *x) {
            best = Some(inner);
        }
    }
    Ok(best.expect("nonempty"))
}
