use num_bigint::BigInt;

use crate::error::Result;
use crate::game::{game_value, restrict_max, restrict_min, winning_oracle, MaxStrategy, MinStrategy};
use crate::spectral::{game_at, HomogeneousInstance};
use crate::tropical::{cycle_time_vector, Mode, Rational};

/// Value of the parametric game at the homogenizing node; λ in scaled units.
pub fn phi(h: &HomogeneousInstance, lambda: &Rational) -> Result<Rational> {
    game_value(&game_at(h, lambda)?, h.n())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSign {
    pub nonneg: bool,
    pub sigma: MaxStrategy,
    pub tau: MinStrategy,
}

/// One oracle call deciding φ(λ) ≥ 0.
pub fn phi_nonneg(h: &HomogeneousInstance, lambda: &Rational) -> Result<PhiSign> {
    let r = winning_oracle(&game_at(h, lambda)?);
    Ok(PhiSign { nonneg: r.winning[h.n()], sigma: r.sigma, tau: r.tau })
}

/// φ with Max frozen on σ; concave in λ.
pub fn phi_sigma(h: &HomogeneousInstance, sigma: &MaxStrategy, lambda: &Rational) -> Result<Rational> {
    let chi = cycle_time_vector(&restrict_max(&game_at(h, lambda)?, sigma)?, Mode::Min)?;
    Ok(chi[h.n()].finite().expect("every Min node has a move").clone())
}

/// φ with Min frozen on τ; convex in λ.
pub fn phi_tau(h: &HomogeneousInstance, tau: &MinStrategy, lambda: &Rational) -> Result<Rational> {
    let chi = cycle_time_vector(&restrict_min(&game_at(h, lambda)?, tau)?, Mode::Max)?;
    Ok(chi[h.n()].finite().expect("every Max node has a move").clone())
}

/// ±2M(min(m,n)+1): every finite minimal zero lies in between.
pub fn initial_bounds(h: &HomogeneousInstance) -> (BigInt, BigInt) {
    let hi: BigInt = h.bound() * 2 * h.turns();
    (-hi.clone(), hi)
}
