use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Result, TropError};
use crate::solver::{lower_bound, Run, SolveOutcome};
use crate::spectral::{initial_bounds, phi_nonneg, HomogeneousInstance};
use crate::tropical::Rational;

/// ⌈log₂(hi − lo)⌉ + 1 oracle calls over the initial integer bracket.
pub fn bisection_cap(h: &HomogeneousInstance) -> u64 {
    let (lo, hi) = initial_bounds(h);
    let width: BigInt = hi - lo;
    let bits = if width <= BigInt::one() { 0 } else { (width - 1u32).bits() };
    bits + 1
}

pub(crate) fn bisection_solve(mut run: Run<'_>, upper: BigInt) -> Result<SolveOutcome> {
    let h = run.h;
    let cap = bisection_cap(h);
    let (mut lo, mut hi) = (lower_bound(h), upper);
    while &hi - &lo > BigInt::one() {
        if run.oracle_calls == cap {
            return Err(TropError::IterationCapExceeded(cap as u128));
        }
        let mid: BigInt = (&lo + &hi) >> 1;
        let at = Rational::from_integer(mid.clone());
        run.oracle_calls += 1;
        let nonneg = phi_nonneg(h, &at)?.nonneg;
        run.record(&at, None)?;
        if nonneg {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    run.optimal(&Rational::from_integer(hi))
}
