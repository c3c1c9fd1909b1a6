use num_bigint::BigInt;

use crate::certify::{make_unboundedness_certificate, UnboundednessCertificate};
use crate::error::Result;
use crate::game::two_sided_witness;
use crate::spectral::{initial_bounds, phi_nonneg, HomogeneousInstance};
use crate::tropical::{Rational, Semiring, TropMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precheck {
    Infeasible(String),
    Unbounded(Option<UnboundednessCertificate>),
    /// φ is already nonnegative at the lower bound (scaled units).
    OptimalAtLowerBound(BigInt),
    /// φ(lo) < 0 ≤ φ(hi); iterate from hi.
    Proceed(BigInt),
}

/// Whether some feasible y has y_n finite and u y = −∞, i.e. y vanishes on
/// supp(u). Such a point drives the objective to −∞.
pub fn unbounded_by_support(h: &HomogeneousInstance) -> Result<bool> {
    let n = h.n();
    if h.num()[n].is_finite() {
        return Ok(false);
    }
    let keep: Vec<usize> = (0..=n).filter(|&j| !h.num()[j].is_finite()).collect();
    let cut = |t: &TropMatrix| {
        let entries = (0..t.rows()).flat_map(|r| keep.iter().map(move |&c| t.get(r, c).clone())).collect();
        TropMatrix::new(t.rows(), keep.len(), entries, Semiring::MaxPlus).expect("shape")
    };
    Ok(two_sided_witness(&cut(h.lhs()), &cut(h.rhs()), keep.len() - 1)?.is_some())
}

pub fn precheck(h: &HomogeneousInstance) -> Result<Precheck> {
    if !h.has_parametric_row() {
        // u y ≤ λ + (−∞) only holds when u y = −∞
        return Ok(if unbounded_by_support(h)? {
            Precheck::Unbounded(None)
        } else {
            Precheck::Infeasible("the objective is finite at every feasible point and its denominator never is".into())
        });
    }
    let (lo, hi) = initial_bounds(h);
    let at = |l: &BigInt| phi_nonneg(h, &Rational::from_integer(l.clone())).map(|s| s.nonneg);
    if !at(&hi)? {
        return Ok(Precheck::Infeasible(format!(
            "the homogenizing node loses at lambda = {}, so the constraints admit no point with a finite last coordinate",
            h.from_scaled(&Rational::from_integer(hi))
        )));
    }
    if unbounded_by_support(h)? || at(&(&lo - 1))? {
        return Ok(Precheck::Unbounded(make_unboundedness_certificate(h)?));
    }
    if at(&lo)? {
        return Ok(Precheck::OptimalAtLowerBound(lo));
    }
    Ok(Precheck::Proceed(hi))
}
