use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Result, TropError};
use crate::grid::RationalGrid;
use crate::spectral::{phi, HomogeneousInstance};
use crate::tropical::{ExtendedNumber, Rational};

pub const DEFAULT_GRID_CAP: u128 = 1_000_000;

/// (α + βλ)/k on [lo, hi], in original units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPiece {
    pub lo: ExtendedNumber,
    pub hi: ExtendedNumber,
    pub alpha: Rational,
    pub beta: u8,
    pub k: usize,
}

impl SpectralPiece {
    pub fn eval(&self, lambda: &Rational) -> Rational {
        let b = if self.beta == 1 { lambda.clone() } else { Rational::zero() };
        (&self.alpha + b) / BigRational::from_integer(BigInt::from(self.k))
    }

    pub fn contains(&self, lambda: &Rational) -> bool {
        self.lo <= ExtendedNumber::Finite(lambda.clone()) && ExtendedNumber::Finite(lambda.clone()) <= self.hi
    }
}

pub fn reconstruct(h: &HomogeneousInstance) -> Result<Vec<SpectralPiece>> {
    reconstruct_with_cap(h, DEFAULT_GRID_CAP)
}

/// Evaluates φ on every rational of denominator ≤ turns in the window past
/// which φ is affine, then merges equal slopes.
pub fn reconstruct_with_cap(h: &HomogeneousInstance, cap: u128) -> Result<Vec<SpectralPiece>> {
    let t = h.turns();
    let reach: BigInt = h.bound() * 4 * t * t + 1;
    let grid = RationalGrid::new(-reach.clone(), reach, t);
    let size = grid.len().to_u128().unwrap_or(u128::MAX);
    if size > cap {
        return Err(TropError::GridTooLarge(size, cap));
    }
    let points: Vec<Rational> = grid.iter().collect();
    let values: Vec<Rational> = points.par_iter().map(|l| phi(h, l)).collect::<Result<_>>()?;
    let slope = |i: usize| (&values[i + 1] - &values[i]) / (&points[i + 1] - &points[i]);
    let mut pieces = Vec::new();
    let mut start = 0;
    let mut current = slope(0);
    for i in 1..points.len() - 1 {
        let s = slope(i);
        if s != current {
            pieces.push((start, i, current));
            start = i;
            current = s;
        }
    }
    pieces.push((start, points.len() - 1, current));
    let last = pieces.len() - 1;
    pieces
        .into_iter()
        .enumerate()
        .map(|(idx, (a, b, s))| {
            let lo = if idx == 0 { ExtendedNumber::NegInf } else { ExtendedNumber::Finite(h.from_scaled(&points[a])) };
            let hi = if idx == last { ExtendedNumber::PosInf } else { ExtendedNumber::Finite(h.from_scaled(&points[b])) };
            fit(h, &points[a], &values[a], &s, lo, hi)
        })
        .collect()
}

fn fit(
    h: &HomogeneousInstance,
    at: &Rational,
    value: &Rational,
    slope: &Rational,
    lo: ExtendedNumber,
    hi: ExtendedNumber,
) -> Result<SpectralPiece> {
    let bad = |why: &str| TropError::InternalCertificateMismatch(format!("piece at {}: {}", at, why));
    let (beta, k) = if slope.is_zero() {
        (0u8, value.denom().to_usize().ok_or_else(|| bad("denominator overflow"))?)
    } else if slope.numer().is_one() {
        (1u8, slope.denom().to_usize().ok_or_else(|| bad("slope overflow"))?)
    } else {
        return Err(bad("slope is not 0 or 1/k"));
    };
    let kr = BigRational::from_integer(BigInt::from(k));
    // α in scaled units is kφ − βλ; dividing by the scale gives original units
    let alpha_scaled = value * &kr - if beta == 1 { at.clone() } else { Rational::zero() };
    Ok(SpectralPiece { lo, hi, alpha: h.from_scaled(&alpha_scaled), beta, k })
}

/// Upper bound on the number of affine pieces of φ.
pub fn piece_bound(h: &HomogeneousInstance) -> BigInt {
    let t = BigInt::from(h.turns());
    h.bound() * 8 * t.pow(4) + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::examples::*;
    use crate::spectral::homogenize;
    use crate::tropical::{frac, rat};
    use num_traits::Signed;

    fn value_at(pieces: &[SpectralPiece], l: &Rational) -> Rational {
        pieces.iter().find(|p| p.contains(l)).expect("covers the line").eval(l)
    }

    #[test]
    fn example2_reconstruction() {
        let h = homogenize(&example2()).unwrap();
        let pieces = reconstruct(&h).unwrap();
        assert_eq!(value_at(&pieces, &rat(0)), rat(0));
        assert_eq!(value_at(&pieces, &rat(1)), frac(1, 2));
        assert_eq!(value_at(&pieces, &rat(15)), frac(11, 2));
        assert!(BigInt::from(pieces.len()) <= piece_bound(&h));
        for p in &pieces {
            assert!(p.beta <= 1 && p.k <= h.turns());
            let ratio = (&p.alpha / BigRational::from_integer(BigInt::from(p.k))).abs();
            assert!(ratio <= BigRational::from_integer(h.bound() * 2));
        }
        for w in pieces.windows(2) {
            let Some(x) = w[0].hi.finite() else { panic!("inner boundary") };
            assert_eq!(w[0].eval(x), w[1].eval(x));
        }
    }

    #[test]
    fn constant_when_lambda_never_binds() {
        // u ≡ −∞: nothing ever moves to the parametric row
        use crate::tropical::{ext_row, Semiring, TropMatrix};
        let h = HomogeneousInstance::new(
            TropMatrix::from_rows(vec![ext_row(&[Some(0), Some(1)])], Semiring::MaxPlus).unwrap(),
            TropMatrix::from_rows(vec![ext_row(&[Some(0), None])], Semiring::MaxPlus).unwrap(),
            ext_row(&[None, None]),
            ext_row(&[Some(0), None]),
        )
        .unwrap();
        let pieces = reconstruct(&h).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].beta, 0);
        assert_eq!(pieces[0].eval(&rat(5)), rat(0));
    }

    #[test]
    fn grid_cap_is_enforced() {
        let h = homogenize(&example2()).unwrap();
        assert!(matches!(reconstruct_with_cap(&h, 10), Err(TropError::GridTooLarge(_, 10))));
    }
}
