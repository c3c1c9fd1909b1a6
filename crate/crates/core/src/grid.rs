//! Sorted grids of rationals with bounded denominator, indexed without
//! materializing them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::tropical::Rational;

/// Fractions a/b in [0,1) with b ≤ `order`, ascending.
pub fn farey_unit(order: usize) -> Vec<Rational> {
    let order = order.max(1);
    let mut out = vec![Rational::zero()];
    for b in 2..=order {
        for a in 1..b {
            if a.gcd(&b) == 1 {
                out.push(BigRational::new(BigInt::from(a), BigInt::from(b)));
            }
        }
    }
    out.sort();
    out
}

/// All rationals with denominator ≤ `order` in the integer interval [lo, hi].
#[derive(Clone, Debug)]
pub struct RationalGrid {
    lo: BigInt,
    width: BigInt,
    fracs: Vec<Rational>,
}

impl RationalGrid {
    pub fn new(lo: BigInt, hi: BigInt, order: usize) -> Self {
        assert!(lo <= hi);
        RationalGrid { width: hi - &lo, lo, fracs: farey_unit(order) }
    }

    pub fn len(&self) -> BigInt {
        &self.width * BigInt::from(self.fracs.len()) + BigInt::one()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, idx: &BigInt) -> Rational {
        let f = BigInt::from(self.fracs.len());
        let (q, r) = idx.div_rem(&f);
        let r = r.to_usize().expect("remainder below the Farey count");
        BigRational::from_integer(&self.lo + q) + &self.fracs[r]
    }

    /// Last index whose point satisfies `pred`, for a predicate that holds on
    /// a prefix of the grid. `None` if it fails at the first point.
    pub fn last_true(&self, mut pred: impl FnMut(&Rational) -> bool) -> Option<BigInt> {
        let mut lo = BigInt::zero();
        if !pred(&self.at(&lo)) {
            return None;
        }
        let mut hi = self.len() - 1;
        if pred(&self.at(&hi)) {
            return Some(hi);
        }
        // pred(lo) holds, pred(hi) fails
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if pred(&self.at(&mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }

    /// First index whose point satisfies `pred`, for a predicate that holds on
    /// a suffix of the grid.
    pub fn first_true(&self, mut pred: impl FnMut(&Rational) -> bool) -> Option<BigInt> {
        match self.last_true(|x| !pred(x)) {
            None => Some(BigInt::zero()),
            Some(i) if i == self.len() - 1 => None,
            Some(i) => Some(i + 1),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Rational> + '_ {
        let n = self.len().to_u64().expect("grid fits in memory");
        (0..n).map(move |k| self.at(&BigInt::from(k)))
    }
}
