//! Seeded random instances and games that always satisfy the standing
//! assumptions: every constraint row has a finite right-hand entry and every
//! variable occurs on some left-hand side.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::MeanPayoffGame;
use crate::spectral::LfpInstance;
use crate::tropical::{ExtendedNumber, Semiring, TropMatrix};

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub m: usize,
    pub n: usize,
    /// Finite entries are drawn uniformly from −bound..=bound.
    pub bound: i64,
    /// Probability that an entry is −∞.
    pub sparsity: f64,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw(rng: &mut impl Rng, bound: i64, sparsity: f64) -> ExtendedNumber {
    if rng.gen_bool(sparsity) {
        ExtendedNumber::NegInf
    } else {
        ExtendedNumber::int(rng.gen_range(-bound..=bound))
    }
}

fn finite(rng: &mut impl Rng, bound: i64) -> ExtendedNumber {
    ExtendedNumber::int(rng.gen_range(-bound..=bound))
}

/// Rows (m of them) over n + 1 columns, the last being the constant term.
fn rows(rng: &mut impl Rng, m: usize, cols: usize, bound: i64, sparsity: f64) -> Vec<Vec<ExtendedNumber>> {
    (0..m).map(|_| (0..cols).map(|_| draw(rng, bound, sparsity)).collect()).collect()
}

pub fn random_instance(rng: &mut impl Rng, spec: &RandomSpec) -> LfpInstance {
    let (m, n, w, s) = (spec.m, spec.n, spec.bound, spec.sparsity);
    let mut left = rows(rng, m, n + 1, w, s);
    let mut right = rows(rng, m, n + 1, w, s);
    let mut num: Vec<ExtendedNumber> = (0..=n).map(|_| draw(rng, w, s)).collect();
    let den: Vec<ExtendedNumber> = (0..=n).map(|_| draw(rng, w, s)).collect();
    for row in right.iter_mut() {
        if row.iter().all(|e| !e.is_finite()) {
            let k = rng.gen_range(0..=n);
            row[k] = finite(rng, w);
        }
    }
    for j in 0..=n {
        if !num[j].is_finite() && left.iter().all(|r| !r[j].is_finite()) {
            let k = rng.gen_range(0..=m);
            if k == m {
                num[j] = finite(rng, w);
            } else {
                left[k][j] = finite(rng, w);
            }
        }
    }
    let split = |rows: &[Vec<ExtendedNumber>]| {
        let body = rows.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>();
        let entries = body.into_iter().flatten().collect();
        let last = rows.iter().map(|r| r[n].clone()).collect::<Vec<_>>();
        (TropMatrix::new(m, n, entries, Semiring::MaxPlus).expect("shape"), last)
    };
    let (a, c) = split(&left);
    let (b, d) = split(&right);
    LfpInstance {
        a,
        b,
        c,
        d,
        p: num[..n].to_vec(),
        q: den[..n].to_vec(),
        r: num[n].clone(),
        s: den[n].clone(),
    }
}

/// A game with m Max and n Min nodes in which every node has a move.
pub fn random_game(rng: &mut impl Rng, m: usize, n: usize, bound: i64, sparsity: f64) -> MeanPayoffGame {
    let mut a = rows(rng, m, n, bound, sparsity);
    let mut b = rows(rng, m, n, bound, sparsity);
    for row in b.iter_mut() {
        if row.iter().all(|e| !e.is_finite()) {
            let k = rng.gen_range(0..n);
            row[k] = finite(rng, bound);
        }
    }
    for j in 0..n {
        if a.iter().all(|r| !r[j].is_finite()) {
            let k = rng.gen_range(0..m);
            a[k][j] = finite(rng, bound);
        }
    }
    MeanPayoffGame::from_rows(a, b).expect("assumptions hold by construction")
}
