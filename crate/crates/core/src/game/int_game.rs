use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::game::MeanPayoffGame;
use crate::tropical::number::lcm_denominators;
use crate::tropical::{ExtendedNumber, Mode, Rational, WeightedDigraph};

/// A game with integer payments, row-major, `None` for −∞.
#[derive(Clone, Debug)]
pub struct IntGame {
    pub m: usize,
    pub n: usize,
    pub a: Vec<Option<BigInt>>,
    pub b: Vec<Option<BigInt>>,
}

impl IntGame {
    /// Scales all payments by the LCM of their denominators; returns the factor.
    pub fn from_game(g: &MeanPayoffGame) -> (IntGame, BigInt) {
        let all = g.a().entries().iter().chain(g.b().entries()).filter_map(ExtendedNumber::finite);
        let scale = lcm_denominators(all);
        let conv = |e: &ExtendedNumber| {
            e.finite().map(|r| (r * BigRational::from_integer(scale.clone())).to_integer())
        };
        let ig = IntGame {
            m: g.m(),
            n: g.n(),
            a: g.a().entries().iter().map(conv).collect(),
            b: g.b().entries().iter().map(conv).collect(),
        };
        (ig, scale)
    }

    pub fn a(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.a[i * self.n + j].as_ref()
    }

    pub fn b(&self, i: usize, l: usize) -> Option<&BigInt> {
        self.b[i * self.n + l].as_ref()
    }

    pub fn max_abs(&self) -> BigInt {
        self.a.iter().chain(&self.b).flatten().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Cycles of a bipartite game have at most this many turns.
    pub fn max_turns(&self) -> usize {
        self.m.min(self.n)
    }

    /// Exact per-turn value at `node` of the one-player game where Max plays
    /// `sigma` (indices of Min nodes).
    pub fn max_fixed_value(&self, sigma: &[usize], node: usize) -> Rational {
        let mut best: Vec<Option<BigInt>> = vec![None; self.n * self.n];
        for (i, &l) in sigma.iter().enumerate() {
            let b = self.b(i, l).expect("valid strategy");
            for j in 0..self.n {
                if let Some(a) = self.a(i, j) {
                    let w = b - a;
                    let slot = &mut best[j * self.n + l];
                    if slot.as_ref().is_none_or(|s| w < *s) {
                        *slot = Some(w);
                    }
                }
            }
        }
        let arcs = best
            .into_iter()
            .enumerate()
            .filter_map(|(k, w)| w.map(|w| (k / self.n, k % self.n, BigRational::from_integer(w))))
            .collect();
        let d = WeightedDigraph::new(self.n, arcs).expect("one arc per pair");
        crate::tropical::accessible_cycle_mean(&d, node, Mode::Min).expect("every Min node has a move")
    }
}
