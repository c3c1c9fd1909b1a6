//! Threshold decisions by strategy improvement with a retreat vertex.
//!
//! Every Max node may additionally "retreat" to a terminal sink with weight 0.
//! Max keeps a strategy under which every cycle is strictly positive; Min
//! answers with shortest paths to the sink, and Max switches wherever a
//! successor offers a strictly longer shortest path. At the fixed point the
//! nodes that cannot reach the sink are exactly those from which Max forces
//! positive cycles, and the shortest-path potentials certify the rest.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::game::int_game::IntGame;
use crate::game::{MaxStrategy, MinStrategy};
use crate::tropical::int::{fits_i64, Int};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningRegions {
    /// Min nodes from which Max wins.
    pub winning: Vec<bool>,
    /// Max nodes from which Max wins.
    pub max_winning: Vec<bool>,
    /// Keeps every cycle reachable from a winning node on the winning side.
    pub sigma: MaxStrategy,
    /// Keeps every cycle reachable from a losing node on the losing side.
    pub tau: MinStrategy,
}

/// Decides, for every node, whether Max can force all cycles to satisfy
/// q·S − p·k ≥ 0 (or > 0 when `strict`), where S is the payment sum and k the
/// number of turns of the cycle. In other words, whether χ ≥ p/q (χ > p/q).
pub fn solve_threshold(g: &IntGame, q: &BigInt, p: &BigInt, strict: bool) -> WinningRegions {
    debug_assert!(q.is_positive());
    let k = if strict { BigInt::from(1) } else { BigInt::from(g.max_turns() + 1) };
    let bonus = if strict { BigInt::from(0) } else { BigInt::from(1) };
    let min_w: Vec<Option<BigInt>> = g.a.iter().map(|a| a.as_ref().map(|a| -(&k * q * a))).collect();
    let max_w: Vec<Option<BigInt>> =
        g.b.iter().map(|b| b.as_ref().map(|b| &k * (q * b - p) + &bonus)).collect();
    let w = min_w.iter().chain(&max_w).flatten().map(|x| x.abs()).max().unwrap_or_default();
    let len = (g.m + g.n + 2) as u64;
    if fits_i64(&w, 4 * len) {
        run::<i64>(g, &min_w, &max_w)
    } else {
        run::<BigInt>(g, &min_w, &max_w)
    }
}

struct Arena<T> {
    m: usize,
    n: usize,
    /// Min j → Max i.
    min_arcs: Vec<Vec<(usize, T)>>,
    /// Max i → Min l.
    max_arcs: Vec<Vec<(usize, T)>>,
    /// For Max i, the Min nodes j with an arc j → i.
    into_max: Vec<Vec<(usize, T)>>,
}

/// `None` is +∞.
fn gt<T: Ord>(a: &Option<T>, b: &Option<T>) -> bool {
    match (a, b) {
        (None, None) => false,
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x > y,
    }
}

fn run<T: Int>(g: &IntGame, min_w: &[Option<BigInt>], max_w: &[Option<BigInt>]) -> WinningRegions {
    let (m, n) = (g.m, g.n);
    let mut arena = Arena::<T> {
        m,
        n,
        min_arcs: vec![Vec::new(); n],
        max_arcs: vec![Vec::new(); m],
        into_max: vec![Vec::new(); m],
    };
    for i in 0..m {
        for j in 0..n {
            if let Some(w) = &min_w[i * n + j] {
                let w = T::from_big(w);
                arena.min_arcs[j].push((i, w.clone()));
                arena.into_max[i].push((j, w));
            }
            if let Some(w) = &max_w[i * n + j] {
                arena.max_arcs[i].push((j, T::from_big(w)));
            }
        }
    }
    // `None` = retreat, otherwise an index into max_arcs[i].
    let mut sigma: Vec<Option<usize>> = vec![None; m];
    loop {
        let (dmin, dmax) = arena.evaluate(&sigma);
        let mut switched = false;
        for i in 0..m {
            let mut best: Option<T> = Some(T::zero());
            let mut choice = None;
            for (k, (l, w)) in arena.max_arcs[i].iter().enumerate() {
                let val = dmin[*l].as_ref().map(|d| w.add(d));
                if gt(&val, &best) || (choice.is_none() && val == best) {
                    best = val;
                    choice = Some(k);
                }
            }
            if gt(&best, &dmax[i]) {
                sigma[i] = choice;
                switched = true;
            }
        }
        if !switched {
            return arena.extract(&sigma, &dmin, &dmax);
        }
    }
}

impl<T: Int> Arena<T> {
    /// Shortest distances to the sink in the graph where Max follows `sigma`.
    fn evaluate(&self, sigma: &[Option<usize>]) -> (Vec<Option<T>>, Vec<Option<T>>) {
        let mut choosers: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.n];
        let mut dmax: Vec<Option<T>> = vec![None; self.m];
        let mut dmin: Vec<Option<T>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        let mut queued = vec![false; self.m];
        for (i, s) in sigma.iter().enumerate() {
            match s {
                Some(k) => {
                    let (l, w) = &self.max_arcs[i][*k];
                    choosers[*l].push((i, w.clone()));
                }
                None => {
                    dmax[i] = Some(T::zero());
                    queue.push_back(i);
                    queued[i] = true;
                }
            }
        }
        while let Some(i) = queue.pop_front() {
            queued[i] = false;
            let di = dmax[i].clone().expect("queued nodes are finite");
            for (j, w) in &self.into_max[i] {
                let cand = w.add(&di);
                if dmin[*j].as_ref().is_none_or(|d| cand < *d) {
                    for (i2, w2) in &choosers[*j] {
                        let c2 = w2.add(&cand);
                        if dmax[*i2].as_ref().is_none_or(|d| c2 < *d) {
                            dmax[*i2] = Some(c2);
                            if !queued[*i2] {
                                queued[*i2] = true;
                                queue.push_back(*i2);
                            }
                        }
                    }
                    dmin[*j] = Some(cand);
                }
            }
        }
        (dmin, dmax)
    }

    fn extract(&self, sigma: &[Option<usize>], dmin: &[Option<T>], dmax: &[Option<T>]) -> WinningRegions {
        let sigma = sigma
            .iter()
            .enumerate()
            .map(|(i, s)| self.max_arcs[i][s.unwrap_or(0)].0)
            .collect();
        let tau = (0..self.n)
            .map(|j| match &dmin[j] {
                None => self.min_arcs[j][0].0,
                Some(dj) => {
                    self.min_arcs[j]
                        .iter()
                        .find(|(i, w)| dmax[*i].as_ref().is_some_and(|di| w.add(di) == *dj))
                        .expect("shortest distance is attained")
                        .0
                }
            })
            .collect();
        WinningRegions {
            winning: dmin.iter().map(Option::is_none).collect(),
            max_winning: dmax.iter().map(Option::is_none).collect(),
            sigma: MaxStrategy(sigma),
            tau: MinStrategy(tau),
        }
    }
}
