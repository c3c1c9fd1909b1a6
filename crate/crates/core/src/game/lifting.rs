//! Least progress measure lifting for the energy game on the same arena.
//! Slow (pseudo-polynomial in the payments) but independent of the strategy
//! improvement oracle, so tests use it as a cross-check.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::game::int_game::IntGame;

/// Min nodes from which Max keeps every cycle nonnegative (χ ≥ 0).
pub fn progress_measure_winning(g: &IntGame) -> Vec<bool> {
    let (m, n) = (g.m, g.n);
    // node ids: Min j → j, Max i → n + i
    let mut out: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); m + n];
    for i in 0..m {
        for j in 0..n {
            if let Some(a) = g.a(i, j) {
                out[j].push((n + i, -a.clone()));
            }
            if let Some(b) = g.b(i, j) {
                out[n + i].push((j, b.clone()));
            }
        }
    }
    let cap: BigInt = out
        .iter()
        .map(|arcs| arcs.iter().map(|(_, w)| -w).max().unwrap_or_default().max(BigInt::zero()))
        .sum();
    // None = ⊤
    let mut f: Vec<Option<BigInt>> = vec![Some(BigInt::zero()); m + n];
    let lift = |f: &Vec<Option<BigInt>>, v: usize| -> Option<BigInt> {
        let opts = out[v].iter().map(|(s, w)| {
            f[*s].as_ref().and_then(|x| {
                let need = (x - w).max(BigInt::zero());
                (need <= cap).then_some(need)
            })
        });
        // Max nodes pick the cheapest successor, Min nodes the dearest.
        if v >= n {
            opts.min_by(top_cmp).flatten()
        } else {
            opts.max_by(top_cmp).flatten()
        }
    };
    loop {
        let mut changed = false;
        for v in 0..m + n {
            if f[v].is_none() {
                continue;
            }
            let nv = lift(&f, v);
            let bigger = match (&nv, &f[v]) {
                (None, _) => true,
                (Some(a), Some(b)) => a > b,
                _ => false,
            };
            if bigger {
                f[v] = nv;
                changed = true;
            }
        }
        if !changed {
            return f[..n].iter().map(Option::is_some).collect();
        }
    }
}

/// Order with `None` (⊤) on top.
fn top_cmp(a: &Option<BigInt>, b: &Option<BigInt>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, _) => std::cmp::Ordering::Greater,
        (_, None) => std::cmp::Ordering::Less,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::oracle::solve_threshold;
    use proptest::prelude::*;

    fn int_game() -> impl Strategy<Value = IntGame> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(proptest::option::weighted(0.7, -5i64..=5), m * n),
                proptest::collection::vec(proptest::option::weighted(0.7, -5i64..=5), m * n),
            )
                .prop_map(move |(mut a, mut b)| {
                    for j in 0..n {
                        a[j] = a[j].or(Some(1));
                    }
                    for i in 0..m {
                        b[i * n] = b[i * n].or(Some(-1));
                    }
                    IntGame {
                        m,
                        n,
                        a: a.into_iter().map(|x| x.map(BigInt::from)).collect(),
                        b: b.into_iter().map(|x| x.map(BigInt::from)).collect(),
                    }
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn agrees_with_strategy_improvement(g in int_game()) {
            let r = solve_threshold(&g, &BigInt::from(1), &BigInt::zero(), false);
            prop_assert_eq!(progress_measure_winning(&g), r.winning);
        }
    }
}
