use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Result, TropError};
use crate::game::int_game::IntGame;
use crate::game::oracle::{solve_threshold, WinningRegions};
use crate::game::{MaxStrategy, MeanPayoffGame};
use crate::grid::RationalGrid;
use crate::tropical::Rational;

/// Winning set {j : χ_j ≥ 0} with witnessing strategies.
pub fn winning_oracle(game: &MeanPayoffGame) -> WinningRegions {
    let (g, _) = IntGame::from_game(game);
    solve_threshold(&g, &BigInt::one(), &BigInt::from(0), false)
}

/// Whether χ_j ≥ t on an integer game, for every j at once.
pub(crate) fn at_least(g: &IntGame, t: &Rational) -> WinningRegions {
    solve_threshold(g, t.denom(), t.numer(), false)
}

pub(crate) fn int_value(g: &IntGame, j: usize) -> Rational {
    let w = g.max_abs();
    let two_w: BigInt = &w * 2;
    let grid = RationalGrid::new(-two_w.clone(), two_w, g.max_turns());
    let idx = grid
        .last_true(|t| at_least(g, t).winning[j])
        .expect("every value is at least −2W");
    grid.at(&idx)
}

/// Exact value χ_j by dichotomy over the candidate grid.
pub fn game_value(game: &MeanPayoffGame, j: usize) -> Result<Rational> {
    if j >= game.n() {
        return Err(TropError::DimensionMismatch(format!("no Min node {}", j + 1)));
    }
    let (g, scale) = IntGame::from_game(game);
    Ok(int_value(&g, j) / BigRational::from_integer(scale))
}

/// Climbs from `start` (a Max strategy for the integer game) to a strategy
/// whose one-player value at `node` equals the game value there.
pub(crate) fn climb(g: &IntGame, node: usize, start: MaxStrategy) -> (MaxStrategy, Rational) {
    let mut sigma = start;
    let mut v = g.max_fixed_value(&sigma.0, node);
    loop {
        let r = solve_threshold(g, v.denom(), v.numer(), true);
        if !r.winning[node] {
            return (sigma, v);
        }
        let nv = g.max_fixed_value(&r.sigma.0, node);
        assert!(nv > v, "strict threshold strategy must improve the value");
        sigma = r.sigma;
        v = nv;
    }
}

/// A Max strategy optimal from Min node `node`, with the value there.
pub fn optimal_max_strategy(game: &MeanPayoffGame, node: usize) -> Result<(MaxStrategy, Rational)> {
    if node >= game.n() {
        return Err(TropError::DimensionMismatch(format!("no Min node {}", node + 1)));
    }
    let (g, scale) = IntGame::from_game(game);
    let start = solve_threshold(&g, &BigInt::one(), &(-g.max_abs() * 2), false).sigma;
    let (s, v) = climb(&g, node, start);
    Ok((s, v / BigRational::from_integer(scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{brute_force_value, restrict_max};
    use crate::tropical::{cycle_time_vector, ext_row, frac, rat, ExtendedNumber as X, Mode};
    use proptest::prelude::*;

    fn g(a: &[&[Option<i64>]], b: &[&[Option<i64>]]) -> MeanPayoffGame {
        MeanPayoffGame::from_rows(a.iter().map(|r| ext_row(r)).collect(), b.iter().map(|r| ext_row(r)).collect())
            .unwrap()
    }

    #[test]
    fn one_node_losing() {
        let game = g(&[&[Some(0)]], &[&[Some(-1)]]);
        let r = winning_oracle(&game);
        assert_eq!(r.winning, vec![false]);
        assert_eq!(game_value(&game, 0).unwrap(), rat(-1));
    }

    #[test]
    fn rational_payments_unscale() {
        let game = MeanPayoffGame::from_rows(
            vec![vec![X::Finite(frac(1, 3))]],
            vec![vec![X::Finite(frac(1, 2))]],
        )
        .unwrap();
        assert_eq!(game_value(&game, 0).unwrap(), frac(1, 6));
    }

    fn random_game() -> impl Strategy<Value = MeanPayoffGame> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(proptest::option::weighted(0.7, -5i64..=5), m * n),
                proptest::collection::vec(proptest::option::weighted(0.7, -5i64..=5), m * n),
            )
                .prop_map(move |(mut a, mut b)| {
                    for j in 0..n {
                        a[j] = a[j].or(Some(2));
                    }
                    for i in 0..m {
                        b[i * n + i % n] = b[i * n + i % n].or(Some(-2));
                    }
                    let rows = |v: &[Option<i64>]| v.chunks(n).map(ext_row).collect::<Vec<_>>();
                    MeanPayoffGame::from_rows(rows(&a), rows(&b)).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn value_matches_brute_force(game in random_game()) {
            for j in 0..game.n() {
                prop_assert_eq!(game_value(&game, j).unwrap(), brute_force_value(&game, j).unwrap());
            }
        }

        #[test]
        fn oracle_strategies_witness_their_regions(game in random_game()) {
            let r = winning_oracle(&game);
            let chi_sigma = cycle_time_vector(&restrict_max(&game, &r.sigma).unwrap(), Mode::Min).unwrap();
            let chi_tau = cycle_time_vector(&crate::game::restrict_min(&game, &r.tau).unwrap(), Mode::Max).unwrap();
            for j in 0..game.n() {
                let v = brute_force_value(&game, j).unwrap();
                prop_assert_eq!(r.winning[j], v >= rat(0));
                if r.winning[j] {
                    prop_assert!(chi_sigma[j] >= X::zero());
                } else {
                    prop_assert!(chi_tau[j] < X::zero());
                }
            }
        }

        #[test]
        fn optimal_strategy_attains_value(game in random_game()) {
            for j in 0..game.n() {
                let (s, v) = optimal_max_strategy(&game, j).unwrap();
                prop_assert_eq!(&v, &brute_force_value(&game, j).unwrap());
                let chi = cycle_time_vector(&restrict_max(&game, &s).unwrap(), Mode::Min).unwrap();
                prop_assert_eq!(&chi[j], &X::Finite(v));
            }
        }
    }
}
