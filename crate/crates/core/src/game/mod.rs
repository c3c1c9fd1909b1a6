//! Bipartite mean payoff games: Max nodes are rows, Min nodes are columns.
//! A Min move j→i pays −a_ij, a Max move i→l pays b_il.

pub mod int_game;
pub mod lifting;
pub mod oracle;
pub mod play;
pub mod two_sided;
pub mod value;
pub mod witness;

use crate::error::{Result, TropError};
use crate::tropical::{residual_apply, trop_matvec, ExtendedNumber, Rational, Semiring, TropMatrix};

pub use oracle::WinningRegions;
pub use play::{brute_force_value, play_outcome};
pub use two_sided::{satisfies, two_sided_witness};
pub use value::{game_value, optimal_max_strategy, winning_oracle};
pub use witness::{anchored_least_solution, feasibility_witness, AnchoredSolution, KleeneSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanPayoffGame {
    a: TropMatrix,
    b: TropMatrix,
}

/// σ(i) is the Min node Max moves to from Max node i (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaxStrategy(pub Vec<usize>);

/// τ(j) is the Max node Min moves to from Min node j (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinStrategy(pub Vec<usize>);

/// Offending rows of B and columns of A.
pub fn violations(a: &TropMatrix, b: &TropMatrix) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..b.rows() {
        if !b.row(i).iter().any(ExtendedNumber::is_finite) {
            out.push(format!("row {} of the Max payment matrix has no finite entry", i + 1));
        }
    }
    for j in 0..a.cols() {
        if !a.column(j).any(ExtendedNumber::is_finite) {
            out.push(format!("column {} of the Min payment matrix has no finite entry", j + 1));
        }
    }
    out
}

impl MeanPayoffGame {
    pub fn new(a: TropMatrix, b: TropMatrix) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(TropError::DimensionMismatch(format!(
                "payment matrices are {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.semiring() != Semiring::MaxPlus || b.semiring() != Semiring::MaxPlus {
            return Err(TropError::DimensionMismatch("payment matrices must be max-plus".into()));
        }
        if a.rows() == 0 || a.cols() == 0 {
            return Err(TropError::AssumptionViolated("game needs at least one node of each kind".into()));
        }
        let v = violations(&a, &b);
        if !v.is_empty() {
            return Err(TropError::AssumptionViolated(v.join("; ")));
        }
        Ok(MeanPayoffGame { a, b })
    }

    pub fn from_rows(a: Vec<Vec<ExtendedNumber>>, b: Vec<Vec<ExtendedNumber>>) -> Result<Self> {
        Self::new(TropMatrix::from_rows(a, Semiring::MaxPlus)?, TropMatrix::from_rows(b, Semiring::MaxPlus)?)
    }

    /// Number of Max nodes.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Number of Min nodes.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &TropMatrix {
        &self.a
    }

    pub fn b(&self) -> &TropMatrix {
        &self.b
    }

    pub fn check_max(&self, s: &MaxStrategy) -> Result<()> {
        if s.0.len() != self.m() {
            return Err(TropError::InvalidStrategy(format!(
                "Max strategy has {} entries, game has {} Max nodes",
                s.0.len(),
                self.m()
            )));
        }
        for (i, &l) in s.0.iter().enumerate() {
            if l >= self.n() || !self.b.has_arc(i, l) {
                return Err(TropError::InvalidStrategy(format!("Max node {} cannot move to {}", i + 1, l + 1)));
            }
        }
        Ok(())
    }

    pub fn check_min(&self, t: &MinStrategy) -> Result<()> {
        if t.0.len() != self.n() {
            return Err(TropError::InvalidStrategy(format!(
                "Min strategy has {} entries, game has {} Min nodes",
                t.0.len(),
                self.n()
            )));
        }
        for (j, &i) in t.0.iter().enumerate() {
            if i >= self.m() || !self.a.has_arc(i, j) {
                return Err(TropError::InvalidStrategy(format!("Min node {} cannot move to {}", j + 1, i + 1)));
            }
        }
        Ok(())
    }

    /// All positional Max strategies, or `None` past `cap`.
    pub fn max_strategies(&self, cap: u128) -> Option<Vec<MaxStrategy>> {
        let choices: Vec<Vec<usize>> =
            (0..self.m()).map(|i| (0..self.n()).filter(|&l| self.b.has_arc(i, l)).collect()).collect();
        enumerate(&choices, cap).map(|v| v.into_iter().map(MaxStrategy).collect())
    }

    pub fn min_strategies(&self, cap: u128) -> Option<Vec<MinStrategy>> {
        let choices: Vec<Vec<usize>> =
            (0..self.n()).map(|j| (0..self.m()).filter(|&i| self.a.has_arc(i, j)).collect()).collect();
        enumerate(&choices, cap).map(|v| v.into_iter().map(MinStrategy).collect())
    }

    pub(crate) fn strategy_counts(&self) -> (u128, u128) {
        let smax = (0..self.m())
            .map(|i| (0..self.n()).filter(|&l| self.b.has_arc(i, l)).count() as u128)
            .fold(1u128, |a, c| a.saturating_mul(c));
        let smin = (0..self.n())
            .map(|j| (0..self.m()).filter(|&i| self.a.has_arc(i, j)).count() as u128)
            .fold(1u128, |a, c| a.saturating_mul(c));
        (smax, smin)
    }

    /// Largest |finite payment|.
    pub fn max_abs_payment(&self) -> Rational {
        let a = crate::tropical::matrix::finite_max_abs(&self.a);
        let b = crate::tropical::matrix::finite_max_abs(&self.b);
        a.into_iter().chain(b).max().unwrap_or_default()
    }
}

fn enumerate(choices: &[Vec<usize>], cap: u128) -> Option<Vec<Vec<usize>>> {
    let total = choices.iter().fold(1u128, |a, c| a.saturating_mul(c.len() as u128));
    if total > cap {
        return None;
    }
    let mut out = vec![Vec::with_capacity(choices.len())];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    Some(out)
}

/// f_j(x) = min_k(−a_kj + max_l(b_kl + x_l)).
pub fn dynamic_operator(game: &MeanPayoffGame, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != game.n() {
        return Err(TropError::DimensionMismatch(format!("vector of length {} for {} Min nodes", x.len(), game.n())));
    }
    let inner: Vec<Rational> = (0..game.m())
        .map(|k| {
            (0..game.n())
                .filter_map(|l| game.b.get(k, l).finite().map(|b| b + &x[l]))
                .max()
                .expect("Assumption 1")
        })
        .collect();
    Ok((0..game.n())
        .map(|j| {
            (0..game.m())
                .filter_map(|k| game.a.get(k, j).finite().map(|a| &inner[k] - a))
                .min()
                .expect("Assumption 2")
        })
        .collect())
}

/// The same operator through residuation: A♯(Bx).
pub fn dynamic_operator_residuated(game: &MeanPayoffGame, x: &[ExtendedNumber]) -> Result<Vec<ExtendedNumber>> {
    residual_apply(&game.a, &trop_matvec(&game.b, x)?)
}

/// Min-plus n×n matrix of the one-player game where Max plays σ.
pub fn restrict_max(game: &MeanPayoffGame, sigma: &MaxStrategy) -> Result<TropMatrix> {
    game.check_max(sigma)?;
    let n = game.n();
    let mut out = TropMatrix::filled(n, n, Semiring::MinPlus);
    for (i, &l) in sigma.0.iter().enumerate() {
        let b = game.b.get(i, l);
        for j in 0..n {
            if let ExtendedNumber::Finite(a) = game.a.get(i, j) {
                let w = b.add_rat(&-a);
                if w < *out.get(j, l) {
                    out.set(j, l, w);
                }
            }
        }
    }
    Ok(out)
}

/// Max-plus n×n matrix of the one-player game where Min plays τ.
pub fn restrict_min(game: &MeanPayoffGame, tau: &MinStrategy) -> Result<TropMatrix> {
    game.check_min(tau)?;
    let n = game.n();
    let mut out = TropMatrix::filled(n, n, Semiring::MaxPlus);
    for (j, &i) in tau.0.iter().enumerate() {
        let a = game.a.get(i, j).finite().expect("checked").clone();
        for l in 0..n {
            out.set(j, l, game.b.get(i, l).add_rat(&-a.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{cycle_time_vector, ext_row, frac, rat, ExtendedNumber as X, Mode};
    use proptest::prelude::*;

    pub(crate) fn game(a: &[&[Option<i64>]], b: &[&[Option<i64>]]) -> MeanPayoffGame {
        MeanPayoffGame::from_rows(a.iter().map(|r| ext_row(r)).collect(), b.iter().map(|r| ext_row(r)).collect())
            .unwrap()
    }

    #[test]
    fn validation() {
        let ok = MeanPayoffGame::from_rows(vec![ext_row(&[Some(0)])], vec![ext_row(&[Some(0)])]);
        assert!(ok.is_ok());
        let bad_row = MeanPayoffGame::from_rows(
            vec![ext_row(&[Some(0), Some(0)]), ext_row(&[Some(0), Some(0)])],
            vec![ext_row(&[Some(0), Some(0)]), ext_row(&[None, None])],
        );
        assert!(matches!(bad_row, Err(TropError::AssumptionViolated(ref s)) if s.contains("row 2")));
        let bad_col = MeanPayoffGame::from_rows(
            vec![ext_row(&[Some(0), None]), ext_row(&[Some(0), None])],
            vec![ext_row(&[Some(0), Some(0)]), ext_row(&[Some(0), Some(0)])],
        );
        assert!(matches!(bad_col, Err(TropError::AssumptionViolated(ref s)) if s.contains("column 2")));
    }

    #[test]
    fn one_by_one() {
        let g = game(&[&[Some(0)]], &[&[Some(0)]]);
        assert_eq!(dynamic_operator(&g, &[rat(0)]).unwrap(), vec![rat(0)]);
        let g = game(&[&[Some(2)]], &[&[Some(5)]]);
        assert_eq!(dynamic_operator(&g, &[rat(0)]).unwrap(), vec![rat(3)]);
        let rm = restrict_max(&g, &MaxStrategy(vec![0])).unwrap();
        assert_eq!(rm.get(0, 0), &X::int(3));
        assert_eq!(rm.semiring(), Semiring::MinPlus);
        assert_eq!(restrict_min(&g, &MinStrategy(vec![0])).unwrap().get(0, 0), &X::int(3));
    }

    #[test]
    fn strategy_invariants() {
        let g = game(&[&[Some(0), Some(0)]], &[&[Some(1), None]]);
        assert!(restrict_max(&g, &MaxStrategy(vec![1])).is_err());
        assert!(g.check_max(&MaxStrategy(vec![0])).is_ok());
        assert!(g.check_min(&MinStrategy(vec![0])).is_err());
    }

    fn small_game() -> impl Strategy<Value = MeanPayoffGame> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(proptest::option::weighted(0.75, -4i64..=4), m * n),
                proptest::collection::vec(proptest::option::weighted(0.75, -4i64..=4), m * n),
            )
                .prop_map(move |(mut a, mut b)| {
                    for j in 0..n {
                        a[j] = a[j].or(Some(0));
                    }
                    for i in 0..m {
                        b[i * n] = b[i * n].or(Some(1));
                    }
                    let rows = |v: &[Option<i64>]| v.chunks(n).map(ext_row).collect::<Vec<_>>();
                    MeanPayoffGame::from_rows(rows(&a), rows(&b)).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn operator_is_residuated_composition(g in small_game(), xs in proptest::collection::vec(-6i64..=6, 3)) {
            let x: Vec<Rational> = xs[..g.n()].iter().map(|&v| rat(v)).collect();
            let xe: Vec<X> = x.iter().cloned().map(X::Finite).collect();
            let f = dynamic_operator(&g, &x).unwrap();
            let r = dynamic_operator_residuated(&g, &xe).unwrap();
            prop_assert_eq!(f.into_iter().map(X::Finite).collect::<Vec<_>>(), r);
        }

        #[test]
        fn operator_isotone_and_homogeneous(g in small_game(), xs in proptest::collection::vec(-6i64..=6, 3), d in proptest::collection::vec(0i64..=3, 3), shift in -5i64..=5) {
            let n = g.n();
            let x: Vec<Rational> = xs[..n].iter().map(|&v| rat(v)).collect();
            let y: Vec<Rational> = x.iter().zip(&d).map(|(a, b)| a + rat(*b)).collect();
            let fx = dynamic_operator(&g, &x).unwrap();
            let fy = dynamic_operator(&g, &y).unwrap();
            prop_assert!(fx.iter().zip(&fy).all(|(a, b)| a <= b));
            let s = frac(shift, 2);
            let xs2: Vec<Rational> = x.iter().map(|a| a + &s).collect();
            let fs = dynamic_operator(&g, &xs2).unwrap();
            prop_assert!(fs.iter().zip(&fx).all(|(a, b)| *a == b + &s));
        }

        #[test]
        fn duality_sandwich(g in small_game()) {
            for j in 0..g.n() {
                let v = game_value(&g, j).unwrap();
                let best_max = g.max_strategies(1 << 20).unwrap().iter()
                    .map(|s| cycle_time_vector(&restrict_max(&g, s).unwrap(), Mode::Min).unwrap()[j].clone())
                    .max().unwrap();
                let best_min = g.min_strategies(1 << 20).unwrap().iter()
                    .map(|t| cycle_time_vector(&restrict_min(&g, t).unwrap(), Mode::Max).unwrap()[j].clone())
                    .min().unwrap();
                prop_assert_eq!(&best_max, &X::Finite(v.clone()));
                prop_assert_eq!(&best_min, &X::Finite(v));
            }
        }
    }
}
