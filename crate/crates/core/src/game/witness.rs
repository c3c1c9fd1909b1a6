use crate::error::{Result, TropError};
use crate::game::two_sided::satisfies;
use crate::game::{winning_oracle, MaxStrategy, MeanPayoffGame};
use crate::tropical::{kleene_least_solution, ExtendedNumber, Semiring, TropMatrix};

/// E x_I ∨ F x_J ∨ h ≤ x_I, with `i_idx`/`j_idx` naming the original columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleeneSystem {
    pub i_idx: Vec<usize>,
    pub j_idx: Vec<usize>,
    pub e: TropMatrix,
    pub f: TropMatrix,
    pub h: Vec<ExtendedNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredSolution {
    pub system: KleeneSystem,
    /// E*h, ordered like `system.i_idx`.
    pub z: Vec<ExtendedNumber>,
    /// Full least solution with the anchor at 0 and −∞ off I.
    pub x: Vec<ExtendedNumber>,
}

/// Least x with x_anchor = 0 solving A x ≤ B^σ x, where row r of B^σ keeps
/// only column σ(r). Rows pointing at the anchor have a constant right-hand
/// side; they are left out of the Kleene system and verified afterwards.
pub fn anchored_least_solution(
    a: &TropMatrix,
    b: &TropMatrix,
    sigma: &[usize],
    anchor: usize,
) -> Result<AnchoredSolution> {
    let cols = a.cols();
    if sigma.len() != a.rows() || anchor >= cols || b.rows() != a.rows() || b.cols() != cols {
        return Err(TropError::DimensionMismatch("strategy or anchor does not fit the matrices".into()));
    }
    let mut in_i = vec![false; cols];
    let mut rhs = Vec::with_capacity(sigma.len());
    for (r, &t) in sigma.iter().enumerate() {
        let bt = b.get(r, t).finite().cloned().ok_or_else(|| {
            TropError::InvalidStrategy(format!("row {} points at an absent entry {}", r + 1, t + 1))
        })?;
        if t != anchor {
            in_i[t] = true;
        }
        rhs.push(bt);
    }
    let i_idx: Vec<usize> = (0..cols).filter(|&k| in_i[k]).collect();
    let mut pos = vec![usize::MAX; cols];
    for (p, &k) in i_idx.iter().enumerate() {
        pos[k] = p;
    }
    let mut in_j = vec![false; cols];
    let mut e = TropMatrix::filled(i_idx.len(), i_idx.len(), Semiring::MaxPlus);
    let mut h = vec![ExtendedNumber::NegInf; i_idx.len()];
    let mut f_entries: Vec<(usize, usize, ExtendedNumber)> = Vec::new();
    for (r, &t) in sigma.iter().enumerate() {
        if t == anchor {
            continue;
        }
        let pt = pos[t];
        for k in 0..cols {
            let ExtendedNumber::Finite(c) = a.get(r, k) else { continue };
            let coef = ExtendedNumber::Finite(c - &rhs[r]);
            if k == anchor {
                if coef > h[pt] {
                    h[pt] = coef;
                }
            } else if in_i[k] {
                if coef > *e.get(pt, pos[k]) {
                    e.set(pt, pos[k], coef);
                }
            } else {
                in_j[k] = true;
                f_entries.push((pt, k, coef));
            }
        }
    }
    let j_idx: Vec<usize> = (0..cols).filter(|&k| in_j[k]).collect();
    let mut f = TropMatrix::filled(i_idx.len(), j_idx.len(), Semiring::MaxPlus);
    for (pt, k, coef) in f_entries {
        let q = j_idx.binary_search(&k).expect("recorded");
        if coef > *f.get(pt, q) {
            f.set(pt, q, coef);
        }
    }
    let z = kleene_least_solution(&e, &h)?;
    let mut x = vec![ExtendedNumber::NegInf; cols];
    x[anchor] = ExtendedNumber::zero();
    for (p, &k) in i_idx.iter().enumerate() {
        x[k] = z[p].clone();
    }
    for (r, &t) in sigma.iter().enumerate() {
        let lhs = a.row(r).iter().zip(&x).map(|(c, y)| c.add_max(y)).max().unwrap_or(ExtendedNumber::NegInf);
        if lhs > x[t].add_rat(&rhs[r]) {
            return Err(TropError::SecondSubsystemViolated(r));
        }
    }
    Ok(AnchoredSolution { system: KleeneSystem { i_idx, j_idx, e, f, h }, z, x })
}

/// x with A x ≤ B x and x_i = 0, or `None` when Min node i is losing.
pub fn feasibility_witness(game: &MeanPayoffGame, i: usize) -> Result<Option<Vec<ExtendedNumber>>> {
    let r = winning_oracle(game);
    if !r.winning.get(i).copied().ok_or_else(|| TropError::DimensionMismatch(format!("no Min node {}", i + 1)))? {
        return Ok(None);
    }
    witness_from_strategy(game, &r.sigma, i).map(Some)
}

pub(crate) fn witness_from_strategy(
    game: &MeanPayoffGame,
    sigma: &MaxStrategy,
    i: usize,
) -> Result<Vec<ExtendedNumber>> {
    let sol = anchored_least_solution(game.a(), game.b(), &sigma.0, i)
        .map_err(|e| TropError::InternalCertificateMismatch(e.to_string()))?;
    if let Some(row) = satisfies(game.a(), game.b(), &sol.x) {
        return Err(TropError::InternalCertificateMismatch(format!("row {} fails", row + 1)));
    }
    Ok(sol.x)
}
