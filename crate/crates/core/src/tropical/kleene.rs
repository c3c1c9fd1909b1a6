use crate::error::{Result, TropError};
use crate::tropical::matrix::{Semiring, TropMatrix};
use crate::tropical::number::ExtendedNumber::{self, PosInf};

fn step(e: &TropMatrix, h: &[ExtendedNumber], z: &[ExtendedNumber]) -> Vec<ExtendedNumber> {
    (0..e.rows())
        .map(|i| {
            let mut best = h[i].clone();
            for (j, eij) in e.row(i).iter().enumerate() {
                if eij.is_finite() {
                    let cand = eij.add_max(&z[j]);
                    if cand > best {
                        best = cand;
                    }
                }
            }
            best
        })
        .collect()
}

fn check(e: &TropMatrix, h: &[ExtendedNumber]) -> Result<()> {
    if e.semiring() != Semiring::MaxPlus || e.rows() != e.cols() || e.rows() != h.len() {
        return Err(TropError::DimensionMismatch(format!(
            "Kleene star needs a square max-plus matrix matching h (got {}x{}, |h|={})",
            e.rows(),
            e.cols(),
            h.len()
        )));
    }
    Ok(())
}

/// E*h with +∞ on coordinates fed by a positive cycle.
pub fn kleene_least_solution_raw(e: &TropMatrix, h: &[ExtendedNumber]) -> Result<Vec<ExtendedNumber>> {
    check(e, h)?;
    let n = h.len();
    let mut z = h.to_vec();
    for _ in 0..=n {
        let next = step(e, h, &z);
        if next == z {
            return Ok(z);
        }
        z = next;
    }
    // Values still moving after n+1 rounds are fed by positive cycles; every
    // such coordinate moves again within another n rounds.
    let mut diverging = vec![false; n];
    for _ in 0..n {
        let next = step(e, h, &z);
        for i in 0..n {
            if next[i] != z[i] {
                diverging[i] = true;
            }
        }
        z = next;
    }
    Ok(z.into_iter()
        .zip(diverging)
        .map(|(x, d)| if d { PosInf } else { x })
        .collect())
}

/// The least z with Ez ∨ h ≤ z.
pub fn kleene_least_solution(e: &TropMatrix, h: &[ExtendedNumber]) -> Result<Vec<ExtendedNumber>> {
    let z = kleene_least_solution_raw(e, h)?;
    if z.contains(&PosInf) {
        return Err(TropError::PositiveCycleDiverges);
    }
    Ok(z)
}
