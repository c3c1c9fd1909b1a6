//! Two-sided systems A x ≤ B x without the game assumptions. Rows whose
//! right-hand side is empty force their left support to −∞; columns absent
//! from every left-hand side can be sent arbitrarily high. Peeling both off
//! leaves a system that is a valid game.

use num_rational::BigRational;

use crate::error::{Result, TropError};
use crate::game::witness::witness_from_strategy;
use crate::game::{winning_oracle, MeanPayoffGame};
use crate::tropical::{ExtendedNumber, Rational, Semiring, TropMatrix};

/// First row violating A x ≤ B x, if any.
pub fn satisfies(a: &TropMatrix, b: &TropMatrix, x: &[ExtendedNumber]) -> Option<usize> {
    (0..a.rows()).find(|&r| {
        let side = |m: &TropMatrix| {
            m.row(r).iter().zip(x).map(|(c, y)| c.add_max(y)).max().unwrap_or(ExtendedNumber::NegInf)
        };
        side(a) > side(b)
    })
}

enum Stage {
    Free { cols: Vec<usize>, rows: Vec<usize> },
    Forced { cols: Vec<usize> },
}

struct Reduction {
    rows: Vec<usize>,
    cols: Vec<usize>,
    stages: Vec<Stage>,
}

fn reduce(a: &TropMatrix, b: &TropMatrix) -> Reduction {
    let mut rows: Vec<usize> = (0..a.rows()).collect();
    let mut cols: Vec<usize> = (0..a.cols()).collect();
    let mut stages = Vec::new();
    loop {
        let free: Vec<usize> =
            cols.iter().copied().filter(|&c| rows.iter().all(|&r| !a.has_arc(r, c))).collect();
        if !free.is_empty() {
            let (gone, kept): (Vec<usize>, Vec<usize>) =
                rows.iter().partition(|&&r| free.iter().any(|&c| b.has_arc(r, c)));
            rows = kept;
            cols.retain(|c| !free.contains(c));
            stages.push(Stage::Free { cols: free, rows: gone });
            continue;
        }
        let (empty, kept): (Vec<usize>, Vec<usize>) =
            rows.iter().partition(|&&r| cols.iter().all(|&c| !b.has_arc(r, c)));
        if !empty.is_empty() {
            let forced: Vec<usize> =
                cols.iter().copied().filter(|&c| empty.iter().any(|&r| a.has_arc(r, c))).collect();
            rows = kept;
            cols.retain(|c| !forced.contains(c));
            stages.push(Stage::Forced { cols: forced });
            continue;
        }
        return Reduction { rows, cols, stages };
    }
}

fn submatrix(m: &TropMatrix, rows: &[usize], cols: &[usize]) -> TropMatrix {
    let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| m.get(r, c).clone())).collect();
    TropMatrix::new(rows.len(), cols.len(), entries, Semiring::MaxPlus).expect("shape")
}

/// Some x with A x ≤ B x and x_col finite, or `None` if none exists.
pub fn two_sided_witness(a: &TropMatrix, b: &TropMatrix, col: usize) -> Result<Option<Vec<ExtendedNumber>>> {
    if a.rows() != b.rows() || a.cols() != b.cols() || col >= a.cols() {
        return Err(TropError::DimensionMismatch("two-sided system shape".into()));
    }
    let red = reduce(a, b);
    let forced = red.stages.iter().any(|s| matches!(s, Stage::Forced { cols } if cols.contains(&col)));
    if forced {
        return Ok(None);
    }
    let mut x = vec![ExtendedNumber::NegInf; a.cols()];
    if let Some(p) = red.cols.iter().position(|&c| c == col) {
        let game = MeanPayoffGame::new(submatrix(a, &red.rows, &red.cols), submatrix(b, &red.rows, &red.cols))?;
        let win = winning_oracle(&game);
        if !win.winning[p] {
            return Ok(None);
        }
        let sub = witness_from_strategy(&game, &win.sigma, p)?;
        for (k, &c) in red.cols.iter().enumerate() {
            x[c] = sub[k].clone();
        }
    }
    for stage in red.stages.iter().rev() {
        let Stage::Free { cols, rows } = stage else { continue };
        let mut t = Rational::from_integer(0.into());
        for &r in rows {
            let lhs = a.row(r).iter().zip(&x).map(|(c, y)| c.add_max(y)).max().unwrap_or(ExtendedNumber::NegInf);
            let best_b = cols.iter().filter_map(|&c| b.get(r, c).finite()).max().expect("row has a free column");
            if let ExtendedNumber::Finite(l) = lhs {
                t = t.max(l - best_b);
            }
        }
        for &c in cols {
            x[c] = ExtendedNumber::Finite(t.clone());
        }
    }
    if let Some(r) = satisfies(a, b, &x) {
        return Err(TropError::InternalCertificateMismatch(format!("two-sided witness fails row {}", r + 1)));
    }
    let shift: BigRational = x[col].finite().expect("target is finite").clone();
    Ok(Some(x.into_iter().map(|v| v.add_rat(&-shift.clone())).collect()))
}
