use crate::error::{Result, TropError};
use crate::tropical::number::ExtendedNumber::{self, Finite, NegInf, PosInf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semiring {
    MaxPlus,
    MinPlus,
}

impl Semiring {
    /// The additive neutral element: an absent arc.
    pub fn zero(self) -> ExtendedNumber {
        match self {
            Semiring::MaxPlus => NegInf,
            Semiring::MinPlus => PosInf,
        }
    }

    pub fn times(self, a: &ExtendedNumber, b: &ExtendedNumber) -> ExtendedNumber {
        match self {
            Semiring::MaxPlus => a.add_max(b),
            Semiring::MinPlus => a.add_min(b),
        }
    }

    pub fn plus(self, a: ExtendedNumber, b: ExtendedNumber) -> ExtendedNumber {
        match self {
            Semiring::MaxPlus => a.max(b),
            Semiring::MinPlus => a.min(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtendedNumber>,
    semiring: Semiring,
}

impl TropMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<ExtendedNumber>,
        semiring: Semiring,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(TropError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let forbidden = match semiring {
            Semiring::MaxPlus => PosInf,
            Semiring::MinPlus => NegInf,
        };
        if entries.contains(&forbidden) {
            return Err(TropError::DimensionMismatch(format!(
                "{semiring:?} matrix cannot store {forbidden}"
            )));
        }
        Ok(TropMatrix { rows, cols, entries, semiring })
    }

    pub fn from_rows(rows: Vec<Vec<ExtendedNumber>>, semiring: Semiring) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(TropError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect(), semiring)
    }

    pub fn filled(rows: usize, cols: usize, semiring: Semiring) -> Self {
        TropMatrix { rows, cols, entries: vec![semiring.zero(); rows * cols], semiring }
    }

    pub fn identity(n: usize, semiring: Semiring) -> Self {
        let mut m = Self::filled(n, n, semiring);
        for i in 0..n {
            m.set(i, i, ExtendedNumber::zero());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtendedNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExtendedNumber) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExtendedNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &ExtendedNumber> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn entries(&self) -> &[ExtendedNumber] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<ExtendedNumber>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// True when the entry encodes an arc (it is not the semiring's zero).
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_finite()
    }
}

pub fn trop_matvec(e: &TropMatrix, x: &[ExtendedNumber]) -> Result<Vec<ExtendedNumber>> {
    if e.cols != x.len() {
        return Err(TropError::DimensionMismatch(format!(
            "matrix has {} columns, vector has length {}",
            e.cols,
            x.len()
        )));
    }
    let s = e.semiring;
    Ok((0..e.rows)
        .map(|i| {
            e.row(i)
                .iter()
                .zip(x)
                .fold(s.zero(), |acc, (a, b)| s.plus(acc, s.times(a, b)))
        })
        .collect())
}

/// Cuninghame-Green residuation: component j is min_i(−e_ij + y_i).
pub fn residual_apply(e: &TropMatrix, y: &[ExtendedNumber]) -> Result<Vec<ExtendedNumber>> {
    if e.semiring != Semiring::MaxPlus {
        return Err(TropError::DimensionMismatch("residuation needs a max-plus matrix".into()));
    }
    if e.rows != y.len() {
        return Err(TropError::DimensionMismatch(format!(
            "matrix has {} rows, vector has length {}",
            e.rows,
            y.len()
        )));
    }
    Ok((0..e.cols)
        .map(|j| {
            e.column(j)
                .zip(y)
                .map(|(a, yi)| a.neg().add_min(yi))
                .min()
                .unwrap_or(PosInf)
        })
        .collect())
}

/// Componentwise order on vectors.
pub fn vec_le(x: &[ExtendedNumber], y: &[ExtendedNumber]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a <= b)
}

pub fn finite_max_abs(e: &TropMatrix) -> Option<crate::tropical::number::Rational> {
    e.entries
        .iter()
        .filter_map(|x| match x {
            Finite(r) => Some(num_traits::Signed::abs(r)),
            _ => None,
        })
        .max()
}
