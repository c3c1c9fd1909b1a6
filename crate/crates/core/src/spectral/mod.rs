//! Tropical linear-fractional programs
//!
//!   minimize (p x ∨ r) − (q x ∨ s)  subject to  A x ∨ c ≤ B x ∨ d,
//!
//! their homogeneous form over y = (x, y_{n+1}) and the parametric game whose
//! value at the last Min node is the spectral function.

mod function;
mod reconstruct;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Result, TropError};
use crate::game::MeanPayoffGame;
use crate::tropical::number::lcm_denominators;
use crate::tropical::{ExtendedNumber, Rational, Semiring, TropMatrix};

pub use function::{initial_bounds, phi, phi_nonneg, phi_sigma, phi_tau, PhiSign};
pub use reconstruct::{piece_bound, reconstruct, reconstruct_with_cap, SpectralPiece, DEFAULT_GRID_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfpInstance {
    pub a: TropMatrix,
    pub b: TropMatrix,
    pub c: Vec<ExtendedNumber>,
    pub d: Vec<ExtendedNumber>,
    pub p: Vec<ExtendedNumber>,
    pub q: Vec<ExtendedNumber>,
    pub r: ExtendedNumber,
    pub s: ExtendedNumber,
}

impl LfpInstance {
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Swaps numerator and denominator, turning maximization of
    /// (p x ∨ r) − (q x ∨ s) into minimization of its opposite.
    pub fn dualized(self) -> LfpInstance {
        LfpInstance { p: self.q, q: self.p, r: self.s, s: self.r, ..self }
    }

    pub fn is_feasible(&self, x: &[ExtendedNumber]) -> bool {
        x.len() == self.n()
            && (0..self.m()).all(|i| {
                let side = |m: &TropMatrix, e: &ExtendedNumber| affine(m.row(i), x, e);
                side(&self.a, &self.c[i]) <= side(&self.b, &self.d[i])
            })
    }

    /// Objective at x, with −∞ − (−∞) = −∞ and finite − (−∞) = +∞.
    pub fn objective(&self, x: &[ExtendedNumber]) -> ExtendedNumber {
        let num = affine(&self.p, x, &self.r);
        let den = affine(&self.q, x, &self.s);
        match (&num, &den) {
            (ExtendedNumber::NegInf, _) => ExtendedNumber::NegInf,
            (_, ExtendedNumber::NegInf) => ExtendedNumber::PosInf,
            (ExtendedNumber::Finite(a), ExtendedNumber::Finite(b)) => ExtendedNumber::Finite(a - b),
            _ => unreachable!("max-plus data has no +∞"),
        }
    }
}

fn affine(row: &[ExtendedNumber], x: &[ExtendedNumber], free: &ExtendedNumber) -> ExtendedNumber {
    row.iter().zip(x).map(|(a, y)| a.add_max(y)).fold(free.clone(), ExtendedNumber::max)
}

/// C y ≤ D y and u y ≤ λ + v y, stored with integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousInstance {
    lhs: TropMatrix,
    rhs: TropMatrix,
    num: Vec<ExtendedNumber>,
    den: Vec<ExtendedNumber>,
    bound: BigInt,
    scale: BigInt,
}

impl HomogeneousInstance {
    /// Takes (C, D, u, v) in original units and rescales them to integers.
    /// The last row of the parametric game may be empty (v ≡ −∞); that
    /// degenerate case is left to the solver's prechecks.
    pub fn new(
        lhs: TropMatrix,
        rhs: TropMatrix,
        num: Vec<ExtendedNumber>,
        den: Vec<ExtendedNumber>,
    ) -> Result<Self> {
        let (m, cols) = (lhs.rows(), lhs.cols());
        if rhs.rows() != m || rhs.cols() != cols || num.len() != cols || den.len() != cols {
            return Err(TropError::DimensionMismatch(format!(
                "C is {}x{}, D is {}x{}, u has {} and v has {} entries",
                m,
                cols,
                rhs.rows(),
                rhs.cols(),
                num.len(),
                den.len()
            )));
        }
        if cols == 0 {
            return Err(TropError::DimensionMismatch("no homogenizing column".into()));
        }
        if lhs.semiring() != Semiring::MaxPlus || rhs.semiring() != Semiring::MaxPlus {
            return Err(TropError::DimensionMismatch("instance matrices must be max-plus".into()));
        }
        if num.iter().chain(&den).any(|e| *e == ExtendedNumber::PosInf) {
            return Err(TropError::Parse("+inf is not allowed in instance data".into()));
        }
        let mut bad = Vec::new();
        for i in 0..m {
            if !rhs.row(i).iter().any(ExtendedNumber::is_finite) {
                bad.push(format!("constraint {} has an empty right-hand side", i + 1));
            }
        }
        for j in 0..cols {
            if !lhs.column(j).any(ExtendedNumber::is_finite) && !num[j].is_finite() {
                bad.push(format!("variable {} appears on no left-hand side", j + 1));
            }
        }
        if !bad.is_empty() {
            return Err(TropError::AssumptionViolated(bad.join("; ")));
        }
        let all = lhs.entries().iter().chain(rhs.entries()).chain(&num).chain(&den);
        let scale = lcm_denominators(all.filter_map(ExtendedNumber::finite));
        let k = BigRational::from_integer(scale.clone());
        let up = |e: &ExtendedNumber| e.scale(&k);
        let up_m = |t: &TropMatrix| {
            TropMatrix::new(t.rows(), t.cols(), t.entries().iter().map(up).collect(), Semiring::MaxPlus)
                .expect("same shape")
        };
        let (lhs, rhs) = (up_m(&lhs), up_m(&rhs));
        let num: Vec<_> = num.iter().map(up).collect();
        let den: Vec<_> = den.iter().map(up).collect();
        let bound = lhs
            .entries()
            .iter()
            .chain(rhs.entries())
            .chain(&num)
            .chain(&den)
            .filter_map(ExtendedNumber::finite)
            .map(|r| r.to_integer().abs())
            .max()
            .unwrap_or_default();
        Ok(HomogeneousInstance { lhs, rhs, num, den, bound, scale })
    }

    /// Number of constraints.
    pub fn m(&self) -> usize {
        self.lhs.rows()
    }

    /// Number of original variables; the homogenizing one is index n.
    pub fn n(&self) -> usize {
        self.lhs.cols() - 1
    }

    pub fn lhs(&self) -> &TropMatrix {
        &self.lhs
    }

    pub fn rhs(&self) -> &TropMatrix {
        &self.rhs
    }

    pub fn num(&self) -> &[ExtendedNumber] {
        &self.num
    }

    pub fn den(&self) -> &[ExtendedNumber] {
        &self.den
    }

    /// Largest |finite coefficient| after scaling.
    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Turns in the longest elementary cycle of the parametric game.
    pub fn turns(&self) -> usize {
        self.m().min(self.n()) + 1
    }

    pub fn has_parametric_row(&self) -> bool {
        self.den.iter().any(ExtendedNumber::is_finite)
    }

    pub fn to_scaled(&self, lambda: &Rational) -> Rational {
        lambda * BigRational::from_integer(self.scale.clone())
    }

    pub fn from_scaled(&self, lambda: &Rational) -> Rational {
        lambda / BigRational::from_integer(self.scale.clone())
    }

    pub fn vector_from_scaled(&self, y: &[ExtendedNumber]) -> Vec<ExtendedNumber> {
        let inv = BigRational::one() / BigRational::from_integer(self.scale.clone());
        y.iter().map(|e| e.scale(&inv)).collect()
    }

    pub fn vector_to_scaled(&self, y: &[ExtendedNumber]) -> Vec<ExtendedNumber> {
        let k = BigRational::from_integer(self.scale.clone());
        y.iter().map(|e| e.scale(&k)).collect()
    }

    /// Original (C, D, u, v) before scaling.
    pub fn unscaled_parts(&self) -> (TropMatrix, TropMatrix, Vec<ExtendedNumber>, Vec<ExtendedNumber>) {
        let inv = BigRational::one() / BigRational::from_integer(self.scale.clone());
        let down = |t: &TropMatrix| {
            TropMatrix::new(t.rows(), t.cols(), t.entries().iter().map(|e| e.scale(&inv)).collect(), Semiring::MaxPlus)
                .expect("same shape")
        };
        (
            down(&self.lhs),
            down(&self.rhs),
            self.num.iter().map(|e| e.scale(&inv)).collect(),
            self.den.iter().map(|e| e.scale(&inv)).collect(),
        )
    }

    /// Whether y (scaled units) satisfies C y ≤ D y and u y ≤ λ + v y.
    pub fn admits(&self, lambda: &Rational, y: &[ExtendedNumber]) -> bool {
        if y.len() != self.lhs.cols() {
            return false;
        }
        let ok_rows = crate::game::satisfies(&self.lhs, &self.rhs, y).is_none();
        let lhs = affine(&self.num, y, &ExtendedNumber::NegInf);
        let rhs = affine(&self.den, y, &ExtendedNumber::NegInf).add_rat(lambda);
        ok_rows && lhs <= rhs
    }
}

pub fn homogenize(inst: &LfpInstance) -> Result<HomogeneousInstance> {
    let (m, n) = (inst.m(), inst.n());
    if inst.b.rows() != m
        || inst.b.cols() != n
        || inst.c.len() != m
        || inst.d.len() != m
        || inst.p.len() != n
        || inst.q.len() != n
    {
        return Err(TropError::DimensionMismatch(format!(
            "A is {}x{}, B is {}x{}, c/d have {}/{} and p/q have {}/{} entries",
            m,
            n,
            inst.b.rows(),
            inst.b.cols(),
            inst.c.len(),
            inst.d.len(),
            inst.p.len(),
            inst.q.len()
        )));
    }
    let join = |t: &TropMatrix, last: &[ExtendedNumber]| {
        let rows = (0..m)
            .map(|i| t.row(i).iter().cloned().chain(std::iter::once(last[i].clone())).collect())
            .collect();
        TropMatrix::from_rows(rows, Semiring::MaxPlus)
    };
    let lhs = if m == 0 { TropMatrix::filled(0, n + 1, Semiring::MaxPlus) } else { join(&inst.a, &inst.c)? };
    let rhs = if m == 0 { TropMatrix::filled(0, n + 1, Semiring::MaxPlus) } else { join(&inst.b, &inst.d)? };
    let num = inst.p.iter().cloned().chain(std::iter::once(inst.r.clone())).collect();
    let den = inst.q.iter().cloned().chain(std::iter::once(inst.s.clone())).collect();
    HomogeneousInstance::new(lhs, rhs, num, den)
}

/// The game with U = [C; u] and V(λ) = [D; λ + v], λ in scaled units.
pub fn game_at(h: &HomogeneousInstance, lambda: &Rational) -> Result<MeanPayoffGame> {
    let last: Vec<ExtendedNumber> = h.den.iter().map(|e| e.add_rat(lambda)).collect();
    let mut a = h.lhs.to_rows();
    a.push(h.num.clone());
    let mut b = h.rhs.to_rows();
    b.push(last);
    MeanPayoffGame::from_rows(a, b)
}

/// The game at λ − 1/(t+1), t = turns, with every payment multiplied by t+1
/// so that it stays integral.
pub fn perturbed_game(h: &HomogeneousInstance, lambda: &Rational) -> Result<MeanPayoffGame> {
    let k = BigInt::from(h.turns() + 1);
    let kr = BigRational::from_integer(k.clone());
    let shifted = lambda * &kr - BigRational::one();
    let up = |e: &ExtendedNumber| e.scale(&kr);
    let mut a: Vec<Vec<ExtendedNumber>> = h.lhs.to_rows().iter().map(|r| r.iter().map(up).collect()).collect();
    a.push(h.num.iter().map(up).collect());
    let mut b: Vec<Vec<ExtendedNumber>> = h.rhs.to_rows().iter().map(|r| r.iter().map(up).collect()).collect();
    b.push(h.den.iter().map(|e| up(e).add_rat(&shifted)).collect());
    MeanPayoffGame::from_rows(a, b)
}

#[cfg(test)]
pub(crate) mod examples {
    use super::*;
    use crate::tropical::ext_row;

    fn mp(rows: &[&[Option<i64>]]) -> TropMatrix {
        TropMatrix::from_rows(rows.iter().map(|r| ext_row(r)).collect(), Semiring::MaxPlus).unwrap()
    }

    const N: Option<i64> = None;

    pub fn example1() -> LfpInstance {
        LfpInstance {
            a: mp(&[&[N, Some(-1)], &[Some(-2), Some(-2)], &[Some(-1), N], &[Some(0), N]]),
            b: mp(&[&[Some(0), N], &[N, N], &[N, Some(0)], &[N, Some(2)]]),
            c: ext_row(&[N, N, N, N]),
            d: ext_row(&[Some(0), Some(0), Some(0), Some(0)]),
            p: ext_row(&[Some(1), Some(3)]),
            q: ext_row(&[N, N]),
            r: ExtendedNumber::NegInf,
            s: ExtendedNumber::zero(),
        }
        .dualized()
    }

    pub fn example2() -> LfpInstance {
        LfpInstance {
            a: mp(&[&[N, N], &[N, N], &[N, N], &[N, Some(-3)], &[N, Some(-4)], &[N, Some(-5)], &[N, Some(-6)]]),
            b: mp(&[
                &[Some(-2), Some(0)],
                &[Some(0), Some(-1)],
                &[Some(1), Some(-2)],
                &[Some(2), N],
                &[Some(0), N],
                &[Some(-2), N],
                &[Some(-4), N],
            ]),
            c: ext_row(&[Some(0), Some(0), Some(0), Some(0), N, N, N]),
            d: ext_row(&[N, N, N, N, Some(0), Some(0), Some(0)]),
            p: ext_row(&[Some(2), Some(-4)]),
            q: ext_row(&[N, N]),
            r: ExtendedNumber::NegInf,
            s: ExtendedNumber::zero(),
        }
    }

    pub fn example3() -> HomogeneousInstance {
        HomogeneousInstance::new(
            mp(&[&[Some(-3), Some(-4), N, N], &[Some(-1), N, N, Some(1)], &[N, N, N, Some(0)], &[Some(1), N, Some(0), N]]),
            mp(&[&[N, N, N, Some(0)], &[N, Some(0), N, N], &[Some(0), N, N, N], &[Some(0), N, N, Some(3)]]),
            ext_row(&[N, Some(0), N, N]),
            ext_row(&[Some(3), N, N, N]),
        )
        .unwrap()
    }
}
