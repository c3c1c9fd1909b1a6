//! Germs a + εb with ε infinitesimal, ordered lexicographically, and mean
//! payoff games over them. Only brute force is offered here; the games are a
//! check on the integer-scaled perturbation used by the solver.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Result, TropError};
use crate::game::play::ENUMERATION_CAP;
use crate::game::{MaxStrategy, MeanPayoffGame, MinStrategy};
use crate::spectral::HomogeneousInstance;
use crate::tropical::{rat, ExtendedNumber, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Germ {
    Bottom,
    Pair(Rational, Rational),
}

impl Germ {
    pub fn new(a: Rational, b: Rational) -> Self {
        Germ::Pair(a, b)
    }

    pub fn int(a: i64, b: i64) -> Self {
        Germ::Pair(rat(a), rat(b))
    }

    pub fn one() -> Self {
        Germ::int(0, 0)
    }

    /// (x, 0), or bottom for −∞.
    pub fn constant(x: &ExtendedNumber) -> Self {
        match x {
            ExtendedNumber::Finite(v) => Germ::Pair(v.clone(), Rational::zero()),
            _ => Germ::Bottom,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Germ::Bottom)
    }

    /// a + εb.
    pub fn at(&self, eps: &Rational) -> ExtendedNumber {
        match self {
            Germ::Bottom => ExtendedNumber::NegInf,
            Germ::Pair(a, b) => ExtendedNumber::Finite(a + eps * b),
        }
    }

    fn minus(&self, o: &Germ) -> Germ {
        match (self, o) {
            (Germ::Pair(a, b), Germ::Pair(c, d)) => Germ::Pair(a - c, b - d),
            _ => panic!("difference with bottom"),
        }
    }

    fn div(&self, k: usize) -> Germ {
        match self {
            Germ::Pair(a, b) => Germ::Pair(a / rat(k as i64), b / rat(k as i64)),
            Germ::Bottom => Germ::Bottom,
        }
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Germ::Bottom => write!(f, "(-inf,-inf)"),
            Germ::Pair(a, b) => write!(f, "({},{})", a, b),
        }
    }
}

pub fn germ_add(x: &Germ, y: &Germ) -> Germ {
    x.max(y).clone()
}

pub fn germ_mul(x: &Germ, y: &Germ) -> Germ {
    match (x, y) {
        (Germ::Pair(a, b), Germ::Pair(c, d)) => Germ::Pair(a + c, b + d),
        _ => Germ::Bottom,
    }
}

/// Payment matrices over germs; same shape conventions as `MeanPayoffGame`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermGame {
    a: Vec<Vec<Germ>>,
    b: Vec<Vec<Germ>>,
    support: MeanPayoffGame,
}

impl GermGame {
    pub fn new(a: Vec<Vec<Germ>>, b: Vec<Vec<Germ>>) -> Result<Self> {
        let flag = |rows: &[Vec<Germ>]| -> Vec<Vec<ExtendedNumber>> {
            rows.iter()
                .map(|r| r.iter().map(|g| if g.is_bottom() { ExtendedNumber::NegInf } else { ExtendedNumber::zero() }).collect())
                .collect()
        };
        let support = MeanPayoffGame::from_rows(flag(&a), flag(&b))?;
        Ok(GermGame { a, b, support })
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.support.n()
    }

    pub fn a(&self, i: usize, j: usize) -> &Germ {
        &self.a[i][j]
    }

    pub fn b(&self, i: usize, j: usize) -> &Germ {
        &self.b[i][j]
    }

    /// The real game a + εb.
    pub fn at(&self, eps: &Rational) -> Result<MeanPayoffGame> {
        let real = |rows: &[Vec<Germ>]| rows.iter().map(|r| r.iter().map(|g| g.at(eps)).collect()).collect();
        MeanPayoffGame::from_rows(real(&self.a), real(&self.b))
    }

    /// Largest |second component|.
    pub fn second_bound(&self) -> Rational {
        self.a
            .iter()
            .chain(&self.b)
            .flatten()
            .filter_map(|g| match g {
                Germ::Pair(_, b) => Some(b.abs()),
                Germ::Bottom => None,
            })
            .max()
            .unwrap_or_default()
    }

    fn strategies(&self) -> Result<(Vec<MaxStrategy>, Vec<MinStrategy>)> {
        let (smax, smin) = self.support.strategy_counts();
        let pairs = smax.saturating_mul(smin);
        if pairs > ENUMERATION_CAP {
            return Err(TropError::TooLarge(pairs));
        }
        Ok((
            self.support.max_strategies(ENUMERATION_CAP).expect("capped"),
            self.support.min_strategies(ENUMERATION_CAP).expect("capped"),
        ))
    }
}

/// Germ mean payment per turn of the cycle reached from Min node `j`.
pub fn germ_play_outcome(g: &GermGame, j: usize, tau: &MinStrategy, sigma: &MaxStrategy) -> Result<Germ> {
    g.support.check_min(tau)?;
    g.support.check_max(sigma)?;
    if j >= g.n() {
        return Err(TropError::DimensionMismatch(format!("no Min node {}", j + 1)));
    }
    let mut seen = vec![None; g.n()];
    let mut prefix = vec![Germ::one()];
    let mut node = j;
    loop {
        if let Some(at) = seen[node] {
            let turns = prefix.len() - 1 - at;
            return Ok(prefix[prefix.len() - 1].minus(&prefix[at]).div(turns));
        }
        seen[node] = Some(prefix.len() - 1);
        let i = tau.0[node];
        let next = sigma.0[i];
        let pay = g.b(i, next).minus(g.a(i, node));
        let total = germ_mul(&prefix[prefix.len() - 1], &pay);
        prefix.push(total);
        node = next;
    }
}

/// min over τ of max over σ, lexicographically.
pub fn germ_brute_force_value(g: &GermGame, j: usize) -> Result<Germ> {
    let (sigmas, taus) = g.strategies()?;
    let mut best: Option<Germ> = None;
    for t in &taus {
        let mut inner = Germ::Bottom;
        for s in &sigmas {
            inner = germ_add(&inner, &germ_play_outcome(g, j, t, s)?);
        }
        if best.as_ref().is_none_or(|x| inner < *x) {
            best = Some(inner);
        }
    }
    Ok(best.expect("at least one strategy"))
}

/// Every Max strategy guaranteeing the germ value from `j`.
pub fn germ_optimal_max_strategies(g: &GermGame, j: usize) -> Result<Vec<MaxStrategy>> {
    let value = germ_brute_force_value(g, j)?;
    let (sigmas, taus) = g.strategies()?;
    let mut out = Vec::new();
    for s in sigmas {
        let mut worst: Option<Germ> = None;
        for t in &taus {
            let v = germ_play_outcome(g, j, t, &s)?;
            if worst.as_ref().is_none_or(|x| v < *x) {
                worst = Some(v);
            }
        }
        if worst.as_ref() == Some(&value) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Every Min strategy holding the germ value from `j`.
pub fn germ_optimal_min_strategies(g: &GermGame, j: usize) -> Result<Vec<MinStrategy>> {
    let value = germ_brute_force_value(g, j)?;
    let (sigmas, taus) = g.strategies()?;
    let mut out = Vec::new();
    for t in taus {
        let mut top = Germ::Bottom;
        for s in &sigmas {
            top = germ_add(&top, &germ_play_outcome(g, j, &t, s)?);
        }
        if top == value {
            out.push(t);
        }
    }
    Ok(out)
}

/// Mean weights of the elementary cycles of the first-component game.
fn cycle_means(g: &GermGame) -> Vec<Rational> {
    let n = g.n();
    let first = |x: &Germ| match x {
        Germ::Pair(a, _) => Some(a.clone()),
        Germ::Bottom => None,
    };
    let mut means = Vec::new();
    // DFS over Min nodes, each cycle rooted at its smallest Min node
    fn walk(
        g: &GermGame,
        root: usize,
        node: usize,
        on_path: &mut Vec<bool>,
        sum: Rational,
        turns: usize,
        means: &mut Vec<Rational>,
        first: &dyn Fn(&Germ) -> Option<Rational>,
    ) {
        for i in 0..g.m() {
            let Some(pa) = first(g.a(i, node)) else { continue };
            for l in 0..g.n() {
                let Some(pb) = first(g.b(i, l)) else { continue };
                let s = &sum + pb - &pa;
                if l == root {
                    means.push(s / rat((turns + 1) as i64));
                } else if l > root && !on_path[l] {
                    on_path[l] = true;
                    walk(g, root, l, on_path, s, turns + 1, means, first);
                    on_path[l] = false;
                }
            }
        }
    }
    for root in 0..n {
        let mut on_path = vec![false; n];
        on_path[root] = true;
        walk(g, root, root, &mut on_path, Rational::zero(), 0, &mut means, &first);
    }
    means
}

/// δ/4M, with δ the least nonzero gap between cycle means of the first
/// components and M the largest |second component|. `None` means every
/// ε > 0 works.
pub fn validity_radius(g: &GermGame) -> Option<Rational> {
    let mut means = cycle_means(g);
    means.sort();
    means.dedup();
    let delta = means.windows(2).map(|w| &w[1] - &w[0]).min()?;
    let big_m = g.second_bound();
    if big_m.is_zero() {
        return None;
    }
    Some(delta / (big_m * rat(4)))
}

/// The parametric game at λ (scaled units) with the parametric row's
/// payments shifted down by ε: second components are 0 except −1 there.
pub fn parametric_germ_game(h: &HomogeneousInstance, lambda: &Rational) -> Result<GermGame> {
    let lift = |rows: Vec<Vec<ExtendedNumber>>| -> Vec<Vec<Germ>> {
        rows.iter().map(|r| r.iter().map(Germ::constant).collect()).collect()
    };
    let mut a = lift(h.lhs().to_rows());
    a.push(h.num().iter().map(Germ::constant).collect());
    let mut b = lift(h.rhs().to_rows());
    b.push(
        h.den()
            .iter()
            .map(|e| match e.add_rat(lambda) {
                ExtendedNumber::Finite(x) => Germ::Pair(x, rat(-1)),
                _ => Germ::Bottom,
            })
            .collect(),
    );
    GermGame::new(a, b)
}
