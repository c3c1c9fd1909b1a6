use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Result, TropError};
use crate::tropical::int::{fits_i64, Int};
use crate::tropical::matrix::TropMatrix;
use crate::tropical::number::{lcm_denominators, ExtendedNumber, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Max,
    Min,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    nodes: usize,
    arcs: Vec<(usize, usize, Rational)>,
}

impl WeightedDigraph {
    pub fn new(nodes: usize, arcs: Vec<(usize, usize, Rational)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (s, t, _) in &arcs {
            if *s >= nodes || *t >= nodes {
                return Err(TropError::DimensionMismatch(format!("arc ({s},{t}) out of range")));
            }
            if !seen.insert((*s, *t)) {
                return Err(TropError::DimensionMismatch(format!("duplicate arc ({s},{t})")));
            }
        }
        Ok(WeightedDigraph { nodes, arcs })
    }

    /// Digraph of a square matrix: arc i→j for every finite entry.
    pub fn of_matrix(e: &TropMatrix) -> Self {
        let mut arcs = Vec::new();
        for i in 0..e.rows() {
            for j in 0..e.cols() {
                if let ExtendedNumber::Finite(w) = e.get(i, j) {
                    arcs.push((i, j, w.clone()));
                }
            }
        }
        WeightedDigraph { nodes: e.rows(), arcs }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize, Rational)] {
        &self.arcs
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for (s, t, _) in &self.arcs {
            adj[*s].push(*t);
        }
        adj
    }

    /// Nodes forward-reachable from `from`, including itself.
    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        reachable(&self.successors(), from)
    }
}

pub(crate) fn reachable(adj: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Strongly connected components. Components are listed in reverse
/// topological order: every arc leaving a component points to an earlier one.
#[derive(Clone, Debug)]
pub struct Sccs {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

pub(crate) fn tarjan(adj: &[Vec<usize>]) -> Sccs {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component_of = vec![UNSEEN; n];
    let mut components = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut next)) = call.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next];
                *next += 1;
                if index[v] == UNSEEN {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    let id = components.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        component_of[w] = id;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    Sccs { component_of, components }
}

#[derive(Clone, Debug)]
pub struct SccAccess {
    pub sccs: Sccs,
    pub access: Vec<bool>,
}

pub fn scc_and_access(d: &WeightedDigraph, query: usize) -> SccAccess {
    let adj = d.successors();
    SccAccess { sccs: tarjan(&adj), access: reachable(&adj, query) }
}

/// Per-SCC extremal cycle mean per arc, `None` for acyclic components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccMean {
    pub nodes: Vec<usize>,
    pub mean: Option<Rational>,
}

pub fn cycle_means(d: &WeightedDigraph, mode: Mode) -> Vec<SccMean> {
    let sccs = tarjan(&d.successors());
    let means = component_means(d, &sccs, mode);
    sccs.components
        .into_iter()
        .zip(means)
        .map(|(nodes, mean)| SccMean { nodes, mean })
        .collect()
}

pub(crate) fn component_means(d: &WeightedDigraph, sccs: &Sccs, mode: Mode) -> Vec<Option<Rational>> {
    let scale = lcm_denominators(d.arcs.iter().map(|a| &a.2));
    let scaled: Vec<(usize, usize, BigInt)> = d
        .arcs
        .iter()
        .map(|(s, t, w)| {
            let v = (w * BigRational::from_integer(scale.clone())).to_integer();
            (*s, *t, if mode == Mode::Min { -v } else { v })
        })
        .collect();
    let w_max = scaled.iter().map(|a| a.2.abs()).max().unwrap_or_default();
    let k = d.nodes as u64 + 1;
    let means = if fits_i64(&w_max, 4 * k * k) {
        karp_all::<i64>(d.nodes, &scaled, sccs)
    } else {
        karp_all::<BigInt>(d.nodes, &scaled, sccs)
    };
    means
        .into_iter()
        .map(|m| {
            m.map(|(num, den)| {
                let r = BigRational::new(num, BigInt::from(den) * &scale);
                if mode == Mode::Min {
                    -r
                } else {
                    r
                }
            })
        })
        .collect()
}

fn karp_all<T: Int>(n: usize, arcs: &[(usize, usize, BigInt)], sccs: &Sccs) -> Vec<Option<(BigInt, u64)>> {
    let mut local = vec![0usize; n];
    for comp in &sccs.components {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut inner: Vec<Vec<(usize, usize, T)>> = vec![Vec::new(); sccs.components.len()];
    for (s, t, w) in arcs {
        let c = sccs.component_of[*s];
        if c == sccs.component_of[*t] {
            inner[c].push((local[*s], local[*t], T::from_big(w)));
        }
    }
    sccs.components
        .iter()
        .zip(&inner)
        .map(|(comp, arcs)| {
            if arcs.is_empty() {
                None
            } else {
                let (num, den) = karp(comp.len(), arcs);
                Some((num.to_big(), den))
            }
        })
        .collect()
}

/// Karp's maximum cycle mean on a strongly connected digraph with at least
/// one arc. Returns the mean as an unreduced fraction.
pub(crate) fn karp<T: Int>(k: usize, arcs: &[(usize, usize, T)]) -> (T, u64) {
    let mut table: Vec<Vec<Option<T>>> = vec![vec![None; k]; k + 1];
    table[0][0] = Some(T::zero());
    for t in 1..=k {
        let (prev, cur) = table.split_at_mut(t);
        let prev = &prev[t - 1];
        let cur = &mut cur[0];
        for (s, d, w) in arcs {
            if let Some(ps) = &prev[*s] {
                let cand = ps.add(w);
                if cur[*d].as_ref().is_none_or(|c| cand > *c) {
                    cur[*d] = Some(cand);
                }
            }
        }
    }
    let mut best: Option<(T, u64)> = None;
    for v in 0..k {
        let Some(dk) = &table[k][v] else { continue };
        let mut worst: Option<(T, u64)> = None;
        for (t, row) in table.iter().enumerate().take(k) {
            if let Some(dt) = &row[v] {
                let cand = (dk.sub(dt), (k - t) as u64);
                if worst.as_ref().is_none_or(|w| less(&cand, w)) {
                    worst = Some(cand);
                }
            }
        }
        let worst = worst.expect("D_0 is finite on the source");
        if best.as_ref().is_none_or(|b| less(b, &worst)) {
            best = Some(worst);
        }
    }
    best.expect("strongly connected component with an arc has a cycle")
}

fn less<T: Int>(a: &(T, u64), b: &(T, u64)) -> bool {
    a.0.mul_u(b.1) < b.0.mul_u(a.1)
}

/// χ_i = extremal cycle mean over the components accessible from i; nodes
/// accessing no cycle get the mode's absorbing infinity.
pub fn cycle_time_vector(e: &TropMatrix, mode: Mode) -> Result<Vec<ExtendedNumber>> {
    if e.rows() != e.cols() {
        return Err(TropError::DimensionMismatch("cycle-time vector needs a square matrix".into()));
    }
    let d = WeightedDigraph::of_matrix(e);
    let adj = d.successors();
    let sccs = tarjan(&adj);
    let means = component_means(&d, &sccs, mode);
    let none = match mode {
        Mode::Max => ExtendedNumber::NegInf,
        Mode::Min => ExtendedNumber::PosInf,
    };
    let better = |a: ExtendedNumber, b: ExtendedNumber| match mode {
        Mode::Max => a.max(b),
        Mode::Min => a.min(b),
    };
    let mut best: Vec<ExtendedNumber> = Vec::with_capacity(sccs.components.len());
    for (c, comp) in sccs.components.iter().enumerate() {
        let mut acc = means[c].clone().map_or(none.clone(), ExtendedNumber::Finite);
        for &u in comp {
            for &v in &adj[u] {
                let cv = sccs.component_of[v];
                if cv != c {
                    acc = better(acc, best[cv].clone());
                }
            }
        }
        best.push(acc);
    }
    Ok((0..e.rows()).map(|i| best[sccs.component_of[i]].clone()).collect())
}

/// Extremal cycle mean over all cycles of the digraph reachable from `from`.
pub fn accessible_cycle_mean(d: &WeightedDigraph, from: usize, mode: Mode) -> Option<Rational> {
    let adj = d.successors();
    let sccs = tarjan(&adj);
    let access = reachable(&adj, from);
    let means = component_means(d, &sccs, mode);
    sccs.components
        .iter()
        .zip(means)
        .filter(|(comp, _)| access[comp[0]])
        .filter_map(|(_, m)| m)
        .reduce(|a, b| match mode {
            Mode::Max => a.max(b),
            Mode::Min => a.min(b),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::matrix::Semiring;
    use crate::tropical::number::{ext_row, frac, rat, ExtendedNumber as X};

    fn mp(rows: &[&[Option<i64>]]) -> TropMatrix {
        TropMatrix::from_rows(rows.iter().map(|r| ext_row(r)).collect(), Semiring::MaxPlus).unwrap()
    }

    /// Exhaustive elementary-cycle enumeration.
    fn brute_cycle_means(d: &WeightedDigraph, mode: Mode) -> Vec<Option<Rational>> {
        let n = d.nodes();
        let mut w = vec![vec![None; n]; n];
        for (s, t, x) in d.arcs() {
            w[*s][*t] = Some(x.clone());
        }
        let sccs = tarjan(&d.successors());
        let mut out = vec![None; sccs.components.len()];
        fn dfs(
            start: usize,
            u: usize,
            sum: Rational,
            len: i64,
            used: &mut Vec<bool>,
            w: &Vec<Vec<Option<Rational>>>,
            found: &mut Vec<Rational>,
        ) {
            for v in 0..w.len() {
                let Some(x) = &w[u][v] else { continue };
                if v == start {
                    found.push((&sum + x) / rat(len + 1));
                } else if v > start && !used[v] {
                    used[v] = true;
                    dfs(start, v, &sum + x, len + 1, used, w, found);
                    used[v] = false;
                }
            }
        }
        for s in 0..n {
            let mut found = Vec::new();
            let mut used = vec![false; n];
            used[s] = true;
            dfs(s, s, rat(0), 0, &mut used, &w, &mut found);
            let c = sccs.component_of[s];
            for f in found {
                out[c] = Some(match (out[c].take(), mode) {
                    (None, _) => f,
                    (Some(o), Mode::Max) => std::cmp::max(o, f),
                    (Some(o), Mode::Min) => std::cmp::min(o, f),
                });
            }
        }
        out
    }

    #[test]
    fn scc_examples() {
        let single = WeightedDigraph::new(1, vec![]).unwrap();
        let r = scc_and_access(&single, 0);
        assert_eq!(r.sccs.components.len(), 1);
        assert_eq!(r.access, vec![true]);
        let two = WeightedDigraph::new(2, vec![(0, 1, rat(1)), (1, 0, rat(1))]).unwrap();
        assert_eq!(scc_and_access(&two, 0).sccs.components.len(), 1);
        let chain = WeightedDigraph::new(3, vec![(0, 1, rat(0)), (1, 2, rat(0))]).unwrap();
        let r = scc_and_access(&chain, 0);
        assert_eq!(r.sccs.components.len(), 3);
        assert_eq!(r.access, vec![true; 3]);
        assert!(WeightedDigraph::new(2, vec![(0, 1, rat(0)), (0, 1, rat(2))]).is_err());
    }

    #[test]
    fn cycle_mean_examples() {
        let d = WeightedDigraph::new(1, vec![(0, 0, rat(0))]).unwrap();
        assert_eq!(cycle_means(&d, Mode::Max)[0].mean, Some(rat(0)));
        let e = mp(&[&[None, Some(1)], &[Some(-4), None]]);
        let means = cycle_means(&WeightedDigraph::of_matrix(&e), Mode::Max);
        assert_eq!(means.len(), 1);
        assert_eq!(means[0].mean, Some(frac(-3, 2)));
        let two = WeightedDigraph::new(2, vec![(0, 0, rat(2)), (1, 1, rat(-1))]).unwrap();
        let mut got: Vec<_> = cycle_means(&two, Mode::Max).into_iter().map(|s| s.mean.unwrap()).collect();
        got.sort();
        assert_eq!(got, vec![rat(-1), rat(2)]);
    }

    #[test]
    fn cycle_time_examples() {
        assert_eq!(cycle_time_vector(&mp(&[&[Some(0)]]), Mode::Max).unwrap(), vec![X::int(0)]);
        let e = mp(&[&[None, Some(1)], &[Some(-4), None]]);
        assert_eq!(
            cycle_time_vector(&e, Mode::Max).unwrap(),
            vec![X::Finite(frac(-3, 2)), X::Finite(frac(-3, 2))]
        );
        let up = mp(&[&[None, Some(0), Some(7)], &[None, Some(5), None], &[None, None, None]]);
        let chi = cycle_time_vector(&up, Mode::Max).unwrap();
        assert_eq!(chi, vec![X::int(5), X::int(5), X::NegInf]);
        let mut mn = TropMatrix::filled(2, 2, Semiring::MinPlus);
        mn.set(0, 1, X::int(3));
        assert_eq!(cycle_time_vector(&mn, Mode::Min).unwrap(), vec![X::PosInf, X::PosInf]);
    }

    #[test]
    fn rational_weights_are_scaled_back() {
        let d = WeightedDigraph::new(2, vec![(0, 1, frac(1, 3)), (1, 0, frac(1, 2))]).unwrap();
        assert_eq!(cycle_means(&d, Mode::Min)[0].mean, Some(frac(5, 12)));
    }

    use proptest::prelude::*;

    fn digraph_strategy() -> impl Strategy<Value = WeightedDigraph> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::option::weighted(0.45, -9i64..=9), n * n).prop_map(move |ws| {
                let arcs = ws
                    .into_iter()
                    .enumerate()
                    .filter_map(|(k, w)| w.map(|w| (k / n, k % n, rat(w))))
                    .collect();
                WeightedDigraph::new(n, arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn karp_matches_enumeration(d in digraph_strategy()) {
            for mode in [Mode::Max, Mode::Min] {
                let got: Vec<_> = cycle_means(&d, mode).into_iter().map(|s| s.mean).collect();
                prop_assert_eq!(got, brute_cycle_means(&d, mode));
            }
        }

        #[test]
        fn cycle_time_is_power_limit(rows in proptest::collection::vec(proptest::collection::vec(proptest::option::weighted(0.6, -5i64..=5), 3), 3)) {
            let e = TropMatrix::from_rows(rows.iter().map(|r| ext_row(r)).collect(), Semiring::MaxPlus).unwrap();
            let chi = cycle_time_vector(&e, Mode::Max).unwrap();
            let mut x = vec![X::zero(); 3];
            let k = 64;
            for _ in 0..k {
                x = crate::tropical::matrix::trop_matvec(&e, &x).unwrap();
            }
            for i in 0..3 {
                match (&chi[i], &x[i]) {
                    (X::NegInf, xi) => prop_assert_eq!(xi, &X::NegInf),
                    (X::Finite(c), X::Finite(v)) => {
                        let diff = (v / rat(k) - c).abs();
                        prop_assert!(diff <= frac(2 * 3 * 5, k));
                    }
                    other => prop_assert!(false, "{:?}", other),
                }
            }
        }
    }
}
