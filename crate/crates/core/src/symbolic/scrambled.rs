//! Li-Yorke witness pairs in a subshift of finite type.
//!
//! `α` runs periodically around a cycle `u` of the transition graph. `β`
//! copies `α` on agree blocks `[4^k, 2·4^k)` and on disagree blocks
//! `[2·4^k, 4^{k+1})` leaves through an entry connector, follows a partner
//! cycle `v` (with `v_r ≠ u_r` as often as the matrix allows) and returns
//! through an exit connector. The pair `(u, v)` is a shortest cycle of the
//! product graph that avoids the diagonal, or failing that one that
//! touches it as little as a shortest cycle can.

use std::collections::VecDeque;
use std::sync::Arc;

use super::generator::SymbolGenerator;
use super::{Symbol, SymbolicError, TransitionMatrix};

/// The disagree-block data of `β`.
#[derive(Debug)]
pub(crate) struct Interleave {
    u: Vec<Symbol>,
    v: Vec<Symbol>,
    /// `entry[r]`: symbols at times `s, s+1, …` when `(s - 1) mod L = r`;
    /// the last one lands on the partner cycle.
    entry: Vec<Option<Vec<Symbol>>>,
    /// `exit[r]`: symbols after leaving the partner cycle at phase `r`;
    /// the last one is back on `α`.
    exit: Vec<Option<Vec<Symbol>>>,
}

impl Interleave {
    fn period(&self) -> usize {
        self.u.len()
    }

    fn alpha(&self, i: usize) -> Symbol {
        self.u[i % self.period()]
    }

    /// Last time on the partner cycle inside `[s, e)`, if the block is long
    /// enough to hold both connectors.
    fn exit_time(&self, s: usize, e: usize) -> Option<(usize, usize)> {
        let l = self.period();
        let entry = self.entry[(s - 1) % l].as_ref()?;
        let on_cycle = s + entry.len() - 1;
        let mut t = e.checked_sub(1)?;
        while t >= on_cycle {
            if let Some(exit) = &self.exit[t % l] {
                if t + exit.len() <= e {
                    return Some((on_cycle, t));
                }
            }
            if t == 0 {
                break;
            }
            t -= 1;
        }
        None
    }

    pub(crate) fn at(&self, i: usize) -> Symbol {
        if i == 0 {
            return self.alpha(0);
        }
        let k = (usize::BITS - 1 - i.leading_zeros()) / 2;
        let start = 1usize << (2 * k);
        let s = 2 * start;
        if i < s {
            return self.alpha(i);
        }
        let e = 4 * start;
        let Some((on_cycle, t_x)) = self.exit_time(s, e) else {
            return self.alpha(i);
        };
        let l = self.period();
        if i <= on_cycle {
            return self.entry[(s - 1) % l].as_ref().expect("checked")[i - s];
        }
        if i <= t_x {
            return self.v[i % l];
        }
        let exit = self.exit[t_x % l].as_ref().expect("checked");
        if i <= t_x + exit.len() {
            return exit[i - t_x - 1];
        }
        self.alpha(i)
    }
}

type Pair = (Symbol, Symbol);

fn pair_successors(a: &TransitionMatrix, (u, v): Pair) -> Vec<Pair> {
    let mut out = Vec::new();
    for x in a.successors(u) {
        for y in a.successors(v) {
            out.push((x, y));
        }
    }
    out
}

/// States of the product graph in the strongly connected component of the
/// diagonal.
fn diagonal_component(a: &TransitionMatrix) -> Vec<bool> {
    let n = a.n_symbols();
    let idx = |(u, v): Pair| (u - 1) * n + (v - 1);
    let mut fwd = vec![false; n * n];
    let mut queue = VecDeque::from([(1, 1)]);
    fwd[idx((1, 1))] = true;
    while let Some(p) = queue.pop_front() {
        for q in pair_successors(a, p) {
            if !fwd[idx(q)] {
                fwd[idx(q)] = true;
                queue.push_back(q);
            }
        }
    }
    let mut bwd = vec![false; n * n];
    bwd[idx((1, 1))] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for u in 1..=n {
            for v in 1..=n {
                if !bwd[idx((u, v))] && pair_successors(a, (u, v)).iter().any(|&q| bwd[idx(q)]) {
                    bwd[idx((u, v))] = true;
                    changed = true;
                }
            }
        }
    }
    fwd.iter().zip(&bwd).map(|(f, b)| *f && *b).collect()
}

/// Shortest cycle through `start` using only states accepted by `allowed`.
fn shortest_cycle(
    a: &TransitionMatrix,
    start: Pair,
    allowed: &dyn Fn(Pair) -> bool,
) -> Option<Vec<Pair>> {
    let n = a.n_symbols();
    let idx = |(u, v): Pair| (u - 1) * n + (v - 1);
    let mut parent: Vec<Option<Pair>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::new();
    for q in pair_successors(a, start) {
        if q == start {
            return Some(vec![start]);
        }
        if allowed(q) && !seen[idx(q)] {
            seen[idx(q)] = true;
            queue.push_back(q);
        }
    }
    while let Some(p) = queue.pop_front() {
        for q in pair_successors(a, p) {
            if q == start {
                let mut path = vec![p];
                let mut cur = p;
                while let Some(prev) = parent[idx(cur)] {
                    path.push(prev);
                    cur = prev;
                }
                path.push(start);
                path.reverse();
                return Some(path);
            }
            if allowed(q) && !seen[idx(q)] {
                seen[idx(q)] = true;
                parent[idx(q)] = Some(p);
                queue.push_back(q);
            }
        }
    }
    None
}

fn best_cycle(a: &TransitionMatrix, in_d: &[bool], avoid_diagonal: bool) -> Option<Vec<Pair>> {
    let n = a.n_symbols();
    let idx = |(u, v): Pair| (u - 1) * n + (v - 1);
    let mut best: Option<Vec<Pair>> = None;
    for u in 1..=n {
        for v in 1..=n {
            if u == v || !in_d[idx((u, v))] {
                continue;
            }
            let allowed = |p: Pair| in_d[idx(p)] && (!avoid_diagonal || p.0 != p.1);
            if let Some(c) = shortest_cycle(a, (u, v), &allowed) {
                if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
        }
    }
    best
}

/// BFS in the phase graph `(t mod L, β symbol)` from `from` to the first
/// state accepted by `goal`. Returns the symbols after `from`.
fn connector(
    a: &TransitionMatrix,
    l: usize,
    from: (usize, Symbol),
    goal: &dyn Fn(usize, Symbol) -> bool,
) -> Option<Vec<Symbol>> {
    let n = a.n_symbols();
    let idx = |(r, s): (usize, Symbol)| r * n + (s - 1);
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; l * n];
    let mut seen = vec![false; l * n];
    seen[idx(from)] = true;
    let mut queue = VecDeque::from([from]);
    while let Some((r, s)) = queue.pop_front() {
        for t in a.successors(s) {
            let q = ((r + 1) % l, t);
            if seen[idx(q)] {
                continue;
            }
            seen[idx(q)] = true;
            parent[idx(q)] = Some((r, s));
            if goal(q.0, q.1) {
                let mut path = vec![q.1];
                let mut cur = (r, s);
                while cur != from {
                    path.push(cur.1);
                    cur = parent[idx(cur)].expect("BFS tree");
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(q);
        }
    }
    None
}

/// A witness pair `(α, β)` whose `ρ̂`-distance along the shift has
/// `liminf = 0` and `limsup ≥ 1`.
pub fn scrambled_pair(
    matrix: &TransitionMatrix,
) -> Result<(SymbolGenerator, SymbolGenerator), SymbolicError> {
    if !matrix.is_irreducible() || !matrix.row_sum_at_least_two() {
        return Err(SymbolicError::NotChaoticMatrix);
    }
    let in_d = diagonal_component(matrix);
    let cycle = best_cycle(matrix, &in_d, true)
        .or_else(|| best_cycle(matrix, &in_d, false))
        .ok_or(SymbolicError::NotChaoticMatrix)?;
    let u: Vec<Symbol> = cycle.iter().map(|p| p.0).collect();
    let v: Vec<Symbol> = cycle.iter().map(|p| p.1).collect();
    let l = u.len();
    let entry = (0..l)
        .map(|r| connector(matrix, l, (r, u[r]), &|q, s| v[q] == s && u[q] != s))
        .collect();
    let exit = (0..l)
        .map(|r| connector(matrix, l, (r, v[r]), &|q, s| u[q] == s))
        .collect();
    let alpha = SymbolGenerator::periodic(&u, matrix)?;
    let beta = SymbolGenerator::interleaved(Arc::new(Interleave { u, v, entry, exit }));
    Ok((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{sequence_metric, validate_matrix};

    #[test]
    fn full_shift_blocks() {
        let a = TransitionMatrix::full(2).unwrap();
        let (alpha, beta) = scrambled_pair(&a).unwrap();
        for i in 0..4096 {
            assert_eq!(alpha.at(i), 1);
            let k = (usize::BITS - 1 - i.max(1).leading_zeros()) / 2;
            let differ = i >= 2 << (2 * k);
            assert_eq!(beta.at(i), if differ { 2 } else { 1 }, "index {i}");
        }
    }

    #[test]
    fn window_extremes_full_shift() {
        let a = TransitionMatrix::full(2).unwrap();
        let (alpha, beta) = scrambled_pair(&a).unwrap();
        let d: Vec<f64> = (0..4096)
            .map(|i| sequence_metric(&alpha.shifted(i), &beta.shifted(i), 40))
            .collect();
        assert!(d.iter().cloned().fold(f64::INFINITY, f64::min) < 1e-3);
        assert!(d.iter().cloned().fold(0.0, f64::max) > 1.0);
    }

    #[test]
    fn beta_is_admissible_for_several_matrices() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 1], vec![1, 0]],
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 0, 0]],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]],
            vec![vec![1, 1, 0], vec![0, 0, 1], vec![1, 0, 0]],
        ];
        for rows in cases {
            let a = validate_matrix(&rows).unwrap();
            let (alpha, beta) = scrambled_pair(&a).unwrap();
            assert!(alpha.is_admissible_prefix(&a, 5000));
            assert!(beta.is_admissible_prefix(&a, 5000), "{rows:?}");
            let late = (1024..2048).all(|i| alpha.at(i) == beta.at(i));
            assert!(late);
            assert!((2048..4096).any(|i| alpha.at(i) != beta.at(i)));
        }
    }

    #[test]
    fn rejects_non_chaotic() {
        let ident = validate_matrix(&[[1, 0], [0, 1]]).unwrap();
        let swap = validate_matrix(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(scrambled_pair(&ident), Err(SymbolicError::NotChaoticMatrix)));
        assert!(matches!(scrambled_pair(&swap), Err(SymbolicError::NotChaoticMatrix)));
    }
}
