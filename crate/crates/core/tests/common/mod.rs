//! Test-only oracles that share no code with the library's algorithms.

#![allow(dead_code)]

use flowsample::Graph;
use rand::Rng;

/// Minimum s-t cut over raw `(src, dst, cap)` triples by enumerating every
/// source side.
pub fn min_cut(n: usize, edges: &[(usize, usize, f64)], s: usize, t: usize) -> f64 {
    assert!(n <= 20);
    let mut best = f64::INFINITY;
    for side in 0u32..(1 << n) {
        if side >> s & 1 == 0 || side >> t & 1 == 1 {
            continue;
        }
        let cut: f64 = edges
            .iter()
            .filter(|(u, v, _)| side >> u & 1 == 1 && side >> v & 1 == 0)
            .map(|e| e.2)
            .sum();
        best = best.min(cut);
    }
    best
}

/// Edges with both endpoints in `keep`, relabeled by rank within `keep`
/// (which must be sorted).
pub fn filter_induced(edges: &[(usize, usize, f64)], keep: &[usize]) -> Vec<(usize, usize, f64)> {
    let rank = |v: usize| keep.iter().position(|&k| k == v);
    edges
        .iter()
        .filter_map(|&(u, v, c)| Some((rank(u)?, rank(v)?, c)))
        .collect()
}

pub fn triples(g: &Graph) -> Vec<(usize, usize, f64)> {
    g.edges().iter().map(|e| (e.src, e.dst, e.capacity)).collect()
}

/// All `k`-subsets of `items`.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = combinations(&items[1..], k - 1);
    for c in &mut out {
        c.insert(0, items[0]);
    }
    out.extend(combinations(&items[1..], k));
    out
}

/// Random simple digraph without self-loops, integer capacities in
/// `0..=max_cap`.
pub fn random_int_graph<R: Rng>(rng: &mut R, n: usize, density: f64, max_cap: u32) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(density) {
                edges.push((u, v, rng.random_range(0..=max_cap) as f64));
            }
        }
    }
    edges
}

pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let s = rng.random_range(0..n);
    let t = (s + rng.random_range(1..n)) % n;
    (s, t)
}
