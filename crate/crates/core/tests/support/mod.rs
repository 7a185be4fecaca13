//! Test-only oracles, independent of the library's solvers.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mwpsas::reductions::Graph;
use mwpsas::Instance;
use rand::Rng;

/// Block term recomputed from scratch with a set union.
pub fn naive_term(inst: &Instance, block: &[usize]) -> u64 {
    let union: BTreeSet<usize> = block.iter().flat_map(|&i| inst.assoc(i).iter().copied()).collect();
    block.iter().map(|&i| inst.n_weight(i).get()).sum::<u64>()
        + union.iter().map(|&j| inst.m_weight(j).get()).sum::<u64>()
}

pub fn naive_objective(inst: &Instance, blocks: &[Vec<usize>]) -> u64 {
    blocks.iter().map(|b| naive_term(inst, b)).max().unwrap_or(0)
}

/// Calls `visit` with every partition of `0..n` into exactly `k` non-empty
/// blocks, enumerated as restricted growth strings.
pub fn for_each_partition(n: usize, k: usize, visit: &mut impl FnMut(&[Vec<usize>])) {
    fn rec(
        t: usize,
        n: usize,
        k: usize,
        labels: &mut Vec<usize>,
        used: usize,
        visit: &mut impl FnMut(&[Vec<usize>]),
    ) {
        if n - t < k - used {
            return;
        }
        if t == n {
            let mut blocks = vec![Vec::new(); k];
            for (i, &b) in labels.iter().enumerate() {
                blocks[b].push(i);
            }
            visit(&blocks);
            return;
        }
        for b in 0..=used.min(k - 1) {
            labels.push(b);
            rec(t + 1, n, k, labels, used.max(b + 1), visit);
            labels.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(n), 0, visit);
}

/// Optimum by exhaustive enumeration of all set partitions into `machines` blocks.
pub fn naive_optimum(inst: &Instance) -> u64 {
    let mut best = u64::MAX;
    for_each_partition(inst.n_count(), inst.machines(), &mut |blocks| {
        best = best.min(naive_objective(inst, blocks));
    });
    best
}

/// Uniform random labels, repaired so every block is non-empty.
pub fn random_blocks(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut blocks = vec![Vec::new(); k];
    for (pos, &i) in order.iter().enumerate() {
        let b = if pos < k { pos } else { rng.random_range(0..k) };
        blocks[b].push(i);
    }
    blocks
}

/// All labelled graphs on `n` nodes, as edge bitmasks over the `(u, v)` pairs.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// `k` satisfying `1 < k < |V|` and `(k² − k)/2 < |W|`.
pub fn admissible_ks(g: &Graph) -> Vec<usize> {
    (2..g.node_count())
        .filter(|&k| (k * k - k) / 2 < g.edge_count())
        .collect()
}

/// Every valid ordered 3-PARTITION sequence for the given `r` and `B`.
pub fn part3_sequences(r: usize, b: u64) -> Vec<Vec<u64>> {
    let values: Vec<u64> = (2..b).filter(|&x| 4 * x > b && 2 * x < b).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(values: &[u64], len: usize, target: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let sum: u64 = cur.iter().sum();
        if cur.len() == len {
            if sum == target {
                out.push(cur.clone());
            }
            return;
        }
        for &v in values {
            if sum + v <= target {
                cur.push(v);
                rec(values, len, target, cur, out);
                cur.pop();
            }
        }
    }
    rec(&values, 3 * r, r as u64 * b, &mut cur, &mut out);
    out
}
