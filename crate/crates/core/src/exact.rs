//! Exact oracles for small inputs.
//!
//! [`exact_solve`] is a depth-first branch and bound over block assignments.
//! [`decide`] answers the decision question `f* ≤ C` with the same search
//! run against a fixed bound. The two brute-force checkers answer CLIQUE and
//! 3-PARTITION directly and serve as the ground truth for the reductions.

use std::cmp::Reverse;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::approx::{approximate_partition, lower_bound, strategy_whole};
use crate::error::Result;
use crate::model::{Instance, Partition};
use crate::reductions::{Graph, Part3Instance};
use crate::weight::Weight;

/// Outcome of [`exact_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// `f*` when `timed_out` is false, otherwise the best value found.
    pub optimum: Weight,
    pub witness: Partition,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

/// Answer of the decision version.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn name(self) -> &'static str {
        match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        }
    }
}

const CLOCK_CHECK_INTERVAL: u64 = 4096;

struct Search<'a> {
    inst: &'a Instance,
    machines: usize,
    /// Elements in branching order.
    order: Vec<usize>,
    /// `twin[t]`: `order[t]` is interchangeable with `order[t - 1]`.
    twin: Vec<bool>,
    /// Σ p over `order[t..]`.
    suffix_weight: Vec<u64>,
    terms: Vec<u64>,
    usage: Vec<Vec<u32>>,
    slot: Vec<usize>,
    /// Only leaves with objective strictly below `limit` are accepted.
    limit: u64,
    best: Option<Vec<usize>>,
    stop_at: u64,
    first_only: bool,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, limit: u64, deadline: Option<Instant>) -> Self {
        let n = inst.n_count();
        let m = inst.machines();
        let mut order: Vec<usize> = (0..n).collect();
        // Decreasing single-element cost; interchangeable elements end up adjacent.
        order.sort_by(|&x, &y| {
            (Reverse(inst.element_cost(x)), inst.n_weight(x), inst.assoc(x), x).cmp(&(
                Reverse(inst.element_cost(y)),
                inst.n_weight(y),
                inst.assoc(y),
                y,
            ))
        });
        let twin = (0..n)
            .map(|t| {
                t > 0 && {
                    let (a, b) = (order[t - 1], order[t]);
                    inst.n_weight(a) == inst.n_weight(b) && inst.assoc(a) == inst.assoc(b)
                }
            })
            .collect();
        let mut suffix_weight = vec![0u64; n + 1];
        for t in (0..n).rev() {
            suffix_weight[t] = suffix_weight[t + 1] + inst.n_weight(order[t]).get();
        }
        Search {
            inst,
            machines: m,
            order,
            twin,
            suffix_weight,
            terms: vec![0; m],
            usage: vec![vec![0; inst.m_count()]; m],
            slot: vec![0; n],
            limit,
            best: None,
            stop_at: 0,
            first_only: false,
            nodes: 0,
            deadline,
            timed_out: false,
            done: false,
        }
    }

    fn run(&mut self) {
        self.descend(0, 0);
    }

    fn descend(&mut self, t: usize, used: usize) {
        if self.done {
            return;
        }
        self.nodes += 1;
        if self.nodes % CLOCK_CHECK_INTERVAL == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                    self.done = true;
                    return;
                }
            }
        }
        let n = self.order.len();
        if t == n {
            if used == self.machines {
                let value = self.terms.iter().copied().max().unwrap_or(0);
                self.limit = value;
                self.best = Some(self.slot.clone());
                if self.first_only || value <= self.stop_at {
                    self.done = true;
                }
            }
            return;
        }
        if n - t < self.machines - used {
            return;
        }
        // Every remaining element raises some block term by at least its own weight.
        let cap = self.limit - 1;
        let room: u64 = self.terms[..used]
            .iter()
            .map(|&term| cap.saturating_sub(term))
            .fold((self.machines - used) as u64 * cap, u64::saturating_add);
        if room < self.suffix_weight[t] {
            return;
        }

        let i = self.order[t];
        let first = if self.twin[t] { self.slot[t - 1] } else { 0 };
        let last = used.min(self.machines - 1);
        for b in first..=last {
            let mut delta = self.inst.n_weight(i).get();
            for &j in self.inst.assoc(i) {
                if self.usage[b][j] == 0 {
                    delta += self.inst.m_weight(j).get();
                }
            }
            let term = self.terms[b] + delta;
            if term >= self.limit {
                continue;
            }
            self.terms[b] = term;
            for &j in self.inst.assoc(i) {
                self.usage[b][j] += 1;
            }
            self.slot[t] = b;
            self.descend(t + 1, used.max(b + 1));
            for &j in self.inst.assoc(i) {
                self.usage[b][j] -= 1;
            }
            self.terms[b] -= delta;
            if self.done {
                return;
            }
        }
    }

    fn partition_of(&self, slots: &[usize]) -> Result<Partition> {
        let mut blocks = vec![Vec::new(); self.machines];
        for (t, &b) in slots.iter().enumerate() {
            blocks[b].push(self.order[t]);
        }
        Partition::new(blocks)
    }
}

/// Minimises the objective over all partitions into `inst.machines()`
/// non-empty blocks.
///
/// Elements are branched in decreasing `p_i + Σ_{M(i)} p` order; an element
/// may open block `b` only when blocks `0..b` are in use, and elements with
/// identical weight and association are assigned non-decreasing block
/// indices. The incumbent starts from the whole-set approximation and the
/// search stops early once it meets [`lower_bound`]. With a `time_budget`,
/// an expired search returns its incumbent with `timed_out` set.
pub fn exact_solve(inst: &Instance, time_budget: Option<Duration>) -> Result<ExactResult> {
    let start = Instant::now();
    let seed = approximate_partition(inst, &strategy_whole(inst))?;
    let lb = lower_bound(inst);
    if seed.objective <= lb {
        return Ok(ExactResult {
            optimum: seed.objective,
            witness: seed.partition,
            nodes_explored: 0,
            timed_out: false,
        });
    }

    let mut search = Search::new(inst, seed.objective.get(), time_budget.map(|d| start + d));
    search.stop_at = lb.get();
    search.run();
    let (optimum, witness) = match search.best.take() {
        Some(slots) => (Weight::new(search.limit), search.partition_of(&slots)?),
        None => (seed.objective, seed.partition),
    };
    Ok(ExactResult {
        optimum,
        witness,
        nodes_explored: search.nodes,
        timed_out: search.timed_out,
    })
}

/// Is there a partition into `inst.machines()` non-empty blocks with objective at most `target`?
///
/// Returns [`Decision::Unknown`] only when the budget runs out before either
/// a witness or a refutation is found.
pub fn decide(inst: &Instance, target: Weight, time_budget: Option<Duration>) -> Result<Decision> {
    decide_with_witness(inst, target, time_budget).map(|(d, _)| d)
}

/// [`decide`], also returning a witness partition on `Yes`.
pub fn decide_with_witness(
    inst: &Instance,
    target: Weight,
    time_budget: Option<Duration>,
) -> Result<(Decision, Option<Partition>)> {
    let start = Instant::now();
    if lower_bound(inst) > target {
        return Ok((Decision::No, None));
    }
    let seed = approximate_partition(inst, &strategy_whole(inst))?;
    if seed.objective <= target {
        return Ok((Decision::Yes, Some(seed.partition)));
    }
    let limit = target.get().saturating_add(1);
    let mut search = Search::new(inst, limit, time_budget.map(|d| start + d));
    search.first_only = true;
    search.run();
    match search.best.take() {
        Some(slots) => Ok((Decision::Yes, Some(search.partition_of(&slots)?))),
        None if search.timed_out => Ok((Decision::Unknown, None)),
        None => Ok((Decision::No, None)),
    }
}

/// Does `g` contain `k` pairwise adjacent nodes? Plain enumeration of k-subsets.
pub fn brute_force_clique(g: &Graph, k: usize) -> bool {
    if k > g.node_count() {
        return false;
    }
    (0..g.node_count())
        .combinations(k)
        .any(|nodes| nodes.iter().tuple_combinations().all(|(&u, &v)| g.has_edge(u, v)))
}

/// Can the indices be split into `r` triples each summing to `B`?
pub fn brute_force_3partition(p3: &Part3Instance) -> bool {
    fn split(a: &[u64], target: u64, used: &mut [bool]) -> bool {
        let Some(first) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[first] = true;
        for second in first + 1..a.len() {
            if used[second] {
                continue;
            }
            used[second] = true;
            for third in second + 1..a.len() {
                if !used[third] && a[first] + a[second] + a[third] == target {
                    used[third] = true;
                    if split(a, target, used) {
                        return true;
                    }
                    used[third] = false;
                }
            }
            used[second] = false;
        }
        used[first] = false;
        false
    }
    let mut used = vec![false; p3.a().len()];
    split(p3.a(), p3.b(), &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate_objective;

    fn weighted() -> Instance {
        Instance::new(
            vec![2, 1, 3],
            vec![4, 5],
            vec![vec![0], vec![0, 1], vec![1]],
            2,
        )
        .unwrap()
    }

    #[test]
    fn weighted_optimum_and_witness() {
        let inst = weighted();
        let res = exact_solve(&inst, None).unwrap();
        assert_eq!(res.optimum.get(), 12);
        assert!(!res.timed_out);
        assert_eq!(res.witness.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(evaluate_objective(&inst, &res.witness).unwrap(), res.optimum);
    }

    #[test]
    fn single_block_instances() {
        let tiny = Instance::new(vec![1, 1], vec![1], vec![vec![0], vec![0]], 1).unwrap();
        assert_eq!(exact_solve(&tiny, None).unwrap().optimum.get(), 3);
        let m1 = Instance::new(
            vec![1; 6],
            vec![1; 3],
            vec![vec![0], vec![0], vec![1], vec![1], vec![2], vec![2]],
            1,
        )
        .unwrap();
        assert_eq!(exact_solve(&m1, None).unwrap().optimum.get(), 9);
        assert_eq!(decide(&m1, Weight::new(9), None).unwrap(), Decision::Yes);
    }

    #[test]
    fn decision_examples() {
        let inst = weighted();
        assert_eq!(decide(&inst, Weight::new(12), None).unwrap(), Decision::Yes);
        assert_eq!(decide(&inst, Weight::new(11), None).unwrap(), Decision::No);
    }

    #[test]
    fn search_beats_the_seed_when_possible() {
        // The whole-set approximation packs {0,1} and {2,3}; the optimum
        // pairs elements sharing an M-element: {0,2}, {1,3}.
        let inst = Instance::new(
            vec![1, 1, 1, 1],
            vec![5, 5],
            vec![vec![0], vec![1], vec![0], vec![1]],
            2,
        )
        .unwrap();
        let res = exact_solve(&inst, None).unwrap();
        assert_eq!(res.optimum.get(), 7);
        assert_eq!(evaluate_objective(&inst, &res.witness).unwrap().get(), 7);
    }

    #[test]
    fn zero_budget_times_out_gracefully() {
        // 14 elements, no shared structure the bound can exploit quickly.
        let n = 14;
        let assoc: Vec<Vec<usize>> = (0..n).map(|i| vec![i % 5, (i + 2) % 5]).collect();
        let weights: Vec<u64> = (0..n).map(|i| 1 + (i as u64 * 7) % 5).collect();
        let inst = Instance::new(weights, vec![3, 1, 4, 1, 5], assoc, 4).unwrap();
        let res = exact_solve(&inst, Some(Duration::ZERO)).unwrap();
        assert!(res.timed_out || res.nodes_explored == 0);
        assert_eq!(res.witness.len(), 4);
        assert_eq!(evaluate_objective(&inst, &res.witness).unwrap(), res.optimum);
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
    }

    #[test]
    fn clique_oracle() {
        let k3 = graph(3, &[(1, 2), (1, 3), (2, 3)]);
        assert!(brute_force_clique(&k3, 2));
        assert!(brute_force_clique(&k3, 3));
        let path = graph(3, &[(1, 2), (2, 3)]);
        assert!(!brute_force_clique(&path, 3));
        let k4_minus = graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(!brute_force_clique(&k4_minus, 4));
        assert!(brute_force_clique(&k4_minus, 3));
        assert!(!brute_force_clique(&k3, 4));
    }

    #[test]
    fn three_partition_oracle() {
        let p = |a: &[u64], b, r| Part3Instance::new(r, b, a.to_vec()).unwrap();
        assert!(brute_force_3partition(&p(&[3, 3, 3], 9, 1)));
        assert!(brute_force_3partition(&p(&[3, 3, 3, 3, 3, 3], 9, 2)));
        assert!(brute_force_3partition(&p(&[3, 3, 4, 4, 3, 3], 10, 2)));
        // 6 fits no triple summing to 13 with parts in (13/4, 13/2)
        assert!(!brute_force_3partition(&p(&[6, 4, 4, 4, 4, 4], 13, 2)));
    }
}
