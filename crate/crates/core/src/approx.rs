//! Threshold-driven approximation algorithm.
//!
//! Given an initial partition `R¹..Rʳ` of `N`, a threshold `D` is computed
//! once. Phase one walks the groups in order and packs their elements into
//! consecutive blocks, admitting an element only while the block term stays
//! within `D`; a group that does not fit entirely spills into a freshly
//! opened block. Phase two splits single elements off multi-element blocks
//! until exactly `m` blocks exist. The result satisfies `f(P) ≤ D`, hence
//! `f(P) − f* ≤ D − LB` where `LB` is [`lower_bound`].

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::model::{evaluate_objective, is_m1_instance, Instance, Partition};
use crate::weight::Weight;

/// Ordered groups `R¹..Rʳ` partitioning `N`. Order matters: the algorithm
/// consumes groups in sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialPartition {
    groups: Vec<Vec<usize>>,
}

impl InitialPartition {
    /// Validates `groups` as a partition of `N` for `inst`.
    pub fn new(inst: &Instance, groups: Vec<Vec<usize>>) -> Result<Self> {
        let part = Partition::new(groups)?;
        part.check_covers(inst)?;
        Ok(InitialPartition {
            groups: part.blocks().to_vec(),
        })
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }
}

/// The named initial-partition strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// `r = 1`, `R¹ = N`.
    Whole,
    /// `r = |N|`, one singleton per element in id order.
    Singletons,
    /// `r = |M|`, `Rʲ = N(j)` in `M`-id order. Only for M1 instances.
    GroupM1,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Whole, Strategy::Singletons, Strategy::GroupM1];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Whole => "whole",
            Strategy::Singletons => "singletons",
            Strategy::GroupM1 => "group-m1",
        }
    }

    pub fn from_name(name: &str) -> Option<Strategy> {
        Strategy::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn initial_partition(self, inst: &Instance) -> Result<InitialPartition> {
        match self {
            Strategy::Whole => Ok(strategy_whole(inst)),
            Strategy::Singletons => Ok(strategy_singletons(inst)),
            Strategy::GroupM1 => strategy_group_m1(inst),
        }
    }
}

pub fn strategy_whole(inst: &Instance) -> InitialPartition {
    InitialPartition {
        groups: vec![(0..inst.n_count()).collect()],
    }
}

pub fn strategy_singletons(inst: &Instance) -> InitialPartition {
    InitialPartition {
        groups: (0..inst.n_count()).map(|i| vec![i]).collect(),
    }
}

pub fn strategy_group_m1(inst: &Instance) -> Result<InitialPartition> {
    if !is_m1_instance(inst) {
        return Err(Error::Variant(
            "the group-m1 strategy requires an M1 instance".into(),
        ));
    }
    Ok(InitialPartition {
        groups: (0..inst.m_count())
            .map(|j| inst.holders(j).to_vec())
            .collect(),
    })
}

/// Weight of the `M`-union of a group.
fn union_weight(inst: &Instance, group: &[usize], seen: &mut [bool]) -> Result<Weight> {
    let mut total = Weight::ZERO;
    for &i in group {
        for &j in inst.assoc(i) {
            if !seen[j] {
                seen[j] = true;
                total = total.try_add(inst.m_weight(j))?;
            }
        }
    }
    for &i in group {
        for &j in inst.assoc(i) {
            seen[j] = false;
        }
    }
    Ok(total)
}

/// The packing threshold
///
/// `D = ⌈(Σ_N p + Σ_u w(∪_{i∈Rᵘ} M(i))) / m⌉ + max_u (max_{i∈Rᵘ} p_i + w(∪_{i∈Rᵘ} M(i))) − 1`
///
/// where `w(·)` is the total `M`-weight of a set. An `M`-element shared by
/// two groups contributes to both groups' union weights.
pub fn compute_d(inst: &Instance, init: &InitialPartition) -> Result<Weight> {
    let mut seen = vec![false; inst.m_count()];
    let mut numerator = Weight::try_sum(inst.n_weights().iter().copied())?;
    let mut max_term = Weight::ZERO;
    for group in init.groups() {
        let union = union_weight(inst, group, &mut seen)?;
        numerator = numerator.try_add(union)?;
        let heaviest = group
            .iter()
            .map(|&i| inst.n_weight(i))
            .max()
            .unwrap_or(Weight::ZERO);
        max_term = max_term.max(heaviest.try_add(union)?);
    }
    numerator
        .div_ceil(inst.machines() as u64)
        .try_add(max_term)?
        .try_sub(Weight::ONE)
}

/// `max{⌈Σ_{N∪M} p / m⌉, max_i (p_i + Σ_{j∈M(i)} p_j)}`, a lower bound on `f*`.
pub fn lower_bound(inst: &Instance) -> Weight {
    let total = Weight::new(inst.n_total().get() + inst.m_total().get());
    let average = total.div_ceil(inst.machines() as u64);
    let single = (0..inst.n_count())
        .map(|i| inst.element_cost(i))
        .max()
        .unwrap_or(Weight::ZERO);
    average.max(single)
}

/// Threshold, lower bound and the additive guarantee `D − LB` derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub d_value: Weight,
    pub lower_bound: Weight,
    pub deviation_bound: Weight,
}

pub fn deviation_bound(inst: &Instance, init: &InitialPartition) -> Result<BoundReport> {
    let d_value = compute_d(inst, init)?;
    let lower_bound = lower_bound(inst);
    Ok(BoundReport {
        d_value,
        lower_bound,
        deviation_bound: d_value.try_sub(lower_bound)?,
    })
}

/// Output of [`approximate_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub partition: Partition,
    pub objective: Weight,
    pub d_value: Weight,
    /// Block count at the end of phase one (before splitting).
    pub packed_blocks: usize,
}

/// Block under construction: its term and which `M`-elements it already pays for.
struct OpenBlock {
    members: Vec<usize>,
    term: Weight,
    stamp: usize,
}

/// Runs both phases of the approximation algorithm.
///
/// Within a group, elements are offered in order of decreasing
/// `p_i + Σ_{j∈M(i)} p_j`, ties by smaller id. Phase two always splits the
/// smallest id off the first block holding two or more elements.
pub fn approximate_partition(inst: &Instance, init: &InitialPartition) -> Result<Approximation> {
    let m = inst.machines();
    let d = compute_d(inst, init)?;

    // stamps[j] == block.stamp means block already pays for j
    let mut stamps = vec![0usize; inst.m_count()];
    let mut closed: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut block = OpenBlock {
        members: Vec::new(),
        term: Weight::ZERO,
        stamp: 1,
    };

    for group in init.groups() {
        let mut pending = group.clone();
        pending.sort_by_key(|&i| (Reverse(inst.element_cost(i)), i));
        while !pending.is_empty() {
            let mut leftover = Vec::new();
            for &i in &pending {
                let mut delta = inst.n_weight(i);
                for &j in inst.assoc(i) {
                    if stamps[j] != block.stamp {
                        delta = delta.try_add(inst.m_weight(j))?;
                    }
                }
                let candidate = block.term.try_add(delta)?;
                if candidate <= d {
                    block.term = candidate;
                    block.members.push(i);
                    for &j in inst.assoc(i) {
                        stamps[j] = block.stamp;
                    }
                } else {
                    leftover.push(i);
                }
            }
            if !leftover.is_empty() {
                if block.members.is_empty() {
                    return Err(Error::InternalInvariant(
                        "an empty block rejected every remaining element".into(),
                    ));
                }
                closed.push(std::mem::take(&mut block.members));
                if closed.len() >= m {
                    return Err(Error::InternalInvariant(format!(
                        "phase one needs more than {m} blocks"
                    )));
                }
                block.term = Weight::ZERO;
                block.stamp += 1;
            }
            pending = leftover;
        }
    }
    closed.push(block.members);
    let packed_blocks = closed.len();

    while closed.len() < m {
        let k = closed.iter().position(|b| b.len() >= 2).ok_or_else(|| {
            Error::InternalInvariant("no block with two or more elements to split".into())
        })?;
        let (pos, _) = closed[k]
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| i)
            .expect("block is non-empty");
        let i = closed[k].swap_remove(pos);
        closed.push(vec![i]);
    }

    let partition = Partition::new(closed)?;
    let objective = evaluate_objective(inst, &partition)?;
    if objective > d {
        return Err(Error::InternalInvariant(format!(
            "objective {objective} exceeds threshold {d}"
        )));
    }
    Ok(Approximation {
        partition,
        objective,
        d_value: d,
        packed_blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted() -> Instance {
        Instance::new(
            vec![2, 1, 3],
            vec![4, 5],
            vec![vec![0], vec![0, 1], vec![1]],
            2,
        )
        .unwrap()
    }

    fn tiny() -> Instance {
        Instance::new(vec![1, 1], vec![1], vec![vec![0], vec![0]], 1).unwrap()
    }

    /// M1 instance of the 3-partition construction for a=(3,3,3), B=9:
    /// three groups of two N-elements, each group tied to its own M-element.
    fn m1_333() -> Instance {
        Instance::new(
            vec![1; 6],
            vec![1; 3],
            vec![vec![0], vec![0], vec![1], vec![1], vec![2], vec![2]],
            1,
        )
        .unwrap()
    }

    #[test]
    fn d_for_whole_and_singletons() {
        let inst = weighted();
        // ⌈(6+9)/2⌉ + (3+9) − 1
        assert_eq!(compute_d(&inst, &strategy_whole(&inst)).unwrap().get(), 19);
        // ⌈(6+(4+9+5))/2⌉ + max(2+4, 1+9, 3+5) − 1
        assert_eq!(compute_d(&inst, &strategy_singletons(&inst)).unwrap().get(), 21);
        assert_eq!(compute_d(&tiny(), &strategy_whole(&tiny())).unwrap().get(), 4);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(&weighted()).get(), 10);
        assert_eq!(lower_bound(&tiny()).get(), 3);
    }

    #[test]
    fn bound_reports() {
        let inst = weighted();
        let whole = deviation_bound(&inst, &strategy_whole(&inst)).unwrap();
        assert_eq!(
            (whole.d_value.get(), whole.lower_bound.get(), whole.deviation_bound.get()),
            (19, 10, 9)
        );
        let single = deviation_bound(&inst, &strategy_singletons(&inst)).unwrap();
        assert_eq!(
            (single.d_value.get(), single.lower_bound.get(), single.deviation_bound.get()),
            (21, 10, 11)
        );
    }

    #[test]
    fn strategies() {
        let inst = weighted();
        assert_eq!(strategy_singletons(&inst).groups(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(strategy_whole(&inst).groups(), &[vec![0, 1, 2]]);
        assert!(matches!(strategy_group_m1(&inst), Err(Error::Variant(_))));

        let m1 = Instance::new(vec![1; 3], vec![1, 1], vec![vec![0], vec![0], vec![1]], 2).unwrap();
        assert_eq!(strategy_group_m1(&m1).unwrap().groups(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn initial_partition_is_validated() {
        let inst = weighted();
        assert!(InitialPartition::new(&inst, vec![vec![0], vec![1]]).is_err());
        assert!(InitialPartition::new(&inst, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(InitialPartition::new(&inst, vec![vec![2, 0], vec![1]]).is_ok());
    }

    #[test]
    fn single_machine_takes_everything() {
        let inst = tiny();
        let out = approximate_partition(&inst, &strategy_whole(&inst)).unwrap();
        assert_eq!(out.partition.blocks(), &[vec![0, 1]]);
        assert_eq!(out.objective.get(), 3);
    }

    #[test]
    fn m1_group_strategy_on_single_machine() {
        let inst = m1_333();
        let out = approximate_partition(&inst, &strategy_group_m1(&inst).unwrap()).unwrap();
        // f* = 9 (one block holds all six N- and three M-elements)
        assert_eq!(out.objective.get(), 9);
    }

    #[test]
    fn weighted_whole_within_bounds() {
        let inst = weighted();
        let out = approximate_partition(&inst, &strategy_whole(&inst)).unwrap();
        assert_eq!(out.partition.len(), 2);
        assert!(out.objective.get() <= 19);
        // f* = 12: the three two-block partitions score 13, 14 and 12
        assert!(out.objective.get() - 12 <= 9);
    }

    #[test]
    fn phase_two_splits_smallest_id_from_first_splittable_block() {
        // D = ⌈5/3⌉ + 2 − 1 = 3: phase one packs {0,1} and {2,3}.
        let inst = Instance::new(vec![1; 4], vec![1], vec![vec![0]; 4], 3).unwrap();
        let out = approximate_partition(&inst, &strategy_whole(&inst)).unwrap();
        assert_eq!(out.d_value.get(), 3);
        assert_eq!(out.packed_blocks, 2);
        assert_eq!(out.partition.blocks(), &[vec![1], vec![2, 3], vec![0]]);
    }
}
