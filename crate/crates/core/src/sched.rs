//! Scheduling view of the problem.
//!
//! In general the problem is makespan scheduling of the jobs `N ∪ M` on `m`
//! identical machines with bipartite precedence (`j → i` iff `j ∈ M(i)`),
//! infinite communication delay and free duplication: a machine that runs
//! `i` must itself run every predecessor of `i`, and shared predecessors on
//! one machine run once. A block of a partition is the job set of one
//! machine, and the block term is its load.
//!
//! For N1 instances the associated sets are private to each element, so each
//! `i` collapses into a single job of duration `|M(i)| + 1` and the problem
//! becomes plain identical-parallel-machine makespan minimisation.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::model::{evaluate_objective, is_n1_instance, Instance, Partition};
use crate::weight::Weight;

/// Identical-machine job set derived from an N1 instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineJobSet {
    /// `d_i = |M(i)| + 1`, indexed by `N`-id.
    pub durations: Vec<u64>,
    pub machines: usize,
}

impl MachineJobSet {
    /// Largest machine load when machine `b` runs the jobs of block `b`.
    pub fn makespan(&self, part: &Partition) -> u64 {
        part.blocks()
            .iter()
            .map(|block| block.iter().map(|&i| self.durations[i]).sum())
            .max()
            .unwrap_or(0)
    }
}

fn require_n1(inst: &Instance) -> Result<()> {
    if is_n1_instance(inst) {
        Ok(())
    } else {
        Err(Error::Variant("the scheduling view requires an N1 instance".into()))
    }
}

pub fn to_parallel_machines(inst: &Instance) -> Result<MachineJobSet> {
    require_n1(inst)?;
    Ok(MachineJobSet {
        durations: (0..inst.n_count())
            .map(|i| inst.assoc(i).len() as u64 + 1)
            .collect(),
        machines: inst.machines(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LptResult {
    /// One block per machine, in machine order.
    pub partition: Partition,
    pub makespan: Weight,
    /// Set when an idle machine had to be given a job split off another one.
    pub filled_idle: bool,
}

/// Longest-processing-time list scheduling on the N1 job view.
///
/// Jobs go in decreasing duration (ties: smaller id) to the least loaded
/// machine (ties: smaller index).
pub fn lpt_partition(inst: &Instance) -> Result<LptResult> {
    let jobs = to_parallel_machines(inst)?;
    let mut order: Vec<usize> = (0..jobs.durations.len()).collect();
    order.sort_by_key(|&i| (Reverse(jobs.durations[i]), i));

    let mut loads = vec![0u64; jobs.machines];
    let mut blocks = vec![Vec::new(); jobs.machines];
    for i in order {
        let (b, _) = loads
            .iter()
            .enumerate()
            .min_by_key(|&(b, &load)| (load, b))
            .expect("at least one machine");
        loads[b] += jobs.durations[i];
        blocks[b].push(i);
    }

    // Cannot trigger while |N| > machines, kept so the output is always a
    // partition into non-empty blocks.
    let mut filled_idle = false;
    while let Some(idle) = blocks.iter().position(Vec::is_empty) {
        let donor = (0..blocks.len())
            .filter(|&b| blocks[b].len() >= 2)
            .max_by_key(|&b| (loads[b], Reverse(b)))
            .ok_or_else(|| Error::InternalInvariant("no machine holds two jobs".into()))?;
        let pos = blocks[donor]
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| i)
            .map(|(pos, _)| pos)
            .expect("donor is non-empty");
        let i = blocks[donor].remove(pos);
        loads[donor] -= jobs.durations[i];
        loads[idle] += jobs.durations[i];
        blocks[idle].push(i);
        filled_idle = true;
    }

    let partition = Partition::new(blocks)?;
    let makespan = evaluate_objective(inst, &partition)?;
    debug_assert_eq!(makespan.get(), jobs.makespan(&partition));
    Ok(LptResult {
        partition,
        makespan,
        filled_idle,
    })
}
