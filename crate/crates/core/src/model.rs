//! Instance and partition data model.
//!
//! An [`Instance`] holds two disjoint weighted ground sets `N` and `M` and
//! an association `i ↦ M(i) ⊆ M` for every `i ∈ N`. A [`Partition`] splits
//! `N` into blocks; a block pays the weight of its own `N`-elements plus the
//! weight of every `M`-element associated with at least one of them, each
//! counted once. The objective of a partition is its most expensive block.
//!
//! Ids are 0-based indices internally. The text formats in [`crate::io`]
//! translate to and from the 1-based ids users see.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::weight::Weight;

/// A validated problem instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    machines: usize,
    n_weights: Vec<Weight>,
    m_weights: Vec<Weight>,
    assoc: Vec<Vec<usize>>,
    holders: Vec<Vec<usize>>,
}

impl Instance {
    /// Builds and validates an instance.
    ///
    /// `assoc[i]` lists the 0-based `M`-ids associated with `N`-element `i`;
    /// it may be empty as long as the union over all `i` covers `M`. The
    /// stored association lists are sorted.
    pub fn new(
        n_weights: Vec<u64>,
        m_weights: Vec<u64>,
        assoc: Vec<Vec<usize>>,
        machines: usize,
    ) -> Result<Self> {
        let n_count = n_weights.len();
        let m_count = m_weights.len();
        if m_count == 0 {
            return Err(Error::Id("the associated set M must be non-empty".into()));
        }
        if assoc.len() != n_count {
            return Err(Error::Id(format!(
                "association given for {} N-elements, expected {}",
                assoc.len(),
                n_count
            )));
        }
        if let Some(pos) = n_weights.iter().position(|&w| w == 0) {
            return Err(Error::Weight(format!("N-element {} has weight 0", pos + 1)));
        }
        if let Some(pos) = m_weights.iter().position(|&w| w == 0) {
            return Err(Error::Weight(format!("M-element {} has weight 0", pos + 1)));
        }
        if machines == 0 || machines >= n_count {
            return Err(Error::MachineCount { machines, n_count });
        }

        let mut sorted_assoc = Vec::with_capacity(n_count);
        let mut holders = vec![Vec::new(); m_count];
        for (i, list) in assoc.into_iter().enumerate() {
            let mut list = list;
            list.sort_unstable();
            for pair in list.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::Id(format!(
                        "M-element {} listed twice for N-element {}",
                        pair[0] + 1,
                        i + 1
                    )));
                }
            }
            if let Some(&bad) = list.iter().find(|&&j| j >= m_count) {
                return Err(Error::Id(format!(
                    "N-element {} references M-element {} but |M| = {}",
                    i + 1,
                    bad + 1,
                    m_count
                )));
            }
            for &j in &list {
                holders[j].push(i);
            }
            sorted_assoc.push(list);
        }
        if let Some(j) = holders.iter().position(Vec::is_empty) {
            return Err(Error::Coverage(j + 1));
        }

        // The threshold computation may count every M-weight once per group,
        // and there are at most |N| groups.
        let overflow = || Error::Weight("total weight exceeds the 64-bit range".into());
        let n_total = n_weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or_else(overflow)?;
        let m_total = m_weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or_else(overflow)?;
        m_total
            .checked_mul(n_count as u64)
            .and_then(|x| x.checked_add(n_total))
            .ok_or_else(overflow)?;

        Ok(Instance {
            machines,
            n_weights: n_weights.into_iter().map(Weight::new).collect(),
            m_weights: m_weights.into_iter().map(Weight::new).collect(),
            assoc: sorted_assoc,
            holders,
        })
    }

    pub fn n_count(&self) -> usize {
        self.n_weights.len()
    }

    pub fn m_count(&self) -> usize {
        self.m_weights.len()
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn n_weight(&self, i: usize) -> Weight {
        self.n_weights[i]
    }

    pub fn m_weight(&self, j: usize) -> Weight {
        self.m_weights[j]
    }

    pub fn n_weights(&self) -> &[Weight] {
        &self.n_weights
    }

    pub fn m_weights(&self) -> &[Weight] {
        &self.m_weights
    }

    /// `M(i)`, sorted.
    pub fn assoc(&self, i: usize) -> &[usize] {
        &self.assoc[i]
    }

    /// `N(j)`: the `N`-elements whose association contains `j`, sorted.
    pub fn holders(&self, j: usize) -> &[usize] {
        &self.holders[j]
    }

    /// `p_i + Σ_{j ∈ M(i)} p_j`, the cost of `i` alone in a block.
    pub fn element_cost(&self, i: usize) -> Weight {
        // Cannot overflow: bounded by the validated total.
        Weight::new(
            self.n_weights[i].get()
                + self.assoc[i]
                    .iter()
                    .map(|&j| self.m_weights[j].get())
                    .sum::<u64>(),
        )
    }

    pub fn n_total(&self) -> Weight {
        Weight::new(self.n_weights.iter().map(|w| w.get()).sum())
    }

    pub fn m_total(&self) -> Weight {
        Weight::new(self.m_weights.iter().map(|w| w.get()).sum())
    }

    /// Same instance with a different machine count.
    pub fn with_machines(&self, machines: usize) -> Result<Self> {
        if machines == 0 || machines >= self.n_count() {
            return Err(Error::MachineCount {
                machines,
                n_count: self.n_count(),
            });
        }
        Ok(Instance {
            machines,
            ..self.clone()
        })
    }

    /// Term of a single block: its `N`-weight plus the weight of its `M`-union.
    pub fn block_term(&self, block: &[usize]) -> Weight {
        let mut seen = vec![false; self.m_count()];
        let mut total = 0u64;
        for &i in block {
            total += self.n_weights[i].get();
            for &j in &self.assoc[i] {
                if !seen[j] {
                    seen[j] = true;
                    total += self.m_weights[j].get();
                }
            }
        }
        Weight::new(total)
    }

    fn all_unit(&self) -> bool {
        self.n_weights
            .iter()
            .chain(&self.m_weights)
            .all(|&w| w == Weight::ONE)
    }
}

/// Checks the raw pieces of an instance; see [`Instance::new`].
pub fn validate_instance(
    n_weights: Vec<u64>,
    m_weights: Vec<u64>,
    assoc: Vec<Vec<usize>>,
    machines: usize,
) -> Result<Instance> {
    Instance::new(n_weights, m_weights, assoc, machines)
}

/// An ordered list of non-empty, pairwise disjoint blocks of `N`-ids.
///
/// Block contents are kept sorted; block order is preserved as given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::Partition(format!("block {} is empty", b + 1)));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if !seen.insert(i) {
                    return Err(Error::Partition(format!(
                        "N-element {} appears in more than one place",
                        i + 1
                    )));
                }
            }
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Checks that the blocks cover exactly `{0..n_count}` of `inst`.
    pub fn check_covers(&self, inst: &Instance) -> Result<()> {
        let n = inst.n_count();
        let mut seen = vec![false; n];
        for block in &self.blocks {
            for &i in block {
                if i >= n {
                    return Err(Error::Partition(format!(
                        "N-element {} does not exist (|N| = {})",
                        i + 1,
                        n
                    )));
                }
                seen[i] = true;
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(i) => Err(Error::Partition(format!(
                "N-element {} is not in any block",
                i + 1
            ))),
            None => Ok(()),
        }
    }
}

/// Objective of `part`: the maximum block term. Any positive number of
/// blocks is accepted, not only `inst.machines()`.
pub fn evaluate_objective(inst: &Instance, part: &Partition) -> Result<Weight> {
    part.check_covers(inst)?;
    Ok(part
        .blocks()
        .iter()
        .map(|block| inst.block_term(block))
        .max()
        .unwrap_or(Weight::ZERO))
}

/// Unit weights, `|M(i)| = 1` for every `i`, and `N(j) ∩ N(j') = ∅` for
/// distinct `M`-ids.
pub fn is_m1_instance(inst: &Instance) -> bool {
    if !inst.all_unit() || (0..inst.n_count()).any(|i| inst.assoc(i).len() != 1) {
        return false;
    }
    let mut owner = vec![None; inst.n_count()];
    for j in 0..inst.m_count() {
        for &i in inst.holders(j) {
            if owner[i].replace(j).is_some() {
                return false;
            }
        }
    }
    true
}

/// Unit weights, `|N(j)| = 1` for every `j`, and `M(i) ∩ M(i') = ∅` for
/// distinct `N`-ids.
pub fn is_n1_instance(inst: &Instance) -> bool {
    if !inst.all_unit() || (0..inst.m_count()).any(|j| inst.holders(j).len() != 1) {
        return false;
    }
    let mut owner = vec![None; inst.m_count()];
    for i in 0..inst.n_count() {
        for &j in inst.assoc(i) {
            if owner[j].replace(i).is_some() {
                return false;
            }
        }
    }
    true
}
