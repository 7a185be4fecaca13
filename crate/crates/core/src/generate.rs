//! Seeded random instance generation.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Instance;

/// Structural family of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Random weights in `1..=max_weight` and up to three associated elements each.
    General,
    /// Unit weights, each `N`-element tied to exactly one `M`-element.
    M1,
    /// Unit weights, each `M`-element held by exactly one `N`-element.
    N1,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::General => "general",
            Variant::M1 => "m1",
            Variant::N1 => "n1",
        }
    }

    pub fn from_name(name: &str) -> Option<Variant> {
        [Variant::General, Variant::M1, Variant::N1]
            .into_iter()
            .find(|v| v.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    /// `|N|`
    pub n: usize,
    /// `|M|`
    pub m_set: usize,
    pub machines: usize,
    /// Upper weight bound; only used by [`Variant::General`].
    pub max_weight: u64,
    pub variant: Variant,
}

const MAX_ASSOC: usize = 3;

/// Deterministic for fixed parameters. The output always validates and
/// satisfies the requested variant.
pub fn generate_instance(params: &GenParams) -> Result<Instance> {
    let GenParams {
        seed,
        n,
        m_set,
        machines,
        max_weight,
        variant,
    } = *params;
    if n < 2 || machines == 0 || machines >= n {
        return Err(Error::Parameter(format!(
            "need 1 <= machines < n, got machines={machines}, n={n}"
        )));
    }
    if m_set == 0 {
        return Err(Error::Parameter("m_set must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (n_weights, m_weights, assoc) = match variant {
        Variant::General => {
            if max_weight == 0 {
                return Err(Error::Parameter("max_weight must be positive".into()));
            }
            let n_weights = (0..n).map(|_| rng.random_range(1..=max_weight)).collect();
            let m_weights = (0..m_set).map(|_| rng.random_range(1..=max_weight)).collect();
            let mut assoc: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let k = rng.random_range(0..=MAX_ASSOC.min(m_set));
                    sample(&mut rng, m_set, k).into_vec()
                })
                .collect();
            let mut covered = vec![false; m_set];
            for &j in assoc.iter().flatten() {
                covered[j] = true;
            }
            for j in (0..m_set).filter(|&j| !covered[j]) {
                let i = rng.random_range(0..n);
                assoc[i].push(j);
            }
            (n_weights, m_weights, assoc)
        }
        Variant::M1 => {
            if m_set > n {
                return Err(Error::Parameter(format!(
                    "an M1 instance needs m_set <= n, got m_set={m_set}, n={n}"
                )));
            }
            let mut owners: Vec<usize> = (0..n).collect();
            owners.shuffle(&mut rng);
            let mut assoc = vec![Vec::new(); n];
            for (pos, &i) in owners.iter().enumerate() {
                let j = if pos < m_set { pos } else { rng.random_range(0..m_set) };
                assoc[i].push(j);
            }
            (vec![1; n], vec![1; m_set], assoc)
        }
        Variant::N1 => {
            let mut assoc = vec![Vec::new(); n];
            for j in 0..m_set {
                assoc[rng.random_range(0..n)].push(j);
            }
            (vec![1; n], vec![1; m_set], assoc)
        }
    };
    Instance::new(n_weights, m_weights, assoc, machines)
}
