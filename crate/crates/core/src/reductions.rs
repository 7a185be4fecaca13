//! Decision-instance constructions from CLIQUE and 3-PARTITION.
//!
//! Each constructor returns the instance, the target `C`, and a provenance
//! map naming the role every element plays. Id layout is fixed:
//!
//! * CLIQUE: `N` = edge elements (in sorted edge order), then the
//!   `(k²+k)/2` elements of `T`, then the single element of `T₀`;
//!   `M` = node elements `V`, then the filler elements `S`.
//! * 3-PARTITION, M1 form: `N` = blocks `A₁..A₃ᵣ` in order, `M` = `j₁..j₃ᵣ`.
//! * 3-PARTITION, N1 form: `N` = `i₁..i₃ᵣ`, `M` = blocks `A₁..A₃ᵣ` in order.
//!
//! `|A_k| = a_k − 1` in both 3-PARTITION forms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::weight::Weight;

/// Simple undirected graph on nodes `0..node_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges may be given in either orientation; loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!("loop at node {}", u + 1)));
            }
            if u.max(v) >= node_count {
                return Err(Error::Precondition(format!(
                    "edge {{{}, {}}} leaves the node range 1..{}",
                    u + 1,
                    v + 1,
                    node_count
                )));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Precondition(format!(
                    "duplicate edge {{{}, {}}}",
                    u.min(v) + 1,
                    u.max(v) + 1
                )));
            }
        }
        Ok(Graph {
            node_count,
            edges: set,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, s) in seen.iter_mut().enumerate() {
                if !*s && self.edges.contains(&(u.min(v), u.max(v))) {
                    *s = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A 3-PARTITION input: `3r` integers `a_k > 1` with `Σ a_k = rB` and
/// `B/4 < a_k < B/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part3Instance {
    r: usize,
    b: u64,
    a: Vec<u64>,
}

impl Part3Instance {
    pub fn new(r: usize, b: u64, a: Vec<u64>) -> Result<Self> {
        let fail = |msg: String| Err(Error::Part3Format(msg));
        if r == 0 {
            return fail("r must be positive".into());
        }
        if a.len() != 3 * r {
            return fail(format!("expected {} integers for r = {}, got {}", 3 * r, r, a.len()));
        }
        if let Some(k) = a.iter().position(|&x| x <= 1) {
            return fail(format!("a_{} = {} is not greater than one", k + 1, a[k]));
        }
        let sum = a.iter().try_fold(0u64, |acc, &x| acc.checked_add(x));
        if sum != (r as u64).checked_mul(b) {
            return fail(format!("the integers do not sum to r·B = {}·{}", r, b));
        }
        // B/4 < a_k < B/2, in integers
        if let Some(k) = a.iter().position(|&x| x.saturating_mul(4) <= b || x.saturating_mul(2) >= b) {
            return fail(format!("a_{} = {} is not strictly between B/4 and B/2", k + 1, a[k]));
        }
        Ok(Part3Instance { r, b, a })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }
}

/// Role of an `N`-element in a constructed instance. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NRole {
    /// Element for the edge `{u, v}` of the source graph.
    Edge(usize, usize),
    /// The `t`-th element of `T`.
    Tee(usize),
    /// The single element of `T₀`.
    TeeZero,
    /// Member of block `A_k` (M1 form).
    Block(usize),
    /// The element `i_k` (N1 form).
    Item(usize),
}

/// Role of an `M`-element in a constructed instance. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MRole {
    /// Element for graph node `v`.
    Node(usize),
    /// The `s`-th filler element of `S`.
    Filler(usize),
    /// The element `j_k` (M1 form).
    Item(usize),
    /// Member of block `A_k` (N1 form).
    Block(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub n_roles: Vec<NRole>,
    pub m_roles: Vec<MRole>,
}

/// Which construction produced a [`DecisionInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Clique,
    Part3M1,
    Part3N1,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Clique => "clique",
            Source::Part3M1 => "part3-m1",
            Source::Part3N1 => "part3-n1",
        }
    }

    pub fn from_name(name: &str) -> Option<Source> {
        [Source::Clique, Source::Part3M1, Source::Part3N1]
            .into_iter()
            .find(|s| s.name() == name)
    }
}

/// An instance together with the decision target `C` and element roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionInstance {
    pub source: Source,
    pub instance: Instance,
    pub target: Weight,
    pub provenance: Provenance,
}

/// Sizes implied by a CLIQUE input: `(|T|, |S|, C)`.
pub fn clique_sizes(node_count: usize, edge_count: usize, k: usize) -> (usize, usize, u64) {
    let tee = (k * k + k) / 2;
    let filler = node_count + edge_count - (k * k - k) / 2 - 1;
    let target = (node_count + edge_count + k) as u64;
    (tee, filler, target)
}

/// Two-machine unit-weight instance that admits objective `≤ n + |W| + k`
/// exactly when `g` has a `k`-clique.
///
/// Requires `1 < k < |V|` and `(k² − k)/2 < |W|`.
pub fn reduce_clique(g: &Graph, k: usize) -> Result<DecisionInstance> {
    let n = g.node_count();
    let w = g.edge_count();
    if k <= 1 {
        return Err(Error::Precondition(format!("k = {k} must exceed 1")));
    }
    if k >= n {
        return Err(Error::Precondition(format!("k = {k} must be below |V| = {n}")));
    }
    if (k * k - k) / 2 >= w {
        return Err(Error::Precondition(format!(
            "(k²−k)/2 = {} must be below |W| = {w}",
            (k * k - k) / 2
        )));
    }
    let (tee, filler, target) = clique_sizes(n, w, k);

    let mut assoc = Vec::with_capacity(w + tee + 1);
    let mut n_roles = Vec::with_capacity(w + tee + 1);
    for (u, v) in g.edges() {
        assoc.push(vec![u, v]);
        n_roles.push(NRole::Edge(u, v));
    }
    for t in 0..tee {
        assoc.push((0..n).collect());
        n_roles.push(NRole::Tee(t));
    }
    assoc.push((n..n + filler).collect());
    n_roles.push(NRole::TeeZero);

    let m_roles = (0..n)
        .map(MRole::Node)
        .chain((0..filler).map(MRole::Filler))
        .collect();
    let instance = Instance::new(vec![1; assoc.len()], vec![1; n + filler], assoc, 2)?;
    Ok(DecisionInstance {
        source: Source::Clique,
        instance,
        target: Weight::new(target),
        provenance: Provenance { n_roles, m_roles },
    })
}

/// M1 instance with `r` machines and target `B`: block `A_k` of `a_k − 1`
/// elements all tied to the single `M`-element `j_k`.
pub fn reduce_part3_m1(p3: &Part3Instance) -> Result<DecisionInstance> {
    let n_count: u64 = p3.a().iter().map(|&a| a - 1).sum();
    if p3.r() as u64 >= n_count {
        return Err(Error::Precondition(format!(
            "r = {} machines would not be fewer than |N| = {}",
            p3.r(),
            n_count
        )));
    }
    let mut assoc = Vec::new();
    let mut n_roles = Vec::new();
    for (k, &a) in p3.a().iter().enumerate() {
        for _ in 1..a {
            assoc.push(vec![k]);
            n_roles.push(NRole::Block(k));
        }
    }
    let m_count = p3.a().len();
    let instance = Instance::new(vec![1; assoc.len()], vec![1; m_count], assoc, p3.r())?;
    Ok(DecisionInstance {
        source: Source::Part3M1,
        instance,
        target: Weight::new(p3.b()),
        provenance: Provenance {
            n_roles,
            m_roles: (0..m_count).map(MRole::Item).collect(),
        },
    })
}

/// N1 instance with `r` machines and target `B`: element `i_k` is tied to
/// its own block `A_k` of `a_k − 1` `M`-elements.
pub fn reduce_part3_n1(p3: &Part3Instance) -> Result<DecisionInstance> {
    let mut assoc = Vec::with_capacity(p3.a().len());
    let mut m_roles = Vec::new();
    for (k, &a) in p3.a().iter().enumerate() {
        let start = m_roles.len();
        for _ in 1..a {
            m_roles.push(MRole::Block(k));
        }
        assoc.push((start..m_roles.len()).collect());
    }
    let n_count = assoc.len();
    let instance = Instance::new(vec![1; n_count], vec![1; m_roles.len()], assoc, p3.r())?;
    Ok(DecisionInstance {
        source: Source::Part3N1,
        instance,
        target: Weight::new(p3.b()),
        provenance: Provenance {
            n_roles: (0..n_count).map(NRole::Item).collect(),
            m_roles,
        },
    })
}
