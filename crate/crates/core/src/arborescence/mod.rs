//! r-out k-arborescences: existence, minimum-cost construction, certification
//! and decomposition into arc-disjoint spanning arborescences.
//!
//! A digraph has an r-out k-arborescence iff every vertex is reachable from
//! the root by `k` arc-disjoint paths. The minimum-cost one is found as a
//! minimum-cost common independent set of size `k(n - 1)` of
//!
//! * the union of `k` graphic matroids on the underlying undirected arcs, and
//! * the partition matroid allowing in-degree `k` at every non-root vertex
//!   and `0` at the root.
//!
//! Sets of that size in both matroids are exactly the k-arborescences. The
//! `k = 1` case also has a direct contraction algorithm
//! ([`min_cost_arborescence`]).

mod edmonds;
mod flow;
mod intersection;
mod matroid;

use std::collections::{BTreeMap, BTreeSet};

pub use flow::max_flow;
pub use intersection::{weighted_matroid_intersection, DualCertificate};
pub use matroid::{
    forest_union_independent, min_weight_independent, Exchange, ExchangeView, GraphicUnion,
    InDegreePartition, Matroid, OracleView,
};

use crate::error::{invalid, Error, Result};
use crate::graph::{ArcSet, Digraph};
use crate::{ArcId, VertexId, Weight};

pub(crate) use flow::arc_connectivity;

/// An r-out k-arborescence inside some digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KArborescence<'a, W> {
    pub arcset: ArcSet<'a, W>,
    pub root: VertexId,
    pub k: usize,
    pub total_cost: W,
}

/// Result of re-checking every structural property of a [`KArborescence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantReport {
    pub degrees: bool,
    pub cut_condition: bool,
    pub decomposes: bool,
    pub pair_bound: bool,
}

impl InvariantReport {
    pub fn all(&self) -> bool {
        self.degrees && self.cut_condition && self.decomposes && self.pair_bound
    }
}

impl<'a, W: Weight> KArborescence<'a, W> {
    pub fn new(arcset: ArcSet<'a, W>, root: VertexId, k: usize) -> Self {
        let total_cost = arcset.total_cost();
        KArborescence { arcset, root, k, total_cost }
    }

    fn degrees_ok(&self) -> bool {
        let n = self.arcset.digraph().n();
        let mut indeg = vec![0usize; n];
        for a in self.arcset.arcs() {
            indeg[a.head] += 1;
        }
        self.arcset.len() == self.k * n.saturating_sub(1)
            && (0..n).all(|v| indeg[v] == if v == self.root { 0 } else { self.k })
    }

    /// Each vertex is reached by `k` arc-disjoint root paths inside the set.
    fn cut_condition_ok(&self) -> bool {
        let sub = self.arcset.to_digraph();
        (0..sub.n())
            .filter(|&v| v != self.root)
            .all(|v| arc_connectivity(&sub, self.root, v) >= self.k)
    }

    /// At most `k` arcs join any unordered vertex pair.
    fn pair_bound_ok(&self) -> bool {
        let mut count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for a in self.arcset.arcs() {
            *count.entry((a.tail.min(a.head), a.tail.max(a.head))).or_default() += 1;
        }
        count.values().all(|&c| c <= self.k)
    }

    /// Re-checks degrees, the cut condition (by max-flow to every vertex),
    /// decomposability into `k` arborescences, and the per-pair arc bound.
    pub fn verify_invariants(&self) -> InvariantReport {
        InvariantReport {
            degrees: self.degrees_ok(),
            cut_condition: self.cut_condition_ok(),
            decomposes: decompose(self).is_ok(),
            pair_bound: self.pair_bound_ok(),
        }
    }
}

fn check_root<W: Weight>(digraph: &Digraph<W>, root: VertexId, k: usize) -> Result<()> {
    if root >= digraph.n() {
        return Err(invalid(format!("root {root} out of range 0..{}", digraph.n())));
    }
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    Ok(())
}

/// Whether every non-root vertex has `k` arc-disjoint paths from `root`.
pub fn exists_k_arborescence<W: Weight>(digraph: &Digraph<W>, root: VertexId, k: usize) -> Result<bool> {
    check_root(digraph, root, k)?;
    let mut indeg = vec![0usize; digraph.n()];
    for a in digraph.arcs() {
        indeg[a.head] += 1;
    }
    if (0..digraph.n()).any(|v| v != root && indeg[v] < k) {
        return Ok(false);
    }
    Ok((0..digraph.n())
        .filter(|&v| v != root)
        .all(|v| arc_connectivity(digraph, root, v) >= k))
}

/// Minimum-cost spanning arborescence by Chu–Liu/Edmonds contraction.
pub fn min_cost_arborescence<W: Weight>(
    digraph: &Digraph<W>,
    root: VertexId,
) -> Result<KArborescence<'_, W>> {
    check_root(digraph, root, 1)?;
    let triples: Vec<_> = digraph.arcs().iter().map(|a| (a.tail, a.head, a.cost)).collect();
    let chosen = edmonds::chu_liu_edmonds(digraph.n(), root, &triples)
        .ok_or(Error::NoKArborescence { k: 1 })?;
    Ok(KArborescence::new(ArcSet::new(digraph, chosen)?, root, 1))
}

/// Minimum-cost r-out k-arborescence via weighted matroid intersection,
/// with the certificate already checked.
pub fn min_cost_k_arborescence<W: Weight>(
    digraph: &Digraph<W>,
    root: VertexId,
    k: usize,
) -> Result<(KArborescence<'_, W>, DualCertificate<W>)> {
    check_root(digraph, root, k)?;
    if !exists_k_arborescence(digraph, root, k)? {
        return Err(Error::NoKArborescence { k });
    }
    let n = digraph.n();
    let weights: Vec<W> = digraph.arcs().iter().map(|a| a.cost).collect();
    let forests = GraphicUnion::new(n, digraph.arcs().iter().map(|a| (a.tail, a.head)).collect(), k);
    let indegree = InDegreePartition::in_degree(n, digraph.arcs().iter().map(|a| a.head), root, k);

    let target = k * (n - 1);
    let (set, certificate) = weighted_matroid_intersection(&forests, &indegree, &weights, target)
        .map_err(|e| match e {
            Error::CardinalityUnreachable { .. } => {
                Error::SolverBug(format!("cut condition holds but intersection stopped: {e}"))
            }
            other => other,
        })?;
    certificate
        .verify(&forests, &indegree, &weights, &set)
        .map_err(|why| Error::SolverBug(format!("optimality certificate rejected: {why}")))?;
    Ok((KArborescence::new(ArcSet::new(digraph, set)?, root, k), certificate))
}

fn is_spanning_arborescence<W: Weight>(digraph: &Digraph<W>, root: VertexId, arcs: &[ArcId]) -> bool {
    let n = digraph.n();
    let mut parent = vec![None; n];
    for &a in arcs {
        let arc = digraph.arc(a);
        if arc.head == root || parent[arc.head].replace(arc.tail).is_some() {
            return false;
        }
    }
    // every vertex must climb to the root without revisiting
    (0..n).all(|v| {
        let mut u = v;
        for _ in 0..n {
            if u == root {
                return true;
            }
            match parent[u] {
                Some(p) => u = p,
                None => return false,
            }
        }
        u == root
    })
}

/// Splits a k-arborescence into `k` arc-disjoint spanning arborescences.
///
/// Each arborescence is grown from the root one arc at a time, taking the
/// smallest-ID arc whose removal still leaves `k' - 1` arc-disjoint root
/// paths to its head in the unused arcs (`k'` arborescences still to build).
pub fn decompose<'a, W: Weight>(t: &KArborescence<'a, W>) -> Result<Vec<ArcSet<'a, W>>> {
    let digraph = t.arcset.digraph();
    let n = digraph.n();
    let root = t.root;
    let fail = || Error::NotDecomposable { k: t.k };
    if !t.degrees_ok() {
        return Err(fail());
    }
    let mut remaining: BTreeSet<ArcId> = t.arcset.members().clone();
    let mut parts = Vec::with_capacity(t.k);
    for built in 0..t.k {
        let still = t.k - built;
        let mut branch = Vec::with_capacity(n.saturating_sub(1));
        if still == 1 {
            branch.extend(remaining.iter().copied());
        } else {
            let mut reached = vec![false; n];
            reached[root] = true;
            while branch.len() + 1 < n {
                let candidates: Vec<ArcId> = remaining
                    .iter()
                    .copied()
                    .filter(|&a| reached[digraph.arc(a).tail] && !reached[digraph.arc(a).head])
                    .collect();
                let pick = candidates.into_iter().find(|&a| {
                    let head = digraph.arc(a).head;
                    let rest = Digraph::from_arcs(
                        n,
                        remaining
                            .iter()
                            .filter(|&&b| b != a)
                            .map(|&b| (digraph.arc(b).tail, digraph.arc(b).head, 1i64)),
                    )
                    .expect("arcs of a valid digraph");
                    arc_connectivity(&rest, root, head) >= still - 1
                });
                let a = pick.ok_or_else(fail)?;
                remaining.remove(&a);
                reached[digraph.arc(a).head] = true;
                branch.push(a);
            }
        }
        if !is_spanning_arborescence(digraph, root, &branch) {
            return Err(fail());
        }
        if still == 1 {
            remaining.clear();
        }
        parts.push(ArcSet::new(digraph, branch)?);
    }
    Ok(parts)
}
