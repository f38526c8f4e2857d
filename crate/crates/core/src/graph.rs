//! Undirected instance graphs, reduction digraphs and their cut primitives.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::{ArcId, Cost, EdgeId, VertexId, Weight, MAX_EDGE_COST};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Safety {
    Safe,
    Unsafe,
}

impl Safety {
    pub fn is_safe(self) -> bool {
        self == Safety::Safe
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub cost: Cost,
    pub safety: Safety,
}

impl Edge {
    pub fn crosses(&self, side: &[bool]) -> bool {
        side[self.u] != side[self.v]
    }
}

/// A k-FGC instance: multigraph on vertices `0..n`, safe/unsafe edges with
/// nonnegative costs, and the number `k` of unsafe failures to survive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgcInstance {
    n: usize,
    k: usize,
    edges: Vec<Edge>,
}

impl FgcInstance {
    /// Edges are given as `(u, v, cost, safety)`; their IDs are their positions.
    pub fn new(
        n: usize,
        k: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Cost, Safety)>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, cost, safety))| {
                if u >= n || v >= n {
                    return Err(invalid(format!("edge {id}: endpoint out of range 0..{n}")));
                }
                if u == v {
                    return Err(invalid(format!("edge {id}: self-loop at vertex {u}")));
                }
                if !(0..=MAX_EDGE_COST).contains(&cost) {
                    return Err(invalid(format!(
                        "edge {id}: cost {cost} outside 0..={MAX_EDGE_COST}"
                    )));
                }
                Ok(Edge { id, u, v, cost, safety })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FgcInstance { n, k, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Same graph with a different robustness parameter.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        Ok(FgcInstance { k, ..self.clone() })
    }

    pub fn all_edge_ids(&self) -> Vec<EdgeId> {
        (0..self.m()).collect()
    }

    /// Deduplicated, sorted copy of `ids`, rejecting unknown edge IDs.
    pub fn validate_edge_ids(&self, ids: &[EdgeId]) -> Result<Vec<EdgeId>> {
        let set: BTreeSet<EdgeId> = ids.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&e| e >= self.m()) {
            return Err(invalid(format!("edge ID {bad} out of range 0..{}", self.m())));
        }
        Ok(set.into_iter().collect())
    }

    pub fn cost_of(&self, ids: &[EdgeId]) -> Cost {
        ids.iter().map(|&e| self.edges[e].cost).sum()
    }

    /// `2 c(F ∩ U) + (k + 1) c(F ∩ S)`, the arborescence cost bound attached to `F`.
    pub fn arborescence_cost_bound(&self, ids: &[EdgeId]) -> Cost {
        let k1 = (self.k + 1) as Cost;
        ids.iter()
            .map(|&e| {
                let edge = &self.edges[e];
                match edge.safety {
                    Safety::Safe => k1 * edge.cost,
                    Safety::Unsafe => 2 * edge.cost,
                }
            })
            .sum()
    }
}

fn side_mask(n: usize, side: &[VertexId]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in side {
        if v >= n {
            return Err(invalid(format!("vertex {v} out of range 0..{n}")));
        }
        mask[v] = true;
    }
    let count = mask.iter().filter(|&&b| b).count();
    if count == 0 || count == n {
        return Err(invalid("cut side must be a nonempty proper vertex subset"));
    }
    Ok(mask)
}

/// Whether `(V, edge_subset)` is connected.
pub fn is_connected(instance: &FgcInstance, edge_subset: &[EdgeId]) -> Result<bool> {
    let ids = instance.validate_edge_ids(edge_subset)?;
    Ok(connected_unchecked(instance, ids.iter().copied()))
}

pub(crate) fn connected_unchecked(
    instance: &FgcInstance,
    ids: impl IntoIterator<Item = EdgeId>,
) -> bool {
    let n = instance.n();
    if n <= 1 {
        return true;
    }
    let mut uf = UnionFind::<usize>::new(n);
    let mut components = n;
    for e in ids {
        let edge = instance.edge(e);
        if uf.union(edge.u, edge.v) {
            components -= 1;
        }
    }
    components == 1
}

/// Selected edges with exactly one endpoint in `side`.
pub fn undirected_cut(
    instance: &FgcInstance,
    edge_subset: &[EdgeId],
    side: &[VertexId],
) -> Result<Vec<EdgeId>> {
    let ids = instance.validate_edge_ids(edge_subset)?;
    let mask = side_mask(instance.n(), side)?;
    Ok(ids
        .into_iter()
        .filter(|&e| instance.edge(e).crosses(&mask))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc<W = Cost> {
    pub id: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub cost: W,
    /// The undirected edge this arc was created from, if any.
    pub source_edge: Option<EdgeId>,
}

/// Directed multigraph on `0..n` with weighted arcs; arc IDs are positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph<W = Cost> {
    n: usize,
    arcs: Vec<Arc<W>>,
}

impl<W: Weight> Digraph<W> {
    pub fn new(n: usize) -> Self {
        Digraph { n, arcs: Vec::new() }
    }

    /// Builds a digraph from `(tail, head, cost)` triples.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (VertexId, VertexId, W)>,
    ) -> Result<Self> {
        let mut d = Digraph::new(n);
        for (tail, head, cost) in arcs {
            d.add_arc(tail, head, cost, None)?;
        }
        Ok(d)
    }

    pub fn add_arc(
        &mut self,
        tail: VertexId,
        head: VertexId,
        cost: W,
        source_edge: Option<EdgeId>,
    ) -> Result<ArcId> {
        if tail >= self.n || head >= self.n {
            return Err(invalid(format!(
                "arc ({tail},{head}) out of range 0..{}",
                self.n
            )));
        }
        if tail == head {
            return Err(invalid(format!("self-loop arc at vertex {tail}")));
        }
        let id = self.arcs.len();
        self.arcs.push(Arc { id, tail, head, cost, source_edge });
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc<W>] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc<W> {
        &self.arcs[id]
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn full_set(&self) -> ArcSet<'_, W> {
        ArcSet {
            digraph: self,
            members: (0..self.arcs.len()).collect(),
        }
    }
}

/// A subset of the arcs of one digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet<'a, W = Cost> {
    digraph: &'a Digraph<W>,
    members: BTreeSet<ArcId>,
}

impl<'a, W: Weight> ArcSet<'a, W> {
    pub fn new(digraph: &'a Digraph<W>, members: impl IntoIterator<Item = ArcId>) -> Result<Self> {
        let members: BTreeSet<ArcId> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&a| a >= digraph.len()) {
            return Err(invalid(format!("arc ID {bad} out of range 0..{}", digraph.len())));
        }
        Ok(ArcSet { digraph, members })
    }

    pub fn digraph(&self) -> &'a Digraph<W> {
        self.digraph
    }

    pub fn members(&self) -> &BTreeSet<ArcId> {
        &self.members
    }

    pub fn ids(&self) -> Vec<ArcId> {
        self.members.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: ArcId) -> bool {
        self.members.contains(&id)
    }

    pub fn arcs(&self) -> impl Iterator<Item = &'a Arc<W>> + '_ {
        let d = self.digraph;
        self.members.iter().map(move |&a| d.arc(a))
    }

    pub fn total_cost(&self) -> W {
        self.arcs().map(|a| a.cost).sum()
    }

    /// The same arcs as a standalone digraph (arc IDs renumbered in order).
    pub fn to_digraph(&self) -> Digraph<W> {
        Digraph {
            n: self.digraph.n(),
            arcs: self
                .arcs()
                .enumerate()
                .map(|(id, a)| Arc { id, ..a.clone() })
                .collect(),
        }
    }
}

/// Arcs of `arcset` entering `side` from outside it.
pub fn directed_in_cut<W: Weight>(arcset: &ArcSet<'_, W>, side: &[VertexId]) -> Result<Vec<ArcId>> {
    let mask = side_mask(arcset.digraph().n(), side)?;
    Ok(arcset
        .arcs()
        .filter(|a| mask[a.head] && !mask[a.tail])
        .map(|a| a.id)
        .collect())
}
