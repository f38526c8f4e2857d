//! Feasibility of k-FGC edge sets via a capacitated global minimum cut.
//!
//! `F` is feasible iff every cut is crossed by a safe edge of `F` or by at
//! least `k + 1` unsafe edges of `F`. Giving safe edges capacity `k + 1` and
//! unsafe edges capacity `1` turns that into one threshold test on the
//! global minimum cut of `(V, F)`.

use crate::error::{invalid, Result};
use crate::graph::FgcInstance;
use crate::{Cost, EdgeId, VertexId, Weight};

/// Stoer–Wagner minimum cut. Returns the cut value and one side achieving it.
pub fn global_min_cut<W: Weight>(
    n: usize,
    weighted_edges: &[(VertexId, VertexId, W)],
) -> Result<(W, Vec<VertexId>)> {
    if n < 2 {
        return Err(invalid("global minimum cut needs at least two vertices"));
    }
    let mut adj = vec![vec![W::zero(); n]; n];
    for &(u, v, c) in weighted_edges {
        if u >= n || v >= n {
            return Err(invalid(format!("edge ({u},{v}) out of range 0..{n}")));
        }
        if c < W::zero() {
            return Err(invalid("capacities must be nonnegative"));
        }
        if u != v {
            adj[u][v] = adj[u][v] + c;
            adj[v][u] = adj[v][u] + c;
        }
    }

    // groups[v]: original vertices merged into super-vertex v
    let mut groups: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<VertexId> = (0..n).collect();
    let mut best: Option<(W, Vec<VertexId>)> = None;

    while active.len() > 1 {
        let mut in_a = vec![false; n];
        let mut conn = vec![W::zero(); n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = if step == 0 {
                active[0]
            } else {
                *active
                    .iter()
                    .filter(|&&v| !in_a[v])
                    .max_by(|&&a, &&b| conn[a].cmp(&conn[b]).then(b.cmp(&a)))
                    .expect("unvisited vertex remains")
            };
            in_a[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !in_a[v] {
                    conn[v] = conn[v] + adj[next][v];
                }
            }
        }
        let phase_value = conn[last];
        if best.as_ref().is_none_or(|(b, _)| phase_value < *b) {
            best = Some((phase_value, groups[last].clone()));
        }
        // merge last into prev
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &v in &active {
            if v != last && v != prev {
                adj[prev][v] = adj[prev][v] + adj[last][v];
                adj[v][prev] = adj[prev][v];
            }
        }
        active.retain(|&v| v != last);
    }

    let (value, mut side) = best.expect("at least one phase ran");
    side.sort_unstable();
    Ok((value, side))
}

/// Minimum cut of `(V, F)` under the safe = `k + 1`, unsafe = `1` capacities.
pub fn capacitated_min_cut(
    instance: &FgcInstance,
    edge_subset: &[EdgeId],
) -> Result<Option<(Cost, Vec<VertexId>)>> {
    let ids = instance.validate_edge_ids(edge_subset)?;
    if instance.n() < 2 {
        return Ok(None);
    }
    let safe_cap = (instance.k() + 1) as Cost;
    let weighted: Vec<_> = ids
        .iter()
        .map(|&e| {
            let edge = instance.edge(e);
            let cap = if edge.safety.is_safe() { safe_cap } else { 1 };
            (edge.u, edge.v, cap)
        })
        .collect();
    global_min_cut(instance.n(), &weighted).map(Some)
}

/// A vertex set whose cut has neither a safe edge of `F` nor `k + 1` unsafe
/// ones, or `None` when `F` is feasible.
pub fn violated_cut(instance: &FgcInstance, edge_subset: &[EdgeId]) -> Result<Option<Vec<VertexId>>> {
    let threshold = (instance.k() + 1) as Cost;
    Ok(capacitated_min_cut(instance, edge_subset)?
        .filter(|(value, _)| *value < threshold)
        .map(|(_, side)| side))
}

pub fn is_feasible_solution(instance: &FgcInstance, edge_subset: &[EdgeId]) -> Result<bool> {
    Ok(violated_cut(instance, edge_subset)?.is_none())
}

pub fn is_feasible_instance(instance: &FgcInstance) -> bool {
    is_feasible_solution(instance, &instance.all_edge_ids()).expect("all edge IDs are valid")
}
