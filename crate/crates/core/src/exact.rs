//! Exhaustive oracles for verification at desk scale. Nothing here shares
//! code with the approximation pipeline beyond the data model.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::feasibility::{is_feasible_solution, violated_cut};
use crate::graph::{connected_unchecked, Digraph, FgcInstance};
use crate::{Cost, EdgeId, VertexId, Weight};

/// Largest edge count `exact_opt` accepts.
pub const MAX_EXACT_EDGES: usize = 24;
/// Largest vertex count for which cuts are enumerated directly.
pub const MAX_CUT_ENUMERATION_VERTICES: usize = 20;
/// Largest number of arc subsets `exact_k_arborescence` will try.
pub const MAX_ARC_SUBSETS: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub edges: Vec<EdgeId>,
    pub cost: Cost,
    /// Candidate subsets popped from the best-first queue.
    pub examined: u64,
}

/// Cut test by enumerating every vertex bipartition (`n <= 20`).
fn every_cut_covered(n: usize, k: usize, ends: &[(u32, bool)]) -> bool {
    if n <= 1 {
        return true;
    }
    // vertex n-1 stays outside S; each bipartition is seen once
    (1u32..1 << (n - 1)).all(|side| {
        let mut unsafe_count = 0;
        for &(pair, safe) in ends {
            let crosses = (side & pair).count_ones() == 1;
            if crosses {
                if safe {
                    return true;
                }
                unsafe_count += 1;
            }
        }
        unsafe_count > k
    })
}

fn pair_mask(n: usize, u: VertexId, v: VertexId) -> u32 {
    // bit n-1 is never set in `side`, so it may be dropped
    let bit = |x: usize| if x + 1 == n { 0 } else { 1u32 << x };
    bit(u) | bit(v)
}

/// Definitional check: `(V, F \ X)` is connected for every set `X` of at
/// most `k` unsafe edges of `F`.
pub fn is_feasible_by_removal(instance: &FgcInstance, edge_subset: &[EdgeId]) -> Result<bool> {
    let ids = instance.validate_edge_ids(edge_subset)?;
    let unsafe_ids: Vec<EdgeId> = ids
        .iter()
        .copied()
        .filter(|&e| !instance.edge(e).safety.is_safe())
        .collect();
    let mut removed = vec![false; instance.m()];
    fn recurse(
        instance: &FgcInstance,
        ids: &[EdgeId],
        unsafe_ids: &[EdgeId],
        removed: &mut [bool],
        start: usize,
        budget: usize,
    ) -> bool {
        if !connected_unchecked(instance, ids.iter().copied().filter(|&e| !removed[e])) {
            return false;
        }
        if budget == 0 {
            return true;
        }
        (start..unsafe_ids.len()).all(|i| {
            removed[unsafe_ids[i]] = true;
            let ok = recurse(instance, ids, unsafe_ids, removed, i + 1, budget - 1);
            removed[unsafe_ids[i]] = false;
            ok
        })
    }
    Ok(recurse(instance, &ids, &unsafe_ids, &mut removed, 0, instance.k()))
}

/// Minimum-cost feasible edge set by best-first subset enumeration.
///
/// Edges are sorted by cost; the search tree generates every subset once in
/// nondecreasing cost order, so the first feasible subset popped is optimal.
/// A node is dropped when even its largest descendant is infeasible.
pub fn exact_opt(instance: &FgcInstance) -> Result<ExactResult> {
    let m = instance.m();
    if m > MAX_EXACT_EDGES {
        return Err(Error::RefusedScale(format!(
            "{m} edges exceeds the exact limit of {MAX_EXACT_EDGES}"
        )));
    }
    if let Some(witness) = violated_cut(instance, &instance.all_edge_ids())? {
        return Err(Error::Infeasible { witness });
    }
    let n = instance.n();
    let mut order: Vec<EdgeId> = instance.all_edge_ids();
    order.sort_by_key(|&e| (instance.edge(e).cost, e));
    let cost: Vec<Cost> = order.iter().map(|&e| instance.edge(e).cost).collect();
    let ends: Vec<(u32, bool)> = order
        .iter()
        .map(|&e| {
            let edge = instance.edge(e);
            (pair_mask(n, edge.u, edge.v), edge.safety.is_safe())
        })
        .collect();
    let to_ids = |mask: u32| -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| order[i]).collect();
        ids.sort_unstable();
        ids
    };
    let feasible = |mask: u32| -> bool {
        if n <= MAX_CUT_ENUMERATION_VERTICES {
            let chosen: Vec<_> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| ends[i]).collect();
            every_cut_covered(n, instance.k(), &chosen)
        } else {
            is_feasible_solution(instance, &to_ids(mask)).expect("valid IDs")
        }
    };

    let mut examined = 1;
    if feasible(0) {
        return Ok(ExactResult { edges: Vec::new(), cost: 0, examined });
    }
    let full_from = |i: usize| -> u32 { ((1u64 << m) - (1u64 << i)) as u32 };
    let mut heap = BinaryHeap::from([Reverse((cost[0], 1u32, 0usize))]);
    while let Some(Reverse((c, mask, last))) = heap.pop() {
        let below = mask & !(1u32 << last);
        if !feasible(below | full_from(last)) {
            continue;
        }
        examined += 1;
        if feasible(mask) {
            return Ok(ExactResult { edges: to_ids(mask), cost: c, examined });
        }
        if last + 1 < m {
            let next = last + 1;
            heap.push(Reverse((c + cost[next], mask | 1 << next, next)));
            heap.push(Reverse((c - cost[last] + cost[next], below | 1 << next, next)));
        }
    }
    Err(Error::SolverBug("feasible instance but no feasible subset found".into()))
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Minimum cost over all arc subsets of size `k(n - 1)` in which every
/// vertex set avoiding the root has at least `k` entering arcs.
pub fn exact_k_arborescence<W: Weight>(digraph: &Digraph<W>, root: VertexId, k: usize) -> Result<W> {
    let n = digraph.n();
    if root >= n || k == 0 {
        return Err(Error::InvalidInput("bad root or k".into()));
    }
    if n == 1 {
        return Ok(W::zero());
    }
    let size = k * (n - 1);
    let arcs = digraph.len();
    if n > MAX_CUT_ENUMERATION_VERTICES || binomial(arcs as u128, size as u128) > MAX_ARC_SUBSETS {
        return Err(Error::RefusedScale(format!(
            "C({arcs}, {size}) arc subsets on {n} vertices"
        )));
    }
    if size > arcs {
        return Err(Error::NoKArborescence { k });
    }
    let heads: Vec<u32> = digraph.arcs().iter().map(|a| 1 << a.head).collect();
    let tails: Vec<u32> = digraph.arcs().iter().map(|a| 1 << a.tail).collect();
    let others: Vec<u32> = (1u32..1 << n).filter(|s| s >> root & 1 == 0).collect();

    let mut best: Option<W> = None;
    let mut pick: Vec<usize> = (0..size).collect();
    loop {
        let ok = others.iter().all(|&s| {
            pick.iter()
                .filter(|&&a| heads[a] & s != 0 && tails[a] & s == 0)
                .count()
                >= k
        });
        if ok {
            let c: W = pick.iter().map(|&a| digraph.arc(a).cost).sum();
            if best.is_none_or(|b| c < b) {
                best = Some(c);
            }
        }
        // next combination
        let Some(i) = (0..size).rev().find(|&i| pick[i] < arcs - size + i) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..size {
            pick[j] = pick[j - 1] + 1;
        }
    }
    best.ok_or(Error::NoKArborescence { k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Safety::{Safe, Unsafe};

    #[test]
    fn exact_opt_examples() {
        let inst = FgcInstance::new(2, 1, [(0, 1, 10, Safe), (0, 1, 1, Unsafe), (0, 1, 1, Unsafe)]).unwrap();
        let r = exact_opt(&inst).unwrap();
        assert_eq!((r.edges, r.cost), (vec![1, 2], 2));

        let star = FgcInstance::new(4, 3, [(0, 1, 2, Safe), (0, 2, 3, Safe), (0, 3, 4, Safe)]).unwrap();
        let r = exact_opt(&star).unwrap();
        assert_eq!((r.edges, r.cost), (vec![0, 1, 2], 9));

        let tri = FgcInstance::new(3, 1, [(0, 1, 1, Unsafe), (1, 2, 1, Unsafe), (0, 2, 1, Unsafe)]).unwrap();
        assert_eq!(exact_opt(&tri).unwrap().cost, 3);

        let path = FgcInstance::new(3, 1, [(0, 1, 1, Unsafe), (1, 2, 1, Unsafe)]).unwrap();
        assert!(matches!(exact_opt(&path), Err(Error::Infeasible { .. })));

        let big = FgcInstance::new(2, 1, vec![(0, 1, 1, Safe); 25]).unwrap();
        assert!(matches!(exact_opt(&big), Err(Error::RefusedScale(_))));
    }

    #[test]
    fn zero_cost_and_trivial_instances() {
        let single = FgcInstance::new(1, 1, []).unwrap();
        assert_eq!(exact_opt(&single).unwrap().cost, 0);
        let free = FgcInstance::new(2, 1, [(0, 1, 0, Safe), (0, 1, 5, Safe)]).unwrap();
        assert_eq!(exact_opt(&free).unwrap().edges, vec![0]);
    }

    #[test]
    fn removal_check_examples() {
        let tri = FgcInstance::new(3, 1, [(0, 1, 1, Unsafe), (1, 2, 1, Unsafe), (0, 2, 1, Unsafe)]).unwrap();
        assert!(is_feasible_by_removal(&tri, &[0, 1, 2]).unwrap());
        assert!(!is_feasible_by_removal(&tri, &[0, 1]).unwrap());
        assert!(!is_feasible_by_removal(&tri.with_k(2).unwrap(), &[0, 1, 2]).unwrap());
    }

    #[test]
    fn exact_arborescence_examples() {
        let parallel = Digraph::from_arcs(2, [(0, 1, 1i64), (0, 1, 2), (0, 1, 5)]).unwrap();
        assert_eq!(exact_k_arborescence(&parallel, 0, 2).unwrap(), 3);
        let single = Digraph::from_arcs(2, [(0, 1, 1i64)]).unwrap();
        assert_eq!(exact_k_arborescence(&single, 0, 2).unwrap_err(), Error::NoKArborescence { k: 2 });
        let backwards = Digraph::from_arcs(2, [(1, 0, 1i64)]).unwrap();
        assert_eq!(exact_k_arborescence(&backwards, 0, 1).unwrap_err(), Error::NoKArborescence { k: 1 });
        let d = Digraph::from_arcs(3, [(0, 1, 10i64), (0, 2, 10), (1, 2, 1), (2, 1, 1)]).unwrap();
        assert_eq!(exact_k_arborescence(&d, 0, 1).unwrap(), 11);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
