//! Orientation of an instance into the arborescence digraph, and back.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ArcSet, Digraph, FgcInstance};
use crate::{Cost, EdgeId};

/// One bidirected pair per unsafe edge and `k + 1` pairs per safe edge.
///
/// Arcs are emitted edge by edge in ID order; each pair is `(u,v)` then
/// `(v,u)` and the copies of a safe edge are consecutive. Every arc costs
/// what its edge costs.
pub fn build_digraph(instance: &FgcInstance, k: usize) -> Result<Digraph<Cost>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let mut d = Digraph::new(instance.n());
    for edge in instance.edges() {
        let copies = if edge.safety.is_safe() { k + 1 } else { 1 };
        for _ in 0..copies {
            d.add_arc(edge.u, edge.v, edge.cost, Some(edge.id))?;
            d.add_arc(edge.v, edge.u, edge.cost, Some(edge.id))?;
        }
    }
    Ok(d)
}

/// Edges with at least one arc in `arcs`, sorted by ID.
pub fn map_back<W>(arcs: &ArcSet<'_, W>) -> Result<Vec<EdgeId>>
where
    W: crate::Weight,
{
    let mut edges = BTreeSet::new();
    for arc in arcs.arcs() {
        let e = arc.source_edge.ok_or_else(|| {
            Error::ContractViolation(format!("arc {} has no source edge", arc.id))
        })?;
        edges.insert(e);
    }
    Ok(edges.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Safety::{Safe, Unsafe};
    use proptest::prelude::*;

    #[test]
    fn arc_counts() {
        let one_unsafe = FgcInstance::new(2, 2, [(0, 1, 9, Unsafe)]).unwrap();
        let d = build_digraph(&one_unsafe, 2).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.arcs().iter().all(|a| a.cost == 9 && a.source_edge == Some(0)));

        let one_safe = FgcInstance::new(2, 1, [(0, 1, 4, Safe)]).unwrap();
        let d = build_digraph(&one_safe, 1).unwrap();
        assert_eq!(d.len(), 4);
        let ends: Vec<_> = d.arcs().iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(ends, vec![(0, 1), (1, 0), (0, 1), (1, 0)]);

        let mixed = FgcInstance::new(
            4,
            1,
            [(0, 1, 1, Safe), (1, 2, 1, Safe), (2, 3, 1, Safe), (0, 2, 1, Unsafe), (1, 3, 1, Unsafe)],
        )
        .unwrap();
        assert_eq!(build_digraph(&mixed, 1).unwrap().len(), 16);
        assert!(build_digraph(&mixed, 0).is_err());
    }

    #[test]
    fn map_back_examples() {
        let inst = FgcInstance::new(3, 1, [(0, 1, 3, Unsafe), (1, 2, 2, Safe), (0, 2, 5, Safe)]).unwrap();
        let d = build_digraph(&inst, 1).unwrap();
        let pair = ArcSet::new(&d, [0, 1]).unwrap();
        assert_eq!(map_back(&pair).unwrap(), vec![0]);
        assert_eq!(inst.cost_of(&[0]), 3);
        assert_eq!(pair.total_cost(), 6);

        assert!(map_back(&ArcSet::new(&d, []).unwrap()).unwrap().is_empty());

        // arcs 2..6 come from edge 1, 6..10 from edge 2
        let three = ArcSet::new(&d, [2, 4, 7]).unwrap();
        assert_eq!(map_back(&three).unwrap(), vec![1, 2]);

        let bare = Digraph::from_arcs(2, [(0, 1, 1i64)]).unwrap();
        assert!(matches!(
            map_back(&bare.full_set()),
            Err(Error::ContractViolation(_))
        ));
    }

    proptest! {
        #[test]
        fn construction_invariants(
            raw in prop::collection::vec((0usize..5, 0usize..4, 0i64..20, any::<bool>()), 0..12),
            k in 1usize..=3,
            pick in prop::collection::vec(any::<bool>(), 100),
        ) {
            let edges = raw.iter().map(|&(u, d, c, s)| (u, (u + 1 + d) % 5, c, if s { Safe } else { Unsafe }));
            let inst = FgcInstance::new(5, k, edges).unwrap();
            let d = build_digraph(&inst, k).unwrap();
            let safe = inst.edges().iter().filter(|e| e.safety.is_safe()).count();
            prop_assert_eq!(d.len(), 2 * (inst.m() - safe) + 2 * (k + 1) * safe);

            for e in inst.edges() {
                let arcs: Vec<_> = d.arcs().iter().filter(|a| a.source_edge == Some(e.id)).collect();
                let expect = if e.safety.is_safe() { 2 * (k + 1) } else { 2 };
                prop_assert_eq!(arcs.len(), expect);
                let forward = arcs.iter().filter(|a| (a.tail, a.head) == (e.u, e.v)).count();
                prop_assert_eq!(forward * 2, expect);
                prop_assert!(arcs.iter().all(|a| a.cost == e.cost));
            }

            let t = ArcSet::new(&d, (0..d.len()).filter(|&a| pick[a % pick.len()])).unwrap();
            let f = map_back(&t).unwrap();
            prop_assert!(inst.cost_of(&f) <= t.total_cost());
        }
    }
}
