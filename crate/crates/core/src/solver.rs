//! The `(k + 1)`-approximation pipeline.
//!
//! 1. Reject infeasible instances (capacitated min-cut below `k + 1`).
//! 2. Orient the instance: one bidirected pair per unsafe edge, `k + 1` per
//!    safe edge, arcs priced like their edges.
//! 3. Take a minimum-cost r-out `(k + 1)`-arborescence `T`.
//! 4. Return every edge that contributed an arc to `T`.
//!
//! Any feasible `F` yields a `(k + 1)`-arborescence of cost at most
//! `2 c(F ∩ U) + (k + 1) c(F ∩ S)` inside the oriented graph, so `c(T)` and
//! hence the output cost are within `k + 1` of the optimum.

use serde::Serialize;

use crate::arborescence::min_cost_k_arborescence;
use crate::error::{invalid, Error, Result};
use crate::exact::ExactResult;
use crate::feasibility::{is_feasible_solution, violated_cut};
use crate::graph::FgcInstance;
use crate::reduction::{build_digraph, map_back};
use crate::{ArcId, Cost, EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgcSolution {
    pub edges: Vec<EdgeId>,
    pub cost: Cost,
    pub root: VertexId,
    pub k: usize,
    /// Proven bound on `cost / OPT`, always `k + 1`.
    pub guarantee_factor: usize,
    pub arborescence_cost: Cost,
    /// Arcs of the oriented graph forming the arborescence.
    pub arborescence_arcs: Vec<ArcId>,
}

/// Default root when none is given.
pub const DEFAULT_ROOT: VertexId = 0;

/// Runs the pipeline. With `prune`, edges of the result are then scanned by
/// decreasing cost and dropped whenever the rest stays feasible.
pub fn solve(instance: &FgcInstance, root: Option<VertexId>, prune: bool) -> Result<FgcSolution> {
    let root = root.unwrap_or(DEFAULT_ROOT);
    let n = instance.n();
    if root >= n {
        return Err(invalid(format!("root {root} out of range 0..{n}")));
    }
    let k = instance.k();
    if let Some(witness) = violated_cut(instance, &instance.all_edge_ids())? {
        return Err(Error::Infeasible { witness });
    }

    let digraph = build_digraph(instance, k)?;
    let (arborescence, _certificate) = min_cost_k_arborescence(&digraph, root, k + 1)?;
    let mut edges = map_back(&arborescence.arcset)?;

    if !is_feasible_solution(instance, &edges)? {
        return Err(Error::SolverBug("mapped-back edge set is infeasible".into()));
    }
    if prune {
        edges = reverse_delete(instance, edges)?;
    }
    let cost = instance.cost_of(&edges);
    Ok(FgcSolution {
        cost,
        edges,
        root,
        k,
        guarantee_factor: k + 1,
        arborescence_cost: arborescence.total_cost,
        arborescence_arcs: arborescence.arcset.ids(),
    })
}

fn reverse_delete(instance: &FgcInstance, mut edges: Vec<EdgeId>) -> Result<Vec<EdgeId>> {
    let mut order = edges.clone();
    order.sort_by_key(|&e| (std::cmp::Reverse(instance.edge(e).cost), e));
    for e in order {
        let trial: Vec<EdgeId> = edges.iter().copied().filter(|&f| f != e).collect();
        if is_feasible_solution(instance, &trial)? {
            edges = trial;
        }
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// `cost / OPT` when an optimum was supplied (`1` when both are zero).
    pub ratio: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn ratio(cost: Cost, opt: Cost) -> f64 {
    if opt == 0 {
        if cost == 0 { 1.0 } else { f64::INFINITY }
    } else {
        cost as f64 / opt as f64
    }
}

/// Re-checks a solution: feasibility, its recorded cost, `c(F) <= c(T)`,
/// and, given the optimum, the ratio bound and `c(T)` against the optimum's
/// arborescence bound.
pub fn verify_solution(
    instance: &FgcInstance,
    solution: &FgcSolution,
    optimum: Option<&ExactResult>,
) -> VerificationReport {
    let mut checks = Vec::new();
    let feasible = match violated_cut(instance, &solution.edges) {
        Ok(None) => Check { name: "feasible", passed: true, detail: "every cut covered".into() },
        Ok(Some(side)) => Check { name: "feasible", passed: false, detail: format!("violated cut {side:?}") },
        Err(e) => Check { name: "feasible", passed: false, detail: e.to_string() },
    };
    checks.push(feasible);

    let actual = solution
        .edges
        .iter()
        .all(|&e| e < instance.m())
        .then(|| instance.cost_of(&solution.edges));
    checks.push(Check {
        name: "cost",
        passed: actual == Some(solution.cost),
        detail: format!("recorded {} recomputed {:?}", solution.cost, actual),
    });
    checks.push(Check {
        name: "cost_within_arborescence",
        passed: solution.cost <= solution.arborescence_cost,
        detail: format!("c(F) = {} c(T) = {}", solution.cost, solution.arborescence_cost),
    });

    let mut ratio_value = None;
    if let Some(opt) = optimum {
        let r = ratio(solution.cost, opt.cost);
        ratio_value = Some(r);
        let factor = (instance.k() + 1) as Cost;
        checks.push(Check {
            name: "ratio",
            passed: solution.cost <= factor * opt.cost,
            detail: format!("{} / {} = {r:.4} (bound {factor})", solution.cost, opt.cost),
        });
        let bound = instance.arborescence_cost_bound(&opt.edges);
        checks.push(Check {
            name: "arborescence_bound",
            passed: solution.arborescence_cost <= bound,
            detail: format!("c(T) = {} bound {bound}", solution.arborescence_cost),
        });
    }
    VerificationReport { checks, ratio: ratio_value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_opt;
    use crate::graph::Safety::{Safe, Unsafe};

    fn triangle(s: crate::Safety) -> FgcInstance {
        FgcInstance::new(3, 1, [(0, 1, 1, s), (1, 2, 1, s), (0, 2, 1, s)]).unwrap()
    }

    #[test]
    fn safe_triangle_gives_spanning_tree() {
        let inst = triangle(Safe);
        let sol = solve(&inst, None, false).unwrap();
        assert_eq!(sol.edges.len(), 2);
        assert_eq!(sol.cost, 2);
        assert_eq!(sol.arborescence_cost, 4);
        assert_eq!(exact_opt(&inst).unwrap().cost, 2);
    }

    #[test]
    fn unsafe_triangle_takes_everything() {
        let inst = triangle(Unsafe);
        let sol = solve(&inst, None, false).unwrap();
        assert_eq!(sol.edges, vec![0, 1, 2]);
        assert_eq!(sol.cost, 3);
        let opt = exact_opt(&inst).unwrap();
        let report = verify_solution(&inst, &sol, Some(&opt));
        assert!(report.passed());
        assert_eq!(report.ratio, Some(1.0));
    }

    #[test]
    fn infeasible_path() {
        let inst = FgcInstance::new(3, 1, [(0, 1, 1, Unsafe), (1, 2, 1, Unsafe)]).unwrap();
        assert!(matches!(solve(&inst, None, false), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn bad_root() {
        assert!(matches!(solve(&triangle(Safe), Some(3), false), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn single_vertex() {
        let inst = FgcInstance::new(1, 2, []).unwrap();
        let sol = solve(&inst, None, true).unwrap();
        assert!(sol.edges.is_empty());
        assert_eq!(sol.cost, 0);
    }

    #[test]
    fn verification_flags_infeasible_sets() {
        let inst = triangle(Unsafe);
        let mut sol = solve(&inst, None, false).unwrap();
        sol.edges = vec![0, 1];
        sol.cost = 2;
        let report = verify_solution(&inst, &sol, None);
        assert!(!report.check("feasible").unwrap().passed);
        assert!(report.check("cost").unwrap().passed);
    }

    #[test]
    fn pruning_drops_redundant_edges() {
        // The arborescence may use a cheap unsafe pair and a safe edge that
        // together over-cover the single cut.
        let inst = FgcInstance::new(2, 1, [(0, 1, 3, Safe), (0, 1, 1, Unsafe), (0, 1, 1, Unsafe)]).unwrap();
        let plain = solve(&inst, None, false).unwrap();
        let pruned = solve(&inst, None, true).unwrap();
        assert!(pruned.cost <= plain.cost);
        assert!(is_feasible_solution(&inst, &pruned.edges).unwrap());
    }
}
