use fgc_core::exact::is_feasible_by_removal;
use fgc_core::io::{generate, GeneratorConfig};
use fgc_core::{
    build_digraph, exact_k_arborescence, exact_opt, is_feasible_solution, min_cost_arborescence,
    min_cost_k_arborescence, solve, verify_solution, Digraph, Error,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(n: usize, m: usize, k: usize, seed: u64) -> GeneratorConfig {
    GeneratorConfig { n, m, k, safe_probability: 0.3, max_cost: 20, seed, require_feasible: true }
}

#[test]
fn every_root_gives_a_bounded_feasible_answer() {
    for seed in 0..30 {
        let inst = generate(&config(6, 11, 1 + seed as usize % 2, seed)).unwrap();
        let opt = exact_opt(&inst).unwrap();
        for r in 0..inst.n() {
            let sol = solve(&inst, Some(r), false).unwrap();
            assert_eq!(sol.root, r);
            assert!(verify_solution(&inst, &sol, Some(&opt)).passed(), "seed {seed} root {r}");
        }
    }
}

#[test]
fn arborescence_cost_matches_oracle_at_every_root() {
    // arborescence cost may legitimately vary with the root
    for seed in 0..60 {
        let k = 1 + seed as usize % 2;
        let inst = generate(&config(4, 5, k, seed)).unwrap();
        let d = build_digraph(&inst, k).unwrap();
        for r in 0..inst.n() {
            let (t, _) = min_cost_k_arborescence(&d, r, k + 1).unwrap();
            match exact_k_arborescence(&d, r, k + 1) {
                Ok(best) => assert_eq!(t.total_cost, best, "seed {seed} root {r}"),
                Err(Error::RefusedScale(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn pruning_never_costs_more() {
    for seed in 0..40 {
        let inst = generate(&config(7, 12, 1, seed)).unwrap();
        let plain = solve(&inst, None, false).unwrap();
        let pruned = solve(&inst, None, true).unwrap();
        assert!(pruned.cost <= plain.cost);
        assert!(pruned.edges.iter().all(|e| plain.edges.contains(e)));
        assert!(is_feasible_by_removal(&inst, &pruned.edges).unwrap());
    }
}

#[test]
fn intersection_matches_chu_liu_on_larger_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(5..=25);
        let arcs: Vec<_> = (0..rng.gen_range(n..4 * n))
            .map(|_| {
                let t = rng.gen_range(0..n);
                let h = (t + rng.gen_range(1..n)) % n;
                (t, h, rng.gen_range(0..50i64))
            })
            .collect();
        let d = Digraph::from_arcs(n, arcs).unwrap();
        match (min_cost_arborescence(&d, 0), min_cost_k_arborescence(&d, 0, 1)) {
            (Ok(a), Ok((b, _))) => {
                assert_eq!(a.total_cost, b.total_cost);
                assert!(b.verify_invariants().all());
            }
            (Err(a), Err(b)) => assert_eq!(a, b),
            other => panic!("solvers disagree: {other:?}"),
        }
    }
}

#[test]
fn any_feasible_set_costs_at_least_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..40 {
        let inst = generate(&config(6, 10, 1, seed)).unwrap();
        let opt = exact_opt(&inst).unwrap();
        assert!(is_feasible_solution(&inst, &opt.edges).unwrap());
        for _ in 0..20 {
            let f: Vec<usize> = (0..inst.m()).filter(|_| rng.gen_bool(0.8)).collect();
            if is_feasible_solution(&inst, &f).unwrap() {
                assert!(inst.cost_of(&f) >= opt.cost);
            }
        }
    }
}

#[test]
fn oriented_graph_always_has_the_arborescence() {
    for seed in 0..20 {
        let inst = generate(&config(8, 14, 2, seed)).unwrap();
        let d = build_digraph(&inst, inst.k()).unwrap();
        let (t, cert) = min_cost_k_arborescence(&d, 0, inst.k() + 1).unwrap();
        assert_eq!(t.arcset.len(), (inst.k() + 1) * (inst.n() - 1));
        assert!(t.verify_invariants().all());
        assert_eq!(cert.first_optimum + cert.second_optimum, t.total_cost);
    }
}
