//! Minimum-weight common independent sets of two matroids.
//!
//! Primal-dual shortest augmenting paths with a weight splitting
//! `w = w1 + w2`. The current set `X` is always `w1`-minimal in the first
//! matroid and `w2`-minimal in the second among sets of its size, which
//! keeps every exchange-graph length nonnegative and lets each augmentation
//! run Dijkstra. After an augmentation the splitting itself certifies that
//! `X` is a minimum-weight common independent set of its cardinality.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::matroid::{min_weight_independent, Exchange, Matroid};
use crate::error::{invalid, Error, Result};
use crate::Weight;

/// Weight splitting `w = first + second` proving optimality of a common
/// independent set `X`: `X` is a minimum `first`-weight independent set of
/// its size in the first matroid, and likewise for `second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate<W> {
    pub first: Vec<W>,
    pub second: Vec<W>,
    /// `first(X)`, claimed optimal in the first matroid.
    pub first_optimum: W,
    /// `second(X)`, claimed optimal in the second matroid.
    pub second_optimum: W,
}

impl<W: Weight> DualCertificate<W> {
    /// Re-derives both per-matroid optima by greedy and checks them against
    /// `set`. Any common independent set `Y` with `|Y| = |X|` then satisfies
    /// `w(Y) = first(Y) + second(Y) >= first(X) + second(X) = w(X)`.
    pub fn verify<M1: Matroid, M2: Matroid>(
        &self,
        first: &M1,
        second: &M2,
        weights: &[W],
        set: &[usize],
    ) -> Result<(), String> {
        if self.first.len() != weights.len() || self.second.len() != weights.len() {
            return Err("splitting has the wrong length".into());
        }
        if let Some(e) = (0..weights.len()).find(|&e| self.first[e] + self.second[e] != weights[e]) {
            return Err(format!("splitting does not sum to the weight of element {e}"));
        }
        if !first.is_independent(set) || !second.is_independent(set) {
            return Err("set is not common independent".into());
        }
        let check = |name: &str, split: &[W], claimed: W, opt: Option<Vec<usize>>| {
            let held: W = set.iter().map(|&e| split[e]).sum();
            if held != claimed {
                return Err(format!("{name} matroid: claimed optimum {claimed:?} but set has {held:?}"));
            }
            let opt = opt.ok_or_else(|| format!("{name} matroid: rank below {}", set.len()))?;
            let best: W = opt.iter().map(|&e| split[e]).sum();
            if best != held {
                return Err(format!("{name} matroid: greedy optimum {best:?} beats {held:?}"));
            }
            Ok(())
        };
        check("first", &self.first, self.first_optimum, min_weight_independent(first, &self.first, set.len()))?;
        check("second", &self.second, self.second_optimum, min_weight_independent(second, &self.second, set.len()))
    }
}

const SOURCE: usize = usize::MAX;

/// Minimum-weight common independent set with exactly `target_size`
/// elements. Among equal-weight augmenting paths the one with fewest
/// exchanges, then smallest element IDs, is taken.
pub fn weighted_matroid_intersection<W: Weight, M1: Matroid, M2: Matroid>(
    first: &M1,
    second: &M2,
    weights: &[W],
    target_size: usize,
) -> Result<(Vec<usize>, DualCertificate<W>)> {
    let ground = weights.len();
    if first.ground_size() != ground || second.ground_size() != ground {
        return Err(invalid("matroids and weights disagree on the ground set"));
    }
    let mut view1 = first.exchange_view();
    let mut view2 = second.exchange_view();
    let mut in_set = vec![false; ground];
    let mut w1 = weights.to_vec();
    let mut w2 = vec![W::zero(); ground];

    let sink = ground;
    let mut free1 = vec![false; ground];
    let mut free2 = vec![false; ground];
    let mut swaps2: Vec<Vec<usize>> = vec![Vec::new(); ground];
    let mut reverse1: Vec<Vec<usize>> = vec![Vec::new(); ground];

    let mut size = 0;
    while size < target_size {
        let members: Vec<usize> = view1.members().to_vec();
        for list in reverse1.iter_mut() {
            list.clear();
        }
        let mut free1_list = Vec::new();
        for y in (0..ground).filter(|&y| !in_set[y]) {
            match view1.exchange(y) {
                Exchange::Free => {
                    free1[y] = true;
                    free1_list.push(y);
                }
                Exchange::Swaps(xs) => {
                    free1[y] = false;
                    for x in xs {
                        reverse1[x].push(y);
                    }
                }
            }
            match view2.exchange(y) {
                Exchange::Free => {
                    free2[y] = true;
                    swaps2[y].clear();
                }
                Exchange::Swaps(xs) => {
                    free2[y] = false;
                    swaps2[y] = xs;
                }
            }
        }
        let outside = |y: &usize| !in_set[*y];
        let mu1 = (0..ground).filter(outside).filter(|&y| free1[y]).map(|y| w1[y]).min();
        let mu2 = (0..ground).filter(outside).filter(|&y| free2[y]).map(|y| w2[y]).min();
        let (Some(mu1), Some(mu2)) = (mu1, mu2) else {
            return Err(Error::CardinalityUnreachable { target: target_size, reached: size });
        };

        // Dijkstra over elements plus a sink, lexicographic in (length, hops).
        let mut dist: Vec<Option<(W, usize)>> = vec![None; ground + 1];
        let mut prev = vec![SOURCE; ground + 1];
        let mut done = vec![false; ground + 1];
        let mut heap = BinaryHeap::new();
        let mut relax = |dist: &mut Vec<Option<(W, usize)>>,
                         heap: &mut BinaryHeap<Reverse<(W, usize, usize)>>,
                         from: usize,
                         to: usize,
                         base: (W, usize),
                         len: W|
         -> Result<()> {
            if len < W::zero() {
                return Err(Error::SolverBug(format!(
                    "negative exchange length {len:?} on {from}->{to}"
                )));
            }
            let cand = (base.0 + len, base.1 + 1);
            if dist[to].is_none_or(|d| cand < d) {
                dist[to] = Some(cand);
                prev[to] = from;
                heap.push(Reverse((cand.0, cand.1, to)));
            }
            Ok(())
        };
        for &y in &free1_list {
            relax(&mut dist, &mut heap, SOURCE, y, (W::zero(), 0), w1[y] - mu1)?;
        }
        while let Some(Reverse((d, h, u))) = heap.pop() {
            if done[u] || dist[u] != Some((d, h)) {
                continue;
            }
            done[u] = true;
            if u == sink {
                break;
            }
            let base = (d, h);
            if in_set[u] {
                // first-matroid exchanges: X - u + y independent
                for &y in free1_list.iter().chain(&reverse1[u]) {
                    if !done[y] {
                        relax(&mut dist, &mut heap, u, y, base, w1[y] - w1[u])?;
                    }
                }
            } else if free2[u] {
                relax(&mut dist, &mut heap, u, sink, base, w2[u] - mu2)?;
                for &x in &members {
                    if !done[x] {
                        relax(&mut dist, &mut heap, u, x, base, w2[u] - w2[x])?;
                    }
                }
            } else {
                for &x in &swaps2[u] {
                    if !done[x] {
                        relax(&mut dist, &mut heap, u, x, base, w2[u] - w2[x])?;
                    }
                }
            }
        }
        let Some((reach, _)) = dist[sink].filter(|_| done[sink]) else {
            return Err(Error::CardinalityUnreachable { target: target_size, reached: size });
        };

        for v in 0..ground {
            let shift = match dist[v] {
                Some((d, _)) if done[v] => d.min(reach),
                _ => reach,
            };
            w1[v] = w1[v] - shift;
            w2[v] = w2[v] + shift;
        }

        let mut added = Vec::new();
        let mut removed = Vec::new();
        let mut v = prev[sink];
        while v != SOURCE {
            if in_set[v] {
                removed.push(v);
            } else {
                added.push(v);
            }
            in_set[v] = !in_set[v];
            v = prev[v];
        }
        if !view1.update(&removed, &added) || !view2.update(&removed, &added) {
            return Err(Error::SolverBug("augmentation produced a dependent set".into()));
        }
        size += 1;
    }

    let mut set: Vec<usize> = (0..ground).filter(|&e| in_set[e]).collect();
    set.sort_unstable();
    let certificate = DualCertificate {
        first_optimum: set.iter().map(|&e| w1[e]).sum(),
        second_optimum: set.iter().map(|&e| w2[e]).sum(),
        first: w1,
        second: w2,
    };
    Ok((set, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arborescence::matroid::{GraphicUnion, InDegreePartition};
    use proptest::prelude::*;

    /// Uniform matroid: any set of at most `rank` elements.
    struct Uniform {
        ground: usize,
        rank: usize,
    }

    impl Matroid for Uniform {
        fn ground_size(&self) -> usize {
            self.ground
        }
        fn is_independent(&self, elements: &[usize]) -> bool {
            elements.len() <= self.rank
        }
    }

    fn brute<W: Weight, A: Matroid, B: Matroid>(a: &A, b: &B, w: &[W], size: usize) -> Option<W> {
        let n = w.len();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| (0..n).filter(|&e| m >> e & 1 == 1).collect::<Vec<_>>())
            .filter(|s| a.is_independent(s) && b.is_independent(s))
            .map(|s| s.iter().map(|&e| w[e]).sum())
            .min()
    }

    #[test]
    fn cheapest_pair_in_uniform_matroids() {
        let u = Uniform { ground: 3, rank: 2 };
        let w = [3i64, 1, 2];
        let (set, cert) = weighted_matroid_intersection(&u, &u, &w, 2).unwrap();
        assert_eq!(set, vec![1, 2]);
        assert_eq!(set.iter().map(|&e| w[e]).sum::<i64>(), 3);
        cert.verify(&u, &u, &w, &set).unwrap();
    }

    #[test]
    fn empty_target() {
        let u = Uniform { ground: 3, rank: 2 };
        let (set, cert) = weighted_matroid_intersection(&u, &u, &[3i64, 1, 2], 0).unwrap();
        assert!(set.is_empty());
        assert_eq!(cert.first_optimum + cert.second_optimum, 0);
    }

    #[test]
    fn unreachable_cardinality() {
        let u = Uniform { ground: 3, rank: 2 };
        let err = weighted_matroid_intersection(&u, &u, &[1i64, 1, 1], 3).unwrap_err();
        assert_eq!(err, Error::CardinalityUnreachable { target: 3, reached: 2 });
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let u = Uniform { ground: 3, rank: 2 };
        let w = [3i64, 1, 2];
        let (_, cert) = weighted_matroid_intersection(&u, &u, &w, 2).unwrap();
        assert!(cert.verify(&u, &u, &w, &[0, 1]).is_err());
        let mut bad = cert.clone();
        bad.first[0] += 1;
        assert!(bad.verify(&u, &u, &w, &[1, 2]).is_err());
    }

    #[test]
    fn rational_weights() {
        use num_rational::Rational64;
        let u = Uniform { ground: 4, rank: 2 };
        let p = InDegreePartition::new(vec![0, 0, 1, 1], vec![1, 1]);
        let w = [
            Rational64::new(1, 3),
            Rational64::new(1, 4),
            Rational64::new(1, 2),
            Rational64::new(2, 3),
        ];
        let (set, cert) = weighted_matroid_intersection(&u, &p, &w, 2).unwrap();
        assert_eq!(set, vec![1, 2]);
        cert.verify(&u, &p, &w, &set).unwrap();
    }

    proptest! {
        #[test]
        fn partition_times_uniform_matches_enumeration(
            classes in prop::collection::vec(0usize..4, 1..=12),
            caps in prop::collection::vec(0usize..3, 4),
            rank in 0usize..6,
            w in prop::collection::vec(-5i64..10, 12),
        ) {
            let ground = classes.len();
            let w = &w[..ground];
            let p = InDegreePartition::new(classes, caps);
            let u = Uniform { ground, rank };
            for size in 0..=rank {
                match (weighted_matroid_intersection(&p, &u, w, size), brute(&p, &u, w, size)) {
                    (Ok((set, cert)), Some(best)) => {
                        prop_assert_eq!(set.iter().map(|&e| w[e]).sum::<i64>(), best);
                        prop_assert!(cert.verify(&p, &u, w, &set).is_ok());
                    }
                    (Err(Error::CardinalityUnreachable { .. }), None) => {}
                    (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
                }
            }
        }

        #[test]
        fn graphic_times_partition_matches_enumeration(
            raw in prop::collection::vec((0usize..5, 1usize..5, 0i64..9), 1..=11),
            k in 1usize..=2,
        ) {
            let ends: Vec<_> = raw.iter().map(|&(u, d, _)| (u, (u + d) % 5)).collect();
            let w: Vec<i64> = raw.iter().map(|r| r.2).collect();
            let g = GraphicUnion::new(5, ends.clone(), k);
            let p = InDegreePartition::in_degree(5, ends.iter().map(|e| e.1), 0, k);
            for size in 0..=ends.len().min(4 * k) {
                match (weighted_matroid_intersection(&g, &p, &w, size), brute(&g, &p, &w, size)) {
                    (Ok((set, cert)), Some(best)) => {
                        prop_assert_eq!(set.iter().map(|&e| w[e]).sum::<i64>(), best);
                        prop_assert!(cert.verify(&g, &p, &w, &set).is_ok());
                    }
                    (Err(Error::CardinalityUnreachable { .. }), None) => {}
                    (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
                }
            }
        }
    }
}
