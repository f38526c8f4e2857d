//! Matroid oracles used by the intersection engine.
//!
//! Every matroid answers plain independence queries. The intersection engine
//! works through an [`ExchangeView`] instead: an independent set that is
//! edited in place and reports, for an outside element `y`, whether `X + y`
//! stays independent and otherwise which `x` make `X - x + y` independent.
//! The default view derives this from `is_independent`; the two matroids in
//! this module keep incremental state so each query is near-linear.

use crate::{VertexId, Weight};

/// Outcome of offering an element to an independent set `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exchange {
    /// `X + y` is independent.
    Free,
    /// `X + y` is dependent; these members `x` make `X - x + y` independent.
    Swaps(Vec<usize>),
}

pub trait ExchangeView {
    fn members(&self) -> &[usize];
    fn exchange(&mut self, y: usize) -> Exchange;
    /// Replaces `removed` by `added`. Returns `false` (leaving the view in an
    /// unspecified state) if the result is dependent.
    fn update(&mut self, removed: &[usize], added: &[usize]) -> bool;
}

pub trait Matroid {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, elements: &[usize]) -> bool;

    /// A view holding the empty set.
    fn exchange_view(&self) -> Box<dyn ExchangeView + '_>
    where
        Self: Sized,
    {
        Box::new(OracleView { matroid: self, members: Vec::new() })
    }
}

/// Exchange view answered purely by independence queries.
pub struct OracleView<'m, M> {
    matroid: &'m M,
    members: Vec<usize>,
}

impl<M: Matroid> ExchangeView for OracleView<'_, M> {
    fn members(&self) -> &[usize] {
        &self.members
    }

    fn exchange(&mut self, y: usize) -> Exchange {
        let mut trial = self.members.clone();
        trial.push(y);
        if self.matroid.is_independent(&trial) {
            return Exchange::Free;
        }
        let last = trial.len() - 1;
        let swaps = (0..last)
            .filter(|&i| {
                let mut t = trial.clone();
                t.swap_remove(i);
                self.matroid.is_independent(&t)
            })
            .map(|i| self.members[i])
            .collect();
        Exchange::Swaps(swaps)
    }

    fn update(&mut self, removed: &[usize], added: &[usize]) -> bool {
        self.members.retain(|x| !removed.contains(x));
        self.members.extend_from_slice(added);
        self.matroid.is_independent(&self.members)
    }
}

/// Minimum-weight independent set with exactly `size` elements, by greedy
/// over `(weight, id)` order. `None` if the rank is below `size`.
pub fn min_weight_independent<W: Weight, M: Matroid>(
    matroid: &M,
    weights: &[W],
    size: usize,
) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..matroid.ground_size()).collect();
    order.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
    let mut view = matroid.exchange_view();
    for y in order {
        if view.members().len() == size {
            break;
        }
        if view.exchange(y) == Exchange::Free && !view.update(&[], &[y]) {
            return None;
        }
    }
    let mut set = view.members().to_vec();
    set.sort_unstable();
    (set.len() == size).then_some(set)
}

/// Partition matroid: at most `capacity[class[e]]` elements per class.
#[derive(Debug, Clone)]
pub struct InDegreePartition {
    class: Vec<usize>,
    capacity: Vec<usize>,
}

impl InDegreePartition {
    pub fn new(class: Vec<usize>, capacity: Vec<usize>) -> Self {
        assert!(class.iter().all(|&c| c < capacity.len()), "class out of range");
        InDegreePartition { class, capacity }
    }

    /// Arcs grouped by head; capacity `k` everywhere except `0` at the root.
    pub fn in_degree(n: usize, heads: impl IntoIterator<Item = VertexId>, root: VertexId, k: usize) -> Self {
        let capacity = (0..n).map(|v| if v == root { 0 } else { k }).collect();
        Self::new(heads.into_iter().collect(), capacity)
    }
}

impl Matroid for InDegreePartition {
    fn ground_size(&self) -> usize {
        self.class.len()
    }

    fn is_independent(&self, elements: &[usize]) -> bool {
        let mut used = vec![0usize; self.capacity.len()];
        let mut seen = vec![false; self.class.len()];
        for &e in elements {
            if e >= self.class.len() || std::mem::replace(&mut seen[e], true) {
                return false;
            }
            used[self.class[e]] += 1;
        }
        used.iter().zip(&self.capacity).all(|(u, c)| u <= c)
    }

    fn exchange_view(&self) -> Box<dyn ExchangeView + '_> {
        Box::new(PartitionView {
            matroid: self,
            members: Vec::new(),
            by_class: vec![Vec::new(); self.capacity.len()],
        })
    }
}

struct PartitionView<'m> {
    matroid: &'m InDegreePartition,
    members: Vec<usize>,
    by_class: Vec<Vec<usize>>,
}

impl ExchangeView for PartitionView<'_> {
    fn members(&self) -> &[usize] {
        &self.members
    }

    fn exchange(&mut self, y: usize) -> Exchange {
        let c = self.matroid.class[y];
        if self.by_class[c].len() < self.matroid.capacity[c] {
            Exchange::Free
        } else {
            Exchange::Swaps(self.by_class[c].clone())
        }
    }

    fn update(&mut self, removed: &[usize], added: &[usize]) -> bool {
        for &x in removed {
            self.members.retain(|&m| m != x);
            self.by_class[self.matroid.class[x]].retain(|&m| m != x);
        }
        let mut ok = true;
        for &y in added {
            let c = self.matroid.class[y];
            self.members.push(y);
            self.by_class[c].push(y);
            ok &= self.by_class[c].len() <= self.matroid.capacity[c];
        }
        ok
    }
}

/// Union of `k` copies of the graphic matroid: an edge multiset is
/// independent iff it splits into `k` forests.
#[derive(Debug, Clone)]
pub struct GraphicUnion {
    n: usize,
    k: usize,
    ends: Vec<(VertexId, VertexId)>,
}

impl GraphicUnion {
    pub fn new(n: usize, ends: Vec<(VertexId, VertexId)>, k: usize) -> Self {
        assert!(k >= 1, "need at least one forest");
        assert!(ends.iter().all(|&(u, v)| u < n && v < n), "endpoint out of range");
        GraphicUnion { n, k, ends }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Splits `elements` into `k` forests, or `None` if impossible.
    pub fn forest_partition(&self, elements: &[usize]) -> Option<Vec<Vec<usize>>> {
        let mut packing = ForestPacking::new(self);
        for &e in elements {
            if e >= self.ends.len() || packing.forest_of[e] != NONE || !packing.insert(e) {
                return None;
            }
        }
        let mut forests = vec![Vec::new(); self.k];
        for &e in elements {
            forests[packing.forest_of[e]].push(e);
        }
        Some(forests)
    }
}

impl Matroid for GraphicUnion {
    fn ground_size(&self) -> usize {
        self.ends.len()
    }

    fn is_independent(&self, elements: &[usize]) -> bool {
        self.forest_partition(elements).is_some()
    }

    fn exchange_view(&self) -> Box<dyn ExchangeView + '_> {
        Box::new(ForestPacking::new(self))
    }
}

/// Whether the edge multiset splits into `k` forests. Loops never fit.
pub fn forest_union_independent(edge_multiset: &[(VertexId, VertexId)], k: usize) -> bool {
    if edge_multiset.iter().any(|&(u, v)| u == v) {
        return false;
    }
    if k == 0 {
        return edge_multiset.is_empty();
    }
    let n = edge_multiset.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let union = GraphicUnion::new(n, edge_multiset.to_vec(), k);
    union.is_independent(&(0..edge_multiset.len()).collect::<Vec<_>>())
}

const NONE: usize = usize::MAX;

/// A partition of the current independent set into `k` forests, with each
/// forest also kept as a rooted spanning forest (parent, depth, component).
struct ForestPacking<'m> {
    matroid: &'m GraphicUnion,
    members: Vec<usize>,
    forest_of: Vec<usize>,
    adj: Vec<Vec<Vec<(VertexId, usize)>>>,
    rooted: bool,
    parent: Vec<Vec<VertexId>>,
    parent_elem: Vec<Vec<usize>>,
    depth: Vec<Vec<u32>>,
    comp: Vec<Vec<u32>>,
    // scratch
    epoch: u32,
    in_closure: Vec<u32>,
    in_tree: Vec<Vec<u32>>,
    label: Vec<u32>,
    via: Vec<(usize, usize)>,
}

impl<'m> ForestPacking<'m> {
    fn new(matroid: &'m GraphicUnion) -> Self {
        let (n, k, m) = (matroid.n, matroid.k, matroid.ends.len());
        ForestPacking {
            matroid,
            members: Vec::new(),
            forest_of: vec![NONE; m],
            adj: vec![vec![Vec::new(); n]; k],
            rooted: false,
            parent: vec![vec![NONE; n]; k],
            parent_elem: vec![vec![NONE; n]; k],
            depth: vec![vec![0; n]; k],
            comp: vec![vec![0; n]; k],
            epoch: 0,
            in_closure: vec![0; n],
            in_tree: vec![vec![0; n]; k],
            label: vec![0; m],
            via: vec![(NONE, NONE); m],
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch += 1;
        self.epoch
    }

    fn ensure_rooted(&mut self) {
        if self.rooted {
            return;
        }
        let n = self.matroid.n;
        let mut stack = Vec::new();
        for i in 0..self.matroid.k {
            let parent = &mut self.parent[i];
            parent.fill(NONE);
            let mut seen = vec![false; n];
            let mut component = 0;
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                seen[start] = true;
                self.parent_elem[i][start] = NONE;
                self.depth[i][start] = 0;
                self.comp[i][start] = component;
                stack.push(start);
                while let Some(u) = stack.pop() {
                    for &(v, e) in &self.adj[i][u] {
                        if !seen[v] {
                            seen[v] = true;
                            parent[v] = u;
                            self.parent_elem[i][v] = e;
                            self.depth[i][v] = self.depth[i][u] + 1;
                            self.comp[i][v] = component;
                            stack.push(v);
                        }
                    }
                }
                component += 1;
            }
        }
        self.rooted = true;
    }

    fn attach(&mut self, e: usize, forest: usize) {
        let (u, v) = self.matroid.ends[e];
        self.adj[forest][u].push((v, e));
        self.adj[forest][v].push((u, e));
        self.forest_of[e] = forest;
        self.rooted = false;
    }

    fn detach(&mut self, e: usize) {
        let forest = self.forest_of[e];
        let (u, v) = self.matroid.ends[e];
        self.adj[forest][u].retain(|&(_, f)| f != e);
        self.adj[forest][v].retain(|&(_, f)| f != e);
        self.forest_of[e] = NONE;
        self.rooted = false;
    }

    /// Elements on the path between the endpoints of `e` in forest `i`;
    /// `None` if they lie in different trees.
    fn forest_path(&self, i: usize, e: usize, out: &mut Vec<usize>) -> bool {
        let (mut a, mut b) = self.matroid.ends[e];
        if self.comp[i][a] != self.comp[i][b] {
            return false;
        }
        out.clear();
        let depth = &self.depth[i];
        while a != b {
            if depth[a] >= depth[b] {
                out.push(self.parent_elem[i][a]);
                a = self.parent[i][a];
            } else {
                out.push(self.parent_elem[i][b]);
                b = self.parent[i][b];
            }
        }
        true
    }

    /// Matroid-partition augmentation: place `y` into some forest, shifting
    /// members along a shortest exchange path if needed.
    fn insert(&mut self, y: usize) -> bool {
        self.ensure_rooted();
        let k = self.matroid.k;
        let stamp = self.next_epoch();
        self.label[y] = stamp;
        let mut queue = vec![y];
        let mut head = 0;
        let mut path = Vec::new();
        let mut found = None;
        'search: while head < queue.len() {
            let z = queue[head];
            head += 1;
            for i in 0..k {
                if i != self.forest_of[z] {
                    let (a, b) = self.matroid.ends[z];
                    if self.comp[i][a] != self.comp[i][b] {
                        found = Some((z, i));
                        break 'search;
                    }
                }
            }
            for i in 0..k {
                if i == self.forest_of[z] {
                    continue;
                }
                self.forest_path(i, z, &mut path);
                for &w in &path {
                    if self.label[w] != stamp {
                        self.label[w] = stamp;
                        self.via[w] = (z, i);
                        queue.push(w);
                    }
                }
            }
        }
        let Some((mut moving, mut target)) = found else {
            return false;
        };
        loop {
            if self.forest_of[moving] != NONE {
                self.detach(moving);
            }
            self.attach(moving, target);
            if moving == y {
                break;
            }
            let (pred, forest) = self.via[moving];
            moving = pred;
            target = forest;
        }
        self.members.push(y);
        true
    }

    fn remove(&mut self, x: usize) {
        if self.forest_of[x] != NONE {
            self.detach(x);
            self.members.retain(|&m| m != x);
        }
    }

    /// Grows the smallest vertex set containing both ends of `y` on which
    /// every forest is connected. Such a set is tight for the members, so
    /// its forest edges plus `y` form the unique circuit. If the growth runs
    /// into two trees of one forest, no tight set exists and `y` is free.
    #[allow(clippy::needless_range_loop)]
    fn closure(&mut self, y: usize) -> Exchange {
        self.ensure_rooted();
        let k = self.matroid.k;
        let (a, b) = self.matroid.ends[y];
        if (0..k).any(|i| self.comp[i][a] != self.comp[i][b]) {
            return Exchange::Free;
        }
        let stamp = self.next_epoch();
        let mut top = vec![NONE; k];
        let mut queue = vec![a, b];
        self.in_closure[a] = stamp;
        self.in_closure[b] = stamp;
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for i in 0..k {
                if top[i] == NONE {
                    self.in_tree[i][w] = stamp;
                    top[i] = w;
                    continue;
                }
                if self.comp[i][w] != self.comp[i][top[i]] {
                    return Exchange::Free;
                }
                if self.in_tree[i][w] == stamp {
                    continue;
                }
                let mut u = w;
                while self.in_tree[i][u] != stamp && self.depth[i][u] > self.depth[i][top[i]] {
                    self.mark(i, u, stamp, &mut queue);
                    u = self.parent[i][u];
                }
                if self.in_tree[i][u] == stamp {
                    continue;
                }
                let mut t = top[i];
                while self.depth[i][t] > self.depth[i][u] {
                    t = self.parent[i][t];
                    self.mark(i, t, stamp, &mut queue);
                }
                while u != t {
                    self.mark(i, u, stamp, &mut queue);
                    u = self.parent[i][u];
                    t = self.parent[i][t];
                    self.mark(i, t, stamp, &mut queue);
                }
                self.mark(i, u, stamp, &mut queue);
                top[i] = u;
            }
        }
        let mut swaps = Vec::with_capacity(k * queue.len());
        for (i, &t) in top.iter().enumerate() {
            swaps.extend(
                queue
                    .iter()
                    .filter(|&&v| v != t)
                    .map(|&v| self.parent_elem[i][v]),
            );
        }
        Exchange::Swaps(swaps)
    }

    fn mark(&mut self, i: usize, v: VertexId, stamp: u32, queue: &mut Vec<VertexId>) {
        self.in_tree[i][v] = stamp;
        if self.in_closure[v] != stamp {
            self.in_closure[v] = stamp;
            queue.push(v);
        }
    }
}

impl ExchangeView for ForestPacking<'_> {
    fn members(&self) -> &[usize] {
        &self.members
    }

    fn exchange(&mut self, y: usize) -> Exchange {
        self.closure(y)
    }

    fn update(&mut self, removed: &[usize], added: &[usize]) -> bool {
        for &x in removed {
            self.remove(x);
        }
        added.iter().all(|&y| self.forest_of[y] == NONE && self.insert(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        edges.iter().all(|&(u, v)| uf.union(u, v))
    }

    /// Tries every assignment of edges to `k` colours.
    fn brute_partition(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
        let m = edges.len();
        let total = k.pow(m as u32);
        (0..total).any(|mut code| {
            let mut classes = vec![Vec::new(); k];
            for &e in edges {
                classes[code % k].push(e);
                code /= k;
            }
            classes.iter().all(|c| is_forest(n, c))
        })
    }

    #[test]
    fn forest_union_examples() {
        assert!(forest_union_independent(&[(0, 1), (0, 1)], 2));
        assert!(!forest_union_independent(&[(0, 1), (0, 1)], 1));
        assert!(forest_union_independent(&[], 1));
        assert!(forest_union_independent(&[], 4));
        assert!(!forest_union_independent(&[(2, 2)], 3));
        let chord_doubled = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)];
        for k in 1..=3 {
            assert_eq!(
                forest_union_independent(&chord_doubled, k),
                brute_partition(4, &chord_doubled, k)
            );
        }
    }

    #[test]
    fn partition_matroid_exchanges() {
        let m = InDegreePartition::in_degree(3, [1, 1, 2, 0], 0, 1);
        assert!(m.is_independent(&[0, 2]));
        assert!(!m.is_independent(&[0, 1]));
        assert!(!m.is_independent(&[3]));
        let mut view = m.exchange_view();
        assert!(view.update(&[], &[0]));
        assert_eq!(view.exchange(1), Exchange::Swaps(vec![0]));
        assert_eq!(view.exchange(2), Exchange::Free);
        assert_eq!(view.exchange(3), Exchange::Swaps(vec![]));
    }

    #[test]
    fn greedy_min_weight() {
        let m = InDegreePartition::new(vec![0, 0, 0], vec![2]);
        assert_eq!(min_weight_independent(&m, &[3i64, 1, 2], 2), Some(vec![1, 2]));
        assert_eq!(min_weight_independent(&m, &[3i64, 1, 2], 3), None);
    }

    fn small_multigraph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..=5).prop_flat_map(|n| {
            (Just(n), prop::collection::vec((0..n, 1..n), 0..=10))
                .prop_map(|(n, raw)| (n, raw.into_iter().map(|(u, d)| (u, (u + d) % n)).collect()))
        })
    }

    proptest! {
        #[test]
        fn union_oracle_matches_brute_force((n, edges) in small_multigraph(), k in 1usize..=3) {
            prop_assume!(k.pow(edges.len() as u32) <= 200_000);
            prop_assert_eq!(forest_union_independent(&edges, k), brute_partition(n, &edges, k));
        }

        #[test]
        fn packing_view_matches_oracle_view(
            (n, edges) in small_multigraph(),
            k in 1usize..=2,
            order in prop::collection::vec(0usize..10, 0..10),
        ) {
            let union = GraphicUnion::new(n, edges.clone(), k);
            let mut fast = union.exchange_view();
            let mut slow: Box<dyn ExchangeView> = Box::new(OracleView { matroid: &union, members: Vec::new() });
            for pick in order {
                if edges.is_empty() { break; }
                let y = pick % edges.len();
                if fast.members().contains(&y) { continue; }
                let mut a = fast.exchange(y);
                let mut b = slow.exchange(y);
                if let (Exchange::Swaps(x), Exchange::Swaps(z)) = (&mut a, &mut b) {
                    x.sort_unstable();
                    z.sort_unstable();
                }
                prop_assert_eq!(&a, &b);
                match a {
                    Exchange::Free => {
                        prop_assert!(fast.update(&[], &[y]));
                        prop_assert!(slow.update(&[], &[y]));
                    }
                    Exchange::Swaps(xs) => {
                        if let Some(&x) = xs.first() {
                            prop_assert!(fast.update(&[x], &[y]));
                            prop_assert!(slow.update(&[x], &[y]));
                        }
                    }
                }
                let members = fast.members().to_vec();
                let forests = union.forest_partition(&members);
                prop_assert!(forests.is_some());
            }
        }
    }
}
