use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::graph::Digraph;
use crate::{VertexId, Weight};

struct Residual<W> {
    to: Vec<VertexId>,
    cap: Vec<W>,
    adj: Vec<Vec<usize>>,
}

impl<W: Weight> Residual<W> {
    fn new(n: usize) -> Self {
        Residual { to: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, u: VertexId, v: VertexId, c: W) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(W::zero());
    }

    fn levels(&self, s: VertexId) -> Vec<Option<usize>> {
        let mut level = vec![None; self.adj.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let next = level[u].map(|l| l + 1);
            for &e in &self.adj[u] {
                let v = self.to[e];
                if level[v].is_none() && self.cap[e] > W::zero() {
                    level[v] = next;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(
        &mut self,
        u: VertexId,
        t: VertexId,
        limit: W,
        level: &[Option<usize>],
        cursor: &mut [usize],
    ) -> W {
        if u == t {
            return limit;
        }
        while cursor[u] < self.adj[u].len() {
            let e = self.adj[u][cursor[u]];
            let v = self.to[e];
            if self.cap[e] > W::zero() && level[v].is_some() && level[v] == level[u].map(|l| l + 1) {
                let sent = self.push(v, t, limit.min(self.cap[e]), level, cursor);
                if sent > W::zero() {
                    self.cap[e] = self.cap[e] - sent;
                    self.cap[e ^ 1] = self.cap[e ^ 1] + sent;
                    return sent;
                }
            }
            cursor[u] += 1;
        }
        W::zero()
    }
}

/// Dinic maximum flow from `s` to `t` with per-arc `capacities`.
///
/// The returned vertex set contains `t`, excludes `s`, and the capacity of
/// the arcs entering it equals the flow value.
pub fn max_flow<W: Weight>(
    digraph: &Digraph<W>,
    s: VertexId,
    t: VertexId,
    capacities: &[W],
) -> Result<(W, Vec<VertexId>)> {
    let n = digraph.n();
    if s >= n || t >= n {
        return Err(invalid(format!("terminal out of range 0..{n}")));
    }
    if s == t {
        return Err(invalid("source and sink coincide"));
    }
    if capacities.len() != digraph.len() {
        return Err(invalid("one capacity per arc required"));
    }
    if capacities.iter().any(|&c| c < W::zero()) {
        return Err(invalid("capacities must be nonnegative"));
    }

    let mut net = Residual::new(n);
    for (arc, &c) in digraph.arcs().iter().zip(capacities) {
        net.add(arc.tail, arc.head, c);
    }
    // Upper bound on any augmenting amount, standing in for infinity.
    let bound = capacities.iter().copied().sum::<W>();

    let mut value = W::zero();
    loop {
        let level = net.levels(s);
        if level[t].is_none() {
            let side = (0..n).filter(|&v| level[v].is_none()).collect();
            return Ok((value, side));
        }
        let mut cursor = vec![0; n];
        loop {
            let sent = net.push(s, t, bound, &level, &mut cursor);
            if sent == W::zero() {
                break;
            }
            value = value + sent;
        }
    }
}

/// Unit-capacity flow from `s` to `t`.
pub(crate) fn arc_connectivity<W: Weight>(digraph: &Digraph<W>, s: VertexId, t: VertexId) -> usize {
    let unit = vec![1i64; digraph.len()];
    let shape = Digraph::from_arcs(
        digraph.n(),
        digraph.arcs().iter().map(|a| (a.tail, a.head, 1i64)),
    )
    .expect("same arcs as a valid digraph");
    max_flow(&shape, s, t, &unit).expect("distinct terminals").0 as usize
}
