use crate::{ArcId, VertexId, Weight};

/// Chu–Liu/Edmonds on `(tail, head, cost)` triples. Returns the indices of a
/// minimum-cost spanning arborescence rooted at `root`, or `None` if some
/// vertex is unreachable. Ties go to the smaller index.
pub(crate) fn chu_liu_edmonds<W: Weight>(
    n: usize,
    root: VertexId,
    arcs: &[(VertexId, VertexId, W)],
) -> Option<Vec<ArcId>> {
    let mut best_in: Vec<Option<usize>> = vec![None; n];
    for (i, &(t, h, w)) in arcs.iter().enumerate() {
        if h == root || t == h {
            continue;
        }
        match best_in[h] {
            Some(j) if arcs[j].2 <= w => {}
            _ => best_in[h] = Some(i),
        }
    }
    if (0..n).any(|v| v != root && best_in[v].is_none()) {
        return None;
    }
    let tail_of = |v: VertexId| arcs[best_in[v].expect("checked above")].0;

    const NONE: usize = usize::MAX;
    let mut comp = vec![NONE; n];
    let mut visit = vec![NONE; n];
    let mut cycles: Vec<Vec<VertexId>> = Vec::new();
    for start in 0..n {
        let mut u = start;
        while u != root && visit[u] == NONE && comp[u] == NONE {
            visit[u] = start;
            u = tail_of(u);
        }
        if u != root && visit[u] == start && comp[u] == NONE {
            let mut cycle = vec![u];
            comp[u] = cycles.len();
            let mut w = tail_of(u);
            while w != u {
                comp[w] = cycles.len();
                cycle.push(w);
                w = tail_of(w);
            }
            cycles.push(cycle);
        }
    }
    if cycles.is_empty() {
        return Some(best_in.into_iter().flatten().collect());
    }

    let mut count = cycles.len();
    for c in comp.iter_mut() {
        if *c == NONE {
            *c = count;
            count += 1;
        }
    }
    let in_cycle = |v: VertexId| comp[v] < cycles.len();

    let mut origin = Vec::new();
    let mut contracted = Vec::new();
    for (i, &(t, h, w)) in arcs.iter().enumerate() {
        if comp[t] == comp[h] {
            continue;
        }
        let reduced = if in_cycle(h) {
            w - arcs[best_in[h].expect("non-root")].2
        } else {
            w
        };
        contracted.push((comp[t], comp[h], reduced));
        origin.push(i);
    }

    let inner = chu_liu_edmonds(count, comp[root], &contracted)?;
    let mut chosen: Vec<ArcId> = inner.iter().map(|&j| origin[j]).collect();
    let mut entered = vec![NONE; cycles.len()];
    for &a in &chosen {
        let h = arcs[a].1;
        if in_cycle(h) {
            entered[comp[h]] = h;
        }
    }
    for (c, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            if v != entered[c] {
                chosen.push(best_in[v].expect("non-root"));
            }
        }
    }
    chosen.sort_unstable();
    Some(chosen)
}
