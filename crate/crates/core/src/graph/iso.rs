use std::collections::{BTreeMap, VecDeque};

use super::Graph;

/// A graph isomorphism: vertex and edge bijections, indexed by source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphIso {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl GraphIso {
    /// Check incidence and weight preservation.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        if self.vertex_map.len() != g.vertex_count()
            || self.edge_map.len() != g.edge_count()
            || g.vertex_count() != h.vertex_count()
            || g.edge_count() != h.edge_count()
        {
            return false;
        }
        let mut seen_v = vec![false; h.vertex_count()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            if w >= h.vertex_count() || seen_v[w] || g.vertex(v).weight != h.vertex(w).weight {
                return false;
            }
            seen_v[w] = true;
        }
        let mut seen_e = vec![false; h.edge_count()];
        for (e, &f) in self.edge_map.iter().enumerate() {
            if f >= h.edge_count() || seen_e[f] {
                return false;
            }
            seen_e[f] = true;
            let mut a = g.edge(e).ends.map(|v| self.vertex_map[v]);
            let mut b = h.edge(f).ends;
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return false;
            }
        }
        true
    }
}

/// Isomorphism of weighted multigraphs (edge end order ignored).
pub fn graph_isomorphic(g: &Graph, h: &Graph) -> Option<GraphIso> {
    graph_isomorphic_by(g, h, &vec![(); g.edge_count()], &vec![(); h.edge_count()])
}

/// Isomorphism that must also carry each edge label of `g` to an equal label of `h`.
pub fn graph_isomorphic_by<L: Ord + Clone>(g: &Graph, h: &Graph, gl: &[L], hl: &[L]) -> Option<GraphIso> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let gs = Side::new(g, gl);
    let hs = Side::new(h, hl);
    let mut a = gs.invariants.clone();
    let mut b = hs.invariants.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let order = bfs_order(g);
    let mut map = vec![usize::MAX; g.vertex_count()];
    let mut used = vec![false; h.vertex_count()];
    if !extend(&gs, &hs, &order, 0, &mut map, &mut used) {
        return None;
    }
    let mut edge_map = vec![usize::MAX; g.edge_count()];
    for (&(u, v), edges) in &gs.between {
        let (x, y) = (map[u], map[v]);
        let key = (x.min(y), x.max(y));
        let targets = &hs.between[&key];
        let mut src = edges.clone();
        let mut dst = targets.clone();
        src.sort_by(|p, q| p.0.cmp(&q.0).then(p.1.cmp(&q.1)));
        dst.sort_by(|p, q| p.0.cmp(&q.0).then(p.1.cmp(&q.1)));
        for (s, t) in src.iter().zip(&dst) {
            edge_map[s.1] = t.1;
        }
    }
    Some(GraphIso { vertex_map: map, edge_map })
}

struct Side<L> {
    /// Edges between each unordered vertex pair (loops under `(v, v)`), as (label, index).
    between: BTreeMap<(usize, usize), Vec<(L, usize)>>,
    invariants: Vec<(u32, usize, Vec<L>, Vec<L>)>,
}

impl<L: Ord + Clone> Side<L> {
    fn new(g: &Graph, labels: &[L]) -> Self {
        let mut between: BTreeMap<(usize, usize), Vec<(L, usize)>> = BTreeMap::new();
        let mut loops = vec![Vec::new(); g.vertex_count()];
        let mut incident = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            let [a, b] = e.ends;
            between.entry((a.min(b), a.max(b))).or_default().push((labels[i].clone(), i));
            if a == b {
                loops[a].push(labels[i].clone());
            } else {
                incident[a].push(labels[i].clone());
                incident[b].push(labels[i].clone());
            }
        }
        for list in between.values_mut() {
            list.sort_by(|p, q| p.0.cmp(&q.0));
        }
        let invariants = (0..g.vertex_count())
            .map(|v| {
                let mut l = loops[v].clone();
                let mut inc = incident[v].clone();
                l.sort();
                inc.sort();
                (g.vertex(v).weight, g.valence(v), l, inc)
            })
            .collect();
        Side { between, invariants }
    }

    fn labels_between(&self, u: usize, v: usize) -> Vec<L> {
        self.between.get(&(u.min(v), u.max(v))).map(|l| l.iter().map(|p| p.0.clone()).collect()).unwrap_or_default()
    }
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for e in g.star(v).iter() {
                let w = g.edge(e).other_end(v).unwrap();
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn extend<L: Ord + Clone>(
    gs: &Side<L>,
    hs: &Side<L>,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..used.len() {
        if used[w] || gs.invariants[v] != hs.invariants[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| gs.labels_between(v, u) == hs.labels_between(w, map[u]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(gs, hs, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
