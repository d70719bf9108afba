use super::{EdgeSet, Graph, UnionFind};

/// All spanning trees as edge sets, in increasing mask order.
///
/// Loops never belong to a spanning tree.
pub fn spanning_trees(g: &Graph) -> Vec<EdgeSet> {
    let n = g.vertex_count();
    let candidates: Vec<usize> = (0..g.edge_count()).filter(|&e| !g.edge(e).is_loop()).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    extend_forest(g, &candidates, 0, n.saturating_sub(1), &mut chosen, &mut out);
    out.sort();
    out
}

fn extend_forest(
    g: &Graph,
    candidates: &[usize],
    start: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<EdgeSet>,
) {
    if chosen.len() == need {
        out.push(chosen.iter().copied().collect());
        return;
    }
    let remaining = need - chosen.len();
    for i in start..candidates.len() {
        if candidates.len() - i < remaining {
            break;
        }
        chosen.push(candidates[i]);
        if is_forest(g, chosen) {
            extend_forest(g, candidates, i + 1, need, chosen, out);
        }
        chosen.pop();
    }
}

fn is_forest(g: &Graph, edges: &[usize]) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    edges.iter().all(|&e| {
        let [a, b] = g.edge(e).ends;
        uf.union(a, b)
    })
}

/// Bridges and the nondisconnecting edges `ND(Γ) = E(Γ) ∖ Bridges(Γ)`.
pub fn bridges_and_nd(g: &Graph) -> (EdgeSet, EdgeSet) {
    let all = g.all_edges();
    let full = g.all_vertices();
    let base = g.component_count(full, all);
    let bridges: EdgeSet = all
        .iter()
        .filter(|&e| !g.edge(e).is_loop() && g.component_count(full, all.without(e)) > base)
        .collect();
    (bridges, all.difference(bridges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn counts() {
        assert_eq!(spanning_trees(&triangle()).len(), 3);
        let tc = twocyc();
        let trees = spanning_trees(&tc);
        assert_eq!(trees, vec![EdgeSet::singleton(0), EdgeSet::singleton(1)]);
        assert_eq!(spanning_trees(&dumb()).len(), 5);
        assert_eq!(spanning_trees(&k4()).len(), 16);
        assert_eq!(spanning_trees(&loop_graph()), vec![EdgeSet::EMPTY]);
        assert_eq!(spanning_trees(&theta()).len(), 3);
    }

    #[test]
    fn bridges() {
        let p = path2();
        assert_eq!(bridges_and_nd(&p), (EdgeSet::singleton(0), EdgeSet::EMPTY));
        assert_eq!(bridges_and_nd(&triangle()).0, EdgeSet::EMPTY);
        let tp = triangle_pendant("x");
        let (b, nd) = bridges_and_nd(&tp);
        assert_eq!(tp.edge_ids(b), vec!["p"]);
        assert_eq!(nd.len(), 3);
        let lp = loop_pendant();
        let (b, nd) = bridges_and_nd(&lp);
        assert_eq!(lp.edge_ids(b), vec!["b"]);
        assert_eq!(lp.edge_ids(nd), vec!["a"]);
    }
}
