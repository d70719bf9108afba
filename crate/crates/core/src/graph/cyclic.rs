use std::collections::{BTreeSet, HashMap};

use super::{bridges_and_nd, spanning_trees, EdgeSet, Graph, GraphError};

/// Complements of spanning trees, sorted.
pub fn maximally_nondisconnecting(g: &Graph) -> Vec<EdgeSet> {
    let all = g.all_edges();
    let mut out: Vec<EdgeSet> = spanning_trees(g).into_iter().map(|t| all.difference(t)).collect();
    out.sort();
    out
}

/// Pairs `{a, b}` (with `a < b`) of parallel edges such that no third edge is
/// parallel to them and removing both keeps the graph connected.
pub fn special_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..g.edge_count() {
        for b in a + 1..g.edge_count() {
            if !g.parallel(a, b) {
                continue;
            }
            let third = (0..g.edge_count()).any(|c| c != a && c != b && g.parallel(a, c));
            if third {
                continue;
            }
            let rest = g.all_edges().without(a).without(b);
            if g.is_connected_on(g.all_vertices(), rest) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Whether `f` (pairs `source edge -> target edge`) is a weak cyclic
/// equivalence `ND(g) -> ND(h)`: it must carry the maximally nondisconnecting
/// sets of `g` exactly onto those of `h`.
///
/// Fails with [`GraphError::NotBijection`] unless `f` is a bijection between
/// the two nondisconnecting edge sets.
pub fn is_weak_cyclic_equivalence(f: &[(usize, usize)], g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    let (_, nd_g) = bridges_and_nd(g);
    let (_, nd_h) = bridges_and_nd(h);
    let map: HashMap<usize, usize> = f.iter().copied().collect();
    let domain: EdgeSet = map.keys().copied().collect();
    let image: EdgeSet = map.values().copied().collect();
    if map.len() != f.len() || domain != nd_g || image != nd_h || image.len() != map.len() {
        return Err(GraphError::NotBijection);
    }
    let target: BTreeSet<EdgeSet> = maximally_nondisconnecting(h).into_iter().collect();
    let source = maximally_nondisconnecting(g);
    if source.len() != target.len() {
        return Ok(false);
    }
    Ok(source.iter().all(|s| target.contains(&s.iter().map(|e| map[&e]).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn identity(g: &Graph) -> Vec<(usize, usize)> {
        bridges_and_nd(g).1.iter().map(|e| (e, e)).collect()
    }

    #[test]
    fn special_pair_examples() {
        assert!(special_pairs(&twocyc()).is_empty());
        assert!(special_pairs(&theta()).is_empty());
        let d = dumb();
        let pairs = special_pairs(&d);
        assert_eq!(pairs.len(), 1);
        assert_eq!(d.edge_ids(EdgeSet::from_iter([pairs[0].0, pairs[0].1])), vec!["e1", "e2"]);
    }

    #[test]
    fn mnd_are_tree_complements() {
        let th = theta();
        let m = maximally_nondisconnecting(&th);
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|s| s.len() == 2));
        assert_eq!(maximally_nondisconnecting(&loop_graph()), vec![EdgeSet::singleton(0)]);
    }

    #[test]
    fn weak_cyclic_examples() {
        let t = triangle();
        assert_eq!(is_weak_cyclic_equivalence(&identity(&t), &t, &t), Ok(true));
        let th = theta();
        let f: Vec<(usize, usize)> = (0..3).map(|e| (e, (e + 1) % 3)).collect();
        assert_eq!(is_weak_cyclic_equivalence(&f, &t, &th), Ok(false));
        let d = dumb();
        let (e1, e2) = (d.edge_by_id("e1").unwrap(), d.edge_by_id("e2").unwrap());
        let swap: Vec<(usize, usize)> = identity(&d)
            .into_iter()
            .map(|(a, _)| (a, if a == e1 { e2 } else if a == e2 { e1 } else { a }))
            .collect();
        assert_eq!(is_weak_cyclic_equivalence(&swap, &d, &d), Ok(true));
    }

    #[test]
    fn rejects_non_bijection() {
        let t = triangle();
        assert_eq!(is_weak_cyclic_equivalence(&[(0, 0), (1, 0), (2, 1)], &t, &t), Err(GraphError::NotBijection));
        assert_eq!(is_weak_cyclic_equivalence(&[(0, 0)], &t, &t), Err(GraphError::NotBijection));
    }
}
