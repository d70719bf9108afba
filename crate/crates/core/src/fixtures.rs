//! Named example graphs and generated families used by tests and the corpus.

use crate::graph::{graph_isomorphic, Graph};

/// One loop `a` at `u`.
pub fn loop_graph() -> Graph {
    Graph::from_edges(&[("a", "u", "u")])
}

/// Single edge `b` between `u` and `v`.
pub fn path2() -> Graph {
    Graph::from_edges(&[("b", "u", "v")])
}

/// Two parallel edges `e1`, `e2` between `s` and `t`.
pub fn twocyc() -> Graph {
    Graph::from_edges(&[("e1", "s", "t"), ("e2", "s", "t")])
}

/// Three parallel edges between `s` and `t`.
pub fn theta() -> Graph {
    Graph::from_edges(&[("e1", "s", "t"), ("e2", "s", "t"), ("e3", "s", "t")])
}

pub fn triangle() -> Graph {
    Graph::from_edges(&[("xy", "x", "y"), ("yz", "y", "z"), ("zx", "z", "x")])
}

/// Parallel `e1`, `e2` between `s` and `t`, closed by the path `s - u - t`.
pub fn dumb() -> Graph {
    Graph::from_edges(&[("e1", "s", "t"), ("e2", "s", "t"), ("p1", "s", "u"), ("p2", "u", "t")])
}

pub fn k4() -> Graph {
    Graph::from_edges(&[
        ("ab", "a", "b"),
        ("ac", "a", "c"),
        ("ad", "a", "d"),
        ("bc", "b", "c"),
        ("bd", "b", "d"),
        ("cd", "c", "d"),
    ])
}

/// Two triangles glued at `v`.
pub fn two_triangles() -> Graph {
    Graph::from_edges(&[
        ("a1", "v", "a"),
        ("a2", "a", "b"),
        ("a3", "b", "v"),
        ("b1", "v", "c"),
        ("b2", "c", "d"),
        ("b3", "d", "v"),
    ])
}

/// Triangle with a pendant edge `p` from `at` to a new vertex `w`.
pub fn triangle_pendant(at: &str) -> Graph {
    Graph::from_edges(&[("xy", "x", "y"), ("yz", "y", "z"), ("zx", "z", "x"), ("p", at, "w")])
}

/// Loop `a` at `u` and bridge `b` from `u` to `v`.
pub fn loop_pendant() -> Graph {
    Graph::from_edges(&[("a", "u", "u"), ("b", "u", "v")])
}

/// Four-cycle `p - q - r - s`.
pub fn four_cycle() -> Graph {
    Graph::from_edges(&[("pq", "p", "q"), ("qr", "q", "r"), ("rs", "r", "s"), ("sp", "s", "p")])
}

/// Two paths between `a` and `b`, each through one middle vertex, with the
/// edge next to `a` doubled on both.
pub fn whitney_a() -> Graph {
    Graph::from_edges(&[
        ("ax1", "a", "x"),
        ("ax2", "a", "x"),
        ("xb", "x", "b"),
        ("ay1", "a", "y"),
        ("ay2", "a", "y"),
        ("yb", "y", "b"),
    ])
}

/// [`whitney_a`] with the `y` path flipped across the separating pair `{a, b}`.
pub fn whitney_b() -> Graph {
    Graph::from_edges(&[
        ("ax1", "a", "x"),
        ("ax2", "a", "x"),
        ("xb", "x", "b"),
        ("ya", "y", "a"),
        ("by1", "b", "y"),
        ("by2", "b", "y"),
    ])
}

/// The named graphs with their conventional names.
pub fn named() -> Vec<(&'static str, Graph)> {
    vec![
        ("loop", loop_graph()),
        ("path2", path2()),
        ("twocyc", twocyc()),
        ("theta", theta()),
        ("triangle", triangle()),
        ("dumb", dumb()),
        ("k4", k4()),
        ("two_triangles", two_triangles()),
        ("triangle_pendant_x", triangle_pendant("x")),
        ("triangle_pendant_y", triangle_pendant("y")),
        ("loop_pendant", loop_pendant()),
        ("four_cycle", four_cycle()),
        ("whitney_a", whitney_a()),
        ("whitney_b", whitney_b()),
    ]
}

fn dedup_iso(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for g in graphs {
        if !out.iter().any(|h| graph_isomorphic(&g, h).is_some()) {
            out.push(g);
        }
    }
    out
}

/// Every connected pure multigraph with at most `max_edges` edges, one per
/// isomorphism class, ordered by (edges, vertices, generation order).
pub fn small_multigraphs(max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for m in 0..=max_edges {
        for n in 1..=m + 1 {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
            let mut found = Vec::new();
            let mut choice = Vec::with_capacity(m);
            multisets(&pairs, m, 0, &mut choice, &mut |sel| {
                if let Some(g) = build(n, sel) {
                    found.push(g);
                }
            });
            out.extend(dedup_iso(found));
        }
    }
    out
}

fn multisets(pairs: &[(usize, usize)], m: usize, start: usize, choice: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
    if choice.len() == m {
        f(choice);
        return;
    }
    for i in start..pairs.len() {
        choice.push(pairs[i]);
        multisets(pairs, m, i, choice, f);
        choice.pop();
    }
}

fn build(n: usize, sel: &[(usize, usize)]) -> Option<Graph> {
    Graph::new(
        (0..n).map(|i| (format!("v{i}"), 0)),
        sel.iter().enumerate().map(|(k, &(a, b))| (format!("e{k}"), format!("v{a}"), format!("v{b}"))),
    )
    .ok()
}

/// One tree per isomorphism class on `n` vertices, from Prüfer sequences.
pub fn trees(n: usize) -> Vec<Graph> {
    match n {
        0 => Vec::new(),
        1 => vec![Graph::point("v0")],
        2 => vec![build(2, &[(0, 1)]).unwrap()],
        _ => {
            let mut found = Vec::new();
            let total = n.pow((n - 2) as u32);
            for code in 0..total {
                let mut seq = Vec::with_capacity(n - 2);
                let mut c = code;
                for _ in 0..n - 2 {
                    seq.push(c % n);
                    c /= n;
                }
                found.push(build(n, &prufer_edges(n, &seq)).unwrap());
            }
            dedup_iso(found)
        }
    }
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6]);
        assert!(trees(6).iter().all(|t| t.genus() == 0 && t.vertex_count() == 6));
    }

    #[test]
    fn small_multigraph_counts() {
        // hand count of connected multigraphs with loops, by edge count
        let g = small_multigraphs(3);
        let by_m: Vec<usize> = (0..=3).map(|m| g.iter().filter(|x| x.edge_count() == m).count()).collect();
        assert_eq!(by_m, vec![1, 2, 4, 11]);
    }

    #[test]
    fn whitney_pair_differs() {
        assert!(graph_isomorphic(&whitney_a(), &whitney_b()).is_none());
    }
}
