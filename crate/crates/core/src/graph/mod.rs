//! Finite multigraphs with loops, parallel edges and vertex weights.
//!
//! Vertices and edges carry stable string ids; internally everything is indexed
//! by position. Edge and vertex subsets are 64-bit masks, so a graph holds at
//! most 64 vertices and 64 edges. The exhaustive operations built on top of this
//! are exponential anyway and are meant for graphs with roughly 14 edges or fewer.

mod bicon;
mod cuts;
mod cyclic;
pub mod io;
mod iso;
mod kirchhoff;
mod ops;
mod sets;
mod trees;

use std::collections::HashMap;
use std::fmt;

pub use bicon::{biconnected_components, split_at_articulation, Component, Decomposition};
pub use cuts::{cut_and_bond_enumeration, hemispheres, CutData};
pub use cyclic::{is_weak_cyclic_equivalence, maximally_nondisconnecting, special_pairs};
pub use iso::{graph_isomorphic, graph_isomorphic_by, GraphIso};
pub use kirchhoff::{determinant, spanning_tree_count};
pub use ops::{contract_edges, delete_edges, exceptional_vertex_id, half_edge_id, subdivide, SpecializationMap, Subdivision};
pub use sets::{EdgeSet, VertexSet};
pub use trees::{bridges_and_nd, spanning_trees};

/// Largest vertex or edge count a [`Graph`] may have.
pub const MAX_ITEMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
}

/// An edge with ordered ends; `ends[0] == ends[1]` for a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub ends: [usize; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The end opposite to `v`, if `v` is an end.
    pub fn other_end(&self, v: usize) -> Option<usize> {
        if self.ends[0] == v {
            Some(self.ends[1])
        } else if self.ends[1] == v {
            Some(self.ends[0])
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id {id:?} at {position}")]
    DuplicateVertex { id: String, position: String },
    #[error("duplicate edge id {id:?} at {position}")]
    DuplicateEdge { id: String, position: String },
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge id {0:?}")]
    UnknownEdge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("graph exceeds {MAX_ITEMS} vertices or edges")]
    TooLarge,
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("vertex {0:?} is not an articulation vertex")]
    NotArticulation(String),
    #[error("map is not a bijection between nondisconnecting edge sets")]
    NotBijection,
}

/// A finite connected multigraph.
///
/// Connectedness is enforced by the public constructors; disconnected values
/// exist only inside decomposition internals.
#[derive(Clone)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}:{}-{}", e.id, self.vertices[e.ends[0]].id, self.vertices[e.ends[1]].id))
            .collect();
        let weights: Vec<String> = self
            .vertices
            .iter()
            .map(|v| if v.weight == 0 { v.id.clone() } else { format!("{}(w{})", v.id, v.weight) })
            .collect();
        f.debug_struct("Graph").field("vertices", &weights).field("edges", &edges).finish()
    }
}

impl Graph {
    /// Build a connected graph from weighted vertices and `(id, end0, end1)` edges.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (String, u32)>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let g = Self::new_unchecked(vertices, edges)?;
        if g.vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Like [`Graph::new`] but without the connectivity check.
    pub(crate) fn new_unchecked<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (String, u32)>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vs = Vec::new();
        let mut vertex_index = HashMap::new();
        for (i, (id, weight)) in vertices.into_iter().enumerate() {
            if vertex_index.insert(id.clone(), vs.len()).is_some() {
                return Err(GraphError::DuplicateVertex { id, position: format!("vertices[{i}]") });
            }
            vs.push(Vertex { id, weight });
        }
        let mut es = Vec::new();
        let mut edge_index = HashMap::new();
        for (i, (id, a, b)) in edges.into_iter().enumerate() {
            let end = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownEndpoint { edge: id.clone(), vertex: v.clone() })
            };
            let ends = [end(&a)?, end(&b)?];
            if edge_index.insert(id.clone(), es.len()).is_some() {
                return Err(GraphError::DuplicateEdge { id, position: format!("edges[{i}]") });
            }
            es.push(Edge { id, ends });
        }
        if vs.len() > MAX_ITEMS || es.len() > MAX_ITEMS {
            return Err(GraphError::TooLarge);
        }
        Ok(Graph { vertices: vs, edges: es, vertex_index, edge_index })
    }

    /// Pure graph from `(edge-id, end0, end1)` triples; vertices appear in first-use order.
    ///
    /// Panics on invalid input; intended for fixtures and tests.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Self {
        let mut order: Vec<String> = Vec::new();
        for (_, a, b) in edges {
            for v in [a, b] {
                if !order.iter().any(|o| o == v) {
                    order.push(v.to_string());
                }
            }
        }
        Self::new(
            order.into_iter().map(|v| (v, 0)),
            edges.iter().map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string())),
        )
        .expect("valid fixture graph")
    }

    /// A single vertex without edges.
    pub fn point(id: &str) -> Self {
        Self::new([(id.to_string(), 0)], std::iter::empty()).expect("single vertex")
    }

    pub(crate) fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        let vertex_index = vertices.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect();
        let edge_index = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        Graph { vertices, edges, vertex_index, edge_index }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i].id
    }

    pub fn edge_id(&self, i: usize) -> &str {
        &self.edges[i].id
    }

    pub fn vertex_by_id(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex_index.get(id).copied().ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize, GraphError> {
        self.edge_index.get(id).copied().ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    /// Edge set from ids.
    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<EdgeSet, GraphError> {
        ids.iter().try_fold(EdgeSet::EMPTY, |acc, id| Ok(acc.with(self.edge_by_id(id.as_ref())?)))
    }

    /// Vertex set from ids.
    pub fn vertex_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<VertexSet, GraphError> {
        ids.iter().try_fold(VertexSet::EMPTY, |acc, id| Ok(acc.with(self.vertex_by_id(id.as_ref())?)))
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertices.len())
    }

    /// Edge ids of a set, in graph order.
    pub fn edge_ids(&self, set: EdgeSet) -> Vec<String> {
        set.iter().map(|e| self.edges[e].id.clone()).collect()
    }

    pub fn vertex_ids(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertices[v].id.clone()).collect()
    }

    pub fn is_pure(&self) -> bool {
        self.vertices.iter().all(|v| v.weight == 0)
    }

    /// Copy with every weight set to zero.
    pub fn purified(&self) -> Graph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.weight = 0;
        }
        g
    }

    /// Copy with different vertex weights (by vertex index).
    pub fn with_weights(&self, weights: &[u32]) -> Graph {
        let mut g = self.clone();
        for (v, w) in g.vertices.iter_mut().zip(weights) {
            v.weight = *w;
        }
        g
    }

    /// Edges incident to `v`.
    pub fn star(&self, v: usize) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.ends.contains(&v))
            .fold(EdgeSet::EMPTY, |acc, (i, _)| acc.with(i))
    }

    /// Number of edge ends of `set` at `v`, loops counted twice.
    pub fn valence_in(&self, v: usize, set: EdgeSet) -> usize {
        set.iter().map(|e| self.edges[e].ends.iter().filter(|&&x| x == v).count()).sum()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.valence_in(v, self.all_edges())
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.is_loop() && e.ends[0] == v).count()
    }

    /// Edges with one end in `set` and the other outside; `δ_V = |E(V, V^c)|`.
    pub fn cut(&self, set: VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| set.contains(e.ends[0]) != set.contains(e.ends[1]))
            .fold(EdgeSet::EMPTY, |acc, (i, _)| acc.with(i))
    }

    /// Edges with both ends in `set`, `E(V, V)`.
    pub fn inner_edges(&self, set: VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| set.contains(e.ends[0]) && set.contains(e.ends[1]))
            .fold(EdgeSet::EMPTY, |acc, (i, _)| acc.with(i))
    }

    /// Number of connected components of the subgraph on `vertices` using `edges`
    /// (edges leaving `vertices` are ignored).
    pub fn component_count(&self, vertices: VertexSet, edges: EdgeSet) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in edges.iter() {
            let [a, b] = self.edges[e].ends;
            if vertices.contains(a) && vertices.contains(b) {
                uf.union(a, b);
            }
        }
        vertices.iter().filter(|&v| uf.find(v) == v).count()
    }

    /// Whether the subgraph on `vertices` with edges `edges` is connected.
    /// The empty vertex set counts as connected.
    pub fn is_connected_on(&self, vertices: VertexSet, edges: EdgeSet) -> bool {
        vertices.is_empty() || self.component_count(vertices, edges) == 1
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.all_vertices(), self.all_edges())
    }

    /// Whether `Γ(V)`, the subgraph induced on `V`, is connected.
    pub fn induces_connected(&self, set: VertexSet) -> bool {
        self.is_connected_on(set, self.inner_edges(set))
    }

    /// First Betti number of the spanning subgraph `(V(Γ), edges)`.
    pub fn betti_of(&self, edges: EdgeSet) -> usize {
        edges.len() + self.component_count(self.all_vertices(), edges) - self.vertices.len()
    }

    /// Genus `b1(Γ) + Σ w(v)`.
    pub fn genus(&self) -> usize {
        self.betti_of(self.all_edges()) + self.total_weight()
    }

    pub fn total_weight(&self) -> usize {
        self.vertices.iter().map(|v| v.weight as usize).sum()
    }

    /// Genus `g_V` of the induced subgraph `Γ(V)`, which may be disconnected.
    pub fn subgraph_genus(&self, set: VertexSet) -> Result<usize, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let inner = self.inner_edges(set);
        let b1 = inner.len() + self.component_count(set, inner) - set.len();
        Ok(b1 + set.iter().map(|v| self.vertices[v].weight as usize).sum::<usize>())
    }

    /// Whether the two edges share both ends (and are not loops).
    pub fn parallel(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (&self.edges[a], &self.edges[b]);
        if ea.is_loop() || eb.is_loop() {
            return false;
        }
        let mut x = ea.ends;
        let mut y = eb.ends;
        x.sort_unstable();
        y.sort_unstable();
        x == y
    }

    /// Index of the lexicographically least vertex id.
    pub fn least_vertex(&self) -> usize {
        (0..self.vertices.len()).min_by(|&a, &b| self.vertices[a].id.cmp(&self.vertices[b].id)).unwrap_or(0)
    }
}

/// Genus of a graph; see [`Graph::genus`].
pub fn genus(g: &Graph) -> usize {
    g.genus()
}

/// Genus of an induced subgraph; see [`Graph::subgraph_genus`].
pub fn subgraph_genus(g: &Graph, set: VertexSet) -> Result<usize, GraphError> {
    g.subgraph_genus(set)
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so results do not depend on call order.
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn genus_examples() {
        assert_eq!(triangle().genus(), 1);
        assert_eq!(loop_graph().genus(), 1);
        let p = path2().with_weights(&[2, 0]);
        assert_eq!(p.genus(), 2);
        assert_eq!(theta().genus(), 2);
        assert_eq!(dumb().genus(), 2);
    }

    #[test]
    fn subgraph_genus_examples() {
        let t = triangle();
        assert_eq!(t.subgraph_genus(t.vertex_set(&["x", "y"]).unwrap()).unwrap(), 0);
        let th = theta();
        assert_eq!(th.subgraph_genus(th.all_vertices()).unwrap(), 2);
        let l = loop_graph();
        assert_eq!(l.subgraph_genus(l.all_vertices()).unwrap(), 1);
        assert_eq!(t.subgraph_genus(VertexSet::EMPTY), Err(GraphError::EmptyVertexSet));
        // disconnected induced subgraph: two isolated vertices of a path
        let p = Graph::from_edges(&[("a", "u", "v"), ("b", "v", "w")]);
        assert_eq!(p.subgraph_genus(p.vertex_set(&["u", "w"]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let dup = Graph::new(
            [("u".to_string(), 0), ("u".to_string(), 0)],
            std::iter::empty(),
        );
        assert!(matches!(dup, Err(GraphError::DuplicateVertex { .. })));
        let dangling = Graph::new([("u".to_string(), 0)], [("e".into(), "u".into(), "w".into())]);
        assert!(matches!(dangling, Err(GraphError::UnknownEndpoint { .. })));
        let disc = Graph::new([("u".to_string(), 0), ("v".to_string(), 0)], std::iter::empty());
        assert_eq!(disc, Err(GraphError::Disconnected));
        let dup_edge = Graph::new(
            [("u".to_string(), 0)],
            [("e".into(), "u".into(), "u".into()), ("e".into(), "u".into(), "u".into())],
        );
        assert!(matches!(dup_edge, Err(GraphError::DuplicateEdge { .. })));
    }

    #[test]
    fn valence_counts_loops_twice() {
        let l = loop_graph();
        assert_eq!(l.valence(0), 2);
        assert_eq!(l.loops_at(0), 1);
        let th = theta();
        assert_eq!(th.valence(0), 3);
    }

    #[test]
    fn parallel_edges() {
        let d = dumb();
        let e1 = d.edge_by_id("e1").unwrap();
        let e2 = d.edge_by_id("e2").unwrap();
        let p1 = d.edge_by_id("p1").unwrap();
        assert!(d.parallel(e1, e2));
        assert!(!d.parallel(e1, p1));
        let l = loop_graph();
        assert!(!l.parallel(0, 0));
    }
}
