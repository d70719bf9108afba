use super::{Edge, EdgeSet, Graph, GraphError, Vertex};

/// One biconnected component with back-maps into the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// The component as a graph; ids and weights are copied from the parent.
    pub graph: Graph,
    /// Parent index of each component vertex.
    pub vertices: Vec<usize>,
    /// Parent index of each component edge.
    pub edges: Vec<usize>,
}

impl Component {
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// A single non-loop edge.
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1 && !self.graph.edge(0).is_loop()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Ordered by least parent edge index.
    pub components: Vec<Component>,
    /// Vertices lying in two or more components, increasing.
    pub articulation: Vec<usize>,
}

/// The subgraph spanned by `edges`, on the vertices they touch (parent order).
pub(crate) fn edge_subgraph(g: &Graph, edges: EdgeSet) -> (Graph, Vec<usize>) {
    let mut keep = vec![false; g.vertex_count()];
    for e in edges.iter() {
        for v in g.edge(e).ends {
            keep[v] = true;
        }
    }
    let back: Vec<usize> = (0..g.vertex_count()).filter(|&v| keep[v]).collect();
    let mut fwd = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in back.iter().enumerate() {
        fwd[v] = i;
    }
    let vertices: Vec<Vertex> = back.iter().map(|&v| g.vertex(v).clone()).collect();
    let es: Vec<Edge> = edges
        .iter()
        .map(|e| {
            let edge = g.edge(e);
            Edge { id: edge.id.clone(), ends: edge.ends.map(|v| fwd[v]) }
        })
        .collect();
    (Graph::from_parts(vertices, es), back)
}

/// Biconnected components: each loop on its own, every bridge on its own, and
/// the 2-connected blocks of the loopless part (parallel edges stay together).
pub fn biconnected_components(g: &Graph) -> Decomposition {
    let mut blocks: Vec<EdgeSet> = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            blocks.push(EdgeSet::singleton(i));
        }
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if !e.is_loop() {
            adj[e.ends[0]].push((e.ends[1], i));
            adj[e.ends[1]].push((e.ends[0], i));
        }
    }
    let mut tarjan = Tarjan { adj: &adj, disc: vec![usize::MAX; n], low: vec![0; n], clock: 0, stack: Vec::new(), blocks: Vec::new() };
    for v in 0..n {
        if tarjan.disc[v] == usize::MAX {
            tarjan.visit(v, usize::MAX);
        }
    }
    blocks.extend(tarjan.blocks);
    blocks.sort_by_key(|b| b.first());

    let mut membership = vec![0usize; n];
    let components: Vec<Component> = blocks
        .into_iter()
        .map(|set| {
            let (graph, vertices) = edge_subgraph(g, set);
            for &v in &vertices {
                membership[v] += 1;
            }
            Component { graph, vertices, edges: set.to_vec() }
        })
        .collect();
    let articulation = (0..n).filter(|&v| membership[v] >= 2).collect();
    Decomposition { components, articulation }
}

struct Tarjan<'a> {
    adj: &'a [Vec<(usize, usize)>],
    disc: Vec<usize>,
    low: Vec<usize>,
    clock: usize,
    stack: Vec<usize>,
    blocks: Vec<EdgeSet>,
}

impl Tarjan<'_> {
    // `via` is the tree edge used to enter `v`; only that edge is skipped, so
    // a parallel copy of it counts as a back edge.
    fn visit(&mut self, v: usize, via: usize) {
        self.disc[v] = self.clock;
        self.low[v] = self.clock;
        self.clock += 1;
        for &(w, e) in &self.adj[v] {
            if e == via {
                continue;
            }
            if self.disc[w] == usize::MAX {
                self.stack.push(e);
                self.visit(w, e);
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    let mut block = EdgeSet::EMPTY;
                    while let Some(top) = self.stack.pop() {
                        block = block.with(top);
                        if top == e {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[v] {
                self.stack.push(e);
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

/// Split `g` at the articulation vertex `v0` into two edge-disjoint connected
/// subgraphs meeting only at `v0`.
///
/// The first part collects the first component through `v0` together with
/// everything reachable from it without passing through `v0`.
pub fn split_at_articulation(g: &Graph, v0: &str) -> Result<(Graph, Graph), GraphError> {
    let v = g.vertex_by_id(v0)?;
    let dec = biconnected_components(g);
    if !dec.articulation.contains(&v) {
        return Err(GraphError::NotArticulation(v0.to_string()));
    }
    let first = dec.components.iter().find(|c| c.vertices.contains(&v)).expect("articulation lies in a component");
    let mut side = first.edge_set();
    loop {
        let touched: Vec<usize> = side.iter().flat_map(|e| g.edge(e).ends).filter(|&x| x != v).collect();
        let grown = (0..g.edge_count())
            .filter(|&e| g.edge(e).ends.iter().any(|x| touched.contains(x)))
            .fold(side, |acc, e| acc.with(e));
        if grown == side {
            break;
        }
        side = grown;
    }
    let rest = g.all_edges().difference(side);
    if rest.is_empty() {
        return Err(GraphError::NotArticulation(v0.to_string()));
    }
    Ok((edge_subgraph(g, side).0, edge_subgraph(g, rest).0))
}
