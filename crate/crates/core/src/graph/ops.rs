use super::{Edge, EdgeSet, Graph, GraphError, UnionFind, Vertex, MAX_ITEMS};

/// Id of the exceptional vertex inserted into edge `edge`.
pub fn exceptional_vertex_id(edge: &str) -> String {
    format!("v@{edge}")
}

/// Id of half `side` (0 from end0, 1 towards end1) of a subdivided edge.
pub fn half_edge_id(edge: &str, side: usize) -> String {
    format!("{edge}:{side}")
}

/// `Γ^E`: the graph with one exceptional vertex inserted in each edge of `E`,
/// together with id back-maps.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Graph,
    /// For each original edge, its exceptional vertex in `graph` (if subdivided).
    pub exceptional: Vec<Option<usize>>,
    /// For each original edge, its index in `graph` (unsubdivided) or its two halves.
    pub edge_image: Vec<EdgeImage>,
    /// For each vertex of `graph`, the original vertex it is, or `None` if exceptional.
    pub vertex_origin: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeImage {
    Kept(usize),
    Split([usize; 2]),
}

/// Insert an exceptional vertex `v@e` into every `e ∈ subset`. Half edges are
/// `e:0` (end0 to `v@e`) and `e:1` (`v@e` to end1); new vertices have weight 0
/// and are appended after the original vertices in edge order.
pub fn subdivide(g: &Graph, subset: EdgeSet) -> Result<Subdivision, GraphError> {
    if let Some(bad) = subset.iter().find(|&e| e >= g.edge_count()) {
        return Err(GraphError::UnknownEdge(format!("#{bad}")));
    }
    if g.vertex_count() + subset.len() > MAX_ITEMS || g.edge_count() + subset.len() > MAX_ITEMS {
        return Err(GraphError::TooLarge);
    }
    let mut vertices: Vec<Vertex> = g.vertices().to_vec();
    let mut vertex_origin: Vec<Option<usize>> = (0..g.vertex_count()).map(Some).collect();
    let mut exceptional = vec![None; g.edge_count()];
    for e in subset.iter() {
        exceptional[e] = Some(vertices.len());
        vertices.push(Vertex { id: exceptional_vertex_id(g.edge_id(e)), weight: 0 });
        vertex_origin.push(None);
    }
    let mut edges = Vec::with_capacity(g.edge_count() + subset.len());
    let mut edge_image = Vec::with_capacity(g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        match exceptional[i] {
            Some(x) => {
                edge_image.push(EdgeImage::Split([edges.len(), edges.len() + 1]));
                edges.push(Edge { id: half_edge_id(&e.id, 0), ends: [e.ends[0], x] });
                edges.push(Edge { id: half_edge_id(&e.id, 1), ends: [x, e.ends[1]] });
            }
            None => {
                edge_image.push(EdgeImage::Kept(edges.len()));
                edges.push(e.clone());
            }
        }
    }
    let graph = checked_parts(vertices, edges)?;
    Ok(Subdivision { graph, exceptional, edge_image, vertex_origin })
}

fn checked_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Graph, GraphError> {
    let g = Graph::from_parts(vertices, edges);
    if g.vertex_index.len() != g.vertices.len() {
        let dup = g
            .vertices
            .iter()
            .enumerate()
            .find(|(i, v)| g.vertex_index[&v.id] != *i)
            .map(|(i, v)| (v.id.clone(), i))
            .unwrap();
        return Err(GraphError::DuplicateVertex { id: dup.0, position: format!("vertices[{}]", dup.1) });
    }
    if g.edge_index.len() != g.edges.len() {
        let dup = g.edges.iter().enumerate().find(|(i, e)| g.edge_index[&e.id] != *i).map(|(i, e)| (e.id.clone(), i)).unwrap();
        return Err(GraphError::DuplicateEdge { id: dup.0, position: format!("edges[{}]", dup.1) });
    }
    Ok(g)
}

/// `Γ_E`: remove the edges of `subset`, keeping every vertex.
///
/// With `require_connected` the result must stay connected.
pub fn delete_edges(g: &Graph, subset: EdgeSet, require_connected: bool) -> Result<Graph, GraphError> {
    if let Some(bad) = subset.iter().find(|&e| e >= g.edge_count()) {
        return Err(GraphError::UnknownEdge(format!("#{bad}")));
    }
    let edges = g.edges().iter().enumerate().filter(|(i, _)| !subset.contains(*i)).map(|(_, e)| e.clone()).collect();
    let out = Graph::from_parts(g.vertices().to_vec(), edges);
    if require_connected && !out.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(out)
}

/// A specialization `ι: Γ → Γ'` given by a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationMap {
    pub source: Graph,
    pub target: Graph,
    /// `V(source) → V(target)`.
    pub vertex_map: Vec<usize>,
    /// `E(target) → E(source)`, injective.
    pub edge_section: Vec<usize>,
}

impl SpecializationMap {
    pub fn identity(g: &Graph) -> Self {
        SpecializationMap {
            source: g.clone(),
            target: g.clone(),
            vertex_map: (0..g.vertex_count()).collect(),
            edge_section: (0..g.edge_count()).collect(),
        }
    }

    /// Source edges not in the image of the section.
    pub fn contracted(&self) -> EdgeSet {
        let kept: EdgeSet = self.edge_section.iter().copied().collect();
        self.source.all_edges().difference(kept)
    }

    /// Target index of a source edge, if it survives.
    pub fn edge_image(&self, source_edge: usize) -> Option<usize> {
        self.edge_section.iter().position(|&e| e == source_edge)
    }

    /// Check the commuting-square conditions.
    pub fn is_valid(&self) -> bool {
        if self.vertex_map.len() != self.source.vertex_count()
            || self.edge_section.len() != self.target.edge_count()
            || self.vertex_map.iter().any(|&v| v >= self.target.vertex_count())
        {
            return false;
        }
        let mut seen = EdgeSet::EMPTY;
        for (t, &s) in self.edge_section.iter().enumerate() {
            if s >= self.source.edge_count() || seen.contains(s) {
                return false;
            }
            seen = seen.with(s);
            let src = self.source.edge(s).ends.map(|v| self.vertex_map[v]);
            if src != self.target.edge(t).ends {
                return false;
            }
        }
        self.contracted().iter().all(|e| {
            let [a, b] = self.source.edge(e).ends;
            self.vertex_map[a] == self.vertex_map[b]
        })
    }
}

/// `Γ/E`: contract the edges of `subset`. Contracting a loop deletes it.
///
/// Each fiber becomes one vertex whose id is the least id in the fiber and
/// whose weight is the fiber's total weight. Target vertices follow the order
/// of their least original index; target edges keep source order.
pub fn contract_edges(g: &Graph, subset: EdgeSet) -> Result<SpecializationMap, GraphError> {
    if let Some(bad) = subset.iter().find(|&e| e >= g.edge_count()) {
        return Err(GraphError::UnknownEdge(format!("#{bad}")));
    }
    let mut uf = UnionFind::new(g.vertex_count());
    for e in subset.iter() {
        let [a, b] = g.edge(e).ends;
        uf.union(a, b);
    }
    let mut root_to_target = vec![usize::MAX; g.vertex_count()];
    let mut vertex_map = vec![0; g.vertex_count()];
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.vertex_count() {
        let r = uf.find(v);
        if root_to_target[r] == usize::MAX {
            root_to_target[r] = fibers.len();
            fibers.push(Vec::new());
        }
        vertex_map[v] = root_to_target[r];
        fibers[root_to_target[r]].push(v);
    }
    let vertices: Vec<Vertex> = fibers
        .iter()
        .map(|fiber| {
            let id = fiber.iter().map(|&v| g.vertex_id(v)).min().unwrap().to_string();
            let weight = fiber.iter().map(|&v| g.vertex(v).weight).sum();
            Vertex { id, weight }
        })
        .collect();
    let mut edges = Vec::new();
    let mut edge_section = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if subset.contains(i) {
            continue;
        }
        edges.push(Edge { id: e.id.clone(), ends: e.ends.map(|v| vertex_map[v]) });
        edge_section.push(i);
    }
    let target = Graph::from_parts(vertices, edges);
    Ok(SpecializationMap { source: g.clone(), target, vertex_map, edge_section })
}
