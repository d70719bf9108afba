//! The ranked poset `QD_{v0,μ}(Γ)` of quasistable pseudo-divisors.

mod ranked;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

pub use ranked::{poset_isomorphism, poset_isomorphism_labeled, PosetIso, RankedPoset};

use crate::divisor::{elementary_specializations, Polarization, PseudoDivisor, QsConstraints};
use crate::graph::{bridges_and_nd, EdgeSet, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("cover ({0}, {1}) is invalid")]
    InvalidCover(usize, usize),
    #[error("cover relation has a cycle")]
    Cyclic,
    #[error("cover ({0}, {1}) does not drop rank by exactly one")]
    NotRanked(usize, usize),
    #[error("poset document: {0}")]
    Format(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("polarization has {found} values for {expected} vertices")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("basepoint translation needs the canonical polarization")]
    NonCanonical,
    #[error("elements {0} and {1} have different edge sets")]
    DifferentEdgeSets(usize, usize),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("the graph must be pure")]
    NotPure,
    #[error("map is not an isomorphism: {0}")]
    NotIsomorphism(String),
}

/// A cover `parent ⋗ child`: the elementary specialization over `edge`
/// sending its exceptional vertex to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cover {
    pub parent: usize,
    pub child: usize,
    pub edge: usize,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct QdPoset {
    graph: Graph,
    basepoint: usize,
    polarization: Polarization,
    canonical: bool,
    elements: Vec<PseudoDivisor>,
    index: HashMap<PseudoDivisor, usize>,
    covers: Vec<Cover>,
    ranked: RankedPoset,
}

/// `QD_{v0,μ}(Γ)`: every quasistable `(E, D)` with `E ⊆ ND(Γ)` and `Γ_E`
/// connected, sorted by rank, edge indices and values; covers are the
/// elementary specializations between members.
pub fn enumerate_qd(g: &Graph, v0: usize, mu: &Polarization) -> Result<QdPoset, PosetError> {
    if v0 >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{v0}")).into());
    }
    if mu.values().len() != g.vertex_count() {
        return Err(PosetError::CarrierMismatch { expected: g.vertex_count(), found: mu.values().len() });
    }
    let (_, nd) = bridges_and_nd(g);
    let nd_list = nd.to_vec();
    let mut subsets = Vec::new();
    grow_connected(g, &nd_list, 0, EdgeSet::EMPTY, &mut subsets);
    let mut elements = Vec::new();
    for subset in subsets {
        for values in QsConstraints::new(g, v0, mu, subset).enumerate() {
            elements.push(PseudoDivisor::new(subset, values));
        }
    }
    elements.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(QdPoset::assemble(g.clone(), v0, mu.clone(), elements))
}

/// Convenience: [`enumerate_qd`] with the canonical polarization.
pub fn enumerate_qd_canonical(g: &Graph, v0: usize) -> Result<QdPoset, PosetError> {
    enumerate_qd(g, v0, &Polarization::canonical(g))
}

// Subsets of `edges` whose removal keeps `g` connected. A disconnecting set
// stays disconnecting under supersets, so such branches are cut.
fn grow_connected(g: &Graph, edges: &[usize], from: usize, current: EdgeSet, out: &mut Vec<EdgeSet>) {
    out.push(current);
    for i in from..edges.len() {
        let next = current.with(edges[i]);
        if g.is_connected_on(g.all_vertices(), g.all_edges().difference(next)) {
            grow_connected(g, edges, i + 1, next, out);
        }
    }
}

impl QdPoset {
    /// Assemble a poset from an externally computed element list (sorted here).
    pub fn from_elements(g: &Graph, v0: usize, mu: &Polarization, mut elements: Vec<PseudoDivisor>) -> Self {
        elements.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        elements.dedup();
        QdPoset::assemble(g.clone(), v0, mu.clone(), elements)
    }

    fn assemble(graph: Graph, basepoint: usize, polarization: Polarization, elements: Vec<PseudoDivisor>) -> Self {
        let index: HashMap<PseudoDivisor, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut covers = Vec::new();
        for (i, el) in elements.iter().enumerate() {
            for (edge, to, child) in elementary_specializations(&graph, el) {
                if let Some(&j) = index.get(&child) {
                    covers.push(Cover { parent: i, child: j, edge, to });
                }
            }
        }
        let ranked = RankedPoset::new(elements.len(), covers.iter().map(|c| (c.parent, c.child)))
            .expect("elementary specializations drop rank by one");
        let canonical = polarization.is_canonical_for(&graph);
        QdPoset { graph, basepoint, polarization, canonical, elements, index, covers, ranked }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn polarization(&self) -> &Polarization {
        &self.polarization
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PseudoDivisor] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PseudoDivisor {
        &self.elements[i]
    }

    pub fn index_of(&self, pd: &PseudoDivisor) -> Option<usize> {
        self.index.get(pd).copied()
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn ranked(&self) -> &RankedPoset {
        &self.ranked
    }

    pub fn rank(&self, i: usize) -> usize {
        self.elements[i].rank()
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        self.ranked.parents(i)
    }

    pub fn children(&self, i: usize) -> &[usize] {
        self.ranked.children(i)
    }

    pub fn rank_histogram(&self) -> Vec<usize> {
        self.ranked.rank_histogram()
    }

    /// Indices of the elements with edge set `edges`.
    pub fn with_edges(&self, edges: EdgeSet) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].edges == edges).collect()
    }

    /// `{"elements":[...],"covers":[[i,j,{"edge":id,"to":id}]],"basepoint":id,"polarization":...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.graph;
        let elements: Vec<serde_json::Value> = self.elements.iter().map(|e| e.to_json(g)).collect();
        let covers: Vec<serde_json::Value> = self
            .covers
            .iter()
            .map(|c| serde_json::json!([c.parent, c.child, {"edge": g.edge_id(c.edge), "to": g.vertex_id(c.to)}]))
            .collect();
        let polarization = if self.canonical {
            serde_json::json!("canonical")
        } else {
            serde_json::json!(self.polarization.values().iter().map(|x| x.to_string()).collect::<Vec<_>>())
        };
        serde_json::json!({
            "elements": elements,
            "covers": covers,
            "basepoint": g.vertex_id(self.basepoint),
            "polarization": polarization,
        })
    }

    /// Hasse diagram as a DOT digraph, edges from parent to child.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph qd {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let label = e.label(&self.graph).replace('"', "\\\"");
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for c in &self.covers {
            writeln!(
                out,
                "  n{} -> n{} [label=\"{}@{}\"];",
                c.parent,
                c.child,
                self.graph.edge_id(c.edge),
                self.graph.vertex_id(c.to)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Elements without parents.
pub fn maximal_elements(p: &QdPoset) -> Vec<usize> {
    (0..p.len()).filter(|&i| p.parents(i).is_empty()).collect()
}

/// `(E, D) ↦ (E, D + v0 - v1)` onto `QD_{v1}(Γ)`, verified as a ranked-poset
/// isomorphism. Only for the canonical polarization.
pub fn translate_basepoint(p: &QdPoset, v1: usize) -> Result<(QdPoset, PosetIso), PosetError> {
    if !p.canonical {
        return Err(PosetError::NonCanonical);
    }
    let q = enumerate_qd(&p.graph, v1, &p.polarization)?;
    let mut map = Vec::with_capacity(p.len());
    for el in &p.elements {
        let mut values = el.values.clone();
        values[p.basepoint] += 1;
        values[v1] -= 1;
        let image = PseudoDivisor::new(el.edges, values);
        let j = q.index_of(&image).ok_or_else(|| PosetError::NotIsomorphism(format!("{image} is not in the target")))?;
        map.push(j);
    }
    let iso = PosetIso { map };
    if !iso.verify(&p.ranked, &q.ranked) {
        return Err(PosetError::NotIsomorphism("translation does not preserve covers".into()));
    }
    Ok((q, iso))
}

/// The product decomposition at an articulation vertex.
#[derive(Debug, Clone)]
pub struct ProductSplit {
    pub left: QdPoset,
    pub right: QdPoset,
    pub whole: QdPoset,
    /// `sigma[i * right.len() + j]` is the image of `(left[i], right[j])`.
    pub sigma: Vec<usize>,
}

/// `σ((E1,D1),(E2,D2)) = (E1 ∪ E2, D1 + D2 + v0)`, checked to be an order
/// isomorphism `QD(Γ1) × QD(Γ2) → QD(Γ)` for the canonical polarizations.
pub fn product_split(g: &Graph, v0: &str, g1: &Graph, g2: &Graph) -> Result<ProductSplit, PosetError> {
    if !g.is_pure() {
        return Err(PosetError::NotPure);
    }
    let v = g.vertex_by_id(v0)?;
    validate_split(g, v0, g1, g2)?;
    let left = enumerate_qd_canonical(g1, g1.vertex_by_id(v0)?)?;
    let right = enumerate_qd_canonical(g2, g2.vertex_by_id(v0)?)?;
    let whole = enumerate_qd_canonical(g, v)?;
    let lift = |part: &Graph, pd: &PseudoDivisor, values: &mut Vec<i64>| -> Result<EdgeSet, PosetError> {
        for (i, x) in pd.values.iter().enumerate() {
            values[g.vertex_by_id(part.vertex_id(i))?] += x;
        }
        let ids = part.edge_ids(pd.edges);
        Ok(g.edge_set(&ids)?)
    };
    let mut sigma = Vec::with_capacity(left.len() * right.len());
    for a in left.elements() {
        for b in right.elements() {
            let mut values = vec![0; g.vertex_count()];
            let ea = lift(g1, a, &mut values)?;
            let eb = lift(g2, b, &mut values)?;
            values[v] += 1;
            let image = PseudoDivisor::new(ea.union(eb), values);
            let k = whole.index_of(&image).ok_or_else(|| PosetError::NotIsomorphism(format!("{image} is not quasistable")))?;
            sigma.push(k);
        }
    }
    let (n1, n2) = (left.len(), right.len());
    let mut product_covers = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            for &c in left.children(i) {
                product_covers.push((i * n2 + j, c * n2 + j));
            }
            for &c in right.children(j) {
                product_covers.push((i * n2 + j, i * n2 + c));
            }
        }
    }
    let product = RankedPoset::new(n1 * n2, product_covers)?;
    let iso = PosetIso { map: sigma.clone() };
    if !iso.verify(&product, whole.ranked()) {
        return Err(PosetError::NotIsomorphism("σ does not match the product order".into()));
    }
    Ok(ProductSplit { left, right, whole, sigma })
}

fn validate_split(g: &Graph, v0: &str, g1: &Graph, g2: &Graph) -> Result<(), PosetError> {
    let bad = |m: &str| Err(PosetError::InvalidSplit(m.to_string()));
    if g1.edge_count() == 0 || g2.edge_count() == 0 {
        return bad("both parts need edges");
    }
    let mut seen = vec![0usize; g.edge_count()];
    for part in [g1, g2] {
        for e in part.edges() {
            let Ok(i) = g.edge_by_id(&e.id) else {
                return bad(&format!("edge {} is not in the graph", e.id));
            };
            let ends = e.ends.map(|x| part.vertex_id(x).to_string());
            let orig = g.edge(i).ends.map(|x| g.vertex_id(x).to_string());
            if ends != orig {
                return bad(&format!("edge {} has different ends", e.id));
            }
            seen[i] += 1;
        }
    }
    if seen.iter().any(|&c| c != 1) {
        return bad("edge sets must partition the graph's edges");
    }
    let common: Vec<&str> = g1.vertices().iter().map(|x| x.id.as_str()).filter(|id| g2.vertex_by_id(id).is_ok()).collect();
    if common != [v0] {
        return bad("parts must meet exactly at the split vertex");
    }
    if g1.vertex_count() + g2.vertex_count() != g.vertex_count() + 1 {
        return bad("parts must cover every vertex");
    }
    Ok(())
}

/// Whether `i` and `j` (same edge set `E`) are joined by a zig-zag through
/// common parents of rank `|E| + 1` whose intermediate elements have edge set `E`.
pub fn is_upper_connected(p: &QdPoset, i: usize, j: usize) -> Result<bool, PosetError> {
    let edges = p.element(i).edges;
    if p.element(j).edges != edges {
        return Err(PosetError::DifferentEdgeSets(i, j));
    }
    let mut seen = vec![false; p.len()];
    seen[i] = true;
    let mut queue = VecDeque::from([i]);
    while let Some(x) = queue.pop_front() {
        if x == j {
            return Ok(true);
        }
        for &parent in p.parents(x) {
            for &y in p.children(parent) {
                if !seen[y] && p.element(y).edges == edges {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(false)
}
