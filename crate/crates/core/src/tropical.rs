//! Metric graphs and the cell complex `J^qs` of their tropical Jacobians.
//!
//! The complex has one box `∏_{e∈E} [0, ℓ(e)]` per quasistable pseudo-divisor
//! `(E, D)` and one facet attachment per cover. It is kept combinatorial: cells
//! and attachments, no realized quotient space. The coordinate `x_e` measures
//! the distance of `v_e` from the first end of `e`, so a cover sending `v_e`
//! to the first end glues along `x_e = 0` and to the second along `x_e = ℓ(e)`.

use serde_json::{json, Value};

use crate::graph::{biconnected_components, bridges_and_nd, graph_isomorphic_by, io, Graph, GraphError};
use crate::poset::{enumerate_qd_canonical, poset_isomorphism_labeled, PosetError, QdPoset};
use crate::scalar::{Rational, Scalar};
use crate::torelli::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    #[error("{found} lengths for {expected} edges")]
    LengthCount { expected: usize, found: usize },
    #[error("edge {0:?} has a nonpositive length")]
    NonPositive(String),
    #[error("the underlying graph must be pure")]
    NotPure,
    #[error("curve has bridges: {0:?}")]
    Bridged(Vec<String>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A graph with a positive length on every edge (by edge index).
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph<T> {
    graph: Graph,
    lengths: Vec<T>,
}

impl<T: Scalar> MetricGraph<T> {
    pub fn new(graph: Graph, lengths: Vec<T>) -> Result<Self, TropicalError> {
        if lengths.len() != graph.edge_count() {
            return Err(TropicalError::LengthCount { expected: graph.edge_count(), found: lengths.len() });
        }
        if let Some(e) = lengths.iter().position(|l| *l <= T::zero()) {
            return Err(TropicalError::NonPositive(graph.edge_id(e).to_string()));
        }
        Ok(MetricGraph { graph, lengths })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    pub fn length(&self, e: usize) -> &T {
        &self.lengths[e]
    }

    pub fn total_length(&self) -> T {
        self.lengths.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

impl MetricGraph<Rational> {
    /// Graph JSON with a length on every edge.
    pub fn to_json(&self) -> Value {
        io::to_json(&self.graph, Some(&self.lengths))
    }
}

/// Suppress every weight-zero vertex of valence two that is not the base of
/// the one-vertex loop, concatenating the two edges. The merged edge keeps
/// the id and position of the lower-indexed edge.
pub fn canonical_model<T: Scalar>(x: &MetricGraph<T>) -> MetricGraph<T> {
    let mut current = x.clone();
    while let Some(next) = suppress_one(&current) {
        current = next;
    }
    current
}

fn suppress_one<T: Scalar>(x: &MetricGraph<T>) -> Option<MetricGraph<T>> {
    let g = &x.graph;
    let v = (0..g.vertex_count()).find(|&v| {
        let star = g.star(v);
        g.vertex(v).weight == 0 && g.valence(v) == 2 && star.len() == 2
    })?;
    let [a, b] = {
        let s = g.star(v).to_vec();
        [s[0], s[1]]
    };
    let far = |e: usize| g.edge(e).other_end(v).expect("incident");
    // orient the merged edge like `a`, extended through `v` along `b`
    let (start, end) = if g.edge(a).ends[1] == v { (far(a), far(b)) } else { (far(b), far(a)) };
    let mut lengths = Vec::with_capacity(g.edge_count() - 1);
    let mut edges = Vec::with_capacity(g.edge_count() - 1);
    for (i, e) in g.edges().iter().enumerate() {
        if i == b {
            continue;
        }
        if i == a {
            edges.push((e.id.clone(), g.vertex_id(start).to_string(), g.vertex_id(end).to_string()));
            lengths.push(x.lengths[a].clone() + x.lengths[b].clone());
        } else {
            edges.push((e.id.clone(), g.vertex_id(e.ends[0]).to_string(), g.vertex_id(e.ends[1]).to_string()));
            lengths.push(x.lengths[i].clone());
        }
    }
    let vertices = g.vertices().iter().enumerate().filter(|&(i, _)| i != v).map(|(_, w)| (w.id.clone(), w.weight));
    let graph = Graph::new(vertices, edges).expect("suppression keeps the graph connected");
    Some(MetricGraph { graph, lengths })
}

/// One box `∏_{e∈E} [0, ℓ(e)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell<T> {
    /// Index of the pseudo-divisor in the poset.
    pub element: usize,
    /// `(edge, ℓ(edge))` for `e ∈ E`, by edge index.
    pub sides: Vec<(usize, T)>,
    pub volume: T,
}

impl<T> Cell<T> {
    pub fn dim(&self) -> usize {
        self.sides.len()
    }
}

/// A facet gluing: `child` is the face `x_edge = 0` (side 0) or
/// `x_edge = ℓ(edge)` (side 1) of `parent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attachment {
    pub parent: usize,
    pub child: usize,
    pub edge: usize,
    pub side: u8,
}

#[derive(Debug, Clone)]
pub struct JacobianComplex<T> {
    pub poset: QdPoset,
    pub cells: Vec<Cell<T>>,
    pub attachments: Vec<Attachment>,
}

/// Cells and attachments of `J^qs_{v0}(X)` for the given model.
pub fn build_jacobian_complex<T: Scalar>(x: &MetricGraph<T>, v0: usize) -> Result<JacobianComplex<T>, TropicalError> {
    if !x.graph.is_pure() {
        return Err(TropicalError::NotPure);
    }
    let poset = enumerate_qd_canonical(&x.graph, v0)?;
    let cells = poset
        .elements()
        .iter()
        .enumerate()
        .map(|(i, pd)| {
            let sides: Vec<(usize, T)> = pd.edges.iter().map(|e| (e, x.lengths[e].clone())).collect();
            let volume = sides.iter().fold(T::one(), |acc, (_, l)| acc * l.clone());
            Cell { element: i, sides, volume }
        })
        .collect();
    let attachments = poset
        .covers()
        .iter()
        .map(|c| Attachment {
            parent: c.parent,
            child: c.child,
            edge: c.edge,
            side: if x.graph.edge(c.edge).ends[0] == c.to { 0 } else { 1 },
        })
        .collect();
    Ok(JacobianComplex { poset, cells, attachments })
}

impl<T: Scalar> JacobianComplex<T> {
    /// Number of cells of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cells.iter().map(Cell::dim).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for c in &self.cells {
            out[c.dim()] += 1;
        }
        out
    }

    /// Cells that are not a facet of another cell.
    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.poset.parents(i).is_empty()).collect()
    }

    /// `{"cells":[...],"attachments":[[parent,child,{"edge":id,"side":"0|1"}]]}`.
    pub fn to_json(&self) -> Value {
        let g = self.poset.graph();
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                let sides: serde_json::Map<String, Value> =
                    c.sides.iter().map(|(e, l)| (g.edge_id(*e).to_string(), json!(l.to_wire()))).collect();
                json!({ "element": c.element, "dim": c.dim(), "sides": sides, "volume": c.volume.to_wire() })
            })
            .collect();
        let attachments: Vec<Value> = self
            .attachments
            .iter()
            .map(|a| json!([a.parent, a.child, { "edge": g.edge_id(a.edge), "side": a.side.to_string() }]))
            .collect();
        json!({ "cells": cells, "attachments": attachments })
    }
}

/// Sum of the volumes of the maximal cells.
pub fn top_volume<T: Scalar>(j: &JacobianComplex<T>) -> T {
    j.maximal_cells().into_iter().fold(T::zero(), |acc, i| acc + j.cells[i].volume.clone())
}

// Dense indices for the distinct lengths of both curves, so that labels are `Ord`
// even when `T` is only `PartialEq`.
fn length_classes<T: Scalar>(a: &[T], b: &[T]) -> (Vec<usize>, Vec<usize>) {
    let mut seen: Vec<T> = Vec::new();
    let mut class = |l: &T| match seen.iter().position(|x| x == l) {
        Some(i) => i,
        None => {
            seen.push(l.clone());
            seen.len() - 1
        }
    };
    let ca = a.iter().map(&mut class).collect();
    let cb = b.iter().map(&mut class).collect();
    (ca, cb)
}

fn components<T: Scalar>(x: &MetricGraph<T>) -> Vec<MetricGraph<T>> {
    biconnected_components(&x.graph)
        .components
        .into_iter()
        .map(|c| {
            let lengths = c.edges.iter().map(|&e| x.lengths[e].clone()).collect();
            canonical_model(&MetricGraph { graph: c.graph, lengths })
        })
        .collect()
}

fn metric_isomorphic<T: Scalar>(a: &MetricGraph<T>, b: &MetricGraph<T>) -> bool {
    let (la, lb) = length_classes(&a.lengths, &b.lengths);
    graph_isomorphic_by(&a.graph, &b.graph, &la, &lb).is_some()
}

/// Compare two bridgeless curves through their Jacobian complexes (poset
/// isomorphism matching side-length multisets) and through their biconnected
/// components as metric graphs.
pub fn tropical_torelli_compare<T: Scalar>(x: &MetricGraph<T>, y: &MetricGraph<T>) -> Result<Verdict, TropicalError> {
    let (cx, cy) = (canonical_model(x), canonical_model(y));
    for c in [&cx, &cy] {
        if !c.graph.is_pure() {
            return Err(TropicalError::NotPure);
        }
        let (bridges, _) = bridges_and_nd(&c.graph);
        if !bridges.is_empty() {
            return Err(TropicalError::Bridged(c.graph.edge_ids(bridges)));
        }
    }
    let jx = build_jacobian_complex(&cx, cx.graph.least_vertex())?;
    let jy = build_jacobian_complex(&cy, cy.graph.least_vertex())?;
    let (lx, ly) = length_classes(&cx.lengths, &cy.lengths);
    let label = |j: &JacobianComplex<T>, classes: &[usize]| -> Vec<Vec<usize>> {
        j.cells
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.sides.iter().map(|(e, _)| classes[*e]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    };
    let iso = poset_isomorphism_labeled(jx.poset.ranked(), &label(&jx, &lx), jy.poset.ranked(), &label(&jy, &ly));
    let (kx, ky) = (components(&cx), components(&cy));
    let mut used = vec![false; ky.len()];
    let mut pairs = Vec::new();
    let mut matched = kx.len() == ky.len();
    for (i, a) in kx.iter().enumerate() {
        if !matched {
            break;
        }
        match (0..ky.len()).find(|&j| !used[j] && metric_isomorphic(a, &ky[j])) {
            Some(j) => {
                used[j] = true;
                pairs.push((i, j));
            }
            None => matched = false,
        }
    }
    let witness = json!({
        "canonical": [io::to_json(&cx.graph, None), io::to_json(&cy.graph, None)],
        "fvectors": [jx.f_vector(), jy.f_vector()],
        "volumes": [top_volume(&jx).to_wire(), top_volume(&jy).to_wire()],
        "complex_iso": iso.as_ref().map(|f| f.map.clone()),
        "component_pairs": if matched { Some(pairs) } else { None },
    });
    let poset_isomorphic = iso.is_some();
    Ok(Verdict { poset_isomorphic, components_match: matched, agree: poset_isomorphic == matched, witness })
}
