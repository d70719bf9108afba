//! Reconstruction of a graph from its poset of quasistable pseudo-divisors.
//!
//! Every step that the theory says is forced ("the unique divisor", "the only
//! copy") is implemented as an exhaustive search followed by an assertion. A
//! failed assertion is returned as a [`Falsifier`] naming the statement it
//! contradicts, so the module doubles as a checker for those statements.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::divisor::{normalize_special, specializes, PseudoDivisor};
use crate::graph::{
    biconnected_components, bridges_and_nd, contract_edges, graph_isomorphic, io, is_weak_cyclic_equivalence,
    special_pairs, EdgeSet, Graph, GraphError, GraphIso, VertexSet,
};
use crate::poset::{enumerate_qd_canonical, poset_isomorphism, PosetError, PosetIso, QdPoset, RankedPoset};

/// A forced step that failed, with the offending instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Falsifier {
    pub statement: String,
    pub detail: String,
    pub instance: Value,
}

impl Falsifier {
    pub fn new(statement: &str, detail: impl Into<String>, instance: Value) -> Self {
        Falsifier { statement: statement.to_string(), detail: detail.into(), instance }
    }

    pub fn to_json(&self) -> Value {
        json!({ "falsifier": self.statement, "detail": self.detail, "instance": self.instance })
    }
}

impl fmt::Display for Falsifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} falsified: {}", self.statement, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TorelliError {
    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Falsified(Falsifier),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl TorelliError {
    pub fn falsifier(&self) -> Option<&Falsifier> {
        match self {
            TorelliError::Falsified(f) => Some(f),
            _ => None,
        }
    }
}

fn falsified(statement: &str, detail: impl Into<String>, instance: Value) -> TorelliError {
    TorelliError::Falsified(Falsifier::new(statement, detail, instance))
}

fn instance(p: &QdPoset, elements: &[usize]) -> Value {
    let g = p.graph();
    json!({
        "graph": io::to_json(g, None),
        "basepoint": g.vertex_id(p.basepoint()),
        "elements": elements.iter().map(|&i| p.element(i).to_json(g)).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// model posets

/// One of the two fixed test posets, with element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelPoset {
    pub name: &'static str,
    pub labels: Vec<&'static str>,
    pub poset: RankedPoset,
}

/// `P`: `α, β` both cover `γ, δ`.
pub fn model_p() -> ModelPoset {
    ModelPoset {
        name: "P",
        labels: vec!["α", "β", "γ", "δ"],
        poset: RankedPoset::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).expect("P is ranked"),
    }
}

/// `R`: `α1` covers `β1..β4`; `β1, β2` cover `γ1, γ2`; `β3, β4` cover `γ3, γ2`.
pub fn model_r() -> ModelPoset {
    let covers = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 5), (2, 6), (3, 7), (3, 6), (4, 7), (4, 6)];
    ModelPoset {
        name: "R",
        labels: vec!["α1", "β1", "β2", "β3", "β4", "γ1", "γ2", "γ3"],
        poset: RankedPoset::new(8, covers).expect("R is ranked"),
    }
}

fn check_mapping(p: &QdPoset, model: &ModelPoset, mapping: &[usize], absolute_rank: bool) -> Result<(), TorelliError> {
    if mapping.len() != model.poset.size() {
        return Err(TorelliError::InvalidMapping(format!("expected {} images", model.poset.size())));
    }
    if let Some(&bad) = mapping.iter().find(|&&x| x >= p.len()) {
        return Err(TorelliError::InvalidMapping(format!("element {bad} is out of range")));
    }
    let distinct: BTreeSet<usize> = mapping.iter().copied().collect();
    if distinct.len() != mapping.len() {
        return Err(TorelliError::InvalidMapping("not injective".into()));
    }
    for &(a, b) in model.poset.covers() {
        if !p.ranked().is_cover(mapping[a], mapping[b]) {
            return Err(TorelliError::InvalidMapping(format!(
                "cover {} > {} is not sent to a cover",
                model.labels[a], model.labels[b]
            )));
        }
    }
    if absolute_rank {
        for (x, &y) in mapping.iter().enumerate() {
            if p.rank(y) != model.poset.rank(x) {
                return Err(TorelliError::InvalidMapping(format!("{} changes rank", model.labels[x])));
            }
        }
    }
    Ok(())
}

/// The vertex `v` with `a = b + v`, if the difference is one chip.
fn unit_difference(a: &[i64], b: &[i64]) -> Option<usize> {
    let mut at = None;
    for (v, (x, y)) in a.iter().zip(b).enumerate() {
        match x - y {
            0 => {}
            1 if at.is_none() => at = Some(v),
            _ => return None,
        }
    }
    at
}

fn shifted(values: &[i64], plus: &[usize], minus: &[usize]) -> Vec<i64> {
    let mut out = values.to_vec();
    for &v in plus {
        out[v] += 1;
    }
    for &v in minus {
        out[v] -= 1;
    }
    out
}

// ---------------------------------------------------------------------------
// images of P

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PCase {
    /// `(E+e1, D), (E+e2, D)` over `(E, D+s), (E, D+t)`.
    Parallel,
    /// `(E+e1+e2, D-t), (E+e1+e2, D-s)` over `(E+e1, D), (E+e2, D)`.
    Square,
}

/// Witnesses of a classified image of `P`. `divisor` holds the values of `D`
/// on original vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PImage {
    pub case: PCase,
    pub e1: usize,
    pub e2: usize,
    pub s: usize,
    pub t: usize,
    pub edges: EdgeSet,
    pub divisor: Vec<i64>,
}

impl PImage {
    /// The displayed family, in the order `α, β, γ, δ`.
    pub fn family(&self) -> [PseudoDivisor; 4] {
        let (e, d) = (self.edges, &self.divisor);
        let (s, t) = (self.s, self.t);
        match self.case {
            PCase::Parallel => [
                PseudoDivisor::new(e.with(self.e1), d.clone()),
                PseudoDivisor::new(e.with(self.e2), d.clone()),
                PseudoDivisor::new(e, shifted(d, &[s], &[])),
                PseudoDivisor::new(e, shifted(d, &[t], &[])),
            ],
            PCase::Square => {
                let top = e.with(self.e1).with(self.e2);
                [
                    PseudoDivisor::new(top, shifted(d, &[], &[t])),
                    PseudoDivisor::new(top, shifted(d, &[], &[s])),
                    PseudoDivisor::new(e.with(self.e1), d.clone()),
                    PseudoDivisor::new(e.with(self.e2), d.clone()),
                ]
            }
        }
    }
}

/// Classify an injective cover-preserving map `P → QD` (images of `α, β, γ, δ`).
pub fn classify_p_image(p: &QdPoset, mapping: &[usize; 4]) -> Result<PImage, TorelliError> {
    check_mapping(p, &model_p(), mapping, false)?;
    let g = p.graph();
    let [a, b, c, d] = mapping.map(|i| p.element(i));
    let fail = |why: &str| falsified("Prop P0", why, instance(p, mapping));
    let single = |set: EdgeSet| if set.len() == 1 { set.first() } else { None };
    let image = if c.edges == d.edges && a.edges != b.edges {
        let e = c.edges;
        let (Some(e1), Some(e2)) = (single(a.edges.difference(e)), single(b.edges.difference(e))) else {
            return Err(fail("tops do not extend the common edge set by one edge each"));
        };
        if a.values != b.values {
            return Err(fail("tops carry different divisors"));
        }
        let (Some(s), Some(t)) = (unit_difference(&c.values, &a.values), unit_difference(&d.values, &a.values)) else {
            return Err(fail("bottoms are not one chip above the tops"));
        };
        PImage { case: PCase::Parallel, e1, e2, s, t, edges: e, divisor: a.values.clone() }
    } else if c.edges != d.edges && a.edges == b.edges {
        let e = c.edges.intersection(d.edges);
        let (Some(e1), Some(e2)) = (single(c.edges.difference(e)), single(d.edges.difference(e))) else {
            return Err(fail("bottoms do not extend their common edge set by one edge each"));
        };
        if c.values != d.values {
            return Err(fail("bottoms carry different divisors"));
        }
        let (Some(t), Some(s)) = (unit_difference(&c.values, &a.values), unit_difference(&c.values, &b.values)) else {
            return Err(fail("tops are not one chip below the bottoms"));
        };
        PImage { case: PCase::Square, e1, e2, s, t, edges: e, divisor: c.values.clone() }
    } else {
        return Err(fail("edge sets match neither displayed family"));
    };
    let ends = |e: usize| {
        let mut x = g.edge(e).ends;
        x.sort_unstable();
        x
    };
    let mut st = [image.s, image.t];
    st.sort_unstable();
    if image.s == image.t || ends(image.e1) != st || ends(image.e2) != st {
        return Err(fail("the two edges are not parallel with ends s, t"));
    }
    let family = image.family();
    for (k, pd) in family.iter().enumerate() {
        if p.element(mapping[k]) != pd {
            return Err(fail(&format!("image of {} differs from the displayed family", model_p().labels[k])));
        }
    }
    Ok(image)
}

/// Every injective cover-preserving map `P → QD`, as image tuples.
pub fn p_images(p: &QdPoset) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if a == b {
                continue;
            }
            let common: Vec<usize> = p.children(a).iter().copied().filter(|c| p.children(b).contains(c)).collect();
            for &c in &common {
                for &d in &common {
                    if c != d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// images of R

/// Witnesses of an image of `R`: `α1 ↦ ({e1, e2}, D)` and `β1 ↦ ({e1}, D - v_e2 + s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RImage {
    pub e1: usize,
    pub e2: usize,
    pub s: usize,
    pub t: usize,
    pub divisor: Vec<i64>,
}

/// `R_{e1,e2}(D)` in the order `α1, β1..β4, γ1..γ3`, with `s` the end of the
/// pair receiving the chip in `β1`. `d` holds the values on original vertices.
pub fn r_family(g: &Graph, e1: usize, e2: usize, s: usize, d: &[i64]) -> Result<[PseudoDivisor; 8], TorelliError> {
    if e1 == e2 || !g.parallel(e1, e2) {
        return Err(TorelliError::Precondition("the two edges must be distinct and parallel".into()));
    }
    let t = g.edge(e1).other_end(s).ok_or_else(|| TorelliError::Precondition("s is not an end of the pair".into()))?;
    let base = EdgeSet::EMPTY;
    Ok([
        PseudoDivisor::new(base.with(e1).with(e2), d.to_vec()),
        PseudoDivisor::new(base.with(e1), shifted(d, &[s], &[])),
        PseudoDivisor::new(base.with(e2), shifted(d, &[s], &[])),
        PseudoDivisor::new(base.with(e1), shifted(d, &[t], &[])),
        PseudoDivisor::new(base.with(e2), shifted(d, &[t], &[])),
        PseudoDivisor::new(base, shifted(d, &[s, s], &[])),
        PseudoDivisor::new(base, shifted(d, &[s, t], &[])),
        PseudoDivisor::new(base, shifted(d, &[t, t], &[])),
    ])
}

/// Indices of `R_{e1,e2}(D)` in `p`, with `s` the first end of `e1`.
pub fn r_subposet(p: &QdPoset, e1: usize, e2: usize, d: &[i64]) -> Result<[usize; 8], TorelliError> {
    let s = p.graph().edge(e1).ends[0];
    let family = r_family(p.graph(), e1, e2, s, d)?;
    let mut out = [0; 8];
    for (k, pd) in family.iter().enumerate() {
        out[k] = p
            .index_of(pd)
            .ok_or_else(|| TorelliError::Precondition(format!("{} is not quasistable", pd.label(p.graph()))))?;
    }
    Ok(out)
}

/// Recover `(e1, e2, D)` from an injective morphism of ranked posets `R → QD`,
/// checking that the image is exactly `R_{e1,e2}(D)`.
pub fn locate_r_image(p: &QdPoset, mapping: &[usize; 8]) -> Result<RImage, TorelliError> {
    check_mapping(p, &model_r(), mapping, true)?;
    let g = p.graph();
    let fail = |why: &str| falsified("Prop image_parallel", why, instance(p, mapping));
    let top = p.element(mapping[0]);
    let b1 = p.element(mapping[1]);
    let Some(e1) = b1.edges.first() else {
        return Err(fail("β1 has no edge"));
    };
    let Some(e2) = top.edges.without(e1).first() else {
        return Err(fail("α1 does not have two edges"));
    };
    if !g.parallel(e1, e2) {
        return Err(fail("the edges of α1 are not parallel"));
    }
    let Some(s) = unit_difference(&b1.values, &top.values) else {
        return Err(fail("β1 is not one chip above α1"));
    };
    let family = r_family(g, e1, e2, s, &top.values).map_err(|_| fail("β1 puts its chip off the pair"))?;
    let image: BTreeSet<&PseudoDivisor> = mapping.iter().map(|&i| p.element(i)).collect();
    let expected: BTreeSet<&PseudoDivisor> = family.iter().collect();
    if image != expected {
        return Err(fail("image differs from R_{e1,e2}(D)"));
    }
    let t = g.edge(e1).other_end(s).expect("checked by r_family");
    Ok(RImage { e1, e2, s, t, divisor: top.values.clone() })
}

/// Every injective morphism of ranked posets `R → QD`, as image tuples.
pub fn r_images(p: &QdPoset) -> Vec<[usize; 8]> {
    let mut out = Vec::new();
    let common = |xs: &[usize]| -> Vec<usize> {
        p.children(xs[0]).iter().copied().filter(|c| xs[1..].iter().all(|x| p.children(*x).contains(c))).collect()
    };
    for a in (0..p.len()).filter(|&a| p.rank(a) == 2) {
        let kids = p.children(a);
        for &b1 in kids {
            for &b2 in kids {
                for &b3 in kids {
                    for &b4 in kids {
                        let bs = [b1, b2, b3, b4];
                        if bs.iter().collect::<BTreeSet<_>>().len() < 4 {
                            continue;
                        }
                        for g2 in common(&bs) {
                            for g1 in common(&[b1, b2]) {
                                for g3 in common(&[b3, b4]) {
                                    if g1 != g2 && g2 != g3 && g1 != g3 {
                                        out.push([a, b1, b2, b3, b4, g1, g2, g3]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// parallel edges

/// Whether some `(E ∖ {e, e0}, D')` lies below both elementary specializations
/// of `pd` over `e`. When it does, `e ∥ e0` is asserted.
pub fn check_parallel_lemma(g: &Graph, pd: &PseudoDivisor, e: usize, e0: usize) -> Result<bool, TorelliError> {
    if !pd.edges.contains(e) || !pd.edges.contains(e0) || e == e0 {
        return Err(TorelliError::Precondition("e and e0 must be distinct edges of E".into()));
    }
    let [s, t] = g.edge(e).ends;
    if s == t {
        return Err(TorelliError::Precondition(format!("{} is a loop", g.edge_id(e))));
    }
    let below = |to: usize| -> BTreeSet<Vec<i64>> {
        let upper = shifted(&pd.values, &[to], &[]);
        g.edge(e0).ends.iter().map(|&x| shifted(&upper, &[x], &[])).collect()
    };
    let found = below(s).intersection(&below(t)).next().is_some();
    if found && !g.parallel(e, e0) {
        let inst = json!({ "graph": io::to_json(g, None), "element": pd.to_json(g), "e": g.edge_id(e), "e0": g.edge_id(e0) });
        return Err(falsified("Lemma parallel_edges", "common lower bound over non-parallel edges", inst));
    }
    Ok(found)
}

/// Counts from [`sweep_special_posets`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub p_parallel: usize,
    pub p_square: usize,
    pub r_images: usize,
    pub parallel_checks: usize,
}

/// Classify every image of `P` and `R` in `p` and run the parallel-edge check
/// on every element; the first unclassified instance is returned as an error.
pub fn sweep_special_posets(p: &QdPoset) -> Result<SweepReport, TorelliError> {
    let mut report = SweepReport::default();
    for m in p_images(p) {
        match classify_p_image(p, &m)?.case {
            PCase::Parallel => report.p_parallel += 1,
            PCase::Square => report.p_square += 1,
        }
    }
    for m in r_images(p) {
        locate_r_image(p, &m)?;
        report.r_images += 1;
    }
    let g = p.graph();
    for pd in p.elements() {
        for e in pd.edges.iter().filter(|&e| !g.edge(e).is_loop()) {
            for e0 in pd.edges.iter().filter(|&x| x != e) {
                check_parallel_lemma(g, pd, e, e0)?;
                report.parallel_checks += 1;
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// edge map and normalization

/// The edge bijection `ND(Γ) → ND(Γ')` induced by a poset isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMap {
    /// `(source, target)` sorted by source.
    pub pairs: Vec<(usize, usize)>,
    pub source_special: Vec<(usize, usize)>,
    pub target_special: Vec<(usize, usize)>,
}

impl EdgeMap {
    pub fn get(&self, e: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == e).map(|p| p.1)
    }

    /// Image of a set of nondisconnecting edges.
    pub fn apply(&self, set: EdgeSet) -> Option<EdgeSet> {
        set.iter().map(|e| self.get(e)).collect()
    }

    pub fn to_json(&self, g: &Graph, h: &Graph) -> Value {
        let map: serde_json::Map<String, Value> =
            self.pairs.iter().map(|&(a, b)| (g.edge_id(a).to_string(), json!(h.edge_id(b)))).collect();
        Value::Object(map)
    }
}

fn verified(p: &QdPoset, q: &QdPoset, f: &PosetIso) -> Result<(), TorelliError> {
    if f.verify(p.ranked(), q.ranked()) {
        Ok(())
    } else {
        Err(TorelliError::InvalidMapping("not a poset isomorphism".into()))
    }
}

fn both(p: &QdPoset, q: &QdPoset, elements: &[usize], f: &PosetIso) -> Value {
    json!({
        "source": instance(p, elements),
        "target": instance(q, &elements.iter().map(|&i| f.map[i]).collect::<Vec<_>>()),
    })
}

fn ordered_by_id(g: &Graph, a: usize, b: usize) -> (usize, usize) {
    if g.edge_id(a) <= g.edge_id(b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// `f_E`: read off the edge sets of images of rank-one elements (rank-two for
/// special pairs), checking independence of the divisor and the weak cyclic
/// equivalence property. Within a special pair the smaller id goes to the
/// smaller id.
pub fn induce_edge_map(p: &QdPoset, q: &QdPoset, f: &PosetIso) -> Result<EdgeMap, TorelliError> {
    verified(p, q, f)?;
    let (g, h) = (p.graph(), q.graph());
    let source_special = special_pairs(g);
    let in_pair = |e: usize| source_special.iter().any(|&(a, b)| a == e || b == e);
    let image_of = |edges: EdgeSet| -> Result<EdgeSet, TorelliError> {
        let members = p.with_edges(edges);
        let mut images = members.iter().map(|&i| q.element(f.map[i]).edges);
        let first = images.next().ok_or_else(|| TorelliError::Precondition("no element with this edge set".into()))?;
        if images.any(|x| x != first) {
            let detail = format!("images of the elements with edges {:?} have different edge sets", g.edge_ids(edges));
            return Err(falsified("Cor special", detail, both(p, q, &members, f)));
        }
        Ok(first)
    };
    let (_, nd) = bridges_and_nd(g);
    let mut pairs = Vec::new();
    for e in nd.iter().filter(|&e| !in_pair(e)) {
        let img = image_of(EdgeSet::singleton(e))?;
        pairs.push((e, img.first().expect("rank is preserved")));
    }
    let mut target_special = Vec::new();
    for &(a, b) in &source_special {
        let img = image_of(EdgeSet::singleton(a).with(b))?.to_vec();
        let (x, y) = ordered_by_id(g, a, b);
        let (x2, y2) = ordered_by_id(h, img[0], img[1]);
        pairs.push((x, x2));
        pairs.push((y, y2));
        target_special.push((img[0], img[1]));
    }
    pairs.sort_unstable();
    target_special.sort_unstable();
    let whole = json!({ "source": io::to_json(g, None), "target": io::to_json(h, None) });
    let actual: BTreeSet<(usize, usize)> = special_pairs(h).into_iter().collect();
    if target_special.iter().any(|p| !actual.contains(p)) || actual.len() != target_special.len() {
        return Err(falsified("Lemma P1_special_pair", "special pairs are not carried to special pairs", whole));
    }
    match is_weak_cyclic_equivalence(&pairs, g, h) {
        Ok(true) => {}
        Ok(false) => return Err(falsified("Prop fE", "edge map is not a weak cyclic equivalence", whole)),
        Err(_) => return Err(falsified("Prop fE", "edge map is not a bijection of nondisconnecting edges", whole)),
    }
    Ok(EdgeMap { pairs, source_special, target_special })
}

/// `h_f(E, D) = (f_E(E), D')` where `D'` agrees with `f(E, D)` on original
/// vertices; checked to be a ranked-poset isomorphism.
pub fn normalize_iso(p: &QdPoset, q: &QdPoset, f: &PosetIso, fe: &EdgeMap) -> Result<PosetIso, TorelliError> {
    verified(p, q, f)?;
    let mut map = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let el = p.element(i);
        let img = q.element(f.map[i]);
        let fail = |why: &str| falsified("Prop fE", why, both(p, q, &[i], f));
        let target = fe.apply(el.edges).ok_or_else(|| fail("edge set leaves the domain of f_E"))?;
        if normalize_special(&fe.target_special, target) != normalize_special(&fe.target_special, img.edges) {
            return Err(fail("image edge set is not equivalent to f_E(E)"));
        }
        let candidate = PseudoDivisor::new(target, img.values.clone());
        map.push(q.index_of(&candidate).ok_or_else(|| fail("no quasistable pseudo-divisor equivalent to the image"))?);
    }
    let h = PosetIso { map };
    if !h.verify(p.ranked(), q.ranked()) {
        return Err(falsified("Prop hf", "h_f is not an isomorphism", json!({ "map": h.map })));
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// vertex stars and bonds

/// Complements of spanning trees of `Γ(V)`, as edge sets of `Γ`, in
/// lexicographic order of their sorted edge indices.
fn local_mnd(g: &Graph, set: VertexSet) -> Vec<EdgeSet> {
    let inner = g.inner_edges(set);
    let keep = set.len().saturating_sub(1);
    let Some(drop) = inner.len().checked_sub(keep) else {
        return Vec::new();
    };
    let mut out: Vec<EdgeSet> = inner
        .subsets()
        .filter(|s| s.len() == drop)
        .filter(|s| {
            let tree = inner.difference(*s);
            g.is_connected_on(set, tree)
        })
        .collect();
    out.sort_by_key(|s| s.to_vec());
    out
}

fn is_local_mnd(g: &Graph, set: VertexSet, edges: EdgeSet) -> bool {
    let inner = g.inner_edges(set);
    edges.is_subset(inner) && {
        let tree = inner.difference(edges);
        tree.len() + 1 == set.len() && g.is_connected_on(set, tree)
    }
}

/// Data recovered around one vertex `v1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStar {
    pub vertex: usize,
    /// The maximally nondisconnecting set `E1` of `Γ ∖ {v1}`.
    pub base_edges: EdgeSet,
    /// Index of `(E1, D1)`.
    pub base: usize,
    /// `(S, index of (E1 ∪ S, D_S))` for each proper subset `S` of the star.
    pub extensions: Vec<(EdgeSet, usize)>,
}

/// Find `(E1, D1)` with `D1(v1) = val(v1) - 1` (one less at the basepoint) and
/// the unique element above it for every proper subset of the star of `v1`.
pub fn recover_vertex_star(p: &QdPoset, v1: usize) -> Result<VertexStar, TorelliError> {
    let g = p.graph();
    if !g.is_pure() || !p.is_canonical() {
        return Err(TorelliError::Precondition("needs a pure graph and the canonical polarization".into()));
    }
    if v1 >= g.vertex_count() || g.vertex_count() < 2 {
        return Err(TorelliError::Precondition("needs a vertex of a graph with two or more vertices".into()));
    }
    let star = g.star(v1);
    let rest = g.all_vertices().without(v1);
    if biconnected_components(g).articulation.contains(&v1)
        || star.iter().any(|e| g.edge(e).is_loop())
        || !g.is_connected_on(rest, g.inner_edges(rest))
    {
        return Err(TorelliError::Precondition(format!("{} is an articulation vertex", g.vertex_id(v1))));
    }
    let base_edges = local_mnd(g, rest)[0];
    let target = g.valence(v1) as i64 - if v1 == p.basepoint() { 2 } else { 1 };
    let candidates: Vec<usize> =
        p.with_edges(base_edges).into_iter().filter(|&i| p.element(i).values[v1] == target).collect();
    let inst = |els: &[usize]| {
        let mut v = instance(p, els);
        v["vertex"] = json!(g.vertex_id(v1));
        v
    };
    let [base] = candidates[..] else {
        let detail = format!("{} elements with the prescribed value at {}", candidates.len(), g.vertex_id(v1));
        return Err(falsified("Lemma vertex", detail, inst(&candidates)));
    };
    let mut extensions = Vec::new();
    for s in star.subsets().filter(|&s| s != star) {
        let above: Vec<usize> = p
            .with_edges(base_edges.union(s))
            .into_iter()
            .filter(|&i| specializes(g, p.element(i), p.element(base)))
            .collect();
        let [one] = above[..] else {
            let detail = format!("{} elements above the base over {:?}", above.len(), g.edge_ids(s));
            return Err(falsified("Lemma vertex", detail, inst(&[&[base][..], &above].concat())));
        };
        extensions.push((s, one));
    }
    Ok(VertexStar { vertex: v1, base_edges, base, extensions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BondOutcome {
    /// A vertex incident to every bond edge (the least such index).
    Vertex(usize),
    HypothesisNotSatisfied(String),
}

/// The two sides of a bond, or `None` if `bond` is not one.
fn bond_sides(g: &Graph, bond: EdgeSet) -> Option<(VertexSet, VertexSet)> {
    if bond.is_empty() {
        return None;
    }
    let rest = g.all_edges().difference(bond);
    let mut side = VertexSet::singleton(0);
    loop {
        let grown = rest.iter().fold(side, |acc, e| {
            let [a, b] = g.edge(e).ends;
            if acc.contains(a) || acc.contains(b) {
                acc.with(a).with(b)
            } else {
                acc
            }
        });
        if grown == side {
            break;
        }
        side = grown;
    }
    let other = g.all_vertices().difference(side);
    let ok = !other.is_empty() && g.induces_connected(other) && g.cut(side) == bond;
    ok.then_some((side, other))
}

/// Given `(E, D)` at index `base` of `q` and a bond, check the uniqueness
/// hypothesis and return a vertex meeting every bond edge.
pub fn bond_vertex_test(q: &QdPoset, base: usize, bond: EdgeSet) -> Result<BondOutcome, TorelliError> {
    let g = q.graph();
    if base >= q.len() {
        return Err(TorelliError::Precondition("base element out of range".into()));
    }
    let (side, other) =
        bond_sides(g, bond).ok_or_else(|| TorelliError::Precondition(format!("{:?} is not a bond", g.edge_ids(bond))))?;
    let edges = q.element(base).edges;
    let (e1, e2) = (edges.intersection(g.inner_edges(side)), edges.intersection(g.inner_edges(other)));
    if e1.union(e2) != edges || !is_local_mnd(g, side, e1) || !is_local_mnd(g, other, e2) {
        return Ok(BondOutcome::HypothesisNotSatisfied(
            "E is not a union of maximally nondisconnecting sets of the two sides".into(),
        ));
    }
    for s in bond.subsets().filter(|&s| s != bond) {
        let above = q
            .with_edges(edges.union(s))
            .into_iter()
            .filter(|&i| specializes(g, q.element(i), q.element(base)))
            .count();
        if above != 1 {
            return Ok(BondOutcome::HypothesisNotSatisfied(format!(
                "{above} elements above the base over {:?}",
                g.edge_ids(s)
            )));
        }
    }
    match (0..g.vertex_count()).find(|&v| bond.is_subset(g.star(v))) {
        Some(v) => Ok(BondOutcome::Vertex(v)),
        None => {
            let mut inst = instance(q, &[base]);
            inst["bond"] = json!(g.edge_ids(bond));
            Err(falsified("Lemma bond", "no vertex meets every bond edge", inst))
        }
    }
}

// ---------------------------------------------------------------------------
// reconstruction

fn is_biconnected(g: &Graph) -> bool {
    biconnected_components(g).components.len() <= 1
}

/// A graph isomorphism `Γ → Γ'` rebuilt from a poset isomorphism, for
/// biconnected pure graphs. The result is verified before it is returned.
pub fn reconstruct_biconnected(p: &QdPoset, q: &QdPoset, f: &PosetIso) -> Result<GraphIso, TorelliError> {
    let (g, h) = (p.graph(), q.graph());
    if !g.is_pure() || !h.is_pure() || !p.is_canonical() || !q.is_canonical() {
        return Err(TorelliError::Precondition("needs pure graphs and canonical polarizations".into()));
    }
    if !is_biconnected(g) || !is_biconnected(h) {
        return Err(TorelliError::Precondition("both graphs must be biconnected".into()));
    }
    let fe = induce_edge_map(p, q, f)?;
    let whole = || json!({ "source": io::to_json(g, None), "target": io::to_json(h, None), "edge_map": fe.to_json(g, h) });
    let fail = |why: &str| falsified("Thm main1-biconnected", why, whole());
    let iso = if g.vertex_count() <= 2 || h.vertex_count() <= 2 {
        if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
            return Err(fail("small graphs with different vertex or edge counts"));
        }
        // a single bridge is the only edge outside the domain of f_E here
        let edge_map = (0..g.edge_count()).map(|e| fe.get(e).unwrap_or(0)).collect();
        GraphIso { vertex_map: (0..g.vertex_count()).collect(), edge_map }
    } else {
        let hf = normalize_iso(p, q, f, &fe)?;
        let mut vertex_map = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let star = recover_vertex_star(p, v)?;
            let bond = fe.apply(g.star(v)).ok_or_else(|| fail("star leaves the domain of f_E"))?;
            match bond_vertex_test(q, hf.map[star.base], bond)? {
                BondOutcome::Vertex(w) if h.star(w) == bond => vertex_map.push(w),
                BondOutcome::Vertex(w) => {
                    return Err(fail(&format!("image of the star of {} is not the star of {}", g.vertex_id(v), h.vertex_id(w))))
                }
                BondOutcome::HypothesisNotSatisfied(why) => return Err(fail(&format!("image of a vertex star: {why}"))),
            }
        }
        let edge_map = (0..g.edge_count()).map(|e| fe.get(e).expect("bridgeless")).collect();
        GraphIso { vertex_map, edge_map }
    };
    if !iso.verify(g, h) {
        return Err(fail("reconstructed maps are not a graph isomorphism"));
    }
    Ok(iso)
}

// ---------------------------------------------------------------------------
// comparison

/// Outcome of comparing two graphs through their posets and through their
/// biconnected components.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub poset_isomorphic: bool,
    pub components_match: bool,
    pub agree: bool,
    pub witness: Value,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "poset_isomorphic": self.poset_isomorphic,
            "components_match": self.components_match,
            "agree": self.agree,
            "witness": self.witness,
        })
    }
}

/// The pure graph with all bridges contracted.
pub fn reduce(g: &Graph) -> Result<Graph, GraphError> {
    let pure = g.purified();
    let (bridges, _) = bridges_and_nd(&pure);
    Ok(contract_edges(&pure, bridges)?.target)
}

/// Pair each component of `a` with an isomorphic unused component of `b`.
pub fn match_components(a: &[Graph], b: &[Graph]) -> Option<Vec<(usize, usize)>> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut out = Vec::with_capacity(a.len());
    for (i, x) in a.iter().enumerate() {
        let j = (0..b.len()).find(|&j| !used[j] && graph_isomorphic(x, &b[j]).is_some())?;
        used[j] = true;
        out.push((i, j));
    }
    Some(out)
}

/// Decide `QD(Γ) ≅ QD(Γ')` and, independently, whether the biconnected
/// components of the bridge-contracted pure graphs match. When the posets are
/// isomorphic the edge map and normalized isomorphism are also built, and for
/// biconnected inputs the graph isomorphism is reconstructed.
pub fn torelli_compare(g: &Graph, h: &Graph) -> Result<Verdict, TorelliError> {
    let (rg, rh) = (reduce(g)?, reduce(h)?);
    let p = enumerate_qd_canonical(&rg, rg.least_vertex())?;
    let q = enumerate_qd_canonical(&rh, rh.least_vertex())?;
    let f = poset_isomorphism(p.ranked(), q.ranked());
    let comps = |x: &Graph| -> Vec<Graph> { biconnected_components(x).components.into_iter().map(|c| c.graph).collect() };
    let (cg, ch) = (comps(&rg), comps(&rh));
    let matching = match_components(&cg, &ch);
    let mut witness = json!({
        "reduced": [io::to_json(&rg, None), io::to_json(&rh, None)],
        "sizes": [p.len(), q.len()],
        "components": [cg.len(), ch.len()],
        "component_pairs": matching,
    });
    if let Some(f) = &f {
        let fe = induce_edge_map(&p, &q, f)?;
        normalize_iso(&p, &q, f, &fe)?;
        witness["poset_iso"] = json!(f.map);
        witness["edge_map"] = fe.to_json(&rg, &rh);
        if cg.len() <= 1 && ch.len() <= 1 {
            let iso = reconstruct_biconnected(&p, &q, f)?;
            let vertices: serde_json::Map<String, Value> = iso
                .vertex_map
                .iter()
                .enumerate()
                .map(|(v, &w)| (rg.vertex_id(v).to_string(), json!(rh.vertex_id(w))))
                .collect();
            witness["vertex_map"] = Value::Object(vertices);
        }
    }
    let poset_isomorphic = f.is_some();
    let components_match = matching.is_some();
    Ok(Verdict { poset_isomorphic, components_match, agree: poset_isomorphic == components_match, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::poset::translate_basepoint;

    fn qd(g: &Graph) -> QdPoset {
        enumerate_qd_canonical(g, g.least_vertex()).unwrap()
    }

    #[test]
    fn model_shapes() {
        let p = model_p();
        assert_eq!(p.poset.rank_histogram(), vec![2, 2]);
        assert_eq!(p.poset.covers().len(), 4);
        let r = model_r();
        assert_eq!(r.poset.rank_histogram(), vec![3, 4, 1]);
        assert_eq!(r.poset.covers().len(), 12);
    }

    #[test]
    fn twocyc_is_a_parallel_p() {
        let p = qd(&twocyc());
        // elements: (∅,[-1,1]), (∅,[0,0]), ({e1},[-1,0]), ({e2},[-1,0])
        let img = classify_p_image(&p, &[2, 3, 1, 0]).unwrap();
        assert_eq!(img.case, PCase::Parallel);
        assert_eq!((img.e1, img.e2, img.edges), (0, 1, EdgeSet::EMPTY));
        assert!(matches!(classify_p_image(&p, &[2, 2, 1, 0]), Err(TorelliError::InvalidMapping(_))));
        assert_eq!(p_images(&p).len(), 4);
        assert!(r_images(&p).is_empty());
    }

    #[test]
    fn dumb_square_and_r() {
        let g = dumb();
        let p = qd(&g);
        let pair = EdgeSet::singleton(0).with(1);
        let top = p.with_edges(pair);
        assert!(!top.is_empty());
        for &i in &top {
            let r = r_subposet(&p, 0, 1, &p.element(i).values).unwrap();
            let found = locate_r_image(&p, &r).unwrap();
            assert_eq!((found.e1, found.e2, found.divisor.clone()), (0, 1, p.element(i).values.clone()));
        }
        let report = sweep_special_posets(&p).unwrap();
        assert_eq!((report.p_square, report.r_images), (0, 8));
        // four parallel edges: rank-two elements share edge sets
        let banana = Graph::from_edges(&[("a", "s", "t"), ("b", "s", "t"), ("c", "s", "t"), ("d", "s", "t")]);
        let report = sweep_special_posets(&qd(&banana)).unwrap();
        assert_eq!((report.p_parallel, report.p_square, report.r_images), (192, 24, 96));
    }

    #[test]
    fn parallel_lemma_examples() {
        let g = dumb();
        let p = qd(&g);
        let i = p.with_edges(EdgeSet::singleton(0).with(1))[0];
        assert!(check_parallel_lemma(&g, p.element(i), 0, 1).unwrap());
        let t = triangle();
        let pd = PseudoDivisor::new(EdgeSet::singleton(0).with(1), vec![0, -1, -1]);
        assert!(!check_parallel_lemma(&t, &pd, 0, 1).unwrap());
        let l = loop_pendant();
        let pd = PseudoDivisor::new(EdgeSet::singleton(0).with(1), vec![0, -1]);
        assert!(matches!(check_parallel_lemma(&l, &pd, 0, 1), Err(TorelliError::Precondition(_))));
    }

    #[test]
    fn edge_maps() {
        let t = qd(&triangle());
        let id = PosetIso::identity(t.len());
        let fe = induce_edge_map(&t, &t, &id).unwrap();
        assert!(fe.pairs.iter().all(|&(a, b)| a == b));
        assert_eq!(normalize_iso(&t, &t, &id, &fe).unwrap(), id);
        let c = qd(&twocyc());
        let (c2, iso) = translate_basepoint(&c, 1).unwrap();
        let fe = induce_edge_map(&c, &c2, &iso).unwrap();
        assert_eq!(fe.pairs.len(), 2);
    }

    #[test]
    fn dumb_swap_is_normalized() {
        let p = qd(&dumb());
        // swap e1 and e2: a graph automorphism, so a poset automorphism
        let map: Vec<usize> = (0..p.len())
            .map(|i| {
                let el = p.element(i);
                let mut edges = el.edges;
                if edges.contains(0) != edges.contains(1) {
                    edges = if edges.contains(0) { edges.without(0).with(1) } else { edges.without(1).with(0) };
                }
                p.index_of(&PseudoDivisor::new(edges, el.values.clone())).unwrap()
            })
            .collect();
        let f = PosetIso { map };
        assert!(f.verify(p.ranked(), p.ranked()));
        let fe = induce_edge_map(&p, &p, &f).unwrap();
        let h = normalize_iso(&p, &p, &f, &fe).unwrap();
        for i in 0..p.len() {
            assert_eq!(p.element(h.map[i]).edges, fe.apply(p.element(i).edges).unwrap());
        }
    }

    #[test]
    fn vertex_stars() {
        let t = triangle();
        let p = qd(&t);
        let y = t.vertex_by_id("y").unwrap();
        let star = recover_vertex_star(&p, y).unwrap();
        assert_eq!(star.base_edges, EdgeSet::EMPTY);
        let d1 = p.element(star.base);
        assert_eq!(d1.values[y], 1);
        assert_eq!(d1.degree(), 0);
        let x = recover_vertex_star(&p, 0).unwrap();
        assert_eq!(p.element(x.base).values[0], 0);
        let th = theta();
        let pt = qd(&th);
        let s = recover_vertex_star(&pt, th.vertex_by_id("t").unwrap()).unwrap();
        assert_eq!(pt.element(s.base).values[1], 2);
        let tt = two_triangles();
        let v = tt.vertex_by_id("v").unwrap();
        assert!(matches!(recover_vertex_star(&qd(&tt), v), Err(TorelliError::Precondition(_))));
    }

    #[test]
    fn bonds() {
        let t = triangle();
        let p = qd(&t);
        for v in 0..3 {
            let star = recover_vertex_star(&p, v).unwrap();
            assert_eq!(bond_vertex_test(&p, star.base, t.star(v)).unwrap(), BondOutcome::Vertex(v));
        }
        let th = theta();
        let pt = qd(&th);
        let hits: Vec<BondOutcome> = pt
            .with_edges(EdgeSet::EMPTY)
            .into_iter()
            .map(|i| bond_vertex_test(&pt, i, th.all_edges()).unwrap())
            .collect();
        assert!(hits.iter().any(|o| matches!(o, BondOutcome::Vertex(0 | 1))));
        let c = four_cycle();
        let pc = qd(&c);
        let bond = c.edge_set(&["pq", "rs"]).unwrap();
        for i in pc.with_edges(EdgeSet::EMPTY) {
            assert!(matches!(bond_vertex_test(&pc, i, bond).unwrap(), BondOutcome::HypothesisNotSatisfied(_)));
        }
        assert!(matches!(bond_vertex_test(&pc, 0, c.edge_set(&["pq"]).unwrap()), Err(TorelliError::Precondition(_))));
    }

    #[test]
    fn reconstructions() {
        let t = triangle();
        let relabeled = Graph::from_edges(&[("a", "p", "q"), ("b", "q", "r"), ("c", "p", "r")]);
        let (p, q) = (qd(&t), qd(&relabeled));
        let f = poset_isomorphism(p.ranked(), q.ranked()).unwrap();
        assert!(reconstruct_biconnected(&p, &q, &f).unwrap().verify(&t, &relabeled));
        for g in [theta(), loop_graph(), twocyc(), k4()] {
            let p = qd(&g);
            let f = poset_isomorphism(p.ranked(), p.ranked()).unwrap();
            assert!(reconstruct_biconnected(&p, &p, &f).unwrap().verify(&g, &g));
        }
    }

    #[test]
    fn compare_examples() {
        let v = torelli_compare(&triangle_pendant("x"), &triangle_pendant("y")).unwrap();
        assert!(v.poset_isomorphic && v.components_match && v.agree);
        let v = torelli_compare(&triangle(), &theta()).unwrap();
        assert!(!v.poset_isomorphic && !v.components_match && v.agree);
        let v = torelli_compare(&whitney_a(), &whitney_b()).unwrap();
        assert!(!v.poset_isomorphic && !v.components_match && v.agree, "{:?}", v.witness);
    }
}
