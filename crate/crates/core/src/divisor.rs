//! Divisors, pseudo-divisors, polarizations and quasistability.
//!
//! A [`PseudoDivisor`] stores its edge set and its values on the original
//! vertices only; the value at every exceptional vertex is implicitly 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::graph::{hemispheres, special_pairs, subdivide, EdgeSet, Graph, SpecializationMap, VertexSet};
use crate::scalar::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("carrier mismatch: expected {expected} vertices, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("polarization total {0} is not an integer")]
    NonIntegerDegree(Rational),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("polarization document: {0}")]
    Format(String),
}

/// Integer values on the vertices of a carrier graph, by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `D(V)`.
    pub fn on(&self, set: VertexSet) -> i64 {
        set.iter().map(|v| self.0[v]).sum()
    }
}

/// Rational vertex values with an integer total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    values: Vec<Rational>,
    degree: i64,
}

impl Polarization {
    pub fn new(values: Vec<Rational>) -> Result<Self, DivisorError> {
        let total: Rational = values.iter().cloned().sum();
        if !total.is_integer() {
            return Err(DivisorError::NonIntegerDegree(total));
        }
        Ok(Polarization { degree: total.to_integer(), values })
    }

    /// `μ_can(v) = w(v) + loops(v) - 1 + val_nonloop(v)/2`, of degree `g - 1`.
    pub fn canonical(g: &Graph) -> Self {
        let values = (0..g.vertex_count())
            .map(|v| {
                let loops = g.loops_at(v) as i64;
                let nonloop = g.valence(v) as i64 - 2 * loops;
                Rational::from_integer(g.vertex(v).weight as i64 + loops - 1) + Rational::new(nonloop, 2)
            })
            .collect();
        Polarization::new(values).expect("canonical polarization has integer degree")
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `μ(V)`.
    pub fn on(&self, set: VertexSet) -> Rational {
        set.iter().map(|v| self.values[v]).sum()
    }

    pub fn is_canonical_for(&self, g: &Graph) -> bool {
        *self == Polarization::canonical(g)
    }

    /// `{vertex-id:"p/q",...}` covering every vertex of `g`.
    pub fn from_json(g: &Graph, value: &serde_json::Value) -> Result<Self, DivisorError> {
        let bad = |m: String| DivisorError::Format(m);
        let map = value.as_object().ok_or_else(|| bad("expected an object".into()))?;
        let mut values = vec![None; g.vertex_count()];
        for (id, x) in map {
            let v = g.vertex_by_id(id).map_err(|_| bad(format!("unknown vertex {id:?}")))?;
            let q = match x {
                serde_json::Value::String(s) => parse_rational(s).map_err(|e| bad(format!("{id}: {e}")))?,
                serde_json::Value::Number(n) => {
                    Rational::from_integer(n.as_i64().ok_or_else(|| bad(format!("{id}: not an integer")))?)
                }
                _ => return Err(bad(format!("{id}: expected \"p/q\""))),
            };
            values[v] = Some(q);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| bad(format!("missing vertex {:?}", g.vertex_id(v)))))
            .collect::<Result<Vec<_>, _>>()?;
        Polarization::new(values)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(v, x)| (g.vertex_id(v).to_string(), serde_json::Value::String(x.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// `β(V) = D(V) - μ(V) + δ_V/2` on the carrier graph `g`.
pub fn beta(g: &Graph, d: &Divisor, mu: &Polarization, set: VertexSet) -> Result<Rational, DivisorError> {
    for len in [d.0.len(), mu.values.len()] {
        if len != g.vertex_count() {
            return Err(DivisorError::CarrierMismatch { expected: g.vertex_count(), found: len });
        }
    }
    if let Some(v) = set.iter().find(|&v| v >= g.vertex_count()) {
        return Err(DivisorError::VertexOutOfRange(v));
    }
    Ok(Rational::from_integer(d.on(set)) - mu.on(set) + Rational::new(g.cut(set).len() as i64, 2))
}

/// `μ^E` on `Γ^E` (zero on exceptional vertices, in [`subdivide`] order) and
/// `μ_E(v) = μ(v) - val_E(v)/2` on `Γ_E`.
pub fn induced_polarizations(g: &Graph, mu: &Polarization, subset: EdgeSet) -> (Polarization, Polarization) {
    let mut up = mu.values.clone();
    up.extend(std::iter::repeat_n(Rational::zero(), subset.len()));
    let down = (0..g.vertex_count())
        .map(|v| mu.values[v] - Rational::new(g.valence_in(v, subset) as i64, 2))
        .collect();
    (Polarization::new(up).expect("same degree"), Polarization::new(down).expect("degree drops by |E|"))
}

/// A pseudo-divisor `(E, D)`: values on original vertices, 1 on each `v@e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PseudoDivisor {
    pub edges: EdgeSet,
    pub values: Vec<i64>,
}

impl PseudoDivisor {
    pub fn new(edges: EdgeSet, values: Vec<i64>) -> Self {
        PseudoDivisor { edges, values }
    }

    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    /// Total degree including the exceptional vertices.
    pub fn degree(&self) -> i64 {
        self.values.iter().sum::<i64>() + self.edges.len() as i64
    }

    /// The divisor on `Γ^E`, in [`subdivide`] vertex order.
    pub fn on_subdivision(&self) -> Divisor {
        let mut v = self.values.clone();
        v.extend(std::iter::repeat_n(1, self.edges.len()));
        Divisor(v)
    }

    /// Ordering key: rank, then edge indices, then values.
    pub fn sort_key(&self) -> (usize, Vec<usize>, &[i64]) {
        (self.edges.len(), self.edges.to_vec(), &self.values)
    }

    /// `(E | divisor)` with ids, e.g. `({e1} | s=-1 t=0 v@e1=1)`.
    pub fn label(&self, g: &Graph) -> String {
        let edges = g.edge_ids(self.edges).join(",");
        let mut parts: Vec<String> = self.values.iter().enumerate().map(|(v, x)| format!("{}={x}", g.vertex_id(v))).collect();
        parts.extend(self.edges.iter().map(|e| format!("v@{}=1", g.edge_id(e))));
        format!("({{{edges}}} | {})", parts.join(" "))
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let mut divisor = BTreeMap::new();
        for (v, x) in self.values.iter().enumerate() {
            divisor.insert(g.vertex_id(v).to_string(), *x);
        }
        for e in self.edges.iter() {
            divisor.insert(crate::graph::exceptional_vertex_id(g.edge_id(e)), 1);
        }
        serde_json::json!({ "edges": g.edge_ids(self.edges), "divisor": divisor })
    }

    /// Inverse of [`PseudoDivisor::to_json`]; missing vertices read as 0.
    pub fn from_json(g: &Graph, value: &serde_json::Value) -> Option<Self> {
        let ids: Vec<String> = value.get("edges")?.as_array()?.iter().map(|x| x.as_str().map(str::to_string)).collect::<Option<_>>()?;
        let edges = g.edge_set(&ids).ok()?;
        let map = value.get("divisor")?.as_object()?;
        let mut values = vec![0; g.vertex_count()];
        for (k, x) in map {
            let x = x.as_i64()?;
            match g.vertex_by_id(k) {
                Ok(v) => values[v] = x,
                Err(_) => {
                    let e = k.strip_prefix("v@").and_then(|id| g.edge_by_id(id).ok())?;
                    if !edges.contains(e) || x != 1 {
                        return None;
                    }
                }
            }
        }
        Some(PseudoDivisor { edges, values })
    }
}

impl fmt::Display for PseudoDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.edges, self.values)
    }
}

/// Quasistability of `pd`: `β ≥ 0` on every hemisphere of `Γ^E`, strictly
/// when `v0` is outside.
pub fn is_quasistable(g: &Graph, v0: usize, mu: &Polarization, pd: &PseudoDivisor) -> bool {
    let Ok(sub) = subdivide(g, pd.edges) else {
        return false;
    };
    let (mu_up, _) = induced_polarizations(g, mu, pd.edges);
    let d = pd.on_subdivision();
    if d.degree() != mu.degree() {
        return false;
    }
    hemispheres(&sub.graph).into_iter().all(|set| {
        let b = beta(&sub.graph, &d, &mu_up, set).expect("carrier built here");
        if set.contains(v0) {
            b >= Rational::zero()
        } else {
            b > Rational::zero()
        }
    })
}

/// Integer constraints `D(V) ≥ bound(V)` on original vertices equivalent to
/// quasistability of `(E, D)`.
///
/// For fixed original part `V`, the least `β` over all choices of exceptional
/// vertices is `D(V) - μ(V) + |E ∩ E(V,V)| + δ_V/2`, so each nonempty `V ⊆ V(Γ)`
/// gives one bound.
#[derive(Debug, Clone)]
pub struct QsConstraints {
    n: usize,
    /// `bound[mask]` for nonempty masks.
    bound: Vec<i64>,
    total: i64,
}

impl QsConstraints {
    pub fn new(g: &Graph, v0: usize, mu: &Polarization, subset: EdgeSet) -> Self {
        let n = g.vertex_count();
        assert!(n < 31, "exhaustive vertex-subset bounds need fewer than 31 vertices");
        let mut bound = vec![i64::MIN; 1 << n];
        for mask in 1u64..(1u64 << n) {
            let set = VertexSet(mask);
            let inner = g.inner_edges(set).intersection(subset).len() as i64;
            let l = mu.on(set) - Rational::from_integer(inner) - Rational::new(g.cut(set).len() as i64, 2);
            bound[mask as usize] = if set.contains(v0) { l.ceil().to_integer() } else { l.floor().to_integer() + 1 };
        }
        QsConstraints { n, bound, total: mu.degree() - subset.len() as i64 }
    }

    pub fn admits(&self, values: &[i64]) -> bool {
        if values.iter().sum::<i64>() != self.total {
            return false;
        }
        (1..self.bound.len()).all(|mask| {
            let s: i64 = VertexSet(mask as u64).iter().map(|v| values[v]).sum();
            s >= self.bound[mask]
        })
    }

    /// Every admissible value vector, in lexicographic order.
    pub fn enumerate(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if self.n == 0 {
            return out;
        }
        let full = (1usize << self.n) - 1;
        // per-vertex window from the singleton and co-singleton bounds
        let windows: Vec<(i64, i64)> = (0..self.n)
            .map(|v| {
                let hi = if self.n > 1 { self.total - self.bound[full ^ (1 << v)] } else { self.total };
                (self.bound[1 << v], hi)
            })
            .collect();
        let mut values = vec![0; self.n];
        self.search(0, &windows, &mut values, &mut out);
        out
    }

    fn search(&self, k: usize, windows: &[(i64, i64)], values: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == self.n {
            if values.iter().sum::<i64>() == self.total {
                out.push(values.clone());
            }
            return;
        }
        let full = (1usize << self.n) - 1;
        let (lo, hi) = windows[k];
        for x in lo..=hi {
            values[k] = x;
            // check every subset whose largest member is k, and its complement
            let high = 1usize << k;
            let ok = (0..high).all(|low| {
                let mask = high | low;
                let s: i64 = VertexSet(mask as u64).iter().map(|v| values[v]).sum();
                if s < self.bound[mask] {
                    return false;
                }
                let comp = full ^ mask;
                comp == 0 || s <= self.total - self.bound[comp]
            });
            if ok {
                self.search(k + 1, windows, values, out);
            }
        }
    }
}

/// `ι_*(E, D)`: values summed over fibers; the exceptional vertex of a
/// contracted edge of `E` adds its 1 to the image of its ends.
pub fn pushforward(spec: &SpecializationMap, pd: &PseudoDivisor) -> PseudoDivisor {
    let mut values = vec![0; spec.target.vertex_count()];
    for (v, x) in pd.values.iter().enumerate() {
        values[spec.vertex_map[v]] += x;
    }
    let mut edges = EdgeSet::EMPTY;
    for e in pd.edges.iter() {
        match spec.edge_image(e) {
            Some(t) => edges = edges.with(t),
            None => values[spec.vertex_map[spec.source.edge(e).ends[0]]] += 1,
        }
    }
    PseudoDivisor { edges, values }
}

/// Elementary specializations of `pd`, one per end of each edge of `E`
/// (end0 first; a loop gives one), labeled by edge and receiving vertex.
pub fn elementary_specializations(g: &Graph, pd: &PseudoDivisor) -> Vec<(usize, usize, PseudoDivisor)> {
    let mut out = Vec::new();
    for e in pd.edges.iter() {
        let ends = g.edge(e).ends;
        let targets: &[usize] = if ends[0] == ends[1] { &ends[..1] } else { &ends };
        for &to in targets {
            let mut values = pd.values.clone();
            values[to] += 1;
            out.push((e, to, PseudoDivisor { edges: pd.edges.without(e), values }));
        }
    }
    out
}

/// Whether `lower` is reachable from `upper` by elementary specializations
/// (including `lower == upper`).
pub fn specializes(g: &Graph, upper: &PseudoDivisor, lower: &PseudoDivisor) -> bool {
    if !lower.edges.is_subset(upper.edges) || upper.values.len() != lower.values.len() {
        return false;
    }
    let removed: Vec<usize> = upper.edges.difference(lower.edges).to_vec();
    let mut need: Vec<i64> = lower.values.iter().zip(&upper.values).map(|(a, b)| a - b).collect();
    if need.iter().any(|&x| x < 0) || need.iter().sum::<i64>() != removed.len() as i64 {
        return false;
    }
    distribute(g, &removed, &mut need)
}

fn distribute(g: &Graph, edges: &[usize], need: &mut [i64]) -> bool {
    let Some((&e, rest)) = edges.split_first() else {
        return need.iter().all(|&x| x == 0);
    };
    let [a, b] = g.edge(e).ends;
    for to in if a == b { vec![a] } else { vec![a, b] } {
        if need[to] > 0 {
            need[to] -= 1;
            let ok = distribute(g, rest, need);
            need[to] += 1;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Replace each special pair's single member by the pair's smaller edge.
pub fn normalize_special(pairs: &[(usize, usize)], edges: EdgeSet) -> EdgeSet {
    pairs.iter().fold(edges, |acc, &(a, b)| {
        if acc.contains(a) != acc.contains(b) {
            acc.without(b).with(a)
        } else {
            acc
        }
    })
}

/// Equal values on original vertices and edge sets that agree up to swaps
/// within special pairs.
pub fn equivalent_pseudo_divisors(g: &Graph, a: &PseudoDivisor, b: &PseudoDivisor) -> bool {
    let pairs = special_pairs(g);
    a.values == b.values && normalize_special(&pairs, a.edges) == normalize_special(&pairs, b.edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::contract_edges;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn beta_examples() {
        let p = path2();
        let zero = Polarization::new(vec![r(0, 1); 2]).unwrap();
        let d = Divisor(vec![-1, 0]);
        assert_eq!(beta(&p, &d, &zero, VertexSet::singleton(0)).unwrap(), r(-1, 2));
        let tc = twocyc();
        let mu = Polarization::canonical(&tc);
        let d = Divisor(vec![-1, 1]);
        assert_eq!(beta(&tc, &d, &mu, VertexSet::singleton(0)).unwrap(), r(0, 1));
        let all = tc.all_vertices();
        assert_eq!(beta(&tc, &Divisor::zero(2), &Polarization::new(vec![r(0, 1); 2]).unwrap(), all).unwrap(), r(0, 1));
        assert!(beta(&tc, &Divisor(vec![0]), &mu, all).is_err());
    }

    #[test]
    fn canonical_examples() {
        let t = Polarization::canonical(&triangle());
        assert!(t.values().iter().all(|x| x.is_zero()));
        let l = Polarization::canonical(&loop_graph());
        assert_eq!(l.values(), &[r(0, 1)]);
        assert_eq!(l.degree(), 0);
        let p = Polarization::canonical(&path2());
        assert_eq!(p.values(), &[r(-1, 2), r(-1, 2)]);
        assert_eq!(p.degree(), -1);
        assert!(Polarization::new(vec![r(1, 2)]).is_err());
    }

    #[test]
    fn canonical_beta_is_integer_formula() {
        for g in [triangle(), theta(), dumb(), two_triangles(), k4()] {
            let mu = Polarization::canonical(&g);
            assert_eq!(mu.degree(), g.genus() as i64 - 1);
            for h in hemispheres(&g) {
                let expect = r(g.subgraph_genus(h).unwrap() as i64 - 1, 1) + r(g.cut(h).len() as i64, 2);
                assert_eq!(mu.on(h), expect);
                let d = Divisor((0..g.vertex_count() as i64).collect());
                let b = beta(&g, &d, &mu, h).unwrap();
                assert_eq!(b, r(d.on(h) - g.subgraph_genus(h).unwrap() as i64 + 1, 1));
            }
        }
    }

    #[test]
    fn induced_examples() {
        let th = theta();
        let mu = Polarization::canonical(&th);
        let e3 = th.edge_set(&["e3"]).unwrap();
        let (_, down) = induced_polarizations(&th, &mu, e3);
        assert_eq!(down, Polarization::canonical(&twocyc()));
        let (up, down) = induced_polarizations(&th, &mu, EdgeSet::EMPTY);
        assert_eq!((up.clone(), down), (mu.clone(), mu));
        let l = loop_graph();
        let mu = Polarization::canonical(&l);
        let (up, down) = induced_polarizations(&l, &mu, l.all_edges());
        assert_eq!(down.values(), &[r(-1, 1)]);
        assert_eq!(up.values().len(), 2);
    }

    #[test]
    fn quasistable_examples() {
        let p = path2();
        let mu = Polarization::canonical(&p);
        assert!(is_quasistable(&p, 0, &mu, &PseudoDivisor::new(EdgeSet::EMPTY, vec![-1, 0])));
        assert!(!is_quasistable(&p, 0, &mu, &PseudoDivisor::new(EdgeSet::EMPTY, vec![0, -1])));
        let tc = twocyc();
        let mu = Polarization::canonical(&tc);
        assert!(is_quasistable(&tc, 0, &mu, &PseudoDivisor::new(EdgeSet::EMPTY, vec![0, 0])));
        assert!(!is_quasistable(&tc, 0, &mu, &PseudoDivisor::new(EdgeSet::EMPTY, vec![1, -1])));
        let l = loop_graph();
        let mu = Polarization::canonical(&l);
        assert!(is_quasistable(&l, 0, &mu, &PseudoDivisor::new(l.all_edges(), vec![-1])));
    }

    #[test]
    fn constraints_agree_with_hemisphere_test() {
        for g in [twocyc(), theta(), triangle(), dumb(), loop_pendant()] {
            let mu = Polarization::canonical(&g);
            for v0 in 0..g.vertex_count() {
                for subset in g.all_edges().subsets() {
                    let c = QsConstraints::new(&g, v0, &mu, subset);
                    let found = c.enumerate();
                    for values in &found {
                        assert!(c.admits(values));
                        assert!(is_quasistable(&g, v0, &mu, &PseudoDivisor::new(subset, values.clone())));
                    }
                    // every vector in a generous box that passes the hemisphere test is found
                    let n = g.vertex_count();
                    let mut probe = vec![-4i64; n];
                    loop {
                        let pd = PseudoDivisor::new(subset, probe.clone());
                        if pd.degree() == mu.degree() && is_quasistable(&g, v0, &mu, &pd) {
                            assert!(found.contains(&probe), "{g:?} {subset:?} {probe:?}");
                        }
                        let mut i = 0;
                        while i < n && probe[i] == 4 {
                            probe[i] = -4;
                            i += 1;
                        }
                        if i == n {
                            break;
                        }
                        probe[i] += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        let tc = twocyc();
        let spec = contract_edges(&tc, tc.edge_set(&["e1"]).unwrap()).unwrap();
        let pd = PseudoDivisor::new(tc.edge_set(&["e2"]).unwrap(), vec![-1, 0]);
        let out = pushforward(&spec, &pd);
        assert_eq!(spec.target.edge_ids(out.edges), vec!["e2"]);
        assert_eq!(out.values, vec![-1]);
        let id = SpecializationMap::identity(&tc);
        assert_eq!(pushforward(&id, &pd), pd);
        let tp = triangle_pendant("x");
        let spec = contract_edges(&tp, tp.edge_set(&["p"]).unwrap()).unwrap();
        let pd = PseudoDivisor::new(tp.edge_set(&["xy"]).unwrap(), vec![0, -1, 0, -1]);
        let out = pushforward(&spec, &pd);
        assert_eq!(out.values, vec![-1, -1, 0]);
        assert_eq!(out.degree(), pd.degree());
    }

    #[test]
    fn elementary_examples() {
        let tc = twocyc();
        let pd = PseudoDivisor::new(EdgeSet::singleton(0), vec![-1, 0]);
        let targets: Vec<Vec<i64>> = elementary_specializations(&tc, &pd).into_iter().map(|t| t.2.values).collect();
        assert_eq!(targets, vec![vec![0, 0], vec![-1, 1]]);
        let l = loop_graph();
        assert_eq!(elementary_specializations(&l, &PseudoDivisor::new(l.all_edges(), vec![-1])).len(), 1);
        assert!(elementary_specializations(&tc, &PseudoDivisor::new(EdgeSet::EMPTY, vec![0, 0])).is_empty());
    }

    #[test]
    fn specializes_examples() {
        let tc = twocyc();
        let top = PseudoDivisor::new(EdgeSet::singleton(0), vec![-1, 0]);
        assert!(specializes(&tc, &top, &top));
        for (_, _, t) in elementary_specializations(&tc, &top) {
            assert!(specializes(&tc, &top, &t));
        }
        let a = PseudoDivisor::new(EdgeSet::EMPTY, vec![0, 0]);
        let b = PseudoDivisor::new(EdgeSet::EMPTY, vec![-1, 1]);
        assert!(!specializes(&tc, &a, &b));
    }

    #[test]
    fn equivalence_examples() {
        let d = dumb();
        let (e1, e2, p1) = (0, 1, 2);
        let a = PseudoDivisor::new(EdgeSet::from_iter([e1, p1]), vec![0, 0, -1]);
        let b = PseudoDivisor::new(EdgeSet::from_iter([e2, p1]), vec![0, 0, -1]);
        assert!(equivalent_pseudo_divisors(&d, &a, &a));
        assert!(equivalent_pseudo_divisors(&d, &a, &b));
        let c = PseudoDivisor::new(EdgeSet::from_iter([e1, p1]), vec![-1, 0, 0]);
        assert!(!equivalent_pseudo_divisors(&d, &a, &c));
    }

    #[test]
    fn json_round_trip() {
        let d = dumb();
        let pd = PseudoDivisor::new(EdgeSet::from_iter([0, 2]), vec![0, 1, -2]);
        let j = pd.to_json(&d);
        assert_eq!(j["divisor"]["v@e1"], 1);
        assert_eq!(PseudoDivisor::from_json(&d, &j), Some(pd.clone()));
        assert_eq!(pd.label(&d), "({e1,p1} | s=0 t=1 u=-2 v@e1=1 v@p1=1)");
    }
}
