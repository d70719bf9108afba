//! The invariant suite run over a corpus of graphs.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::divisor::Polarization;
use crate::graph::{biconnected_components, bridges_and_nd, spanning_trees, split_at_articulation, Graph};
use crate::oracle::{kirchhoff_count, run_oracle};
use crate::poset::{enumerate_qd_canonical, is_upper_connected, poset_isomorphism, product_split, translate_basepoint, QdPoset};
use crate::scalar::Rational;
use crate::torelli::{sweep_special_posets, torelli_compare, Falsifier};
use crate::tropical::{build_jacobian_complex, canonical_model, top_volume, MetricGraph};

/// One corpus graph with its optional lengths and cached poset document.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub lengths: Option<Vec<Rational>>,
    pub cached: Option<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub graph: String,
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
    /// The first failing check, as a report document.
    pub falsifier: Option<Falsifier>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failed_checks(&self) -> Vec<(&str, &str)> {
        self.rows.iter().filter(|r| r.status == Status::Fail).map(|r| (r.graph.as_str(), r.check)).collect()
    }

    /// Fixed-width table followed by a summary line.
    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.graph.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<width$}  {:<9}  {:<6}  detail\n", "graph", "check", "status");
        for r in &self.rows {
            writeln!(out, "{:<width$}  {:<9}  {:<6}  {}", r.graph, r.check, r.status.as_str(), r.detail).unwrap();
        }
        let count = |s| self.rows.iter().filter(|r| r.status == s).count();
        writeln!(out, "summary: {} pass, {} fail, {} skip", count(Status::Pass), count(Status::Fail), count(Status::Skip))
            .unwrap();
        out
    }
}

/// Limits for the exhaustive parts of the suite.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest edge count for the brute-force oracle.
    pub oracle_edges: usize,
    /// Seed for the random relabelings; each graph derives its own stream.
    pub seed: u64,
    /// Relabelings tried per graph.
    pub relabelings: usize,
}

pub const DEFAULT_SEED: u64 = 0x5eed;

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { oracle_edges: 8, seed: DEFAULT_SEED, relabelings: 2 }
    }
}

type Outcome = Result<(Status, String), (String, Option<Falsifier>)>;

/// Run every check on every entry, in the given order.
pub fn verify_corpus(entries: &[CorpusEntry], options: VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    for (k, entry) in entries.iter().enumerate() {
        let g = entry.graph.purified();
        let v0 = g.least_vertex();
        let poset = match enumerate_qd_canonical(&g, v0) {
            Ok(p) => p,
            Err(e) => {
                push(&mut report, entry, "build", Err((e.to_string(), None)));
                continue;
            }
        };
        push(&mut report, entry, "count", check_count(&g, &poset));
        push(&mut report, entry, "oracle", check_oracle(&g, v0, options));
        push(&mut report, entry, "cache", check_cache(entry, &poset));
        push(&mut report, entry, "upper", check_upper(&poset));
        push(&mut report, entry, "sweep", check_sweep(&poset));
        push(&mut report, entry, "basepoint", check_basepoint(&g));
        push(&mut report, entry, "split", check_split(&g));
        push(&mut report, entry, "relabel", check_relabel(&g, &poset, options, k as u64));
        push(&mut report, entry, "tropical", check_tropical(entry));
    }
    report
}

fn push(report: &mut VerifyReport, entry: &CorpusEntry, check: &'static str, outcome: Outcome) {
    let (status, detail) = match outcome {
        Ok(x) => x,
        Err((detail, falsifier)) => {
            if report.falsifier.is_none() {
                let f = falsifier.unwrap_or_else(|| {
                    Falsifier::new(check, detail.clone(), json!({ "graph": entry.name }))
                });
                report.falsifier = Some(f);
            }
            (Status::Fail, detail)
        }
    };
    report.rows.push(CheckRow { graph: entry.name.clone(), check, status, detail });
}

fn fail(detail: impl Into<String>) -> Outcome {
    Err((detail.into(), None))
}

fn check_count(g: &Graph, p: &QdPoset) -> Outcome {
    let expected = kirchhoff_count(g);
    if p.len() as u64 == expected {
        Ok((Status::Pass, format!("{} = 2^{}·τ", p.len(), g.genus())))
    } else {
        fail(format!("{} elements, 2^g·τ = {expected}", p.len()))
    }
}

fn check_oracle(g: &Graph, v0: usize, options: VerifyOptions) -> Outcome {
    if g.edge_count() > options.oracle_edges {
        return Ok((Status::Skip, format!("more than {} edges", options.oracle_edges)));
    }
    let (_, r) = run_oracle(g, v0, &Polarization::canonical(g)).map_err(|e| (e.to_string(), None))?;
    if r.all_match() {
        Ok((Status::Pass, format!("brute force {} elements", r.brute_force)))
    } else {
        fail(format!("{r:?}"))
    }
}

fn check_cache(entry: &CorpusEntry, p: &QdPoset) -> Outcome {
    let Some(cached) = &entry.cached else {
        return Ok((Status::Skip, "no cached poset".into()));
    };
    let fresh = p.to_json();
    if *cached == fresh {
        return Ok((Status::Pass, "cached poset matches".into()));
    }
    let detail = ["elements", "covers", "basepoint", "polarization"]
        .iter()
        .find(|k| cached.get(**k) != fresh.get(**k))
        .map(|k| format!("cached poset differs in {k:?}"))
        .unwrap_or_else(|| "cached poset has extra keys".into());
    fail(detail)
}

fn check_upper(p: &QdPoset) -> Outcome {
    let mut pairs = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p.element(i).edges != p.element(j).edges {
                continue;
            }
            pairs += 1;
            if !is_upper_connected(p, i, j).map_err(|e| (e.to_string(), None))? {
                return fail(format!("elements {i} and {j} are not upper-connected"));
            }
        }
    }
    Ok((Status::Pass, format!("{pairs} pairs")))
}

fn check_sweep(p: &QdPoset) -> Outcome {
    match sweep_special_posets(p) {
        Ok(s) => Ok((
            Status::Pass,
            format!("P parallel={} square={} R={} parallel checks={}", s.p_parallel, s.p_square, s.r_images, s.parallel_checks),
        )),
        Err(e) => Err((e.to_string(), e.falsifier().cloned())),
    }
}

fn check_basepoint(g: &Graph) -> Outcome {
    let n = g.vertex_count();
    for a in 0..n {
        let p = enumerate_qd_canonical(g, a).map_err(|e| (e.to_string(), None))?;
        for b in 0..n {
            if let Err(e) = translate_basepoint(&p, b) {
                return fail(format!("{} -> {}: {e}", g.vertex_id(a), g.vertex_id(b)));
            }
        }
    }
    Ok((Status::Pass, format!("{} ordered pairs", n * n)))
}

fn check_split(g: &Graph) -> Outcome {
    let articulation = biconnected_components(g).articulation;
    if articulation.is_empty() {
        return Ok((Status::Skip, "no articulation vertex".into()));
    }
    let mut sizes = Vec::new();
    for v in articulation {
        let id = g.vertex_id(v);
        let (g1, g2) = split_at_articulation(g, id).map_err(|e| (e.to_string(), None))?;
        match product_split(g, id, &g1, &g2) {
            Ok(s) => sizes.push(format!("{id}:{}x{}", s.left.len(), s.right.len())),
            Err(e) => return fail(format!("at {id}: {e}")),
        }
    }
    Ok((Status::Pass, sizes.join(" ")))
}

/// The same graph with vertices and edges listed in a random order and edge
/// ends randomly swapped.
pub fn relabel(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut vs: Vec<usize> = (0..g.vertex_count()).collect();
    vs.shuffle(rng);
    let mut es: Vec<usize> = (0..g.edge_count()).collect();
    es.shuffle(rng);
    let vertices = vs.iter().map(|&v| (g.vertex_id(v).to_string(), g.vertex(v).weight));
    let edges: Vec<(String, String, String)> = es
        .iter()
        .map(|&e| {
            let [mut a, mut b] = g.edge(e).ends;
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut a, &mut b);
            }
            (g.edge_id(e).to_string(), g.vertex_id(a).to_string(), g.vertex_id(b).to_string())
        })
        .collect();
    Graph::new(vertices, edges).expect("relabeling keeps the graph valid")
}

fn check_relabel(g: &Graph, p: &QdPoset, options: VerifyOptions, stream: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    rng.set_stream(stream);
    for round in 0..options.relabelings {
        let h = relabel(g, &mut rng);
        let q = enumerate_qd_canonical(&h, h.least_vertex()).map_err(|e| (e.to_string(), None))?;
        if poset_isomorphism(p.ranked(), q.ranked()).is_none() {
            return fail(format!("round {round}: relabeled poset is not isomorphic"));
        }
        match torelli_compare(g, &h) {
            Ok(v) if v.agree && v.poset_isomorphic => {}
            Ok(v) => return fail(format!("round {round}: verdict {}", v.to_json())),
            Err(e) => return Err((e.to_string(), e.falsifier().cloned())),
        }
    }
    Ok((Status::Pass, format!("{} relabelings, seed {:#x}", options.relabelings, options.seed)))
}

fn check_tropical(entry: &CorpusEntry) -> Outcome {
    let Some(lengths) = &entry.lengths else {
        return Ok((Status::Skip, "no lengths".into()));
    };
    let x = MetricGraph::new(entry.graph.purified(), lengths.clone()).map_err(|e| (e.to_string(), None))?;
    // Σ_T ∏_{e∉T} ℓ(e) over spanning trees
    let expected = spanning_trees(x.graph()).into_iter().fold(Rational::zero(), |acc, t| {
        let off = x.graph().all_edges().difference(t);
        acc + off.iter().fold(Rational::one(), |p, e| p * x.length(e))
    });
    for v in 0..x.graph().vertex_count() {
        let j = build_jacobian_complex(&x, v).map_err(|e| (e.to_string(), None))?;
        if j.f_vector() != j.poset.rank_histogram() {
            return fail(format!("f-vector {:?} differs from the rank histogram", j.f_vector()));
        }
        let vol = top_volume(&j);
        if vol != expected {
            return fail(format!("volume {vol} at {}, spanning-tree sum {expected}", x.graph().vertex_id(v)));
        }
    }
    let c = canonical_model(&x);
    let bridged = !bridges_and_nd(c.graph()).0.is_empty();
    let j = build_jacobian_complex(&c, c.graph().least_vertex()).map_err(|e| (e.to_string(), None))?;
    Ok((
        Status::Pass,
        format!("volume={} fvector={:?}{}", top_volume(&j), j.f_vector(), if bridged { " bridged" } else { "" }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn entry(name: &str, graph: Graph) -> CorpusEntry {
        CorpusEntry { name: name.into(), graph, lengths: None, cached: None }
    }

    #[test]
    fn named_corpus_passes() {
        let entries: Vec<CorpusEntry> = named().into_iter().map(|(n, g)| entry(n, g)).collect();
        let r = verify_corpus(&entries, VerifyOptions::default());
        assert!(r.all_pass(), "{}", r.table());
        assert!(r.falsifier.is_none());
    }

    #[test]
    fn corrupted_cache_is_named() {
        let g = twocyc();
        let mut cached = enumerate_qd_canonical(&g, 0).unwrap().to_json();
        cached["covers"].as_array_mut().unwrap().pop();
        let mut e = entry("twocyc", g);
        e.cached = Some(cached);
        let r = verify_corpus(&[e], VerifyOptions::default());
        assert_eq!(r.failed_checks(), vec![("twocyc", "cache")]);
        assert_eq!(r.falsifier.unwrap().statement, "cache");
    }

    #[test]
    fn tropical_row() {
        let mut e = entry("twocyc", twocyc());
        e.lengths = Some(vec![Rational::from_integer(3), Rational::from_integer(5)]);
        let r = verify_corpus(&[e], VerifyOptions::default());
        let row = r.rows.iter().find(|r| r.check == "tropical").unwrap();
        assert_eq!(row.detail, "volume=8 fvector=[1, 1]");
    }
}
