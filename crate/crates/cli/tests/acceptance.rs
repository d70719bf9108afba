//! Acceptance run: one pass/fail line per criterion, nonzero exit on any failure.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qdposet::divisor::PseudoDivisor;
use qdposet::fixtures::{self, named, small_multigraphs, trees};
use qdposet::graph::io::parse_graph;
use qdposet::graph::{bridges_and_nd, graph_isomorphic, is_weak_cyclic_equivalence, split_at_articulation, Graph};
use qdposet::oracle::kirchhoff_count;
use qdposet::poset::{enumerate_qd_canonical, is_upper_connected, product_split, translate_basepoint};
use qdposet::torelli::{sweep_special_posets, torelli_compare};
use qdposet::tropical::{build_jacobian_complex, canonical_model, top_volume, tropical_torelli_compare};
use qdposet::{EdgeSet, Rational, RationalMetricGraph};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Named graphs plus every connected multigraph with at most 4 edges.
fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = named().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    out.extend(small_multigraphs(4).into_iter().enumerate().map(|(i, g)| (format!("small{i}"), g)));
    out
}

fn metric_corpus() -> Vec<(String, RationalMetricGraph)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(root().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            let n = p.file_name().unwrap().to_str().unwrap();
            n.starts_with("m_") && !n.ends_with(".poset.json")
        })
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let parsed = parse_graph(&std::fs::read_to_string(&p).unwrap()).unwrap();
            let x = RationalMetricGraph::new(parsed.graph.clone(), parsed.complete_lengths().unwrap()).unwrap();
            (p.file_stem().unwrap().to_str().unwrap().to_string(), x)
        })
        .collect()
}

fn cardinality() -> Outcome {
    let expected = [
        ("loop", 2),
        ("twocyc", 4),
        ("triangle", 6),
        ("theta", 12),
        ("dumb", 20),
        ("two_triangles", 36),
        ("k4", 128),
    ];
    let graphs = corpus();
    for (name, count) in expected {
        let g = &graphs.iter().find(|(n, _)| n == name).unwrap().1;
        let n = enumerate_qd_canonical(g, 0).unwrap().len();
        if n != count {
            return fail(format!("{name}: {n} elements, expected {count}"));
        }
    }
    for (name, g) in &graphs {
        let n = enumerate_qd_canonical(g, g.least_vertex()).unwrap().len() as u64;
        if n != kirchhoff_count(g) {
            return fail(format!("{name}: {n} elements, 2^g·τ = {}", kirchhoff_count(g)));
        }
    }
    pass(format!("{} graphs", graphs.len()))
}

fn tree_singletons() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        for t in trees(n) {
            for v0 in 0..t.vertex_count() {
                let p = enumerate_qd_canonical(&t, v0).unwrap();
                let mut d = vec![0; t.vertex_count()];
                d[v0] = -1;
                if p.elements() != [PseudoDivisor::new(EdgeSet::EMPTY, d)] {
                    return fail(format!("tree {n}.{count} at vertex {v0}: {} elements", p.len()));
                }
            }
            count += 1;
        }
    }
    pass(format!("{count} trees, every basepoint"))
}

fn basepoint_independence() -> Outcome {
    let mut pairs = 0;
    for (name, g) in corpus() {
        for a in 0..g.vertex_count() {
            let p = enumerate_qd_canonical(&g, a).unwrap();
            for b in 0..g.vertex_count() {
                match translate_basepoint(&p, b) {
                    Ok((q, f)) if f.verify(p.ranked(), q.ranked()) => pairs += 1,
                    Ok(_) => return fail(format!("{name}: {a} -> {b} not verified")),
                    Err(e) => return fail(format!("{name}: {a} -> {b}: {e}")),
                }
            }
        }
    }
    pass(format!("{pairs} ordered vertex pairs"))
}

fn upper_connectedness() -> Outcome {
    let mut pairs = 0;
    for (name, g) in corpus() {
        let p = enumerate_qd_canonical(&g, 0).unwrap();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p.element(i).edges == p.element(j).edges {
                    pairs += 1;
                    if !is_upper_connected(&p, i, j).unwrap() {
                        return fail(format!("{name}: elements {i}, {j}"));
                    }
                }
            }
        }
    }
    pass(format!("{pairs} same-E pairs"))
}

fn classification_sweeps() -> Outcome {
    let (mut p1, mut p2, mut r) = (0, 0, 0);
    let mut graphs = corpus();
    // the only graphs with square-type P images have four parallel edges
    graphs.push(("banana".into(), Graph::from_edges(&[("a", "s", "t"), ("b", "s", "t"), ("c", "s", "t"), ("d", "s", "t")])));
    for (name, g) in graphs {
        let p = enumerate_qd_canonical(&g, 0).unwrap();
        match sweep_special_posets(&p) {
            Ok(s) => {
                p1 += s.p_parallel;
                p2 += s.p_square;
                r += s.r_images;
            }
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    pass(format!("P parallel={p1} square={p2}, R={r}, 0 unclassified"))
}

fn torelli_both_directions() -> Outcome {
    let graphs = named();
    let get = |n: &str| graphs.iter().find(|(m, _)| *m == n).unwrap().1.clone();
    let expect = [
        ("triangle_pendant_x", "triangle_pendant_y", true),
        ("triangle", "theta", false),
        ("whitney_a", "whitney_b", false),
    ];
    for (a, b, iso) in expect {
        let v = torelli_compare(&get(a), &get(b)).unwrap();
        if !v.agree || v.poset_isomorphic != iso {
            return fail(format!("{a} vs {b}: {}", v.to_json()));
        }
    }
    let (wa, wb) = (get("whitney_a"), get("whitney_b"));
    let f = [(0, 0), (1, 1), (2, 2), (3, 4), (4, 5), (5, 3)];
    if graph_isomorphic(&wa, &wb).is_some() || !is_weak_cyclic_equivalence(&f, &wa, &wb).unwrap() {
        return fail("Whitney pair is not cyclically equivalent and non-isomorphic");
    }
    let mut pairs = 0;
    for (a, g) in &graphs {
        for (b, h) in &graphs {
            match torelli_compare(g, h) {
                Ok(v) if v.agree => pairs += 1,
                Ok(v) => return fail(format!("{a} vs {b} disagree: {}", v.to_json())),
                Err(e) => return fail(format!("{a} vs {b}: {e}")),
            }
        }
    }
    pass(format!("{pairs} ordered pairs agree"))
}

fn product_decomposition() -> Outcome {
    let g = fixtures::two_triangles();
    let (g1, g2) = split_at_articulation(&g, "v").unwrap();
    match product_split(&g, "v", &g1, &g2) {
        Ok(s) if s.whole.len() == 36 && s.left.len() * s.right.len() == 36 => pass("σ verified, 36 elements"),
        Ok(s) => fail(format!("{} elements", s.whole.len())),
        Err(e) => fail(e.to_string()),
    }
}

fn tropical() -> Outcome {
    let graphs = metric_corpus();
    for (name, x) in &graphs {
        let j = build_jacobian_complex(x, 0).unwrap();
        if j.f_vector() != j.poset.rank_histogram() {
            return fail(format!("{name}: f-vector {:?}", j.f_vector()));
        }
    }
    let volume = |name: &str| {
        let x = &graphs.iter().find(|(n, _)| n == name).unwrap().1;
        top_volume(&build_jacobian_complex(x, 0).unwrap())
    };
    let (v1, v2) = (volume("m_twocyc_3_5"), volume("m_theta_1_1_1"));
    if (v1, v2) != (Rational::from_integer(8), Rational::from_integer(3)) {
        return fail(format!("volumes {v1} and {v2}"));
    }
    let bridgeless: Vec<_> =
        graphs.iter().filter(|(_, x)| bridges_and_nd(canonical_model(x).graph()).0.is_empty()).collect();
    let mut pairs = 0;
    for (a, x) in &bridgeless {
        for (b, y) in &bridgeless {
            match tropical_torelli_compare(x, y) {
                Ok(v) if v.agree => pairs += 1,
                Ok(v) => return fail(format!("{a} vs {b} disagree: {}", v.to_json())),
                Err(e) => return fail(format!("{a} vs {b}: {e}")),
            }
        }
    }
    pass(format!("{} metric graphs, volumes 8 and 3, {pairs} pairs agree", graphs.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qdposet")).current_dir(root()).args(["verify", "corpus"]).output().unwrap()
    };
    let (a, b) = (run(), run());
    if a.status.code() != Some(0) {
        return fail(format!("verify exited with {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return fail("reports differ");
    }
    pass(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("cardinality law 2^g·τ", cardinality, Duration::from_secs(10)),
        ("tree singleton", tree_singletons, Duration::from_secs(1)),
        ("basepoint independence", basepoint_independence, Duration::from_secs(30)),
        ("upper-connectedness", upper_connectedness, Duration::from_secs(60)),
        ("P/R classification sweeps", classification_sweeps, Duration::from_secs(120)),
        ("Torelli both directions", torelli_both_directions, Duration::from_secs(300)),
        ("product decomposition", product_decomposition, Duration::from_secs(5)),
        ("tropical complex", tropical, Duration::from_secs(60)),
        ("verify determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.ok && elapsed > *budget {
            outcome = fail(format!("{} but took {elapsed:.2?} (budget {budget:?})", outcome.detail));
        }
        if !outcome.ok {
            failures += 1;
        }
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag} {} {name}: {} [{elapsed:.2?}]", i + 1, outcome.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
