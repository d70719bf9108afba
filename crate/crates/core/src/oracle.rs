//! Slow reference computations used to cross-check the enumerator.
//!
//! Quasistability here is tested on every vertex subset of `Γ^E`, not only
//! hemispheres, and edge sets range over all subsets of `E(Γ)`.

use num_traits::{ToPrimitive, Zero};

use crate::divisor::{beta, induced_polarizations, is_quasistable, specializes, Polarization, PseudoDivisor};
use crate::graph::{spanning_tree_count, subdivide, EdgeSet, Graph, VertexSet};
use crate::poset::{enumerate_qd, QdPoset};
use crate::scalar::Rational;

/// `β ≥ 0` on every nonempty `V ⊆ V(Γ^E)`, strictly when `v0 ∉ V`.
pub fn quasistable_all_subsets(g: &Graph, v0: usize, mu: &Polarization, pd: &PseudoDivisor) -> bool {
    let Ok(sub) = subdivide(g, pd.edges) else {
        return false;
    };
    let (mu_up, _) = induced_polarizations(g, mu, pd.edges);
    let d = pd.on_subdivision();
    if d.degree() != mu.degree() {
        return false;
    }
    let n = sub.graph.vertex_count();
    (1u64..(1u64 << n)).all(|mask| {
        let set = VertexSet(mask);
        let b = beta(&sub.graph, &d, &mu_up, set).expect("carrier built here");
        if set.contains(v0) {
            b >= Rational::zero()
        } else {
            b > Rational::zero()
        }
    })
}

/// Every quasistable pseudo-divisor, by exhaustion over edge subsets and the
/// singleton windows `μ^E(v) - δ_v/2 ≤ D(v) ≤ μ^E(v) + δ_v/2 + 1`.
pub fn brute_force_elements(g: &Graph, v0: usize, mu: &Polarization) -> Vec<PseudoDivisor> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for edges in g.all_edges().subsets() {
        if !g.is_connected_on(g.all_vertices(), g.all_edges().difference(edges)) {
            continue;
        }
        let total = mu.degree() - edges.len() as i64;
        let windows: Vec<(i64, i64)> = (0..n)
            .map(|v| {
                let half = Rational::new(g.valence(v) as i64, 2);
                let m = mu.values()[v];
                let lo = (m - half).ceil().to_i64().expect("small");
                let hi = (m + half).floor().to_i64().expect("small") + 1;
                (lo, hi)
            })
            .collect();
        let mut values = vec![0; n];
        product(&windows, 0, total, &mut values, &mut |vals| {
            let pd = PseudoDivisor::new(edges, vals.to_vec());
            if quasistable_all_subsets(g, v0, mu, &pd) {
                out.push(pd);
            }
        });
    }
    out
}

fn product(windows: &[(i64, i64)], k: usize, remaining: i64, values: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if k == windows.len() {
        if remaining == 0 {
            f(values);
        }
        return;
    }
    for x in windows[k].0..=windows[k].1 {
        values[k] = x;
        product(windows, k + 1, remaining - x, values, f);
    }
}

/// Cover pairs `(upper, lower)` of `p` found by testing every pair of
/// adjacent ranks with [`specializes`].
pub fn brute_force_covers(p: &QdPoset) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if p.rank(i) == p.rank(j) + 1 && specializes(p.graph(), p.element(i), p.element(j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `2^g · τ(Γ)` with `τ` from the matrix-tree theorem.
pub fn kirchhoff_count(g: &Graph) -> u64 {
    let tau: Rational = spanning_tree_count(g);
    (tau.to_integer() as u64) << g.genus()
}

/// Outcome of recomputing `QD` from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub elements: usize,
    pub brute_force: usize,
    pub kirchhoff: u64,
    /// Same element set as the enumerator.
    pub elements_match: bool,
    /// Same Hasse diagram as the enumerator.
    pub covers_match: bool,
    /// Hemisphere and all-subset quasistability agree on every candidate.
    pub hemispheres_suffice: bool,
}

impl OracleReport {
    pub fn all_match(&self) -> bool {
        self.elements_match && self.covers_match && self.hemispheres_suffice && self.elements as u64 == self.kirchhoff
    }
}

pub fn run_oracle(g: &Graph, v0: usize, mu: &Polarization) -> Result<(QdPoset, OracleReport), crate::poset::PosetError> {
    let fast = enumerate_qd(g, v0, mu)?;
    let slow = QdPoset::from_elements(g, v0, mu, brute_force_elements(g, v0, mu));
    let elements_match = fast.elements() == slow.elements();
    let mut fast_covers: Vec<(usize, usize)> = fast.covers().iter().map(|c| (c.parent, c.child)).collect();
    fast_covers.sort_unstable();
    fast_covers.dedup();
    let covers_match = elements_match && fast_covers == brute_force_covers(&fast);
    let hemispheres_suffice = hemisphere_agreement(g, v0, mu);
    let report = OracleReport {
        elements: fast.len(),
        brute_force: slow.len(),
        kirchhoff: kirchhoff_count(g),
        elements_match,
        covers_match,
        hemispheres_suffice,
    };
    Ok((fast, report))
}

// Both quasistability tests on every candidate in the brute-force windows.
fn hemisphere_agreement(g: &Graph, v0: usize, mu: &Polarization) -> bool {
    let n = g.vertex_count();
    g.all_edges().subsets().all(|edges: EdgeSet| {
        if !g.is_connected_on(g.all_vertices(), g.all_edges().difference(edges)) {
            return true;
        }
        let windows: Vec<(i64, i64)> = (0..n)
            .map(|v| {
                let m = mu.values()[v].floor().to_integer();
                (m - g.valence(v) as i64 - 1, m + g.valence(v) as i64 + 1)
            })
            .collect();
        let mut ok = true;
        let mut values = vec![0; n];
        product(&windows, 0, mu.degree() - edges.len() as i64, &mut values, &mut |vals| {
            let pd = PseudoDivisor::new(edges, vals.to_vec());
            ok &= is_quasistable(g, v0, mu, &pd) == quasistable_all_subsets(g, v0, mu, &pd);
        });
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn oracle_matches_on_named_graphs() {
        for (name, g) in named() {
            if g.edge_count() > 5 {
                continue;
            }
            let (_, r) = run_oracle(&g, 0, &Polarization::canonical(&g)).unwrap();
            assert!(r.all_match(), "{name}: {r:?}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(kirchhoff_count(&theta()), 12);
        assert_eq!(kirchhoff_count(&dumb()), 20);
        assert_eq!(kirchhoff_count(&k4()), 128);
    }
}
