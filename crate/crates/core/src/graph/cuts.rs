use super::{EdgeSet, Graph, VertexSet};

/// Cuts, bonds and hemispheres of a graph, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutData {
    pub cuts: Vec<EdgeSet>,
    pub bonds: Vec<EdgeSet>,
    /// Proper nonempty `V` with `Γ(V)` and `Γ(V^c)` connected; both `V` and `V^c` appear.
    pub hemispheres: Vec<VertexSet>,
}

/// Enumerate every cut `E(V, V^c)` for `∅ ≠ V ⊊ V(Γ)`, the bonds among them and
/// the hemispheres. Exponential in the vertex count.
pub fn cut_and_bond_enumeration(g: &Graph) -> CutData {
    let n = g.vertex_count();
    let mut cuts = Vec::new();
    let mut hemis = Vec::new();
    if n >= 2 {
        let full = g.all_vertices();
        // fix vertex n-1 outside V to visit each complementary pair once
        for bits in 1..(1u64 << (n - 1)) {
            let set = VertexSet(bits);
            cuts.push(g.cut(set));
            let comp = full.difference(set);
            if g.induces_connected(set) && g.induces_connected(comp) {
                hemis.push(set);
                hemis.push(comp);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let bonds = cuts
        .iter()
        .copied()
        .filter(|c| !c.is_empty() && !cuts.iter().any(|d| !d.is_empty() && d != c && d.is_subset(*c)))
        .collect();
    hemis.sort();
    CutData { cuts, bonds, hemispheres: hemis }
}

/// Proper nonempty hemispheres of `g`, sorted.
pub fn hemispheres(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let full = g.all_vertices();
    for bits in 1..(1u64 << (n - 1)) {
        let set = VertexSet(bits);
        let comp = full.difference(set);
        if g.induces_connected(set) && g.induces_connected(comp) {
            out.push(set);
            out.push(comp);
        }
    }
    out.sort();
    out
}
