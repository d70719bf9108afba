use std::collections::{BTreeMap, VecDeque};

use super::PosetError;

/// A finite poset given by its cover relations, with rank recomputed as the
/// longest chain down to a minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPoset {
    size: usize,
    /// `(upper, lower)` pairs, sorted.
    covers: Vec<(usize, usize)>,
    rank: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl RankedPoset {
    /// Refuses cycles, repeated covers and any cover not dropping rank by one.
    pub fn new(size: usize, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PosetError> {
        let mut covers: Vec<(usize, usize)> = covers.into_iter().collect();
        covers.sort_unstable();
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= size || b >= size || a == b) {
            return Err(PosetError::InvalidCover(a, b));
        }
        if let Some(w) = covers.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::InvalidCover(w[0].0, w[0].1));
        }
        let mut up = vec![Vec::new(); size];
        let mut down = vec![Vec::new(); size];
        for &(a, b) in &covers {
            down[a].push(b);
            up[b].push(a);
        }
        // longest path from a minimal element, in topological order
        let mut pending: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..size).filter(|&v| pending[v] == 0).collect();
        let mut rank = vec![0usize; size];
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &up[v] {
                rank[w] = rank[w].max(rank[v] + 1);
                pending[w] -= 1;
                if pending[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if seen != size {
            return Err(PosetError::Cyclic);
        }
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| rank[a] != rank[b] + 1) {
            return Err(PosetError::NotRanked(a, b));
        }
        Ok(RankedPoset { size, covers, rank, up, down })
    }

    /// Covers-only JSON `{"size":N,"covers":[[upper,lower],...]}`; a full
    /// poset document with `"elements"` is also accepted.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, PosetError> {
        let bad = |m: &str| PosetError::Format(m.to_string());
        let size = match value.get("size") {
            Some(s) => s.as_u64().ok_or_else(|| bad("\"size\" must be a nonnegative integer"))? as usize,
            None => value
                .get("elements")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("expected \"size\" or \"elements\""))?
                .len(),
        };
        let list = value.get("covers").and_then(|c| c.as_array()).ok_or_else(|| bad("expected \"covers\" array"))?;
        let mut covers = Vec::with_capacity(list.len());
        for (i, c) in list.iter().enumerate() {
            let pair = c.as_array().filter(|a| a.len() >= 2).ok_or_else(|| bad(&format!("covers[{i}] is not a pair")))?;
            let a = pair[0].as_u64().ok_or_else(|| bad(&format!("covers[{i}][0] is not an index")))?;
            let b = pair[1].as_u64().ok_or_else(|| bad(&format!("covers[{i}][1] is not an index")))?;
            covers.push((a as usize, b as usize));
        }
        RankedPoset::new(size, covers)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "size": self.size, "covers": self.covers })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Elements covering `x`.
    pub fn parents(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Elements covered by `x`.
    pub fn children(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn rank_histogram(&self) -> Vec<usize> {
        let top = self.rank.iter().copied().max().map_or(0, |r| r + 1);
        let mut h = vec![0; top];
        for &r in &self.rank {
            h[r] += 1;
        }
        h
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.covers.binary_search(&(a, b)).is_ok()
    }

    /// Whether `a ≥ b`.
    pub fn leq(&self, b: usize, a: usize) -> bool {
        if a == b {
            return true;
        }
        let mut stack = vec![a];
        let mut seen = vec![false; self.size];
        while let Some(x) = stack.pop() {
            for &y in &self.down[x] {
                if y == b {
                    return true;
                }
                if !seen[y] && self.rank[y] > self.rank[b] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// An element bijection between two posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetIso {
    pub map: Vec<usize>,
}

impl PosetIso {
    pub fn identity(n: usize) -> Self {
        PosetIso { map: (0..n).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        PosetIso { map: inv }
    }

    /// Bijective, rank-preserving and carrying covers exactly onto covers.
    pub fn verify(&self, p: &RankedPoset, q: &RankedPoset) -> bool {
        if self.map.len() != p.size || p.size != q.size || p.covers.len() != q.covers.len() {
            return false;
        }
        let mut hit = vec![false; q.size];
        for (i, &j) in self.map.iter().enumerate() {
            if j >= q.size || hit[j] || p.rank[i] != q.rank[j] {
                return false;
            }
            hit[j] = true;
        }
        p.covers.iter().all(|&(a, b)| q.is_cover(self.map[a], self.map[b]))
    }
}

/// An order isomorphism `p → q`, or `None` when none exists.
pub fn poset_isomorphism(p: &RankedPoset, q: &RankedPoset) -> Option<PosetIso> {
    poset_isomorphism_labeled(p, &vec![(); p.size], q, &vec![(); q.size])
}

/// Isomorphism that also carries each element label to an equal label.
///
/// Joint color refinement on both Hasse diagrams, then backtracking in
/// breadth-first order with candidates drawn from neighbours of already
/// mapped images.
pub fn poset_isomorphism_labeled<L: Ord + Clone>(p: &RankedPoset, pl: &[L], q: &RankedPoset, ql: &[L]) -> Option<PosetIso> {
    if p.size != q.size || p.covers.len() != q.covers.len() || p.rank_histogram() != q.rank_histogram() {
        return None;
    }
    let (pc, qc) = refine(p, pl, q, ql);
    let mut hp = pc.clone();
    let mut hq = qc.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    let order = search_order(p, &pc);
    let mut state = Search { p, q, pc: &pc, qc: &qc, map: vec![usize::MAX; p.size], used: vec![false; q.size] };
    if state.extend(&order, 0) {
        Some(PosetIso { map: state.map })
    } else {
        None
    }
}

/// Stable joint coloring of both posets.
fn refine<L: Ord + Clone>(p: &RankedPoset, pl: &[L], q: &RankedPoset, ql: &[L]) -> (Vec<usize>, Vec<usize>) {
    let initial = |r: &RankedPoset, l: &[L]| -> Vec<(L, usize, usize, usize)> {
        (0..r.size).map(|x| (l[x].clone(), r.rank[x], r.up[x].len(), r.down[x].len())).collect()
    };
    let (mut pc, mut qc) = renumber(initial(p, pl), initial(q, ql));
    let mut classes = count_classes(&pc, &qc);
    loop {
        let sig = |r: &RankedPoset, c: &[usize]| -> Vec<(usize, Vec<usize>, Vec<usize>)> {
            (0..r.size)
                .map(|x| {
                    let mut u: Vec<usize> = r.up[x].iter().map(|&y| c[y]).collect();
                    let mut d: Vec<usize> = r.down[x].iter().map(|&y| c[y]).collect();
                    u.sort_unstable();
                    d.sort_unstable();
                    (c[x], u, d)
                })
                .collect()
        };
        let (np, nq) = renumber(sig(p, &pc), sig(q, &qc));
        let n = count_classes(&np, &nq);
        pc = np;
        qc = nq;
        if n == classes {
            return (pc, qc);
        }
        classes = n;
    }
}

fn renumber<K: Ord + Clone>(a: Vec<K>, b: Vec<K>) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<K, usize> = a.iter().chain(b.iter()).map(|k| (k.clone(), 0)).collect();
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (a.iter().map(|k| ids[k]).collect(), b.iter().map(|k| ids[k]).collect())
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Breadth-first over the undirected Hasse diagram, each component rooted at
/// its element of rarest color.
fn search_order(p: &RankedPoset, colors: &[usize]) -> Vec<usize> {
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colors {
        *freq.entry(c).or_default() += 1;
    }
    let mut roots: Vec<usize> = (0..p.size).collect();
    roots.sort_by_key(|&x| (freq[&colors[x]], colors[x], x));
    let mut seen = vec![false; p.size];
    let mut order = Vec::with_capacity(p.size);
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in p.up[x].iter().chain(&p.down[x]) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    p: &'a RankedPoset,
    q: &'a RankedPoset,
    pc: &'a [usize],
    qc: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, order: &[usize], depth: usize) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        let anchor = self.p.up[x].iter().chain(&self.p.down[x]).find(|&&y| self.map[y] != usize::MAX).copied();
        let candidates: Vec<usize> = match anchor {
            Some(y) => {
                let img = self.map[y];
                if self.p.up[x].contains(&y) {
                    self.q.down[img].clone()
                } else {
                    self.q.up[img].clone()
                }
            }
            None => (0..self.q.size).collect(),
        };
        for c in candidates {
            if self.used[c] || self.qc[c] != self.pc[x] || !self.consistent(x, c) {
                continue;
            }
            self.map[x] = c;
            self.used[c] = true;
            if self.extend(order, depth + 1) {
                return true;
            }
            self.used[c] = false;
            self.map[x] = usize::MAX;
        }
        false
    }

    /// Mapped neighbours of `x` go to neighbours of `c` of the same kind, and
    /// `c` has no other mapped-to neighbours.
    fn consistent(&self, x: usize, c: usize) -> bool {
        let check = |pn: &[usize], qn: &[usize]| {
            let mut mapped = 0;
            for &y in pn {
                if self.map[y] != usize::MAX {
                    if !qn.contains(&self.map[y]) {
                        return false;
                    }
                    mapped += 1;
                }
            }
            mapped == qn.iter().filter(|&&z| self.used[z]).count()
        };
        check(&self.p.up[x], &self.q.up[c]) && check(&self.p.down[x], &self.q.down[c])
    }
}
