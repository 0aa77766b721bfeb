//! Induced-subgraph embedding into symplectic graphs, and the switching
//! construction that turns an embedded pattern into a connected graph with
//! four eigenvalues and at least as many valencies as the pattern.

use crate::construct::{symplectic_graph, symplectic_rep, MAX_SYMPLECTIC_R};
use crate::error::{Error, Result};
use crate::graphcore::{
    induced_subgraph, is_isomorphic, seidel_switch, BitIter, Graph, Valencies, VertexSet,
};
use crate::spectra::{adjacency_spectrum, Spectrum};

/// Injective map from pattern vertices to host vertices preserving adjacency
/// and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Direct recheck, independent of the search.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        let n = pattern.order();
        if self.map.len() != n || self.map.iter().any(|&h| h >= host.order()) {
            return false;
        }
        let mut image = self.map.clone();
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        (0..n).all(|a| (a + 1..n).all(|b| pattern.has_edge(a, b) == host.has_edge(self.map[a], self.map[b])))
    }

    pub fn image(&self, host_order: usize) -> VertexSet {
        VertexSet::from_members(host_order, self.map.iter().copied())
    }
}

/// First induced embedding in lexicographic search order, or `None` if there
/// is none. Pattern vertices are placed by descending degree; candidates are
/// filtered by degree bounds and by consistency with every placed vertex.
pub fn find_induced_embedding(pattern: &Graph, host: &Graph) -> Option<Embedding> {
    let n = pattern.order();
    let big = host.order();
    if n > big {
        return None;
    }
    let words = host.words_per_row();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(pattern.degree(x)), x));

    let host_deg = host.degrees();
    let full = VertexSet::full(big);
    // Per pattern vertex: host vertices whose degree and co-degree are large enough.
    let allowed: Vec<Vec<u64>> = (0..n)
        .map(|x| {
            let d = pattern.degree(x);
            let co = n - 1 - d;
            let fits = (0..big).filter(|&h| host_deg[h] >= d && big - 1 - host_deg[h] >= co);
            VertexSet::from_members(big, fits).words().to_vec()
        })
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![0u64; words];
    if search(pattern, host, &order, &allowed, full.words(), 0, &mut map, &mut used) {
        Some(Embedding { map })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    pattern: &Graph,
    host: &Graph,
    order: &[usize],
    allowed: &[Vec<u64>],
    full: &[u64],
    depth: usize,
    map: &mut [usize],
    used: &mut [u64],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    let mut cand: Vec<u64> = allowed[x].iter().zip(used.iter()).map(|(a, u)| a & !u).collect();
    for &y in &order[..depth] {
        let row = host.row(map[y]);
        if pattern.has_edge(x, y) {
            cand.iter_mut().zip(row).for_each(|(c, r)| *c &= r);
        } else {
            cand.iter_mut().zip(row).zip(full).for_each(|((c, r), f)| *c &= !r & f);
        }
    }
    let list: Vec<usize> = BitIter::new(&cand).collect();
    for h in list {
        map[x] = h;
        used[h / 64] |= 1 << (h % 64);
        if search(pattern, host, order, allowed, full, depth + 1, map, used) {
            return true;
        }
        used[h / 64] &= !(1 << (h % 64));
        map[x] = usize::MAX;
    }
    false
}

/// Symplectic parameter used for a pattern on `n` vertices: `⌊n/2⌋ + 1`,
/// raised to 2 for a single vertex (r = 1 gives a trivial two-graph).
pub fn host_rank(n: usize) -> u32 {
    ((n / 2) as u32 + 1).max(2)
}

#[derive(Clone, Debug)]
pub struct BuildReport {
    pub result: Graph,
    pub r: u32,
    /// Image of the pattern in the switched graph (vertex = vector).
    pub u: VertexSet,
    /// `embedding.map[x]` is the switched-graph vertex of pattern vertex `x`.
    pub embedding: Embedding,
    /// `2^{2r−1} + 2·d_x − n` for every pattern vertex, as a multiset: `d_x`
    /// neighbours inside the image plus the `2^{2r} − n − (2^{2r−1} − d_x)`
    /// non-neighbours outside it.
    pub predicted_valencies: Valencies,
    pub spectrum: Spectrum,
    /// `Some(ok)` when exactly one vertex has valency `n`; `ok` says whether its
    /// neighbourhood induces a copy of the pattern.
    pub local_graph_check: Option<bool>,
    pub notes: Vec<String>,
}

impl BuildReport {
    /// Valencies of the image vertices in the result, as a multiset.
    pub fn image_valencies(&self) -> Valencies {
        multiset(self.u.iter().map(|v| self.result.degree(v)))
    }
}

fn multiset(items: impl Iterator<Item = usize>) -> Valencies {
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for d in items {
        *counts.entry(d).or_default() += 1;
    }
    Valencies(counts.into_iter().collect())
}

/// Embeds `delta` into Sp(2r) inside the symplectic two-graph on `2^{2r}`
/// vertices and switches with respect to the image.
pub fn theorem8_build(delta: &Graph) -> Result<BuildReport> {
    let n = delta.order();
    if n == 0 {
        return Err(Error::InvalidParameter("pattern must have at least one vertex".into()));
    }
    let r = host_rank(n);
    if r > MAX_SYMPLECTIC_R {
        return Err(Error::SizeExceeded { what: "pattern order (host rank)", got: n, limit: 2 * MAX_SYMPLECTIC_R as usize - 1 });
    }
    let rep = symplectic_rep(r)?;
    let sp = symplectic_graph(r)?;
    let emb = find_induced_embedding(delta, &sp).ok_or(Error::EmbeddingFailure { pattern: n, host: sp.order() })?;
    // Sp(2r) vertex i is vector i + 1.
    let embedding = Embedding { map: emb.map.iter().map(|&h| h + 1).collect() };
    let u = embedding.image(rep.order());
    let result = seidel_switch(&rep, &u);

    let half = 1usize << (2 * r - 1);
    let predicted_valencies = multiset((0..n).map(|x| half + 2 * delta.degree(x) - n));
    let spectrum = adjacency_spectrum(&result)?;

    let mut notes = Vec::new();
    let with_n: Vec<usize> = (0..result.order()).filter(|&v| result.degree(v) == n).collect();
    let local_graph_check = if with_n.len() == 1 {
        let local = induced_subgraph(&result, &result.neighborhood(with_n[0]));
        match is_isomorphic(&local, delta) {
            Ok(ok) => Some(ok),
            Err(e) => {
                notes.push(format!("local graph check skipped: {e}"));
                None
            }
        }
    } else {
        notes.push(format!("local graph check skipped: {} vertices have valency {n}", with_n.len()));
        None
    };

    Ok(BuildReport { result, r, u, embedding, predicted_valencies, spectrum, local_graph_check, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::symplectic_graph;

    #[test]
    fn triangle_in_sp4() {
        let sp = symplectic_graph(2).unwrap();
        let e = find_induced_embedding(&Graph::complete(3), &sp).unwrap();
        assert!(e.is_valid(&Graph::complete(3), &sp));
    }

    #[test]
    fn host_too_small() {
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert!(find_induced_embedding(&claw, &Graph::complete(3)).is_none());
        // K3 has no induced path
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(find_induced_embedding(&p3, &Graph::complete(5)).is_none());
    }

    #[test]
    fn empty_pattern_embeds() {
        let e = find_induced_embedding(&Graph::empty(0), &Graph::complete(3)).unwrap();
        assert!(e.map.is_empty());
    }

    #[test]
    fn invalid_embeddings_detected() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let host = Graph::complete(4);
        assert!(!Embedding { map: vec![0, 1, 2] }.is_valid(&p3, &host));
        assert!(!Embedding { map: vec![0, 0, 2] }.is_valid(&Graph::empty(3), &Graph::empty(4)));
    }

    #[test]
    fn path_pattern() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let rep = theorem8_build(&p3).unwrap();
        assert_eq!(rep.r, 2);
        assert_eq!(rep.predicted_valencies.to_string(), "7^(2),9^(1)");
        assert_eq!(rep.image_valencies(), rep.predicted_valencies);
        assert_eq!(rep.spectrum.distinct(), 4);
        assert_eq!(rep.local_graph_check, Some(true));
    }

    #[test]
    fn host_rank_rule() {
        assert_eq!(host_rank(1), 2);
        assert_eq!(host_rank(2), 2);
        assert_eq!(host_rank(3), 2);
        assert_eq!(host_rank(4), 3);
        assert_eq!(host_rank(5), 3);
        assert_eq!(host_rank(7), 4);
        assert!(matches!(theorem8_build(&Graph::empty(8)), Err(Error::SizeExceeded { .. })));
    }
}
