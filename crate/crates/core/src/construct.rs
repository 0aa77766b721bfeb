//! Graph families with few eigenvalues and many valencies.

use crate::error::{Error, Result};
use crate::graphcore::{add_apex, complement, complete_bipartite, disjoint_union, Graph, VertexSet};
use crate::spectra::{cluster, Spectrum, DEFAULT_CLUSTER_TOL};

/// Largest symplectic parameter built (`2^{2r}` = 256 vertices).
pub const MAX_SYMPLECTIC_R: u32 = 4;

/// Disjoint union of `f > 1` pairwise non-isomorphic complete bipartite
/// graphs `K_{a_i, b_i}` sharing the edge count `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteFamily {
    pairs: Vec<(usize, usize)>,
    e: usize,
}

impl BipartiteFamily {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::InvalidParameter("a family needs at least two components".into()));
        }
        if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::InvalidParameter("class sizes must be positive".into()));
        }
        let e = pairs[0].0 * pairs[0].1;
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a * b != e) {
            return Err(Error::InvalidParameter(format!("K_{{{a},{b}}} does not have {e} edges")));
        }
        let mut shapes: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        shapes.sort_unstable();
        if shapes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("components must be pairwise non-isomorphic".into()));
        }
        Ok(BipartiteFamily { pairs, e })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Common edge count.
    pub fn e(&self) -> usize {
        self.e
    }

    /// Number of components.
    pub fn f(&self) -> usize {
        self.pairs.len()
    }

    /// Multiplicity of 0 in the union.
    pub fn g(&self) -> usize {
        self.order() - 2 * self.f()
    }

    /// Vertex count of the union.
    pub fn order(&self) -> usize {
        self.pairs.iter().map(|&(a, b)| a + b).sum()
    }

    pub fn union(&self) -> Graph {
        let parts: Vec<Graph> = self.pairs.iter().map(|&(a, b)| complete_bipartite(a, b)).collect();
        disjoint_union(&parts)
    }

    /// Vertex ranges `(a-class, b-class)` of each component in [`Self::union`].
    pub fn classes(&self) -> Vec<(std::ops::Range<usize>, std::ops::Range<usize>)> {
        let mut off = 0;
        self.pairs
            .iter()
            .map(|&(a, b)| {
                let r = (off..off + a, off + a..off + a + b);
                off += a + b;
                r
            })
            .collect()
    }
}

/// `e = 2^{t−1}` with components `K_{2^i, 2^{t−1−i}}`, `i = 0..=⌊(t−1)/2⌋`.
pub fn standard_family(t: u32) -> Result<BipartiteFamily> {
    if t < 3 {
        return Err(Error::InvalidParameter(format!("standard family needs t ≥ 3, got {t}")));
    }
    if t > 40 {
        return Err(Error::SizeExceeded { what: "family parameter t", got: t as usize, limit: 40 });
    }
    let pairs = (0..=(t - 1) / 2).map(|i| (1usize << i, 1usize << (t - 1 - i))).collect();
    BipartiteFamily::new(pairs)
}

/// Which colour class of a component the apex joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Side {
    A,
    #[default]
    B,
}

/// Apex joined to one whole colour class of every component: connected,
/// bipartite, five distinct eigenvalues.
pub fn theorem1_graph(fam: &BipartiteFamily, sides: &[Side]) -> Graph {
    assert_eq!(sides.len(), fam.f(), "one side per component");
    let n = fam.order();
    let mut attach = VertexSet::empty(n);
    for ((a, b), side) in fam.classes().into_iter().zip(sides) {
        for v in match side {
            Side::A => a,
            Side::B => b,
        } {
            attach.insert(v);
        }
    }
    add_apex(&fam.union(), &attach)
}

/// [`theorem1_graph`] with every apex edge going to the second listed class.
pub fn theorem1_default(fam: &BipartiteFamily) -> Graph {
    theorem1_graph(fam, &vec![Side::default(); fam.f()])
}

/// Apex joined to an arbitrary nonempty subset of each component.
/// `attach[i]` lists vertices local to component `i` (0-based within it).
pub fn mohar_graph(fam: &BipartiteFamily, attach: &[Vec<usize>]) -> Result<Graph> {
    if attach.len() != fam.f() {
        return Err(Error::InvalidParameter(format!("need {} attachment sets, got {}", fam.f(), attach.len())));
    }
    let n = fam.order();
    let mut set = VertexSet::empty(n);
    let mut off = 0;
    for (i, (&(a, b), local)) in fam.pairs().iter().zip(attach).enumerate() {
        if local.is_empty() {
            return Err(Error::InvalidParameter(format!("attachment set {i} is empty")));
        }
        for &x in local {
            if x >= a + b {
                return Err(Error::InvalidParameter(format!("vertex {x} outside component {i}")));
            }
            set.insert(off + x);
        }
        off += a + b;
    }
    Ok(add_apex(&fam.union(), &set))
}

/// Closed-form spectrum of the complement of a union of `f` complete
/// bipartite graphs with `e` edges each on `v` vertices:
/// `{ρ₁, (√e−1)^(f−1), ρ₂, (−1)^(v−2f), (−1−√e)^(f−1)}` with
/// `ρ₁,₂ = −1 + v/2 ± ½√(v² − 4e(2f−1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplementSpectrum {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub rho1: f64,
    pub rho2: f64,
}

impl ComplementSpectrum {
    pub fn new(v: usize, e: usize, f: usize) -> Self {
        let vf = v as f64;
        let disc = vf * vf - 4.0 * e as f64 * (2.0 * f as f64 - 1.0);
        let root = disc.max(0.0).sqrt();
        ComplementSpectrum { v, e, f, rho1: -1.0 + vf / 2.0 + root / 2.0, rho2: -1.0 + vf / 2.0 - root / 2.0 }
    }

    /// Eigenvalues with multiplicity, descending; zero-multiplicity terms dropped.
    pub fn values(&self) -> Vec<(f64, usize)> {
        let se = (self.e as f64).sqrt();
        let mut vals = vec![
            (self.rho1, 1),
            (se - 1.0, self.f - 1),
            (self.rho2, 1),
            (-1.0, self.v - 2 * self.f),
            (-1.0 - se, self.f - 1),
        ];
        vals.retain(|&(_, m)| m > 0);
        vals.sort_by(|a, b| b.0.total_cmp(&a.0));
        vals
    }

    /// Fails when ρ₁ or ρ₂ collides with one of the other three values.
    pub fn check_distinct(&self, tol: f64) -> Result<()> {
        let se = (self.e as f64).sqrt();
        let others = [se - 1.0, -1.0, -1.0 - se];
        for (name, rho) in [("ρ₁", self.rho1), ("ρ₂", self.rho2)] {
            if let Some(x) = others.iter().find(|&&x| (x - rho).abs() <= tol) {
                return Err(Error::DistinctnessViolation(format!("{name} = {rho} coincides with {x}")));
            }
        }
        if (self.rho1 - self.rho2).abs() <= tol {
            return Err(Error::DistinctnessViolation("ρ₁ = ρ₂".into()));
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Spectrum {
        let expanded: Vec<f64> =
            self.values().into_iter().flat_map(|(x, m)| std::iter::repeat_n(x, m)).collect();
        cluster(&expanded, DEFAULT_CLUSTER_TOL)
    }
}

/// Complement of the family's union: connected, non-bipartite, five distinct
/// eigenvalues. The five values are recomputed and checked for collisions.
pub fn theorem3_graph(fam: &BipartiteFamily) -> Result<Graph> {
    let closed = ComplementSpectrum::new(fam.order(), fam.e(), fam.f());
    closed.check_distinct(DEFAULT_CLUSTER_TOL)?;
    Ok(complement(&fam.union()))
}

/// `f` disjoint edges plus an apex joined to one endpoint of each.
pub fn spider(f: usize) -> Graph {
    assert!(f >= 1, "a spider needs at least one leg");
    let mut g = Graph::empty(2 * f + 1);
    for i in 0..f {
        g.add_edge(2 * i, 2 * i + 1);
        g.add_edge(2 * f, 2 * i);
    }
    g
}

/// The hyperbolic symplectic form on GF(2)^{2r}. A vector is a `u32` whose
/// low `r` bits are the first half of the coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticHost {
    pub r: u32,
}

impl SymplecticHost {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("symplectic rank must be positive".into()));
        }
        if r > MAX_SYMPLECTIC_R {
            return Err(Error::SizeExceeded { what: "symplectic parameter r", got: r as usize, limit: MAX_SYMPLECTIC_R as usize });
        }
        Ok(SymplecticHost { r })
    }

    pub fn dimension(&self) -> u32 {
        2 * self.r
    }

    pub fn vector_count(&self) -> usize {
        1 << (2 * self.r)
    }

    /// `⟨u,v⟩ = Σ (u_i v_{r+i} + u_{r+i} v_i) mod 2`.
    #[inline]
    pub fn form(&self, u: u32, v: u32) -> bool {
        let lo = (1u32 << self.r) - 1;
        let x = (u & lo) & (v >> self.r) ^ (u >> self.r) & (v & lo);
        x.count_ones() % 2 == 1
    }
}

/// Graph on all of GF(2)^{2r}, `u ~ v` iff `⟨u,v⟩ = 1`. Vertex `i` is the
/// vector with bit pattern `i`; vertex 0 is isolated.
pub fn symplectic_rep(r: u32) -> Result<Graph> {
    let host = SymplecticHost::new(r)?;
    let n = host.vector_count();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if host.form(u as u32, v as u32) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Sp(2r): the nonzero vectors; vertex `i` is the vector `i + 1`.
pub fn symplectic_graph(r: u32) -> Result<Graph> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("symplectic graph needs r ≥ 2, got {r}")));
    }
    let rep = symplectic_rep(r)?;
    let mut nonzero = VertexSet::full(rep.order());
    nonzero.remove(0);
    Ok(crate::graphcore::induced_subgraph(&rep, &nonzero))
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley graph on the integers mod a prime `q ≡ 1 (mod 4)`.
pub fn paley_graph(q: usize) -> Result<Graph> {
    if !is_prime(q as u64) || q % 4 != 1 {
        return Err(Error::InvalidParameter(format!("Paley graphs need a prime q ≡ 1 mod 4, got {q}")));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let mut g = Graph::empty(q);
    for i in 0..q {
        for j in i + 1..q {
            if residue[j - i] {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::valency_histogram;

    #[test]
    fn standard_families() {
        let f3 = standard_family(3).unwrap();
        assert_eq!(f3.pairs(), &[(1, 4), (2, 2)]);
        assert_eq!((f3.e(), f3.f(), f3.g()), (4, 2, 5));
        let f4 = standard_family(4).unwrap();
        assert_eq!(f4.pairs(), &[(1, 8), (2, 4)]);
        assert_eq!((f4.e(), f4.f(), f4.g()), (8, 2, 11));
        let f5 = standard_family(5).unwrap();
        assert_eq!(f5.pairs(), &[(1, 16), (2, 8), (4, 4)]);
        assert_eq!((f5.e(), f5.f(), f5.g()), (16, 3, 29));
        assert!(standard_family(2).is_err());
    }

    #[test]
    fn family_validation() {
        assert!(BipartiteFamily::new(vec![(1, 4)]).is_err());
        assert!(BipartiteFamily::new(vec![(1, 4), (2, 3)]).is_err());
        assert!(BipartiteFamily::new(vec![(1, 4), (4, 1)]).is_err());
        assert!(BipartiteFamily::new(vec![(1, 4), (2, 2)]).is_ok());
    }

    #[test]
    fn spider_shapes() {
        let s1 = spider(1);
        assert_eq!(s1, Graph::from_edges(3, [(0, 1), (2, 0)]));
        let s3 = spider(3);
        assert_eq!(s3.order(), 7);
        assert_eq!(s3.edge_count(), 6);
        assert_eq!(s3.degree(6), 3);
    }

    #[test]
    fn symplectic_form_properties() {
        for r in 1..=3 {
            let h = SymplecticHost::new(r).unwrap();
            let n = h.vector_count() as u32;
            for u in 0..n {
                assert!(!h.form(u, u));
                if u != 0 {
                    assert!((0..n).any(|v| h.form(u, v)), "degenerate at {u}");
                }
                for v in 0..n {
                    assert_eq!(h.form(u, v), h.form(v, u));
                }
            }
        }
        assert!(SymplecticHost::new(5).is_err());
        assert!(SymplecticHost::new(0).is_err());
    }

    #[test]
    fn symplectic_small() {
        let g = symplectic_rep(1).unwrap();
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.edge_count(), 3);
        let g2 = symplectic_rep(2).unwrap();
        assert_eq!(valency_histogram(&g2).to_string(), "0^(1),8^(15)");
        assert!(symplectic_graph(1).is_err());
    }

    #[test]
    fn paley_validation() {
        assert!(paley_graph(7).is_err());
        assert!(paley_graph(9).is_err());
        let c5 = paley_graph(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(valency_histogram(&c5).to_string(), "2^(5)");
    }

    #[test]
    fn mohar_validation() {
        let f = standard_family(3).unwrap();
        assert!(mohar_graph(&f, &[vec![0], vec![]]).is_err());
        assert!(mohar_graph(&f, &[vec![0], vec![7]]).is_err());
        assert!(mohar_graph(&f, &[vec![0]]).is_err());
        let g = mohar_graph(&f, &[vec![1, 2, 3, 4], vec![2, 3]]).unwrap();
        assert_eq!(g, theorem1_default(&f));
    }
}
