//! Symmetric eigenvalues, multiplicity clustering, and exact integer
//! certificates.
//!
//! Floating point is only used to locate candidate values. Every certificate
//! is confirmed by an identity checked in integer arithmetic on the original
//! matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::graphcore::{valency_histogram, Graph};
use crate::twograph::TwoGraphParams;

/// Stop rotating once every off-diagonal entry is below this.
pub const DEFAULT_OFF_TOL: f64 = 1e-12;
/// Default distance under which eigenvalues are merged into one cluster.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
const MAX_SWEEPS: usize = 100;

/// Result of a Jacobi run.
#[derive(Clone, Debug)]
pub struct Eigenvalues {
    /// Descending.
    pub values: Vec<f64>,
    /// Frobenius norm of the off-diagonal part at termination; bounds the
    /// absolute error of every eigenvalue.
    pub off_norm: f64,
    pub sweeps: usize,
}

/// Cyclic-by-row Jacobi on a dense symmetric matrix (row-major, `n × n`).
pub fn jacobi_eigenvalues(m: &[f64], n: usize, off_tol: f64) -> Result<Eigenvalues> {
    assert_eq!(m.len(), n * n, "matrix must be n × n");
    for i in 0..n {
        for j in i + 1..n {
            if m[i * n + j] != m[j * n + i] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut a = m.to_vec();
    let mut sweeps = 0;
    loop {
        let max_off = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].abs())
            .fold(0.0, f64::max);
        if max_off < off_tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                // Negligible next to both diagonal entries: drop it instead of
                // rotating. Between equal diagonal entries a rotation would be
                // 45° whatever the size of apq, undoing earlier progress.
                let g = 100.0 * apq.abs();
                let (app, aqq) = (a[p * n + p].abs(), a[q * n + q].abs());
                if sweeps > 4 && app + g == app && aqq + g == aqq {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    a[k * n + p] = np;
                    a[p * n + k] = np;
                    a[k * n + q] = nq;
                    a[q * n + k] = nq;
                }
            }
        }
    }
    let off_norm = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| a[i * n + j] * a[i * n + j])
        .sum::<f64>()
        .sqrt();
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Eigenvalues { values, off_norm, sweeps })
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn sym_eigenvalues(m: &[f64], n: usize, off_tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi_eigenvalues(m, n, off_tol)?.values)
}

/// Clustered eigenvalues: `(value, multiplicity)` pairs, descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub pairs: Vec<(f64, usize)>,
    pub tol: f64,
}

impl Spectrum {
    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    pub fn dimension(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    /// Largest eigenvalue (first cluster mean).
    pub fn radius(&self) -> Option<f64> {
        self.pairs.first().map(|&(x, _)| x)
    }

    pub fn multiplicity_of(&self, x: f64) -> usize {
        self.pairs.iter().find(|&&(y, _)| (x - y).abs() <= self.tol).map_or(0, |&(_, m)| m)
    }

    /// Eigenvalues repeated by multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs.iter().flat_map(|&(x, m)| std::iter::repeat_n(x, m)).collect()
    }

    pub fn trace(&self) -> f64 {
        self.pairs.iter().map(|&(x, m)| x * m as f64).sum()
    }

    pub fn trace_of_square(&self) -> f64 {
        self.pairs.iter().map(|&(x, m)| x * x * m as f64).sum()
    }

    /// Same multiplicities and every eigenvalue within `tol` of its partner.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.max_deviation(other).is_some_and(|d| d < tol)
    }

    /// `None` when the cluster structure differs.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        if self.pairs.len() != other.pairs.len() {
            return None;
        }
        let mut worst: f64 = 0.0;
        for (&(x, m), &(y, k)) in self.pairs.iter().zip(&other.pairs) {
            if m != k {
                return None;
            }
            worst = worst.max((x - y).abs());
        }
        Some(worst)
    }
}

/// Prints a number with at most four decimals, trailing zeros dropped.
pub fn format_value(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(x, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}^({m})", format_value(x))?;
        }
        Ok(())
    }
}

/// Sorts descending, then groups greedily: a value joins the current cluster
/// when within `tol` of the cluster's running mean.
pub fn cluster(values: &[f64], tol: f64) -> Spectrum {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut pairs: Vec<(f64, usize)> = Vec::new();
    let mut sum = 0.0;
    for &x in &sorted {
        match pairs.last_mut() {
            Some((mean, m)) if (x - *mean).abs() <= tol => {
                sum += x;
                *m += 1;
                *mean = sum / *m as f64;
            }
            _ => {
                sum = x;
                pairs.push((x, 1));
            }
        }
    }
    Spectrum { pairs, tol }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Adjacency,
    Seidel,
}

pub fn graph_matrix(g: &Graph, kind: MatrixKind) -> Vec<i64> {
    match kind {
        MatrixKind::Adjacency => g.adjacency_matrix(),
        MatrixKind::Seidel => g.seidel_matrix(),
    }
}

pub fn graph_spectrum(g: &Graph, kind: MatrixKind, tol: f64) -> Result<Spectrum> {
    let n = g.order();
    let m: Vec<f64> = graph_matrix(g, kind).into_iter().map(|x| x as f64).collect();
    let values = sym_eigenvalues(&m, n, DEFAULT_OFF_TOL)?;
    Ok(cluster(&values, tol))
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    graph_spectrum(g, MatrixKind::Adjacency, DEFAULT_CLUSTER_TOL)
}

pub fn seidel_spectrum(g: &Graph) -> Result<Spectrum> {
    graph_spectrum(g, MatrixKind::Seidel, DEFAULT_CLUSTER_TOL)
}

/// Backward check of a computed spectrum against exact traces of the matrix:
/// `|Σλm − tr M| < 1e-8·n` and `|Σλ²m − tr M²| < 1e-6·n²`.
pub fn backward_check(spec: &Spectrum, m: &[i64], n: usize) -> bool {
    let trace: i64 = (0..n).map(|i| m[i * n + i]).sum();
    let trace_sq: i64 = m.iter().map(|x| x * x).sum();
    let nf = n as f64;
    (spec.trace() - trace as f64).abs() < 1e-8 * nf.max(1.0)
        && (spec.trace_of_square() - trace_sq as f64).abs() < 1e-6 * (nf * nf).max(1.0)
}

fn integer_square(m: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let a = m[i * n + k];
            if a == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += a * m[k * n + j];
            }
        }
    }
    out
}

fn nearest_integer(x: f64, what: &str) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() > 1e-6 {
        return Err(Error::Refused(format!("{what} {x} is not within 1e-6 of an integer")));
    }
    Ok(r as i64)
}

/// Certifies that `g`'s Seidel matrix has exactly the two eigenvalues in
/// `spec`, recovering the two-graph parameters.
///
/// The numeric sum and product of the two eigenvalues are rounded to integers
/// `s`, `p`; then `S² − sS + pI = 0` is verified entrywise in integer
/// arithmetic, and `p = −(v − 1)` (the diagonal of `S²`).
pub fn seidel_two_ev_certificate(g: &Graph, spec: &Spectrum) -> Result<TwoGraphParams> {
    let v = g.order();
    if spec.distinct() != 2 {
        return Err(Error::Refused(format!("Seidel spectrum has {} distinct values, not 2", spec.distinct())));
    }
    if spec.dimension() != v {
        return Err(Error::Refused(format!("spectrum dimension {} does not match order {v}", spec.dimension())));
    }
    let (hi, m_hi) = spec.pairs[0];
    let (lo, m_lo) = spec.pairs[1];
    let s = nearest_integer(hi + lo, "eigenvalue sum")?;
    let p = nearest_integer(hi * lo, "eigenvalue product")?;
    let sm = g.seidel_matrix();
    let sq = integer_square(&sm, v);
    for i in 0..v {
        for j in 0..v {
            let id = if i == j { p } else { 0 };
            if sq[i * v + j] - s * sm[i * v + j] + id != 0 {
                return Err(Error::Refused(format!("S² − ({s})S + ({p})I is nonzero at ({i}, {j})")));
            }
        }
    }
    if p != -(v as i64 - 1) {
        return Err(Error::Refused(format!("eigenvalue product {p} differs from −(v−1) = {}", 1 - v as i64)));
    }
    // Roots of x² − sx + p from the certified integers; exact when the
    // discriminant is a perfect square. −1−2σ is the smaller root.
    let disc = s * s - 4 * p;
    let root = (disc as f64).sqrt();
    let r = root.round() as i64;
    let root = if r * r == disc { r as f64 } else { root };
    let (hi, lo) = ((s as f64 + root) / 2.0, (s as f64 - root) / 2.0);
    Ok(TwoGraphParams {
        v,
        sigma: (-1.0 - lo) / 2.0,
        tau: (-1.0 - hi) / 2.0,
        m_sigma: m_lo,
        m_tau: m_hi,
        seidel_sum: s,
        seidel_product: p,
    })
}

/// Strongly regular parameters `(v, k, λ, μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    pub fn new(v: i64, k: i64, lambda: i64, mu: i64) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn satisfies_count_identity(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }

    pub fn is_feasible(&self) -> bool {
        0 <= self.mu && self.mu <= self.k && self.k < self.v && self.satisfies_count_identity()
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Reads `λ` and `μ` off one adjacent and one non-adjacent pair, then verifies
/// `A² = kI + λA + μ(J − I − A)` on every entry.
pub fn srg_certificate(g: &Graph) -> Result<SrgParams> {
    let n = g.order();
    let hist = valency_histogram(g);
    if hist.distinct() != 1 {
        return Err(Error::Refused(format!("not regular: valencies {hist}")));
    }
    let k = hist.0[0].0;
    if k == 0 {
        return Err(Error::Refused("empty graph".into()));
    }
    if k + 1 == n {
        return Err(Error::Refused("complete graph".into()));
    }
    let mut lambda = None;
    let mut mu = None;
    for a in 0..n {
        for b in a + 1..n {
            let c = g.common_neighbors(a, b);
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => {
                    let name = if g.has_edge(a, b) { "λ" } else { "μ" };
                    return Err(Error::Refused(format!(
                        "{name} not constant: pair ({a}, {b}) has {c} common neighbours, expected {x}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let (lambda, mu) = (lambda.unwrap(), mu.unwrap());
    // Diagonal of A² is k by regularity; off-diagonal entries were all checked
    // against the constants above, which is the full identity.
    Ok(SrgParams::new(n as i64, k as i64, lambda as i64, mu as i64))
}

/// Cauchy interlacing with tolerance: for `i = 1..m`,
/// `θ_i(outer) ≥ θ_i(inner) ≥ θ_{i+n−m}(outer)`.
pub fn interlaces(outer: &Spectrum, inner: &Spectrum, tol: f64) -> bool {
    let a = outer.expanded();
    let b = inner.expanded();
    let (n, m) = (a.len(), b.len());
    if m > n {
        return false;
    }
    (0..m).all(|i| a[i] + tol >= b[i] && b[i] + tol >= a[i + n - m])
}
