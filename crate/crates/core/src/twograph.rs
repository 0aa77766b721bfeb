//! Regular two-graphs: parameter detection, edge-count spectrum prediction,
//! the strongly regular members of a switching class, and structural audits.

use std::fmt;

use crate::error::{Error, Result};
use crate::graphcore::{classify, components, seidel_switch, Graph};
use crate::spectra::{
    cluster, seidel_spectrum, seidel_two_ev_certificate, srg_certificate, Spectrum, SrgParams, DEFAULT_CLUSTER_TOL,
};

/// Seidel eigenstructure of a regular two-graph: Seidel eigenvalues
/// `−1−2σ` (multiplicity `m_sigma`) and `−1−2τ` (multiplicity `m_tau`), σ > τ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoGraphParams {
    pub v: usize,
    pub sigma: f64,
    pub tau: f64,
    pub m_sigma: usize,
    pub m_tau: usize,
    /// Exact sum of the two Seidel eigenvalues.
    pub seidel_sum: i64,
    /// Exact product of the two Seidel eigenvalues; equals `−(v−1)`.
    pub seidel_product: i64,
}

fn as_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < 1e-9).then_some(r as i64)
}

impl TwoGraphParams {
    /// `(σ, τ)` when both are integers.
    pub fn integral(&self) -> Option<(i64, i64)> {
        Some((as_integer(self.sigma)?, as_integer(self.tau)?))
    }

    /// Equal multiplicities with irrational σ, τ = −½ ± ½√(v−1).
    pub fn is_conference(&self) -> bool {
        self.integral().is_none()
    }

    /// Contains the complete or the empty graph.
    pub fn is_trivial(&self) -> bool {
        self.m_sigma <= 1 || self.m_tau <= 1
    }

    /// `σ + τ`, exactly, as a half-integer numerator: returns `2(σ+τ)`.
    fn twice_sum(&self) -> i64 {
        -2 - self.seidel_sum
    }

    /// `4στ`, exactly.
    fn four_product(&self) -> i64 {
        1 + self.seidel_sum + self.seidel_product
    }

    /// Checks the five edge-free identities in exact integer arithmetic:
    /// multiplicities sum to `v`, `Σmσ = −v/2`, `Σmσ² = v²/4`,
    /// `v − 1 = −(2σ+1)(2τ+1)`, and `σ + τ + v/2 = −2στ`.
    pub fn identities_hold(&self) -> bool {
        let v = self.v as i64;
        let (ms, mt) = (self.m_sigma as i64, self.m_tau as i64);
        if ms + mt != v {
            return false;
        }
        // (2σ+1)(2τ+1) = 4στ + 2(σ+τ) + 1
        if self.four_product() + self.twice_sum() + 1 != -(v - 1) {
            return false;
        }
        // 2(σ+τ) + v = −4στ
        if self.twice_sum() + v != -self.four_product() {
            return false;
        }
        match self.integral() {
            Some((s, t)) => 2 * (ms * s + mt * t) == -v && 4 * (ms * s * s + mt * t * t) == v * v,
            None => {
                // Irrational roots force equal multiplicities; use symmetric functions.
                if ms != mt {
                    return false;
                }
                let sum2 = self.twice_sum(); // 2(σ+τ)
                let sq4 = sum2 * sum2 - 2 * self.four_product(); // 4(σ²+τ²)
                ms * sum2 == -v && ms * sq4 == v * v
            }
        }
    }

    /// Parameters of the strongly regular graph left after isolating a vertex,
    /// `(v−1, −2στ, σ+τ−στ, −στ)`; `None` if they are not integers.
    pub fn descendant_srg(&self) -> Option<SrgParams> {
        let fp = self.four_product();
        let ts = self.twice_sum();
        if fp % 4 != 0 || (2 * ts - fp) % 4 != 0 {
            return None;
        }
        Some(SrgParams::new(self.v as i64 - 1, -fp / 2, (2 * ts - fp) / 4, -fp / 4))
    }
}

impl fmt::Display for TwoGraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v={} sigma={} tau={} m_sigma={} m_tau={}",
            self.v,
            crate::spectra::format_value(self.sigma),
            crate::spectra::format_value(self.tau),
            self.m_sigma,
            self.m_tau
        )
    }
}

/// Recognises a graph lying in a regular two-graph.
pub fn detect(g: &Graph) -> Result<TwoGraphParams> {
    if g.order() < 2 {
        return Err(Error::InvalidParameter("two-graph detection needs at least 2 vertices".into()));
    }
    let spec = seidel_spectrum(g)?;
    let p = seidel_two_ev_certificate(g, &spec)?;
    if p.is_trivial() {
        return Err(Error::TrivialTwoGraph { sigma: p.sigma, tau: p.tau });
    }
    Ok(p)
}

/// Adjacency spectrum of any graph with `edges` edges in the two-graph:
/// `{ρ₁, ρ₂, σ^(m_σ−1), τ^(m_τ−1)}` with `ρ₁+ρ₂ = −2στ` and
/// `ρ₁²+ρ₂² = σ²+τ²+2e−v²/4`. Coincident values are merged.
pub fn lemma4_predict(p: &TwoGraphParams, edges: usize) -> Result<Spectrum> {
    let v = p.v as f64;
    if edges > p.v * p.v.saturating_sub(1) / 2 {
        return Err(Error::InvalidParameter(format!("{edges} edges exceed the complete graph on {} vertices", p.v)));
    }
    let sum = -2.0 * p.sigma * p.tau;
    let sum_sq = p.sigma * p.sigma + p.tau * p.tau + 2.0 * edges as f64 - v * v / 4.0;
    let disc = 2.0 * sum_sq - sum * sum;
    if disc < -1e-9 {
        return Err(Error::ComplexEigenvalues { edges, discriminant: disc });
    }
    let root = disc.max(0.0).sqrt();
    let mut values = vec![(sum + root) / 2.0, (sum - root) / 2.0];
    values.extend(std::iter::repeat_n(p.sigma, p.m_sigma.saturating_sub(1)));
    values.extend(std::iter::repeat_n(p.tau, p.m_tau.saturating_sub(1)));
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(cluster(&values, DEFAULT_CLUSTER_TOL))
}

fn check_nontrivial_integral(sigma: i64, tau: i64) -> Result<()> {
    if [0, -1].contains(&sigma) || [0, -1].contains(&tau) {
        return Err(Error::InvalidParameter(format!("trivial two-graph eigenvalues σ={sigma}, τ={tau}")));
    }
    if !(sigma > 0 && tau < 0) {
        return Err(Error::InvalidParameter(format!("need σ > 0 > τ, got σ={sigma}, τ={tau}")));
    }
    Ok(())
}

/// SRG parameters of the non-isolated part of a disconnected member:
/// `(−(2σ+1)(2τ+1), −2στ, σ+τ−στ, −στ)`.
pub fn prop5_params(sigma: i64, tau: i64) -> Result<SrgParams> {
    check_nontrivial_integral(sigma, tau)?;
    Ok(SrgParams::new(-(2 * sigma + 1) * (2 * tau + 1), -2 * sigma * tau, sigma + tau - sigma * tau, -sigma * tau))
}

/// The two possible SRG parameter sets of a member with at most three
/// distinct eigenvalues.
pub fn prop6_params(sigma: i64, tau: i64) -> Result<[SrgParams; 2]> {
    check_nontrivial_integral(sigma, tau)?;
    let v = -(2 * sigma + 1) * (2 * tau + 1) + 1;
    Ok([
        SrgParams::new(v, -sigma * (2 * tau + 1), tau * (1 - sigma), -sigma * (tau + 1)),
        SrgParams::new(v, -tau * (2 * sigma + 1), sigma * (1 - tau), -tau * (sigma + 1)),
    ])
}

/// Switches with respect to the neighbourhood of `u`, leaving `u` isolated.
pub fn isolate_switch(g: &Graph, u: usize) -> Graph {
    seidel_switch(g, &g.neighborhood(u))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditBranch {
    /// Disconnected member: isolated vertex plus SRG.
    Disconnected,
    /// At most three distinct eigenvalues: regular, SRG.
    FewEigenvalues,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub edges: usize,
    pub distinct_eigenvalues: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub regular: bool,
    pub fired: Vec<AuditBranch>,
    /// Certified SRG parameters where a branch produced them.
    pub srg: Option<SrgParams>,
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a member `g` of the non-trivial regular two-graph `p` against the
/// structural results for such classes. Violations are findings, not errors.
pub fn audit(g: &Graph, p: &TwoGraphParams) -> Result<AuditReport> {
    if p.is_trivial() {
        return Err(Error::TrivialTwoGraph { sigma: p.sigma, tau: p.tau });
    }
    let flags = classify(g);
    let spec = crate::spectra::adjacency_spectrum(g)?;
    let edges = g.edge_count();
    let mut report = AuditReport {
        edges,
        distinct_eigenvalues: spec.distinct(),
        connected: flags.connected,
        bipartite: flags.bipartite,
        regular: flags.regular,
        fired: Vec::new(),
        srg: None,
        violations: Vec::new(),
    };

    if !flags.connected {
        report.fired.push(AuditBranch::Disconnected);
        let comps = components(g);
        let isolated: Vec<_> = comps.iter().filter(|c| c.len() == 1).collect();
        if comps.len() != 2 || isolated.len() != 1 {
            report.violations.push(format!(
                "disconnected member has {} components ({} isolated vertices), expected isolated vertex + one component",
                comps.len(),
                isolated.len()
            ));
        } else {
            let big = comps.iter().find(|c| c.len() > 1).unwrap();
            let rest = crate::graphcore::induced_subgraph(g, big);
            let expected = p.descendant_srg();
            match srg_certificate(&rest) {
                Ok(params) => {
                    report.srg = Some(params);
                    if Some(params) != expected {
                        report.violations.push(format!("component is SRG{params}, expected {expected:?}"));
                    }
                }
                Err(e) => report.violations.push(format!("non-isolated component is not strongly regular: {e}")),
            }
        }
    }

    if spec.distinct() <= 3 {
        report.fired.push(AuditBranch::FewEigenvalues);
        if !flags.regular {
            report.violations.push(format!("{} distinct eigenvalues but not regular", spec.distinct()));
        } else {
            let allowed = p.integral().and_then(|(s, t)| prop6_params(s, t).ok());
            match srg_certificate(g) {
                Ok(params) => {
                    report.srg = Some(params);
                    if !allowed.is_some_and(|a| a.contains(&params)) {
                        report.violations.push(format!("regular member is SRG{params}, not among {allowed:?}"));
                    }
                }
                Err(e) => report.violations.push(format!("regular member with ≤ 3 eigenvalues not certified: {e}")),
            }
        }
    }

    if flags.bipartite {
        report.violations.push("member is bipartite".into());
    }

    match lemma4_predict(p, edges) {
        Ok(pred) => match pred.max_deviation(&spec) {
            Some(d) if d < 1e-8 => {}
            Some(d) => report.violations.push(format!("spectrum deviates from edge-count prediction by {d:e}")),
            None => report.violations.push(format!("spectrum {spec} has a different shape from prediction {pred}")),
        },
        Err(e) => report.violations.push(format!("no prediction: {e}")),
    }

    Ok(report)
}

/// One named pass/fail line of a feasibility report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport {
    pub checks: Vec<Check>,
    /// Real roots of the quotient's characteristic polynomial with multiplicity.
    pub quotient_eigenvalues: Vec<(f64, usize)>,
}

impl FeasibilityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Internal-consistency checks of a putative valency partition with quotient
/// matrix `quotient`, spectrum `spec`, and classes `(valency, size)`.
pub fn putative_three_ev_check(quotient: &[Vec<i64>], spec: &Spectrum, valencies: &[(i64, i64)]) -> FeasibilityReport {
    let k = quotient.len();
    let mut checks = Vec::new();
    let square = quotient.iter().all(|r| r.len() == k) && valencies.len() == k;

    let v: i64 = valencies.iter().map(|&(_, n)| n).sum();
    let dim = spec.dimension() as i64;
    checks.push(Check {
        name: "class sizes sum to v",
        passed: v == dim,
        detail: format!("Σn = {v}, spectrum dimension = {dim}"),
    });

    let sums: Vec<i64> = quotient.iter().map(|r| r.iter().sum()).collect();
    let rows_ok = square && sums.iter().zip(valencies).all(|(s, &(d, _))| *s == d);
    checks.push(Check {
        name: "row sums equal valencies",
        passed: rows_ok,
        detail: format!("row sums {sums:?}, valencies {:?}", valencies.iter().map(|&(d, _)| d).collect::<Vec<_>>()),
    });

    let twice_edges: i64 = valencies.iter().map(|&(d, n)| d * n).sum();
    let tr2 = spec.trace_of_square();
    checks.push(Check {
        name: "valency sum equals trace of A²",
        passed: (twice_edges as f64 - tr2).abs() < 1e-6,
        detail: format!("Σ n·d = {twice_edges}, Σ λ²m = {}", crate::spectra::format_value(tr2)),
    });

    let roots = if square && k > 0 { real_roots(&char_poly(quotient)) } else { Vec::new() };
    let root_count: usize = roots.iter().map(|&(_, m)| m).sum();
    let contained = square
        && root_count == k
        && roots.iter().all(|&(x, m)| spec.pairs.iter().any(|&(y, my)| (x - y).abs() <= 1e-10 && my >= m));
    checks.push(Check {
        name: "quotient eigenvalues lie in the spectrum",
        passed: contained,
        detail: format!(
            "eig(B) = {{{}}} ({root_count} real of {k})",
            roots
                .iter()
                .map(|&(x, m)| format!("{}^({m})", crate::spectra::format_value(x)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    });

    FeasibilityReport { checks, quotient_eigenvalues: roots }
}

/// Characteristic polynomial `det(xI − B)` by Faddeev–LeVerrier; coefficients
/// in ascending degree. Exact for integer matrices.
pub(crate) fn char_poly(b: &[Vec<i64>]) -> Vec<i128> {
    let n = b.len();
    let a: Vec<Vec<i128>> = b.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let tr: i128 = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<i128>()).sum();
        debug_assert_eq!(tr % k as i128, 0);
        coeffs[n - k] = -tr / k as i128;
    }
    coeffs
}

fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn eval_scale(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x.abs() + a.abs())
}

/// Real roots with multiplicities, by bracketing between the critical points
/// (recursively, the roots of the derivative).
pub(crate) fn real_roots(coeffs: &[i128]) -> Vec<(f64, usize)> {
    let c: Vec<f64> = coeffs.iter().map(|&x| x as f64).collect();
    roots_f64(&c)
}

fn roots_f64(c: &[f64]) -> Vec<(f64, usize)> {
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![(-c[0] / c[1], 1)];
    }
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect();
    let mut crit = roots_f64(&deriv);
    crit.sort_by(|x, y| x.0.total_cmp(&y.0));
    let lead = c[deg];
    let bound = 1.0 + c[..deg].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);

    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut points: Vec<(f64, bool)> = vec![(-bound, false)];
    for &(x, m) in &crit {
        let is_root = eval(c, x).abs() <= 1e-9 * eval_scale(c, x).max(1.0);
        if is_root {
            out.push((x, m + 1));
        }
        points.push((x, is_root));
    }
    points.push((bound, false));
    for w in points.windows(2) {
        let ((a, ra), (b, rb)) = (w[0], w[1]);
        if ra || rb {
            continue;
        }
        let (fa, fb) = (eval(c, a), eval(c, b));
        if fa == 0.0 {
            out.push((a, 1));
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        let (mut lo, mut hi) = (a, b);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if eval(c, mid).signum() == fa.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push((0.5 * (lo + hi), 1));
    }
    if eval(c, bound) == 0.0 {
        out.push((bound, 1));
    }
    out.sort_by(|x, y| y.0.total_cmp(&x.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{add_apex, complete_bipartite, is_isomorphic, VertexSet};

    fn params(v: usize, s: f64, t: f64, ms: usize, mt: usize) -> TwoGraphParams {
        let (a, b) = (-1.0 - 2.0 * s, -1.0 - 2.0 * t);
        TwoGraphParams {
            v,
            sigma: s,
            tau: t,
            m_sigma: ms,
            m_tau: mt,
            seidel_sum: (a + b).round() as i64,
            seidel_product: (a * b).round() as i64,
        }
    }

    #[test]
    fn prop5_values() {
        assert_eq!(prop5_params(2, -2).unwrap(), SrgParams::new(15, 8, 4, 4));
        assert_eq!(prop5_params(4, -4).unwrap(), SrgParams::new(63, 32, 16, 16));
        assert_eq!(prop5_params(1, -2).unwrap(), SrgParams::new(9, 4, 1, 2));
        assert!(prop5_params(0, -2).is_err());
        assert!(prop5_params(2, -1).is_err());
        assert!(prop5_params(-2, 2).is_err());
    }

    #[test]
    fn prop6_values() {
        assert_eq!(prop6_params(2, -2).unwrap(), [SrgParams::new(16, 6, 2, 2), SrgParams::new(16, 10, 6, 6)]);
        assert_eq!(prop6_params(1, -2).unwrap(), [SrgParams::new(10, 3, 0, 1), SrgParams::new(10, 6, 3, 4)]);
        for (s, t) in [(1, -2), (2, -2), (2, -3), (3, -4), (4, -4), (5, -3)] {
            for p in prop6_params(s, t).unwrap() {
                assert!(p.satisfies_count_identity(), "{p}");
            }
            assert!(prop5_params(s, t).unwrap().satisfies_count_identity());
        }
    }

    #[test]
    fn lemma4_examples() {
        let p = params(16, 2.0, -2.0, 6, 10);
        assert!(p.identities_hold());
        let s = lemma4_predict(&p, 60).unwrap();
        assert_eq!(s.to_string(), "8^(1) 2^(5) 0^(1) -2^(9)");
        let s = lemma4_predict(&p, 80).unwrap();
        assert_eq!(s.to_string(), "10^(1) 2^(5) -2^(10)");
        assert!(matches!(lemma4_predict(&p, 0), Err(Error::ComplexEigenvalues { .. })));
    }

    #[test]
    fn descendant_matches_prop5() {
        assert_eq!(params(16, 2.0, -2.0, 6, 10).descendant_srg(), Some(SrgParams::new(15, 8, 4, 4)));
        let r5 = 5f64.sqrt();
        let conf = params(6, -0.5 + 0.5 * r5, -0.5 - 0.5 * r5, 3, 3);
        assert!(conf.is_conference());
        assert!(conf.identities_hold());
        // the pentagon: (5, 2, 0, 1)
        assert_eq!(conf.descendant_srg(), Some(SrgParams::new(5, 2, 0, 1)));
    }

    #[test]
    fn pentagon_plus_vertex_is_conference_two_graph() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        let g = add_apex(&c5, &VertexSet::empty(5));
        let p = detect(&g).unwrap();
        assert!(p.is_conference());
        assert_eq!((p.m_sigma, p.m_tau), (3, 3));
        assert!((p.sigma - (-0.5 + 0.5 * 5f64.sqrt())).abs() < 1e-9);
        assert!(p.identities_hold());
        // the pentagon alone has three Seidel eigenvalues
        assert!(matches!(detect(&c5), Err(Error::Refused(_))));
    }

    #[test]
    fn trivial_classes_flagged() {
        assert!(matches!(detect(&Graph::complete(5)), Err(Error::TrivialTwoGraph { .. })));
        assert!(matches!(detect(&Graph::empty(5)), Err(Error::TrivialTwoGraph { .. })));
        assert!(detect(&Graph::empty(1)).is_err());
    }

    #[test]
    fn p4_refused() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(detect(&p4), Err(Error::Refused(_))));
    }

    #[test]
    fn isolate_switch_basics() {
        let g = complete_bipartite(2, 3);
        let h = isolate_switch(&g, 0);
        assert_eq!(h.degree(0), 0);
        let e = Graph::empty(3);
        assert_eq!(isolate_switch(&e, 1), e);
        assert!(is_isomorphic(&h, &isolate_switch(&g, 1)).unwrap());
    }

    #[test]
    fn char_poly_and_roots() {
        // [[0,2],[2,0]] -> x² − 4
        assert_eq!(char_poly(&[vec![0, 2], vec![2, 0]]), vec![-4, 0, 1]);
        let r = real_roots(&[-4, 0, 1]);
        assert_eq!(r.len(), 2);
        assert!((r[0].0 - 2.0).abs() < 1e-12 && (r[1].0 + 2.0).abs() < 1e-12);
        // (x−1)²(x+2) = x³ − 3x + 2
        let r = real_roots(&[2, -3, 0, 1]);
        assert_eq!(r.len(), 2);
        assert!((r[0].0 - 1.0).abs() < 1e-7 && r[0].1 == 2);
        assert!((r[1].0 + 2.0).abs() < 1e-12 && r[1].1 == 1);
    }

    #[test]
    fn k22_quotient_feasible() {
        let spec = cluster(&[2.0, 0.0, 0.0, -2.0], 1e-7);
        let rep = putative_three_ev_check(&[vec![0, 2], vec![2, 0]], &spec, &[(2, 2), (2, 2)]);
        assert!(rep.all_passed(), "{rep:?}");
    }
}
