use fewev::construct::{paley_graph, spider, standard_family, symplectic_graph, symplectic_rep, theorem1_default};
use fewev::graphcore::{complete_bipartite, disjoint_union, Graph};
use fewev::spectra::{
    adjacency_spectrum, backward_check, cluster, graph_matrix, interlaces, seidel_spectrum, seidel_two_ev_certificate,
    srg_certificate, sym_eigenvalues, MatrixKind, SrgParams,
};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(a, b);
            }
            bit += 1;
        }
    }
    g
}

/// Direct definition: regular, neither empty nor complete, constant common
/// neighbour counts on edges and on non-edges.
fn brute_force_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    let k = g.degree(0);
    if n < 2 || (0..n).any(|v| g.degree(v) != k) || k == 0 || k == n - 1 {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for a in 0..n {
        for b in a + 1..n {
            let c = (0..n).filter(|&x| g.has_edge(a, x) && g.has_edge(b, x)).count();
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(prev) if prev != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams::new(n as i64, k as i64, lambda? as i64, mu? as i64))
}

#[test]
fn srg_certificate_matches_brute_force() {
    for n in 0..=7usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0u64..1 << pairs {
            let g = graph_from_mask(n, mask);
            assert_eq!(srg_certificate(&g).ok(), brute_force_srg(&g), "n={n} mask={mask:#x}");
        }
    }
}

#[test]
fn srg_examples() {
    assert_eq!(srg_certificate(&symplectic_graph(2).unwrap()).unwrap(), SrgParams::new(15, 8, 4, 4));
    assert_eq!(srg_certificate(&symplectic_graph(3).unwrap()).unwrap(), SrgParams::new(63, 32, 16, 16));
    assert_eq!(srg_certificate(&paley_graph(5).unwrap()).unwrap(), SrgParams::new(5, 2, 0, 1));
    assert_eq!(srg_certificate(&paley_graph(13).unwrap()).unwrap(), SrgParams::new(13, 6, 2, 3));
    assert_eq!(srg_certificate(&paley_graph(17).unwrap()).unwrap(), SrgParams::new(17, 8, 3, 4));
    let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
    assert!(srg_certificate(&c6).is_err());
}

/// Adjacency eigenvalues of an SRG from its parameters.
#[test]
fn srg_eigenvalues_agree_with_parameters() {
    for g in [symplectic_graph(2).unwrap(), symplectic_graph(3).unwrap(), paley_graph(13).unwrap(), paley_graph(17).unwrap()] {
        let p = srg_certificate(&g).unwrap();
        let (v, k, l, m) = (p.v as f64, p.k as f64, p.lambda as f64, p.mu as f64);
        let d = ((l - m).powi(2) + 4.0 * (k - m)).sqrt();
        let (r, s) = ((l - m + d) / 2.0, (l - m - d) / 2.0);
        let f = ((v - 1.0) * -s - k) / (r - s);
        let spec = adjacency_spectrum(&g).unwrap();
        assert_eq!(spec.distinct(), 3);
        assert!((spec.pairs[0].0 - k).abs() < 1e-9);
        assert!((spec.pairs[1].0 - r).abs() < 1e-9 && spec.pairs[1].1 as f64 == f.round());
        assert!((spec.pairs[2].0 - s).abs() < 1e-9);
    }
}

#[test]
fn spectrum_examples() {
    let id: Vec<f64> = (0..25).map(|i| if i % 6 == 0 { 1.0 } else { 0.0 }).collect();
    assert_eq!(sym_eigenvalues(&id, 5, 1e-12).unwrap(), vec![1.0; 5]);
    assert_eq!(adjacency_spectrum(&complete_bipartite(1, 4)).unwrap().to_string(), "2^(1) 0^(3) -2^(1)");
    assert_eq!(adjacency_spectrum(&spider(3)).unwrap().to_string(), "2^(1) 1^(2) 0^(1) -1^(2) -2^(1)");
    assert_eq!(cluster(&[2.0000000001, 1.9999999999], 1e-7).to_string(), "2^(2)");
    assert_eq!(cluster(&[1.0, -1.0], 1e-7).to_string(), "1^(1) -1^(1)");
    assert_eq!(seidel_spectrum(&symplectic_rep(2).unwrap()).unwrap().to_string(), "3^(10) -5^(6)");
}

#[test]
fn seidel_certificates() {
    let p = seidel_two_ev_certificate(&symplectic_rep(2).unwrap(), &seidel_spectrum(&symplectic_rep(2).unwrap()).unwrap()).unwrap();
    assert_eq!((p.v, p.m_sigma, p.m_tau), (16, 6, 10));
    assert!((p.sigma - 2.0).abs() < 1e-12 && (p.tau + 2.0).abs() < 1e-12);

    // Conference case: non-integral σ, τ certified through integer sum and product.
    let c5 = Graph::from_edges(6, (0..5).map(|i| (i, (i + 1) % 5)));
    let p = seidel_two_ev_certificate(&c5, &seidel_spectrum(&c5).unwrap()).unwrap();
    assert!(p.is_conference() && p.integral().is_none());
    assert!((p.sigma * p.tau - (2.0 - 6.0) / 4.0).abs() < 1e-9);

    let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
    assert!(seidel_two_ev_certificate(&p4, &seidel_spectrum(&p4).unwrap()).is_err());
}

#[test]
fn interlacing_examples() {
    let fam = standard_family(3).unwrap();
    let h = adjacency_spectrum(&theorem1_default(&fam)).unwrap();
    let u = adjacency_spectrum(&disjoint_union(&[complete_bipartite(1, 4), complete_bipartite(2, 2)])).unwrap();
    assert!(interlaces(&h, &u, 1e-9));
    assert!(interlaces(&h, &h, 1e-9));
    assert!(!interlaces(&cluster(&[3.0, 0.0], 1e-7), &cluster(&[5.0], 1e-7), 1e-9));
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut mask = 0u64;
            for (i, b) in bits.iter().enumerate() {
                mask |= u64::from(*b) << i;
            }
            graph_from_mask(n, mask)
        })
    })
}

proptest! {
    #[test]
    fn backward_check_holds(g in graph_strategy(11)) {
        for kind in [MatrixKind::Adjacency, MatrixKind::Seidel] {
            let spec = fewev::spectra::graph_spectrum(&g, kind, 1e-7).unwrap();
            prop_assert!(backward_check(&spec, &graph_matrix(&g, kind), g.order()));
        }
    }

    #[test]
    fn induced_subgraphs_interlace(g in graph_strategy(10), drop in 0usize..10) {
        let n = g.order();
        let keep = fewev::graphcore::VertexSet::from_members(n, (0..n).filter(|&v| v != drop % n));
        let sub = fewev::graphcore::induced_subgraph(&g, &keep);
        prop_assert!(interlaces(&adjacency_spectrum(&g).unwrap(), &adjacency_spectrum(&sub).unwrap(), 1e-9));
    }
}
