mod common;

use common::{brute_graph_max_flow, brute_undirected_edge_cut};
use proptest::prelude::*;
use simflow_core::flow::*;
use simflow_core::generators::*;
use simflow_core::{apply_boundary, int, ratio, Chain, Cochain, Rational};

fn unit(n: usize) -> Vec<Rational> {
    vec![Rational::ONE; n]
}

#[test]
fn md_boundary_identities() {
    let b = gen_md().unwrap();
    let sc = b.simplicial.as_ref().unwrap();
    let cx = b.network.complex();
    let gamma = chain_from_oriented_edges(sc, &md_gamma_edges()).unwrap();
    let alpha = chain_from_oriented_edges(sc, &md_alpha_edges()).unwrap();
    let sum = |r: std::ops::Range<usize>| {
        let mut c = Chain::zero(2, cx.size(2));
        for j in r {
            c.coeffs[j] = int(1);
        }
        apply_boundary(cx, &c).unwrap()
    };
    assert_eq!(sum(MD_MOBIUS), gamma.add(&alpha.scale(&int(2))));
    assert_eq!(sum(MD_DISK), alpha.scale(&int(-1)));
    assert_eq!(&gamma, b.network.gamma());
    let w = gen_mdw().unwrap();
    let cx = w.network.complex();
    let mut c = Chain::zero(2, cx.size(2));
    for j in MDW_WEDGE {
        c.coeffs[j] = int(1);
    }
    assert_eq!(&apply_boundary(cx, &c).unwrap(), w.network.gamma());
}

#[test]
fn md_max_flow_is_one_half() {
    let b = gen_md().unwrap();
    let f = max_flow_lp(&b.network).unwrap();
    assert_eq!(f.value, ratio(1, 2));
    assert!(verify_flow(&b.network, &f.flow, &f.value));
    assert_eq!(min_cut_lp(&b.network).unwrap().value, ratio(1, 2));
    assert!(!tu_vertex_integrality_check(&b.network).unwrap());
}

#[test]
fn mdw_gap_between_cut_notions() {
    let b = gen_mdw().unwrap();
    let net = &b.network;
    let f = max_flow_lp(net).unwrap();
    assert_eq!(f.value, ratio(3, 2));
    let cut = min_cut_lp(net).unwrap();
    assert_eq!(cut.value, ratio(3, 2));
    assert!(verify_gamma_cut(net, &cut.cochain));
    assert!(cut.coboundary.coeffs.iter().any(|a| a.abs() == ratio(1, 2)));
    let n = net.n_top();
    let (set, w) = brute_min_combinatorial_cut(net, &unit(n), 3)
        .unwrap()
        .unwrap();
    assert_eq!(w, int(2));
    assert!(set.iter().any(|j| MDW_WEDGE.contains(j)));
    let disk_and_wedge = [MD_DISK.start, MDW_WEDGE.start];
    assert!(is_combinatorial_cut(net, &disk_and_wedge));
    assert!(find_supporting_cochain(net.complex(), &set)
        .unwrap()
        .is_some());
    let support = cut
        .coboundary
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, _)| i)
        .collect::<Vec<_>>();
    assert!(is_combinatorial_cut(net, &support));
    assert!(support.iter().any(|j| MD_DISK.contains(j)));
}

#[test]
fn single_edge_and_parallel_paths() {
    let b = gen_graph(2, &[(0, 1)], &[int(5)], 0, 1).unwrap();
    assert_eq!(max_flow_lp(&b.network).unwrap().value, int(5));
    assert_eq!(min_cut_lp(&b.network).unwrap().directed_cut, vec![0]);
    let b = gen_graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], &unit(4), 0, 3).unwrap();
    assert_eq!(max_flow_lp(&b.network).unwrap().value, int(2));
}

#[test]
fn complete_k4() {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let b = gen_graph(4, &edges, &unit(6), 0, 3).unwrap();
    let v = max_flow_lp(&b.network).unwrap().value;
    assert_eq!(v, int(brute_graph_max_flow(4, &edges, &[1; 6], 0, 3)));
    assert_eq!(v, int(3));
}

#[test]
fn flow_violations_are_named() {
    let b = gen_md().unwrap();
    let net = &b.network;
    let f = max_flow_lp(net).unwrap();
    let mut bad = f.flow.clone();
    let j = bad
        .coeffs
        .iter()
        .position(|x| x.is_positive() && *x < int(1))
        .unwrap();
    bad.coeffs[j] += ratio(1, 4);
    assert_eq!(flow_violation(net, &bad, &f.value), Some("conservation"));
    bad.coeffs[j] = int(2);
    assert_eq!(flow_violation(net, &bad, &f.value), Some("capacity"));
    bad.coeffs[j] = int(-1);
    assert_eq!(flow_violation(net, &bad, &f.value), Some("non-negativity"));
    assert_eq!(
        flow_violation(net, &Chain::zero(2, 3), &f.value),
        Some("shape")
    );
    assert_eq!(
        flow_violation(net, &net.zero_flow().flow, &Rational::ZERO),
        None
    );
}

#[test]
fn gamma_cut_checks() {
    let b = gen_graph(3, &[(0, 1), (1, 2)], &unit(2), 0, 2).unwrap();
    let net = &b.network;
    assert!(verify_gamma_cut(
        net,
        &Cochain::new(0, vec![int(0), int(0), int(-1)])
    ));
    assert!(!verify_gamma_cut(
        net,
        &Cochain::new(0, vec![int(0), int(0), int(1)])
    ));
    assert!(verify_directed_combinatorial_cut(net, &[1]));
    assert!(!verify_directed_combinatorial_cut(net, &[]));
}

#[test]
fn brute_guard_trips() {
    let b = gen_random(3, 9, 2, 0.9).unwrap();
    let n = b.network.n_top();
    assert!(n > BRUTE_SIMPLEX_LIMIT);
    assert!(brute_min_combinatorial_cut(&b.network, &unit(n), n).is_err());
}

fn graph_case(seed: u64) -> (usize, Vec<(usize, usize)>, Vec<i64>, InstanceBundle) {
    let n = 4 + (seed % 4) as usize;
    let m = (n + 2 + (seed % 5) as usize).min(12).min(n * (n - 1) / 2);
    let b = gen_random_graph(seed, n, m, 7).unwrap();
    let sc = b.simplicial.clone().unwrap();
    let edges: Vec<(usize, usize)> = sc
        .simplices(1)
        .iter()
        .zip(sc.signs())
        .map(|(s, &sign)| if sign > 0 { (s[0], s[1]) } else { (s[1], s[0]) })
        .collect();
    let caps: Vec<i64> = b
        .network
        .capacities()
        .iter()
        .map(|c| c.to_i64().unwrap())
        .collect();
    (n, edges, caps, b)
}

#[test]
fn graph_regression_against_brute_force() {
    for seed in 0..50 {
        let (n, edges, caps, b) = graph_case(seed);
        let net = &b.network;
        let f = max_flow_lp(net).unwrap();
        assert!(
            f.value.is_integer() && f.flow.coeffs.iter().all(Rational::is_integer),
            "seed {seed}"
        );
        assert_eq!(
            f.value,
            int(brute_graph_max_flow(n, &edges, &caps, 0, n - 1)),
            "seed {seed}"
        );
        let cut = min_cut_lp(net).unwrap();
        assert_eq!(cut.value, f.value);
        assert!(tu_vertex_integrality_check(net).unwrap(), "seed {seed}");
        let (_, w) = brute_min_directed_combinatorial_cut(net, net.capacities(), edges.len())
            .unwrap()
            .unwrap();
        assert_eq!(cut.support_weight(net.capacities()), w, "seed {seed}");
        assert!(verify_directed_combinatorial_cut(net, &cut.directed_cut));
        let (_, u) = brute_min_combinatorial_cut(net, net.capacities(), edges.len())
            .unwrap()
            .unwrap();
        assert_eq!(
            u,
            int(brute_undirected_edge_cut(n, &edges, &caps, 0, n - 1)),
            "seed {seed}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn strong_duality(seed in 0u64..10_000, d in 1usize..=2, n in 4usize..=8) {
        let b = gen_random(seed, n, d, if d == 1 { 0.5 } else { 0.3 }).unwrap();
        let net = &b.network;
        let f = max_flow_lp(net).unwrap();
        let cut = min_cut_lp(net).unwrap();
        prop_assert!(verify_flow(net, &f.flow, &f.value));
        prop_assert!(verify_gamma_cut(net, &cut.cochain));
        prop_assert!(f.value.is_positive());
        prop_assert_eq!(&f.value, &cut.value);
        prop_assert!(cut.size(net.capacities()) >= cut.value);
    }
}

#[test]
fn vertex_enumeration_flow() {
    let tri = simflow_core::SimplicialComplex::from_top_simplices(
        vec!["a".into(), "b".into(), "c".into()],
        &[vec![0, 1, 2]],
    )
    .unwrap();
    let cx = tri.chain_complex().unwrap();
    let gamma = apply_boundary(&cx, &Chain::unit(2, 1, 0)).unwrap();
    let net = make_network(cx, vec![int(1)], gamma).unwrap();
    assert_eq!(brute_max_flow(&net).unwrap().value, int(1));
    for seed in 0..15 {
        let b = gen_random_graph(seed, 5, 8, 7).unwrap();
        let f = brute_max_flow(&b.network).unwrap();
        assert!(verify_flow(&b.network, &f.flow, &f.value));
        assert_eq!(
            f.value,
            max_flow_lp(&b.network).unwrap().value,
            "seed {seed}"
        );
    }
    for seed in 0..15 {
        let b = gen_random(seed, 6, 2, 0.3).unwrap();
        if b.network.n_top() <= BRUTE_FLOW_SIMPLEX_LIMIT {
            assert_eq!(
                brute_max_flow(&b.network).unwrap().value,
                max_flow_lp(&b.network).unwrap().value,
                "seed {seed}"
            );
        }
    }
    assert!(brute_max_flow(&gen_md().unwrap().network).is_err());
}
