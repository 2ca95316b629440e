use proptest::prelude::*;
use simflow_core::flow::*;
use simflow_core::ford_fulkerson::*;
use simflow_core::generators::*;
use simflow_core::{apply_boundary, int, ratio, Chain, Rational};

fn check_run(net: &FlowNetwork) -> FfOutcome {
    let out = max_flow_ff(
        net,
        &FfOptions {
            max_iterations: None,
            keep_flows: true,
        },
    )
    .unwrap();
    let mut last = Rational::ZERO;
    for rec in &out.trace {
        assert!(rec.value > last);
        last = rec.value.clone();
        let f = FlowResult {
            flow: Chain::new(net.dim(), rec.flow.clone().unwrap()),
            value: rec.value.clone(),
        };
        assert!(verify_flow(net, &f.flow, &f.value));
        let h = half_saturated(net, &f);
        assert_eq!(h.len(), rec.half_saturated);
        assert!(is_acyclic(net, &h));
    }
    assert_eq!(out.iterations, out.trace.len());
    let rc = residual(net, &out.flow).unwrap();
    assert!(find_augmenting_chain(&rc).unwrap().is_none());
    out
}

#[test]
fn md_and_mdw_values() {
    let md = gen_md().unwrap();
    let out = check_run(&md.network);
    assert_eq!(out.flow.value, ratio(1, 2));
    assert!(out.iterations >= 1 && out.iterations <= default_iteration_cap(&md.network));
    assert_eq!(
        check_run(&gen_mdw().unwrap().network).flow.value,
        ratio(3, 2)
    );
    assert_eq!(
        check_run(&gen_octahedron().unwrap().network).flow.value,
        int(2)
    );
}

#[test]
fn suboptimal_flow_has_augmenting_chain() {
    let b = gen_mdw().unwrap();
    let net = &b.network;
    let opt = max_flow_lp(net).unwrap();
    let half = FlowResult {
        flow: opt.flow.scale(&ratio(1, 2)),
        value: &opt.value * &ratio(1, 2),
    };
    let chain = find_augmenting_chain(&residual(net, &half).unwrap())
        .unwrap()
        .unwrap();
    assert!(chain.step.is_positive());
    assert!(chain
        .forward
        .iter()
        .chain(&chain.backward)
        .all(|a| !a.is_negative()));
    let gamma = apply_boundary(net.complex(), &Chain::new(2, chain.signed())).unwrap();
    assert_eq!(&gamma, net.gamma());
    let next = augment(&half, &chain).unwrap();
    assert_eq!(next.value, &half.value + &chain.step);
    assert!(verify_flow(net, &next.flow, &next.value));
}

#[test]
fn repair_removes_circulation() {
    // s=0 → 1 → 3=t plus a directed triangle 1 → 2 → 4 → 1 carrying 1/2.
    let edges = [(0, 1), (1, 3), (1, 2), (2, 4), (4, 1)];
    let b = gen_graph(5, &edges, &vec![int(1); 5], 0, 3).unwrap();
    let net = &b.network;
    let f = FlowResult {
        flow: Chain::new(
            1,
            vec![
                ratio(1, 2),
                ratio(1, 2),
                ratio(1, 2),
                ratio(1, 2),
                ratio(1, 2),
            ],
        ),
        value: ratio(1, 2),
    };
    assert!(verify_flow(net, &f.flow, &f.value));
    assert!(!is_acyclic(net, &half_saturated(net, &f)));
    let r = repair(net, &f).unwrap();
    assert_eq!(r.value, f.value);
    assert_eq!(
        apply_boundary(net.complex(), &r.flow).unwrap(),
        apply_boundary(net.complex(), &f.flow).unwrap()
    );
    assert!(verify_flow(net, &r.flow, &r.value));
    assert!(is_acyclic(net, &half_saturated(net, &r)));
}

#[test]
fn infeasible_flow_rejected_and_cap_enforced() {
    let b = gen_mdw().unwrap();
    let net = &b.network;
    let bogus = FlowResult {
        flow: Chain::new(2, vec![int(2); net.n_top()]),
        value: int(0),
    };
    assert!(residual(net, &bogus).is_err());
    let capped = max_flow_ff(
        net,
        &FfOptions {
            max_iterations: Some(0),
            keep_flows: false,
        },
    );
    assert!(capped.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ff_matches_lp(seed in 0u64..10_000, d in 1usize..=2) {
        let b = gen_random(seed, 7, d, if d == 1 { 0.5 } else { 0.3 }).unwrap();
        let out = check_run(&b.network);
        prop_assert_eq!(out.flow.value, max_flow_lp(&b.network).unwrap().value);
    }

    #[test]
    fn ff_on_random_graphs(seed in 0u64..10_000) {
        let b = gen_random_graph(seed, 6, 9, 7).unwrap();
        let out = check_run(&b.network);
        prop_assert!(out.flow.value.is_integer());
        prop_assert_eq!(out.flow.value, max_flow_lp(&b.network).unwrap().value);
    }
}
