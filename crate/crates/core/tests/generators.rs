use proptest::prelude::*;
use simflow_core::flow::*;
use simflow_core::generators::*;
use simflow_core::{int, Error, Rational};

fn hitting_cut(universe: &[usize], family: &[Vec<usize>]) -> Rational {
    let b = gen_hitting_set(universe, family).unwrap();
    let n = b.network.n_top();
    let (set, w) = brute_min_combinatorial_cut(&b.network, &vec![Rational::ONE; n], n)
        .unwrap()
        .unwrap();
    assert!(is_combinatorial_cut(&b.network, &set));
    assert_eq!(b.expected("min_combinatorial_cut"), Some(&w));
    w
}

fn naive_hitting_set(universe: &[usize], family: &[Vec<usize>]) -> usize {
    (0u32..1 << universe.len())
        .filter(|mask| {
            family.iter().all(|s| {
                s.iter()
                    .any(|e| mask >> universe.iter().position(|u| u == e).unwrap() & 1 == 1)
            })
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

#[test]
fn hitting_set_examples() {
    assert_eq!(hitting_cut(&[1], &[vec![1]]), int(1));
    assert_eq!(hitting_cut(&[1, 2, 3], &[vec![1, 2], vec![2, 3]]), int(1));
    assert_eq!(
        hitting_cut(&[1, 2, 3, 4], &[vec![1, 2], vec![3, 4]]),
        int(2)
    );
}

#[test]
fn hitting_set_rejects_empty_member() {
    assert!(matches!(
        gen_hitting_set(&[1, 2], &[vec![1], vec![]]),
        Err(Error::EmptySubset { index: 1 })
    ));
}

#[test]
fn graph_parameters_validated() {
    assert!(gen_graph(2, &[(0, 1)], &[int(1)], 0, 0).is_err());
    assert!(gen_graph(3, &[(0, 1)], &[int(1)], 0, 2).is_err());
    assert!(gen_graph(2, &[(0, 1)], &[int(-1)], 0, 1).is_err());
}

#[test]
fn random_generation_is_deterministic() {
    for seed in [0, 7, 99] {
        let a = gen_random(seed, 8, 2, 0.3).unwrap();
        let b = gen_random(seed, 8, 2, 0.3).unwrap();
        assert_eq!(a.network, b.network);
        assert_eq!(
            gen_random_graph(seed, 6, 8, 7).unwrap().network,
            gen_random_graph(seed, 6, 8, 7).unwrap().network
        );
    }
    assert!(gen_random(1, 5, 3, 0.5).is_err());
}

#[test]
fn named_generators_carry_expectations() {
    for name in NAMES {
        let b = by_name(name).unwrap().unwrap();
        assert!(!b.expected.is_empty(), "{name}");
        if let Some(v) = b.expected("max_flow") {
            assert_eq!(&max_flow_lp(&b.network).unwrap().value, v, "{name}");
        }
    }
    assert!(by_name("nope").is_none());
}

fn arb_family() -> impl Strategy<Value = (Vec<usize>, Vec<Vec<usize>>)> {
    (1usize..=6).prop_flat_map(|m| {
        let set = prop::collection::btree_set(1..=m, 1..=m)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just((1..=m).collect()), prop::collection::vec(set, 1..=4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hitting_set_reduction((universe, family) in arb_family()) {
        let w = hitting_cut(&universe, &family);
        prop_assert_eq!(brute_min_hitting_set(&universe, &family), naive_hitting_set(&universe, &family));
        prop_assert_eq!(w, int(naive_hitting_set(&universe, &family) as i64));
    }
}
