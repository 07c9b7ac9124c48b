use proptest::prelude::*;

use ordsemi::chain::{is_chain_bijection, Orientation};
use ordsemi::{
    compose, constant_map, decide_iso, enumerate_top, partial_graph, ChainPair, RangeMap, Transformation,
    DEFAULT_CAP,
};

fn chain_pair(max: usize) -> impl Strategy<Value = ChainPair> {
    (1..=max)
        .prop_flat_map(|n| (Just(n), proptest::collection::btree_set(0..n, 1..=n)))
        .prop_map(|(n, r)| ChainPair::new(n, r.into_iter().collect()).unwrap())
}

fn small_top(max: usize) -> impl Strategy<Value = (ChainPair, Vec<Transformation>)> {
    chain_pair(max).prop_map(|p| {
        let all = enumerate_top(&p, DEFAULT_CAP).unwrap();
        (p, all)
    })
}

proptest! {
    #[test]
    fn signature_accounts_for_every_element(p in chain_pair(12)) {
        let sig = p.gap_signature();
        prop_assert_eq!(sig.0.len(), p.rank() + 1);
        prop_assert_eq!(sig.total() + p.rank(), p.size());
        let nonzero: Vec<usize> = sig.0.iter().copied().filter(|&g| g > 0).collect();
        let lens: Vec<usize> = p.gap_blocks().iter().map(|b| b.len()).collect();
        prop_assert_eq!(lens, nonzero);
        for b in p.gap_blocks() {
            prop_assert!(b.elements().all(|x| !p.in_range(x)));
            prop_assert!(b.lo == 0 || p.in_range(b.lo - 1));
            prop_assert!(b.hi + 1 == p.size() || p.in_range(b.hi + 1));
        }
    }

    #[test]
    fn pair_isomorphism_witnesses(a in chain_pair(7), b in chain_pair(7)) {
        prop_assert_eq!(a.isomorphism_to(&a, Orientation::Forward), Some((0..a.size()).collect()));
        for o in [Orientation::Forward, Orientation::Reversed] {
            if let Some(theta) = a.isomorphism_to(&b, o) {
                prop_assert!(is_chain_bijection(&theta, o));
                let mut image: Vec<usize> = a.range().iter().map(|&x| theta[x]).collect();
                image.sort_unstable();
                prop_assert_eq!(&image[..], b.range());
            }
        }
        prop_assert_eq!(
            a.isomorphism_to(&b, Orientation::Forward).is_some(),
            b.isomorphism_to(&a, Orientation::Forward).is_some()
        );
    }

    #[test]
    fn closure_and_associativity((_p, all) in small_top(5)) {
        prop_assume!(all.len() <= 30);
        for a in &all {
            for b in &all {
                let ab = compose(a, b).unwrap();
                prop_assert!(Transformation::new(ab.pair().clone(), ab.image().to_vec()).is_ok());
                for c in &all {
                    prop_assert_eq!(compose(&ab, c).unwrap(), compose(a, &compose(b, c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn right_zeros_are_exactly_constants((p, all) in small_top(6)) {
        for k in &all {
            let right_zero = all.iter().all(|b| &compose(b, k).unwrap() == k);
            prop_assert_eq!(right_zero, k.is_constant());
        }
        for &a in p.range() {
            prop_assert!(constant_map(&p, a).unwrap().is_idempotent());
        }
    }

    #[test]
    fn components_equal_range_size((_p, all) in small_top(7)) {
        for t in &all {
            let g = partial_graph(t);
            prop_assert_eq!(g.component_count(), g.lower.len());
            prop_assert_eq!(g.edges.len(), g.upper.len());
        }
    }

    #[test]
    fn decision_is_symmetric(a in chain_pair(8), b in chain_pair(8)) {
        prop_assert!(decide_iso(&a, &a).is_isomorphic());
        prop_assert_eq!(decide_iso(&a, &b).verdict, decide_iso(&b, &a).verdict);
    }

    #[test]
    fn decision_is_transitive(a in chain_pair(5), b in chain_pair(5), c in chain_pair(5)) {
        if decide_iso(&a, &b).is_isomorphic() && decide_iso(&b, &c).is_isomorphic() {
            prop_assert!(decide_iso(&a, &c).is_isomorphic());
        }
    }

    #[test]
    fn json_roundtrip(p in chain_pair(10)) {
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<ChainPair>(&s).unwrap(), p);
    }
}
