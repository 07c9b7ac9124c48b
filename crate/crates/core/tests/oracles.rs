//! Checks against independent brute-force oracles: every map `X → X'` is
//! generated and filtered, every bijection of a small chain is tried, and
//! K-classes are recomputed by direct pairwise comparison.

use std::collections::BTreeSet;

use ordsemi::chain::Orientation;
use ordsemi::decision::all_ranges;
use ordsemi::{
    adjusted_chain, enumerate_top, k_classes, lambda_class_sizes, ChainPair, RangeMap, DEFAULT_CAP,
};

/// All `|X'|^|X|` maps into the range, in lexicographic order.
fn all_maps(pair: &ChainPair) -> Vec<Vec<usize>> {
    let n = pair.size();
    let range = pair.range();
    let k = range.len();
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut digits = vec![0; n];
            for d in digits.iter_mut().rev() {
                *d = range[code % k];
                code /= k;
            }
            digits
        })
        .collect()
}

fn monotone_maps(pair: &ChainPair) -> Vec<Vec<usize>> {
    all_maps(pair).into_iter().filter(|m| m.windows(2).all(|w| w[0] <= w[1])).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn enumeration_matches_filtered_maps() {
    for n in 1..=7 {
        for pair in all_ranges(n, 1) {
            let expected = monotone_maps(&pair);
            let got: Vec<Vec<usize>> =
                enumerate_top(&pair, DEFAULT_CAP).unwrap().into_iter().map(|t| t.into_image()).collect();
            assert_eq!(got, expected, "{pair}");
        }
    }
}

#[test]
fn named_enumeration_counts() {
    let p = ChainPair::new(5, vec![1, 3]).unwrap();
    assert_eq!(monotone_maps(&p).len(), 6);
    let p = ChainPair::new(9, vec![0, 2, 4, 6, 8]).unwrap();
    let brute = monotone_maps(&p).len();
    assert_eq!(brute, 715);
    // C(13, 4)
    assert_eq!(brute, 13 * 12 * 11 * 10 / 24);
    assert_eq!(enumerate_top(&p, DEFAULT_CAP).unwrap().len(), brute);
    assert_eq!(monotone_maps(&ChainPair::full(3).unwrap()).len(), 10);
}

#[test]
fn pair_isomorphism_matches_exhaustive_search() {
    for n in 1..=5 {
        let pairs = all_ranges(n, 1);
        let perms = permutations(n);
        for a in &pairs {
            for b in &pairs {
                for orientation in [Orientation::Forward, Orientation::Reversed] {
                    let brute: Vec<&Vec<usize>> = perms
                        .iter()
                        .filter(|p| {
                            let ordered = p.windows(2).all(|w| match orientation {
                                Orientation::Forward => w[0] < w[1],
                                Orientation::Reversed => w[0] > w[1],
                            });
                            let image: BTreeSet<usize> = a.range().iter().map(|&x| p[x]).collect();
                            ordered && image == b.range().iter().copied().collect()
                        })
                        .collect();
                    assert!(brute.len() <= 1);
                    assert_eq!(a.isomorphism_to(b, orientation).as_ref(), brute.first().copied());
                }
            }
        }
    }
}

#[test]
fn named_pair_isomorphism_refusal() {
    let a = ChainPair::new(3, vec![0, 1]).unwrap();
    let b = ChainPair::new(3, vec![0, 2]).unwrap();
    let hits = permutations(3)
        .into_iter()
        .filter(|p| {
            let image: BTreeSet<usize> = a.range().iter().map(|&x| p[x]).collect();
            let mono = p.windows(2).all(|w| w[0] < w[1]) || p.windows(2).all(|w| w[0] > w[1]);
            mono && image == [0, 2].into_iter().collect()
        })
        .count();
    assert_eq!(hits, 0);
    assert_eq!(a.gap_signature().0, vec![0, 0, 1]);
    assert_eq!(b.gap_signature().0, vec![0, 1, 0]);
}

/// K-classes by direct comparison of restriction and range.
fn brute_k_sizes(pair: &ChainPair) -> Vec<usize> {
    let maps = monotone_maps(pair);
    let key = |m: &Vec<usize>| {
        let restr: Vec<usize> = pair.range().iter().map(|&x| m[x]).collect();
        let ran: BTreeSet<usize> = m.iter().copied().collect();
        (restr, ran)
    };
    let mut assigned = vec![false; maps.len()];
    let mut sizes = Vec::new();
    for i in 0..maps.len() {
        if assigned[i] {
            continue;
        }
        let mut size = 0;
        for j in i..maps.len() {
            if !assigned[j] && key(&maps[i]) == key(&maps[j]) {
                assigned[j] = true;
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes
}

#[test]
fn k_partition_matches_pairwise_comparison() {
    for n in 1..=6 {
        for pair in all_ranges(n, 1) {
            assert_eq!(k_classes(&pair, DEFAULT_CAP).unwrap().sizes(), brute_k_sizes(&pair), "{pair}");
        }
    }
    assert_eq!(brute_k_sizes(&ChainPair::new(5, vec![1, 3]).unwrap()), vec![1, 1, 2, 1, 1]);
}

#[test]
fn lambda_sizes_against_brute_force() {
    // size 6, X' = {1, 4}: shapes counted directly from images
    let p = ChainPair::new(6, vec![1, 4]).unwrap();
    let maps = monotone_maps(&p);
    assert_eq!(maps.len(), 7);
    let mut counts = [0; 5];
    for m in &maps {
        let ran: BTreeSet<usize> = m.iter().copied().collect();
        let idx = match (m[1], m[4], ran.len()) {
            (1, 1, 1) => 0,
            (4, 4, 1) => 1,
            (1, 4, 2) => 2,
            (1, 1, 2) => 3,
            (4, 4, 2) => 4,
            other => panic!("unexpected shape {other:?}"),
        };
        counts[idx] += 1;
    }
    assert_eq!(counts, [1, 1, 3, 1, 1]);
    assert_eq!(lambda_class_sizes(&p).unwrap(), counts);
}

#[test]
fn adjusted_chain_node_count() {
    for n in 1..=7 {
        for pair in all_ranges(n, 1) {
            let chain = adjusted_chain(&pair);
            assert_eq!(chain.len(), pair.rank() + pair.gap_blocks().len());
        }
    }
}

#[test]
fn idempotents_by_pointwise_check() {
    let p = ChainPair::new(5, vec![1, 3]).unwrap();
    for t in enumerate_top(&p, DEFAULT_CAP).unwrap() {
        let img = t.image();
        let squared: Vec<usize> = img.iter().map(|&y| img[y]).collect();
        assert_eq!(t.is_idempotent(), squared == img);
    }
}
