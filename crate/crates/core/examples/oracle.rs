//! Exhaustive isomorphism search between two Cayley tables, then the chain
//! map `θ_φ` the isomorphism induces on the ranges and its extension to the
//! adjusted chains.

use ordsemi::{
    check_preservation, extend_theta_hat, extract_theta, find_all_isos, find_iso, CayleyTable, ChainPair,
    SearchOptions,
};

fn main() {
    let a = ChainPair::new(6, vec![1, 3]).unwrap();
    let b = ChainPair::new(6, vec![2, 4]).unwrap();
    let ta = CayleyTable::build(&a, 10_000).unwrap();
    let tb = CayleyTable::build(&b, 10_000).unwrap();
    println!("{a} has {} elements, {b} has {}", ta.order(), tb.order());

    let Some(phi) = find_iso(ta.table(), tb.table(), SearchOptions::default()).unwrap() else {
        println!("not isomorphic");
        return;
    };
    println!("least isomorphism {:?}", phi.mapping);

    let theta = extract_theta(&ta, &tb, &phi).unwrap();
    println!("θ_φ {:?} ({:?})", theta.map, theta.orientation);

    let hat = extend_theta_hat(&ta, &tb, &phi).unwrap();
    for m in &hat.blocks {
        println!("block {} -> {} (witness class of size {})", m.source, m.target, m.witness_class_size);
    }

    let report = check_preservation(&ta, &tb, &phi, &theta);
    println!("{} elements transported, {} violations", report.elements_checked, report.violations.len());

    let all = find_all_isos(ta.table(), tb.table(), SearchOptions::default(), usize::MAX).unwrap();
    println!("{} isomorphisms in total", all.len());

    let c = ChainPair::new(6, vec![1, 4]).unwrap();
    let tc = CayleyTable::build(&c, 10_000).unwrap();
    if tc.order() == ta.order() {
        let refused = find_iso(ta.table(), tc.table(), SearchOptions::default()).unwrap();
        println!("{a} vs {c}: {}", if refused.is_some() { "isomorphic" } else { "refused" });
    }
}
