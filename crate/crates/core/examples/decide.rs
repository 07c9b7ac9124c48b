//! Deciding isomorphism from the chain pairs alone, then building the
//! semigroup isomorphism the decision names and checking it on the tables.

use ordsemi::decision::materialize_witness;
use ordsemi::{decide_iso, verify_iso, CayleyTable, ChainPair};

fn main() {
    let cases = [
        ((5, vec![1, 3]), (5, vec![1, 3])),
        ((6, vec![0, 3]), (6, vec![2, 5])),
        ((3, vec![1, 2]), (3, vec![0, 1])),
        ((3, vec![0, 1]), (3, vec![0, 2])),
        ((7, vec![1, 3, 4]), (7, vec![2, 3, 5])),
        ((7, vec![0, 3, 4]), (7, vec![2, 3, 5])),
    ];
    for ((n, r), (m, s)) in cases {
        let a = ChainPair::new(n, r).unwrap();
        let b = ChainPair::new(m, s).unwrap();
        let d = decide_iso(&a, &b);
        print!("{a} | {b}: {:?} by {:?}", d.verdict, d.rule);
        if d.mirror_clause_used {
            print!(" (mirror)");
        }
        if let Some(w) = &d.witness {
            let ta = CayleyTable::build(&a, 10_000).unwrap();
            let tb = CayleyTable::build(&b, 10_000).unwrap();
            let phi = materialize_witness(&ta, &tb, w).unwrap();
            print!(", witness verifies: {}", verify_iso(ta.table(), tb.table(), &phi));
        }
        println!();
    }
}
