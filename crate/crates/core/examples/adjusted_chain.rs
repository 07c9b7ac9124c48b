//! Gap signatures and adjusted chains, plus which pairs of a given size share
//! a signature up to reversal.

use ordsemi::decision::{all_ranges, decision_classes};
use ordsemi::adjusted_chain;

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let pairs = all_ranges(n, 2);
    for p in &pairs {
        let sig = p.gap_signature();
        let blocks: Vec<String> = p.gap_blocks().iter().map(|b| b.to_string()).collect();
        println!("{p:<20} signature {:?} blocks [{}]  {}", sig.0, blocks.join(" "), adjusted_chain(p));
    }

    println!("\nclasses of isomorphic semigroups at size {n}:");
    for (rep, members) in decision_classes(&pairs) {
        if members.len() > 1 {
            let names: Vec<String> = members.iter().map(|m| format!("{{{m}}}")).collect();
            println!("  {rep}: {}", names.join(" "));
        }
    }
}
