//! The partial graph of a map into the range: upper vertices are `X'`,
//! lower vertices are the range of the map, and each upper `x` points to `xα`.
//! Prints the DOT for the nine-point example and its components.
//!
//!     cargo run --example partial_graph | dot -Tsvg > graph.svg

use ordsemi::{partial_graph, ChainPair, FullMap, RangeMap};

fn main() {
    let pair = ChainPair::new(9, vec![0, 2, 4, 6, 8]).unwrap();
    let alpha = FullMap::new(pair, vec![0, 4, 0, 8, 4, 4, 4, 2, 4]).unwrap();
    eprintln!("{}", alpha.two_row());
    eprintln!("order-preserving: {}", alpha.is_order_preserving());

    let g = partial_graph(&alpha);
    for (uppers, lower) in g.components() {
        eprintln!("component {uppers:?} -> {lower}");
    }
    eprintln!("{} components, |ran α| = {}", g.component_count(), g.lower.len());
    print!("{}", g.to_dot());
}
