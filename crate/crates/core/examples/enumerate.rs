//! Lists `T_OP(X, X')` in canonical order, two-row form.
//!
//!     cargo run --example enumerate -- 5 1,3

use ordsemi::{count_top, enumerate_top, ChainPair, RangeMap, DEFAULT_CAP};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let range: Vec<usize> = args
        .next()
        .unwrap_or_else(|| "1,3".into())
        .split(',')
        .map(|s| s.trim().parse().expect("range element"))
        .collect();
    let pair = ChainPair::new(n, range).expect("valid pair");

    println!("{pair}: |T_OP| = {}", count_top(&pair));
    for (i, t) in enumerate_top(&pair, DEFAULT_CAP).expect("within cap").iter().enumerate() {
        let tags = [(t.is_idempotent(), "idempotent"), (t.is_constant(), "constant")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, s)| *s)
            .collect::<Vec<_>>()
            .join(", ");
        println!("#{i} {tags}\n{}\n", t.two_row());
    }
}
