//! Prints both constructions for every m in a range, with timings.
//!
//! cargo run --release -p hexdist-core --example table -- 7 34

use std::time::Instant;

use hexdist_core::clique::Unbounded;
use hexdist_core::search::table_range;

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lo, hi) = match args[..] {
        [lo, hi] => (lo, hi),
        _ => (7, 34),
    };
    let start = Instant::now();
    let rows = table_range(lo, hi, |_| Unbounded).expect("valid range");
    println!("{:>3} {:>6} {:>7} {:>5}", "m", "clique", "hexagon", "best");
    for r in &rows {
        println!(
            "{:>3} {:>6} {:>7} {:>4}{}",
            r.m(),
            r.clique.size,
            r.hexagon.size,
            r.best().size,
            if r.star() { "*" } else { "" }
        );
    }
    eprintln!("{:.2?}", start.elapsed());
}
