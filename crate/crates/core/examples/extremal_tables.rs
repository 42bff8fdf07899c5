//! Exhaustive tables of u(m, n) and ε(m, n) for small matrices.
//!
//! ```text
//! cargo run --release --example extremal_tables [max_rows] [max_cols]
//! ```

use std::time::Instant;

use stopdist::bounds::closed_form_u;
use stopdist::extremal::{extremal_eps, extremal_u, SearchConstraints};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let max_rows = args.first().copied().unwrap_or(4);
    let max_cols = args.get(1).copied().unwrap_or(8);
    let none = SearchConstraints::default();

    println!("{:>3} {:>3} {:>4} {:>4} {:>6} {:>12} {:>9}", "m", "n", "u", "eps", "closed", "candidates", "seconds");
    for m in 1..=max_rows {
        for n in m + 1..=max_cols {
            let start = Instant::now();
            let (u, e) = match (extremal_u(m, n, &none), extremal_eps(m, n, &none)) {
                (Ok(u), Ok(e)) => (u, e),
                (Err(err), _) | (_, Err(err)) => {
                    println!("{m:>3} {n:>3}  skipped: {err}");
                    continue;
                }
            };
            let closed = closed_form_u(m, n).map_or("-".to_string(), |v| v.to_string());
            println!(
                "{m:>3} {n:>3} {:>4} {:>4} {closed:>6} {:>12} {:>9.2}",
                u.value,
                e.value,
                u.candidates_examined + e.candidates_examined,
                start.elapsed().as_secs_f64()
            );
        }
    }

    let u3 = extremal_u(4, 8, &SearchConstraints::row_weight(3)).expect("small cell");
    println!("\nu_3(4,8) = {}, attained by", u3.value);
    print!("{}", u3.witness_matrix.to_text());
}
