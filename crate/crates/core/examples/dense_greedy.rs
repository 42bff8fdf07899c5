//! Sample-and-repair on heavy circulants: how few columns suffice to give
//! every row at least two ones.
//!
//! ```text
//! cargo run --release --example dense_greedy
//! ```

use stopdist::constructions::circulant;
use stopdist::dense::{expected_size_rate, run_trials};

fn main() {
    let n = 200;
    let trials = 100;
    println!("{:>3} {:>5} {:>10} {:>10} {:>9}", "c", "rho", "mean", "worst", "rate");
    for c in [5, 7, 9, 12] {
        let a = circulant(n, c).unwrap();
        for rho in [0.3, 0.4, 0.5] {
            let outs = run_trials(&a, rho, 0, trials).unwrap();
            assert!(outs.iter().all(|o| a.is_all_ge2(&o.selected).unwrap()));
            let fractions: Vec<f64> = outs.iter().map(|o| o.fraction(n)).collect();
            let mean = fractions.iter().sum::<f64>() / trials as f64;
            let worst = fractions.iter().cloned().fold(0.0, f64::max);
            let rate = expected_size_rate(c, rho).unwrap();
            println!("{c:>3} {rho:>5.2} {mean:>10.4} {worst:>10.4} {rate:>9.4}");
        }
    }
}
