//! The standard-form linear program: exact optimum n/H_k, its dual
//! certificate, and the integer optimum with a realizing matrix.
//!
//! ```text
//! cargo run --example harmonic_lp [n] [k]
//! ```

use stopdist::lp::{bracket_ui, format_rational, harmonic, lp_value, realize};
use stopdist::stopping_distance;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(11);
    let k = args.get(1).copied().unwrap_or(3);

    let w = lp_value(n, k).unwrap();
    assert!(w.verify());
    println!("n = {n}, k = {k}, H_k = {}", format_rational(&harmonic(k).unwrap()));
    println!("LP optimum n/H_k = {}", format_rational(&w.value));
    println!("{:>5} {:>8} {:>10} {:>10}", "type", "bits", "dual w", "primal z");
    for u in 0..1usize << k {
        println!(
            "{u:>5} {:>8} {:>10} {:>10}",
            format!("{u:0k$b}"),
            format_rational(w.dual.get(u)),
            format_rational(w.primal.get(u))
        );
    }

    if k <= 5 {
        let (lo, hi, sol) = bracket_ui(n, k).unwrap();
        println!("\ninteger optimum {} with multiplicities {:?}", sol.m, sol.z);
        let a = realize(&sol).unwrap();
        let u = stopping_distance(&a).value.unwrap();
        println!("realized [I_n | B] is {}x{} with u = {u}, bracket ({lo},{hi})", a.rows(), a.cols());
    }
}
