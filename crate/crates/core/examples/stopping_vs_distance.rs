//! Stopping distance against minimum distance on a few small matrices.
//!
//! ```text
//! cargo run --example stopping_vs_distance [matrix-file]
//! ```
//!
//! With a file argument the matrix is read in text format (`m n` header,
//! then one 0/1 string per row); otherwise a built-in set is used.

use stopdist::{min_distance, stopping_distance, BinaryMatrix};

fn describe(name: &str, a: &BinaryMatrix) {
    let u = stopping_distance(a);
    let e = min_distance(a);
    println!("{name} ({}x{})", a.rows(), a.cols());
    for r in a.row_strings() {
        println!("  {r}");
    }
    let show = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
    let set = |w: &Option<stopdist::ColumnSet>| w.as_ref().map_or("-".to_string(), |w| w.to_string());
    println!("  u   = {:<4} witness {}", show(u.value), set(&u.witness));
    println!("  eps = {:<4} witness {}", show(e.value), set(&e.witness));
    u.verify(a).expect("stopping certificate checks");
    e.verify(a).expect("distance certificate checks");
    println!();
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        let a: BinaryMatrix = text.parse().expect("matrix text format");
        describe(&path, &a);
        return;
    }
    let gap = BinaryMatrix::from_strings(&["10001100", "01000110", "00100011", "00011001"]).unwrap();
    let even = BinaryMatrix::from_strings(&["10001110", "01001101", "00101011", "00010111"]).unwrap();
    let hamming = BinaryMatrix::from_strings(&["1010101", "0110011", "0001111"]).unwrap();
    let cycle = BinaryMatrix::from_strings(&["1100", "0110", "0011", "1001"]).unwrap();
    describe("4x8 with u = eps = 3", &gap);
    describe("4x8 with eps = 4 but u = 3", &even);
    describe("Hamming (3,7) parity check", &hamming);
    describe("4-cycle incidence", &cycle);
}
