//! n x (n+1) matrices with the largest possible stopping distance n + 1,
//! up to row and column permutation, and whether each is a tree.
//!
//! ```text
//! cargo run --release --example tree_census [max_n]
//! ```

use stopdist::constructions::{tree_incidence, Tree};
use stopdist::extremal::{canonical_form, census_k1};

fn main() {
    let max_n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    for n in 1..=max_n {
        let census = census_k1(n).unwrap();
        let trees = census.iter().filter(|e| e.is_tree).count();
        println!("n = {n}: {} classes, {trees} tree incidence matrices", census.len());
        for e in &census {
            println!("  {}  tree={}", e.matrix.to_compact(), e.is_tree);
        }
    }

    let path = canonical_form(&tree_incidence(&Tree::path(4).unwrap()).unwrap()).unwrap();
    let star = canonical_form(&tree_incidence(&Tree::star(4).unwrap()).unwrap()).unwrap();
    println!("\npath on 4 vertices: {}", path.to_compact());
    println!("star on 4 vertices: {}", star.to_compact());
}
