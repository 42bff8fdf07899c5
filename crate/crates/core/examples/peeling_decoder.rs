//! Erasure decoding by peeling, and how it stalls exactly on stopping sets.
//!
//! ```text
//! cargo run --example peeling_decoder
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stopdist::constructions::build_uk;
use stopdist::solver::decode_erasures;
use stopdist::{peel, stopping_distance, ColumnSet};

fn main() {
    let a = build_uk(4).unwrap();
    let u = stopping_distance(&a);
    let witness = u.witness.clone().unwrap();
    println!("U_4 is {}x{} with stopping distance {}", a.rows(), a.cols(), u.value.unwrap());

    // A codeword of the code with parity-check U_4: the all-zero word.
    let codeword = vec![false; a.cols()];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..5 {
        let received: Vec<Option<bool>> = codeword
            .iter()
            .map(|&b| if rng.gen_bool(0.35) { None } else { Some(b) })
            .collect();
        let erased = received.iter().filter(|x| x.is_none()).count();
        let (word, result) = decode_erasures(&a, &received).unwrap();
        let recovered = word.iter().filter(|x| x.is_some()).count();
        println!(
            "trial {trial}: {erased:>2} erased, {:>2} resolved, residual {}  ({recovered}/{} known)",
            result.resolved.len(),
            result.residual,
            a.cols()
        );
    }

    let stuck = peel(&a, &witness).unwrap();
    println!("\nerasing the minimum stopping set {witness}: residual {}", stuck.residual);
    let mut smaller: Vec<usize> = witness.iter().collect();
    smaller.pop();
    let smaller = ColumnSet::new(smaller);
    let freed = peel(&a, &smaller).unwrap();
    println!("erasing {smaller} instead: residual {} after {} steps", freed.residual, freed.resolved.len());
}
