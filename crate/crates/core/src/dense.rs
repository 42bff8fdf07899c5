//! Randomized sample-and-repair search for column sets with every row sum
//! at least 2, aimed at matrices whose rows are all heavy.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Each column consumes exactly one `f64` draw from
//! `Rng::gen`, in column order, and is sampled when the draw is `< rho`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, ColumnSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    pub selected: ColumnSet,
    /// Columns picked by the random sample.
    pub sampled_count: usize,
    /// Columns added while repairing deficient rows.
    pub repaired_count: usize,
    /// Rows of weight 0 after sampling.
    pub zero_rows: usize,
    /// Rows of weight 1 after sampling.
    pub one_rows: usize,
    pub seed: u64,
    pub rho: f64,
}

impl GreedyOutcome {
    pub fn fraction(&self, cols: usize) -> f64 {
        self.selected.len() as f64 / cols as f64
    }
}

/// Samples each column with probability `rho`, then raises every row of
/// weight 0 or 1 to weight 2.
///
/// Deficient rows are handled in ascending order. Each repair adds the
/// unselected column in that row that also hits the most other deficient
/// rows, lowest index on ties. Every row needs weight at least 2 for the
/// repair to succeed.
pub fn sample_and_repair(a: &BinaryMatrix, rho: f64, seed: u64) -> Result<GreedyOutcome> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("rho must lie in (0, 1), got {rho}")));
    }
    if let Some(row) = (0..a.rows()).find(|&i| a.row_weight(i) < 2) {
        return Err(Error::LightRow {
            row,
            weight: a.row_weight(row),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut selected = vec![false; a.cols()];
    for s in selected.iter_mut() {
        *s = rng.gen::<f64>() < rho;
    }
    let sampled_count = selected.iter().filter(|&&s| s).count();

    let mut sums: Vec<usize> = (0..a.rows())
        .map(|i| a.row(i).ones().into_iter().filter(|&j| selected[j]).count())
        .collect();
    let zero_rows = sums.iter().filter(|&&s| s == 0).count();
    let one_rows = sums.iter().filter(|&&s| s == 1).count();

    let mut repaired_count = 0;
    for i in 0..a.rows() {
        while sums[i] < 2 {
            let pick = a
                .row(i)
                .ones()
                .into_iter()
                .filter(|&j| !selected[j])
                .map(|j| {
                    let gain = a.col(j).ones().into_iter().filter(|&r| r != i && sums[r] < 2).count();
                    (std::cmp::Reverse(gain), j)
                })
                .min()
                .map(|(_, j)| j)
                .expect("row weight >= 2 leaves a column to add");
            selected[pick] = true;
            repaired_count += 1;
            for r in a.col(pick).ones() {
                sums[r] += 1;
            }
        }
    }
    Ok(GreedyOutcome {
        selected: ColumnSet::new((0..a.cols()).filter(|&j| selected[j])),
        sampled_count,
        repaired_count,
        zero_rows,
        one_rows,
        seed,
        rho,
    })
}

/// `trials` runs with seeds `seed, seed + 1, ...`, in seed order.
pub fn run_trials(a: &BinaryMatrix, rho: f64, seed: u64, trials: usize) -> Result<Vec<GreedyOutcome>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| sample_and_repair(a, rho, seed.wrapping_add(t)))
        .collect()
}

/// Leading-order selected fraction `rho + (1-rho)^c + c rho (1-rho)^(c-1)`
/// for minimum row weight `c`.
pub fn expected_size_rate(c: usize, rho: f64) -> Result<f64> {
    if c == 0 || !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("need c >= 1 and 0 < rho < 1, got c={c}, rho={rho}")));
    }
    let q = 1.0 - rho;
    Ok(rho + q.powi(c as i32) + c as f64 * rho * q.powi(c as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::circulant;

    #[test]
    fn all_ones_matrix() {
        let a = BinaryMatrix::ones(20, 20).unwrap();
        let out = sample_and_repair(&a, 0.4, 7).unwrap();
        assert!(a.is_all_ge2(&out.selected).unwrap());
        assert!(out.sampled_count + out.repaired_count >= out.selected.len());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = circulant(60, 9).unwrap();
        assert_eq!(sample_and_repair(&a, 0.4, 3).unwrap(), sample_and_repair(&a, 0.4, 3).unwrap());
        let trials = run_trials(&a, 0.4, 10, 5).unwrap();
        assert_eq!(trials[2], sample_and_repair(&a, 0.4, 12).unwrap());
    }

    #[test]
    fn circulant_four_needs_half() {
        let a = circulant(8, 4).unwrap();
        for seed in 0..20 {
            let out = sample_and_repair(&a, 0.5, seed).unwrap();
            assert!(a.is_all_ge2(&out.selected).unwrap());
            assert!(out.selected.len() >= 4);
        }
    }

    #[test]
    fn repairs_stay_within_two_per_row() {
        let a = circulant(100, 9).unwrap();
        for seed in 0..10 {
            let out = sample_and_repair(&a, 0.3, seed).unwrap();
            assert!(out.repaired_count <= 2 * a.rows());
            assert!(out.repaired_count <= 2 * out.zero_rows + out.one_rows);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = BinaryMatrix::identity(4).unwrap();
        assert!(matches!(sample_and_repair(&a, 0.4, 0), Err(Error::LightRow { row: 0, weight: 1 })));
        let a = circulant(8, 4).unwrap();
        assert!(sample_and_repair(&a, 0.0, 0).is_err());
        assert!(sample_and_repair(&a, 1.0, 0).is_err());
    }

    #[test]
    fn rate_examples() {
        let r = expected_size_rate(9, 0.4).unwrap();
        assert!((r - 0.470_544).abs() < 1e-5 && r < 0.481);
        assert!((expected_size_rate(1, 0.5).unwrap() - 1.5).abs() < 1e-12);
        assert!((expected_size_rate(4, 0.4).unwrap() - 0.8752).abs() < 1e-4);
        assert!(expected_size_rate(0, 0.4).is_err());
        assert!(expected_size_rate(3, 1.2).is_err());
    }
}
