//! Closed-form bounds and exact values for u(m, n) and ε(m, n).
//!
//! All functions take raw matrix dimensions `(rows, cols)`. With
//! `k = cols - rows`, an `n x (n + k)` matrix corresponds to
//! `(rows, cols) = (n, n + k)`.

use crate::error::{Error, Result};

fn redundancy(m: usize, n: usize) -> Result<usize> {
    if m == 0 || n <= m {
        return Err(Error::InvalidArgument(format!("need 1 <= rows < cols, got ({m},{n})")));
    }
    Ok(n - m)
}

/// `floor((1 + 1/(2^k - 1)) * n / 2)` with `k = n - m`: every `m x n`
/// matrix has an even set of at most this many columns.
pub fn parity_bound(m: usize, n: usize) -> Result<usize> {
    let k = redundancy(m, n)?;
    if k >= 64 {
        // n < 2^k - 1, so the correction term is below 1/2 and the floor
        // of n/2 plus it is n/2 rounded down.
        return Ok(n / 2);
    }
    let full = (1u128 << k) - 1;
    Ok(((n as u128) * (1u128 << (k - 1)) / full) as usize)
}

/// Griesmer length `sum_{i < dim} ceil(d / 2^i)`: the shortest possible
/// binary linear code of dimension `dim` and distance `d`.
pub fn griesmer_min_length(d: usize, dim: usize) -> usize {
    (0..dim)
        .map(|i| if i >= usize::BITS as usize { 1.min(d) } else { d.div_ceil(1 << i) })
        .sum()
}

/// Upper bound on ε(m, n): the largest `d` with a Griesmer length of at
/// most `n` at dimension `n - m` (the kernel's minimum dimension), capped by
/// [`parity_bound`].
pub fn eps_upper(m: usize, n: usize) -> Result<usize> {
    let k = redundancy(m, n)?;
    let parity = parity_bound(m, n)?;
    let mut d = 1;
    while d < parity && griesmer_min_length(d + 1, k) <= n {
        d += 1;
    }
    Ok(d)
}

/// Exact u(m, n) for `n - m` in `{1, 2, 3}`:
///
/// * `k = 1`: `m + 1`
/// * `k = 2`: `floor((2m + 4) / 3)`
/// * `k = 3`: `floor((4m + 12) / 7)`, except `4(m + 1)/7` when `m ≡ 6 (mod 7)`
///
/// Other gaps are reported as an error rather than extrapolated.
pub fn closed_form_u(m: usize, n: usize) -> Result<usize> {
    match redundancy(m, n)? {
        1 => Ok(m + 1),
        2 => Ok((2 * m + 4) / 3),
        3 if m % 7 == 6 => Ok(4 * (m + 1) / 7),
        3 => Ok((4 * m + 12) / 7),
        k => Err(Error::InvalidArgument(format!("no closed form for n - m = {k}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Evaluates the parity bound in exact rationals:
    /// `(1 + 1/(2^k-1)) * n / 2 = n 2^k / (2 (2^k - 1))`.
    fn parity_oracle(m: usize, n: usize) -> usize {
        let k = (n - m) as u32;
        let num = (n as u128) * (1u128 << k);
        let den = 2 * ((1u128 << k) - 1);
        (num / den) as usize
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_bound(4, 8).unwrap(), 4);
        assert_eq!(parity_bound(4, 7).unwrap(), 4);
        assert_eq!(parity_bound(1, 2).unwrap(), 2);
        assert!(parity_bound(3, 3).is_err());
        assert!(parity_bound(0, 3).is_err());
    }

    #[test]
    fn parity_matches_rational_oracle() {
        for n in 2..200 {
            for m in 1..n.min(100) {
                if n - m < 100 {
                    assert_eq!(parity_bound(m, n).unwrap(), parity_oracle(m, n), "({m},{n})");
                }
            }
        }
        assert_eq!(parity_bound(1, 101).unwrap(), 50);
    }

    #[test]
    fn parity_is_half_at_hamming_points() {
        for k in 2..=10 {
            let n = (1 << k) - 1;
            assert_eq!(parity_bound(n - k, n).unwrap(), 1 << (k - 1));
        }
    }

    #[test]
    fn griesmer_examples() {
        assert_eq!(griesmer_min_length(3, 4), 7);
        assert_eq!(griesmer_min_length(5, 3), 10);
        assert_eq!(griesmer_min_length(1, 1), 1);
        for m in 1..10 {
            let d = 4 * m + 1;
            assert_eq!(griesmer_min_length(d, 3), 7 * m + 3);
        }
    }

    #[test]
    fn griesmer_is_monotone() {
        for d in 1..40 {
            for dim in 1..12 {
                assert!(griesmer_min_length(d, dim) <= griesmer_min_length(d + 1, dim));
                assert!(griesmer_min_length(d, dim) <= griesmer_min_length(d, dim + 1));
            }
        }
    }

    #[test]
    fn eps_upper_examples() {
        assert_eq!(eps_upper(6, 9).unwrap(), 4);
        assert_eq!(eps_upper(4, 8).unwrap(), 4);
        assert_eq!(eps_upper(4, 7).unwrap(), 4);
        for m in 1..8 {
            assert_eq!(eps_upper(7 * m - 1, 7 * m + 2).unwrap(), 4 * m);
        }
        for n in 2..60 {
            for m in 1..n {
                assert!(eps_upper(m, n).unwrap() <= parity_bound(m, n).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_u(4, 6).unwrap(), 4);
        assert_eq!(closed_form_u(6, 9).unwrap(), 4);
        assert_eq!(closed_form_u(7, 10).unwrap(), 5);
        assert_eq!(closed_form_u(3, 4).unwrap(), 4);
        assert!(closed_form_u(4, 8).is_err());
    }

    #[test]
    fn closed_form_never_exceeds_eps_upper() {
        for m in 1..100 {
            for k in 1..=3 {
                assert!(closed_form_u(m, m + k).unwrap() <= eps_upper(m, m + k).unwrap(), "({m},{})", m + k);
            }
        }
    }
}
