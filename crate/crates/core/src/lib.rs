//! Exact stopping distance and minimum distance of binary parity-check
//! matrices.
//!
//! For an `m x n` binary matrix `A`, a nonempty column set is *1-free*
//! (a stopping set) when no row meets it exactly once, and *even* when
//! every row meets it an even number of times. `u(A)` and `ε(A)` are the
//! smallest sizes of such sets; `ε(A)` is the minimum distance of the code
//! with parity-check matrix `A`, and `u(A) <= ε(A)`.
//!
//! The crate provides:
//!
//! * [`matrix`]: bit-packed matrices, column sets, GF(2) rank and kernel,
//!   collapse and padding.
//! * [`solver`]: exact `u` and `ε` with witnesses and certificates, and a
//!   peeling decoder for the erasure channel.
//! * [`constructions`]: Hamming-type families `U_k`, `U_{k,m}`,
//!   circulants, tree incidence matrices, standard forms.
//! * [`bounds`]: parity and Griesmer bounds, closed forms for `n - m <= 3`.
//! * [`lp`]: the standard-form linear program in exact rationals and its
//!   integer version.
//! * [`dense`]: sample-and-repair for matrices with heavy rows.
//! * [`extremal`]: exhaustive `u(m, n)` and `ε(m, n)`, the tree census.
//! * [`report`] and [`verify`]: JSON reports and bundled check suites.
//!
//! ```
//! use stopdist::{stopping_distance, min_distance, BinaryMatrix};
//!
//! let a = BinaryMatrix::from_strings(&["10001100", "01000110", "00100011", "00011001"]).unwrap();
//! assert_eq!(stopping_distance(&a).value, Some(3));
//! assert_eq!(min_distance(&a).value, Some(3));
//! ```
//!
//! Runnable walkthroughs live in `examples/`.

mod bits;
pub mod bounds;
pub mod certificate;
pub mod constructions;
pub mod dense;
pub mod error;
pub mod extremal;
pub mod lp;
pub mod matrix;
pub mod report;
pub mod solver;
pub mod verify;

pub use bits::BitVector;
pub use certificate::{Certificate, Evidence, Statistic};
pub use error::{Error, Result};
pub use matrix::{BinaryMatrix, ColumnSet, WeightProfile};
pub use solver::{min_distance, peel, stopping_distance, PeelResult};
