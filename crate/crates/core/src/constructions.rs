//! Matrix families: the Hamming parity-check family `U_k` and its block
//! extension `U_{k,m}`, circulants, tree incidence matrices, standard-form
//! matrices built from row-type multiplicities, and the identity extension
//! used for the `n - m = 2, 3` extremal constructions.
//!
//! Columns of `U_k` are labelled `2^k - 1, ..., 1` from left to right and
//! rows by the labels that are not powers of two, in descending order.

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

/// Largest `k` accepted by the `U_k` builders.
pub const MAX_K: usize = 20;

fn check_k(k: usize) -> Result<()> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be in 2..={MAX_K}, got {k}")));
    }
    Ok(())
}

/// Row labels of `U_k`: non-powers of two below `2^k`, descending.
fn uk_row_labels(k: usize) -> Vec<usize> {
    (1..1usize << k).rev().filter(|x| !x.is_power_of_two()).collect()
}

/// `U_k` from the direct rule: row `r` with `2^t < r < 2^(t+1)` has its
/// ones in columns `r`, `r - 2^t` and `2^t`.
pub fn build_uk(k: usize) -> Result<BinaryMatrix> {
    check_k(k)?;
    let top = (1usize << k) - 1;
    let labels = uk_row_labels(k);
    BinaryMatrix::from_fn(labels.len(), top, |i, j| {
        let r = labels[i];
        let high = 1usize << (usize::BITS - 1 - r.leading_zeros());
        let col = top - j;
        col == r || col == r - high || col == high
    })
}

/// `U_k` from the recursion `U_2 = (1 1 1)`,
/// `U_{k+1} = [[I, 1, I], [0, 0, U_k]]` with `I` of order `2^k - 1`.
pub fn build_uk_recursive(k: usize) -> Result<BinaryMatrix> {
    check_k(k)?;
    let mut u = BinaryMatrix::from_strings(&["111"])?;
    for level in 2..k {
        let half = (1usize << level) - 1;
        let prev = u;
        u = BinaryMatrix::from_fn(half + prev.rows(), 2 * half + 1, |i, j| {
            if i < half {
                j == i || j == half || j == half + 1 + i
            } else {
                j > half && prev.get(i - half, j - half - 1)
            }
        })?;
    }
    Ok(u)
}

/// Splits `U_k` into `T_k` (columns whose label is not a power of two,
/// square upper triangular) and `R_k` (the `k` power-of-two columns).
pub fn split_tk_rk(k: usize) -> Result<(BinaryMatrix, BinaryMatrix)> {
    let u = build_uk(k)?;
    let top = (1usize << k) - 1;
    let (powers, others): (Vec<usize>, Vec<usize>) = (0..top).partition(|&j| (top - j).is_power_of_two());
    Ok((u.select_columns(&others)?, u.select_columns(&powers)?))
}

/// Block matrix `U_{k,m}` of size `((2^k-1)m - k) x ((2^k-1)m)`:
///
/// ```text
/// [ T_k            |           | R_k ]
/// [     ...        |           | ... ]
/// [          T_k   |           | R_k ]
/// [                | I_{(m-1)k}| I_k ]
/// [                |           | ... ]
/// ```
///
/// with `m - 1` stacked copies of `I_k` in the last `k` columns.
pub fn build_ukm(k: usize, m: usize) -> Result<BinaryMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let (t, r) = split_tk_rk(k)?;
    let s = t.rows();
    let rows = m * s + (m - 1) * k;
    let cols = m * s + (m - 1) * k + k;
    let tail = cols - k;
    BinaryMatrix::from_fn(rows, cols, |i, j| {
        if i < m * s {
            let block = i / s;
            if j >= tail {
                r.get(i % s, j - tail)
            } else {
                j / s == block && j < m * s && t.get(i % s, j % s)
            }
        } else {
            let q = i - m * s;
            j == m * s + q || (j >= tail && j - tail == q % k)
        }
    })
}

/// `[[core, 0], [(0 | I_j), I_j]]`: appends `j` rows and `j` columns, each
/// new row pairing one of the last `j` old columns with one new column.
pub fn extend_with_identity(core: &BinaryMatrix, j: usize) -> Result<BinaryMatrix> {
    if j > core.cols() {
        return Err(Error::InvalidArgument(format!(
            "cannot extend {} columns by an identity of order {j}",
            core.cols()
        )));
    }
    if j == 0 {
        return Ok(core.clone());
    }
    let (m, n) = (core.rows(), core.cols());
    BinaryMatrix::from_fn(m + j, n + j, |i, c| {
        if i < m {
            c < n && core.get(i, c)
        } else {
            let q = i - m;
            c == n - j + q || c == n + q
        }
    })
}

/// `n x n` circulant whose row `i` is `1^c 0^(n-c)` rotated right by `i`.
pub fn circulant(n: usize, c: usize) -> Result<BinaryMatrix> {
    if n == 0 || c == 0 || c > n {
        return Err(Error::InvalidArgument(format!("circulant needs 1 <= c <= n, got n={n}, c={c}")));
    }
    BinaryMatrix::from_fn(n, n, |i, j| (j + n - i) % n < c)
}

/// A tree on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(format!("malformed tree: {msg}")));
        if vertices < 2 {
            return bad(format!("need at least 2 vertices, got {vertices}"));
        }
        if edges.len() != vertices - 1 {
            return bad(format!("{} edges on {vertices} vertices", edges.len()));
        }
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return bad(format!("edge ({a},{b}) out of range"));
            }
            if a == b {
                return bad(format!("self-loop at {a}"));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return bad(format!("edge ({a},{b}) closes a cycle"));
            }
            parent[ra] = rb;
        }
        Ok(Self { vertices, edges })
    }

    pub fn path(vertices: usize) -> Result<Self> {
        Self::new(vertices, (1..vertices).map(|v| (v - 1, v)).collect())
    }

    pub fn star(vertices: usize) -> Result<Self> {
        Self::new(vertices, (1..vertices).map(|v| (0, v)).collect())
    }

    /// Tree from a Prüfer sequence of length `vertices - 2`.
    pub fn from_prufer(seq: &[usize]) -> Result<Self> {
        let n = seq.len() + 2;
        if seq.iter().any(|&v| v >= n) {
            return Err(Error::InvalidArgument("Prüfer label out of range".into()));
        }
        let mut degree = vec![1usize; n];
        for &v in seq {
            degree[v] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &v in seq {
            let leaf = (0..n).find(|&x| degree[x] == 1).expect("a leaf exists");
            edges.push((leaf, v));
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&x| degree[x] == 1).collect();
        edges.push((rest[0], rest[1]));
        Self::new(n, edges)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Edges-by-vertices incidence matrix of a tree.
pub fn tree_incidence(tree: &Tree) -> Result<BinaryMatrix> {
    BinaryMatrix::from_fn(tree.edges.len(), tree.vertices, |e, v| {
        let (a, b) = tree.edges[e];
        v == a || v == b
    })
}

/// Bit `i` (from the left, `0 <= i < k`) of the row type with index `u`;
/// index `u` reads as a `k`-bit binary string, so `c_01` is index 1.
#[inline]
pub fn type_bit(u: usize, i: usize, k: usize) -> bool {
    u >> (k - 1 - i) & 1 == 1
}

/// Standard-form matrix `[I_n | B]` where `B` holds `counts[u]` rows equal
/// to row type `u` (see [`type_bit`]), sorted by type descending.
pub fn standard_form_from_multiplicity(counts: &[usize], k: usize) -> Result<BinaryMatrix> {
    if k == 0 || counts.len() != 1 << k {
        return Err(Error::InvalidArgument(format!(
            "need {} multiplicities for k = {k}, got {}",
            1usize << k.min(20),
            counts.len()
        )));
    }
    let types: Vec<usize> = (0..counts.len()).rev().flat_map(|u| std::iter::repeat_n(u, counts[u])).collect();
    let n = types.len();
    if n == 0 {
        return Err(Error::InvalidArgument("multiplicities sum to zero".into()));
    }
    BinaryMatrix::from_fn(n, n + k, |i, j| if j < n { i == j } else { type_bit(types[i], j - n, k) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::stopping_distance;

    fn u(a: &BinaryMatrix) -> Option<usize> {
        stopping_distance(a).value
    }

    #[test]
    fn uk_small_cases() {
        assert_eq!(build_uk(2).unwrap(), BinaryMatrix::from_strings(&["111"]).unwrap());
        let u3 = BinaryMatrix::from_strings(&["1001100", "0101010", "0011001", "0000111"]).unwrap();
        assert_eq!(build_uk(3).unwrap(), u3);
        assert!(build_uk(1).is_err());
        assert!(build_uk_recursive(1).is_err());
    }

    #[test]
    fn recursive_matches_direct() {
        for k in 2..=6 {
            assert_eq!(build_uk_recursive(k).unwrap(), build_uk(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn uk_rows_have_weight_three() {
        for k in 2..=8 {
            let a = build_uk(k).unwrap();
            assert_eq!((a.rows(), a.cols()), ((1 << k) - 1 - k, (1 << k) - 1));
            assert!(a.row_weights().iter().all(|&w| w == 3));
        }
    }

    #[test]
    fn split_examples() {
        let (t3, r3) = split_tk_rk(3).unwrap();
        assert_eq!(t3, BinaryMatrix::from_strings(&["1001", "0100", "0010", "0001"]).unwrap());
        assert_eq!(r3, BinaryMatrix::from_strings(&["100", "110", "101", "011"]).unwrap());
        let (t2, r2) = split_tk_rk(2).unwrap();
        assert_eq!(t2, BinaryMatrix::from_strings(&["1"]).unwrap());
        assert_eq!(r2, BinaryMatrix::from_strings(&["11"]).unwrap());
        for k in 2..=6 {
            let (t, _) = split_tk_rk(k).unwrap();
            assert_eq!(t.rows(), t.cols());
            assert_eq!(t.rank_f2(), t.rows());
            assert!((0..t.rows()).all(|i| t.get(i, i) && (0..i).all(|j| !t.get(i, j))));
        }
    }

    #[test]
    fn ukm_shapes_and_values() {
        assert_eq!(build_ukm(2, 1).unwrap(), build_uk(2).unwrap());
        let a = build_ukm(2, 2).unwrap();
        assert_eq!((a.rows(), a.cols()), (4, 6));
        assert_eq!(u(&a), Some(4));
        let a = build_ukm(3, 2).unwrap();
        assert_eq!((a.rows(), a.cols()), (11, 14));
        assert_eq!(u(&a), Some(8));
        assert!(build_ukm(3, 0).is_err());
        assert!(build_ukm(1, 2).is_err());
    }

    #[test]
    fn identity_extension() {
        let a = extend_with_identity(&build_ukm(2, 1).unwrap(), 2).unwrap();
        assert_eq!(a, BinaryMatrix::from_strings(&["11100", "01010", "00101"]).unwrap());
        assert_eq!(u(&a), Some(3));
        let a = extend_with_identity(&build_ukm(3, 1).unwrap(), 3).unwrap();
        assert_eq!((a.rows(), a.cols()), (7, 10));
        assert_eq!(u(&a), Some(5));
        let core = build_uk(3).unwrap();
        assert_eq!(extend_with_identity(&core, 0).unwrap(), core);
        assert!(extend_with_identity(&core, 8).is_err());
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(circulant(3, 3).unwrap(), BinaryMatrix::ones(3, 3).unwrap());
        let a = circulant(8, 4).unwrap();
        assert!(a.row_weights().iter().all(|&w| w == 4));
        let alt = crate::matrix::ColumnSet::new([0, 2, 4, 6]);
        assert_eq!(a.weight_profile(&alt).unwrap().0, vec![2; 8]);
        assert_eq!(u(&a), Some(4));
        assert!(circulant(3, 4).is_err());
        assert!(circulant(3, 0).is_err());
    }

    #[test]
    fn tree_examples() {
        let p = tree_incidence(&Tree::path(3).unwrap()).unwrap();
        assert_eq!(p, BinaryMatrix::from_strings(&["110", "011"]).unwrap());
        assert_eq!(u(&p), Some(3));
        assert_eq!(u(&tree_incidence(&Tree::star(4).unwrap()).unwrap()), Some(4));
        let e = tree_incidence(&Tree::path(2).unwrap()).unwrap();
        assert_eq!(e, BinaryMatrix::from_strings(&["11"]).unwrap());
        assert_eq!(u(&e), Some(2));
        assert!(Tree::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Tree::new(3, vec![(0, 0), (1, 2)]).is_err());
        assert!(Tree::new(3, vec![(0, 1)]).is_err());
    }

    #[test]
    fn prufer_round_trip_counts() {
        // Cayley: 5^3 labelled trees on 5 vertices.
        let mut count = 0;
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    Tree::from_prufer(&[a, b, c]).unwrap();
                    count += 1;
                }
            }
        }
        assert_eq!(count, 125);
    }

    #[test]
    fn standard_form_examples() {
        let a = standard_form_from_multiplicity(&[0, 1, 1, 2], 2).unwrap();
        assert_eq!(
            a,
            BinaryMatrix::from_strings(&["100011", "010011", "001010", "000101"]).unwrap()
        );
        let v = u(&a).unwrap();
        assert!((2..=4).contains(&v));

        for n in 1..=5 {
            let a = standard_form_from_multiplicity(&[0, n], 1).unwrap();
            assert_eq!(u(&a), Some(n + 1));
        }
        let a = standard_form_from_multiplicity(&[3, 0, 0, 0], 2).unwrap();
        assert_eq!(u(&a), Some(1));
        assert!(standard_form_from_multiplicity(&[0, 0], 1).is_err());
        assert!(standard_form_from_multiplicity(&[0, 1, 2], 2).is_err());
    }
}
