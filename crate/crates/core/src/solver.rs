//! Exact stopping distance and minimum distance, with witnesses, plus the
//! erasure-channel peeling decoder.
//!
//! Both statistics share one subset search. A partial column set is
//! extended only through its *defect* rows: rows at weight exactly 1 for
//! 1-free sets, rows of odd weight for even sets. Any qualifying superset
//! must contain another column covering each defect row, so branching on
//! the defect row with the fewest admissible columns is complete, and a
//! defect row with no admissible column prunes the branch. Candidates of
//! one branching row are tried in ascending order, and each is excluded
//! from the later siblings so every set is reached at most once.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{BitVector, Mask};
use crate::bounds;
use crate::certificate::{Certificate, Evidence, Statistic};
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, ColumnSet};

/// Kernels up to this dimension are enumerated exhaustively.
pub const KERNEL_ENUMERATION_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Property {
    OneFree,
    Even,
}

impl From<Statistic> for Property {
    fn from(s: Statistic) -> Self {
        match s {
            Statistic::Stopping => Property::OneFree,
            Statistic::Distance => Property::Even,
        }
    }
}

/// Row state of a partial column set.
#[derive(Clone)]
pub(crate) struct RowState<R> {
    /// Rows that must still be hit by another column.
    defect: R,
    /// Rows already at weight >= 2 (1-free search only).
    heavy: R,
}

impl<R: Mask> RowState<R> {
    pub(crate) fn empty(rows: usize) -> Self {
        Self {
            defect: R::empty(rows),
            heavy: R::empty(rows),
        }
    }

    #[inline]
    pub(crate) fn add(&self, column: &R, property: Property) -> Self {
        match property {
            Property::OneFree => {
                let heavy = self.heavy.or(&self.defect.and(column));
                let defect = self.defect.xor(column).and_not(&heavy);
                Self { defect, heavy }
            }
            Property::Even => Self {
                defect: self.defect.xor(column),
                heavy: self.heavy.clone(),
            },
        }
    }

    #[inline]
    pub(crate) fn is_satisfied(&self) -> bool {
        self.defect.is_zero()
    }
}

/// Subset search over the columns of a fixed matrix. `R` masks rows, `C`
/// masks columns.
pub(crate) struct SubsetSearch<R, C> {
    property: Property,
    rows: usize,
    cols: usize,
    /// Per column: the rows where it has a 1.
    columns: Vec<R>,
    /// Per row: the columns where it has a 1.
    row_cols: Vec<C>,
}

impl<R: Mask, C: Mask> SubsetSearch<R, C> {
    pub(crate) fn new(a: &BinaryMatrix, property: Property) -> Self {
        Self {
            property,
            rows: a.rows(),
            cols: a.cols(),
            columns: (0..a.cols()).map(|j| R::from_slice(a.col_words(j))).collect(),
            row_cols: (0..a.rows()).map(|i| C::from_slice(a.row_words(i))).collect(),
        }
    }

    pub(crate) fn columns_above(&self, first: usize) -> C {
        let mut allowed = C::empty(self.cols);
        for j in first + 1..self.cols {
            allowed.insert(j);
        }
        allowed
    }

    /// Depth-first extension of `selected` (whose row state is `state`) by
    /// columns from `allowed`, up to `limit` columns in total. Every
    /// qualifying set reached is passed to `visit`; no set is extended past
    /// the point where it qualifies.
    pub(crate) fn extend(
        &self,
        selected: &mut Vec<usize>,
        state: &RowState<R>,
        allowed: &C,
        limit: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if state.is_satisfied() {
            return if selected.is_empty() {
                ControlFlow::Continue(())
            } else {
                visit(selected)
            };
        }
        if selected.len() >= limit {
            return ControlFlow::Continue(());
        }
        let mut best: Option<(u32, C)> = None;
        let mut dead = false;
        state.defect.for_each(|r| {
            if dead {
                return;
            }
            let cand = self.row_cols[r].and(allowed);
            let count = cand.count();
            if count == 0 {
                dead = true;
            } else if best.as_ref().is_none_or(|(c, _)| count < *c) {
                best = Some((count, cand));
            }
        });
        if dead {
            return ControlFlow::Continue(());
        }
        let Some((_, candidates)) = best else {
            return ControlFlow::Continue(());
        };
        let mut remaining = allowed.clone();
        let mut order = Vec::new();
        candidates.for_each(|c| order.push(c));
        for c in order {
            let mut single = C::empty(self.cols);
            single.insert(c);
            remaining = remaining.and_not(&single);
            let next = state.add(&self.columns[c], self.property);
            selected.push(c);
            let flow = self.extend(selected, &next, &remaining, limit, visit);
            selected.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Lexicographically least qualifying set of size at most `limit`
    /// whose smallest element is `first`.
    fn least_from(&self, first: usize, limit: usize) -> Option<Vec<usize>> {
        let state = RowState::empty(self.rows).add(&self.columns[first], self.property);
        let allowed = self.columns_above(first);
        let mut best: Option<Vec<usize>> = None;
        let mut selected = vec![first];
        let _ = self.extend(&mut selected, &state, &allowed, limit, &mut |s| {
            let mut s = s.to_vec();
            s.sort_unstable();
            let better = match &best {
                None => true,
                Some(b) => s.len() < b.len() || (s.len() == b.len() && s < *b),
            };
            if better {
                best = Some(s);
            }
            ControlFlow::Continue(())
        });
        best
    }

    pub(crate) fn exists_within(&self, limit: usize) -> bool {
        (0..self.cols).any(|first| {
            let state = RowState::empty(self.rows).add(&self.columns[first], self.property);
            let mut selected = vec![first];
            self.extend(&mut selected, &state, &self.columns_above(first), limit, &mut |_| {
                ControlFlow::Break(())
            })
            .is_break()
        })
    }
}

impl SubsetSearch<u64, u64> {
    /// Search over up to 64 columns given as row masks over at most 64 rows.
    pub(crate) fn from_column_masks(rows: usize, columns: &[u64], property: Property) -> Self {
        debug_assert!(rows <= 64 && columns.len() <= 64);
        let mut row_cols = vec![0u64; rows];
        for (j, &c) in columns.iter().enumerate() {
            c.for_each(|i| row_cols[i] |= 1 << j);
        }
        Self {
            property,
            rows,
            cols: columns.len(),
            columns: columns.to_vec(),
            row_cols,
        }
    }

    /// Whether some qualifying set of at most `limit` columns contains
    /// column `forced`.
    pub(crate) fn exists_containing(&self, forced: usize, limit: usize) -> bool {
        if limit == 0 {
            return false;
        }
        let state = RowState::empty(self.rows).add(&self.columns[forced], self.property);
        let allowed = ((1u128 << self.cols) - 1) as u64 & !(1u64 << forced);
        let mut selected = vec![forced];
        self.extend(&mut selected, &state, &allowed, limit, &mut |_| ControlFlow::Break(()))
            .is_break()
    }
}

impl<R: Mask + Send + Sync, C: Mask + Send + Sync> SubsetSearch<R, C> {
    /// Iterative deepening on the target size. Returns the lexicographically
    /// least minimum set, or `None` if no nonempty set qualifies.
    pub(crate) fn minimum(&self, workers: usize) -> Option<Vec<usize>> {
        if !self.exists_within(self.cols) {
            return None;
        }
        for t in 1..=self.cols {
            let found = if workers > 1 {
                let per_root: Vec<Option<Vec<usize>>> = (0..self.cols)
                    .into_par_iter()
                    .map(|first| self.least_from(first, t))
                    .collect();
                per_root.into_iter().flatten().next()
            } else {
                (0..self.cols).find_map(|first| self.least_from(first, t))
            };
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn minimum_set(a: &BinaryMatrix, property: Property, workers: usize) -> Option<Vec<usize>> {
    if a.rows() <= 64 && a.cols() <= 64 {
        SubsetSearch::<u64, u64>::new(a, property).minimum(workers)
    } else {
        SubsetSearch::<Vec<u64>, Vec<u64>>::new(a, property).minimum(workers)
    }
}

fn run_with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn bound_refs(a: &BinaryMatrix) -> Vec<String> {
    let (m, n) = (a.rows(), a.cols());
    match bounds::eps_upper(m, n) {
        Ok(b) => vec![format!("eps_upper({m},{n})={b}")],
        Err(_) => Vec::new(),
    }
}

fn certificate(a: &BinaryMatrix, statistic: Statistic, found: Option<Vec<usize>>) -> Certificate {
    match found {
        Some(set) => Certificate {
            statistic,
            value: Some(set.len()),
            evidence: Evidence {
                exhausted_below: set.len(),
                bound_refs: bound_refs(a),
            },
            witness: Some(ColumnSet::new(set)),
        },
        None => Certificate {
            statistic,
            value: None,
            witness: None,
            evidence: Evidence {
                exhausted_below: a.cols() + 1,
                bound_refs: bound_refs(a),
            },
        },
    }
}

/// Stopping distance u(A): the smallest nonempty 1-free column set.
pub fn stopping_distance(a: &BinaryMatrix) -> Certificate {
    stopping_distance_with(a, 1)
}

/// [`stopping_distance`] with the root branches split over `workers`
/// threads; the result does not depend on the worker count.
pub fn stopping_distance_with(a: &BinaryMatrix, workers: usize) -> Certificate {
    let found = run_with_workers(workers, || minimum_set(a, Property::OneFree, workers));
    certificate(a, Statistic::Stopping, found)
}

/// Minimum distance ε(A) of the code with parity-check matrix A.
///
/// Kernels of dimension at most [`KERNEL_ENUMERATION_LIMIT`] are enumerated
/// in Gray-code order; larger ones fall back to the even-set search.
pub fn min_distance(a: &BinaryMatrix) -> Certificate {
    let basis = a.kernel_basis();
    if basis.len() <= KERNEL_ENUMERATION_LIMIT {
        min_distance_from_basis(a, &basis)
    } else {
        min_distance_by_search(a)
    }
}

/// Minimum distance by enumerating all nonzero kernel vectors.
pub fn min_distance_by_kernel(a: &BinaryMatrix) -> Result<Certificate> {
    let basis = a.kernel_basis();
    if basis.len() > KERNEL_ENUMERATION_LIMIT {
        return Err(Error::Infeasible {
            estimate: 2f64.powi(basis.len() as i32),
        });
    }
    Ok(min_distance_from_basis(a, &basis))
}

/// Minimum distance by the even-set subset search (no linear algebra).
pub fn min_distance_by_search(a: &BinaryMatrix) -> Certificate {
    certificate(a, Statistic::Distance, minimum_set(a, Property::Even, 1))
}

fn min_distance_from_basis(a: &BinaryMatrix, basis: &[BitVector]) -> Certificate {
    let mut best: Option<(usize, BitVector)> = None;
    let mut current = BitVector::zeros(a.cols());
    let total: u64 = 1 << basis.len();
    for i in 1..total {
        current.xor_assign(&basis[i.trailing_zeros() as usize]);
        let w = current.weight();
        let better = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && current.support_lex_less(bv)),
        };
        if better {
            best = Some((w, current.clone()));
        }
    }
    certificate(a, Statistic::Distance, best.map(|(_, v)| v.ones()))
}

/// Outcome of peeling an erasure set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelResult {
    /// Resolved columns in order, each with the row that forced it.
    pub resolved: Vec<(usize, usize)>,
    /// Columns left when no row covers exactly one of them; a 1-free set
    /// when nonempty.
    pub residual: ColumnSet,
}

/// Erasure peeling: while some row has exactly one 1 among the remaining
/// erased columns, that column is resolved. The lowest such row is used at
/// every step.
pub fn peel(a: &BinaryMatrix, erased: &ColumnSet) -> Result<PeelResult> {
    erased.check(a.cols())?;
    let mut remaining = erased.to_bits(a.cols());
    let mut resolved = Vec::new();
    'outer: loop {
        for i in 0..a.rows() {
            let mut hit = None;
            let mut count = 0;
            for (wi, (&r, &q)) in a.row_words(i).iter().zip(remaining.words()).enumerate() {
                let both = r & q;
                count += both.count_ones();
                if count > 1 {
                    break;
                }
                if both != 0 {
                    hit = Some(wi * 64 + both.trailing_zeros() as usize);
                }
            }
            if count == 1 {
                let j = hit.expect("one hit");
                remaining.set(j, false);
                resolved.push((j, i));
                continue 'outer;
            }
        }
        break;
    }
    Ok(PeelResult {
        resolved,
        residual: ColumnSet::from(&remaining),
    })
}

/// Fills the erased positions (`None`) of a received word by peeling.
/// Positions left in the residual stopping set stay `None`.
pub fn decode_erasures(a: &BinaryMatrix, received: &[Option<bool>]) -> Result<(Vec<Option<bool>>, PeelResult)> {
    if received.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "word of length {} for {} columns",
            received.len(),
            a.cols()
        )));
    }
    let erased = ColumnSet::new((0..received.len()).filter(|&j| received[j].is_none()));
    let result = peel(a, &erased)?;
    let mut word = received.to_vec();
    for &(j, i) in &result.resolved {
        let parity = a
            .row(i)
            .ones()
            .into_iter()
            .filter(|&c| c != j)
            .fold(false, |acc, c| acc ^ word[c].expect("other positions of the forcing row are known"));
        word[j] = Some(parity);
    }
    Ok((word, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn e1() -> BinaryMatrix {
        BinaryMatrix::from_strings(&["10001110", "01001101", "00101011", "00010111"]).unwrap()
    }

    fn e2() -> BinaryMatrix {
        BinaryMatrix::from_strings(&["10001100", "01000110", "00100011", "00011001"]).unwrap()
    }

    #[test]
    fn stopping_distance_examples() {
        let c = stopping_distance(&e2());
        assert_eq!(c.value, Some(3));
        assert_eq!(c.witness, Some(ColumnSet::new([0, 1, 5])));
        c.verify(&e2()).unwrap();

        let i5 = BinaryMatrix::identity(5).unwrap();
        let c = stopping_distance(&i5);
        assert_eq!(c.value, None);
        assert_eq!(c.evidence.exhausted_below, 6);
        c.verify(&i5).unwrap();

        let u3 = constructions::build_uk(3).unwrap();
        assert_eq!(stopping_distance(&u3).value, Some(4));
    }

    #[test]
    fn min_distance_examples() {
        let c = min_distance(&e1());
        assert_eq!(c.value, Some(4));
        c.verify(&e1()).unwrap();
        assert_eq!(min_distance(&BinaryMatrix::identity(3).unwrap()).value, None);
        let u22 = constructions::build_ukm(2, 2).unwrap();
        assert_eq!(min_distance(&u22).value, Some(4));
    }

    #[test]
    fn kernel_and_search_witnesses_agree() {
        for a in [e1(), e2(), constructions::build_uk(3).unwrap()] {
            assert_eq!(min_distance_by_kernel(&a).unwrap(), min_distance_by_search(&a));
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let a = constructions::circulant(12, 4).unwrap();
        assert_eq!(stopping_distance(&a), stopping_distance_with(&a, 4));
    }

    #[test]
    fn zero_column_gives_one() {
        let a = BinaryMatrix::from_strings(&["101", "100"]).unwrap();
        let c = stopping_distance(&a);
        assert_eq!(c.value, Some(1));
        assert_eq!(c.witness, Some(ColumnSet::new([1])));
        assert_eq!(min_distance(&a).value, Some(1));
    }

    #[test]
    fn peel_examples() {
        let r = peel(&e2(), &ColumnSet::empty()).unwrap();
        assert!(r.resolved.is_empty() && r.residual.is_empty());

        let r = peel(&e2(), &ColumnSet::new([0, 1, 5])).unwrap();
        assert_eq!(r.residual, ColumnSet::new([0, 1, 5]));

        let path = BinaryMatrix::from_strings(&["110", "011"]).unwrap();
        let r = peel(&path, &ColumnSet::new([0, 1])).unwrap();
        assert!(r.residual.is_empty());
        assert_eq!(r.resolved, vec![(1, 1), (0, 0)]);

        assert!(peel(&path, &ColumnSet::new([3])).is_err());
    }

    #[test]
    fn erasure_decoding_recovers_codeword() {
        let a = constructions::build_uk(3).unwrap();
        let codeword = BitVector::from_indices(7, [0, 1, 2, 3]);
        assert!(a.syndrome(&codeword).is_zero());
        let mut received: Vec<Option<bool>> = (0..7).map(|j| Some(codeword.get(j))).collect();
        for j in [0, 4, 6] {
            received[j] = None;
        }
        let (word, result) = decode_erasures(&a, &received).unwrap();
        assert!(result.residual.is_empty());
        for (j, bit) in word.iter().enumerate() {
            assert_eq!(*bit, Some(codeword.get(j)));
        }
    }
}
