//! Exhaustive maxima u(m, n) and ε(m, n) over all m x n binary matrices.
//!
//! Matrices are enumerated as nondecreasing sequences of column types
//! (integers below `2^m`), which quotients out column permutations. The
//! enumeration is monotone: appending columns never destroys a 1-free or
//! even set, so a prefix that already holds a qualifying set of size at
//! most the current best cannot lead to an improvement and is cut. Only
//! sets through the newest column need checking at each step, plus a full
//! recheck of the prefix whenever the best improves. Zero
//! columns, repeated columns and most row-permutation duplicates fall to
//! this cut without special casing.
//!
//! Matrices with a zero row are skipped when maximizing: replacing the
//! zero row by a copy of any other row leaves every row sum pattern, and
//! hence both statistics, unchanged.
//!
//! The search space is split by the type of the first column. Each part
//! starts from best = 0 and keeps its first maximizer in enumeration
//! order; parts are merged by value, then by enumeration order. Value,
//! witness and candidate count are therefore independent of the number of
//! workers.

use std::collections::BTreeSet;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::Statistic;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::solver::{Property, SubsetSearch};

/// Enumerations whose raw multiset count exceeds this are refused.
pub const DEFAULT_MAX_ESTIMATE: f64 = 1e9;
/// Row count limit (column types must fit a machine word).
pub const MAX_ROWS: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchConstraints {
    /// Every row must have exactly this weight.
    pub exact_row_weight: Option<usize>,
    pub distinct_columns: bool,
    pub forbid_zero_columns: bool,
    pub forbid_zero_rows: bool,
}

impl SearchConstraints {
    pub fn row_weight(w: usize) -> Self {
        Self {
            exact_row_weight: Some(w),
            ..Self::default()
        }
    }

    /// Stable text key, used by the result cache.
    pub fn key(&self) -> String {
        let mut parts = Vec::new();
        if let Some(w) = self.exact_row_weight {
            parts.push(format!("row_weight={w}"));
        }
        if self.distinct_columns {
            parts.push("distinct_columns".to_string());
        }
        if self.forbid_zero_columns {
            parts.push("no_zero_columns".to_string());
        }
        if self.forbid_zero_rows {
            parts.push("no_zero_rows".to_string());
        }
        if parts.is_empty() {
            "none".to_string()
        } else {
            parts.join(",")
        }
    }

    fn validate(&self, m: usize, n: usize) -> Result<()> {
        if let Some(w) = self.exact_row_weight {
            if w > n {
                return Err(Error::InvalidArgument(format!("row weight {w} exceeds {n} columns")));
            }
        }
        if self.distinct_columns && (n as u128) > (1u128 << m) {
            return Err(Error::InvalidArgument(format!("{n} distinct columns of height {m}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub statistic: Statistic,
    pub rows: usize,
    pub cols: usize,
    pub value: usize,
    pub witness_matrix: BinaryMatrix,
    /// Complete matrices that survived every prefix cut and were solved.
    pub candidates_examined: u64,
    pub constraints: SearchConstraints,
}

#[derive(Clone, Debug)]
pub struct ExtremalOptions {
    pub workers: usize,
    pub max_estimate: f64,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            max_estimate: DEFAULT_MAX_ESTIMATE,
        }
    }
}

/// Number of column-type sequences before any pruning.
pub fn estimate_candidates(m: usize, n: usize, constraints: &SearchConstraints) -> f64 {
    let types = column_types(m, constraints).len() as f64;
    let mut count = 1.0;
    for i in 0..n as u32 {
        let i = f64::from(i);
        count *= if constraints.distinct_columns {
            (types - i).max(0.0) / (i + 1.0)
        } else {
            (types + i) / (i + 1.0)
        };
    }
    count
}

fn column_types(m: usize, constraints: &SearchConstraints) -> Vec<u64> {
    let start = u64::from(constraints.forbid_zero_columns);
    (start..1u64 << m).collect()
}

#[derive(Clone, Copy)]
enum Goal {
    /// Keep the first matrix whose statistic beats everything before it.
    Maximize,
    /// Keep every matrix whose statistic reaches the threshold.
    Collect { threshold: usize },
}

struct Enumerator<'a> {
    m: usize,
    n: usize,
    property: Property,
    constraints: &'a SearchConstraints,
    skip_zero_rows: bool,
    types: Vec<u64>,
    goal: Goal,
}

#[derive(Default)]
struct PartResult {
    best: usize,
    witness: Option<Vec<u64>>,
    collected: Vec<Vec<u64>>,
    examined: u64,
}

impl Enumerator<'_> {
    fn limit(&self, part: &PartResult) -> usize {
        match self.goal {
            Goal::Maximize => part.best,
            Goal::Collect { threshold } => threshold - 1,
        }
    }

    fn run_part(&self, first: usize) -> PartResult {
        let mut part = PartResult::default();
        let mut cols = Vec::with_capacity(self.n);
        let mut weights = vec![0usize; self.m];
        self.place(first, &mut cols, &mut weights, &mut part);
        part
    }

    fn place(&self, t: usize, cols: &mut Vec<u64>, weights: &mut [usize], part: &mut PartResult) {
        let c = self.types[t];
        for (i, w) in weights.iter_mut().enumerate() {
            *w += (c >> i & 1) as usize;
        }
        cols.push(c);
        if self.admissible(cols, weights) {
            let search = SubsetSearch::from_column_masks(self.m, cols, self.property);
            if !search.exists_containing(cols.len() - 1, self.limit(part)) {
                if cols.len() == self.n {
                    self.finish(cols, part);
                } else {
                    let next = if self.constraints.distinct_columns { t + 1 } else { t };
                    let mut checked = self.limit(part);
                    for u in next..self.types.len() {
                        if self.limit(part) > checked {
                            checked = self.limit(part);
                            if SubsetSearch::from_column_masks(self.m, cols, self.property).exists_within(checked) {
                                break;
                            }
                        }
                        self.place(u, cols, weights, part);
                    }
                }
            }
        }
        cols.pop();
        for (i, w) in weights.iter_mut().enumerate() {
            *w -= (c >> i & 1) as usize;
        }
    }

    fn admissible(&self, cols: &[u64], weights: &[usize]) -> bool {
        let Some(w) = self.constraints.exact_row_weight else {
            return true;
        };
        let remaining = self.n - cols.len();
        weights.iter().all(|&x| x <= w && x + remaining >= w)
    }

    fn finish(&self, cols: &[u64], part: &mut PartResult) {
        let all_rows = (1u64 << self.m) - 1;
        let covered = cols.iter().fold(0, |a, c| a | c);
        if (self.skip_zero_rows || self.constraints.forbid_zero_rows) && covered != all_rows {
            return;
        }
        part.examined += 1;
        match self.goal {
            Goal::Maximize => {
                let value = SubsetSearch::from_column_masks(self.m, cols, self.property)
                    .minimum(1)
                    .map_or(usize::MAX, |s| s.len());
                debug_assert!(value > part.best, "{cols:?} value {value} best {}", part.best);
                part.best = value;
                part.witness = Some(cols.to_vec());
            }
            Goal::Collect { .. } => part.collected.push(cols.to_vec()),
        }
    }
}

fn matrix_from_types(m: usize, cols: &[u64]) -> BinaryMatrix {
    BinaryMatrix::from_fn(m, cols.len(), |i, j| cols[j] >> i & 1 == 1).expect("nonempty")
}

fn check_dims(m: usize, n: usize, constraints: &SearchConstraints, opts: &ExtremalOptions) -> Result<()> {
    if m == 0 || n <= m {
        return Err(Error::InvalidArgument(format!("extremal search needs 1 <= rows < cols, got ({m},{n})")));
    }
    if m > MAX_ROWS || n > 64 {
        return Err(Error::InvalidArgument(format!(
            "extremal search supports at most {MAX_ROWS} rows and 64 columns"
        )));
    }
    constraints.validate(m, n)?;
    let estimate = estimate_candidates(m, n, constraints);
    if estimate > opts.max_estimate {
        return Err(Error::Infeasible { estimate });
    }
    Ok(())
}

fn run_parts(e: &Enumerator<'_>, workers: usize) -> Vec<PartResult> {
    let parts = 0..e.types.len();
    if workers > 1 {
        let work = || parts.into_par_iter().map(|t| e.run_part(t)).collect();
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    } else {
        parts.map(|t| e.run_part(t)).collect()
    }
}

/// Maximum of `statistic` over all `m x n` matrices meeting `constraints`.
pub fn extremal(
    statistic: Statistic,
    m: usize,
    n: usize,
    constraints: &SearchConstraints,
    opts: &ExtremalOptions,
) -> Result<ExtremalResult> {
    check_dims(m, n, constraints, opts)?;
    let e = Enumerator {
        m,
        n,
        property: statistic.into(),
        constraints,
        skip_zero_rows: true,
        types: column_types(m, constraints),
        goal: Goal::Maximize,
    };
    let parts = run_parts(&e, opts.workers);
    let examined = parts.iter().map(|p| p.examined).sum();
    let winner = parts
        .into_iter()
        .filter(|p| p.witness.is_some())
        .reduce(|a, b| if b.best > a.best { b } else { a })
        .ok_or_else(|| Error::InvalidArgument("no matrix satisfies the constraints".into()))?;
    Ok(ExtremalResult {
        statistic,
        rows: m,
        cols: n,
        value: winner.best,
        witness_matrix: matrix_from_types(m, winner.witness.as_deref().expect("filtered")),
        candidates_examined: examined,
        constraints: constraints.clone(),
    })
}

/// u(m, n) under `constraints`, single worker.
pub fn extremal_u(m: usize, n: usize, constraints: &SearchConstraints) -> Result<ExtremalResult> {
    extremal(Statistic::Stopping, m, n, constraints, &ExtremalOptions::default())
}

/// ε(m, n) under `constraints`, single worker.
pub fn extremal_eps(m: usize, n: usize, constraints: &SearchConstraints) -> Result<ExtremalResult> {
    extremal(Statistic::Distance, m, n, constraints, &ExtremalOptions::default())
}

/// Canonical form under row and column permutations: the least sorted
/// column-type list over all row orders. Exact, `O(m!)`.
pub fn canonical_form(a: &BinaryMatrix) -> Result<BinaryMatrix> {
    let m = a.rows();
    if m > 8 {
        return Err(Error::InvalidArgument("exact canonical form limited to 8 rows".into()));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut cols: Vec<u64> = (0..a.cols())
            .map(|j| (0..m).filter(|&i| a.get(perm[i], j)).fold(0u64, |acc, i| acc | 1 << i))
            .collect();
        cols.sort_unstable();
        if best.as_ref().is_none_or(|b| cols < *b) {
            best = Some(cols);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(matrix_from_types(m, &best.expect("at least one permutation")))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether `a` is the edge-vertex incidence matrix of a tree: every row
/// has weight 2 and the resulting graph is connected with one fewer edge
/// than vertices.
pub fn is_tree_incidence(a: &BinaryMatrix) -> bool {
    if a.cols() != a.rows() + 1 || a.row_weights().iter().any(|&w| w != 2) {
        return false;
    }
    let mut parent: Vec<usize> = (0..a.cols()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = a.cols();
    for i in 0..a.rows() {
        let ends = a.row(i).ones();
        let (x, y) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
        if x != y {
            parent[x] = y;
            components -= 1;
        }
    }
    components == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub matrix: BinaryMatrix,
    pub is_tree: bool,
}

/// All `n x (n+1)` matrices with stopping distance `n + 1`, one per
/// row/column permutation class, each flagged by [`is_tree_incidence`].
pub fn census_k1(n: usize) -> Result<Vec<CensusEntry>> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(format!("census supports 1 <= n <= 6, got {n}")));
    }
    let constraints = SearchConstraints::default();
    let e = Enumerator {
        m: n,
        n: n + 1,
        property: Property::OneFree,
        constraints: &constraints,
        skip_zero_rows: false,
        types: column_types(n, &constraints),
        goal: Goal::Collect { threshold: n + 1 },
    };
    let mut classes = BTreeSet::new();
    for part in run_parts(&e, 1) {
        for cols in part.collected {
            classes.insert(canonical_form(&matrix_from_types(n, &cols))?.to_compact());
        }
    }
    classes
        .into_iter()
        .map(|s| {
            let matrix = BinaryMatrix::from_compact(&s)?;
            Ok(CensusEntry {
                is_tree: is_tree_incidence(&matrix),
                matrix,
            })
        })
        .collect()
}

/// Append-only table of extremal results keyed by statistic, dimensions
/// and constraints. One tab-separated line per result:
/// `stat  m  n  constraints  value  candidates  witness`, with the witness
/// in compact `row/row/...` form.
#[derive(Clone, Debug)]
pub struct ExtremalCache {
    path: PathBuf,
}

fn stat_name(s: Statistic) -> &'static str {
    match s {
        Statistic::Stopping => "u",
        Statistic::Distance => "eps",
    }
}

impl ExtremalCache {
    pub fn new(path: impl AsRef<Path>) -> Self {
        Self {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn lookup(
        &self,
        statistic: Statistic,
        m: usize,
        n: usize,
        constraints: &SearchConstraints,
    ) -> Result<Option<ExtremalResult>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::InvalidArgument(format!("cache {}: {e}", self.path.display()))),
        };
        let key = [stat_name(statistic).to_string(), m.to_string(), n.to_string(), constraints.key()];
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::InvalidArgument(e.to_string()))?;
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 7 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: "cache line needs 7 fields".into(),
                });
            }
            if fields[..4] == key {
                let parse = |s: &str| {
                    s.parse::<u64>().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        message: format!("bad number {s:?}"),
                    })
                };
                return Ok(Some(ExtremalResult {
                    statistic,
                    rows: m,
                    cols: n,
                    value: parse(fields[4])? as usize,
                    candidates_examined: parse(fields[5])?,
                    witness_matrix: BinaryMatrix::from_compact(fields[6])?,
                    constraints: constraints.clone(),
                }));
            }
        }
        Ok(None)
    }

    pub fn append(&self, r: &ExtremalResult) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::InvalidArgument(format!("cache {}: {e}", self.path.display())))?;
        writeln!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            stat_name(r.statistic),
            r.rows,
            r.cols,
            r.constraints.key(),
            r.value,
            r.candidates_examined,
            r.witness_matrix.to_compact()
        )
        .map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Cached result, or a fresh search that is then appended.
    pub fn get_or_compute(
        &self,
        statistic: Statistic,
        m: usize,
        n: usize,
        constraints: &SearchConstraints,
        opts: &ExtremalOptions,
    ) -> Result<ExtremalResult> {
        if let Some(hit) = self.lookup(statistic, m, n, constraints)? {
            return Ok(hit);
        }
        let r = extremal(statistic, m, n, constraints, opts)?;
        self.append(&r)?;
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{min_distance, stopping_distance};

    fn none() -> SearchConstraints {
        SearchConstraints::default()
    }

    #[test]
    fn small_tables() {
        assert_eq!(extremal_u(1, 5, &none()).unwrap().value, 2);
        assert_eq!(extremal_u(2, 6, &none()).unwrap().value, 2);
        assert_eq!(extremal_eps(1, 5, &none()).unwrap().value, 2);
        assert_eq!(extremal_u(3, 7, &none()).unwrap().value, 3);
        assert_eq!(extremal_u(2, 3, &none()).unwrap().value, 3);
    }

    #[test]
    fn witness_attains_value() {
        for (m, n) in [(2, 4), (3, 5), (3, 6)] {
            let r = extremal_u(m, n, &none()).unwrap();
            assert_eq!(stopping_distance(&r.witness_matrix).value, Some(r.value));
            let r = extremal_eps(m, n, &none()).unwrap();
            assert_eq!(min_distance(&r.witness_matrix).value, Some(r.value));
        }
    }

    #[test]
    fn workers_do_not_change_result() {
        let one = extremal(Statistic::Stopping, 3, 6, &none(), &ExtremalOptions::default()).unwrap();
        let four = extremal(
            Statistic::Stopping,
            3,
            6,
            &none(),
            &ExtremalOptions {
                workers: 4,
                ..ExtremalOptions::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn brute_force_agrees_on_tiny_cells() {
        // Every m x n matrix, solved directly.
        for (m, n) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)] {
            let mut best_u = 0;
            let mut best_e = 0;
            for bits in 0u64..1 << (m * n) {
                let a = BinaryMatrix::from_fn(m, n, |i, j| bits >> (i * n + j) & 1 == 1).unwrap();
                best_u = best_u.max(stopping_distance(&a).value.unwrap());
                best_e = best_e.max(min_distance(&a).value.unwrap());
            }
            assert_eq!(extremal_u(m, n, &none()).unwrap().value, best_u, "u({m},{n})");
            assert_eq!(extremal_eps(m, n, &none()).unwrap().value, best_e, "eps({m},{n})");
        }
    }

    #[test]
    fn row_weight_constraint() {
        let r = extremal_u(2, 4, &SearchConstraints::row_weight(2)).unwrap();
        assert!(r.witness_matrix.row_weights().iter().all(|&w| w == 2));
        assert!(extremal_u(2, 4, &SearchConstraints::row_weight(5)).is_err());
    }

    #[test]
    fn bad_dimensions() {
        assert!(extremal_u(3, 3, &none()).is_err());
        assert!(extremal_u(0, 3, &none()).is_err());
        let opts = ExtremalOptions {
            workers: 1,
            max_estimate: 10.0,
        };
        assert!(matches!(
            extremal(Statistic::Stopping, 3, 7, &none(), &opts),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let a = BinaryMatrix::from_strings(&["1100", "0110", "0011"]).unwrap();
        let b = a.permuted(&[2, 0, 1], &[3, 1, 0, 2]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn census_small() {
        let c1 = census_k1(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].matrix, BinaryMatrix::from_strings(&["11"]).unwrap());
        let c2 = census_k1(2).unwrap();
        assert_eq!(c2.len(), 1);
        assert!(c2[0].is_tree);
        let c4 = census_k1(4).unwrap();
        assert_eq!(c4.len(), 3);
        assert!(c4.iter().all(|e| e.is_tree));
    }

    #[test]
    fn tree_detection() {
        assert!(is_tree_incidence(&BinaryMatrix::from_strings(&["110", "011"]).unwrap()));
        assert!(!is_tree_incidence(&BinaryMatrix::from_strings(&["110", "110"]).unwrap()));
        assert!(!is_tree_incidence(&BinaryMatrix::from_strings(&["111", "011"]).unwrap()));
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ExtremalCache::new(dir.path().join("table.tsv"));
        let c = SearchConstraints::row_weight(2);
        assert!(cache.lookup(Statistic::Stopping, 2, 4, &c).unwrap().is_none());
        let r = cache
            .get_or_compute(Statistic::Stopping, 2, 4, &c, &ExtremalOptions::default())
            .unwrap();
        assert_eq!(cache.lookup(Statistic::Stopping, 2, 4, &c).unwrap(), Some(r));
        assert!(cache.lookup(Statistic::Distance, 2, 4, &c).unwrap().is_none());
    }
}
