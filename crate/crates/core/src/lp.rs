//! Stopping distance of standard-form matrices `[I_n | B]` as a linear
//! program over row-type multiplicities.
//!
//! Row types are the vectors `u ∈ {0,1}^k`, indexed by the integer whose
//! `k`-bit binary string is `u` (see [`crate::constructions::type_bit`]).
//! For a nonempty subset `s` of the `k` right-hand columns, exactly the
//! rows with `<u, s> = 1` force an identity column into any 1-free set, so
//! the matrix `M[u][v] = [<u, v> = 1]` turns the problem into
//! `max y` subject to `(M z)_v >= y` for every `v != 0`, `sum z = n`,
//! `z >= 0`.
//!
//! The rational relaxation is solved by certificate: the dual vector
//! `w_u = 1 / C(k-1, |u|-1)` satisfies `wᵀM = k(1 - e_0)` and
//! `<w, 1> = k H_k`, so the optimum is `n / H_k`, attained by
//! `z = n w / (k H_k)`. The integer program is solved exactly by
//! branch-and-bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::standard_form_from_multiplicity;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

pub type Rational = BigRational;

/// Largest `k` for the rational machinery.
pub const MAX_LP_K: usize = 16;
/// Largest `k` for the exact integer program.
pub const MAX_ILP_K: usize = 5;

fn check_k(k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::InvalidArgument(format!("k must be in 1..={max}, got {k}")));
    }
    Ok(())
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a fraction: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().map_err(|_| bad())?, q.parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `H_k = 1 + 1/2 + ... + 1/k`, reduced.
pub fn harmonic(k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("harmonic number needs k >= 1".into()));
    }
    Ok((1..=k as i64).map(|l| rat(1, l)).fold(Rational::zero(), |a, b| a + b))
}

/// Numerator and denominator `(a_k, b_k)` of the reduced `H_k`.
pub fn harmonic_parts(k: usize) -> Result<(BigInt, BigInt)> {
    let h = harmonic(k)?;
    Ok((h.numer().clone(), h.denom().clone()))
}

/// Entries indexed by the `2^k` row types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector<T> {
    k: usize,
    entries: Vec<T>,
}

impl<T> MultiplicityVector<T> {
    pub fn new(k: usize, entries: Vec<T>) -> Result<Self> {
        if k == 0 || k > MAX_LP_K || entries.len() != 1 << k {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for k = {k}",
                1usize << k.min(MAX_LP_K)
            )));
        }
        Ok(Self { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, u: usize) -> &T {
        &self.entries[u]
    }
}

/// `M[u][v] = 1` exactly when the integer inner product of `u` and `v` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerProductMatrix {
    k: usize,
}

impl InnerProductMatrix {
    pub fn new(k: usize) -> Result<Self> {
        check_k(k, MAX_LP_K)?;
        Ok(Self { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        1 << self.k
    }

    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> bool {
        (u & v).count_ones() == 1
    }

    /// Dense `2^k x 2^k` copy, for `k <= 12`.
    pub fn to_matrix(&self) -> Result<BinaryMatrix> {
        if self.k > 12 {
            return Err(Error::InvalidArgument("dense M limited to k <= 12".into()));
        }
        BinaryMatrix::from_fn(self.size(), self.size(), |u, v| self.entry(u, v))
    }

    /// `M z` (M is symmetric, so this is also `zᵀ M`).
    pub fn apply(&self, z: &[Rational]) -> Vec<Rational> {
        (0..self.size())
            .map(|v| {
                (0..self.size())
                    .filter(|&u| self.entry(u, v))
                    .fold(Rational::zero(), |acc, u| acc + &z[u])
            })
            .collect()
    }
}

/// Convenience wrapper for [`InnerProductMatrix::to_matrix`].
pub fn inner_product_matrix(k: usize) -> Result<BinaryMatrix> {
    InnerProductMatrix::new(k)?.to_matrix()
}

/// The dual vector `w_0 = 0`, `w_u = 1 / C(k-1, |u|-1)`.
pub fn dual_certificate(k: usize) -> Result<MultiplicityVector<Rational>> {
    check_k(k, MAX_LP_K)?;
    let entries = (0..1usize << k)
        .map(|u| {
            let w = u.count_ones() as usize;
            if w == 0 {
                Rational::zero()
            } else {
                rat(1, binomial(k - 1, w - 1) as i64)
            }
        })
        .collect();
    MultiplicityVector::new(k, entries)
}

/// Optimal solution of the rational relaxation with both certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpWitness {
    pub n: usize,
    pub k: usize,
    pub value: Rational,
    pub primal: MultiplicityVector<Rational>,
    pub dual: MultiplicityVector<Rational>,
}

impl LpWitness {
    /// Checks primal feasibility with objective `value` on every `v != 0`,
    /// the dual identity `wᵀM = k(1 - e_0)`, and that the dual bound
    /// `n k / <w, 1>` equals `value`.
    pub fn verify(&self) -> bool {
        let Ok(mm) = InnerProductMatrix::new(self.k) else {
            return false;
        };
        let z = self.primal.entries();
        let w = self.dual.entries();
        if z.iter().any(|x| x < &Rational::zero()) {
            return false;
        }
        let total: Rational = z.iter().fold(Rational::zero(), |a, b| a + b);
        if total != Rational::from_integer(self.n.into()) {
            return false;
        }
        let mz = mm.apply(z);
        if mz.iter().skip(1).any(|x| x != &self.value) {
            return false;
        }
        let k = Rational::from_integer(self.k.into());
        let wm = mm.apply(w);
        if !wm[0].is_zero() || wm.iter().skip(1).any(|x| x != &k) {
            return false;
        }
        let wsum: Rational = w.iter().fold(Rational::zero(), |a, b| a + b);
        Rational::from_integer(self.n.into()) * k / wsum == self.value
    }
}

/// Exact optimum `n / H_k` of the relaxation, with primal `n w / (k H_k)`
/// and the dual certificate `w`.
pub fn lp_value(n: usize, k: usize) -> Result<LpWitness> {
    check_k(k, MAX_LP_K)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let h = harmonic(k)?;
    let nn = Rational::from_integer(n.into());
    let value = &nn / &h;
    let dual = dual_certificate(k)?;
    let scale = &nn / (Rational::from_integer(k.into()) * &h);
    let primal = MultiplicityVector::new(k, dual.entries().iter().map(|w| w * &scale).collect())?;
    Ok(LpWitness {
        n,
        k,
        value,
        primal,
        dual,
    })
}

/// Optimal integer program solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpSolution {
    pub n: usize,
    pub k: usize,
    /// `max y`: the smallest forced count `(M z)_v` over `v != 0`.
    pub m: usize,
    /// Optimal multiplicities, indexed by row type; `z[0] = 0`.
    pub z: Vec<usize>,
}

impl IlpSolution {
    pub fn multiplicities(&self) -> MultiplicityVector<usize> {
        MultiplicityVector::new(self.k, self.z.clone()).expect("consistent k")
    }
}

/// `min_{v != 0} (M z)_v` for integer multiplicities.
pub fn forced_minimum(z: &[usize], k: usize) -> usize {
    (1..1usize << k)
        .map(|v| (1..1usize << k).filter(|&u| (u & v).count_ones() == 1).map(|u| z[u]).sum())
        .min()
        .unwrap_or(0)
}

/// Exact integer optimum for `k <= 5`.
///
/// Tries targets `y` from `floor(n / H_k)` down. Feasibility is a
/// depth-first search over the nonzero row types in order of decreasing
/// weight, pruned by the scaled dual bound `sum_v ω_v deficit_v <= k W r`
/// (one unit of any type lowers the weighted deficit by at most `k W`),
/// by `max deficit <= r`, and by coverability of every deficit.
pub fn ilp_value(n: usize, k: usize) -> Result<IlpSolution> {
    check_k(k, MAX_ILP_K)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let (a, b) = harmonic_parts(k)?;
    let hi = (BigInt::from(n) * &b / &a).to_usize().expect("small");
    let size = 1usize << k;
    let scale: u64 = (1..=k).map(|j| binomial(k - 1, j - 1)).fold(1, |l, c| l.lcm(&c));
    let omega: Vec<u64> = (0..size)
        .map(|v| {
            let w = v.count_ones() as usize;
            if w == 0 {
                0
            } else {
                scale / binomial(k - 1, w - 1)
            }
        })
        .collect();
    let mut order: Vec<usize> = (1..size).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(u.count_ones()), u));
    let covers: Vec<Vec<usize>> = (0..size)
        .map(|u| (1..size).filter(|&v| (u & v).count_ones() == 1).collect())
        .collect();
    // suffix_cover[i]: targets v covered by some type in order[i..].
    let mut suffix_cover = vec![vec![false; size]; order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix_cover[i] = suffix_cover[i + 1].clone();
        for &v in &covers[order[i]] {
            suffix_cover[i][v] = true;
        }
    }
    let search = IlpSearch {
        k: k as u64,
        scale,
        omega: &omega,
        order: &order,
        covers: &covers,
        suffix_cover: &suffix_cover,
    };
    for y in (0..=hi).rev() {
        let mut deficit: Vec<i64> = vec![y as i64; size];
        deficit[0] = 0;
        let mut z = vec![0usize; size];
        if search.feasible(0, n, &mut deficit, &mut z) {
            let used: usize = z.iter().sum();
            z[size - 1] += n - used;
            debug_assert!(forced_minimum(&z, k) >= y);
            return Ok(IlpSolution { n, k, m: y, z });
        }
    }
    unreachable!("y = 0 is always feasible")
}

struct IlpSearch<'a> {
    k: u64,
    scale: u64,
    omega: &'a [u64],
    order: &'a [usize],
    covers: &'a [Vec<usize>],
    suffix_cover: &'a [Vec<bool>],
}

impl IlpSearch<'_> {
    fn feasible(&self, idx: usize, budget: usize, deficit: &mut [i64], z: &mut [usize]) -> bool {
        let mut weighted = 0u64;
        let mut worst = 0i64;
        for (v, &d) in deficit.iter().enumerate() {
            if d > 0 {
                if !self.suffix_cover[idx][v] {
                    return false;
                }
                weighted += self.omega[v] * d as u64;
                worst = worst.max(d);
            }
        }
        if worst == 0 {
            return true;
        }
        if idx == self.order.len() || worst as usize > budget || weighted > self.k * self.scale * budget as u64 {
            return false;
        }
        let u = self.order[idx];
        let useful = self.covers[u].iter().map(|&v| deficit[v]).max().unwrap_or(0).max(0) as usize;
        for take in (0..=useful.min(budget)).rev() {
            for &v in &self.covers[u] {
                deficit[v] -= take as i64;
            }
            z[u] = take;
            let ok = self.feasible(idx + 1, budget - take, deficit, z);
            for &v in &self.covers[u] {
                deficit[v] += take as i64;
            }
            if ok {
                return true;
            }
        }
        z[u] = 0;
        false
    }
}

/// Bracket `(m, m + k)` on the best stopping distance of `n x (n + k)`
/// standard-form matrices, with the ILP solution it came from.
pub fn bracket_ui(n: usize, k: usize) -> Result<(usize, usize, IlpSolution)> {
    let sol = ilp_value(n, k)?;
    Ok((sol.m, sol.m + k, sol))
}

/// The standard-form matrix realizing an ILP solution.
pub fn realize(sol: &IlpSolution) -> Result<BinaryMatrix> {
    standard_form_from_multiplicity(&sol.z, sol.k)
}

/// Stopping distance of `[I_n | B]` from the multiplicities alone:
/// `min over nonzero s of |s| + (M z)_s`.
pub fn standard_form_u(z: &[usize], k: usize) -> Result<usize> {
    check_k(k, MAX_LP_K)?;
    if z.len() != 1 << k {
        return Err(Error::InvalidArgument("multiplicity length".into()));
    }
    Ok((1..1usize << k)
        .map(|s| {
            s.count_ones() as usize
                + (1..1usize << k)
                    .filter(|&u| (u & s).count_ones() == 1)
                    .map(|u| z[u])
                    .sum::<usize>()
        })
        .min()
        .expect("k >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::stopping_distance;

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(1).unwrap(), rat(1, 1));
        assert_eq!(harmonic(2).unwrap(), rat(3, 2));
        assert_eq!(harmonic(3).unwrap(), rat(11, 6));
        assert_eq!(harmonic_parts(3).unwrap(), (BigInt::from(11), BigInt::from(6)));
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product_matrix(1).unwrap(), BinaryMatrix::from_strings(&["00", "01"]).unwrap());
        let m = InnerProductMatrix::new(2).unwrap();
        assert!(!m.entry(0b11, 0b11));
        assert!(m.entry(0b11, 0b01));
        let m = InnerProductMatrix::new(4).unwrap();
        assert!((0..16).all(|u| !m.entry(0, u)));
        assert!(InnerProductMatrix::new(0).is_err());
        assert!(InnerProductMatrix::new(17).is_err());
    }

    #[test]
    fn dual_examples() {
        let w = dual_certificate(3).unwrap();
        for u in 1..8usize {
            let expected = match u.count_ones() {
                1 => rat(1, 1),
                2 => rat(1, 2),
                _ => rat(1, 1),
            };
            assert_eq!(w.get(u), &expected);
        }
        let total = w.entries().iter().fold(Rational::zero(), |a, b| a + b);
        assert_eq!(total, rat(11, 2));
        assert_eq!(total, Rational::from_integer(3.into()) * harmonic(3).unwrap());

        let w1 = dual_certificate(1).unwrap();
        assert_eq!(w1.entries(), &[rat(0, 1), rat(1, 1)]);
        let m = InnerProductMatrix::new(1).unwrap();
        assert_eq!(m.apply(w1.entries()), vec![rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn lp_examples() {
        assert_eq!(lp_value(11, 3).unwrap().value, rat(6, 1));
        assert_eq!(lp_value(3, 2).unwrap().value, rat(2, 1));
        assert_eq!(lp_value(4, 2).unwrap().value, rat(8, 3));
        for k in 1..=6 {
            for n in [1, 5, 12] {
                assert!(lp_value(n, k).unwrap().verify(), "n={n} k={k}");
            }
        }
    }

    /// Exhaustive oracle: all integer z with `sum z = n` over the four
    /// k = 2 types.
    fn ilp_oracle_k2(n: usize) -> usize {
        let mut best = 0;
        for z1 in 0..=n {
            for z2 in 0..=n - z1 {
                for z3 in 0..=n - z1 - z2 {
                    let z0 = n - z1 - z2 - z3;
                    best = best.max(forced_minimum(&[z0, z1, z2, z3], 2));
                }
            }
        }
        best
    }

    #[test]
    fn ilp_examples() {
        assert_eq!(ilp_value(3, 2).unwrap().m, 2);
        assert_eq!(ilp_value(11, 3).unwrap().m, 6);
        assert_eq!(ilp_value(4, 2).unwrap().m, 2);
        assert_eq!(ilp_value(4, 2).unwrap().m, ilp_oracle_k2(4));
        assert!(ilp_value(3, 6).is_err());
    }

    #[test]
    fn ilp_matches_exhaustive_for_k2() {
        for n in 1..=12 {
            let sol = ilp_value(n, 2).unwrap();
            assert_eq!(sol.m, ilp_oracle_k2(n), "n = {n}");
            assert_eq!(sol.z.iter().sum::<usize>(), n);
            assert_eq!(sol.z[0], 0);
            assert!(forced_minimum(&sol.z, 2) >= sol.m);
        }
    }

    #[test]
    fn ilp_respects_both_bounds() {
        for k in 1..=4 {
            let (a, b) = harmonic_parts(k).unwrap();
            for n in 1..=14 {
                let m = ilp_value(n, k).unwrap().m;
                let lo = (BigInt::from(n) / &a * &b).to_usize().unwrap();
                let hi = (BigInt::from(n) * &b / &a).to_usize().unwrap();
                assert!(lo <= m && m <= hi, "n={n} k={k}: {lo} <= {m} <= {hi}");
            }
        }
    }

    #[test]
    fn divisible_cases_meet_the_lp() {
        for (k, a, b) in [(2, 3, 2), (3, 11, 6)] {
            for p in 1..=3 {
                assert_eq!(ilp_value(p * a, k).unwrap().m, p * b);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_ui(3, 2).unwrap().0..=bracket_ui(3, 2).unwrap().1, 2..=4);
        let (lo, hi, _) = bracket_ui(11, 3).unwrap();
        assert_eq!((lo, hi), (6, 9));
        let (lo, hi, sol) = bracket_ui(1, 1).unwrap();
        assert_eq!((lo, hi), (1, 2));
        let u = stopping_distance(&realize(&sol).unwrap()).value.unwrap();
        assert!((lo..=hi).contains(&u));
    }

    #[test]
    fn closed_form_standard_u_matches_solver() {
        for n in 1..=7 {
            for k in 1..=3 {
                let sol = ilp_value(n, k).unwrap();
                let a = realize(&sol).unwrap();
                let u = stopping_distance(&a).value.unwrap();
                assert_eq!(u, standard_form_u(&sol.z, k).unwrap());
                assert!(sol.m <= u && u <= sol.m + k);
            }
        }
    }

    #[test]
    fn binomial_hockey_stick() {
        for n in 1..=20 {
            for s in 1..=n {
                let lhs: u64 = (s..=n).map(|r| binomial(r, s)).sum();
                assert_eq!(lhs, binomial(n + 1, s + 1));
            }
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(6, 1)), "6/1");
        assert_eq!(format_rational(&rat(16, 6)), "8/3");
        assert_eq!(parse_rational("8/3").unwrap(), rat(8, 3));
        assert_eq!(parse_rational("4").unwrap(), rat(4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
