//! Data-driven verification suites.
//!
//! The bundled `data/expectations.json` lists every checked value with the
//! claim it supports. Each entry names a suite (`paper-small`, `lp`,
//! `dense`, `census`) and a check; [`run_suite`] evaluates the checks and
//! reports pass/fail per entry.

use serde::{Deserialize, Serialize};

use crate::bounds::{closed_form_u, eps_upper, parity_bound};
use crate::constructions::{build_uk, build_ukm, circulant, extend_with_identity};
use crate::dense::{expected_size_rate, run_trials};
use crate::error::{Error, Result};
use crate::extremal::{census_k1, extremal_eps, extremal_u, SearchConstraints};
use crate::lp::{
    bracket_ui, dual_certificate, forced_minimum, format_rational, ilp_value, lp_value, realize, InnerProductMatrix,
    Rational,
};
use crate::matrix::BinaryMatrix;
use crate::report::CheckOutcome;
use crate::solver::{min_distance, stopping_distance};

const EXPECTATIONS: &str = include_str!("../data/expectations.json");

pub const SUITES: [&str; 4] = ["paper-small", "lp", "dense", "census"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub suite: String,
    pub id: String,
    pub claim: String,
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Check {
    ExtremalU {
        rows: usize,
        cols: usize,
        #[serde(default)]
        row_weight: Option<usize>,
        expect: usize,
    },
    ExtremalEps {
        rows: usize,
        cols: usize,
        expect: usize,
    },
    Stop {
        matrix: String,
        expect: usize,
    },
    Dist {
        matrix: String,
        expect: usize,
    },
    UkU {
        k: usize,
        expect: usize,
    },
    UkEps {
        k: usize,
        expect: usize,
    },
    UkmU {
        k: usize,
        m: usize,
        expect: usize,
    },
    Parity {
        rows: usize,
        cols: usize,
        expect: usize,
    },
    EpsUpper {
        rows: usize,
        cols: usize,
        expect: usize,
    },
    ExtendU {
        k: usize,
        m: usize,
        expect: usize,
    },
    PadU {
        k: usize,
        pads: usize,
        expect: usize,
    },
    ClosedFormMatchesExtremal {
        rows: usize,
        cols: usize,
    },
    CirculantU {
        n: usize,
        c: usize,
        expect: usize,
    },
    DualIdentity {
        k: usize,
    },
    LpValue {
        n: usize,
        k: usize,
        expect: String,
    },
    IlpValue {
        n: usize,
        k: usize,
        expect: usize,
    },
    IlpBracket {
        n: usize,
        k: usize,
        lower: usize,
        upper: usize,
    },
    IlpOracle {
        k: usize,
        max_n: usize,
    },
    RealizedInBracket {
        n: usize,
        k: usize,
    },
    DenseMean {
        n: usize,
        c: usize,
        rho: f64,
        seeds: usize,
        max_fraction: f64,
    },
    RateBelow {
        c: usize,
        rho: f64,
        max: f64,
    },
    Census {
        n: usize,
        classes: usize,
    },
}

pub fn expectations() -> Vec<Expectation> {
    serde_json::from_str(EXPECTATIONS).expect("bundled expectations parse")
}

fn stop(a: &BinaryMatrix) -> usize {
    stopping_distance(a).value.unwrap_or(usize::MAX)
}

fn dist(a: &BinaryMatrix) -> usize {
    min_distance(a).value.unwrap_or(usize::MAX)
}

fn equal(got: usize, expect: usize) -> (bool, String) {
    (got == expect, format!("got {got}, expected {expect}"))
}

/// Best `min_v (M z)_v` over all multiplicity vectors with `z_0 = 0`
/// summing to `n`, by listing every composition.
fn ilp_brute_force(n: usize, k: usize) -> usize {
    fn go(z: &mut Vec<usize>, left: usize, k: usize, best: &mut usize) {
        let size = 1 << k;
        if z.len() == size - 1 {
            z.push(left);
            *best = (*best).max(forced_minimum(z, k));
            z.pop();
            return;
        }
        for x in 0..=left {
            z.push(x);
            go(z, left - x, k, best);
            z.pop();
        }
    }
    let mut best = 0;
    go(&mut vec![0], n, k, &mut best);
    best
}

impl Check {
    /// `(passed, detail)`.
    pub fn evaluate(&self) -> Result<(bool, String)> {
        Ok(match *self {
            Check::ExtremalU {
                rows,
                cols,
                row_weight,
                expect,
            } => {
                let c = SearchConstraints {
                    exact_row_weight: row_weight,
                    ..SearchConstraints::default()
                };
                let r = extremal_u(rows, cols, &c)?;
                let (ok, d) = equal(r.value, expect);
                (ok && stop(&r.witness_matrix) == r.value, d)
            }
            Check::ExtremalEps { rows, cols, expect } => {
                let r = extremal_eps(rows, cols, &SearchConstraints::default())?;
                let (ok, d) = equal(r.value, expect);
                (ok && dist(&r.witness_matrix) == r.value, d)
            }
            Check::Stop { ref matrix, expect } => equal(stop(&BinaryMatrix::from_compact(matrix)?), expect),
            Check::Dist { ref matrix, expect } => equal(dist(&BinaryMatrix::from_compact(matrix)?), expect),
            Check::UkU { k, expect } => equal(stop(&build_uk(k)?), expect),
            Check::UkEps { k, expect } => equal(dist(&build_uk(k)?), expect),
            Check::UkmU { k, m, expect } => equal(stop(&build_ukm(k, m)?), expect),
            Check::Parity { rows, cols, expect } => equal(parity_bound(rows, cols)?, expect),
            Check::EpsUpper { rows, cols, expect } => equal(eps_upper(rows, cols)?, expect),
            Check::ExtendU { k, m, expect } => equal(stop(&extend_with_identity(&build_ukm(k, m)?, k)?), expect),
            Check::PadU { k, pads, expect } => {
                let mut a = build_uk(k)?;
                for _ in 0..pads {
                    a = a.pad();
                }
                equal(stop(&a), expect)
            }
            Check::ClosedFormMatchesExtremal { rows, cols } => {
                let got = extremal_u(rows, cols, &SearchConstraints::default())?.value;
                equal(got, closed_form_u(rows, cols)?)
            }
            Check::CirculantU { n, c, expect } => equal(stop(&circulant(n, c)?), expect),
            Check::DualIdentity { k } => {
                let w = dual_certificate(k)?;
                let wm = InnerProductMatrix::new(k)?.apply(w.entries());
                let kk = Rational::from_integer(k.into());
                let ok = wm[0] == Rational::from_integer(0.into()) && wm[1..].iter().all(|x| *x == kk);
                (ok, format!("wᵀM has {} entries", wm.len()))
            }
            Check::LpValue { n, k, ref expect } => {
                let w = lp_value(n, k)?;
                let got = format_rational(&w.value);
                (got == *expect && w.verify(), format!("got {got}, expected {expect}"))
            }
            Check::IlpValue { n, k, expect } => equal(ilp_value(n, k)?.m, expect),
            Check::IlpBracket { n, k, lower, upper } => {
                let (lo, hi, _) = bracket_ui(n, k)?;
                ((lo, hi) == (lower, upper), format!("got ({lo},{hi}), expected ({lower},{upper})"))
            }
            Check::IlpOracle { k, max_n } => {
                let bad: Vec<usize> = (1..=max_n)
                    .filter(|&n| ilp_value(n, k).map(|s| s.m).ok() != Some(ilp_brute_force(n, k)))
                    .collect();
                (bad.is_empty(), format!("mismatches at n in {bad:?}"))
            }
            Check::RealizedInBracket { n, k } => {
                let (lo, hi, sol) = bracket_ui(n, k)?;
                let u = stop(&realize(&sol)?);
                (lo <= u && u <= hi, format!("u = {u}, bracket ({lo},{hi})"))
            }
            Check::DenseMean {
                n,
                c,
                rho,
                seeds,
                max_fraction,
            } => {
                let a = circulant(n, c)?;
                let outs = run_trials(&a, rho, 0, seeds)?;
                let valid = outs.iter().all(|o| a.is_all_ge2(&o.selected).unwrap_or(false));
                let mean = outs.iter().map(|o| o.fraction(n)).sum::<f64>() / seeds as f64;
                (
                    valid && mean <= max_fraction,
                    format!("mean fraction {mean:.4}, all rows covered twice: {valid}"),
                )
            }
            Check::RateBelow { c, rho, max } => {
                let r = expected_size_rate(c, rho)?;
                (r < max, format!("rate {r:.6}"))
            }
            Check::Census { n, classes } => {
                let entries = census_k1(n)?;
                let trees = entries.iter().filter(|e| e.is_tree).count();
                (
                    entries.len() == classes && trees == classes,
                    format!("{} classes, {trees} trees, expected {classes}", entries.len()),
                )
            }
        })
    }
}

/// Runs every expectation of `suite`, in file order.
pub fn run_suite(suite: &str) -> Result<Vec<CheckOutcome>> {
    if !SUITES.contains(&suite) {
        return Err(Error::InvalidArgument(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    Ok(expectations()
        .into_iter()
        .filter(|e| e.suite == suite)
        .map(|e| {
            let (passed, detail) = match e.check.evaluate() {
                Ok(r) => r,
                Err(err) => (false, format!("error: {err}")),
            };
            CheckOutcome {
                suite: e.suite,
                id: e.id,
                claim: e.claim,
                passed,
                detail,
            }
        })
        .collect())
}
