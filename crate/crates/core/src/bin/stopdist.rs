use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stopdist::bounds::{closed_form_u, eps_upper, griesmer_min_length, parity_bound};
use stopdist::constructions::{
    build_uk, build_ukm, circulant, extend_with_identity, standard_form_from_multiplicity, tree_incidence, Tree,
};
use stopdist::dense::run_trials;
use stopdist::extremal::{census_k1, extremal, ExtremalCache, ExtremalOptions, SearchConstraints};
use stopdist::lp::{bracket_ui, format_rational, lp_value, realize};
use stopdist::report::{digest, LpRecord, ReportItem, RunReport};
use stopdist::verify::run_suite;
use stopdist::{min_distance, peel, stopping_distance, BinaryMatrix, ColumnSet, Error, Statistic};

#[derive(Parser)]
#[command(name = "stopdist", version, about = "Stopping distance and minimum distance of binary matrices")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stopping distance u(A) with a witness.
    Stop {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Minimum distance ε(A) with a witness.
    Dist { file: PathBuf },
    /// Run the peeling decoder on an erasure pattern.
    Peel {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        erased: Vec<usize>,
    },
    /// Build a matrix and write it in text format.
    Construct {
        #[command(subcommand)]
        kind: Construct,
        /// Output file; stdout if omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Closed-form bounds.
    Bound {
        #[command(subcommand)]
        kind: Bound,
    },
    /// Standard-form linear program, optionally with the integer optimum.
    Lp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ilp: bool,
    },
    /// Sample-and-repair search for a set with all row sums at least 2.
    Greedy {
        file: PathBuf,
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Exhaustive maximum of u or ε over all matrices of a shape.
    Extremal {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_enum, default_value_t = Stat::U)]
        stat: Stat,
        #[arg(long)]
        row_weight: Option<usize>,
        #[arg(long)]
        distinct_columns: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Append-only result table to consult and extend.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// All n x (n+1) matrices with u = n + 1, up to permutation.
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Run a bundled check suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum Construct {
    Uk {
        #[arg(long)]
        k: usize,
    },
    Ukm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
    },
    Tree(TreeArgs),
    /// `[I_n | B]` from row-type multiplicities `z_0,...,z_{2^k-1}`.
    Standard {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        counts: Vec<usize>,
    },
    Pad {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    Extend {
        file: PathBuf,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TreeArgs {
    #[arg(long, value_delimiter = ',')]
    prufer: Option<Vec<usize>>,
    #[arg(long)]
    path: Option<usize>,
    #[arg(long)]
    star: Option<usize>,
}

#[derive(Subcommand)]
enum Bound {
    Parity {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    Griesmer {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        dim: usize,
    },
    EpsUpper {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    ClosedForm {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    U,
    Eps,
}

enum Failure {
    Input(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_matrix(path: &Path, report: &mut RunReport) -> Result<BinaryMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    report.input_digest = Some(digest(text.as_bytes()));
    text.parse()
        .map_err(|e: Error| Failure::Input(format!("{}: {e}", path.display())))
}

fn show_set(s: &Option<ColumnSet>) -> String {
    s.as_ref().map_or("none".to_string(), |s| s.to_string())
}

fn run(cli: Cli, report: &mut RunReport, out: &mut String) -> Result<(), Failure> {
    use std::fmt::Write;
    match cli.command {
        Command::Stop { file, workers } => {
            let a = read_matrix(&file, report)?;
            let c = stopdist::solver::stopping_distance_with(&a, workers);
            let value = c.value.map_or("NONE".to_string(), |v| v.to_string());
            writeln!(out, "u = {value}\nwitness = {}", show_set(&c.witness)).ok();
            report.results.push(ReportItem::Certificate { matrix: a, certificate: c });
        }
        Command::Dist { file } => {
            let a = read_matrix(&file, report)?;
            let c = min_distance(&a);
            let value = c.value.map_or("NONE".to_string(), |v| v.to_string());
            writeln!(out, "eps = {value}\nwitness = {}", show_set(&c.witness)).ok();
            report.results.push(ReportItem::Certificate { matrix: a, certificate: c });
        }
        Command::Peel { file, erased } => {
            let a = read_matrix(&file, report)?;
            let erased = ColumnSet::new(erased);
            let r = peel(&a, &erased)?;
            for (j, i) in &r.resolved {
                writeln!(out, "column {j} resolved by row {i}").ok();
            }
            writeln!(out, "residual = {}", r.residual).ok();
            report.results.push(ReportItem::Peel {
                matrix: a,
                erased,
                result: r,
            });
        }
        Command::Construct { kind, output } => {
            let (label, a) = match kind {
                Construct::Uk { k } => (format!("U_{k}"), build_uk(k)?),
                Construct::Ukm { k, m } => (format!("U_{{{k},{m}}}"), build_ukm(k, m)?),
                Construct::Circulant { n, c } => (format!("circulant({n},{c})"), circulant(n, c)?),
                Construct::Tree(t) => {
                    let tree = match (t.prufer, t.path, t.star) {
                        (Some(seq), _, _) => Tree::from_prufer(&seq)?,
                        (_, Some(v), _) => Tree::path(v)?,
                        (_, _, Some(v)) => Tree::star(v)?,
                        _ => unreachable!("clap group requires one"),
                    };
                    ("tree".to_string(), tree_incidence(&tree)?)
                }
                Construct::Standard { k, counts } => ("standard".to_string(), standard_form_from_multiplicity(&counts, k)?),
                Construct::Pad { file, times } => {
                    let mut a = read_matrix(&file, report)?;
                    for _ in 0..times {
                        a = a.pad();
                    }
                    (format!("pad^{times}"), a)
                }
                Construct::Extend { file, j } => {
                    let a = read_matrix(&file, report)?;
                    (format!("extend({j})"), extend_with_identity(&a, j)?)
                }
            };
            match output {
                Some(path) => {
                    std::fs::write(&path, a.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    writeln!(out, "wrote {label} ({}x{}) to {}", a.rows(), a.cols(), path.display()).ok();
                }
                None => out.push_str(&a.to_text()),
            }
            report.results.push(ReportItem::Matrix { label, matrix: a });
        }
        Command::Bound { kind } => {
            let (name, args, value) = match kind {
                Bound::Parity { rows, cols } => ("parity", vec![rows, cols], parity_bound(rows, cols)?),
                Bound::Griesmer { d, dim } => ("griesmer", vec![d, dim], griesmer_min_length(d, dim)),
                Bound::EpsUpper { rows, cols } => ("eps-upper", vec![rows, cols], eps_upper(rows, cols)?),
                Bound::ClosedForm { rows, cols } => ("closed-form", vec![rows, cols], closed_form_u(rows, cols)?),
            };
            writeln!(out, "{name}({}) = {value}", args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")).ok();
            report.results.push(ReportItem::Bound {
                name: name.to_string(),
                args,
                value,
            });
        }
        Command::Lp { n, k, ilp } => {
            let w = lp_value(n, k)?;
            writeln!(out, "lp value = {}", format_rational(&w.value)).ok();
            report.results.push(ReportItem::Lp(LpRecord::from(&w)));
            if ilp {
                let (lower, upper, solution) = bracket_ui(n, k)?;
                let matrix = realize(&solution)?;
                let realized_u = stopping_distance(&matrix).value;
                writeln!(out, "ilp value = {}\nbracket = ({lower},{upper})", solution.m).ok();
                writeln!(out, "multiplicities = {:?}", solution.z).ok();
                if let Some(u) = realized_u {
                    writeln!(out, "realized u = {u}").ok();
                }
                report.results.push(ReportItem::Ilp {
                    solution,
                    lower,
                    upper,
                    realized: Some(matrix),
                    realized_u,
                });
            }
        }
        Command::Greedy { file, rho, seed, trials } => {
            let a = read_matrix(&file, report)?;
            let outs = run_trials(&a, rho, seed, trials)?;
            for o in outs {
                writeln!(
                    out,
                    "seed {}: {} columns ({:.4}), sampled {}, repaired {}",
                    o.seed,
                    o.selected.len(),
                    o.fraction(a.cols()),
                    o.sampled_count,
                    o.repaired_count
                )
                .ok();
                report.results.push(ReportItem::Greedy(o));
            }
        }
        Command::Extremal {
            rows,
            cols,
            stat,
            row_weight,
            distinct_columns,
            workers,
            cache,
        } => {
            let statistic = match stat {
                Stat::U => Statistic::Stopping,
                Stat::Eps => Statistic::Distance,
            };
            let constraints = SearchConstraints {
                exact_row_weight: row_weight,
                distinct_columns,
                ..SearchConstraints::default()
            };
            let opts = ExtremalOptions {
                workers,
                ..ExtremalOptions::default()
            };
            let r = match cache {
                Some(path) => ExtremalCache::new(path).get_or_compute(statistic, rows, cols, &constraints, &opts)?,
                None => extremal(statistic, rows, cols, &constraints, &opts)?,
            };
            let name = match stat {
                Stat::U => "u",
                Stat::Eps => "eps",
            };
            writeln!(out, "{name}({rows},{cols}) = {} [{}]", r.value, constraints.key()).ok();
            writeln!(out, "candidates examined = {}\nwitness:", r.candidates_examined).ok();
            out.push_str(&r.witness_matrix.to_text());
            report.results.push(ReportItem::Extremal(r));
        }
        Command::Census { n } => {
            let entries = census_k1(n)?;
            for e in &entries {
                writeln!(out, "{} tree={}", e.matrix.to_compact(), e.is_tree).ok();
            }
            report.results.push(ReportItem::Census { n, entries });
        }
        Command::Verify { suite } => {
            let checks = run_suite(&suite)?;
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {} ({}): {}", c.id, c.claim, c.detail).ok();
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {failed} failed", checks.len()).ok();
            report.checks = checks;
            if failed > 0 {
                return Err(Failure::Suite);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, timing) = (cli.json, cli.timing);
    let mut report = RunReport::new(std::env::args().skip(1).collect());
    let mut out = String::new();
    let start = Instant::now();
    let result = run(cli, &mut report, &mut out);
    if timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    if let Err(Failure::Input(msg)) = &result {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{out}");
        if let Some(ms) = report.wall_time_ms {
            println!("wall time: {ms} ms");
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(_) => ExitCode::from(1),
    }
}
