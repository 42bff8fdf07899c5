//! Building a JSON run report and reading it back.
//!
//! ```text
//! cargo run --example json_report
//! ```

use stopdist::lp::lp_value;
use stopdist::report::{digest, LpRecord, ReportItem, RunReport};
use stopdist::verify::run_suite;
use stopdist::{stopping_distance, BinaryMatrix};

fn main() {
    let a = BinaryMatrix::from_strings(&["10001100", "01000110", "00100011", "00011001"]).unwrap();
    let mut report = RunReport::new(vec!["example".into(), "json_report".into()]);
    report.input_digest = Some(digest(a.to_text().as_bytes()));
    report.results.push(ReportItem::Certificate {
        certificate: stopping_distance(&a),
        matrix: a,
    });
    report.results.push(ReportItem::Lp(LpRecord::from(&lp_value(3, 2).unwrap())));
    report.checks = run_suite("dense").unwrap();

    let text = report.to_json();
    println!("{text}");
    let back = RunReport::from_json(&text).unwrap();
    assert_eq!(back, report);
    eprintln!("round trip ok, all checks passed: {}", back.all_passed());
}
