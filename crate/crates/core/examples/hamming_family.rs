//! The U_k family and its relatives against the closed-form bounds.
//!
//! ```text
//! cargo run --example hamming_family
//! ```

use stopdist::bounds::{closed_form_u, eps_upper, parity_bound};
use stopdist::constructions::{build_uk, build_uk_recursive, build_ukm, circulant, extend_with_identity, split_tk_rk};
use stopdist::{min_distance, stopping_distance, BinaryMatrix};

fn stats(a: &BinaryMatrix) -> (usize, usize) {
    (stopping_distance(a).value.unwrap(), min_distance(a).value.unwrap())
}

fn main() {
    println!("{:<22} {:>7} {:>4} {:>4} {:>7} {:>9}", "matrix", "shape", "u", "eps", "parity", "eps_upper");
    let row = |name: String, a: &BinaryMatrix| {
        let (u, e) = stats(a);
        let (m, n) = (a.rows(), a.cols());
        let shape = format!("{m}x{n}");
        let show = |b: stopdist::Result<usize>| b.map_or("-".to_string(), |v| v.to_string());
        println!(
            "{name:<22} {shape:>7} {u:>4} {e:>4} {:>7} {:>9}",
            show(parity_bound(m, n)),
            show(eps_upper(m, n))
        );
    };
    for k in 2..=4 {
        let a = build_uk(k).unwrap();
        assert_eq!(a, build_uk_recursive(k).unwrap());
        row(format!("U_{k}"), &a);
    }
    for (k, m) in [(2, 2), (2, 3), (3, 2)] {
        row(format!("U_{{{k},{m}}}"), &build_ukm(k, m).unwrap());
    }
    for m in 1..=3 {
        let a = extend_with_identity(&build_ukm(2, m).unwrap(), 2).unwrap();
        let want = closed_form_u(a.rows(), a.cols()).unwrap();
        row(format!("U_{{2,{m}}} + I_2 (cf {want})"), &a);
    }
    row("pad^2(U_3)".into(), &build_uk(3).unwrap().pad().pad());
    for n in [8, 12] {
        row(format!("circulant({n},4)"), &circulant(n, 4).unwrap());
    }

    let (t, r) = split_tk_rk(3).unwrap();
    println!("\nU_3 splits into T_3 (non-power-of-two columns) and R_3 (power-of-two columns):");
    print!("T_3:\n{}R_3:\n{}", t.to_text(), r.to_text());
}
