//! Minimal idempotents of K[g]/(g^(2^n) - a) and their verification report.
//!
//! Usage: cargo run --example idempotents [-- <real|full> <n> <a>]

use cyclotwist::expr::render_list;
use cyclotwist::{idempotents, parse_element, AlgebraSpec, Tower};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (field, n, src) = match args.as_slice() {
        [f, n, a] => (f.clone(), n.parse().expect("integer n"), a.clone()),
        _ => ("real".to_string(), 3u32, "16".to_string()),
    };
    let tower = if field == "full" {
        Tower::full()
    } else {
        Tower::real()
    };
    let spec = AlgebraSpec::new(n, parse_element(&src).unwrap(), tower).unwrap();
    let set = idempotents(&spec).unwrap();
    println!(
        "{field} tower, n = {n}, a = {src}: case {}, s = {}",
        set.case, set.height.s
    );
    for (label, e) in &set.members {
        println!("  {label}: [{}]", render_list(e.coeffs()).join(", "));
    }
    let report = cyclotwist::verify_system(&set);
    println!("component dimensions {:?}", report.dimensions);
    println!("factor degrees       {:?}", report.factor_degrees);
    println!("all checks passed: {}", report.all_passed());
}
