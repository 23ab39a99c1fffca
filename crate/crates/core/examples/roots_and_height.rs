//! Square roots, 2-power roots and the 2-height of elements in both towers.

use cyclotwist::{height, parse_element, pow2_root, sqrt_in_tower, Tower};

fn main() {
    let real = Tower::real();
    let full = Tower::full();

    for src in ["2", "-1", "3", "2 + c(3)", "-4"] {
        let a = parse_element(src).unwrap();
        let show =
            |r: Option<cyclotwist::CycloElem>| r.map_or("none".to_string(), |b| b.to_string());
        println!(
            "sqrt({src}): real {}, full {}",
            show(sqrt_in_tower(&a, &real).unwrap()),
            show(sqrt_in_tower(&a, &full).unwrap())
        );
    }

    let four = parse_element("4").unwrap();
    for s in 1..=3 {
        let r = pow2_root(&four, s, &real).unwrap();
        println!(
            "2^{s}-th root of 4 in the real tower: {:?}",
            r.map(|b| b.to_string())
        );
    }

    println!();
    println!(
        "{:>10} {:>3} {:>5} {:>7}  witness",
        "a", "n", "field", "height"
    );
    for (src, n) in [("4", 3), ("-4", 2), ("-1", 5), ("16", 4), ("3", 2)] {
        let a = parse_element(src).unwrap();
        for tower in [real, full] {
            let h = height(&a, n, &tower).unwrap();
            println!(
                "{src:>10} {n:>3} {:>5} {:>3} {:<6} {}",
                tower.field, h.s, h.kind, h.witness
            );
        }
    }
}
