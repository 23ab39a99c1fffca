//! The element expression language: parsing, canonical rendering and errors.

use cyclotwist::{parse_element, parse_element_with, render_element};

fn main() {
    for src in [
        "c(3)^2",
        "zeta(3) + zeta(3)^-1",
        "1/2*(1 + zeta(2))",
        "(1 + zeta(2))^-1",
        "-2^2",
        "c(4)^2 - c(3)",
        "zeta(5)^16",
    ] {
        let x = parse_element(src).unwrap();
        let text = render_element(&x);
        assert_eq!(parse_element(&text).unwrap(), x);
        println!("{src:24} => {text}");
    }
    for src in ["1 +", "zeta(0)", "1/(c(3)^2 - 2)", "2 3"] {
        println!("{src:24} => error: {}", parse_element(src).unwrap_err());
    }
    println!(
        "{:24} => error: {}",
        "zeta(20) (max level 16)",
        parse_element_with("zeta(20)", 16).unwrap_err()
    );
}
