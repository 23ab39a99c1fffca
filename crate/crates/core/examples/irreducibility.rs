//! Irreducibility decisions for binomials and quadratics over the towers.

use cyclotwist::{irreducibility_witness, parse_element, Irreducibility, Poly, Tower};

fn poly(coeffs: &[&str]) -> Poly {
    Poly::new(coeffs.iter().map(|c| parse_element(c).unwrap()).collect())
}

fn main() {
    let cases: [(&str, &[&str]); 7] = [
        ("x^2 - 2", &["-2", "0", "1"]),
        ("x^2 + 1", &["1", "0", "1"]),
        ("x^4 - 3", &["-3", "0", "0", "0", "1"]),
        ("x^4 + 4", &["4", "0", "0", "0", "1"]),
        ("x^4 + 2", &["2", "0", "0", "0", "1"]),
        ("x^2 - 2x + 2", &["2", "-2", "1"]),
        ("x^4 - 2x^2 + 2", &["2", "0", "-2", "0", "1"]),
    ];
    for (name, coeffs) in cases {
        let p = poly(coeffs);
        for tower in [Tower::real(), Tower::full()] {
            let verdict = match irreducibility_witness(&p, &tower) {
                Ok(Irreducibility::Irreducible) => "irreducible".to_string(),
                Ok(Irreducibility::Reducible { witness }) => {
                    format!("reducible, witness {witness}")
                }
                Err(e) => format!("not decided: {e}"),
            };
            println!("{name:16} over {:4}: {verdict}", tower.field);
        }
    }
}
