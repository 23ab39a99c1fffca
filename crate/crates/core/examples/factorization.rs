//! Irreducible factorizations of x^(2^n) - a, with their case and a check
//! that the factors multiply back to the binomial.
//!
//! Usage: cargo run --example factorization [-- <real|full> <n> <a>]

use cyclotwist::{expand_product, factorize, parse_element, Poly, Tower};

fn show(field: &str, n: u32, src: &str) {
    let tower = if field == "full" {
        Tower::full()
    } else {
        Tower::real()
    };
    let a = parse_element(src).expect("valid element");
    let f = match factorize(n, &a, &tower) {
        Ok(f) => f,
        Err(e) => {
            println!("x^{} - ({src}) over {field}: {e}", 1u32 << n);
            return;
        }
    };
    println!(
        "x^{} - ({src}) over {field}: case {}, s = {}, b = {}",
        1u32 << n,
        f.case,
        f.height.s,
        f.height.witness
    );
    for p in &f.factors {
        println!("    {p:?}");
    }
    let ok = expand_product(&f.factors) == Poly::binomial(1 << n, &a);
    println!("    product check: {ok}");
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [field, n, a] = args.as_slice() {
        show(field, n.parse().expect("integer n"), a);
        return;
    }
    show("real", 2, "-4");
    show("real", 2, "4");
    show("real", 3, "3");
    show("real", 3, "-16");
    show("full", 2, "zeta(3)");
    show("full", 3, "2");
}
