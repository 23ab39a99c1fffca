//! Exact arithmetic in Q(zeta_{2^k}): products, inverses, conjugation and the
//! quadratic norm down to the real subfield.

use cyclotwist::{CycloElem, FieldSpec};

fn main() {
    let z8 = CycloElem::zeta(3);
    let sqrt2 = CycloElem::cosgen(3);
    println!("zeta(3)^4           = {}", z8.pow(4).unwrap());
    println!("c(3)^2              = {}", &sqrt2 * &sqrt2);
    println!(
        "zeta(4)^2           = {}",
        CycloElem::zeta(4).pow(2).unwrap()
    );

    let x = &CycloElem::one() + &CycloElem::zeta(2);
    let inv = x.invert().unwrap();
    println!("(1 + i)^-1          = {inv}");
    println!("(1 + i) (1 + i)^-1  = {}", &x * &inv);

    println!("conj(1 + i)         = {}", x.conj());
    println!("norm2(1 + i)        = {}", x.norm2());
    for (name, y) in [("1 + i", &x), ("c(3)", &sqrt2)] {
        println!(
            "{name:6} real member: {}, full member: {}",
            FieldSpec::RealTower.is_member(y),
            FieldSpec::FullTower.is_member(y)
        );
    }

    let w = (&z8 + &sqrt2).to_complex();
    println!("zeta(3) + c(3)      ~ {:.6} + {:.6}i", w.re, w.im);
}
