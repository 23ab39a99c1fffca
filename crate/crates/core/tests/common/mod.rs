#![allow(dead_code)]

use cyclotwist::tower::{degree_of_level, rat, ratio};
use cyclotwist::{parse_element, CycloElem, Rational, Tower};
use num_complex::Complex64;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;
use serde_json::Value;

pub const REAL_CORPUS: &[&str] = &[
    "1", "-1", "2", "-2", "3", "-3", "4", "-4", "16", "-16", "64", "-64", "2*c(3)", "-c(3)^4",
];

pub const FULL_ONLY_CORPUS: &[&str] = &["zeta(3)", "2*zeta(2)"];

pub struct Instance {
    pub tower: Tower,
    pub n: u32,
    pub label: String,
    pub a: CycloElem,
}

/// Both towers, `n` in 1..=5, and every corpus value that is a member.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for tower in [Tower::real(), Tower::full()] {
        for n in 1..=5 {
            for src in REAL_CORPUS.iter().chain(FULL_ONLY_CORPUS) {
                let a = parse_element(src).unwrap();
                if tower.is_member(&a) {
                    out.push(Instance {
                        tower,
                        n,
                        label: src.to_string(),
                        a,
                    });
                }
            }
        }
    }
    out
}

pub fn describe(inst: &Instance) -> String {
    format!("{} n={} a={}", inst.tower.field, inst.n, inst.label)
}

/// Dense element at a random level `<= max_level` with integer coefficients in `[-3, 3]`.
pub fn random_full(rng: &mut StdRng, max_level: u32) -> CycloElem {
    let k = rng.gen_range(1..=max_level);
    let coeffs = (0..degree_of_level(k))
        .map(|_| rat(rng.gen_range(-3..=3)))
        .collect();
    CycloElem::from_coeffs(k, coeffs).unwrap()
}

pub fn random_nonzero_full(rng: &mut StdRng, max_level: u32) -> CycloElem {
    loop {
        let x = random_full(rng, max_level);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random conj-fixed element.
pub fn random_real(rng: &mut StdRng, max_level: u32) -> CycloElem {
    let x = random_full(rng, max_level);
    let r = &x + &x.conj();
    if rng.gen_bool(0.3) {
        let y = random_full(rng, max_level);
        &r * &(&y + &y.conj())
    } else {
        r
    }
}

pub fn random_nonzero_real(rng: &mut StdRng, max_level: u32) -> CycloElem {
    loop {
        let x = random_real(rng, max_level);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Sample points on the unit circle that avoid low-order roots of unity.
pub fn unit_circle_samples(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|t| {
            let theta = 2.0 * std::f64::consts::PI * (t as f64 + 1.0 / 3.0) / count as f64;
            Complex64::from_polar(1.0, theta)
        })
        .collect()
}

/// Rank over `Q` of a rational matrix.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let prow: Vec<Rational> = rows[rank].iter().map(|x| x / &pivot).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

pub fn half() -> Rational {
    ratio(1, 2)
}

fn expect_string(v: &Value, key: &str) -> Result<(), String> {
    match v.get(key) {
        Some(Value::String(_)) => Ok(()),
        other => Err(format!("{key}: expected string, got {other:?}")),
    }
}

fn expect_string_list(v: &Value, what: &str) -> Result<(), String> {
    let list = v.as_array().ok_or(format!("{what}: expected array"))?;
    if list.iter().all(Value::is_string) {
        Ok(())
    } else {
        Err(format!("{what}: expected array of strings"))
    }
}

/// Validates one CLI JSON object against the documented output schema.
pub fn validate_json(v: &Value, verify: bool) -> Result<(), String> {
    let obj = v.as_object().ok_or("top level is not an object")?;
    let allowed = [
        "command",
        "field",
        "n",
        "a",
        "case",
        "s",
        "kind",
        "witness",
        "factors",
        "idempotents",
        "checks",
        "verified",
    ];
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(format!("unexpected key {k}"));
    }
    expect_string(v, "command")?;
    expect_string(v, "a")?;
    let field = v["field"].as_str().ok_or("field missing")?;
    if field != "real" && field != "full" {
        return Err(format!("bad field {field}"));
    }
    if obj.contains_key("verified") != verify {
        return Err(format!(
            "verified present = {}, --verify = {verify}",
            !verify
        ));
    }
    if verify && !v["verified"].is_boolean() {
        return Err("verified must be boolean".into());
    }
    let command = v["command"].as_str().unwrap();
    if command == "eval" {
        if obj.len() != 3 + usize::from(verify) {
            return Err("eval output carries extra keys".into());
        }
        return Ok(());
    }
    if !v["n"].is_u64() || v["n"].as_u64() == Some(0) {
        return Err("n must be a positive integer".into());
    }
    if !v["s"].is_u64() || v["s"].as_u64() > v["n"].as_u64() {
        return Err("s must be an integer in [0, n]".into());
    }
    match v["kind"].as_str() {
        Some("first") | Some("second") => {}
        _ => return Err("kind must be first or second".into()),
    }
    expect_string(v, "witness")?;
    if command != "height" {
        match v["case"].as_u64() {
            Some(1..=4) => {}
            _ => return Err("case must be 1..=4".into()),
        }
    } else if obj.contains_key("case") {
        return Err("height output has a case".into());
    }
    match command {
        "factor" => {
            let fs = v["factors"].as_array().ok_or("factors missing")?;
            for f in fs {
                expect_string_list(f, "factor")?;
            }
            if obj.contains_key("idempotents") {
                return Err("factor output has idempotents".into());
            }
        }
        "idempotents" => {
            let es = v["idempotents"].as_array().ok_or("idempotents missing")?;
            for e in es {
                expect_string(e, "label")?;
                expect_string_list(&e["coeffs"], "coeffs")?;
            }
            if obj.contains_key("factors") {
                return Err("idempotents output has factors".into());
            }
        }
        "height" => {
            if obj.contains_key("factors") || obj.contains_key("idempotents") {
                return Err("height output has lists".into());
            }
        }
        other => return Err(format!("unknown command {other}")),
    }
    Ok(())
}
