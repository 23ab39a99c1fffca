//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclotwist::cli::{run, Request};
use cyclotwist::{
    expand_product, factorize, height, idempotents, parse_element, pow2_root, render_element,
    verify_system, AlgebraSpec, CycloElem, Poly, Tower,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

const TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reconstruction() -> Outcome {
    let corpus = common::corpus();
    let mut cases = HashSet::new();
    for inst in &corpus {
        let f = factorize(inst.n, &inst.a, &inst.tower)
            .map_err(|e| format!("{}: {e}", common::describe(inst)))?;
        ensure(
            expand_product(&f.factors) == Poly::binomial(1 << inst.n, &inst.a),
            || format!("{}: product differs", common::describe(inst)),
        )?;
        cases.insert(f.case.number());
    }
    ensure(cases.len() == 4, || format!("cases seen: {cases:?}"))?;
    Ok(format!(
        "{} instances exact, cases {{1,2,3,4}} all present",
        corpus.len()
    ))
}

fn golden() -> Outcome {
    let poly = |cs: &[&str]| Poly::new(cs.iter().map(|c| parse_element(c).unwrap()).collect());
    let as_set = |fs: &[Poly]| fs.iter().map(|p| format!("{p:?}")).collect::<HashSet<_>>();
    let got = factorize(2, &CycloElem::from_int(-4), &Tower::real()).map_err(|e| e.to_string())?;
    let want = [poly(&["2", "-2", "1"]), poly(&["2", "2", "1"])];
    ensure(as_set(&got.factors) == as_set(&want), || {
        format!("x^4 + 4 -> {:?}", got.factors)
    })?;
    let got = factorize(2, &CycloElem::from_int(4), &Tower::real()).map_err(|e| e.to_string())?;
    let want = [
        poly(&["-c(3)", "1"]),
        poly(&["c(3)", "1"]),
        poly(&["2", "0", "1"]),
    ];
    ensure(as_set(&got.factors) == as_set(&want), || {
        format!("x^4 - 4 -> {:?}", got.factors)
    })?;
    Ok("x^4 + 4 and x^4 - 4 over the real tower".into())
}

fn idempotent_systems() -> Outcome {
    let corpus = common::corpus();
    let mut members = 0;
    for inst in &corpus {
        let what = common::describe(inst);
        let sp = AlgebraSpec::new(inst.n, inst.a.clone(), inst.tower)
            .map_err(|e| format!("{what}: {e}"))?;
        let set = idempotents(&sp).map_err(|e| format!("{what}: {e}"))?;
        let r = verify_system(&set);
        ensure(r.idempotent.iter().all(|b| *b), || {
            format!("{what}: not idempotent")
        })?;
        ensure(r.orthogonal(), || {
            format!("{what}: not orthogonal {:?}", r.non_orthogonal)
        })?;
        ensure(r.complete, || format!("{what}: sum is not 1"))?;
        ensure(
            r.count_matches && set.members.len() == set.case.expected_count(set.height.s),
            || format!("{what}: count {}", set.members.len()),
        )?;
        ensure(r.annihilated.iter().all(|b| *b), || {
            format!("{what}: factor does not annihilate")
        })?;
        ensure(r.dimensions_match(), || {
            format!(
                "{what}: dims {:?} vs degrees {:?}",
                r.dimensions, r.factor_degrees
            )
        })?;
        let total: usize = r.dimensions.iter().flatten().sum();
        ensure(total == sp.dim(), || {
            format!("{what}: dimensions sum to {total}")
        })?;
        members += set.members.len();
    }
    Ok(format!(
        "{} instances, {members} idempotents verified",
        corpus.len()
    ))
}

fn conjugation() -> Outcome {
    for k in 2..=6 {
        let z = CycloElem::zeta(k);
        ensure(z.conj() == z.invert().unwrap(), || {
            format!("conj(zeta({k})) != zeta({k})^-1")
        })?;
        let c = &z + &z.invert().unwrap();
        ensure(c.conj() == c, || format!("c({k}) not conj-fixed"))?;
    }
    Ok("k = 2..6".into())
}

fn lifted_powers() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x2_5);
    let real = Tower::real();
    let mut fixed = 0;
    for trial in 0..200 {
        let n = rng.gen_range(1..=3u32);
        let beta = if rng.gen_bool(0.5) {
            let r = common::random_nonzero_real(&mut rng, 3);
            let l = rng.gen_range(0..1i64 << (n + 1));
            &r * &CycloElem::zeta_pow(n + 1, l)
        } else {
            common::random_nonzero_full(&mut rng, 4)
        };
        let u = beta.pow2k(n);
        if u.conj() != u {
            continue;
        }
        fixed += 1;
        let h = height(&u, n, &real).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(h.s == n, || {
            format!("trial {trial}: beta = {beta}, n = {n}, height {}", h.s)
        })?;
        let found = (0..1i64 << (n + 1)).any(|l| {
            let t = &beta * &CycloElem::zeta_pow(n + 1, -l);
            t.conj() == t
        });
        ensure(found, || {
            format!("trial {trial}: no rotation of {beta} is real")
        })?;
    }
    ensure(fixed >= 50, || {
        format!("only {fixed} samples had a conj-fixed power")
    })?;
    Ok(format!(
        "200 samples, {fixed} with conj-fixed power, all passed"
    ))
}

fn exclusive_signs() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x2_6);
    let real = Tower::real();
    let mut with_root = 0;
    for trial in 0..200 {
        let a = if rng.gen_bool(0.4) {
            let y = common::random_nonzero_real(&mut rng, 3);
            let p = y.pow2k(rng.gen_range(0..=3));
            if rng.gen_bool(0.5) {
                p
            } else {
                -p
            }
        } else {
            common::random_nonzero_real(&mut rng, 4)
        };
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for s in 1..=3 {
            if pow2_root(&a, s, &real)
                .map_err(|e| e.to_string())?
                .is_some()
            {
                plus.push(s);
            }
            if pow2_root(&-&a, s, &real)
                .map_err(|e| e.to_string())?
                .is_some()
            {
                minus.push(s);
            }
        }
        ensure(plus.is_empty() || minus.is_empty(), || {
            format!("trial {trial}: a = {a}, roots of a at {plus:?}, of -a at {minus:?}")
        })?;
        with_root += usize::from(!plus.is_empty() || !minus.is_empty());
    }
    ensure(with_root >= 40, || {
        format!("only {with_root} samples had any root")
    })?;
    Ok(format!(
        "200 samples x 9 (s, m) pairs, {with_root} with a root, none on both signs"
    ))
}

fn numeric() -> Outcome {
    let points = common::unit_circle_samples(64);
    let corpus = common::corpus();
    let mut worst = 0.0f64;
    for inst in &corpus {
        let f = factorize(inst.n, &inst.a, &inst.tower).map_err(|e| e.to_string())?;
        let target = Poly::binomial(1 << inst.n, &inst.a);
        for &z in &points {
            let want = target.eval_complex(z);
            let got: Complex64 = f.factors.iter().map(|p| p.eval_complex(z)).product();
            let rel = (got - want).norm() / want.norm();
            ensure(rel < 1e-9, || {
                format!("{} at {z}: relative error {rel:e}", common::describe(inst))
            })?;
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "{} instances x 64 points, worst relative error {worst:.1e}",
        corpus.len()
    ))
}

fn cli_run(args: &str) -> Result<(i32, String), String> {
    let argv = std::iter::once("cyclotwist").chain(args.split(' '));
    let req = Request::from_args(argv).map_err(|e| e.to_string())?;
    let out = run(&req);
    Ok((out.status, out.stdout))
}

fn cli_contract() -> Outcome {
    let (status, out) = cli_run("factor --field real --n 2 --a -4 --verify --json")?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(
        status == 0 && v["case"] == 4 && v["verified"] == true,
        || out.clone(),
    )?;
    ensure(
        v["factors"] == serde_json::json!([["2", "-2", "1"], ["2", "2", "1"]]),
        || out.clone(),
    )?;
    common::validate_json(&v, true)?;

    let (status, out) = cli_run("idempotents --field real --n 1 --a -1 --json")?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let members = v["idempotents"].as_array().map_or(0, Vec::len);
    ensure(status == 0 && v["case"] == 2 && members == 1, || {
        out.clone()
    })?;
    ensure(v["idempotents"][0]["coeffs"][0] == "1", || out.clone())?;
    common::validate_json(&v, false)?;

    let (status, out) = cli_run("height --field real --n 3 --a 4 --json")?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(status == 0 && v["s"] == 2 && v["kind"] == "first", || {
        out.clone()
    })?;
    ensure(v["witness"] == "zeta(3) + -1*zeta(3)^3", || out.clone())?;
    common::validate_json(&v, false)?;

    let (status, out) = cli_run("height --field real --n 2 --a zeta(2)")?;
    ensure(status == 1 && out.is_empty(), || {
        format!("non-member: status {status}")
    })?;

    let mut rng = StdRng::seed_from_u64(0x8);
    for _ in 0..100 {
        let x = common::random_full(&mut rng, 4);
        let text = render_element(&x);
        ensure(parse_element(&text).as_ref() == Ok(&x), || {
            format!("round trip failed for {text}")
        })?;
    }
    Ok("3 examples, JSON schema, non-member exit 1, 100 round trips".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("factorization reconstruction", reconstruction),
        ("golden instances", golden),
        ("idempotent systems", idempotent_systems),
        ("conjugation of roots of unity", conjugation),
        ("conj-fixed powers have full height", lifted_powers),
        ("exclusive signed powers", exclusive_signs),
        ("numeric cross-check", numeric),
        ("cli contract", cli_contract),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} ({secs:.2}s)", i + 1)
            }
        }
    }
    let total = start.elapsed();
    if total <= TIME_LIMIT {
        println!(
            "PASS runtime: {:.2}s within {}s",
            total.as_secs_f64(),
            TIME_LIMIT.as_secs()
        );
    } else {
        failed += 1;
        println!(
            "FAIL runtime: {:.2}s exceeds {}s",
            total.as_secs_f64(),
            TIME_LIMIT.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
