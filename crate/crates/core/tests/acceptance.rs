//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use knotrep_core::characters::{count_direct_detailed, Verdict};
use knotrep_core::homology::betti_ln;
use knotrep_core::reps::{trace_fingerprint, DEFAULT_TOLERANCE, DEFAULT_WORD_LENGTH};
use knotrep_core::{
    alexander_module, alexander_polynomial, braid_to_wirtinger, build_faithful_reducible, build_sl_rep,
    character_order, conjugacy_class_id, count_direct, count_mobius_tower, count_report, enumerate_characters,
    existence_report, parse_braid, verify_order_formula, verify_rep, LaurentPoly, Tower,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const ORDER_TOL: f64 = 1e-6;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return fail(format!($($msg)+));
        }
    };
}

/// `prod_{k=1}^{n-1} |Delta(exp(2 pi i k / n))|` in floating point.
fn float_order(delta: &LaurentPoly, n: u32) -> f64 {
    let coeffs: Vec<f64> = delta.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    (1..n)
        .map(|k| {
            let z = nalgebra::Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            coeffs.iter().rev().fold(nalgebra::Complex::new(0.0, 0.0), |acc, &c| acc * z + c).norm()
        })
        .product()
}

fn criterion_1() -> Outcome {
    let (w, tower) = knot("trefoil");
    let delta = alexander_polynomial(&alexander_module(&w)).unwrap();
    ensure!(delta == LaurentPoly::from_i64s(0, &[1, -1, 1]), "delta = {delta}");
    let det = delta.eval_int(&BigInt::from(-1)).unwrap().abs();
    ensure!((det - 1u32) / 2u32 == BigInt::from(1), "(|delta(-1)| - 1)/2 != 1");
    for (n, want) in [(2, 1), (3, 1), (4, 0), (5, 0)] {
        let r = count_report(&tower, n).unwrap();
        ensure!(r.direct == Verdict::Finite(want) && r.mobius == Some(want), "n={n}: {r:?}");
    }
    let v = count_direct(&tower, 6).unwrap();
    ensure!(v == Verdict::PositiveDimensional, "n=6: {v:?}");
    pass("delta = t^2 - t + 1; counts 1,1,0,0; n=6 POSITIVE_DIMENSIONAL")
}

fn criterion_2() -> Outcome {
    let (w, tower) = knot("figure-eight");
    let delta = alexander_polynomial(&alexander_module(&w)).unwrap();
    ensure!(delta == LaurentPoly::from_i64s(0, &[1, -3, 1]), "delta = {delta}");
    for (n, want) in [(2, 2), (3, 5)] {
        let r = count_report(&tower, n).unwrap();
        ensure!(r.direct == Verdict::Finite(want) && r.agree == Some(true), "n={n}: {r:?}");
    }
    let report = existence_report(&tower, &delta, 8).unwrap();
    ensure!(report.verdicts.iter().all(|v| matches!(v.verdict, Verdict::Finite(_))), "{:?}", report.verdicts);
    pass("delta = t^2 - 3t + 1; counts 2,5; verdicts finite for n <= 8")
}

fn criterion_3() -> Outcome {
    // the unknot and diagrams of it with crossings
    let mut checked = 0;
    for braid in ["@1", "1 @2", "-1 @2", "1 2 @3", "1 -2 @3", "-1 2 -3 @4"] {
        let w = braid_to_wirtinger(&parse_braid(braid).unwrap()).unwrap();
        let a = alexander_module(&w);
        let delta = alexander_polynomial(&a).unwrap();
        if delta != LaurentPoly::one() {
            continue;
        }
        let tower = Tower::new(a);
        for n in 2..=8 {
            let v = count_direct(&tower, n).unwrap();
            ensure!(v == Verdict::Finite(0), "{braid} n={n}: {v:?}");
            let c = tower.get(n);
            ensure!(c.order() == Some(BigInt::from(1)), "{braid} n={n}: nontrivial homology");
        }
        checked += 1;
    }
    ensure!(checked >= 2, "only {checked} Alexander-trivial diagrams");
    pass(format!("{checked} Alexander-trivial diagrams, no representations for 2 <= n <= 8"))
}

fn criterion_4() -> Outcome {
    for name in FIXTURES {
        let (w, tower) = knot(name);
        let a = alexander_module(&w);
        let delta = alexander_polynomial(&a).unwrap();
        for n in 1..=8 {
            let check = verify_order_formula(&a, n).unwrap();
            ensure!(check.agree, "{name} n={n}: {check:?}");
            let c = tower.get(n);
            ensure!(check.resultant_value.is_zero() == (c.free_rank() > 0), "{name} n={n}: zero iff infinite");
            let f = float_order(&delta, n);
            let want = check.resultant_value.to_f64().unwrap();
            ensure!((f - want).abs() <= ORDER_TOL * want.max(1.0), "{name} n={n}: float oracle {f} vs {want}");
        }
    }
    pass("SNF order = |Res(nu_n, delta)| = float product, n <= 8, all fixtures")
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for name in FIXTURES {
        let (_, tower) = knot(name);
        for n in 2..=6u32 {
            if (1..=n).filter(|l| n % l == 0).any(|l| tower.get(l).free_rank() > 0) {
                continue;
            }
            let d = match count_direct_detailed(&tower, n) {
                Ok(d) => d,
                Err(e) => return fail(format!("{name} n={n}: {e}")),
            };
            let m = count_mobius_tower(&tower, n).unwrap();
            ensure!(d.orbits == m, "{name} n={n}: direct {} mobius {m}", d.orbits);
            ensure!(d.order_n % n as u64 == 0, "{name} n={n}: {} order-n characters", d.order_n);
            cases += 1;
        }
    }
    pass(format!("direct = Moebius on {cases} (knot, n) pairs"))
}

fn criterion_6() -> Outcome {
    let mut reps = 0;
    for name in FIXTURES {
        let (w, tower) = knot(name);
        for n in 2..=5u32 {
            let c = tower.get(n);
            if c.free_rank() > 0 {
                continue;
            }
            for chi in enumerate_characters(&c).unwrap().filter(|chi| character_order(chi, &tower) == n) {
                let r = match build_sl_rep(&w, &tower, &chi) {
                    Ok(r) => r,
                    Err(e) => return fail(format!("{name} n={n}: {e}")),
                };
                let v = verify_rep(&r, &w);
                ensure!(v.all_pass(), "{name} n={n}: {v:?}");
                ensure!(r.images.iter().all(|m| m.det_exponent() == 0), "{name} n={n}: det != 1");
                reps += 1;
            }
        }
    }
    pass(format!("{reps} representations verified exactly"))
}

fn criterion_7() -> Outcome {
    let mut compared = 0;
    for name in FIXTURES {
        let (w, tower) = knot(name);
        for n in 2..=3u32 {
            let c = tower.get(n);
            if c.free_rank() > 0 {
                continue;
            }
            let reps: Vec<_> = enumerate_characters(&c)
                .unwrap()
                .filter(|chi| character_order(chi, &tower) == n)
                .map(|chi| build_sl_rep(&w, &tower, &chi).unwrap())
                .collect();
            let ids: Vec<_> = reps.iter().map(|r| conjugacy_class_id(r, &c).unwrap()).collect();
            let fps: Vec<_> = reps.iter().map(|r| trace_fingerprint(r, DEFAULT_WORD_LENGTH)).collect();
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    ensure!((ids[i] == ids[j]) == fps[i].matches(&fps[j]), "{name} n={n}: pair {i},{j}");
                    compared += 1;
                }
            }
            let classes: BTreeSet<_> = ids.iter().collect();
            let direct = count_direct(&tower, n).unwrap();
            ensure!(direct == Verdict::Finite(classes.len() as u64), "{name} n={n}: ids vs count");
        }
    }
    pass(format!("fingerprints and orbit identifiers agree on {compared} pairs"))
}

fn criterion_8() -> Outcome {
    for name in FIXTURES {
        let (w, tower) = knot(name);
        let delta = alexander_polynomial(&alexander_module(&w)).unwrap();
        for n in 1..=8 {
            let b = tower.get(n).free_rank();
            ensure!(betti_ln(&delta, n) == b, "{name} n={n}: gcd degree vs rank {b}");
        }
    }
    let (_, tower) = knot("trefoil");
    ensure!(tower.get(6).free_rank() == 2 && tower.get(12).free_rank() == 2, "trefoil b1(L6), b1(L12)");
    pass("deg gcd(delta, t^n - 1) = SNF rank; trefoil b1(L6) = b1(L12) = 2")
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in ["trefoil", "figure-eight"] {
        let (w, _) = knot(name);
        match build_faithful_reducible(&w, &alexander_module(&w), DEFAULT_TOLERANCE) {
            Ok(r) => {
                ensure!(r.dim == 4 && r.blocks.len() == 2, "{name}: dim {}", r.dim);
                worst = worst.max(r.residual);
            }
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    ensure!(worst < 1e-9, "residual {worst:e}");
    pass(format!("max relator residual {worst:.1e} < 1e-9"))
}

fn criterion_10() -> Outcome {
    let suites: [(&str, Result<(), String>); 4] = [
        ("Laurent ring laws", run((laurent(), laurent(), laurent()), |(a, b, c)| check_ring_laws(&a, &b, &c))),
        ("SNF U A V = D", run(int_matrix(5, 30), |a| check_snf(&a))),
        ("|Hom(A, S^1)| = |A|", run(finite_group(), |m| check_hom_count(&m))),
        (
            "gcd-order law",
            run((synthetic_module(), 1u32..=6, 1u32..=6), |(a, n, l)| check_gcd_law(&a, n, l).map(|_| ())),
        ),
    ];
    for (name, r) in &suites {
        ensure!(r.is_ok(), "{name}: {}", r.as_ref().unwrap_err());
    }
    pass(format!("4 suites x {CASES} cases, no failures"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Option<Duration>); 10] = [
        (1, "trefoil", criterion_1, Some(Duration::from_secs(1))),
        (2, "figure-eight", criterion_2, Some(Duration::from_secs(1))),
        (3, "Alexander-trivial knots", criterion_3, None),
        (4, "order formula", criterion_4, Some(Duration::from_secs(5))),
        (5, "count coherence", criterion_5, None),
        (6, "representation verification", criterion_6, Some(Duration::from_secs(10))),
        (7, "conjugacy oracle", criterion_7, None),
        (8, "Betti coherence", criterion_8, None),
        (9, "faithful reducible representation", criterion_9, Some(Duration::from_secs(1))),
        (10, "property suites", criterion_10, None),
    ];
    let mut failed = Vec::new();
    for (id, title, f, limit) in criteria {
        let t0 = Instant::now();
        let mut out = f();
        let elapsed = t0.elapsed();
        if let Some(limit) = limit {
            if elapsed >= limit {
                out.ok = false;
                out.detail = format!("{} [over time limit {limit:?}]", out.detail);
            }
        }
        let limit = limit.map_or(String::new(), |l| format!(", limit {l:?}"));
        println!(
            "criterion {id:>2} {}: {title}: {} ({elapsed:.2?}{limit})",
            if out.ok { "PASS" } else { "FAIL" },
            out.detail
        );
        if !out.ok {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
