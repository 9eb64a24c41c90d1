//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; the only tolerances are the wall-clock budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use densityforge::analytic::{
    corank_one_rhs, key_degree_rhs, lambda_derivative, lambda_fn, lambda_via_eisenstein, off_center_rhs,
    trace_identity_check, CurveData, SRat, XPoly, XRat,
};
use densityforge::density::{
    den_eta_local, den_global, den_inert, den_inert_induction, den_inert_weak, den_local, den_split,
    den_split_induction, functional_defect, PlaceKind,
};
use densityforge::finitemod::{brute_den_inert, brute_den_split};
use densityforge::partitions::partitions_up_to;
use densityforge::springer::sub_via_kf;
use densityforge::subcount::{sub_poly, sub_poly_interp};
use densityforge::verify::{analytic_cases, random_place_config, trace_families};
use densityforge::{IntPoly2, SubstRule};

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

/// Random global configurations for criterion 6, and their seed.
const GLOBAL_CONFIGS: usize = 100;
const GLOBAL_MAX_D: u32 = 8;
const GLOBAL_SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(terms: &[(u32, u32, i64)]) -> IntPoly2 {
    IntPoly2::from_terms(terms.iter().copied())
}

fn c1_example_values() -> Outcome {
    let one = densityforge::Partition::from_parts(vec![1]);
    let one_plus_t = poly(&[(0, 0, 1), (0, 1, 1)]);
    let one_minus_t = poly(&[(0, 0, 1), (0, 1, -1)]);
    ensure(den_eta_local(PlaceKind::Inert, &one) == one_plus_t, || "twisted inert (1) != 1 + T".into())?;
    ensure(den_local(PlaceKind::Split, &one) == one_plus_t, || "split (1) != 1 + T".into())?;
    ensure(den_local(PlaceKind::Inert, &one) == one_minus_t, || "inert (1) != 1 - T".into())?;
    Ok("3 values".into())
}

fn c2_brute_vs_closed() -> Outcome {
    let mut n = 0;
    for lam in partitions_up_to(4) {
        for q in [3u64, 5] {
            let brute = brute_den_split(q, &lam).map_err(|e| format!("split q={q} {lam}: {e}"))?;
            let closed = den_split(&lam).eval_q(&BigInt::from(q));
            ensure(brute == closed, || format!("split q={q} lambda={lam}: {brute} != {closed}"))?;
            n += 1;
        }
        let brute = brute_den_inert(3, &lam).map_err(|e| format!("inert q=3 {lam}: {e}"))?;
        let closed = den_inert(&lam).eval_q(&BigInt::from(3));
        ensure(brute == closed, || format!("inert q=3 lambda={lam}: {brute} != {closed}"))?;
        n += 1;
    }
    Ok(format!("{n} brute-force polynomials"))
}

fn c3_sub_interpolation() -> Outcome {
    let mut n = 0;
    for lam in partitions_up_to(5) {
        for a in 0..=lam.size() as i64 {
            let interp = sub_poly_interp(a, &lam).map_err(|e| format!("a={a} lambda={lam}: {e}"))?;
            let rec = sub_poly(a, &lam);
            ensure(interp == rec, || format!("a={a} lambda={lam}: {rec} != {interp}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} polynomials"))
}

fn c4_induction() -> Outcome {
    let mut n = 0;
    for lam in partitions_up_to(5) {
        for m in 1..=5u32 {
            if m >= lam.largest() {
                let target = lam.insert_sorted(m);
                let s = den_split_induction(m, &lam).map_err(|e| e.to_string())?;
                ensure(s == den_split(&target), || format!("strong split m={m} lambda={lam}"))?;
                let i = den_inert_induction(m, &lam).map_err(|e| e.to_string())?;
                ensure(i == den_inert(&target), || format!("strong inert m={m} lambda={lam}"))?;
                n += 2;
            }
            if m > lam.largest() && m >= 2 {
                let w = den_inert_weak(m, &lam).map_err(|e| e.to_string())?;
                ensure(w == den_inert(&lam.insert_sorted(m)), || format!("weak inert m={m} lambda={lam}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} identities"))
}

fn c5_sign_bridge() -> Outcome {
    let parts = partitions_up_to(6);
    for lam in &parts {
        let bridged = den_split(lam).subst_all(&[SubstRule::NegQ, SubstRule::NegT]);
        ensure(den_inert(lam) == bridged, || format!("lambda={lam}"))?;
    }
    Ok(format!("{} partitions", parts.len()))
}

fn c6_functional_equations() -> Outcome {
    for lam in partitions_up_to(GLOBAL_MAX_D) {
        for kind in [PlaceKind::Split, PlaceKind::Inert] {
            let tw = den_eta_local(kind, &lam);
            ensure(tw.reverse_t(lam.size()).ok() == Some(tw.clone()), || format!("twisted local {kind:?} {lam}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(GLOBAL_SEED);
    for _ in 0..GLOBAL_CONFIGS {
        let g = random_place_config(&mut rng, 3, GLOBAL_MAX_D);
        let d = g.d();
        let tw = den_global(&g, true);
        ensure(tw.reverse_t(d).ok() == Some(tw.clone()), || format!("twisted global {}", g.to_json()))?;
        let un = den_global(&g, false);
        let defect = BigInt::from(functional_defect(&g));
        ensure(un.reverse_t(d).ok() == Some(un.scale(&defect)), || format!("untwisted global {}", g.to_json()))?;
    }
    Ok(format!("{GLOBAL_CONFIGS} global configurations, d <= {GLOBAL_MAX_D}"))
}

fn c7_kostka_foulkes() -> Outcome {
    let mut n = 0;
    for lam in partitions_up_to(5) {
        for a in 0..=lam.size() {
            ensure(sub_via_kf(a, &lam) == sub_poly(a as i64, &lam), || format!("a={a} lambda={lam}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} polynomials"))
}

fn c8_analytic_equalities() -> Outcome {
    let cases = analytic_cases(3, 4);
    let mut n = 0;
    for c in &cases {
        let label = || c.to_string();
        let lam = lambda_fn(&c.curve, &c.e_flat).map_err(|e| format!("{}: {e}", label()))?;
        let via = lambda_via_eisenstein(&c.curve, &c.e_flat).map_err(|e| format!("{}: {e}", label()))?;
        ensure(via == SRat::from_sexp(lam), || format!("Lambda identity: {}", label()))?;
        for r in [0usize, 2, 4] {
            let key = key_degree_rhs(&c.curve, &c.e_flat, &c.e0, r).map_err(|e| e.to_string())?;
            let off = off_center_rhs(&c.curve, &c.e_flat, &c.e0, r).map_err(|e| e.to_string())?;
            ensure(key == off, || format!("key != off-center at r={r}: {}", label()))?;
            let corank = corank_one_rhs(&c.curve, &c.e0, &c.e_flat, r).map_err(|e| e.to_string())?;
            let target = lambda_derivative(&c.curve, &c.e0, &c.e_flat, r).map_err(|e| e.to_string())?;
            ensure(corank == target, || format!("corank one != Lambda derivative at r={r}: {}", label()))?;
            n += 3;
        }
        n += 1;
    }
    Ok(format!("{} inputs, {n} equalities", cases.len()))
}

fn c9_odd_vanishing() -> Outcome {
    let cases = analytic_cases(3, 4);
    for c in &cases {
        for r in [1usize, 3, 5] {
            let corank = corank_one_rhs(&c.curve, &c.e0, &c.e_flat, r).map_err(|e| e.to_string())?;
            let key = key_degree_rhs(&c.curve, &c.e_flat, &c.e0, r).map_err(|e| e.to_string())?;
            ensure(corank.is_zero() && key.is_zero(), || format!("r={r}: {c}"))?;
        }
    }
    Ok(format!("{} inputs", cases.len()))
}

fn c10_trace_identity() -> Outcome {
    let hand = CurveData::new(3, 2, vec![1, 1, 3], vec![1]).map_err(|e| e.to_string())?;
    let (lhs, rhs) = trace_identity_check(&hand, 2, 1, 2).map_err(|e| e.to_string())?;
    let expect = XRat::from_poly(&XPoly::from_int(8) + &XPoly::q_pow(1).scale(&BigInt::from(8).into()));
    ensure(lhs == expect && rhs == expect, || format!("hand value: {lhs} / {rhs}"))?;
    let families = trace_families(3);
    ensure(families.len() >= 50, || format!("only {} families", families.len()))?;
    let mut n = 0;
    for c in &families {
        for deg_n in 0..=4i64 {
            for r in 0..=6usize {
                let eta = if r % 2 == 0 { 1 } else { -1 };
                let (l, rt) = trace_identity_check(c, deg_n, eta, r).map_err(|e| e.to_string())?;
                ensure(l == rt, || format!("{} deg_N={deg_n} r={r}", c.to_json()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{} families, {n} cases", families.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 example density values", SECOND, c1_example_values),
        ("2 brute force = closed form", 10 * MINUTE, c2_brute_vs_closed),
        ("3 sub recursion = interpolation", 10 * MINUTE, c3_sub_interpolation),
        ("4 induction formulas", MINUTE, c4_induction),
        ("5 sign bridge", MINUTE, c5_sign_bridge),
        ("6 functional equations", MINUTE, c6_functional_equations),
        ("7 Kostka-Foulkes identity", MINUTE, c7_kostka_foulkes),
        ("8 analytic equalities", 5 * MINUTE, c8_analytic_equalities),
        ("9 odd-r vanishing", 5 * MINUTE, c9_odd_vanishing),
        ("10 trace identity", MINUTE, c10_trace_identity),
    ];
    let mut failures = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > budget => ("FAIL", format!("took {elapsed:.2?}, budget {budget:?}")),
            Ok(summary) => ("PASS", summary),
            Err(msg) => ("FAIL", msg),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {name}: {status} ({elapsed:.2?}) {detail}");
    }
    if failures == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
