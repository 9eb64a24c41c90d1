//! Property suites behind `densityforge verify`: every identity is checked
//! against an independent route over a bounded envelope of inputs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::{
    corank_one_rhs, genus_drop_sum, key_degree_rhs, lambda_derivative, lambda_fn, lambda_via_eisenstein,
    off_center_rhs, trace_identity_check, BundleData, Chi0, CurveData, SRat,
};
use crate::density::{
    den_eta_local, den_global, den_inert, den_inert_induction, den_inert_weak, den_split, den_split_induction,
    functional_defect, GlobalPlaceData, LocalDatum, PlaceKind,
};
use crate::error::{Error, OracleError, ParseError};
use crate::exactpoly::SubstRule;
use crate::finitemod::{brute_den_inert, brute_den_split};
use crate::partitions::{enumerate_partitions, partitions_up_to, Partition};
use crate::springer::{kostka_foulkes, kostka_number, sub_via_kf};
use crate::subcount::{sub_poly, sub_poly_interp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Appendix,
    Global,
    Springer,
    Analytic,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Appendix, Suite::Global, Suite::Springer, Suite::Analytic];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Appendix => "appendix",
            Suite::Global => "global",
            Suite::Springer => "springer",
            Suite::Analytic => "analytic",
        }
    }
}

/// A suite name or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, ParseError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "all" => Ok(Suite::ALL.to_vec()),
        other => Suite::from_str(other).map(|s| vec![s]),
    }
}

impl FromStr for Suite {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| ParseError::Input(format!("unknown suite {s:?}")))
    }
}

/// Bounds on the inputs each suite sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    /// Largest `|λ|` for the local checks.
    pub max_size: u32,
    /// Residue field sizes for the brute-force comparisons.
    pub qs: Vec<u64>,
    /// Derivative orders for the analytic checks.
    pub rs: Vec<usize>,
    /// Number of random global place configurations.
    pub global_configs: usize,
    /// Largest `d` of a random global configuration.
    pub max_global_d: u32,
    /// Largest `d` of the place sets in the analytic checks.
    pub max_analytic_d: u32,
    pub seed: u64,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope {
            max_size: 4,
            qs: vec![3],
            rs: vec![0, 2, 4],
            global_configs: 100,
            max_global_d: 8,
            max_analytic_d: 4,
            seed: 0x5eed,
        }
    }
}

/// Outcome of one named property over its cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: usize,
    /// Cases left out because the brute-force oracle would exceed its size bound.
    pub skipped: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        writeln!(f, "{:<9} {:<width$} {:>7} {:>7} {:>7}  result", "suite", "check", "passed", "skipped", "failed")?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<9} {:<width$} {:>7} {:>7} {:>7}  {}",
                c.suite.name(),
                c.name,
                c.passed,
                c.skipped,
                c.failed,
                if c.ok() { "PASS" } else { "FAIL" }
            )?;
        }
        for c in self.checks.iter().filter(|c| !c.ok()) {
            if let Some(detail) = &c.first_failure {
                writeln!(f, "counterexample for {}/{}: {detail}", c.suite.name(), c.name)?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.ok()).count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

enum Case {
    Pass,
    Skip,
    Fail(String),
}

fn compare<T: PartialEq + fmt::Display>(label: impl fmt::Display, lhs: &T, rhs: &T) -> Case {
    if lhs == rhs {
        Case::Pass
    } else {
        Case::Fail(format!("{label}: {lhs} != {rhs}"))
    }
}

fn run<T: Sync>(suite: Suite, name: impl Into<String>, cases: &[T], f: impl Fn(&T) -> Case + Sync + Send) -> Check {
    let results: Vec<Case> = cases.par_iter().map(f).collect();
    let mut check = Check { suite, name: name.into(), passed: 0, skipped: 0, failed: 0, first_failure: None };
    for r in results {
        match r {
            Case::Pass => check.passed += 1,
            Case::Skip => check.skipped += 1,
            Case::Fail(msg) => {
                check.failed += 1;
                check.first_failure.get_or_insert(msg);
            }
        }
    }
    check
}

fn oracle_case(label: String, brute: Result<crate::IntPoly1, OracleError>, closed: crate::IntPoly1) -> Case {
    match brute {
        Ok(b) => compare(label, &b, &closed),
        Err(OracleError::SizeBound { .. }) => Case::Skip,
        Err(e) => Case::Fail(format!("{label}: {e}")),
    }
}

fn appendix(env: &Envelope) -> Vec<Check> {
    let parts = partitions_up_to(env.max_size);
    let mut checks = Vec::new();
    for &q in &env.qs {
        let qb = BigInt::from(q);
        checks.push(run(Suite::Appendix, format!("brute split = closed form (q={q})"), &parts, |lam| {
            oracle_case(format!("lambda={lam}"), brute_den_split(q, lam), den_split(lam).eval_q(&qb))
        }));
        checks.push(run(Suite::Appendix, format!("brute inert = closed form (q={q})"), &parts, |lam| {
            oracle_case(format!("lambda={lam}"), brute_den_inert(q, lam), den_inert(lam).eval_q(&qb))
        }));
    }
    let sub_cases: Vec<(u32, Partition)> =
        parts.iter().flat_map(|lam| (0..=lam.size()).map(move |a| (a, lam.clone()))).collect();
    checks.push(run(Suite::Appendix, "sub recursion = interpolation", &sub_cases, |(a, lam)| {
        match sub_poly_interp(*a as i64, lam) {
            Ok(p) => compare(format!("a={a} lambda={lam}"), &sub_poly(*a as i64, lam), &p),
            Err(e) => Case::Fail(format!("a={a} lambda={lam}: {e}")),
        }
    }));
    let induction_cases: Vec<(u32, Partition)> =
        parts.iter().flat_map(|lam| (1..=env.max_size.max(1)).map(move |m| (m, lam.clone()))).collect();
    let induction = |name: &str, gap: u32, lhs: fn(u32, &Partition) -> crate::Result<crate::IntPoly2>, rhs: fn(&Partition) -> crate::IntPoly2| {
        run(Suite::Appendix, name, &induction_cases, move |(m, lam)| {
            if *m < lam.largest() + gap {
                return Case::Skip;
            }
            match lhs(*m, lam) {
                Ok(p) => compare(format!("m={m} lambda={lam}"), &p, &rhs(&lam.insert_sorted(*m))),
                Err(Error::PreconditionViolated(_)) => Case::Skip,
                Err(e) => Case::Fail(format!("m={m} lambda={lam}: {e}")),
            }
        })
    };
    checks.push(induction("strong induction (split)", 0, den_split_induction, den_split));
    checks.push(induction("strong induction (inert)", 0, den_inert_induction, den_inert));
    checks.push(induction("weak induction (inert)", 1, den_inert_weak, den_inert));
    let bridge_parts = partitions_up_to(env.max_size + 2);
    checks.push(run(Suite::Appendix, "sign bridge q -> -q, T -> -T", &bridge_parts, |lam| {
        let bridged = den_split(lam).subst_all(&[SubstRule::NegQ, SubstRule::NegT]);
        compare(format!("lambda={lam}"), &den_inert(lam), &bridged)
    }));
    checks.push(run(Suite::Appendix, "local functional equations", &bridge_parts, |lam| {
        let d = lam.size();
        let split = den_split(lam);
        let inert = den_inert(lam);
        let tw = den_eta_local(PlaceKind::Inert, lam);
        let sign = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
        let ok = split.reverse_t(d).ok() == Some(split.clone())
            && inert.reverse_t(d).ok() == Some(inert.scale(&sign))
            && tw.reverse_t(d).ok() == Some(tw.clone());
        if ok {
            Case::Pass
        } else {
            Case::Fail(format!("lambda={lam}"))
        }
    }));
    checks
}

/// A random place configuration over `GF(q)` with `d ≤ max_d`.
pub fn random_place_config<R: Rng>(rng: &mut R, q: u64, max_d: u32) -> GlobalPlaceData {
    let target = rng.gen_range(0..=max_d);
    let mut places = Vec::new();
    let mut d = 0;
    while d < target {
        let deg = rng.gen_range(1..=(target - d).min(3));
        let size = rng.gen_range(1..=(target - d) / deg);
        let shapes = enumerate_partitions(size, None);
        let lambda = shapes[rng.gen_range(0..shapes.len())].clone();
        let kind = if rng.gen_bool(0.5) { PlaceKind::Inert } else { PlaceKind::Split };
        places.push(LocalDatum { deg, kind, lambda });
        d += deg * size;
    }
    GlobalPlaceData::new(q, places).expect("generated places are valid")
}

fn global(env: &Envelope) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(env.seed);
    let configs: Vec<GlobalPlaceData> =
        (0..env.global_configs).map(|_| random_place_config(&mut rng, 3, env.max_global_d)).collect();
    let describe = |g: &GlobalPlaceData| g.to_json();
    vec![
        run(Suite::Global, "untwisted functional equation with defect", &configs, |g| {
            let den = den_global(g, false);
            let defect = BigInt::from(functional_defect(g));
            match den.reverse_t(g.d()) {
                Ok(rev) => compare(describe(g), &rev, &den.scale(&defect)),
                Err(e) => Case::Fail(format!("{}: {e}", describe(g))),
            }
        }),
        run(Suite::Global, "twisted polynomial is palindromic", &configs, |g| {
            let den = den_global(g, true);
            match den.reverse_t(g.d()) {
                Ok(rev) => compare(describe(g), &rev, &den),
                Err(e) => Case::Fail(format!("{}: {e}", describe(g))),
            }
        }),
    ]
}

fn springer(env: &Envelope) -> Vec<Check> {
    let parts = partitions_up_to(env.max_size + 1);
    let sub_cases: Vec<(u32, Partition)> =
        parts.iter().flat_map(|lam| (0..=lam.size()).map(move |a| (a, lam.clone()))).collect();
    let kf_cases: Vec<(Partition, Partition)> = parts
        .iter()
        .flat_map(|lam| enumerate_partitions(lam.size(), None).into_iter().map(move |mu| (lam.clone(), mu)))
        .collect();
    vec![
        run(Suite::Springer, "Kostka-Foulkes at t=1 = Kostka number", &kf_cases, |(lam, mu)| {
            let at_one = kostka_foulkes(lam, mu).eval(&BigInt::from(1));
            compare(format!("lambda={lam} mu={mu}"), &at_one, &BigInt::from(kostka_number(lam, mu.parts())))
        }),
        run(Suite::Springer, "Kostka-Foulkes sum = sub polynomial", &sub_cases, |(a, lam)| {
            compare(format!("a={a} lambda={lam}"), &sub_via_kf(*a, lam), &sub_poly(*a as i64, lam))
        }),
    ]
}

/// The two curve families of the analytic checks over `GF(q)`: genus one
/// with trivial cover L-function, and `L(s, η) = 1 + a q^{-s} + q^{1-2s}`
/// on a genus-two curve, for `a ∈ {-2, …, 2}`.
pub fn curve_families(q: u64) -> Vec<CurveData> {
    let qi = q as i64;
    let mut out = Vec::new();
    for a in -2..=2 {
        out.push(CurveData::genus_one(q, a).expect("valid genus-one data"));
        out.push(CurveData::new(q, 2, vec![1, a, qi], vec![1, a, 2, qi * a, qi * qi]).expect("valid genus-two data"));
    }
    out
}

/// Every place multiset over `GF(q)` with `d ≤ max_d`, listing each
/// `(deg, kind, λ)` in a fixed order.
pub fn place_configs(q: u64, max_d: u32) -> Vec<GlobalPlaceData> {
    let mut atoms = Vec::new();
    for deg in 1..=max_d.max(1) {
        for size in 1..=max_d / deg {
            for lambda in enumerate_partitions(size, None) {
                for kind in [PlaceKind::Split, PlaceKind::Inert] {
                    atoms.push(LocalDatum { deg, kind, lambda: lambda.clone() });
                }
            }
        }
    }
    fn extend(atoms: &[LocalDatum], start: usize, room: u32, cur: &mut Vec<LocalDatum>, q: u64, out: &mut Vec<GlobalPlaceData>) {
        out.push(GlobalPlaceData::new(q, cur.clone()).expect("valid places"));
        for i in start..atoms.len() {
            let w = atoms[i].deg * atoms[i].lambda.size();
            if w <= room {
                cur.push(atoms[i].clone());
                extend(atoms, i, room - w, cur, q, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&atoms, 0, max_d, &mut Vec::new(), q, &mut out);
    out
}

/// One input of the analytic checks: a curve, `E^♭` of the given rank with
/// its places, and `E_0` of rank one with `d(E_0) = d0`.
#[derive(Clone, Debug)]
pub struct AnalyticCase {
    pub curve: CurveData,
    pub e_flat: BundleData,
    pub e0: BundleData,
}

impl fmt::Display for AnalyticCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "curve={} E={} E0={}", self.curve.to_json(), self.e_flat.to_json(), self.e0.to_json())
    }
}

pub fn analytic_cases(q: u64, max_d: u32) -> Vec<AnalyticCase> {
    let mut out = Vec::new();
    for curve in curve_families(q) {
        for places in place_configs(q, max_d) {
            for rank in 1..=2 {
                for d0 in 0..=1 {
                    let e_flat = BundleData::from_places(&curve, rank, places.clone());
                    let e0 = BundleData::bare(1, curve.effective_deg_omega() - d0);
                    out.push(AnalyticCase { curve: curve.clone(), e_flat, e0 });
                }
            }
        }
    }
    out
}

fn fail_on<T>(label: &AnalyticCase, r: crate::Result<T>, f: impl FnOnce(T) -> Case) -> Case {
    match r {
        Ok(v) => f(v),
        Err(e) => Case::Fail(format!("{label}: {e}")),
    }
}

fn analytic(env: &Envelope) -> Vec<Check> {
    let cases = analytic_cases(3, env.max_analytic_d);
    let even_rs: Vec<usize> = env.rs.iter().copied().filter(|r| r % 2 == 0).collect();
    let mut checks = vec![
        run(Suite::Analytic, "Lambda from the Eisenstein coefficient", &cases, |c| {
            fail_on(c, lambda_via_eisenstein(&c.curve, &c.e_flat), |via| {
                fail_on(c, lambda_fn(&c.curve, &c.e_flat), |direct| {
                    if via == SRat::from_sexp(direct) {
                        Case::Pass
                    } else {
                        Case::Fail(c.to_string())
                    }
                })
            })
        }),
        run(Suite::Analytic, "genus-drop sum is even in s", &cases, |c| {
            fail_on(c, genus_drop_sum(&c.curve, &c.e0, &c.e_flat, c.e_flat.rank + 1, Chi0::EtaM), |sum| {
                if sum.is_even() {
                    Case::Pass
                } else {
                    Case::Fail(c.to_string())
                }
            })
        }),
    ];
    let per_r = |name: &str, rs: &[usize], f: fn(&AnalyticCase, usize) -> Case| {
        let items: Vec<(usize, usize)> = (0..cases.len()).flat_map(|i| rs.iter().map(move |&r| (i, r))).collect();
        run(Suite::Analytic, name, &items, |&(i, r)| f(&cases[i], r))
    };
    checks.push(per_r("key degree = off-center", &even_rs, |c, r| {
        fail_on(c, key_degree_rhs(&c.curve, &c.e_flat, &c.e0, r), |key| {
            fail_on(c, off_center_rhs(&c.curve, &c.e_flat, &c.e0, r), |off| compare(format!("r={r} {c}"), &key, &off))
        })
    }));
    checks.push(per_r("corank one = 2 D^r[q^(-s d0) Lambda]", &even_rs, |c, r| {
        fail_on(c, corank_one_rhs(&c.curve, &c.e0, &c.e_flat, r), |corank| {
            fail_on(c, lambda_derivative(&c.curve, &c.e0, &c.e_flat, r), |lam| {
                compare(format!("r={r} {c}"), &corank, &lam)
            })
        })
    }));
    checks.push(per_r("odd r vanishing", &[1, 3, 5], |c, r| {
        fail_on(c, corank_one_rhs(&c.curve, &c.e0, &c.e_flat, r), |corank| {
            fail_on(c, key_degree_rhs(&c.curve, &c.e_flat, &c.e0, r), |key| {
                if corank.is_zero() && key.is_zero() {
                    Case::Pass
                } else {
                    Case::Fail(format!("r={r} {c}: corank={corank} key={key}"))
                }
            })
        })
    }));
    let traces: Vec<(CurveData, i64, usize)> = trace_families(3)
        .into_iter()
        .flat_map(|c| (0..=6usize).flat_map(move |r| [0i64, 1, 2, 3].map(|n| (c.clone(), n, r))))
        .collect();
    checks.push(run(Suite::Analytic, "trace identity", &traces, |(c, deg_n, r)| {
        let eta = if r % 2 == 0 { 1 } else { -1 };
        match trace_identity_check(c, *deg_n, eta, *r) {
            Ok((lhs, rhs)) => compare(format!("curve={} deg_N={deg_n} r={r}", c.to_json()), &lhs, &rhs),
            Err(e) => Case::Fail(e.to_string()),
        }
    }));
    checks
}

/// L-polynomial families satisfying the functional equation, for
/// `deg ω ∈ {0, 2, 4}` and small middle coefficients.
pub fn trace_families(q: u64) -> Vec<CurveData> {
    let qi = q as i64;
    let mut out = vec![CurveData::new(q, 0, vec![1], vec![1]).expect("trivial data")];
    for a in -3..=3 {
        out.push(CurveData::new(q, 2, vec![1, a, qi], vec![1]).expect("degree-two data"));
    }
    for a in -2..=2 {
        for b in -3..=3 {
            out.push(CurveData::new(q, 4, vec![1, a, b, qi * a, qi * qi], vec![1]).expect("degree-four data"));
        }
    }
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                let l = vec![1, a, b, c, qi * b, qi * qi * a, qi * qi * qi];
                out.push(CurveData::new(q, 6, l, vec![1]).expect("degree-six data"));
            }
        }
    }
    out
}

/// Runs the given suites over the envelope, in suite order.
pub fn run_suites(suites: &[Suite], env: &Envelope) -> Report {
    let mut ordered = suites.to_vec();
    ordered.sort();
    ordered.dedup();
    let mut report = Report::default();
    for s in ordered {
        report.checks.extend(match s {
            Suite::Appendix => appendix(env),
            Suite::Global => global(env),
            Suite::Springer => springer(env),
            Suite::Analytic => analytic(env),
        });
    }
    report
}
