mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densityforge::analytic::{
    corank_one_rhs, key_degree_rhs, off_center_rhs, trace_identity_check, BundleData, CurveData, XRat,
};
use densityforge::density::{den_eta_local, den_global, den_local, GlobalPlaceData, PlaceKind};
use densityforge::error::{Error, OracleError, ParseError};
use densityforge::finitemod::{brute_den_inert, brute_den_split, brute_sub_count};
use densityforge::springer::{kostka_foulkes, modified_kf};
use densityforge::subcount::{sub_poly, SubTable};
use densityforge::verify::{parse_suites, run_suites, Envelope};
use densityforge::{IntPoly2, Partition};
use render::{csv, latexify, poly1_csv_rows, poly2_csv_rows, pretty, xrat_json, xrat_latex, xrat_plain, Format};
use serde_json::json;

const CACHE_ENV: &str = "DENSITYFORGE_CACHE";

#[derive(Parser, Debug)]
#[command(name = "densityforge", version, about = "Exact density polynomials and their verification")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    /// Cache file for submodule-counting polynomials; defaults to $DENSITYFORGE_CACHE.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sub_{a,λ}(t), the number of length-a submodules of the type-λ module.
    Sub {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        a: i64,
        /// Count by exhaustive enumeration over GF(q) instead.
        #[arg(long, requires = "q")]
        brute: bool,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Local density polynomial Den(q, λ, T).
    Den {
        #[arg(long)]
        kind: PlaceKindArg,
        #[arg(long)]
        lambda: Partition,
        /// The twisted polynomial Den_η.
        #[arg(long)]
        twisted: bool,
        /// Compute the polynomial in T at this q by brute-force enumeration.
        #[arg(long, requires = "q", conflicts_with = "twisted")]
        brute: bool,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Global density polynomial from a place-data JSON file (`-` for stdin).
    DenGlobal {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        twisted: bool,
    },
    /// Kostka-Foulkes polynomial K_{λμ}(t).
    Kf {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        /// The modified polynomial t^{n(μ)} K_{λμ}(1/t).
        #[arg(long)]
        modified: bool,
    },
    /// Exact derivative formulas of the analytic side at s = 0.
    Analytic(AnalyticArgs),
    /// Run property suites and print a pass/fail matrix.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlaceKindArg {
    Split,
    Inert,
}

impl From<PlaceKindArg> for PlaceKind {
    fn from(k: PlaceKindArg) -> Self {
        match k {
            PlaceKindArg::Split => PlaceKind::Split,
            PlaceKindArg::Inert => PlaceKind::Inert,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    KeyDegree,
    OffCenter,
    CorankOne,
    Trace,
}

#[derive(Args, Debug)]
struct AnalyticArgs {
    /// Curve data JSON.
    #[arg(long)]
    curve: PathBuf,
    /// Bundle data JSON (E, or E^♭ for the corank-one form).
    #[arg(long)]
    bundle: Option<PathBuf>,
    /// Place data JSON attached to the bundle; without --bundle the bundle
    /// of rank n-1 matching these places is used.
    #[arg(long)]
    places: Option<PathBuf>,
    /// Rank n of the ambient Eisenstein series.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Derivative order.
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, value_enum)]
    form: Form,
    /// d(E_0) for the rank-one kernel bundle.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    d0: i64,
    /// deg N for the trace form.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    deg_n: i64,
    /// η(N) for the trace form; defaults to (-1)^r.
    #[arg(long, allow_hyphen_values = true)]
    eta_n: Option<i8>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// appendix, global, springer, analytic or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest |λ| in the local checks.
    #[arg(long)]
    max_size: Option<u32>,
    /// Residue field sizes for the brute-force checks.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
    /// Derivative orders for the analytic checks.
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<usize>>,
    /// Number of random global place configurations.
    #[arg(long)]
    configs: Option<usize>,
    /// Largest d of the analytic place sets; defaults to the smaller of 4
    /// and --max-size.
    #[arg(long)]
    max_d: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Oracle(OracleError::SizeBound { .. }) => 4,
        _ => 3,
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    };
    text.map_err(|e| ParseError::Input(format!("{}: {e}", path.display())).into())
}

fn den_label(kind: PlaceKind, twisted: bool) -> (&'static str, &'static str) {
    match (kind, twisted) {
        (PlaceKind::Split, false) => ("split", "\\mathrm{Den}^{+}"),
        (PlaceKind::Inert, false) => ("inert", "\\mathrm{Den}^{-}"),
        (PlaceKind::Split, true) => ("split", "\\mathrm{Den}^{+}_{\\eta}"),
        (PlaceKind::Inert, true) => ("inert", "\\mathrm{Den}^{-}_{\\eta}"),
    }
}

fn emit_poly2(format: Format, label: &str, latex_lhs: &str, extra: serde_json::Value, p: &IntPoly2) -> String {
    match format {
        Format::Plain => p.to_string(),
        Format::Csv => csv(poly2_csv_rows(label, p)),
        Format::Json => {
            let mut v = extra;
            v["poly"] = p.to_json();
            v["text"] = json!(p.to_string());
            pretty(&v)
        }
        Format::Latex => format!("{latex_lhs} = {}", p.to_latex()),
    }
}

fn cmd_sub(format: Format, lambda: &Partition, a: i64, brute: Option<u64>) -> Result<String, Error> {
    if let Some(q) = brute {
        let a = u32::try_from(a).map_err(|_| ParseError::Input(format!("a = {a} must be nonnegative")))?;
        let n = brute_sub_count(q, lambda, a)?;
        return Ok(match format {
            Format::Plain | Format::Latex => n.to_string(),
            Format::Csv => format!("lambda,q,a,count\n{},{q},{a},{n}", render_label(lambda)),
            Format::Json => pretty(&json!({ "lambda": lambda.to_string(), "q": q, "a": a, "count": n })),
        });
    }
    let p = sub_poly(a, lambda);
    Ok(match format {
        Format::Plain => p.to_string(),
        Format::Csv => csv(poly1_csv_rows(&lambda.to_string(), a.max(0) as u32, &p)),
        Format::Json => pretty(&json!({ "a": a, "lambda": lambda.to_string(), "poly": p.to_json(), "text": p.to_string() })),
        Format::Latex => format!("\\mathrm{{Sub}}_{{{a},({lambda})}}(t) = {}", latexify(&p.to_string())),
    })
}

fn render_label(lambda: &Partition) -> String {
    let s = lambda.to_string();
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s
    }
}

fn cmd_den(format: Format, kind: PlaceKind, lambda: &Partition, twisted: bool, brute: Option<u64>) -> Result<String, Error> {
    let (kind_name, latex) = den_label(kind, twisted);
    if let Some(q) = brute {
        let p = match kind {
            PlaceKind::Split => brute_den_split(q, lambda)?,
            PlaceKind::Inert => brute_den_inert(q, lambda)?,
        };
        let poly = IntPoly2::from_t_poly(&p);
        let extra = json!({ "kind": kind_name, "lambda": lambda.to_string(), "q": q });
        let lhs = format!("{latex}({q},({lambda}),T)");
        return Ok(emit_poly2(format, &lambda.to_string(), &lhs, extra, &poly));
    }
    let p = if twisted { den_eta_local(kind, lambda) } else { den_local(kind, lambda) };
    let extra = json!({ "kind": kind_name, "lambda": lambda.to_string(), "twisted": twisted });
    Ok(emit_poly2(format, &lambda.to_string(), &format!("{latex}(q,({lambda}),T)"), extra, &p))
}

fn cmd_den_global(format: Format, file: &Path, twisted: bool) -> Result<String, Error> {
    let g = GlobalPlaceData::from_json(&read_input(file)?)?;
    let p = den_global(&g, twisted);
    let extra = json!({ "q": g.q, "d": g.d(), "twisted": twisted });
    let lhs = if twisted { "\\mathrm{Den}_{\\eta}(T)" } else { "\\mathrm{Den}(T)" };
    Ok(emit_poly2(format, "global", lhs, extra, &p))
}

fn cmd_kf(format: Format, lambda: &Partition, mu: &Partition, modified: bool) -> Result<String, Error> {
    if lambda.size() != mu.size() {
        return Err(Error::PreconditionViolated(format!("|{lambda}| != |{mu}|")));
    }
    let p = if modified { modified_kf(lambda, mu) } else { kostka_foulkes(lambda, mu) };
    Ok(match format {
        Format::Plain => p.to_string(),
        Format::Csv => {
            let mut out = String::from("lambda,mu,e_t,coeff");
            for (e, c) in p.terms() {
                out.push_str(&format!("\n{},{},{e},{c}", render_label(lambda), render_label(mu)));
            }
            out
        }
        Format::Json => pretty(&json!({
            "lambda": lambda.to_string(), "mu": mu.to_string(), "modified": modified,
            "poly": p.to_json(), "text": p.to_string(),
        })),
        Format::Latex => {
            let name = if modified { "\\tilde{K}" } else { "K" };
            format!("{name}_{{({lambda}),({mu})}}(t) = {}", latexify(&p.to_string()))
        }
    })
}

fn load_bundle(args: &AnalyticArgs, curve: &CurveData) -> Result<BundleData, Error> {
    let places = args.places.as_deref().map(|p| read_input(p).and_then(|t| GlobalPlaceData::from_json(&t))).transpose()?;
    let bundle = match (&args.bundle, places) {
        (Some(path), places) => {
            let mut b = BundleData::from_json(&read_input(path)?)?;
            if places.is_some() {
                b.places = places;
            }
            b
        }
        (None, Some(places)) => {
            let rank = args.n.checked_sub(1).filter(|r| *r > 0).ok_or_else(|| {
                Error::PreconditionViolated(format!("n = {} leaves no bundle of rank n - 1", args.n))
            })?;
            BundleData::from_places(curve, rank, places)
        }
        (None, None) => return Err(ParseError::Input("the form needs --bundle or --places".into()).into()),
    };
    if bundle.rank + 1 != args.n {
        return Err(Error::PreconditionViolated(format!(
            "bundle rank {} does not match n - 1 = {}",
            bundle.rank,
            args.n as i64 - 1
        )));
    }
    bundle.validate(curve)?;
    Ok(bundle)
}

fn cmd_analytic(format: Format, args: &AnalyticArgs) -> Result<String, Error> {
    let curve = CurveData::from_json(&read_input(&args.curve)?)?;
    let q = curve.q();
    let values: Vec<(&str, XRat)> = if args.form == Form::Trace {
        let eta = args.eta_n.unwrap_or(if args.r.is_multiple_of(2) { 1 } else { -1 });
        if eta != 1 && eta != -1 {
            return Err(ParseError::Input(format!("eta_n must be 1 or -1, got {eta}")).into());
        }
        let (lhs, rhs) = trace_identity_check(&curve, args.deg_n, eta, args.r)?;
        vec![("lhs", lhs), ("rhs", rhs)]
    } else {
        let e = load_bundle(args, &curve)?;
        let e0 = BundleData::bare(1, curve.effective_deg_omega() - args.d0);
        let v = match args.form {
            Form::KeyDegree => key_degree_rhs(&curve, &e, &e0, args.r)?,
            Form::OffCenter => off_center_rhs(&curve, &e, &e0, args.r)?,
            Form::CorankOne => corank_one_rhs(&curve, &e0, &e, args.r)?,
            Form::Trace => unreachable!("handled above"),
        };
        vec![("value", v)]
    };
    let form = args.form.to_possible_value().expect("named form").get_name().to_string();
    Ok(match format {
        Format::Plain => values
            .iter()
            .map(|(k, v)| if values.len() == 1 { xrat_plain(v, q) } else { format!("{k}: {}", xrat_plain(v, q)) })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => {
            let mut out = String::from("form,r,part,exact,float");
            for (k, v) in &values {
                out.push_str(&format!("\n{form},{},{k},{v},{}", args.r, v.eval_f64(q as f64)));
            }
            out
        }
        Format::Json => {
            let mut obj = json!({ "form": form, "r": args.r, "q": q });
            for (k, v) in &values {
                obj[*k] = xrat_json(v, q);
            }
            pretty(&obj)
        }
        Format::Latex => values.iter().map(|(_, v)| xrat_latex(v)).collect::<Vec<_>>().join(" = "),
    })
}

fn cmd_verify(format: Format, args: &VerifyArgs) -> Result<(String, bool), Error> {
    let suites = parse_suites(&args.suite)?;
    let mut env = Envelope::default();
    if let Some(m) = args.max_size {
        env.max_size = m;
        env.max_analytic_d = env.max_analytic_d.min(m);
    }
    if let Some(q) = &args.q {
        env.qs = q.clone();
    }
    if let Some(r) = &args.r {
        env.rs = r.clone();
    }
    if let Some(c) = args.configs {
        env.global_configs = c;
    }
    if let Some(d) = args.max_d {
        env.max_analytic_d = d;
    }
    if let Some(s) = args.seed {
        env.seed = s;
    }
    let report = run_suites(&suites, &env);
    let skipped: usize = report.checks.iter().map(|c| c.skipped).sum();
    if skipped > 0 && env.max_size > 4 {
        eprintln!("warning: {skipped} cases exceed the brute-force size bound and were skipped");
    }
    let ok = report.all_passed();
    let text = match format {
        Format::Plain | Format::Latex => report.to_string(),
        Format::Csv => {
            let mut out = String::from("suite,check,passed,skipped,failed,result");
            for c in &report.checks {
                out.push_str(&format!(
                    "\n{},\"{}\",{},{},{},{}",
                    c.suite.name(),
                    c.name,
                    c.passed,
                    c.skipped,
                    c.failed,
                    if c.ok() { "PASS" } else { "FAIL" }
                ));
            }
            out
        }
        Format::Json => {
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "suite": c.suite.name(), "check": c.name, "passed": c.passed,
                        "skipped": c.skipped, "failed": c.failed, "first_failure": c.first_failure,
                    })
                })
                .collect();
            pretty(&json!({ "all_passed": ok, "checks": checks }))
        }
    };
    Ok((text, ok))
}

fn run(cli: &Cli) -> Result<(String, bool), Error> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Sub { lambda, a, brute, q } => (cmd_sub(f, lambda, *a, q.filter(|_| *brute))?, true),
        Command::Den { kind, lambda, twisted, brute, q } => {
            (cmd_den(f, (*kind).into(), lambda, *twisted, q.filter(|_| *brute))?, true)
        }
        Command::DenGlobal { file, twisted } => (cmd_den_global(f, file, *twisted)?, true),
        Command::Kf { lambda, mu, modified } => (cmd_kf(f, lambda, mu, *modified)?, true),
        Command::Analytic(args) => (cmd_analytic(f, args)?, true),
        Command::Verify(args) => cmd_verify(f, args)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = cli.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    if let Some(path) = cache.as_deref().filter(|p| p.exists()) {
        if let Err(e) = SubTable::global().load(path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli);
    if let Some(path) = cache.as_deref() {
        if let Err(e) = SubTable::global().save(path) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    match result {
        Ok((text, ok)) => {
            println!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
