//! Output formats shared by the subcommands.

use clap::ValueEnum;
use densityforge::analytic::XRat;
use densityforge::{IntPoly1, IntPoly2};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
    Latex,
}

pub const CSV_HEADER: &str = "lambda,e_q,e_T,coeff";

/// Turns the crate's plain text (`2*q^3*T^(-1)`) into LaTeX.
pub fn latexify(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => out.push(' '),
            '^' => {
                out.push_str("^{");
                if chars.peek() == Some(&'(') {
                    chars.next();
                    for d in chars.by_ref() {
                        if d == ')' {
                            break;
                        }
                        out.push(d);
                    }
                } else {
                    while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                        out.push(d);
                        chars.next();
                    }
                }
                out.push('}');
            }
            _ => out.push(c),
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

/// CSV rows of a polynomial in `q` and `T`.
pub fn poly2_csv_rows(label: &str, p: &IntPoly2) -> Vec<String> {
    p.terms().map(|(e_q, e_t, c)| format!("{},{e_q},{e_t},{c}", csv_field(label))).collect()
}

/// CSV rows of `c q^e T^a`, for a polynomial in `q` sitting in front of `T^a`.
pub fn poly1_csv_rows(label: &str, e_t: u32, p: &IntPoly1) -> Vec<String> {
    p.terms().map(|(e, c)| format!("{},{e},{e_t},{c}", csv_field(label))).collect()
}

pub fn csv(rows: Vec<String>) -> String {
    let mut out = String::from(CSV_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&r);
    }
    out
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

/// A value of the analytic side with its floating-point rendering.
pub fn xrat_json(v: &XRat, q: u64) -> Value {
    json!({ "exact": v.to_string(), "float": v.eval_f64(q as f64) })
}

pub fn xrat_plain(v: &XRat, q: u64) -> String {
    format!("{v}    (q = {q}: {})", v.eval_f64(q as f64))
}

pub fn xrat_latex(v: &XRat) -> String {
    if v.as_poly().is_some() {
        return latexify(&v.to_string());
    }
    let (n, d) = v.render_parts();
    format!("\\frac{{{}}}{{{}}}", latexify(&n), latexify(&d))
}
