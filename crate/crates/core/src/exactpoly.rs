//! Exact integer polynomials in one variable `t` and in the pair `(q, T)`.
//!
//! Both types are sparse exponent maps over arbitrary-precision integers and
//! never store zero coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{ParseError, PolyError};

/// Polynomial in one variable with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly1 {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, e: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        IntPoly1 { coeffs }
    }

    /// `coeffs[i]` is the coefficient of `t^i`.
    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = IntPoly1::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(i as u32, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // Horner over the dense range.
        let Some(deg) = self.degree() else {
            return BigInt::zero();
        };
        let mut acc = BigInt::zero();
        for e in (0..=deg).rev() {
            acc = acc * x + self.coeff(e);
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly1 {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        IntPoly1 {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// `p(-t)`.
    pub fn negate_var(&self) -> Self {
        IntPoly1 {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (*e, if e % 2 == 1 { -v } else { v.clone() }))
                .collect(),
        }
    }

    /// Renders with the given variable name, highest power first
    /// (`t + 1`).
    pub fn display_desc(&self, var: &str) -> String {
        let terms: Vec<(u32, BigInt)> =
            self.coeffs.iter().rev().map(|(e, c)| (*e, c.clone())).collect();
        render_terms(&terms, |e| var_power(var, e))
    }

    /// Renders with the given variable name, lowest power first
    /// (`1 + 4*T + T^2`).
    pub fn display_asc(&self, var: &str) -> String {
        let terms: Vec<(u32, BigInt)> = self.coeffs.iter().map(|(e, c)| (*e, c.clone())).collect();
        render_terms(&terms, |e| var_power(var, e))
    }

    /// `[[exp, coeff], ...]` in ascending exponent order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(e, c)| Value::Array(vec![Value::from(*e), bigint_to_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let arr = v
            .as_array()
            .ok_or_else(|| ParseError::Polynomial("expected an array of [exp, coeff]".into()))?;
        let mut p = IntPoly1::zero();
        for item in arr {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                ParseError::Polynomial(format!("expected [exp, coeff], got {item}"))
            })?;
            let e = json_exponent(&pair[0])?;
            p.add_term(e, bigint_from_json(&pair[1])?);
        }
        Ok(p)
    }
}

impl fmt::Display for IntPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_desc("t"))
    }
}

impl Add for &IntPoly1 {
    type Output = IntPoly1;
    fn add(self, rhs: &IntPoly1) -> IntPoly1 {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &IntPoly1 {
    type Output = IntPoly1;
    fn sub(self, rhs: &IntPoly1) -> IntPoly1 {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &IntPoly1 {
    type Output = IntPoly1;
    fn mul(self, rhs: &IntPoly1) -> IntPoly1 {
        let mut out = IntPoly1::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &IntPoly1 {
    type Output = IntPoly1;
    fn neg(self) -> IntPoly1 {
        self.scale(&-BigInt::one())
    }
}

macro_rules! forward_owned_binops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_owned_binops!(IntPoly1);
forward_owned_binops!(IntPoly2);

/// A substitution applied to a bivariate polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstRule {
    /// `T -> -T`
    NegT,
    /// `q -> -q`
    NegQ,
    /// `T -> c*T` with `c = ±1`
    ScaleT(i8),
    /// `T -> q^j T`
    QPowT(u32),
    /// `T -> T^e`
    PowT(u32),
    /// `q -> q^e`
    PowQ(u32),
}

/// Polynomial in `q` and `T` with integer coefficients, keyed internally by
/// `(e_T, e_q)` so iteration follows the canonical text order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    /// `c * q^e_q * T^e_t`.
    pub fn monomial(c: BigInt, e_q: u32, e_t: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e_q, e_t, c);
        p
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    /// Builds from `(e_q, e_T, coeff)` triples.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (eq, et, c) in terms {
            p.add_term(eq, et, c.into());
        }
        p
    }

    /// A polynomial in `t` read as a polynomial in `q`.
    pub fn from_q_poly(p: &IntPoly1) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(e, 0, c.clone());
        }
        out
    }

    /// A polynomial in one variable read as a polynomial in `T`.
    pub fn from_t_poly(p: &IntPoly1) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(0, e, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, e_q: u32, e_t: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (e_t, e_q);
        let entry = self.coeffs.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e_q: u32, e_t: u32) -> BigInt {
        self.coeffs.get(&(e_t, e_q)).cloned().unwrap_or_default()
    }

    /// Iterates `(e_q, e_T, coeff)` sorted by `(e_T, e_q)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.coeffs.iter().map(|((et, eq), c)| (*eq, *et, c))
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    pub fn q_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.1).max()
    }

    /// Coefficient of `T^k` as a polynomial in `q`.
    pub fn t_coeff(&self, k: u32) -> IntPoly1 {
        let mut out = IntPoly1::zero();
        for ((et, eq), c) in self.coeffs.range((k, 0)..=(k, u32::MAX)) {
            debug_assert_eq!(*et, k);
            out.add_term(*eq, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly2 {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn map_terms(&self, f: impl Fn(u32, u32, &BigInt) -> (u32, u32, BigInt)) -> Self {
        let mut out = Self::zero();
        for ((et, eq), c) in &self.coeffs {
            let (nq, nt, nc) = f(*eq, *et, c);
            out.add_term(nq, nt, nc);
        }
        out
    }

    pub fn subst(&self, rule: SubstRule) -> Self {
        match rule {
            SubstRule::NegT => self.map_terms(|eq, et, c| (eq, et, odd_neg(et, c))),
            SubstRule::NegQ => self.map_terms(|eq, et, c| (eq, et, odd_neg(eq, c))),
            SubstRule::ScaleT(s) if s < 0 => self.subst(SubstRule::NegT),
            SubstRule::ScaleT(_) => self.clone(),
            SubstRule::QPowT(j) => self.map_terms(|eq, et, c| (eq + j * et, et, c.clone())),
            SubstRule::PowT(e) => {
                assert!(e >= 1, "T -> T^e needs e >= 1");
                self.map_terms(|eq, et, c| (eq, e * et, c.clone()))
            }
            SubstRule::PowQ(e) => {
                assert!(e >= 1, "q -> q^e needs e >= 1");
                self.map_terms(|eq, et, c| (e * eq, et, c.clone()))
            }
        }
    }

    /// Applies the rules left to right.
    pub fn subst_all(&self, rules: &[SubstRule]) -> Self {
        rules.iter().fold(self.clone(), |p, r| p.subst(*r))
    }

    /// `T^d P(1/T)`.
    pub fn reverse_t(&self, d: u32) -> Result<Self, PolyError> {
        if let Some(deg) = self.t_degree() {
            if deg > d {
                return Err(PolyError::DegreeExceeded { degree: deg, bound: d });
            }
        }
        Ok(self.map_terms(|eq, et, c| (eq, d - et, c.clone())))
    }

    /// Specializes `q` to an integer, leaving a polynomial in `T`.
    pub fn eval_q(&self, q0: &BigInt) -> IntPoly1 {
        let mut out = IntPoly1::zero();
        for ((et, eq), c) in &self.coeffs {
            out.add_term(*et, c * Pow::pow(q0, *eq));
        }
        out
    }

    /// `[[e_q, e_T, coeff], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(eq, et, c)| {
                    Value::Array(vec![Value::from(eq), Value::from(et), bigint_to_json(c)])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let arr = v.as_array().ok_or_else(|| {
            ParseError::Polynomial("expected an array of [e_q, e_T, coeff]".into())
        })?;
        let mut p = IntPoly2::zero();
        for item in arr {
            let t = item.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                ParseError::Polynomial(format!("expected [e_q, e_T, coeff], got {item}"))
            })?;
            p.add_term(json_exponent(&t[0])?, json_exponent(&t[1])?, bigint_from_json(&t[2])?);
        }
        Ok(p)
    }

    /// LaTeX rendering, e.g. `1 + (q - 1) T + T^{2}`.
    pub fn to_latex(&self) -> String {
        let s = self.to_string();
        let mut out = String::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '*' => out.push(' '),
                '^' => {
                    out.push_str("^{");
                    while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                        out.push(d);
                        chars.next();
                    }
                    out.push('}');
                }
                _ => out.push(c),
            }
        }
        out
    }
}

fn odd_neg(e: u32, c: &BigInt) -> BigInt {
    if e % 2 == 1 {
        -c
    } else {
        c.clone()
    }
}

impl Add for &IntPoly2 {
    type Output = IntPoly2;
    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for ((et, eq), c) in &rhs.coeffs {
            out.add_term(*eq, *et, c.clone());
        }
        out
    }
}

impl Sub for &IntPoly2 {
    type Output = IntPoly2;
    fn sub(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for ((et, eq), c) in &rhs.coeffs {
            out.add_term(*eq, *et, -c);
        }
        out
    }
}

impl Mul for &IntPoly2 {
    type Output = IntPoly2;
    fn mul(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for ((ta, qa), ca) in &self.coeffs {
            for ((tb, qb), cb) in &rhs.coeffs {
                out.add_term(qa + qb, ta + tb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &IntPoly2 {
    type Output = IntPoly2;
    fn neg(self) -> IntPoly2 {
        self.scale(&-BigInt::one())
    }
}

/// Canonical text form: terms grouped by the power of `T` in ascending
/// order; a group with several powers of `q` is parenthesized and written
/// with the highest `q` power first, e.g. `1 + (q-1)*T + T^2`.
impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut t_powers: Vec<u32> = self.coeffs.keys().map(|k| k.0).collect();
        t_powers.dedup();
        for et in t_powers {
            let group = self.t_coeff(et);
            let t_part = var_power("T", et);
            let terms: Vec<(u32, &BigInt)> = group.terms().collect();
            if terms.len() == 1 {
                let (eq, c) = terms[0];
                let neg = c.is_negative();
                let mag = c.abs();
                let mut factors = Vec::new();
                let q_part = var_power("q", eq);
                if !mag.is_one() || (q_part.is_empty() && t_part.is_empty()) {
                    factors.push(mag.to_string());
                }
                if !q_part.is_empty() {
                    factors.push(q_part);
                }
                if !t_part.is_empty() {
                    factors.push(t_part);
                }
                pieces.push((neg, factors.join("*")));
            } else {
                let inner = group.display_desc("q").replace(' ', "");
                let body = if t_part.is_empty() {
                    format!("({inner})")
                } else {
                    format!("({inner})*{t_part}")
                };
                pieces.push((false, body));
            }
        }
        let mut out = String::new();
        for (i, (neg, body)) in pieces.iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        f.write_str(&out)
    }
}

fn var_power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn render_terms(terms: &[(u32, BigInt)], power: impl Fn(u32) -> String) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        let p = power(*e);
        let body = match (mag.is_one(), p.is_empty()) {
            (_, true) => mag.to_string(),
            (true, false) => p,
            (false, false) => format!("{mag}*{p}"),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ParseError::Polynomial(format!("non-integer coefficient {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| ParseError::Polynomial(format!("{s:?}: {e}"))),
        other => Err(ParseError::Polynomial(format!("bad coefficient {other}"))),
    }
}

fn json_exponent(v: &Value) -> Result<u32, ParseError> {
    v.as_u64()
        .and_then(|e| u32::try_from(e).ok())
        .ok_or_else(|| ParseError::Polynomial(format!("bad exponent {v}")))
}

/// The unique polynomial of degree at most `degree_bound` through the first
/// `degree_bound + 1` points, checked for integrality and against every
/// remaining point. At least one surplus point is required.
pub fn interpolate(points: &[(BigInt, BigInt)], degree_bound: usize) -> Result<IntPoly1, PolyError> {
    let needed = degree_bound + 2;
    let mut xs_seen = std::collections::HashSet::new();
    let distinct = points.iter().filter(|(x, _)| xs_seen.insert(x.clone())).count();
    if points.len() < needed || distinct != points.len() {
        return Err(PolyError::TooFewPoints { needed, got: distinct.min(points.len()) });
    }
    let (fit, extra) = points.split_at(degree_bound + 1);

    // Newton divided differences over Q.
    let xs: Vec<BigRational> = fit.iter().map(|(x, _)| BigRational::from(x.clone())).collect();
    let mut dd: Vec<BigRational> = fit.iter().map(|(_, y)| BigRational::from(y.clone())).collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); dd.len()];
    for i in (0..dd.len()).rev() {
        // coeffs = coeffs * (t - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); dd.len()];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < next.len() {
                next[k + 1] += c;
            }
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    let mut poly = IntPoly1::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.denom().is_one() {
            return Err(PolyError::NonIntegralCoefficient { exponent: k, value: c.to_string() });
        }
        poly.add_term(k as u32, c.numer().clone());
    }
    for (x, y) in extra {
        let v = poly.eval(x);
        if &v != y {
            return Err(PolyError::ExtraPointMismatch {
                x: x.to_string(),
                y: y.to_string(),
                value: v.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Gaussian binomial `[n choose k]_t` by the Pascal recursion
/// `[n,k] = [n-1,k-1] + t^k [n-1,k]`.
pub fn gaussian_binomial(n: u32, k: u32) -> IntPoly1 {
    if k > n {
        return IntPoly1::zero();
    }
    let mut row = vec![IntPoly1::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let left = if j >= 1 { row[(j - 1) as usize].clone() } else { IntPoly1::zero() };
            let right = if j < m { row[j as usize].shift(j) } else { IntPoly1::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row[k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn t() -> IntPoly2 {
        IntPoly2::t()
    }
    fn q() -> IntPoly2 {
        IntPoly2::q()
    }
    fn one() -> IntPoly2 {
        IntPoly2::one()
    }

    #[test]
    fn ring_examples() {
        assert_eq!((&one() + &t()) * (&one() - &t()), &one() - &t().pow(2));
        let p = &one() + &(&q() * &t());
        assert_eq!(&p + &IntPoly2::zero(), p);
        let lhs = (&one() - &t()) * (&one() + &(&q() * &t()));
        assert_eq!(lhs.to_string(), "1 + (q-1)*T - q*T^2");
    }

    #[test]
    fn subst_examples() {
        // 1 + (q-1)T + T^2
        let p = IntPoly2::from_terms([(0, 0, 1), (1, 1, 1), (0, 1, -1), (0, 2, 1)]);
        let r = p.subst_all(&[SubstRule::NegQ, SubstRule::NegT]);
        assert_eq!(r.to_string(), "1 + (q+1)*T + T^2");
        let lin = &one() + &t();
        assert_eq!(lin.subst(SubstRule::PowT(2)).to_string(), "1 + T^2");
        assert_eq!(lin.subst(SubstRule::QPowT(1)).to_string(), "1 + q*T");
        assert_eq!(lin.subst(SubstRule::ScaleT(-1)), lin.subst(SubstRule::NegT));
        assert_eq!(lin.subst(SubstRule::ScaleT(1)), lin);
        assert_eq!(q().subst(SubstRule::PowQ(3)), q().pow(3));
    }

    #[test]
    fn reverse_examples() {
        let p = IntPoly2::from_terms([(0, 0, 1), (0, 1, -1), (0, 2, 1)]);
        assert_eq!(p.reverse_t(2).unwrap(), p);
        let lin = &one() + &(&q() * &t());
        assert_eq!(lin.reverse_t(1).unwrap(), &q() + &t());
        assert_eq!(one().reverse_t(3).unwrap(), t().pow(3));
        assert_eq!(
            t().pow(3).reverse_t(2),
            Err(PolyError::DegreeExceeded { degree: 3, bound: 2 })
        );
    }

    #[test]
    fn eval_examples() {
        let p = IntPoly2::from_terms([(0, 0, 1), (1, 1, 1), (0, 1, -1), (0, 2, 1)]);
        assert_eq!(p.eval_q(&bi(3)), IntPoly1::from_coeffs([1, 2, 1]));
        let lin = &one() - &t();
        assert_eq!(lin.eval_q(&bi(17)), IntPoly1::from_coeffs([1, -1]));
        assert_eq!((&q() * &t()).eval_q(&bi(-3)), IntPoly1::from_coeffs([0, -3]));
    }

    #[test]
    fn interpolation_examples() {
        let pts = [(bi(3), bi(4)), (bi(5), bi(6)), (bi(7), bi(8))];
        assert_eq!(interpolate(&pts, 1).unwrap(), IntPoly1::from_coeffs([1, 1]));
        let pts = [(bi(3), bi(1)), (bi(5), bi(1))];
        assert_eq!(interpolate(&pts, 0).unwrap(), IntPoly1::one());
    }

    #[test]
    fn interpolation_errors() {
        let pts = [(bi(3), bi(4)), (bi(5), bi(6)), (bi(7), bi(9))];
        assert!(matches!(interpolate(&pts, 1), Err(PolyError::ExtraPointMismatch { .. })));
        let pts = [(bi(0), bi(0)), (bi(2), bi(1)), (bi(4), bi(2))];
        assert!(matches!(interpolate(&pts, 1), Err(PolyError::NonIntegralCoefficient { .. })));
        let pts = [(bi(3), bi(4)), (bi(5), bi(6))];
        assert!(matches!(interpolate(&pts, 1), Err(PolyError::TooFewPoints { .. })));
        let pts = [(bi(3), bi(4)), (bi(3), bi(4)), (bi(5), bi(6))];
        assert!(matches!(interpolate(&pts, 1), Err(PolyError::TooFewPoints { .. })));
    }

    #[test]
    fn display_forms() {
        assert_eq!(IntPoly1::from_coeffs([1, 1]).to_string(), "t + 1");
        assert_eq!(IntPoly1::from_coeffs([1, 4, 1]).display_asc("T"), "1 + 4*T + T^2");
        assert_eq!(IntPoly1::zero().to_string(), "0");
        let p = IntPoly2::from_terms([(0, 0, 1), (0, 1, -1), (0, 2, 1)]);
        assert_eq!(p.to_string(), "1 - T + T^2");
        assert_eq!((-&t()).to_string(), "-T");
        assert_eq!(IntPoly2::from_terms([(2, 0, -3)]).to_string(), "-3*q^2");
        assert_eq!(p.to_latex(), "1 - T + T^{2}");
    }

    #[test]
    fn json_round_trip() {
        let p = IntPoly2::from_terms([(0, 0, 1), (1, 1, 1), (0, 1, -1), (0, 2, 1)]);
        let v = p.to_json();
        assert_eq!(v.to_string(), "[[0,0,1],[0,1,-1],[1,1,1],[0,2,1]]");
        assert_eq!(IntPoly2::from_json(&v).unwrap(), p);
        let big = IntPoly1::monomial(BigInt::from(10u8).pow(30u32), 2);
        assert_eq!(IntPoly1::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1), IntPoly1::from_coeffs([1, 1]));
        assert_eq!(gaussian_binomial(4, 2), IntPoly1::from_coeffs([1, 1, 2, 1, 1]));
        assert!(gaussian_binomial(2, 3).is_zero());
    }

    fn arb_poly2() -> impl Strategy<Value = IntPoly2> {
        proptest::collection::vec((0u32..5, 0u32..4, -4i64..5), 0..6)
            .prop_map(IntPoly2::from_terms)
    }

    fn arb_rule() -> impl Strategy<Value = SubstRule> {
        prop_oneof![
            Just(SubstRule::NegT),
            Just(SubstRule::NegQ),
            Just(SubstRule::ScaleT(-1)),
            Just(SubstRule::ScaleT(1)),
            (0u32..3).prop_map(SubstRule::QPowT),
            (1u32..4).prop_map(SubstRule::PowT),
            (1u32..4).prop_map(SubstRule::PowQ),
        ]
    }

    proptest! {
        #[test]
        fn subst_is_ring_homomorphism(a in arb_poly2(), b in arb_poly2(), rule in arb_rule()) {
            prop_assert_eq!((&a * &b).subst(rule), &a.subst(rule) * &b.subst(rule));
            prop_assert_eq!((&a + &b).subst(rule), &a.subst(rule) + &b.subst(rule));
        }

        #[test]
        fn neg_t_is_involution(a in arb_poly2()) {
            prop_assert_eq!(a.subst(SubstRule::NegT).subst(SubstRule::NegT), a);
        }

        #[test]
        fn reverse_twice_is_identity(a in arb_poly2(), extra in 0u32..3) {
            let d = a.t_degree().unwrap_or(0) + extra;
            prop_assert_eq!(a.reverse_t(d).unwrap().reverse_t(d).unwrap(), a);
        }

        #[test]
        fn ring_axioms(a in arb_poly2(), b in arb_poly2(), c in arb_poly2()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn interpolation_reproduces_points(coeffs in proptest::collection::vec(-20i64..20, 1..5)) {
            let p = IntPoly1::from_coeffs(coeffs.clone());
            let d = coeffs.len() - 1;
            let pts: Vec<_> = (0..d + 2).map(|i| {
                let x = BigInt::from(2 * i as i64 + 3);
                let y = p.eval(&x);
                (x, y)
            }).collect();
            let fit = interpolate(&pts, d).unwrap();
            for (x, y) in &pts {
                prop_assert_eq!(&fit.eval(x), y);
            }
            prop_assert_eq!(fit, p);
        }
    }
}
