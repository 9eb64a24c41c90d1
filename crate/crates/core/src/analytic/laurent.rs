//! Laurent polynomials and rational functions in `x = q^{1/2}` over `Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `Σ c_e x^e` with `e ∈ Z`, `c_e ∈ Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `q^k = x^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), 2 * k)
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XPoly { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        XPoly { coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.values().next_back()
    }

    /// Value at `x = √q`, summing the even and odd powers exactly before
    /// the single rounding to `f64`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        let (even, odd) = self.eval_split(q as u64);
        even.to_f64().unwrap_or(f64::NAN) + odd.to_f64().unwrap_or(f64::NAN) * q.sqrt() + 0.0
    }

    /// `(E, O)` with value `E + O·√q`.
    fn eval_split(&self, q: u64) -> (BigRational, BigRational) {
        let q = BigRational::from_integer(BigInt::from(q));
        let mut even = BigRational::zero();
        let mut odd = BigRational::zero();
        for (e, c) in &self.coeffs {
            let k = e.div_euclid(2);
            let term = c * q.pow(k as i32);
            if e.rem_euclid(2) == 0 {
                even += term;
            } else {
                odd += term;
            }
        }
        (even, odd)
    }

    /// True when only even powers of `x` occur, i.e. this is a Laurent
    /// polynomial in `q`.
    pub fn is_in_q(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    fn render(&self, force_x: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (var, div) = if self.is_in_q() && !force_x { ("q", 2) } else { ("x", 1) };
        let terms: Vec<(&i64, &BigRational)> = self.coeffs.iter().collect();
        let mut out = String::new();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let k = e / div;
            let neg = c.is_negative();
            let mag = c.abs();
            let pow = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ if k < 0 => format!("{var}^({k})"),
                _ => format!("{var}^{k}"),
            };
            let mag_s = if mag.is_integer() { mag.to_integer().to_string() } else { format!("({mag})") };
            let body = match (mag.is_one(), pow.is_empty()) {
                (_, true) => mag_s,
                (true, false) => pow,
                (false, false) => format!("{mag_s}*{pow}"),
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

    /// Splits off `x^min` and returns the ordinary polynomial coefficients
    /// `[c_0, c_1, …]` of the rest.
    fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let v = (lo..=hi).map(|e| self.coeff(e)).collect();
        (lo, v)
    }

    fn from_dense(lo: i64, v: &[BigRational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in v.iter().enumerate() {
            p.add_term(lo + i as i64, c.clone());
        }
        p
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        self.scale(&-BigRational::one())
    }
}

// Dense polynomial helpers over Q, highest degree last.

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let k = r.len() - 1;
        let factor = &r[k] / lead;
        for i in 0..=db {
            let sub = &factor * &b[i];
            r[k - db + i] -= sub;
        }
        trim(&mut r);
    }
    r
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![BigRational::zero(); 1];
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let factor = &r[k] / &b[db];
        for i in 0..=db {
            let sub = &factor * &b[i];
            r[k - db + i] -= sub;
        }
        quot[k - db] = factor;
        r.pop();
        trim(&mut r);
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

fn monic(mut v: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut v);
    if let Some(lead) = v.last().cloned() {
        for c in v.iter_mut() {
            *c /= &lead;
        }
    }
    v
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = monic(a.to_vec());
    let mut y = monic(b.to_vec());
    while !y.is_empty() {
        let r = monic(poly_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// A rational function `num / den` in `x`, kept reduced: the denominator is
/// an ordinary polynomial with nonzero constant term and leading
/// coefficient 1, coprime to the numerator.
#[derive(Clone, Debug)]
pub struct XRat {
    num: XPoly,
    den: XPoly,
}

impl XRat {
    pub fn zero() -> Self {
        XRat { num: XPoly::zero(), den: XPoly::one() }
    }

    pub fn from_poly(p: XPoly) -> Self {
        XRat { num: p, den: XPoly::one() }
    }

    pub fn new(num: XPoly, den: XPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // Move the monomial part of the denominator into the numerator.
        let (dlo, dd) = den.to_dense();
        let (nlo, nd) = num.to_dense();
        let g = poly_gcd(&nd, &dd);
        let nd = poly_div_exact(&nd, &g);
        let dd = poly_div_exact(&dd, &g);
        let lead = dd.last().cloned().expect("nonzero denominator");
        let nd: Vec<BigRational> = nd.iter().map(|c| c / &lead).collect();
        let dd: Vec<BigRational> = dd.iter().map(|c| c / &lead).collect();
        XRat { num: XPoly::from_dense(nlo - dlo, &nd), den: XPoly::from_dense(0, &dd) }
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&XPoly> {
        (self.den == XPoly::one()).then_some(&self.num)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.num.eval_f64(q) / self.den.eval_f64(q) + 0.0
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        XRat::new(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for XRat {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for XRat {}

impl Add for &XRat {
    type Output = XRat;
    fn add(self, rhs: &XRat) -> XRat {
        XRat::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &XRat {
    type Output = XRat;
    fn sub(self, rhs: &XRat) -> XRat {
        XRat::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul for &XRat {
    type Output = XRat;
    fn mul(self, rhs: &XRat) -> XRat {
        XRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl XRat {
    /// Numerator and denominator rendered in the same variable: `q` when
    /// both are polynomials in `q = x^2`, `x` otherwise.
    pub fn render_parts(&self) -> (String, String) {
        let force_x = !(self.num.is_in_q() && self.den.is_in_q());
        (self.num.render(force_x), self.den.render(force_x))
    }
}

impl fmt::Display for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == XPoly::one() {
            return write!(f, "{}", self.num);
        }
        let (n, d) = self.render_parts();
        let wrap = |p: &XPoly, s: String| if p.coeffs.len() > 1 { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(&self.num, n), wrap(&self.den, d))
    }
}
