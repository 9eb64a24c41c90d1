//! Expressions in `w = q^{s/2}` and `x = q^{1/2}` and their normalized
//! derivatives `D = (1/log q) d/ds` at `s = 0`.
//!
//! `D(w) = w/2` and `D(x) = 0`, so `D^r w^k |_{s=0} = (k/2)^r`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{XPoly, XRat};
use crate::error::AnalyticError;

/// `Σ c · w^{a} x^{b}` with rational `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SExp {
    coeffs: BTreeMap<(i64, i64), BigRational>,
}

impl SExp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0, 0)
    }

    /// `c · w^{w_exp} x^{x_exp}`.
    pub fn monomial(c: BigRational, w_exp: i64, x_exp: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w_exp, x_exp, c);
        e
    }

    pub fn int_monomial(c: i64, w_exp: i64, x_exp: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), w_exp, x_exp)
    }

    /// `w^{w_exp} x^{x_exp}`, i.e. `q^{(w_exp/2) s + x_exp/2}`.
    pub fn wx(w_exp: i64, x_exp: i64) -> Self {
        Self::int_monomial(1, w_exp, x_exp)
    }

    /// Embeds a Laurent polynomial in `x`.
    pub fn from_x(p: &XPoly) -> Self {
        let mut e = Self::zero();
        for (x, c) in p.terms() {
            e.add_term(0, x, c.clone());
        }
        e
    }

    pub fn add_term(&mut self, w_exp: i64, x_exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((w_exp, x_exp)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(w_exp, x_exp));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigRational)> {
        self.coeffs.iter().map(|((w, x), c)| (*w, *x, c))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SExp { coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The derivation `D`: `w^a x^b ↦ (a/2) w^a x^b`.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero();
        for ((w, x), c) in &self.coeffs {
            out.add_term(*w, *x, c * BigRational::new(BigInt::from(*w), BigInt::from(2)));
        }
        out
    }

    /// Coefficients of each power of `w`.
    pub fn by_w(&self) -> BTreeMap<i64, XPoly> {
        let mut out: BTreeMap<i64, XPoly> = BTreeMap::new();
        for ((w, x), c) in &self.coeffs {
            out.entry(*w).or_default().add_term(*x, c.clone());
        }
        out
    }

    /// `D^j` of this expression at `s = 0`, for `j = 0..=r`.
    pub fn moments(&self, r: usize) -> Vec<XPoly> {
        let groups = self.by_w();
        (0..=r)
            .map(|j| {
                let mut acc = XPoly::zero();
                for (w, p) in &groups {
                    let factor = BigRational::new(BigInt::from(*w), BigInt::from(2));
                    acc = &acc + &p.scale(&num_traits::Pow::pow(factor, j as u32));
                }
                acc
            })
            .collect()
    }

    /// Value at `s = 0`.
    pub fn at_center(&self) -> XPoly {
        self.moments(0).pop().expect("one moment")
    }

    /// `s ↦ -s`, i.e. `w ↦ w^{-1}`.
    pub fn reflect(&self) -> Self {
        SExp { coeffs: self.coeffs.iter().map(|((w, x), c)| ((-w, *x), c.clone())).collect() }
    }

    pub fn is_even(&self) -> bool {
        self.reflect() == *self
    }

    /// `s ↦ s + 1/2`: `w^{2j} ↦ w^{2j} x^j`. Odd powers of `w` would need
    /// `q^{1/4}` and are rejected.
    pub fn shift_half(&self) -> Result<Self, AnalyticError> {
        let mut out = Self::zero();
        for ((w, x), c) in &self.coeffs {
            if w % 2 != 0 {
                return Err(AnalyticError::ShiftNotRepresentable(*w));
            }
            out.add_term(*w, x + w / 2, c.clone());
        }
        Ok(out)
    }

    /// Exact division by `w - 1`, assuming the value at `w = 1` is zero.
    fn div_w_minus_one(&self) -> Self {
        // Synthetic division from the top power of w downwards.
        let groups = self.by_w();
        let (Some(&lo), Some(&hi)) = (groups.keys().next(), groups.keys().next_back()) else {
            return Self::zero();
        };
        let mut out = Self::zero();
        let mut carry = XPoly::zero();
        for k in (lo + 1..=hi).rev() {
            carry = &carry + &groups.get(&k).cloned().unwrap_or_default();
            for (x, c) in carry.terms() {
                out.add_term(k - 1, x, c.clone());
            }
        }
        debug_assert!((&carry + &groups.get(&lo).cloned().unwrap_or_default()).is_zero());
        out
    }
}

impl Add for &SExp {
    type Output = SExp;
    fn add(self, rhs: &SExp) -> SExp {
        let mut out = self.clone();
        for ((w, x), c) in &rhs.coeffs {
            out.add_term(*w, *x, c.clone());
        }
        out
    }
}

impl Sub for &SExp {
    type Output = SExp;
    fn sub(self, rhs: &SExp) -> SExp {
        let mut out = self.clone();
        for ((w, x), c) in &rhs.coeffs {
            out.add_term(*w, *x, -c);
        }
        out
    }
}

impl Mul for &SExp {
    type Output = SExp;
    fn mul(self, rhs: &SExp) -> SExp {
        let mut out = SExp::zero();
        for ((wa, xa), ca) in &self.coeffs {
            for ((wb, xb), cb) in &rhs.coeffs {
                out.add_term(wa + wb, xa + xb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SExp {
    type Output = SExp;
    fn neg(self) -> SExp {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for SExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((w, x), c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*w^({w})*x^({x})")?;
        }
        Ok(())
    }
}

/// A quotient of two products of [`SExp`]s. Identical factors cancel on
/// multiplication, and sums share common denominator factors. Construction
/// never fails; only evaluation at `s = 0` can hit a pole.
#[derive(Clone, Debug)]
pub struct SRat {
    num: Vec<SExp>,
    den: Vec<SExp>,
}

fn product(factors: &[SExp]) -> SExp {
    match factors.split_first() {
        None => SExp::one(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, f| &acc * f),
    }
}

/// Splits off the factors common to both lists (as multisets).
fn split_common(a: &[SExp], b: &[SExp]) -> (Vec<SExp>, Vec<SExp>, Vec<SExp>) {
    let mut rest_b: Vec<SExp> = b.to_vec();
    let mut common = Vec::new();
    let mut rest_a = Vec::new();
    for f in a {
        if let Some(i) = rest_b.iter().position(|g| g == f) {
            common.push(rest_b.swap_remove(i));
        } else {
            rest_a.push(f.clone());
        }
    }
    (common, rest_a, rest_b)
}

impl SRat {
    fn from_factors(num: Vec<SExp>, den: Vec<SExp>) -> Self {
        if num.iter().any(SExp::is_zero) {
            return SRat { num: vec![SExp::zero()], den: Vec::new() };
        }
        let one = SExp::one();
        let (_, num, den) = split_common(&num, &den);
        SRat { num: num.into_iter().filter(|f| *f != one).collect(), den: den.into_iter().filter(|f| *f != one).collect() }
    }

    pub fn new(num: SExp, den: SExp) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_factors(vec![num], vec![den])
    }

    pub fn from_sexp(num: SExp) -> Self {
        Self::from_factors(vec![num], Vec::new())
    }

    /// The expanded numerator.
    pub fn num(&self) -> SExp {
        product(&self.num)
    }

    /// The expanded denominator.
    pub fn den(&self) -> SExp {
        product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().any(SExp::is_zero)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        SRat { num: self.den.clone(), den: self.num.clone() }
    }

    pub fn reflect(&self) -> Self {
        SRat { num: self.num.iter().map(SExp::reflect).collect(), den: self.den.iter().map(SExp::reflect).collect() }
    }

    pub fn shift_half(&self) -> Result<Self, AnalyticError> {
        let num = self.num.iter().map(SExp::shift_half).collect::<Result<_, _>>()?;
        let den = self.den.iter().map(SExp::shift_half).collect::<Result<_, _>>()?;
        Ok(SRat { num, den })
    }

    /// Invariance under `s ↦ -s`, checked by cross-multiplication.
    pub fn is_even(&self) -> bool {
        *self == self.reflect()
    }

    /// Expands, then cancels common factors `w - 1` until the denominator is
    /// nonzero at `s = 0`.
    pub fn reduce_at_center(&self) -> Result<Self, AnalyticError> {
        let mut num = self.num();
        let mut den = self.den();
        while den.at_center().is_zero() {
            if !num.at_center().is_zero() {
                return Err(AnalyticError::PoleAtCenter);
            }
            if num.is_zero() {
                return Ok(SRat::from_sexp(num));
            }
            num = num.div_w_minus_one();
            den = den.div_w_minus_one();
        }
        Ok(SRat { num: vec![num], den: vec![den] })
    }

    /// `D` by the quotient rule.
    pub fn derive(&self) -> Self {
        let (n, d) = (self.num(), self.den());
        let num = &(&n.derive() * &d) - &(&n * &d.derive());
        SRat::from_factors(vec![num], vec![d.clone(), d])
    }

    /// Value at `s = 0`.
    pub fn at_center(&self) -> Result<XRat, AnalyticError> {
        let red = self.reduce_at_center()?;
        Ok(XRat::new(red.num().at_center(), red.den().at_center()))
    }
}

impl PartialEq for SRat {
    fn eq(&self, other: &Self) -> bool {
        let lhs: Vec<SExp> = self.num.iter().chain(&other.den).cloned().collect();
        let rhs: Vec<SExp> = other.num.iter().chain(&self.den).cloned().collect();
        let (_, lhs, rhs) = split_common(&lhs, &rhs);
        product(&lhs) == product(&rhs)
    }
}

impl Add for &SRat {
    type Output = SRat;
    fn add(self, rhs: &SRat) -> SRat {
        let (common, a_rest, b_rest) = split_common(&self.den, &rhs.den);
        let num = &(&self.num() * &product(&b_rest)) + &(&rhs.num() * &product(&a_rest));
        let den = common.into_iter().chain(a_rest).chain(b_rest).collect();
        SRat::from_factors(vec![num], den)
    }
}

impl Mul for &SRat {
    type Output = SRat;
    fn mul(self, rhs: &SRat) -> SRat {
        SRat::from_factors(
            self.num.iter().chain(&rhs.num).cloned().collect(),
            self.den.iter().chain(&rhs.den).cloned().collect(),
        )
    }
}

impl Mul<&SExp> for &SRat {
    type Output = SRat;
    fn mul(self, rhs: &SExp) -> SRat {
        self * &SRat::from_sexp(rhs.clone())
    }
}

fn binomial(n: usize, k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

/// `D^r f` at `s = 0`.
///
/// With `N_j`, `M_j` the moments of numerator and denominator and
/// `f_j = D^j f(0)`, Leibniz gives `N_j = Σ_i C(j,i) f_i M_{j-i}`. Clearing
/// denominators, `H_j = f_j M_0^{j+1}` satisfies
/// `H_j = N_j M_0^j - Σ_{i<j} C(j,i) H_i M_{j-i} M_0^{j-i-1}`.
pub fn normalized_derivative(f: &SRat, r: usize) -> Result<XRat, AnalyticError> {
    let red = f.reduce_at_center()?;
    let n = red.num().moments(r);
    let m = red.den().moments(r);
    let m0_pows: Vec<XPoly> = {
        let mut v = vec![XPoly::one()];
        for j in 1..=r + 1 {
            v.push(&v[j - 1] * &m[0]);
        }
        v
    };
    let mut h: Vec<XPoly> = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let mut acc = &n[j] * &m0_pows[j];
        for (i, hi) in h.iter().enumerate() {
            let term = (&(hi * &m[j - i]) * &m0_pows[j - i - 1]).scale(&binomial(j, i));
            acc = &acc - &term;
        }
        h.push(acc);
    }
    Ok(XRat::new(h[r].clone(), m0_pows[r + 1].clone()))
}

/// `D^r f` at `s = 0` by repeated quotient-rule differentiation; slower
/// than [`normalized_derivative`] and kept as an independent route.
pub fn normalized_derivative_quotient_rule(f: &SRat, r: usize) -> Result<XRat, AnalyticError> {
    let mut g = f.reduce_at_center()?;
    for _ in 0..r {
        g = g.derive();
    }
    g.at_center()
}
