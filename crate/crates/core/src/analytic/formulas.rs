//! Eisenstein coefficients and the derivative formulas built on them.
//!
//! Throughout, `w = q^{s/2}` and `x = q^{1/2}`, so `q^{as+b} = w^{2a} x^{2b}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::curve::{BundleData, CurveData};
use super::laurent::{XPoly, XRat};
use super::sexp::{normalized_derivative, SExp, SRat};
use crate::density::{den_global, GlobalPlaceData};
use crate::error::{AnalyticError, Error, Result};
use crate::exactpoly::IntPoly2;

/// Which power of `η` the central character `χ_0` is, relative to the
/// rank `m` of the Eisenstein series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chi0 {
    /// `χ_0 = η^m`; pairs with the untwisted density.
    EtaM,
    /// `χ_0 = η^{m+1}`; pairs with the twisted density.
    EtaMPlus1,
}

impl Chi0 {
    /// The same character seen from rank `m - 1`.
    pub fn drop_rank(self) -> Chi0 {
        match self {
            Chi0::EtaM => Chi0::EtaMPlus1,
            Chi0::EtaMPlus1 => Chi0::EtaM,
        }
    }
}

fn mono(w: i64, x: i64) -> SExp {
    SExp::wx(w, x)
}

fn x_times(p: &XPoly, w: i64, x: i64) -> SExp {
    let mut e = SExp::zero();
    for (k, c) in p.terms() {
        e.add_term(w, k + x, c.clone());
    }
    e
}

/// Substitutes `T ↦ x^{tx} w^{tw}` and `q ↦ x^2`.
pub fn from_density(p: &IntPoly2, tx: i64, tw: i64) -> SExp {
    let mut e = SExp::zero();
    for (e_q, e_t, c) in p.terms() {
        let e_t = e_t as i64;
        e.add_term(tw * e_t, 2 * e_q as i64 + tx * e_t, BigRational::from_integer(c.clone()));
    }
    e
}

/// `L(slope · s + c, η) = Σ ℓ_j q^{-j(slope · s + c)}`.
pub fn l_eta_shift(curve: &CurveData, c: i64, slope: i64) -> SExp {
    let mut e = SExp::zero();
    for (j, l) in curve.l_sym().iter().enumerate() {
        let j = j as i64;
        e = &e + &x_times(l, -2 * j * slope, -2 * j * c);
    }
    e
}

/// `ζ_X(slope · s + c)`.
pub fn zeta_shift(curve: &CurveData, c: i64, slope: i64) -> SRat {
    let mut num = SExp::zero();
    for (j, p) in curve.zeta_sym().iter().enumerate() {
        let j = j as i64;
        num = &num + &x_times(p, -2 * j * slope, -2 * j * c);
    }
    let f1 = &SExp::one() - &mono(-2 * slope, -2 * c);
    let f2 = &SExp::one() - &mono(-2 * slope, 2 - 2 * c);
    SRat::new(num, &f1 * &f2)
}

/// `𝓛_m(s, χ_0) = ∏_{i=1}^m L(2s + i, η^{i-m} χ_0)`; the factor is `ζ_X`
/// when the character exponent is even and `L(·, η)` when it is odd.
pub fn script_l(curve: &CurveData, m: u32, chi0: Chi0) -> SRat {
    let mut acc = SRat::from_sexp(SExp::one());
    for i in 1..=m as i64 {
        let exponent = match chi0 {
            Chi0::EtaM => i,
            Chi0::EtaMPlus1 => i + 1,
        };
        let factor = if exponent % 2 == 0 {
            zeta_shift(curve, i, 2)
        } else {
            SRat::from_sexp(l_eta_shift(curve, i, 2))
        };
        acc = &acc * &factor;
    }
    acc
}

fn places_of<'a>(e: &'a BundleData, curve: &CurveData) -> Result<&'a GlobalPlaceData> {
    e.validate(curve)?;
    e.places
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolated("bundle has no place data attached".into()))
}

fn check_rank(e: &BundleData, rank: u32, what: &str) -> Result<()> {
    if e.rank != rank {
        return Err(Error::PreconditionViolated(format!("{what} must have rank {rank}, found {}", e.rank)));
    }
    Ok(())
}

/// The `(E, a)`-Fourier coefficient of the rank-`m` Eisenstein series:
/// `q^{(s - m/2) d(E)} q^{-ms deg ω} / 𝓛_m(s, χ_0)` times `Den(q^{-2s}, E)`
/// for `χ_0 = η^m` or `Den_η(q^{-2s}, E)` for `χ_0 = η^{m+1}`.
pub fn eisenstein_coeff(curve: &CurveData, e: &BundleData, m: u32, chi0: Chi0) -> Result<SRat> {
    if m == 0 {
        return Err(Error::PreconditionViolated("Eisenstein rank must be positive".into()));
    }
    check_rank(e, m, "the bundle")?;
    let places = places_of(e, curve)?;
    let d = e.d(curve);
    let m = m as i64;
    let prefactor = mono(2 * d - 2 * m * curve.effective_deg_omega(), -m * d);
    let den = from_density(&den_global(places, chi0 == Chi0::EtaMPlus1), 0, -4);
    Ok(&script_l(curve, m as u32, chi0).recip() * &(&prefactor * &den))
}

/// `Λ(s, E) = q^{-s d(E)} L(-2s, η) Den_η(q^{2s+1}, E)`.
pub fn lambda_fn(curve: &CurveData, e: &BundleData) -> Result<SExp> {
    let places = places_of(e, curve)?;
    let d = e.d(curve);
    let den = from_density(&den_global(places, true), 2, 4);
    Ok(&(&mono(-2 * d, 0) * &l_eta_shift(curve, 0, -2)) * &den)
}

/// `Λ(s, E)` rebuilt from the rank-`(n-1)` Eisenstein coefficient with
/// `n = rank(E) + 1`:
/// `q^{(n/2) d} q^{[n/2 + (n+1)s] deg ω} 𝓛_n(s, η^n) E_{(E,a)}(s + 1/2, χ)_{n-1}`.
pub fn lambda_via_eisenstein(curve: &CurveData, e: &BundleData) -> Result<SRat> {
    let n = e.rank as i64 + 1;
    let d = e.d(curve);
    let dw = curve.effective_deg_omega();
    let eis = eisenstein_coeff(curve, e, e.rank, Chi0::EtaMPlus1)?.shift_half()?;
    let pre = mono(2 * (n + 1) * dw, n * d + n * dw);
    Ok(&(&script_l(curve, n as u32, Chi0::EtaM) * &eis) * &pre)
}

/// The key-degree formula:
/// `2 D^r [q^{s d(E_0) + s d(E)} L(2s, η) Den_η(q^{1-2s}, E)]` for even `r`
/// and `0` for odd `r`.
pub fn key_degree_rhs(curve: &CurveData, e: &BundleData, e0: &BundleData, r: usize) -> Result<XRat> {
    check_rank(e0, 1, "E_0")?;
    let places = places_of(e, curve)?;
    if r % 2 == 1 {
        return Ok(XRat::zero());
    }
    let d = e.d(curve);
    let d0 = e0.d(curve);
    let den = from_density(&den_global(places, true), 2, -4);
    let f = &(&mono(2 * (d0 + d), 0) * &l_eta_shift(curve, 0, 2)) * &den;
    Ok(normalized_derivative(&SRat::from_sexp(f), r)?.scale(&two()))
}

/// The off-center formula with `n = rank(E) + 1`:
/// `2 q^{(n/2)[d(E) + deg ω]} D^r [q^{ns deg ω + s deg E_0} 𝓛_n(s, η^n) E_{(E,a)}(s + 1/2, χ)_{n-1}]`
/// for even `r` and `0` for odd `r`.
pub fn off_center_rhs(curve: &CurveData, e: &BundleData, e0: &BundleData, r: usize) -> Result<XRat> {
    check_rank(e0, 1, "E_0")?;
    let n = e.rank as i64 + 1;
    let eis = eisenstein_coeff(curve, e, e.rank, Chi0::EtaMPlus1)?.shift_half()?;
    if r % 2 == 1 {
        return Ok(XRat::zero());
    }
    let dw = curve.effective_deg_omega();
    let f = &(&script_l(curve, n as u32, Chi0::EtaM) * &eis) * &mono(2 * (n * dw + e0.deg), 0);
    let outer = XPoly::monomial(BigRational::from_integer(BigInt::from(2)), n * (e.d(curve) + dw));
    Ok(&XRat::from_poly(outer) * &normalized_derivative(&f, r)?)
}

fn genus_drop_term(curve: &CurveData, e0: &BundleData, e_flat: &BundleData, m: u32, chi0: Chi0) -> Result<SRat> {
    let mi = m as i64;
    let eis = eisenstein_coeff(curve, e_flat, m - 1, chi0.drop_rank())?.shift_half()?;
    let pre = mono(2 * e0.deg + 2 * mi * curve.effective_deg_omega(), mi * e0.deg);
    Ok(&(&script_l(curve, m, chi0) * &eis) * &pre)
}

/// The corank-one coefficient `E_{(E,a)}(s, χ)_m` with `E_0 = ker a` and
/// `E^♭ = E / E_0`, defined through the genus-drop formula: `A(s) + A(-s)`
/// divided by `q^{ms deg ω} 𝓛_m(s, χ_0)`, where
/// `A(s) = q^{(m/2 + s) deg E_0} q^{ms deg ω} 𝓛_m(s, χ_0) E_{(E^♭,a^♭)}(s + 1/2, χ)_{m-1}`.
pub fn singular_coeff_via_genus_drop(
    curve: &CurveData,
    e0: &BundleData,
    e_flat: &BundleData,
    m: u32,
    chi0: Chi0,
) -> Result<SRat> {
    let numerator = genus_drop_sum(curve, e0, e_flat, m, chi0)?;
    let scale = &script_l(curve, m, chi0) * &mono(2 * m as i64 * curve.effective_deg_omega(), 0);
    Ok(&numerator * &scale.recip())
}

/// `A(s) + A(-s)` from [`singular_coeff_via_genus_drop`]; even in `s`.
pub fn genus_drop_sum(curve: &CurveData, e0: &BundleData, e_flat: &BundleData, m: u32, chi0: Chi0) -> Result<SRat> {
    if m < 2 {
        return Err(Error::PreconditionViolated("the genus-drop formula needs m >= 2".into()));
    }
    check_rank(e0, 1, "E_0")?;
    check_rank(e_flat, m - 1, "E^flat")?;
    let a = genus_drop_term(curve, e0, e_flat, m, chi0)?;
    Ok(&a + &a.reflect())
}

/// The corank-one formula with `n = rank(E^♭) + 1`:
/// `q^{(n/2) d(E)} D^r [q^{ns deg ω} 𝓛_n(s, η^n) E_{(E,a)}(s, χ)_n]`,
/// evaluated for every `r`.
pub fn corank_one_rhs(curve: &CurveData, e0: &BundleData, e_flat: &BundleData, r: usize) -> Result<XRat> {
    let n = e_flat.rank + 1;
    let singular = singular_coeff_via_genus_drop(curve, e0, e_flat, n, Chi0::EtaM)?;
    let f = &(&script_l(curve, n, Chi0::EtaM) * &singular)
        * &mono(2 * n as i64 * curve.effective_deg_omega(), 0);
    let d = e0.d(curve) + e_flat.d(curve);
    let outer = XPoly::monomial(BigRational::from_integer(BigInt::from(1)), n as i64 * d);
    Ok(&XRat::from_poly(outer) * &normalized_derivative(&f, r)?)
}

/// `2 D^r [q^{-s d(E_0)} Λ(s, E)]`, the common value of the even-`r`
/// formulas.
pub fn lambda_derivative(curve: &CurveData, e0: &BundleData, e: &BundleData, r: usize) -> Result<XRat> {
    check_rank(e0, 1, "E_0")?;
    let f = &mono(-2 * e0.d(curve), 0) * &lambda_fn(curve, e)?;
    Ok(normalized_derivative(&SRat::from_sexp(f), r)?.scale(&two()))
}

/// Both sides of the trace formula for `q^{s deg N} L(2s, η)`:
/// `Σ_m (-1)^m (deg N - 2m)^r · 2 e_m` with `e_m = (-1)^m ℓ_m`, and
/// `2 D^r [q^{s deg N} L(2s, η)]`.
pub fn trace_identity_check(
    curve: &CurveData,
    deg_n: i64,
    eta_n: i8,
    r: usize,
) -> std::result::Result<(XRat, XRat), AnalyticError> {
    let sign_r: i32 = if r.is_multiple_of(2) { 1 } else { -1 };
    if sign_r != eta_n as i32 {
        return Err(AnalyticError::ParityMismatch { sign_r, eta_n: eta_n as i32 });
    }
    let mut lhs = XPoly::zero();
    for (m, l) in curve.l_sym().iter().enumerate() {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let e_m = l.scale(&BigRational::from_integer(BigInt::from(sign)));
        let weight = num_traits::Pow::pow(BigInt::from(deg_n - 2 * m as i64), r as u32) * 2 * sign;
        lhs = &lhs + &e_m.scale(&BigRational::from_integer(weight));
    }
    let f = &mono(2 * deg_n, 0) * &l_eta_shift(curve, 0, 2);
    let rhs = normalized_derivative(&SRat::from_sexp(f), r)?.scale(&two());
    Ok((XRat::from_poly(lhs), rhs))
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}
