//! Curve and bundle data feeding the analytic formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::laurent::XPoly;
use crate::density::GlobalPlaceData;
use crate::error::{AnalyticError, Error, ParseError, Result};
use crate::finitemod::odd_prime_power;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawCurve {
    q: u64,
    deg_omega: i64,
    #[serde(rename = "L_eta")]
    l_eta: Vec<i64>,
    zeta_num: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    similitude_shift: Option<i64>,
}

/// L-polynomial data of the base curve `X` and of the double cover.
///
/// `L(s, η) = Σ ℓ_j q^{-js}` and `ζ_X(s) = Σ p_j q^{-js} / ((1 - q^{-s})(1 - q^{1-s}))`.
/// Coefficients past the middle are stored as `x^{n - 2j} · ℓ_j` (`x = q^{1/2}`),
/// so the functional equation holds symbolically in `x` and not only at the
/// numeric `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveData {
    q: u64,
    deg_omega: i64,
    l_eta: Vec<i64>,
    zeta_num: Vec<i64>,
    similitude_shift: i64,
    l_sym: Vec<XPoly>,
    zeta_sym: Vec<XPoly>,
}

fn invalid(msg: String) -> AnalyticError {
    AnalyticError::InvalidCurve(msg)
}

/// Whether `c_{n-j} = q^{n/2 - j} c_j` for all `j`, with `n = coeffs.len() - 1`.
fn satisfies_fe(q: u64, coeffs: &[i64]) -> Option<usize> {
    let n = coeffs.len() - 1;
    let q = BigInt::from(q);
    (0..=n / 2).find(|&j| BigInt::from(coeffs[n - j]) != Pow::pow(&q, n / 2 - j) * coeffs[j])
}

fn lift(coeffs: &[i64], symbolic: bool) -> Vec<XPoly> {
    let n = coeffs.len() - 1;
    (0..=n)
        .map(|i| {
            if symbolic && 2 * i > n {
                let j = n - i;
                XPoly::monomial(BigRational::from_integer(coeffs[j].into()), (n - 2 * j) as i64)
            } else {
                XPoly::from_int(coeffs[i])
            }
        })
        .collect()
}

impl CurveData {
    pub fn new(q: u64, deg_omega: i64, l_eta: Vec<i64>, zeta_num: Vec<i64>) -> Result<Self, AnalyticError> {
        if odd_prime_power(q).is_none() {
            return Err(invalid(format!("q = {q} is not an odd prime power")));
        }
        if deg_omega < 0 || deg_omega % 2 != 0 {
            return Err(invalid(format!("deg_omega = {deg_omega} must be even and nonnegative")));
        }
        if l_eta.len() as i64 != deg_omega + 1 {
            return Err(invalid(format!(
                "L_eta has {} coefficients, expected deg_omega + 1 = {}",
                l_eta.len(),
                deg_omega + 1
            )));
        }
        if l_eta[0] != 1 {
            return Err(invalid(format!("L_eta must start with 1, found {}", l_eta[0])));
        }
        if let Some(j) = satisfies_fe(q, &l_eta) {
            let n = l_eta.len() - 1;
            return Err(invalid(format!(
                "L_eta fails the functional equation at j = {j}: l_{} = {} but q^{} * l_{j} = {}",
                n - j,
                l_eta[n - j],
                n / 2 - j,
                Pow::pow(BigInt::from(q), n / 2 - j) * l_eta[j]
            )));
        }
        if zeta_num.first() != Some(&1) {
            return Err(invalid("zeta_num must be nonempty and start with 1".into()));
        }
        let zeta_fe = zeta_num.len() as i64 == deg_omega + 3 && satisfies_fe(q, &zeta_num).is_none();
        Ok(CurveData {
            q,
            deg_omega,
            l_sym: lift(&l_eta, true),
            zeta_sym: lift(&zeta_num, zeta_fe),
            l_eta,
            zeta_num,
            similitude_shift: 0,
        })
    }

    /// Adds `shift` to `deg ω_X` wherever it multiplies `s` or a rank.
    /// The L-data checks keep using the unshifted degree. Nothing in this
    /// crate verifies identities with a nonzero shift.
    pub fn with_similitude_shift(mut self, shift: i64) -> Self {
        self.similitude_shift = shift;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCurve = serde_json::from_str(text).map_err(|e| ParseError::Input(e.to_string()))?;
        let c = CurveData::new(raw.q, raw.deg_omega, raw.l_eta, raw.zeta_num)?;
        Ok(c.with_similitude_shift(raw.similitude_shift.unwrap_or(0)))
    }

    pub fn to_json(&self) -> String {
        let raw = RawCurve {
            q: self.q,
            deg_omega: self.deg_omega,
            l_eta: self.l_eta.clone(),
            zeta_num: self.zeta_num.clone(),
            similitude_shift: (self.similitude_shift != 0).then_some(self.similitude_shift),
        };
        serde_json::to_string(&raw).expect("curve data serializes")
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn deg_omega(&self) -> i64 {
        self.deg_omega
    }

    /// `deg ω_X` plus the similitude shift.
    pub fn effective_deg_omega(&self) -> i64 {
        self.deg_omega + self.similitude_shift
    }

    pub fn l_eta(&self) -> &[i64] {
        &self.l_eta
    }

    pub fn zeta_num(&self) -> &[i64] {
        &self.zeta_num
    }

    pub(crate) fn l_sym(&self) -> &[XPoly] {
        &self.l_sym
    }

    pub(crate) fn zeta_sym(&self) -> &[XPoly] {
        &self.zeta_sym
    }

    /// The genus-one curve with trivial cover L-function and
    /// `P_X(u) = 1 + a u + q u^2`.
    pub fn genus_one(q: u64, a: i64) -> Result<Self, AnalyticError> {
        CurveData::new(q, 0, vec![1], vec![1, a, q as i64])
    }
}

/// A vector bundle on the double cover, recorded through its rank and
/// degree, optionally with the place data of the cokernel of its Hermitian
/// map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleData {
    pub rank: u32,
    pub deg: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub places: Option<GlobalPlaceData>,
}

impl BundleData {
    /// A bundle without place data.
    pub fn bare(rank: u32, deg: i64) -> Self {
        BundleData { rank, deg, places: None }
    }

    /// The bundle of rank `rank` whose `d(E)` matches the places.
    pub fn from_places(curve: &CurveData, rank: u32, places: GlobalPlaceData) -> Self {
        let deg = rank as i64 * curve.effective_deg_omega() - places.d() as i64;
        BundleData { rank, deg, places: Some(places) }
    }

    /// `d(E) = rank · deg ω_X - deg E`.
    pub fn d(&self, curve: &CurveData) -> i64 {
        self.rank as i64 * curve.effective_deg_omega() - self.deg
    }

    /// Checks `rank > 0` and, when places are attached, `d(E) = Σ |λ_v| deg v`
    /// and agreement of `q`.
    pub fn validate(&self, curve: &CurveData) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::PreconditionViolated("bundle rank must be positive".into()));
        }
        if let Some(p) = &self.places {
            p.validate()?;
            if p.q != curve.q() {
                return Err(Error::PreconditionViolated(format!(
                    "place data has q = {} but the curve has q = {}",
                    p.q,
                    curve.q()
                )));
            }
            if p.d() as i64 != self.d(curve) {
                return Err(Error::PreconditionViolated(format!(
                    "d(E) = {} but the places have total length {}",
                    self.d(curve),
                    p.d()
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ParseError::Input(e.to_string()).into())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bundle data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_equation_check() {
        for a in -2..=2 {
            assert!(CurveData::new(3, 2, vec![1, a, 3], vec![1, 0, 0, 0, 9]).is_ok());
        }
        let err = CurveData::new(3, 2, vec![1, 0, 2], vec![1]).unwrap_err();
        assert!(matches!(err, AnalyticError::InvalidCurve(ref m) if m.contains("functional equation")));
        assert!(CurveData::new(3, 2, vec![2, 0, 6], vec![1]).is_err());
        assert!(CurveData::new(3, 1, vec![1, 1], vec![1]).is_err());
        assert!(CurveData::new(9, 4, vec![1, 1, 1, 9, 81], vec![1]).is_ok());
        assert!(CurveData::new(9, 4, vec![1, 1, 1, 9, 80], vec![1]).is_err());
        assert!(CurveData::new(4, 0, vec![1], vec![1]).is_err());
    }

    #[test]
    fn symbolic_lift() {
        let c = CurveData::new(5, 2, vec![1, 2, 5], vec![1, 1, 3, 5, 25]).unwrap();
        assert_eq!(c.l_sym()[2], XPoly::q_pow(1));
        assert_eq!(c.l_sym()[1], XPoly::from_int(2));
        assert_eq!(c.zeta_sym()[3], XPoly::q_pow(1));
        assert_eq!(c.zeta_sym()[4], XPoly::q_pow(2));
        // A zeta numerator without the functional equation stays literal.
        let c = CurveData::new(5, 0, vec![1], vec![1, 7]).unwrap();
        assert_eq!(c.zeta_sym()[1], XPoly::from_int(7));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"q":3,"deg_omega":2,"L_eta":[1,2,3],"zeta_num":[1,0,1,0,9]}"#;
        let c = CurveData::from_json(text).unwrap();
        assert_eq!(c.to_json(), text);
        assert_eq!(CurveData::from_json(&c.to_json()).unwrap(), c);
        let bad = r#"{"q":3,"deg_omega":2,"L_eta":[1,2,4],"zeta_num":[1]}"#;
        assert!(matches!(CurveData::from_json(bad), Err(Error::Analytic(AnalyticError::InvalidCurve(_)))));
        assert!(matches!(CurveData::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn bundle_consistency() {
        let c = CurveData::genus_one(3, 1).unwrap();
        let places = GlobalPlaceData::from_json(r#"{"q":3,"places":[{"deg":1,"kind":"inert","type":"1"}]}"#).unwrap();
        let e = BundleData::from_places(&c, 1, places.clone());
        assert_eq!(e.d(&c), 1);
        assert!(e.validate(&c).is_ok());
        let wrong = BundleData { rank: 1, deg: 0, places: Some(places) };
        assert!(wrong.validate(&c).is_err());
        let e2 = BundleData::from_json(&e.to_json()).unwrap();
        assert_eq!(e2, e);
    }
}
