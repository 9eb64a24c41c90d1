//! Local and global density polynomials of Hermitian torsion modules.
//!
//! Local polynomials live in `Z[q, T]` with `q` the residue field size of
//! the base place. A place of degree `e` contributes its local polynomial
//! with `q → q^e`, `T → T^e`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::exactpoly::{IntPoly2, SubstRule};
use crate::finitemod::odd_prime_power;
use crate::partitions::Partition;
use crate::subcount::sub_poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Split,
    Inert,
}

impl PlaceKind {
    /// Value of the quadratic character at a uniformizer.
    pub fn eta(self) -> i8 {
        match self {
            PlaceKind::Split => 1,
            PlaceKind::Inert => -1,
        }
    }
}

impl std::str::FromStr for PlaceKind {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "split" | "+" => Ok(PlaceKind::Split),
            "inert" | "-" => Ok(PlaceKind::Inert),
            other => Err(ParseError::Input(format!("unknown place kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDatum {
    pub deg: u32,
    pub kind: PlaceKind,
    #[serde(rename = "type")]
    pub lambda: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalPlaceData {
    pub q: u64,
    pub places: Vec<LocalDatum>,
}

impl GlobalPlaceData {
    pub fn new(q: u64, places: Vec<LocalDatum>) -> Result<Self> {
        let g = GlobalPlaceData { q, places };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if odd_prime_power(self.q).is_none() {
            return Err(Error::PreconditionViolated(format!("q = {} is not an odd prime power", self.q)));
        }
        if self.places.iter().any(|p| p.deg == 0) {
            return Err(Error::PreconditionViolated("place degrees must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GlobalPlaceData =
            serde_json::from_str(text).map_err(|e| ParseError::Input(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("place data serializes")
    }

    /// `d = Σ_v |λ_v| deg(v)`, the `T`-degree of the global polynomial.
    pub fn d(&self) -> u32 {
        self.places.iter().map(|p| p.lambda.size() * p.deg).sum()
    }
}

/// `∏_{i=0}^{a-1} (1 - (εq)^i T)` for `ε = ±1`.
pub fn m_factor(eps: i8, a: u32) -> IntPoly2 {
    let mut acc = IntPoly2::one();
    for i in 0..a {
        let sign = if eps < 0 && i % 2 == 1 { 1 } else { -1 };
        let factor = IntPoly2::from_terms([(0, 0, BigInt::one()), (i, 1, BigInt::from(sign))]);
        acc = &acc * &factor;
    }
    acc
}

/// `Den⁺(q, λ, T) = Σ_a Sub_{a,λ}(q) T^a`.
pub fn den_split(lambda: &Partition) -> IntPoly2 {
    let mut out = IntPoly2::zero();
    for a in 0..=lambda.size() {
        for (e, c) in sub_poly(a as i64, lambda).terms() {
            out.add_term(e, a, c.clone());
        }
    }
    out
}

/// `Den⁻(q, λ, T) = Σ_a (-1)^a Sub_{a,λ}(-q) T^a`.
pub fn den_inert(lambda: &Partition) -> IntPoly2 {
    let mut out = IntPoly2::zero();
    for a in 0..=lambda.size() {
        for (e, c) in sub_poly(a as i64, lambda).terms() {
            let c = if (a + e) % 2 == 1 { -c } else { c.clone() };
            out.add_term(e, a, c);
        }
    }
    out
}

pub fn den_local(kind: PlaceKind, lambda: &Partition) -> IntPoly2 {
    match kind {
        PlaceKind::Split => den_split(lambda),
        PlaceKind::Inert => den_inert(lambda),
    }
}

/// `Den(η(ϖ) T)`: the twist flips the sign of `T` at inert places.
pub fn den_eta_local(kind: PlaceKind, lambda: &Partition) -> IntPoly2 {
    match kind {
        PlaceKind::Split => den_split(lambda),
        PlaceKind::Inert => den_inert(lambda).subst(SubstRule::NegT),
    }
}

/// Product over places of the (twisted) local polynomials, each
/// reparameterized by `q → q^deg`, `T → T^deg`.
pub fn den_global(g: &GlobalPlaceData, twisted: bool) -> IntPoly2 {
    g.places.iter().fold(IntPoly2::one(), |acc, place| {
        let local = if twisted {
            den_eta_local(place.kind, &place.lambda)
        } else {
            den_local(place.kind, &place.lambda)
        };
        let global = local.subst_all(&[SubstRule::PowQ(place.deg), SubstRule::PowT(place.deg)]);
        &acc * &global
    })
}

/// `(-1)^{Σ_{inert v} |λ_v|}`: the untwisted global polynomial satisfies
/// `Den(T) = defect · T^d Den(1/T)`.
pub fn functional_defect(g: &GlobalPlaceData) -> i8 {
    let inert: u32 = g
        .places
        .iter()
        .filter(|p| p.kind == PlaceKind::Inert)
        .map(|p| p.lambda.size())
        .sum();
    if inert.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_induction_pre(m: u32, lambda: &Partition, gap: u32) -> Result<()> {
    if m < lambda.largest() + gap || m < gap.max(1) {
        return Err(Error::PreconditionViolated(format!(
            "need m ≥ {} (largest part of {lambda} plus {gap}), got m = {m}",
            (lambda.largest() + gap).max(gap.max(1))
        )));
    }
    Ok(())
}

/// `T·Den⁺((m-1, λ)) + Den⁺(λ)(qT)`, which equals `Den⁺((m, λ))` for
/// `m ≥ λ₁`.
pub fn den_split_induction(m: u32, lambda: &Partition) -> Result<IntPoly2> {
    check_induction_pre(m, lambda, 0)?;
    let first = &IntPoly2::t() * &den_split(&lambda.insert_sorted(m - 1));
    let second = den_split(lambda).subst(SubstRule::QPowT(1));
    Ok(&first + &second)
}

/// `-T·Den⁻((m-1, λ)) + Den⁻(λ)(-qT)`, which equals `Den⁻((m, λ))` for
/// `m ≥ λ₁`.
pub fn den_inert_induction(m: u32, lambda: &Partition) -> Result<IntPoly2> {
    check_induction_pre(m, lambda, 0)?;
    let first = &IntPoly2::t() * &den_inert(&lambda.insert_sorted(m - 1));
    let second = den_inert(lambda).subst_all(&[SubstRule::QPowT(1), SubstRule::NegT]);
    Ok(&second - &first)
}

/// `T²·Den⁻((m-2, λ)) + (1-T)·Den⁻(λ)(-qT)`, valid for `m ≥ λ₁ + 1`.
pub fn den_inert_weak(m: u32, lambda: &Partition) -> Result<IntPoly2> {
    check_induction_pre(m, lambda, 1)?;
    if m < 2 {
        return Err(Error::PreconditionViolated(format!("need m ≥ 2, got m = {m}")));
    }
    let first = &IntPoly2::t().pow(2) * &den_inert(&lambda.insert_sorted(m - 2));
    let one_minus_t = &IntPoly2::one() - &IntPoly2::t();
    let second = &one_minus_t
        * &den_inert(lambda).subst_all(&[SubstRule::QPowT(1), SubstRule::NegT]);
    Ok(&first + &second)
}

/// `Den(q^{deg}, λ, T)` evaluated at the numeric residue size of `g`.
pub fn eval_global(g: &GlobalPlaceData, twisted: bool) -> crate::exactpoly::IntPoly1 {
    den_global(g, twisted).eval_q(&BigInt::from(g.q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(terms: &[(u32, u32, i64)]) -> IntPoly2 {
        IntPoly2::from_terms(terms.iter().copied())
    }

    fn place(deg: u32, kind: PlaceKind, lam: &str) -> LocalDatum {
        LocalDatum { deg, kind, lambda: p(lam) }
    }

    #[test]
    fn m_factor_examples() {
        assert_eq!(m_factor(1, 0), IntPoly2::one());
        assert_eq!(m_factor(-1, 2), poly(&[(0, 0, 1), (1, 1, 1), (0, 1, -1), (1, 2, -1)]));
        assert_eq!(m_factor(1, 2), poly(&[(0, 0, 1), (1, 1, -1), (0, 1, -1), (1, 2, 1)]));
    }

    #[test]
    fn split_examples() {
        assert_eq!(den_split(&p("1")).to_string(), "1 + T");
        assert_eq!(den_split(&p("1,1")).to_string(), "1 + (q+1)*T + T^2");
        assert_eq!(den_split(&p("2")).to_string(), "1 + T + T^2");
    }

    #[test]
    fn inert_examples() {
        assert_eq!(den_inert(&p("1")).to_string(), "1 - T");
        assert_eq!(den_inert(&p("2")).to_string(), "1 - T + T^2");
        assert_eq!(den_inert(&p("1,1")).to_string(), "1 + (q-1)*T + T^2");
    }

    #[test]
    fn twisted_local_examples() {
        assert_eq!(den_eta_local(PlaceKind::Inert, &p("1")).to_string(), "1 + T");
        assert_eq!(den_eta_local(PlaceKind::Split, &p("1")).to_string(), "1 + T");
        assert_eq!(den_eta_local(PlaceKind::Inert, &p("2")).to_string(), "1 + T + T^2");
    }

    #[test]
    fn global_examples() {
        let g = GlobalPlaceData::new(3, vec![place(1, PlaceKind::Inert, "1")]).unwrap();
        assert_eq!(den_global(&g, false).to_string(), "1 - T");
        assert_eq!(den_global(&g, true).to_string(), "1 + T");
        let g = GlobalPlaceData::new(
            3,
            vec![place(1, PlaceKind::Inert, "1"), place(2, PlaceKind::Split, "1")],
        )
        .unwrap();
        let expected = &poly(&[(0, 0, 1), (0, 1, -1)]) * &poly(&[(0, 0, 1), (0, 2, 1)]);
        assert_eq!(den_global(&g, false), expected);
        let empty = GlobalPlaceData::new(3, vec![]).unwrap();
        assert_eq!(den_global(&empty, false), IntPoly2::one());
    }

    #[test]
    fn defect_examples() {
        let g = GlobalPlaceData::new(3, vec![place(1, PlaceKind::Inert, "1")]).unwrap();
        assert_eq!(functional_defect(&g), -1);
        let den = den_global(&g, false);
        assert_eq!(den.reverse_t(1).unwrap(), den.scale(&BigInt::from(-1)));
        let g = GlobalPlaceData::new(3, vec![place(1, PlaceKind::Inert, "2")]).unwrap();
        assert_eq!(functional_defect(&g), 1);
        let den = den_global(&g, false);
        assert_eq!(den.reverse_t(2).unwrap(), den);
        let g = GlobalPlaceData::new(3, vec![place(1, PlaceKind::Split, "3,1")]).unwrap();
        assert_eq!(functional_defect(&g), 1);
    }

    #[test]
    fn induction_examples() {
        assert_eq!(den_inert_induction(1, &p("1")).unwrap(), den_inert(&p("1,1")));
        assert_eq!(den_split_induction(2, &p("1")).unwrap(), den_split(&p("2,1")));
        assert_eq!(den_split_induction(1, &Partition::empty()).unwrap(), den_split(&p("1")));
        assert_eq!(den_inert_weak(2, &p("1")).unwrap(), den_inert(&p("2,1")));
        assert_eq!(den_inert_weak(2, &Partition::empty()).unwrap(), den_inert(&p("2")));
        assert_eq!(den_inert_weak(3, &p("1,1")).unwrap(), den_inert(&p("3,1,1")));
    }

    #[test]
    fn induction_preconditions() {
        assert!(matches!(den_split_induction(1, &p("2")), Err(Error::PreconditionViolated(_))));
        assert!(matches!(den_inert_induction(0, &Partition::empty()), Err(Error::PreconditionViolated(_))));
        assert!(matches!(den_inert_weak(2, &p("2")), Err(Error::PreconditionViolated(_))));
        assert!(matches!(den_inert_weak(1, &Partition::empty()), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn constant_terms_and_degrees() {
        for lam in partitions_up_to(6) {
            for den in [den_split(&lam), den_inert(&lam)] {
                assert_eq!(den.coeff(0, 0), BigInt::one());
                assert_eq!(den.t_coeff(0), crate::exactpoly::IntPoly1::one());
                assert_eq!(den.t_degree(), Some(lam.size()));
            }
        }
    }

    #[test]
    fn local_functional_equations() {
        for lam in partitions_up_to(6) {
            let d = lam.size();
            let split = den_split(&lam);
            assert_eq!(split.reverse_t(d).unwrap(), split);
            let inert = den_inert(&lam);
            let sign = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
            assert_eq!(inert.reverse_t(d).unwrap(), inert.scale(&sign));
            let tw = den_eta_local(PlaceKind::Inert, &lam);
            assert_eq!(tw.reverse_t(d).unwrap(), tw);
        }
    }

    #[test]
    fn json_schema() {
        let text = r#"{"q":3,"places":[{"deg":1,"kind":"inert","type":"1"},{"deg":2,"kind":"split","type":"1"}]}"#;
        let g = GlobalPlaceData::from_json(text).unwrap();
        assert_eq!(g.places.len(), 2);
        assert_eq!(g.d(), 3);
        assert_eq!(g.to_json(), text);
        assert!(GlobalPlaceData::from_json(r#"{"q":4,"places":[]}"#).is_err());
        assert!(GlobalPlaceData::from_json(r#"{"q":3,"places":[{"deg":1,"kind":"odd","type":"1"}]}"#).is_err());
    }

    fn arb_place() -> impl Strategy<Value = LocalDatum> {
        (1u32..3, prop::bool::ANY, proptest::collection::vec(1u32..4, 0..3)).prop_map(|(deg, inert, parts)| {
            LocalDatum {
                deg,
                kind: if inert { PlaceKind::Inert } else { PlaceKind::Split },
                lambda: Partition::from_parts(parts),
            }
        })
    }

    proptest! {
        #[test]
        fn global_functional_equation(places in proptest::collection::vec(arb_place(), 0..4)) {
            let g = GlobalPlaceData::new(5, places).unwrap();
            prop_assume!(g.d() <= 8);
            let d = g.d();
            let den = den_global(&g, false);
            prop_assert_eq!(den.t_degree().unwrap_or(0), d);
            let defect = BigInt::from(functional_defect(&g));
            prop_assert_eq!(den.reverse_t(d).unwrap(), den.scale(&defect));
            let tw = den_global(&g, true);
            prop_assert_eq!(tw.reverse_t(d).unwrap(), tw);
        }
    }
}
