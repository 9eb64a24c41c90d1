//! Cross-module checks: the closed forms against enumeration over finite
//! modules, and the global product against local brute force.

use num_bigint::BigInt;
use num_traits::One;

use densityforge::analytic::{BundleData, CurveData};
use densityforge::density::{den_local, eval_global, GlobalPlaceData, LocalDatum, PlaceKind};
use densityforge::finitemod::{brute_den_inert, brute_den_split, brute_hall, brute_sub_count};
use densityforge::partitions::{enumerate_partitions, partitions_up_to};
use densityforge::subcount::sub_poly;
use densityforge::{IntPoly1, Partition};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn submodule_counts_match_polynomials() {
    for q in [3u64, 5] {
        let bound = if q == 3 { 4 } else { 3 };
        for lam in partitions_up_to(bound) {
            for a in 0..=lam.size() {
                let brute = brute_sub_count(q, &lam, a).unwrap();
                let poly = sub_poly(a as i64, &lam).eval(&BigInt::from(q));
                assert_eq!(BigInt::from(brute), poly, "q={q} a={a} lambda={lam}");
            }
        }
    }
}

#[test]
fn hall_counts_sum_to_submodule_counts() {
    for lam in partitions_up_to(4) {
        for a in 0..=lam.size() {
            let by_type: u64 = enumerate_partitions(a, None).iter().map(|mu| brute_hall(3, &lam, mu).unwrap()).sum();
            assert_eq!(by_type, brute_sub_count(3, &lam, a).unwrap(), "a={a} lambda={lam}");
        }
    }
}

fn brute_local(q: u64, kind: PlaceKind, lam: &Partition) -> IntPoly1 {
    match kind {
        PlaceKind::Split => brute_den_split(q, lam).unwrap(),
        PlaceKind::Inert => brute_den_inert(q, lam).unwrap(),
    }
}

/// `T → T^e` on a polynomial in `T`.
fn stretch(p: &IntPoly1, e: u32) -> IntPoly1 {
    let mut coeffs = vec![BigInt::from(0); p.degree().map_or(1, |d| d as usize * e as usize + 1)];
    for (k, c) in p.terms() {
        coeffs[k as usize * e as usize] = c.clone();
    }
    IntPoly1::from_coeffs(coeffs)
}

#[test]
fn global_density_is_product_of_brute_locals() {
    let configs = [
        vec![(1, PlaceKind::Split, "2"), (1, PlaceKind::Inert, "1")],
        vec![(1, PlaceKind::Inert, "1,1"), (2, PlaceKind::Split, "1")],
        vec![(2, PlaceKind::Inert, "1"), (1, PlaceKind::Split, "1"), (1, PlaceKind::Inert, "2")],
    ];
    for places in configs {
        let data: Vec<LocalDatum> =
            places.iter().map(|&(deg, kind, lam)| LocalDatum { deg, kind, lambda: p(lam) }).collect();
        let g = GlobalPlaceData::new(3, data).unwrap();
        let mut product = IntPoly1::from_coeffs([BigInt::one()]);
        for &(deg, kind, lam) in &places {
            product = &product * &stretch(&brute_local(3u64.pow(deg), kind, &p(lam)), deg);
        }
        assert_eq!(eval_global(&g, false), product, "{}", g.to_json());
    }
}

#[test]
fn local_density_brute_at_q_nine() {
    for kind in [PlaceKind::Split, PlaceKind::Inert] {
        let lam = p("1");
        assert_eq!(brute_local(9, kind, &lam), den_local(kind, &lam).eval_q(&BigInt::from(9)));
    }
}

#[test]
fn curve_and_bundle_json_round_trip() {
    let curve = CurveData::new(5, 2, vec![1, 3, 5], vec![1, 1, 2, 5, 25]).unwrap();
    let back = CurveData::from_json(&curve.to_json()).unwrap();
    assert_eq!(back.to_json(), curve.to_json());
    let places = GlobalPlaceData::new(5, vec![LocalDatum { deg: 1, kind: PlaceKind::Inert, lambda: p("1") }]).unwrap();
    let bundle = BundleData::from_places(&curve, 2, places);
    let again = BundleData::from_json(&bundle.to_json()).unwrap();
    assert_eq!(again.to_json(), bundle.to_json());
    assert!(CurveData::new(5, 2, vec![1, 2, 4], vec![1]).is_err());
    assert!(CurveData::new(4, 0, vec![1], vec![1]).is_err());
}
