//! The universal submodule-counting polynomials `Sub_{a,λ}(t)`: for every
//! finite residue field of size `q`, `Sub_{a,λ}(q)` is the number of
//! length-`a` submodules of the torsion module of type `λ`.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{OracleError, ParseError};
use crate::exactpoly::{interpolate, IntPoly1};
use crate::finitemod::{brute_sub_count_with_bound, sub_counts_by_layers};
use crate::partitions::Partition;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Largest module (in elements) counted by exhaustive enumeration inside
/// [`sub_poly_interp`]; bigger samples use the socle-layer recursion.
pub const DEFAULT_BRUTE_BUDGET: u128 = 3125;

/// Memo table for `Sub_{a,λ}`, safe to share between threads.
#[derive(Debug, Default)]
pub struct SubTable {
    memo: RwLock<HashMap<(u32, Partition), IntPoly1>>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    a: u32,
    lambda: Partition,
    poly: Value,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<CacheEntry>,
}

impl SubTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table used by the free functions of this crate.
    pub fn global() -> &'static SubTable {
        static TABLE: OnceLock<SubTable> = OnceLock::new();
        TABLE.get_or_init(SubTable::new)
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("sub table lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Sub_{a,λ}(t)`; zero for `a < 0` or `a > |λ|`.
    pub fn get(&self, a: i64, lambda: &Partition) -> IntPoly1 {
        if a < 0 || a > lambda.size() as i64 {
            return IntPoly1::zero();
        }
        let a = a as u32;
        if lambda.is_empty() {
            return IntPoly1::one();
        }
        let key = (a, lambda.clone());
        if let Some(p) = self.memo.read().expect("sub table lock").get(&key) {
            return p.clone();
        }
        // Peel the largest part m: Sub_{a,λ} = Sub_{a-1,(m-1,ρ)} + t^a Sub_{a,ρ}.
        let (m, rho) = lambda.split_largest().expect("nonempty partition");
        let first = self.get(a as i64 - 1, &rho.insert_sorted(m - 1));
        let second = self.get(a as i64, &rho).shift(a);
        let value = &first + &second;
        self.memo
            .write()
            .expect("sub table lock")
            .insert(key, value.clone());
        value
    }

    /// Loads entries from a cache file written by [`SubTable::save`]. Entries
    /// from a different format version are ignored.
    pub fn load(&self, path: &Path) -> Result<usize, ParseError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ParseError::Input(format!("{}: {e}", path.display())))?;
        let file: CacheFile = serde_json::from_str(&text)
            .map_err(|e| ParseError::Input(format!("{}: {e}", path.display())))?;
        if file.version != CACHE_FORMAT_VERSION {
            return Ok(0);
        }
        let mut memo = self.memo.write().expect("sub table lock");
        let mut n = 0;
        for entry in file.entries {
            let poly = IntPoly1::from_json(&entry.poly)?;
            memo.insert((entry.a, entry.lambda), poly);
            n += 1;
        }
        Ok(n)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let memo = self.memo.read().expect("sub table lock");
        let mut entries: Vec<CacheEntry> = memo
            .iter()
            .map(|((a, lambda), p)| CacheEntry { a: *a, lambda: lambda.clone(), poly: p.to_json() })
            .collect();
        entries.sort_by(|x, y| (&x.lambda, x.a).cmp(&(&y.lambda, y.a)));
        let file = CacheFile { version: CACHE_FORMAT_VERSION, entries };
        let text = serde_json::to_string_pretty(&file).map_err(std::io::Error::other)?;
        fs::write(path, text)
    }
}

/// `Sub_{a,λ}(t)` by the largest-part recursion.
pub fn sub_poly(a: i64, lambda: &Partition) -> IntPoly1 {
    SubTable::global().get(a, lambda)
}

/// Degree in `t` of `Sub_{a,λ}`; `None` when the polynomial is zero.
pub fn sub_degree(a: i64, lambda: &Partition) -> Option<u32> {
    sub_poly(a, lambda).degree()
}

/// Odd primes in increasing order.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Number of length-`a` submodules at residue field size `q`: exhaustive
/// enumeration when the module has at most `brute_budget` elements,
/// otherwise the socle-layer recursion.
pub fn sample_count(q: u64, lambda: &Partition, a: u32, brute_budget: u128) -> Result<BigInt, OracleError> {
    let elements = (q as u128).checked_pow(lambda.size());
    match elements {
        Some(n) if n <= brute_budget => {
            Ok(BigInt::from(brute_sub_count_with_bound(q, lambda, a, n as usize)?))
        }
        _ => {
            let counts = sub_counts_by_layers(&BigInt::from(q), lambda);
            Ok(counts.get(a as usize).cloned().unwrap_or_default())
        }
    }
}

/// `Sub_{a,λ}(t)` reconstructed from submodule counts at the odd primes
/// `3, 5, 7, …`, with degree bound taken from [`sub_degree`] and one surplus
/// prime as a consistency check.
pub fn sub_poly_interp(a: i64, lambda: &Partition) -> Result<IntPoly1, OracleError> {
    sub_poly_interp_with_budget(a, lambda, DEFAULT_BRUTE_BUDGET)
}

pub fn sub_poly_interp_with_budget(
    a: i64,
    lambda: &Partition,
    brute_budget: u128,
) -> Result<IntPoly1, OracleError> {
    if a < 0 || a > lambda.size() as i64 {
        return Ok(IntPoly1::zero());
    }
    let bound = sub_degree(a, lambda).unwrap_or(0) as usize;
    let points = odd_primes()
        .take(bound + 2)
        .map(|q| Ok((BigInt::from(q), sample_count(q, lambda, a as u32, brute_budget)?)))
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(interpolate(&points, bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::gaussian_binomial;
    use crate::partitions::partitions_up_to;
    use num_traits::Signed;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(sub_poly(1, &p("1,1")), IntPoly1::from_coeffs([1, 1]));
        assert_eq!(sub_poly(1, &p("2")), IntPoly1::one());
        assert_eq!(sub_poly(2, &p("2,1")), IntPoly1::from_coeffs([1, 1]));
        assert!(sub_poly(-1, &p("2")).is_zero());
        assert!(sub_poly(3, &p("2")).is_zero());
        assert_eq!(sub_poly(0, &Partition::empty()), IntPoly1::one());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(sub_degree(1, &p("1,1")), Some(1));
        for m in 0..6u32 {
            for a in 0..=m as i64 {
                assert_eq!(sub_degree(a, &Partition::from_parts([m])), Some(0));
            }
        }
        assert_eq!(sub_degree(2, &p("1,1,1,1")), Some(4));
    }

    #[test]
    fn interpolation_examples() {
        assert_eq!(sub_poly_interp(1, &p("1,1")).unwrap(), IntPoly1::from_coeffs([1, 1]));
        assert_eq!(sub_poly_interp(0, &p("3,1")).unwrap(), IntPoly1::one());
        assert_eq!(sub_poly_interp(1, &p("2,1")).unwrap(), IntPoly1::from_coeffs([1, 1]));
    }

    #[test]
    fn columns_give_gaussian_binomials() {
        for n in 0..=8usize {
            for a in 0..=n as u32 {
                assert_eq!(sub_poly(a as i64, &Partition::column(n)), gaussian_binomial(n as u32, a));
            }
        }
    }

    #[test]
    fn boundary_values_and_positivity() {
        for lam in partitions_up_to(6) {
            let d = lam.size() as i64;
            assert_eq!(sub_poly(0, &lam), IntPoly1::one());
            assert_eq!(sub_poly(d, &lam), IntPoly1::one());
            for a in 0..=d {
                let s = sub_poly(a, &lam);
                assert!(s.terms().all(|(_, c)| !c.is_negative()));
                for q in [3, 5, 7] {
                    assert!(s.eval(&BigInt::from(q)).is_positive());
                }
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let table = SubTable::new();
        for lam in partitions_up_to(4) {
            for a in 0..=lam.size() as i64 {
                table.get(a, &lam);
            }
        }
        let dir = std::env::temp_dir().join(format!("densityforge-cache-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sub.json");
        table.save(&path).unwrap();
        let fresh = SubTable::new();
        assert_eq!(fresh.load(&path).unwrap(), table.len());
        for lam in partitions_up_to(4) {
            for a in 0..=lam.size() as i64 {
                assert_eq!(fresh.get(a, &lam), sub_poly(a, &lam));
            }
        }
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn primes() {
        let first: Vec<u64> = odd_primes().take(8).collect();
        assert_eq!(first, vec![3, 5, 7, 11, 13, 17, 19, 23]);
    }
}
