//! Counting oracles built on exhaustive enumeration, plus an independent
//! socle-layer recursion for fields too large to enumerate.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use super::field::FiniteField;
use super::module::{ChainModule, HermChainModule, DEFAULT_SIZE_BOUND};
use crate::error::OracleError;
use crate::exactpoly::{gaussian_binomial, IntPoly1};
use crate::partitions::Partition;

fn plain_module(q: u64, lambda: &Partition, bound: usize) -> Result<ChainModule, OracleError> {
    ChainModule::with_bound(FiniteField::new(q)?, lambda.clone(), bound)
}

/// `∏_{i<t} (1 - (εq)^i T)` at a numeric `q`, as a polynomial in `T`.
fn m_factor_at(eps_q: i64, t: u32) -> IntPoly1 {
    let mut acc = IntPoly1::one();
    for i in 0..t {
        let c = -Pow::pow(BigInt::from(eps_q), i);
        acc = &acc * &IntPoly1::from_coeffs([BigInt::one(), c]);
    }
    acc
}

/// Number of length-`a` submodules of the type-`λ` module over `GF(q)`.
pub fn brute_sub_count(q: u64, lambda: &Partition, a: u32) -> Result<u64, OracleError> {
    brute_sub_count_with_bound(q, lambda, a, DEFAULT_SIZE_BOUND)
}

pub fn brute_sub_count_with_bound(
    q: u64,
    lambda: &Partition,
    a: u32,
    bound: usize,
) -> Result<u64, OracleError> {
    let m = plain_module(q, lambda, bound)?;
    if a > lambda.size() {
        return Ok(0);
    }
    let subs = m.enumerate_submodules_up_to(a);
    Ok(subs.iter().filter(|s| m.length(s) == a).count() as u64)
}

/// Number of submodules of type `μ` in the type-`λ` module over `GF(q)`.
pub fn brute_hall(q: u64, lambda: &Partition, mu: &Partition) -> Result<u64, OracleError> {
    let m = plain_module(q, lambda, DEFAULT_SIZE_BOUND)?;
    if mu.size() > lambda.size() {
        return Ok(0);
    }
    let subs = m.enumerate_submodules_up_to(mu.size());
    Ok(subs
        .iter()
        .filter(|s| m.length(s) == mu.size() && &m.submodule_type(s) == mu)
        .count() as u64)
}

/// The split density polynomial at a numeric `q`, summed over chains
/// `I₁ ⊆ I₂` of submodules.
pub fn brute_den_split(q: u64, lambda: &Partition) -> Result<IntPoly1, OracleError> {
    let m = plain_module(q, lambda, DEFAULT_SIZE_BOUND)?;
    let subs = m.enumerate_submodules();
    let total = lambda.size();
    let lengths: Vec<u32> = subs.iter().map(|s| m.length(s)).collect();
    // Tally (T-exponent, t(I₂/I₁)) first, then expand.
    let tallies: Vec<BTreeMap<(u32, u32), u64>> = subs
        .par_iter()
        .enumerate()
        .map(|(j, i2)| {
            let mut tally = BTreeMap::new();
            for (i, i1) in subs.iter().enumerate() {
                if lengths[i] > lengths[j] || !i1.is_subset_of(i2) {
                    continue;
                }
                let exp = lengths[i] + total - lengths[j];
                let t = m.t_quotient(i2, i1);
                *tally.entry((exp, t)).or_insert(0) += 1;
            }
            tally
        })
        .collect();
    let mut merged: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for t in tallies {
        for (k, v) in t {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    let mut out = IntPoly1::zero();
    for ((exp, t), count) in merged {
        let term = m_factor_at(q as i64, t).shift(exp).scale(&BigInt::from(count));
        out = &out + &term;
    }
    Ok(out)
}

/// The inert density polynomial at a numeric `q`, summed over totally
/// isotropic submodules of the Hermitian module over `GF(q²)`.
pub fn brute_den_inert(q: u64, lambda: &Partition) -> Result<IntPoly1, OracleError> {
    let h = HermChainModule::new(q, lambda.clone())?;
    let m = h.base();
    let mut tally: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for sub in h.enumerate_isotropic() {
        let perp = h.perp(&sub);
        let t = m.t_quotient(&perp, &sub);
        *tally.entry((2 * m.length(&sub), t)).or_insert(0) += 1;
    }
    let mut out = IntPoly1::zero();
    for ((exp, t), count) in tally {
        let term = m_factor_at(-(q as i64), t).shift(exp).scale(&BigInt::from(count));
        out = &out + &term;
    }
    Ok(out)
}

/// `|Hom(M, N)| = q^{Σ_{i,j} min(μ_i, ν_j)}` for modules of types `μ`, `ν`.
pub fn hom_count(q: &BigInt, mu: &Partition, nu: &Partition) -> BigInt {
    let e: u32 = mu
        .parts()
        .iter()
        .flat_map(|&a| nu.parts().iter().map(move |&b| a.min(b)))
        .sum();
    Pow::pow(q, e)
}

/// Number of submodules of each length in the type-`λ` module over a
/// residue field of size `q`, without enumeration.
///
/// A submodule `W` is determined by `U = πW` inside `πQ`, the kernel
/// `K = W ∩ Q[π]` (which must contain `U[π]`), and a lift of `U` to `W/K`
/// that is forced on `πU`: with `t = t(λ)`, `k = dim K`, `u₀ = dim U[π]`
/// there are `[t-u₀, k-u₀]_q · q^{(t-k)u₀}` choices per `U`.
pub fn sub_counts_by_layers(q: &BigInt, lambda: &Partition) -> Vec<BigInt> {
    let mut memo = HashMap::new();
    let table = socle_table(q, lambda, &mut memo);
    table.iter().map(|row| row.iter().sum()).collect()
}

// table[a][k]: submodules of length a with socle dimension k.
fn socle_table(
    q: &BigInt,
    lambda: &Partition,
    memo: &mut HashMap<Partition, Vec<Vec<BigInt>>>,
) -> Vec<Vec<BigInt>> {
    if let Some(t) = memo.get(lambda) {
        return t.clone();
    }
    let t = lambda.len() as u32;
    let size = lambda.size() as usize;
    let mut table = vec![vec![BigInt::zero(); t as usize + 1]; size + 1];
    if lambda.is_empty() {
        table[0][0] = BigInt::one();
    } else {
        let inner = socle_table(q, &lambda.shrink(), memo);
        for (b, row) in inner.iter().enumerate() {
            for (u0, count) in row.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                let u0 = u0 as u32;
                for k in u0..=t {
                    let choose = gaussian_binomial(t - u0, k - u0).eval(q);
                    let lifts = Pow::pow(q, (t - k) * u0);
                    table[b + k as usize][k as usize] += count * choose * lifts;
                }
            }
        }
    }
    memo.insert(lambda.clone(), table.clone());
    table
}
