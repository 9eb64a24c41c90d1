//! Partitions: the Jordan types of finite torsion modules over a discrete
//! valuation ring.
//!
//! A partition is stored as a weakly decreasing list of positive parts. The
//! text form is the comma-separated list of parts (`"3,1,1"`), with `"-"` for
//! the empty partition.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from arbitrary non-negative parts: zeros are dropped
    /// and the rest sorted into weakly decreasing order.
    pub fn from_parts<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Builds a partition from parts that must already be weakly decreasing
    /// and positive.
    pub fn try_new(parts: Vec<u32>) -> Result<Self, ParseError> {
        if parts.contains(&0) {
            return Err(ParseError::Partition(format!("{parts:?}: zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ParseError::Partition(format!("{parts:?}: parts not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// `(1, 1, ..., 1)` with `n` ones.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts, the statistic `t(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `λ∨_j = #{i : λ_i ≥ j}`.
    pub fn conjugate(&self) -> Self {
        let top = self.largest();
        let parts = (1..=top)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Inserts `m` keeping the parts weakly decreasing. Inserting 0 is a no-op,
    /// matching the zero module `O/π^0`.
    pub fn insert_sorted(&self, m: u32) -> Self {
        if m == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        let pos = v.iter().position(|&p| p < m).unwrap_or(v.len());
        v.insert(pos, m);
        Partition(v)
    }

    /// Splits off the largest part: `(m, ρ)` with `λ = insert_sorted(m, ρ)`.
    pub fn split_largest(&self) -> Option<(u32, Partition)> {
        let (&m, rest) = self.0.split_first()?;
        Some((m, Partition(rest.to_vec())))
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// Every part reduced by one, zeros dropped. This is the type of `πQ`
    /// when `Q` has type `λ`.
    pub fn shrink(&self) -> Self {
        Partition::from_parts(self.0.iter().map(|&p| p - 1))
    }

    /// Dominance order `self ⊵ other` for partitions of the same size.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut a = 0u32;
        let mut b = 0u32;
        let n = self.len().max(other.len());
        for i in 0..n {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Containment of Young diagrams, `μ ⊆ λ`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then lexicographically on parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| ParseError::Partition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::try_new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `d`, optionally with at most `max_len` parts, in reverse
/// lexicographic order: `(3), (2,1), (1,1,1)`.
pub fn enumerate_partitions(d: u32, max_len: Option<usize>) -> Vec<Partition> {
    fn rec(
        remaining: u32,
        cap: u32,
        max_len: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, max_len.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

/// All partitions of every size `0..=max_size`, smallest first.
pub fn partitions_up_to(max_size: u32) -> Vec<Partition> {
    (0..=max_size).flat_map(|d| enumerate_partitions(d, None)).collect()
}
