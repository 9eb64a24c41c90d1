//! Kostka numbers, the charge statistic and Kostka–Foulkes polynomials, and
//! the expansion of `Sub_{a,λ}(t)` through modified Kostka–Foulkes
//! polynomials.
//!
//! Conventions: `K_{λμ}(t)` sums `t^{charge}` over semistandard tableaux of
//! shape `λ` and content `μ`; the modified polynomial is
//! `K̃_{λμ}(t) = t^{n(μ)} K_{λμ}(1/t)`. With these choices
//! `Sub_{a,λ}(t) = Σ_μ K̃_{μλ}(t) · K_{μ,(a, |λ|-a)}(1)`.

use crate::exactpoly::IntPoly1;
use crate::partitions::{enumerate_partitions, Partition};
use num_bigint::BigInt;

/// A semistandard Young tableau in English notation, row 0 on top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Checks the semistandard conditions on rows of positive entries.
    pub fn new(rows: Vec<Vec<u32>>) -> Option<Self> {
        let t = Tableau { rows };
        t.is_semistandard().then_some(t)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts(self.rows.iter().map(|r| r.len() as u32))
    }

    /// Multiplicity of each letter `1..=max`.
    pub fn content(&self) -> Vec<u32> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut c = vec![0; max as usize];
        for &v in self.rows.iter().flatten() {
            c[v as usize - 1] += 1;
        }
        c
    }

    fn is_semistandard(&self) -> bool {
        let lens_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len())
            && self.rows.iter().all(|r| !r.is_empty());
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.iter().all(|&v| v >= 1) && r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above));
        lens_ok && rows_ok && cols_ok
    }

    /// Rows read bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn charge(&self) -> u64 {
        charge(&self.reading_word())
    }
}

/// Charge of a word whose content is a partition (letter `i+1` occurs no
/// more often than letter `i`).
///
/// The word is split into standard subwords: starting from the right end,
/// scan leftwards (cyclically) for a 1, then onwards for a 2, and so on.
/// Within a subword the index of `r+1` exceeds that of `r` by one exactly
/// when the scan wrapped around, and the charge is the sum of indices.
pub fn charge(word: &[u32]) -> u64 {
    let n = word.len();
    let mut used = vec![false; n];
    let mut remaining = n;
    let mut total = 0u64;
    while remaining > 0 {
        let mut pos = n; // virtual position just right of the word
        let mut letter = 1u32;
        let mut index = 0u64;
        loop {
            // Scan leftwards from `pos` for an unused `letter`.
            let mut found = None;
            let mut wrapped = false;
            for step in 1..=n {
                let p = (pos + n - step) % n;
                if pos < n && p >= pos {
                    wrapped = true;
                }
                if !used[p] && word[p] == letter {
                    found = Some(p);
                    break;
                }
            }
            let Some(p) = found else { break };
            if letter > 1 && wrapped {
                index += 1;
            }
            total += index;
            used[p] = true;
            remaining -= 1;
            pos = p;
            letter += 1;
        }
        if letter == 1 {
            panic!("word content is not a partition: {word:?}");
        }
    }
    total
}

/// All semistandard tableaux of the given shape and content, generated by
/// adding one horizontal strip per letter.
pub fn ssyt(shape: &Partition, content: &[u32]) -> Vec<Tableau> {
    if content.iter().sum::<u32>() != shape.size() {
        return Vec::new();
    }
    let target: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); target.len()];
    fill(&target, content, 0, &mut rows, &mut out);
    out
}

fn fill(target: &[usize], content: &[u32], k: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
    if k == content.len() {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    let old: Vec<usize> = rows.iter().map(|r| r.len()).collect();
    let mut adds = vec![0usize; target.len()];
    strips(target, &old, content[k] as usize, 0, &mut adds, &mut |adds| {
        for (i, &x) in adds.iter().enumerate() {
            rows[i].extend(std::iter::repeat_n(k as u32 + 1, x));
        }
        fill(target, content, k + 1, rows, out);
        for (i, &x) in adds.iter().enumerate() {
            let len = rows[i].len();
            rows[i].truncate(len - x);
        }
    });
}

// Horizontal strips of size `left` on top of row lengths `old` inside `target`.
fn strips(
    target: &[usize],
    old: &[usize],
    left: usize,
    row: usize,
    adds: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if row == target.len() {
        if left == 0 {
            emit(adds);
        }
        return;
    }
    let cap_above = if row == 0 { usize::MAX } else { old[row - 1] };
    let max = target[row].min(cap_above).saturating_sub(old[row]).min(left);
    for x in 0..=max {
        adds[row] = x;
        strips(target, old, left - x, row + 1, adds, emit);
    }
    adds[row] = 0;
}

/// Number of semistandard tableaux of shape `mu` and the given content.
pub fn kostka_number(mu: &Partition, content: &[u32]) -> u64 {
    ssyt(mu, content).len() as u64
}

/// `K_{λμ}(t)`: sum of `t^{charge}` over tableaux of shape `λ`, content `μ`.
/// Zero when the sizes differ.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> IntPoly1 {
    let mut out = IntPoly1::zero();
    for t in ssyt(lambda, mu.parts()) {
        out.add_term(t.charge() as u32, BigInt::from(1));
    }
    out
}

/// `t^{n(μ)} K_{λμ}(1/t)`.
pub fn modified_kf(lambda: &Partition, mu: &Partition) -> IntPoly1 {
    let n = mu.n_stat() as u32;
    let mut out = IntPoly1::zero();
    for (e, c) in kostka_foulkes(lambda, mu).terms() {
        assert!(e <= n, "charge {e} exceeds n(μ) = {n}");
        out.add_term(n - e, c.clone());
    }
    out
}

/// `Σ_μ K̃_{μλ}(t) · K_{μ,(a,|λ|-a)}`, equal to `Sub_{a,λ}(t)`.
pub fn sub_via_kf(a: u32, lambda: &Partition) -> IntPoly1 {
    let d = lambda.size();
    if a > d {
        return IntPoly1::zero();
    }
    let content = Partition::from_parts([a, d - a]);
    let mut out = IntPoly1::zero();
    for mu in enumerate_partitions(d, None) {
        let k = kostka_number(&mu, content.parts());
        if k == 0 {
            continue;
        }
        out = &out + &modified_kf(&mu, lambda).scale(&BigInt::from(k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;
    use crate::subcount::sub_poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn kostka_number_examples() {
        assert_eq!(kostka_number(&p("2"), &[1, 1]), 1);
        assert_eq!(kostka_number(&p("1,1"), &[1, 1]), 1);
        assert_eq!(kostka_number(&p("2,1"), &[2, 1]), 1);
        assert_eq!(kostka_number(&p("2,1"), &[1, 1, 1]), 2);
        assert_eq!(kostka_number(&p("3,2"), &[1, 1, 1, 1, 1]), 5);
        assert_eq!(kostka_number(&p("2"), &[1, 2]), 0);
    }

    #[test]
    fn kostka_foulkes_examples() {
        for lam in partitions_up_to(5) {
            assert_eq!(kostka_foulkes(&lam, &lam), IntPoly1::one());
        }
        assert_eq!(kostka_foulkes(&p("2"), &p("1,1")), IntPoly1::from_coeffs([0, 1]));
        assert_eq!(kostka_foulkes(&p("2,1"), &p("1,1,1")), IntPoly1::from_coeffs([0, 1, 1]));
        assert_eq!(kostka_foulkes(&p("3"), &p("2,1")), IntPoly1::from_coeffs([0, 1]));
        // Single-row shape with standard content: charge n(n-1)/2.
        for n in 1..=5usize {
            let k = kostka_foulkes(&Partition::from_parts([n as u32]), &Partition::column(n));
            assert_eq!(k, IntPoly1::monomial(BigInt::from(1), (n * (n - 1) / 2) as u32));
        }
    }

    #[test]
    fn tableau_validation_and_words() {
        assert!(Tableau::new(vec![vec![1, 2], vec![1]]).is_none());
        assert!(Tableau::new(vec![vec![2, 1]]).is_none());
        let t = Tableau::new(vec![vec![1, 1, 2], vec![2, 3]]).unwrap();
        assert_eq!(t.shape(), p("3,2"));
        assert_eq!(t.content(), vec![2, 2, 1]);
        assert_eq!(t.reading_word(), vec![2, 3, 1, 1, 2]);
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&[1, 2]), 1);
        assert_eq!(charge(&[2, 1]), 0);
        assert_eq!(charge(&[3, 1, 2]), 2);
        assert_eq!(charge(&[2, 1, 3]), 1);
        assert_eq!(charge(&[1, 1, 2]), 1);
        assert_eq!(charge(&[2, 1, 1]), 0);
    }

    #[test]
    fn specialization_at_one_is_kostka_number() {
        let one = BigInt::from(1);
        for d in 0..=5 {
            let parts = enumerate_partitions(d, None);
            for lam in &parts {
                for mu in &parts {
                    let k = kostka_foulkes(lam, mu).eval(&one);
                    assert_eq!(k, BigInt::from(kostka_number(lam, mu.parts())));
                    assert_eq!(modified_kf(lam, mu).eval(&one), k);
                    // Kostka numbers do not depend on the order of the content.
                    let mut rev = mu.parts().to_vec();
                    rev.reverse();
                    assert_eq!(kostka_number(lam, &rev), kostka_number(lam, mu.parts()));
                }
            }
        }
    }

    #[test]
    fn triangular_in_dominance_order() {
        for d in 0..=5 {
            let parts = enumerate_partitions(d, None);
            for lam in &parts {
                for mu in &parts {
                    if !lam.dominates(mu) {
                        assert!(kostka_foulkes(lam, mu).is_zero(), "K_{{{lam},{mu}}}");
                    }
                }
            }
        }
    }

    #[test]
    fn size_two_modified_table() {
        let (two, ones) = (p("2"), p("1,1"));
        assert_eq!(modified_kf(&two, &two), IntPoly1::one());
        assert_eq!(modified_kf(&two, &ones), IntPoly1::one());
        assert_eq!(modified_kf(&ones, &ones), IntPoly1::from_coeffs([0, 1]));
        assert!(modified_kf(&ones, &two).is_zero());
    }

    #[test]
    fn sub_via_kf_examples() {
        assert_eq!(sub_via_kf(1, &p("1,1")), IntPoly1::from_coeffs([1, 1]));
        assert_eq!(sub_via_kf(1, &p("2,1")), IntPoly1::from_coeffs([1, 1]));
        for lam in partitions_up_to(4) {
            assert_eq!(sub_via_kf(0, &lam), IntPoly1::one());
        }
    }

    #[test]
    fn sub_via_kf_matches_recursion_small() {
        for lam in partitions_up_to(4) {
            for a in 0..=lam.size() {
                assert_eq!(sub_via_kf(a, &lam), sub_poly(a as i64, &lam), "a={a} λ={lam}");
            }
        }
    }
}
