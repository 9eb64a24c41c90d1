//! Torsion modules `⊕ F[π]/(π^{λ_i})` over a finite field, their Hermitian
//! refinement, and exhaustive submodule search.
//!
//! An element is a mixed-radix integer: part `i` occupies `λ_i` consecutive
//! base-`|F|` digits, digit `j` of a part being the coefficient of `π^j`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::field::FiniteField;
use crate::error::OracleError;
use crate::partitions::Partition;

/// Default cap on the number of module elements for exhaustive search.
pub const DEFAULT_SIZE_BOUND: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    elems: Vec<u32>,
    gens: Vec<u32>,
}

impl Submodule {
    /// Sorted element encodings; this is the canonical form.
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.elems.len() <= other.elems.len() && self.gens.iter().all(|&g| other.contains(g))
    }
}

#[derive(Clone, Debug)]
pub struct ChainModule {
    field: FiniteField,
    lambda: Partition,
    radix: u32,
    size: u32,
    place: Vec<u32>,
    offsets: Vec<usize>,
    pi_map: Vec<u32>,
}

impl ChainModule {
    pub fn new(field: FiniteField, lambda: Partition) -> Result<Self, OracleError> {
        Self::with_bound(field, lambda, DEFAULT_SIZE_BOUND)
    }

    pub fn with_bound(field: FiniteField, lambda: Partition, bound: usize) -> Result<Self, OracleError> {
        let radix = field.size();
        let elements = (radix as u128).pow(lambda.size());
        if elements > bound as u128 || elements > u32::MAX as u128 {
            return Err(OracleError::SizeBound { elements, bound });
        }
        let n = lambda.size() as usize;
        let place: Vec<u32> = (0..n).map(|i| radix.pow(i as u32)).collect();
        let mut offsets = Vec::with_capacity(lambda.len());
        let mut acc = 0;
        for &p in lambda.parts() {
            offsets.push(acc);
            acc += p as usize;
        }
        let mut m = ChainModule {
            field,
            lambda,
            radix,
            size: elements as u32,
            place,
            offsets,
            pi_map: Vec::new(),
        };
        m.pi_map = (0..m.size).map(|x| m.pi_slow(x)).collect();
        Ok(m)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    fn digit(&self, x: u32, i: usize) -> u32 {
        (x / self.place[i]) % self.radix
    }

    /// Coefficients of part `i` of `x`, lowest power of `π` first.
    pub fn component(&self, x: u32, i: usize) -> Vec<u32> {
        let off = self.offsets[i];
        (0..self.lambda.parts()[i] as usize).map(|j| self.digit(x, off + j)).collect()
    }

    /// Encodes an element from per-part coefficient lists (missing entries
    /// are zero, extra ones are truncated).
    pub fn element(&self, comps: &[Vec<u32>]) -> u32 {
        let mut x = 0;
        for (i, c) in comps.iter().enumerate().take(self.lambda.len()) {
            for (j, &v) in c.iter().enumerate().take(self.lambda.parts()[i] as usize) {
                x += (v % self.radix) * self.place[self.offsets[i] + j];
            }
        }
        x
    }

    /// The generator `e_i` of part `i`.
    pub fn basis_vector(&self, i: usize) -> u32 {
        self.place[self.offsets[i]]
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.place.len() {
            out += self.field.add(self.digit(x, i), self.digit(y, i)) * self.place[i];
        }
        out
    }

    pub fn scale(&self, c: u32, x: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.place.len() {
            out += self.field.mul(c, self.digit(x, i)) * self.place[i];
        }
        out
    }

    fn pi_slow(&self, x: u32) -> u32 {
        let mut out = 0;
        for (i, &len) in self.lambda.parts().iter().enumerate() {
            let off = self.offsets[i];
            for j in 1..len as usize {
                out += self.digit(x, off + j - 1) * self.place[off + j];
            }
        }
        out
    }

    #[inline]
    pub fn pi(&self, x: u32) -> u32 {
        self.pi_map[x as usize]
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule { elems: vec![0], gens: Vec::new() }
    }

    pub fn whole(&self) -> Submodule {
        let gens = (0..self.lambda.len()).map(|i| self.basis_vector(i)).collect();
        Submodule { elems: (0..self.size).collect(), gens }
    }

    /// `I + F·g`, assuming `π g ∈ I`.
    fn extend(&self, sub: &Submodule, g: u32) -> Submodule {
        let multiples: Vec<u32> = self.field.elements().map(|c| self.scale(c, g)).collect();
        let mut elems = Vec::with_capacity(sub.elems.len() * multiples.len());
        for &x in &sub.elems {
            for &m in &multiples {
                elems.push(self.add(x, m));
            }
        }
        elems.sort_unstable();
        elems.dedup();
        let mut gens = sub.gens.clone();
        gens.push(g);
        Submodule { elems, gens }
    }

    /// `I + O·g`.
    fn absorb(&self, sub: &Submodule, g: u32) -> Submodule {
        if sub.contains(g) {
            return sub.clone();
        }
        // Add π^k g from the top down so each step is a simple extension.
        let mut chain = vec![g];
        while let Some(&last) = chain.last() {
            let next = self.pi(last);
            if next == 0 {
                break;
            }
            chain.push(next);
        }
        let mut out = sub.clone();
        for &h in chain.iter().rev() {
            if !out.contains(h) {
                out = self.extend(&out, h);
            }
        }
        out.gens = sub.gens.clone();
        out.gens.push(g);
        out
    }

    /// The submodule generated by `gens`.
    pub fn span(&self, gens: &[u32]) -> Submodule {
        gens.iter().fold(self.zero_submodule(), |sub, &g| self.absorb(&sub, g))
    }

    /// Canonical submodule from an element set already known to be a
    /// submodule; generators are chosen greedily.
    pub fn from_elements(&self, mut elems: Vec<u32>) -> Submodule {
        elems.sort_unstable();
        elems.dedup();
        let mut sub = self.zero_submodule();
        for &x in &elems {
            if sub.order() == elems.len() {
                break;
            }
            sub = self.absorb(&sub, x);
        }
        debug_assert_eq!(sub.elems, elems);
        sub
    }

    /// `log_{|F|} n` for `n` a power of the field size.
    pub fn log_order(&self, n: usize) -> u32 {
        let mut k = 0;
        let mut v = n;
        while v > 1 {
            debug_assert_eq!(v % self.radix as usize, 0);
            v /= self.radix as usize;
            k += 1;
        }
        k
    }

    /// Length as an `F[π]`-module.
    pub fn length(&self, sub: &Submodule) -> u32 {
        self.log_order(sub.order())
    }

    /// Sorted `π·S` for a sorted set `S`.
    fn pi_image(&self, set: &[u32]) -> Vec<u32> {
        let mut img: Vec<u32> = set.iter().map(|&x| self.pi(x)).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `(dim I/πI, dim πI/π²I, …)`.
    pub fn filtration_dims(&self, sub: &Submodule) -> Vec<u32> {
        let mut dims = Vec::new();
        let mut cur = sub.elems.clone();
        while cur.len() > 1 {
            let next = self.pi_image(&cur);
            dims.push(self.log_order(cur.len() / next.len()));
            cur = next;
        }
        dims
    }

    /// Jordan type of a submodule.
    pub fn submodule_type(&self, sub: &Submodule) -> Partition {
        Partition::from_parts(self.filtration_dims(sub)).conjugate()
    }

    /// Jordan type of `a / b` for `b ⊆ a`, from
    /// `|π^j a + b| = |π^j a| |b| / |π^j a ∩ b|`.
    pub fn quotient_type(&self, a: &Submodule, b: &Submodule) -> Partition {
        let mut sizes = Vec::new();
        let mut cur = a.elems.clone();
        loop {
            let meet = cur.iter().filter(|&&x| b.contains(x)).count();
            let sum = cur.len() * b.order() / meet;
            sizes.push(sum / b.order());
            if sum == b.order() {
                break;
            }
            cur = self.pi_image(&cur);
        }
        let dims: Vec<u32> = sizes.windows(2).map(|w| self.log_order(w[0] / w[1])).collect();
        Partition::from_parts(dims).conjugate()
    }

    /// Number of parts of `a / b` from the top layer,
    /// `dim (a/b) ⊗ F = log(|a| |πa ∩ b| / (|πa| |b|))`.
    pub fn t_quotient(&self, a: &Submodule, b: &Submodule) -> u32 {
        let pa = self.pi_image(&a.elems);
        let meet = pa.iter().filter(|&&x| b.contains(x)).count();
        self.log_order(a.order() * meet / (pa.len() * b.order()))
    }

    /// Number of parts of `a / b` from the socle, `dim {x ∈ a : πx ∈ b} / b`.
    pub fn t_quotient_socle(&self, a: &Submodule, b: &Submodule) -> u32 {
        let socle = a.elems.iter().filter(|&&x| b.contains(self.pi(x))).count();
        self.log_order(socle / b.order())
    }

    /// Every submodule of length at most `max_len` (all of them when `None`),
    /// sorted by (length, element set). `admissible(I, g)` filters the
    /// one-step extensions `I ⊂ I + F g`.
    fn search<P>(&self, max_len: Option<u32>, admissible: P) -> Vec<Submodule>
    where
        P: Fn(&Submodule, u32) -> bool + Sync,
    {
        let max_len = max_len.unwrap_or(self.lambda.size());
        let mut all = vec![self.zero_submodule()];
        let mut layer = all.clone();
        for _ in 0..max_len {
            let found: Vec<Vec<Submodule>> = layer
                .par_iter()
                .map(|sub| {
                    let mut covered = vec![false; self.size as usize];
                    for &x in &sub.elems {
                        covered[x as usize] = true;
                    }
                    let mut out = Vec::new();
                    for g in 0..self.size {
                        if covered[g as usize] || !sub.contains(self.pi(g)) || !admissible(sub, g) {
                            continue;
                        }
                        let ext = self.extend(sub, g);
                        for &x in &ext.elems {
                            covered[x as usize] = true;
                        }
                        out.push(ext);
                    }
                    out
                })
                .collect();
            let mut next: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
            for sub in found.into_iter().flatten() {
                next.entry(sub.elems).or_insert(sub.gens);
            }
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().map(|(elems, gens)| Submodule { elems, gens }).collect();
            all.extend(layer.iter().cloned());
        }
        all
    }

    pub fn enumerate_submodules(&self) -> Vec<Submodule> {
        self.search(None, |_, _| true)
    }

    pub fn enumerate_submodules_up_to(&self, max_len: u32) -> Vec<Submodule> {
        self.search(Some(max_len), |_, _| true)
    }
}

/// A chain module over `GF(q²)` with the diagonal Hermitian form
/// `⟨e_i, e_j⟩ = δ_ij π^{-λ_i}`, values in `π^{-λ_1}O/O` stored after
/// multiplying by `π^{λ_1}`.
#[derive(Clone, Debug)]
pub struct HermChainModule {
    base: ChainModule,
    q: u64,
}

impl HermChainModule {
    pub fn new(q: u64, lambda: Partition) -> Result<Self, OracleError> {
        Self::with_bound(q, lambda, DEFAULT_SIZE_BOUND)
    }

    pub fn with_bound(q: u64, lambda: Partition, bound: usize) -> Result<Self, OracleError> {
        let q2 = q.checked_mul(q).ok_or(OracleError::BadFieldSize(q))?;
        super::field::odd_prime_power(q).ok_or(OracleError::BadFieldSize(q))?;
        let field = FiniteField::new(q2)?;
        Ok(HermChainModule { base: ChainModule::with_bound(field, lambda, bound)?, q })
    }

    pub fn base(&self) -> &ChainModule {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `⟨x, y⟩` encoded as the coefficient vector of `π^{λ_1}⟨x, y⟩` in
    /// `F[π]/(π^{λ_1})` (base-`q²` digits, lowest power first).
    pub fn pairing(&self, x: u32, y: u32) -> u32 {
        let m = &self.base;
        let f = m.field();
        let top = m.lambda.largest() as usize;
        let mut v = vec![0u32; top];
        for (i, &len) in m.lambda.parts().iter().enumerate() {
            let len = len as usize;
            let shift = top - len;
            let xs = m.component(x, i);
            let ys = m.component(y, i);
            for a in 0..len {
                if xs[a] == 0 {
                    continue;
                }
                for b in 0..len - a {
                    let term = f.mul(xs[a], f.sigma(ys[b]));
                    v[a + b + shift] = f.add(v[a + b + shift], term);
                }
            }
        }
        v.iter().rev().fold(0, |acc, &c| acc * f.size() + c)
    }

    /// `{y : ⟨g, y⟩ = 0 for every generator g of I}`.
    pub fn perp(&self, sub: &Submodule) -> Submodule {
        let elems: Vec<u32> = (0..self.base.size)
            .filter(|&y| sub.gens.iter().all(|&g| self.pairing(g, y) == 0))
            .collect();
        self.base.from_elements(elems)
    }

    pub fn is_isotropic(&self, sub: &Submodule) -> bool {
        sub.gens
            .iter()
            .all(|&g| sub.gens.iter().all(|&h| self.pairing(g, h) == 0))
    }

    /// Every totally isotropic submodule, sorted by (length, element set).
    pub fn enumerate_isotropic(&self) -> Vec<Submodule> {
        self.base.search(None, |sub, g| {
            self.pairing(g, g) == 0 && sub.gens.iter().all(|&h| self.pairing(h, g) == 0)
        })
    }

    pub fn enumerate_submodules(&self) -> Vec<Submodule> {
        self.base.enumerate_submodules()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn module(q: u64, lam: &str) -> ChainModule {
        ChainModule::new(FiniteField::new(q).unwrap(), p(lam)).unwrap()
    }

    #[test]
    fn submodule_counts() {
        assert_eq!(module(3, "1").enumerate_submodules().len(), 2);
        assert_eq!(module(3, "1,1").enumerate_submodules().len(), 6);
        assert_eq!(module(3, "2").enumerate_submodules().len(), 3);
        // Subspaces of GF(3)^3: 1 + 13 + 13 + 1.
        assert_eq!(module(3, "1,1,1").enumerate_submodules().len(), 28);
    }

    #[test]
    fn enumeration_is_sorted_and_closed() {
        let m = module(3, "2,1");
        let subs = m.enumerate_submodules();
        for w in subs.windows(2) {
            let key = |s: &Submodule| (m.length(s), s.elements().to_vec());
            assert!(key(&w[0]) < key(&w[1]));
        }
        for s in &subs {
            for &x in s.elements() {
                assert!(s.contains(m.pi(x)));
                for &y in s.elements().iter().step_by(3) {
                    assert!(s.contains(m.add(x, y)));
                }
            }
            assert_eq!(m.span(s.generators()).elements(), s.elements());
        }
    }

    #[test]
    fn type_examples() {
        let m = module(3, "2,1");
        assert_eq!(m.submodule_type(&m.whole()), p("2,1"));
        let m = module(3, "2");
        let pi_q = m.span(&[m.pi(m.basis_vector(0))]);
        assert_eq!(m.submodule_type(&pi_q), p("1"));
        let m = module(3, "2,2");
        let socle = m.span(&[m.pi(m.basis_vector(0)), m.pi(m.basis_vector(1))]);
        assert_eq!(m.submodule_type(&socle), p("1,1"));
        assert_eq!(m.quotient_type(&m.whole(), &socle), p("1,1"));
    }

    #[test]
    fn quotient_t_two_ways() {
        let m = module(3, "2,1,1");
        let subs = m.enumerate_submodules();
        for a in subs.iter().step_by(7) {
            for b in subs.iter().filter(|b| b.is_subset_of(a)) {
                let t1 = m.t_quotient(a, b);
                assert_eq!(t1, m.t_quotient_socle(a, b));
                assert_eq!(t1 as usize, m.quotient_type(a, b).len());
                assert_eq!(m.quotient_type(a, b).size(), m.length(a) - m.length(b));
            }
        }
    }

    #[test]
    fn size_bound_is_enforced() {
        let f = FiniteField::new(5).unwrap();
        assert!(ChainModule::new(f.clone(), p("3,3")).is_ok());
        assert!(matches!(
            ChainModule::new(f, p("4,3")),
            Err(OracleError::SizeBound { elements: 78125, bound: DEFAULT_SIZE_BOUND })
        ));
    }

    #[test]
    fn hermitian_symmetry_and_nondegeneracy() {
        for lam in ["1", "2", "1,1", "2,1"] {
            let h = HermChainModule::new(3, p(lam)).unwrap();
            let m = h.base();
            let f = m.field();
            let top = m.lambda().largest() as usize;
            let conj = |v: u32| -> u32 {
                let mut out = 0;
                let mut place = 1;
                let mut v = v;
                for _ in 0..top {
                    out += f.sigma(v % f.size()) * place;
                    v /= f.size();
                    place *= f.size();
                }
                out
            };
            for x in 0..m.size() {
                for y in (0..m.size()).step_by(5) {
                    assert_eq!(h.pairing(x, y), conj(h.pairing(y, x)));
                }
                if x != 0 {
                    assert!((0..m.size()).any(|y| h.pairing(x, y) != 0));
                }
            }
        }
    }

    #[test]
    fn perp_examples() {
        let h = HermChainModule::new(3, p("1")).unwrap();
        let zero = h.base().zero_submodule();
        assert_eq!(h.perp(&zero).order(), h.base().size() as usize);
        assert!(h.is_isotropic(&zero));
        assert!(!h.is_isotropic(&h.base().whole()));

        let h = HermChainModule::new(3, p("2")).unwrap();
        let m = h.base();
        let pi_q = m.span(&[m.pi(m.basis_vector(0))]);
        let perp = h.perp(&pi_q);
        assert_eq!(perp.elements(), pi_q.elements());
        assert!(h.is_isotropic(&pi_q));
        assert_eq!(m.t_quotient(&perp, &pi_q), 0);
    }

    #[test]
    fn perp_lengths_are_complementary() {
        for lam in ["1", "2", "1,1", "3", "2,1", "1,1,1"] {
            let h = HermChainModule::new(3, p(lam)).unwrap();
            let m = h.base();
            let total = m.lambda().size();
            for sub in h.enumerate_submodules() {
                let perp = h.perp(&sub);
                assert_eq!(m.length(&perp) + m.length(&sub), total, "λ={lam}");
                if h.is_isotropic(&sub) {
                    assert!(sub.is_subset_of(&perp));
                    assert_eq!(
                        m.t_quotient(&perp, &sub),
                        m.t_quotient_socle(&perp, &sub)
                    );
                }
            }
        }
    }

    #[test]
    fn isotropic_search_matches_filtered_full_search() {
        for lam in ["1", "2", "1,1", "3", "2,1", "1,1,1", "2,2"] {
            let h = HermChainModule::new(3, p(lam)).unwrap();
            let iso = h.enumerate_isotropic();
            let filtered: Vec<Submodule> =
                h.enumerate_submodules().into_iter().filter(|s| h.is_isotropic(s)).collect();
            let a: Vec<&[u32]> = iso.iter().map(|s| s.elements()).collect();
            let b: Vec<&[u32]> = filtered.iter().map(|s| s.elements()).collect();
            assert_eq!(a, b, "λ={lam}");
        }
    }
}
