//! Finite fields `GF(p^e)` for odd `p`, elements encoded as integers
//! `Σ c_i p^i` in `0..p^e`.

use crate::error::OracleError;

// Fields up to this size get full addition/multiplication tables.
const TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    e: u32,
    size: u32,
    /// Monic modulus, `modulus[i]` = coefficient of `x^i`, length `e + 1`.
    modulus: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
    sigma_table: Vec<u32>,
}

impl FiniteField {
    /// The field with `q` elements; `q` must be a power of an odd prime.
    pub fn new(q: u64) -> Result<Self, OracleError> {
        let (p, e) = odd_prime_power(q).ok_or(OracleError::BadFieldSize(q))?;
        let size = u32::try_from(q).map_err(|_| OracleError::BadFieldSize(q))?;
        let modulus = smallest_irreducible(p, e);
        let mut field = FiniteField {
            p,
            e,
            size,
            modulus,
            add_table: Vec::new(),
            mul_table: Vec::new(),
            sigma_table: Vec::new(),
        };
        if size <= TABLE_LIMIT {
            let n = size as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..size {
                for b in 0..size {
                    add[a as usize * n + b as usize] = field.add_slow(a, b);
                    mul[a as usize * n + b as usize] = field.mul_slow(a, b);
                }
            }
            field.add_table = add;
            field.mul_table = mul;
        }
        if e % 2 == 0 {
            let half = (p as u64).pow(e / 2);
            field.sigma_table = (0..size).map(|x| field.pow(x, half)).collect();
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let e = self.e as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce by the monic modulus from the top down.
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..e {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
            prod[k] = 0;
        }
        let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.encode(&d)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.add_table.is_empty() {
            self.add_slow(a, b)
        } else {
            self.add_table[(a * self.size + b) as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.mul_table.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.mul_table[(a * self.size + b) as usize]
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode(&d)
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The involution `x ↦ x^{p^{e/2}}`; only defined for even `e`.
    #[inline]
    pub fn sigma(&self, a: u32) -> u32 {
        assert!(self.e.is_multiple_of(2), "conjugation needs an even-degree field");
        self.sigma_table[a as usize]
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size
    }
}

/// `(p, e)` with `q = p^e` and `p` an odd prime.
pub fn odd_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let p = (3..).step_by(2).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// Lexicographically smallest monic irreducible of degree `e` over `GF(p)`,
/// comparing the coefficient vectors `(c_0, …, c_{e-1})`.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let mut f: Vec<u32> = (0..e).map(|i| ((idx / (p as u64).pow(i)) % p as u64) as u32).collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g: Vec<u32> =
                (0..d).map(|i| ((idx / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for i in 0..=dg {
            r[k - dg + i] = (r[k - dg + i] + p - c * g[i] as u64 % p) % p;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|c| c as u32).collect()
}
