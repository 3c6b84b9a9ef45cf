//! Finite fields GF(p^k) in polynomial representation.
//!
//! Elements are packed as base-`p` integers, `c0 + c1*p + ... + c_{k-1}*p^(k-1)`,
//! where `c_i` is the coefficient of `x^i`. Multiplication and inversion go
//! through discrete log tables built once per field, so a [`Field`] costs
//! `O(q)` memory and every operation is `O(k)` or better.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient vector {0:?} is not a canonical element of this field")]
    BadCoefficients(Vec<u32>),
}

/// An element of some [`Field`]. Only meaningful together with the field that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed base-`p` value of this element.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field of order `q = p^k`.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(q). The modulus is the lexicographically smallest monic
    /// irreducible polynomial of degree `k`, comparing coefficient sequences
    /// from the constant term upwards; for prime `q` it is `x`.
    pub fn new(q: u64) -> Result<Field, GfError> {
        let (p, k) = prime_power(q).ok_or(GfError::NotAPrimePower(q))?;
        if q > MAX_ORDER as u64 {
            return Err(GfError::OrderTooLarge(q));
        }
        let (p, k, q) = (p as u32, k, q as u32);
        let modulus = smallest_irreducible(p, k);
        let mut field = Field {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        for g in 2..self.q.max(3) {
            let g = if self.q == 2 { 1 } else { g };
            let mut exp = Vec::with_capacity(n);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.poly_mul(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == n {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The element with packed value `i`, for `i < q`.
    pub fn element(&self, i: u32) -> FieldElement {
        assert!(
            i < self.q,
            "element index {i} out of range for GF({})",
            self.q
        );
        FieldElement(i)
    }

    /// All `q` elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElement {
        FieldElement(if self.q == 2 { 1 } else { self.exp[1] })
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::BadCoefficients(coeffs.to_vec()));
        }
        Ok(FieldElement(
            coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
        ))
    }

    /// Exactly `k` coefficients, constant term first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        if self.p == 2 {
            return a;
        }
        self.digitwise(a, FieldElement::ZERO, |x, _| (self.p - x) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let n = self.q - 1;
        let e = (n - self.log[a.0 as usize]) % n;
        Ok(FieldElement(self.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete logarithm to the base [`Field::primitive`]; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u32, u32) -> u32,
    ) -> FieldElement {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    /// Schoolbook product of two packed elements reduced by the modulus.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let unpack = |mut v: u32| -> Vec<u64> {
            (0..k)
                .map(|_| {
                    let c = v % self.p;
                    v /= self.p;
                    c as u64
                })
                .collect()
        };
        let (a, b) = (unpack(a), unpack(b));
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            // subtract c * x^(deg-k) * modulus; modulus is monic
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }
}

/// Factors `q = p^k` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let k = k as usize;
    // Odometer over the k low coefficients with c0 as the slowest digit, so
    // candidates come out in lexicographic order of (c0, c1, ..., c_{k-1}).
    let mut low = vec![0u32; k];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        let mut i = k;
        loop {
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            assert!(
                i > 0,
                "no irreducible polynomial of degree {k} over GF({p})"
            );
        }
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = n;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` modulo the monic polynomial `g`, coefficients low first.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for deg in (dg..r.len()).rev() {
        let c = r[deg] % p;
        if c == 0 {
            continue;
        }
        for (i, &m) in g.iter().enumerate() {
            let idx = deg - dg + i;
            r[idx] = (r[idx] + (p - c) * m as u64) % p;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|c| c as u32).collect()
}
