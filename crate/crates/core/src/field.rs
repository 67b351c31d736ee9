//! Finite fields: the prime field F_q and its extension F_{q^m}.
//!
//! Elements of F_{q^m} are stored as the integer whose base-q digits are the
//! polynomial-basis coefficients (little-endian), so `x^4 + x + 1` style moduli
//! and coefficient vectors map one-to-one onto `u32` values. Multiplication goes
//! through log/antilog tables built once per context.

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on q^m.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 16;

/// Arithmetic interface shared by the prime field and the extension field so that
/// matrix routines are written once.
pub trait Field: Send + Sync {
    type Elem: Copy + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

/// F_q for prime q, elements are residues `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.q == 2 {
            a ^ b
        } else {
            (a + b) % self.q
        }
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        if self.q == 2 {
            a ^ b
        } else {
            (a + self.q - b) % self.q
        }
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(pow_mod(a as u64, self.q as u64 - 2, self.q as u64) as u32)
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// An element of F_{q^m}; the wrapped integer packs the coefficient vector in base q.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtElement(pub u32);

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement(0);
    pub const ONE: ExtElement = ExtElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Little-endian coefficients of one irreducible polynomial per degree over F_2.
const BINARY_MODULI: [&[u32]; 16] = [
    &[1, 1],
    &[1, 1, 1],
    &[1, 1, 0, 1],
    &[1, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 1, 0, 0, 0, 1],
    &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
];

/// Built-in modulus for (q = 2, 1 ≤ m ≤ 16).
pub fn default_modulus(q: u32, m: usize) -> Result<Vec<u32>> {
    if q == 2 && (1..=16).contains(&m) {
        Ok(BINARY_MODULI[m - 1].to_vec())
    } else {
        Err(Error::NoDefaultModulus { q, m })
    }
}

/// Context for F_{q^m} = F_q[x]/(modulus).
#[derive(Clone)]
pub struct FieldCtx {
    q: u32,
    m: usize,
    modulus: Vec<u32>,
    size: u32,
    // exp has length 2(size-1) so mul can skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("q", &self.q)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds F_{q^m} with the given little-endian modulus and the default size cap.
    pub fn new(q: u32, m: usize, modulus: &[u32]) -> Result<Self> {
        Self::with_cap(q, m, modulus, DEFAULT_FIELD_CAP)
    }

    /// Builds F_{q^m} with the built-in modulus.
    pub fn with_default_modulus(q: u32, m: usize) -> Result<Self> {
        let modulus = default_modulus(q, m)?;
        Self::new(q, m, &modulus)
    }

    /// Shorthand for F_{2^m} with the built-in modulus.
    pub fn binary(m: usize) -> Result<Self> {
        Self::with_default_modulus(2, m)
    }

    pub fn with_cap(q: u32, m: usize, modulus: &[u32], cap: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if m == 0 || modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(Error::BadModulus { expected: m, got: modulus.to_vec() });
        }
        let size = (q as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if size > cap.min(1 << 31) {
            return Err(Error::UnsupportedSize { q, m, cap });
        }
        if !poly_is_irreducible(q, modulus) {
            return Err(Error::NotIrreducible { q });
        }
        let size = size as u32;
        let mut ctx = FieldCtx {
            q,
            m,
            modulus: modulus.to_vec(),
            size,
            exp: Vec::new(),
            log: Vec::new(),
            frob: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let order = self.size - 1;
        let mut generator = 0u32;
        if order == 1 {
            generator = 1;
        } else {
            for g in 2..self.size {
                if self.element_order(g) == order {
                    generator = g;
                    break;
                }
            }
        }
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; self.size as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur;
            exp[(i + order) as usize] = cur;
            log[cur as usize] = i;
            cur = self.mul_slow(cur, generator);
        }
        self.exp = exp;
        self.log = log;
        self.frob = (0..self.size).map(|a| self.pow_raw(a, self.q as u64)).collect();
    }

    fn element_order(&self, g: u32) -> u32 {
        let mut cur = g;
        let mut k = 1u32;
        while cur != 1 {
            cur = self.mul_slow(cur, g);
            k += 1;
        }
        k
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let pa = self.digits(a);
        let pb = self.digits(b);
        let mut prod = vec![0u32; 2 * self.m];
        for (i, &x) in pa.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.q;
            }
        }
        let rem = poly_rem(self.q, &prod, &self.modulus);
        self.pack(&rem)
    }

    fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.size - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut v = vec![0u32; self.m];
        for d in v.iter_mut() {
            *d = a % self.q;
            a /= self.q;
        }
        v
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.q + c % self.q)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements, q^m.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn base(&self) -> PrimeField {
        PrimeField { q: self.q }
    }

    /// All elements in index order; index 0 is zero.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> {
        (0..self.size).map(ExtElement)
    }

    /// Residue of x modulo the modulus.
    pub fn alpha(&self) -> ExtElement {
        if self.m == 1 {
            // x ≡ -c0 mod (x + c0)
            ExtElement((self.q - self.modulus[0]) % self.q)
        } else {
            ExtElement(self.q)
        }
    }

    pub fn coeffs(&self, a: ExtElement) -> Vec<u32> {
        self.digits(a.0)
    }

    /// Element with the given coefficients; missing high coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<ExtElement> {
        if coeffs.len() > self.m {
            return Err(Error::LengthMismatch(coeffs.len(), self.m));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.q) {
            return Err(Error::BadDimensions(format!("coefficient {c} not below q = {}", self.q)));
        }
        Ok(ExtElement(self.pack(coeffs)))
    }

    /// Element from its packed index.
    pub fn element(&self, index: u32) -> ExtElement {
        debug_assert!(index < self.size);
        ExtElement(index)
    }

    /// Image of a base-field scalar (constant polynomial).
    pub fn embed(&self, c: u32) -> ExtElement {
        ExtElement(c % self.q)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_base(&self, a: ExtElement) -> bool {
        a.0 < self.q
    }

    /// Base-field scalar times extension element, coefficientwise.
    pub fn scale(&self, c: u32, a: ExtElement) -> ExtElement {
        match c % self.q {
            0 => ExtElement::ZERO,
            1 => a,
            c => {
                let d: Vec<u32> = self.digits(a.0).into_iter().map(|x| x * c % self.q).collect();
                ExtElement(self.pack(&d))
            }
        }
    }

    pub fn pow(&self, a: ExtElement, e: u64) -> ExtElement {
        ExtElement(self.pow_raw(a.0, e))
    }

    /// a^(q^i).
    pub fn frobenius(&self, a: ExtElement, i: usize) -> ExtElement {
        let mut x = a.0;
        for _ in 0..(i % self.m) {
            x = self.frob[x as usize];
        }
        ExtElement(x)
    }

    pub fn try_inv(&self, a: ExtElement) -> Result<ExtElement> {
        Field::inv(self, a).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, a: ExtElement, b: ExtElement) -> Result<ExtElement> {
        Ok(self.mul(a, self.try_inv(b)?))
    }

    /// Discrete log with respect to the table generator; `None` for zero.
    pub fn log(&self, a: ExtElement) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    /// Number of F_q-independent entries (rank weight).
    pub fn rank_weight(&self, x: &[ExtElement]) -> usize {
        if self.q == 2 {
            // Gaussian elimination on bit-packed columns.
            let mut basis = [0u32; 32];
            let mut rank = 0;
            for &e in x {
                let mut v = e.0;
                while v != 0 {
                    let top = 31 - v.leading_zeros() as usize;
                    if basis[top] == 0 {
                        basis[top] = v;
                        rank += 1;
                        break;
                    }
                    v ^= basis[top];
                }
            }
            rank
        } else {
            let cols: Vec<Vec<u32>> = x.iter().map(|&e| self.digits(e.0)).collect();
            crate::linalg::rank_of_rows(&self.base(), &cols)
        }
    }
}

impl Field for FieldCtx {
    type Elem = ExtElement;

    fn zero(&self) -> ExtElement {
        ExtElement::ZERO
    }
    fn one(&self) -> ExtElement {
        ExtElement::ONE
    }
    #[inline]
    fn add(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if self.q == 2 {
            ExtElement(a.0 ^ b.0)
        } else {
            let mut x = a.0;
            let mut y = b.0;
            let mut out = 0u32;
            let mut w = 1u32;
            while x != 0 || y != 0 {
                out += ((x % self.q + y % self.q) % self.q) * w;
                x /= self.q;
                y /= self.q;
                w *= self.q;
            }
            ExtElement(out)
        }
    }
    #[inline]
    fn sub(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if self.q == 2 {
            ExtElement(a.0 ^ b.0)
        } else {
            self.add(a, self.neg(b))
        }
    }
    fn neg(&self, a: ExtElement) -> ExtElement {
        if self.q == 2 {
            a
        } else {
            self.scale(self.q - 1, a)
        }
    }
    #[inline]
    fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if a.0 == 0 || b.0 == 0 {
            return ExtElement::ZERO;
        }
        let l = self.log[a.0 as usize] + self.log[b.0 as usize];
        ExtElement(self.exp[l as usize])
    }
    fn inv(&self, a: ExtElement) -> Option<ExtElement> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        let l = (order - self.log[a.0 as usize]) % order;
        Some(ExtElement(self.exp[l as usize]))
    }
}

fn poly_trim(p: &mut Vec<u32>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over F_q (little-endian).
fn poly_rem(q: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db] as u64, q as u64 - 2, q as u64) as u32;
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % q;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = dr - db + i;
                r[idx] = (r[idx] + q - (c * bi) % q) % q;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r.resize(db.max(1), 0);
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn poly_is_irreducible(q: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % q as u64) as u32);
                x /= q as u64;
            }
            g.push(1);
            if poly_rem(q, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_moduli_are_irreducible() {
        for m in 1..=16 {
            let f = default_modulus(2, m).unwrap();
            assert!(poly_is_irreducible(2, &f), "m = {m}");
        }
    }

    #[test]
    fn rejects_reducible() {
        assert_eq!(FieldCtx::new(2, 4, &[1, 0, 1, 0, 1]), Err(Error::NotIrreducible { q: 2 }));
    }

    #[test]
    fn rejects_oversize() {
        assert!(matches!(
            FieldCtx::with_cap(2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1], 64),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn degree_one() {
        let f = FieldCtx::new(2, 1, &[1, 1]).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.alpha(), ExtElement::ONE);
    }

    #[test]
    fn alpha_powers_in_f16() {
        let f = FieldCtx::new(2, 4, &[1, 1, 0, 0, 1]).unwrap();
        let a = f.alpha();
        let a5 = f.mul(f.pow(a, 3), f.pow(a, 2));
        // α^5 = α^2 + α
        assert_eq!(f.coeffs(a5), vec![0, 1, 1, 0]);
        assert_eq!(f.frobenius(a, 1), f.pow(a, 2));
        assert_eq!(f.frobenius(a, 4), a);
    }

    #[test]
    fn ternary_field() {
        // x^2 + 1 is irreducible over F_3
        let f = FieldCtx::new(3, 2, &[1, 0, 1]).unwrap();
        let i = f.alpha();
        assert_eq!(f.mul(i, i), f.neg(f.one()));
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.try_inv(a).unwrap()), f.one());
        }
    }
}
