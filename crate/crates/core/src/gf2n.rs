//! Arithmetic in `F_{2^n}` over a polynomial basis.
//!
//! An element is a `u32` in `[0, 2^n)`; bit `k` is the coefficient of
//! `α^k`, where `α` is the residue class of `X` modulo the defining
//! polynomial. Addition is XOR. The same bit-vector view doubles as the
//! coordinate space `F_2^n` of the multivariate setting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{format_hex, parse_hex};

pub type FieldElement = u32;

pub const MAX_DEGREE: u32 = 24;

/// Carry-less product of two binary polynomials.
pub fn clmul(a: u64, b: u64) -> u64 {
    debug_assert!(a < 1 << 32 && b < 1 << 32);
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Remainder of `a` modulo `m` in `F_2[X]`.
pub fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Irreducibility over `F_2` by trial division with every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(p: u64) -> bool {
    let Some(d) = degree(p) else { return false };
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|k| ((1u64 << k)..(1u64 << (k + 1))).all(|q| poly_rem(p, q) != 0))
}

/// A binary field fixed by its degree and defining polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    n: u32,
    modulus: u32,
    /// Bit `k` holds `Tr(α^k)`, so `Tr(a) = parity(a & trace_mask)`.
    trace_mask: u32,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    n: u32,
    modulus: String,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;
    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        make_field(r.n, Some(parse_hex(&r.modulus)?))
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        FieldSpecRepr {
            n: f.n,
            modulus: format_hex(f.modulus as u64),
        }
    }
}

/// Builds `F_{2^n}`. Without an explicit modulus the lexicographically
/// smallest irreducible polynomial of degree `n` is used.
pub fn make_field(n: u32, modulus: Option<u64>) -> Result<FieldSpec> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let modulus = match modulus {
        Some(m) => {
            if degree(m) != Some(n) {
                return Err(Error::WrongModulusDegree { n, modulus: m });
            }
            if !is_irreducible(m) {
                return Err(Error::ReducibleModulus(m));
            }
            m
        }
        None => ((1u64 << n)..(1u64 << (n + 1)))
            .find(|&m| is_irreducible(m))
            .expect("an irreducible polynomial exists in every degree"),
    };
    let mut spec = FieldSpec {
        n,
        modulus: modulus as u32,
        trace_mask: 0,
    };
    spec.trace_mask = (0..n)
        .filter(|&k| spec.trace_by_conjugates(1 << k))
        .fold(0, |m, k| m | 1 << k);
    Ok(spec)
}

impl FieldSpec {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus as u64
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn contains(&self, a: u64) -> bool {
        a < (1u64 << self.n)
    }

    pub fn check(&self, a: u64) -> Result<FieldElement> {
        if self.contains(a) {
            Ok(a as FieldElement)
        } else {
            Err(Error::ElementOutOfRange {
                n: self.n,
                value: a,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..(1u32 << self.n)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let n = self.n;
        let mut p = clmul(a as u64, b as u64);
        let m = self.modulus as u64;
        let mut top = 2 * n;
        while top > n {
            top -= 1;
            if p >> top & 1 == 1 {
                p ^= m << (top - n);
            }
        }
        p as FieldElement
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        (0..k % self.n).fold(a, |x, _| self.square(x))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: FieldElement) -> Option<FieldElement> {
        (a != 0).then(|| self.pow(a, (1u64 << self.n) - 2))
    }

    /// `α^k` for the basis element `α`.
    pub fn alpha_pow(&self, k: u32) -> FieldElement {
        if self.n == 1 {
            // F_2[X]/(X): α = 0, but the basis vector is still 1
            return if k == 0 { 1 } else { 0 };
        }
        self.pow(2, k as u64)
    }

    /// Absolute trace via the precomputed linear form.
    pub fn trace(&self, a: FieldElement) -> bool {
        (a & self.trace_mask).count_ones() & 1 == 1
    }

    /// Absolute trace as the literal conjugate sum `Σ a^(2^i)`.
    pub fn trace_by_conjugates(&self, a: FieldElement) -> bool {
        let mut x = a;
        let mut sum = 0;
        for _ in 0..self.n {
            sum ^= x;
            x = self.square(x);
        }
        debug_assert!(sum <= 1, "trace left F_2");
        sum == 1
    }

    /// `σ(c, x) = Σ_{i<j} (cx)^(2^i) (cx)^(2^j)` as a field element.
    /// Always 0 or 1.
    pub fn sigma_element(&self, c: FieldElement, x: FieldElement) -> FieldElement {
        let mut w = self.mul(c, x);
        let mut prefix = 0;
        let mut sum = 0;
        for _ in 0..self.n {
            sum ^= self.mul(w, prefix);
            prefix ^= w;
            w = self.square(w);
        }
        sum
    }

    pub fn sigma(&self, c: FieldElement, x: FieldElement) -> bool {
        let s = self.sigma_element(c, x);
        debug_assert!(s <= 1, "sigma left F_2");
        s == 1
    }

    /// Coordinates of the functional `x ↦ Tr(a·x)` in the polynomial basis:
    /// bit `k` is `Tr(a·α^k)`, so `Tr(a·x) = parity(trace_dual(a) & x)`.
    pub fn trace_dual(&self, a: FieldElement) -> u32 {
        (0..self.n)
            .filter(|&k| self.trace(self.mul(a, self.alpha_pow(k))))
            .fold(0, |m, k| m | 1 << k)
    }

    /// `trace_dual` for every element, built by linearity.
    pub fn trace_dual_table(&self) -> Vec<u32> {
        let basis: Vec<u32> = (0..self.n).map(|k| self.trace_dual(1 << k)).collect();
        let mut table = vec![0u32; self.size()];
        for u in 1..self.size() {
            table[u] = table[u & (u - 1)] ^ basis[u.trailing_zeros() as usize];
        }
        table
    }

    /// `σ(1, t)` for every `t`; `σ(c, x)` is then `table[c·x]`.
    pub fn sigma_table(&self) -> Vec<bool> {
        self.elements().map(|t| self.sigma(1, t)).collect()
    }
}
