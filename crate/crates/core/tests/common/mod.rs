//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's arithmetic: field products are
//! recomputed with `xtime` doubling, traces and σ by literal conjugate
//! sums, and transforms by direct double summation.

#![allow(dead_code)]

use std::collections::HashSet;

/// `(re, im)` pair.
pub type C = (i64, i64);

pub fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

pub fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// `i^k`.
pub fn ipow(k: u32) -> C {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][(k % 4) as usize]
}

pub fn sign(b: bool) -> C {
    if b {
        (-1, 0)
    } else {
        (1, 0)
    }
}

pub fn dot(a: u32, b: u32) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// Reference field `F_2[X]/(modulus)` of degree `n`.
#[derive(Clone, Copy, Debug)]
pub struct RefField {
    pub n: u32,
    pub modulus: u32,
}

impl RefField {
    fn xtime(&self, a: u32) -> u32 {
        let a = a << 1;
        if a >> self.n & 1 == 1 {
            a ^ self.modulus
        } else {
            a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (mut acc, mut a) = (0, a);
        for k in 0..self.n {
            if b >> k & 1 == 1 {
                acc ^= a;
            }
            a = self.xtime(a);
        }
        acc
    }

    pub fn conj(&self, a: u32, k: u32) -> u32 {
        (0..k).fold(a, |x, _| self.mul(x, x))
    }

    pub fn trace(&self, a: u32) -> bool {
        let t = (0..self.n).fold(0, |acc, i| acc ^ self.conj(a, i));
        assert!(t <= 1);
        t == 1
    }

    /// Literal `Σ_{i<j} (cx)^(2^i) (cx)^(2^j)`.
    pub fn sigma(&self, c: u32, x: u32) -> bool {
        let t = self.mul(c, x);
        let mut s = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                s ^= self.mul(self.conj(t, i), self.conj(t, j));
            }
        }
        assert!(s <= 1);
        s == 1
    }
}

/// `s_2^c(x) = ⊕_{i<j} (c_i x_i)(c_j x_j)`.
pub fn s2(c: u32, x: u32, n: u32) -> bool {
    let w = c & x;
    let mut s = false;
    for i in 0..n {
        for j in i + 1..n {
            s ^= (w >> i & 1 == 1) && (w >> j & 1 == 1);
        }
    }
    s
}

/// `U_g^c(u)` from the `(-1)^(g + s_2^c + u·x) · i^(c·x)` form.
pub fn u_eq5(g: &[bool], c: u32, n: u32) -> Vec<C> {
    (0..1u32 << n)
        .map(|u| {
            (0..1u32 << n).fold((0, 0), |acc, x| {
                let s = sign(g[x as usize] ^ s2(c, x, n) ^ dot(u, x));
                cadd(acc, cmul(s, ipow(dot(c, x) as u32)))
            })
        })
        .collect()
}

/// `U_g^c(u)` from the `(-1)^(g + u·x) · i^wt(c⊙x)` form.
pub fn u_eq6(g: &[bool], c: u32, n: u32) -> Vec<C> {
    (0..1u32 << n)
        .map(|u| {
            (0..1u32 << n).fold((0, 0), |acc, x| {
                let s = sign(g[x as usize] ^ dot(u, x));
                cadd(acc, cmul(s, ipow((c & x).count_ones())))
            })
        })
        .collect()
}

/// `V_g^c(u)` by direct summation.
pub fn v_direct(f: &RefField, g: &[bool], c: u32) -> Vec<C> {
    let q = 1u32 << f.n;
    (0..q)
        .map(|u| {
            (0..q).fold((0, 0), |acc, x| {
                let s = sign(g[x as usize] ^ f.sigma(c, x) ^ f.trace(f.mul(u, x)));
                cadd(acc, cmul(s, ipow(f.trace(f.mul(c, x)) as u32)))
            })
        })
        .collect()
}

/// Permutation test with hash sets; `mv` selects `a⊙x`, else the field product.
pub fn planar_oracle(table: &[u32], n: u32, field: Option<&RefField>) -> bool {
    let q = 1u32 << n;
    (1..q).all(|a| {
        let image: HashSet<u32> = (0..q)
            .map(|x| {
                let bil = match field {
                    Some(f) => f.mul(a, x),
                    None => a & x,
                };
                table[(x ^ a) as usize] ^ table[x as usize] ^ bil
            })
            .collect();
        image.len() == q as usize
    })
}

/// Lexicographically smallest irreducible of degree `n`, by trial division
/// with every polynomial of degree `1..n`.
pub fn smallest_irreducible(n: u32) -> u32 {
    let rem = |mut a: u64, m: u64| {
        let dm = 63 - m.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= dm {
            a ^= m << (63 - a.leading_zeros() - dm);
        }
        a
    };
    ((1u64 << n)..(1u64 << (n + 1)))
        .find(|&p| (2..(1u64 << n)).all(|q| rem(p, q) != 0))
        .unwrap() as u32
}

/// SplitMix64, for reproducible sampling in tests.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    pub fn bits(&mut self, len: usize) -> Vec<bool> {
        (0..len).map(|_| self.next() & 1 == 1).collect()
    }
}
