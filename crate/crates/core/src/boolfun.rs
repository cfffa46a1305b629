//! Bit-packed Boolean functions on `2^n` points.
//!
//! Index `t` of a table is the point whose encoding is `t`: in the
//! multivariate setting bit `k-1` of `t` is `x_k`, in the univariate setting
//! `t` is a field element. Tables pack 64 points per word, and pointwise
//! combinations (XOR, translation by a shift, linear forms) run word-parallel.

use crate::error::{Error, Result};
use crate::gf2n::{FieldElement, FieldSpec};

/// Positions whose bit `k` is clear, for the six in-word index bits.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

fn parity(v: u32) -> bool {
    v.count_ones() & 1 == 1
}

impl TruthTable {
    pub fn zero(n: u32) -> Self {
        TruthTable {
            n,
            words: vec![0; Self::word_count(n)],
        }
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Self {
        let mut t = Self::zero(n);
        for x in 0..(1u32 << n) {
            if f(x) {
                t.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        t
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let len = bits.len();
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        Ok(Self::from_fn(len.trailing_zeros(), |x| bits[x as usize]))
    }

    /// Builds a table from packed words, least significant bit first.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        let expected = Self::word_count(n);
        if words.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: words.len(),
            });
        }
        if n < 6 && words[0] >> (1u32 << n) != 0 {
            return Err(Error::Parse(format!(
                "truth table has bits set beyond index 2^{n}"
            )));
        }
        Ok(TruthTable { n, words })
    }

    /// The linear function `x ↦ w·x`.
    pub fn linear(n: u32, w: u32) -> Self {
        let low = (0..6)
            .filter(|k| w >> k & 1 == 1)
            .fold(0u64, |acc, k| acc ^ !LOW_HALF[k]);
        let high = w >> 6;
        let mut t = Self::zero(n);
        for (i, word) in t.words.iter_mut().enumerate() {
            *word = if parity(high & i as u32) { !low } else { low };
        }
        t.clear_padding();
        t
    }

    fn word_count(n: u32) -> usize {
        if n >= 6 {
            1 << (n - 6)
        } else {
            1
        }
    }

    fn clear_padding(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1u32 << self.n)) - 1;
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, x: u32) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn set(&mut self, x: u32, v: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if v {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    /// Number of ones.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == (self.len() as u64) / 2
    }

    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(TruthTable { n: self.n, words })
    }

    /// The table of `x ↦ g(x ⊕ z)`.
    pub fn translate(&self, z: u32) -> TruthTable {
        debug_assert!((z as usize) < self.len());
        let high = (z >> 6) as usize;
        let mut words: Vec<u64> = (0..self.words.len())
            .map(|i| self.words[i ^ high])
            .collect();
        for (k, &mask) in LOW_HALF.iter().enumerate() {
            if z >> k & 1 == 1 {
                let s = 1 << k;
                for w in &mut words {
                    *w = ((*w & mask) << s) | ((*w >> s) & mask);
                }
            }
        }
        TruthTable { n: self.n, words }
    }

    fn check_point(&self, v: u32) -> Result<()> {
        if (v as usize) < self.len() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                n: self.n,
                value: v as u64,
            })
        }
    }
}

/// `x ↦ g(x) ⊕ g(x+z) ⊕ c·(z⊙x)` on `F_2^n`.
pub fn shifted_derivative_mv(g: &TruthTable, z: u32, c: u32) -> Result<TruthTable> {
    if z == 0 {
        return Err(Error::ZeroDirection);
    }
    g.check_point(z)?;
    g.check_point(c)?;
    let d = g.xor(&g.translate(z))?;
    d.xor(&TruthTable::linear(g.n, c & z))
}

/// `x ↦ g(x) ⊕ g(x+z) ⊕ Tr(c²·x·z)` on `F_{2^n}`.
pub fn shifted_derivative_uv(
    field: &FieldSpec,
    g: &TruthTable,
    z: FieldElement,
    c: FieldElement,
) -> Result<TruthTable> {
    if g.n != field.n() {
        return Err(Error::DimensionMismatch {
            expected: field.n(),
            found: g.n,
        });
    }
    if z == 0 {
        return Err(Error::ZeroDirection);
    }
    field.check(z as u64)?;
    field.check(c as u64)?;
    let w = field.trace_dual(field.mul(field.square(c), z));
    let d = g.xor(&g.translate(z))?;
    d.xor(&TruthTable::linear(g.n, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::make_field;
    use proptest::prelude::*;

    fn x1(n: u32) -> TruthTable {
        TruthTable::from_fn(n, |x| x & 1 == 1)
    }

    #[test]
    fn weights_and_balance() {
        let zero = TruthTable::zero(2);
        let one = TruthTable::from_fn(2, |_| true);
        let and = TruthTable::from_fn(2, |x| x == 3);
        assert_eq!(zero.weight(), 0);
        assert_eq!(x1(2).weight(), 2);
        assert_eq!(one.weight(), 4);
        assert!(x1(2).is_balanced());
        assert!(!zero.is_balanced());
        assert!(!and.is_balanced());
        assert_eq!(and.weight(), 1);
    }

    #[test]
    fn mv_derivative_examples() {
        let g = TruthTable::zero(2);
        let d = shifted_derivative_mv(&g, 0b01, 0b11).unwrap();
        assert_eq!(d, x1(2));
        assert!(d.is_balanced());
        let d = shifted_derivative_mv(&g, 0b10, 0b01).unwrap();
        assert_eq!(d, TruthTable::zero(2));
        assert_eq!(
            shifted_derivative_mv(&x1(2), 0, 1),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn uv_derivative_examples() {
        let f = make_field(2, None).unwrap();
        let g = TruthTable::zero(2);
        let d = shifted_derivative_uv(&f, &g, 1, 1).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![false, false, true, true]);
        assert!(d.is_balanced());
        assert_eq!(
            shifted_derivative_uv(&f, &g, 0, 1),
            Err(Error::ZeroDirection)
        );
        for n in 1..=5 {
            let f = make_field(n, None).unwrap();
            let g = TruthTable::zero(n);
            for c in 1..(1 << n) {
                for z in 1..(1 << n) {
                    assert!(shifted_derivative_uv(&f, &g, z, c).unwrap().is_balanced());
                }
            }
        }
    }

    #[test]
    fn uv_derivative_of_affine_is_balanced() {
        for n in 1..=4 {
            let f = make_field(n, None).unwrap();
            for a in f.elements() {
                for b in [false, true] {
                    let g = TruthTable::from_fn(n, |x| f.trace(f.mul(a, x)) ^ b);
                    for c in 1..(1 << n) {
                        for z in 1..(1 << n) {
                            let d = shifted_derivative_uv(&f, &g, z, c).unwrap();
                            assert!(d.is_balanced(), "n={n} a={a} c={c} z={z}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn from_words_rejects_padding() {
        assert!(TruthTable::from_words(2, vec![0x1f]).is_err());
        assert!(TruthTable::from_words(7, vec![0]).is_err());
        assert!(TruthTable::from_words(2, vec![0xf]).is_ok());
    }

    fn table_strategy(max_n: u32) -> impl Strategy<Value = TruthTable> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), 1usize << n)
                .prop_map(|bits| TruthTable::from_bits(&bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn translate_matches_pointwise(g in table_strategy(9), z in any::<u32>()) {
            let z = z & (g.len() as u32 - 1);
            let t = g.translate(z);
            for x in 0..g.len() as u32 {
                prop_assert_eq!(t.get(x), g.get(x ^ z));
            }
        }

        #[test]
        fn linear_matches_pointwise(n in 1u32..=9, w in any::<u32>()) {
            let w = w & ((1 << n) - 1);
            let t = TruthTable::linear(n, w);
            for x in 0..(1u32 << n) {
                prop_assert_eq!(t.get(x), parity(w & x));
            }
        }

        #[test]
        fn mv_derivative_matches_pointwise(g in table_strategy(8), z in any::<u32>(), c in any::<u32>()) {
            let mask = g.len() as u32 - 1;
            let (z, c) = (z & mask | 1 << (z % g.n()), c & mask);
            let d = shifted_derivative_mv(&g, z, c).unwrap();
            for x in 0..g.len() as u32 {
                let want = g.get(x) ^ g.get(x ^ z) ^ parity(c & z & x);
                prop_assert_eq!(d.get(x), want);
                // under x ↦ x + z only the constant c·z is picked up
                prop_assert_eq!(d.get(x) ^ d.get(x ^ z), parity(c & z));
            }
        }

        #[test]
        fn uv_derivative_matches_pointwise(g in table_strategy(8), z in any::<u32>(), c in any::<u32>()) {
            let f = make_field(g.n(), None).unwrap();
            let mask = g.len() as u32 - 1;
            let (z, c) = (z & mask | 1 << (z % g.n()), c & mask);
            let d = shifted_derivative_uv(&f, &g, z, c).unwrap();
            for x in 0..g.len() as u32 {
                let want = g.get(x) ^ g.get(x ^ z) ^ f.trace(f.mul(f.mul(f.square(c), x), z));
                prop_assert_eq!(d.get(x), want);
            }
        }
    }
}
