mod common;

use common::{u_eq6, v_direct, RefField};
use mpf_core::transforms::{inverse_twisted, transform, twisted_input};
use mpf_core::{
    bent4_witnesses, is_flat, make_field, shifted_derivative_mv, shifted_derivative_uv,
    transform_u, transform_v, Domain, Error, Gaussian, TruthTable,
};
use proptest::prelude::*;

fn table(n: u32, code: u64) -> TruthTable {
    TruthTable::from_fn(n, |x| code >> x & 1 == 1)
}

fn pairs(s: &[Gaussian<i64>]) -> Vec<(i64, i64)> {
    s.iter().map(|v| (v.re, v.im)).collect()
}

#[test]
fn v_matches_direct_sum_exhaustively() {
    for n in 1..=3 {
        let f = make_field(n, None).unwrap();
        let r = RefField {
            n,
            modulus: f.modulus() as u32,
        };
        for code in 0..1u64 << (1 << n) {
            let g = table(n, code);
            let bits: Vec<bool> = g.iter().collect();
            for c in f.elements() {
                let fast = transform_v(&f, &g, c).unwrap();
                assert_eq!(
                    pairs(&fast.values),
                    v_direct(&r, &bits, c),
                    "n={n} g={code:#x} c={c}"
                );
            }
        }
    }
}

#[test]
fn bent_functions_on_four_variables() {
    // x1x2 + x3x4 is bent; its U^0 is flat and it is not negabent.
    let g = TruthTable::from_fn(4, |x| ((x & x >> 1) ^ (x >> 2 & x >> 3)) & 1 == 1);
    let d = Domain::Multivariate { n: 4 };
    let w = bent4_witnesses(&d, &g).unwrap();
    assert!(w.contains(&0));
    assert!(!w.contains(&0xf));
}

#[test]
fn no_bent4_zero_witness_in_odd_dimension() {
    for n in [1, 3] {
        for code in 0..1u64 << (1 << n) {
            let g = table(n, code);
            let d = Domain::Multivariate { n };
            assert!(!bent4_witnesses(&d, &g).unwrap().contains(&0));
        }
    }
}

#[test]
fn inverse_rejects_non_spectra() {
    let g = TruthTable::zero(3);
    let mut s = transform_u(&g, 5).unwrap();
    s.values[1] += Gaussian::one();
    assert_eq!(inverse_twisted(&s), Err(Error::InexactInverse(3)));
}

fn arb_table(max_n: u32) -> impl Strategy<Value = TruthTable> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n)
            .prop_map(|b| TruthTable::from_bits(&b).unwrap())
    })
}

proptest! {
    #[test]
    fn u_matches_direct_sum(g in arb_table(5), c: u32) {
        let n = g.n();
        let c = c & ((1 << n) - 1);
        let bits: Vec<bool> = g.iter().collect();
        prop_assert_eq!(pairs(&transform_u(&g, c).unwrap().values), u_eq6(&bits, c, n));
    }

    #[test]
    fn v_matches_direct_sum(g in arb_table(5), c: u32) {
        let n = g.n();
        let f = make_field(n, None).unwrap();
        let c = c & ((1 << n) - 1);
        let r = RefField { n, modulus: f.modulus() as u32 };
        let bits: Vec<bool> = g.iter().collect();
        prop_assert_eq!(pairs(&transform_v(&f, &g, c).unwrap().values), v_direct(&r, &bits, c));
    }

    #[test]
    fn parseval_and_round_trip(g in arb_table(8), c: u32, uv: bool) {
        let n = g.n();
        let c = c & ((1 << n) - 1);
        let d = if uv {
            Domain::Univariate(make_field(n, None).unwrap())
        } else {
            Domain::Multivariate { n }
        };
        let s = transform::<i64>(&d, &g, c).unwrap();
        prop_assert_eq!(s.energy(), 1i64 << (2 * n));
        prop_assert_eq!(inverse_twisted(&s).unwrap(), twisted_input::<i64>(&d, &g, c).unwrap());
    }

    #[test]
    fn flatness_iff_balanced_derivatives(g in arb_table(4), c: u32, uv: bool) {
        let n = g.n();
        let f = make_field(n, None).unwrap();
        let c = c & ((1 << n) - 1);
        let d = if uv { Domain::Univariate(f) } else { Domain::Multivariate { n } };
        let flat = is_flat(&transform::<i64>(&d, &g, c).unwrap());
        let balanced = (1..1u32 << n).all(|z| {
            let dz = if uv {
                shifted_derivative_uv(&f, &g, z, c)
            } else {
                shifted_derivative_mv(&g, z, c)
            };
            dz.unwrap().is_balanced()
        });
        prop_assert_eq!(flat, balanced);
    }
}
