//! Twisted Walsh-type transforms in exact Gaussian integers.
//!
//! Both twisted transforms are a pointwise twist followed by the ordinary
//! Walsh–Hadamard butterfly:
//!
//! * multivariate, twist `c ∈ F_2^n`:
//!   `U_g^c(u) = Σ_x (-1)^(g(x) + u·x) · i^wt(c⊙x)`
//! * univariate, twist `c ∈ F_{2^n}`:
//!   `V_g^c(u) = Σ_x (-1)^(g(x) + σ(c,x)) · i^Tr(cx) · (-1)^Tr(ux)`
//!
//! For the univariate case the additive characters `x ↦ (-1)^Tr(ux)` are
//! dot products `τ(u)·x` in the polynomial basis (see
//! [`FieldSpec::trace_dual`]), so `V(u) = W(τ(u))` where `W` is the plain
//! butterfly output. `c = 0` gives the Walsh–Hadamard transform, `c = 1`
//! (all-ones in the multivariate case) the nega-Hadamard transform.

use crate::boolfun::TruthTable;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::gaussian::{Gaussian, Scalar};
use crate::gf2n::FieldSpec;

/// The values of one twisted transform, indexed by `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSpectrum<T> {
    pub domain: Domain,
    pub twist: u32,
    pub values: Vec<Gaussian<T>>,
}

impl<T: Scalar> TwistedSpectrum<T> {
    pub fn n(&self) -> u32 {
        self.domain.n()
    }

    /// `Σ_u |S(u)|²`; equals `2^(2n)` for every ±1-valued twisted input.
    pub fn energy(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sq())
    }
}

/// In-place radix-2 Walsh–Hadamard butterfly: `out[u] = Σ_x in[x]·(-1)^(u·x)`.
pub fn fwht_in_place<T: Scalar>(values: &mut [Gaussian<T>]) -> Result<()> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let mut h = 1;
    while h < len {
        for block in values.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

pub fn fwht<T: Scalar>(values: &[Gaussian<T>]) -> Result<Vec<Gaussian<T>>> {
    let mut out = values.to_vec();
    fwht_in_place(&mut out)?;
    Ok(out)
}

/// The twist at `x` without the `(-1)^g(x)` sign: `i^wt(c⊙x)` or
/// `(-1)^σ(c,x) · i^Tr(cx)`.
pub fn twist_factor<T: Scalar>(domain: &Domain, c: u32, x: u32) -> Gaussian<T> {
    match domain {
        Domain::Multivariate { .. } => Gaussian::i_pow((c & x).count_ones()),
        Domain::Univariate(f) => Gaussian::unit(f.sigma(c, x), f.trace(f.mul(c, x)) as u32),
    }
}

/// `h(x) = (-1)^g(x) · twist_factor(c, x)` for every `x`.
pub fn twisted_input<T: Scalar>(
    domain: &Domain,
    g: &TruthTable,
    c: u32,
) -> Result<Vec<Gaussian<T>>> {
    check_table(domain, g)?;
    domain.check_point(c as u64)?;
    Ok(domain
        .points()
        .map(|x| {
            let t = twist_factor::<T>(domain, c, x);
            if g.get(x) {
                -t
            } else {
                t
            }
        })
        .collect())
}

fn check_table(domain: &Domain, g: &TruthTable) -> Result<()> {
    if g.n() != domain.n() {
        return Err(Error::DimensionMismatch {
            expected: domain.n(),
            found: g.n(),
        });
    }
    Ok(())
}

/// The `c`-twisted spectrum of `g` in either setting.
pub fn transform<T: Scalar>(domain: &Domain, g: &TruthTable, c: u32) -> Result<TwistedSpectrum<T>> {
    let mut values = twisted_input::<T>(domain, g, c)?;
    fwht_in_place(&mut values)?;
    if let Domain::Univariate(f) = domain {
        let tau = f.trace_dual_table();
        values = tau.iter().map(|&t| values[t as usize]).collect();
    }
    Ok(TwistedSpectrum {
        domain: *domain,
        twist: c,
        values,
    })
}

/// `U_g^c` on `F_2^n`.
pub fn transform_u<T: Scalar>(g: &TruthTable, c: u32) -> Result<TwistedSpectrum<T>> {
    transform(&Domain::Multivariate { n: g.n() }, g, c)
}

/// `V_g^c` on `F_{2^n}`.
pub fn transform_v<T: Scalar>(
    field: &FieldSpec,
    g: &TruthTable,
    c: u32,
) -> Result<TwistedSpectrum<T>> {
    transform(&Domain::Univariate(*field), g, c)
}

/// Every `|S(u)|²` equals `2^n`.
pub fn is_flat<T: Scalar>(s: &TwistedSpectrum<T>) -> bool {
    let target = T::one() << s.n() as usize;
    s.values.iter().all(|v| v.norm_sq() == target)
}

/// All twists `c` for which the `c`-twisted spectrum of `g` is flat, in
/// increasing order. `0` marks a bent function; all-ones (mv) or `1` (uv)
/// marks a negabent one.
pub fn bent4_witnesses(domain: &Domain, g: &TruthTable) -> Result<Vec<u32>> {
    check_table(domain, g)?;
    let mut out = Vec::new();
    for c in domain.points() {
        if is_flat(&transform::<i64>(domain, g, c)?) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Recovers the twisted point values `h(x)` from their spectrum. The
/// forward transform is unnormalised; the inverse carries the `1/2^n`.
pub fn inverse_twisted<T: Scalar>(s: &TwistedSpectrum<T>) -> Result<Vec<Gaussian<T>>> {
    let n = s.n();
    if s.values.len() != 1 << n {
        return Err(Error::LengthMismatch {
            expected: 1 << n,
            found: s.values.len(),
        });
    }
    let mut w = match &s.domain {
        Domain::Multivariate { .. } => s.values.clone(),
        Domain::Univariate(f) => {
            let mut w = vec![Gaussian::zero(); s.values.len()];
            for (u, &t) in f.trace_dual_table().iter().enumerate() {
                w[t as usize] = s.values[u];
            }
            w
        }
    };
    fwht_in_place(&mut w)?;
    let scale = T::one() << n as usize;
    w.into_iter()
        .map(|v| v.div_exact(scale).ok_or(Error::InexactInverse(n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::make_field;

    type G = Gaussian<i64>;

    fn spectrum(values: &[(i64, i64)]) -> Vec<G> {
        values.iter().map(|&(r, i)| G::new(r, i)).collect()
    }

    #[test]
    fn fwht_of_constant_is_delta() {
        let out = fwht(&[G::one(); 4]).unwrap();
        assert_eq!(out, spectrum(&[(4, 0), (0, 0), (0, 0), (0, 0)]));
    }

    #[test]
    fn fwht_of_character_is_delta_at_frequency() {
        let n = 5;
        for u0 in 0..(1u32 << n) {
            let input: Vec<G> = (0..(1u32 << n))
                .map(|x| {
                    G::from_int(if (u0 & x).count_ones() % 2 == 1 {
                        -1
                    } else {
                        1
                    })
                })
                .collect();
            let out = fwht(&input).unwrap();
            for (u, v) in out.iter().enumerate() {
                let want = if u as u32 == u0 { 1 << n } else { 0 };
                assert_eq!(*v, G::from_int(want));
            }
        }
    }

    #[test]
    fn fwht_rejects_bad_length() {
        assert_eq!(fwht(&[G::one(); 3]), Err(Error::NotPowerOfTwo(3)));
        assert_eq!(fwht::<i64>(&[]), Err(Error::NotPowerOfTwo(0)));
    }

    #[test]
    fn u_transform_examples() {
        let g = TruthTable::zero(2);
        let s = transform_u::<i64>(&g, 0b11).unwrap();
        assert_eq!(s.values[0], G::new(0, 2));
        let s = transform_u::<i64>(&g, 0).unwrap();
        assert_eq!(s.values, spectrum(&[(4, 0), (0, 0), (0, 0), (0, 0)]));
    }

    #[test]
    fn v_transform_examples() {
        let f = make_field(2, None).unwrap();
        let g = TruthTable::zero(2);
        let s = transform_v::<i64>(&f, &g, 0).unwrap();
        assert_eq!(s.values, spectrum(&[(4, 0), (0, 0), (0, 0), (0, 0)]));
        let s = transform_v::<i64>(&f, &g, 1).unwrap();
        assert_eq!(s.values[0], G::new(0, -2));
        assert!(is_flat(&s));
    }

    #[test]
    fn flatness_examples() {
        let and = TruthTable::from_fn(2, |x| x == 3);
        assert!(is_flat(&transform_u::<i64>(&and, 0).unwrap()));
        assert!(!is_flat(
            &transform_u::<i64>(&TruthTable::zero(2), 0).unwrap()
        ));
    }

    #[test]
    fn witness_examples() {
        let f = make_field(2, None).unwrap();
        let zero = TruthTable::zero(2);
        assert_eq!(
            bent4_witnesses(&Domain::Univariate(f), &zero).unwrap(),
            vec![1, 2, 3]
        );
        let mv = Domain::Multivariate { n: 2 };
        assert_eq!(bent4_witnesses(&mv, &zero).unwrap(), vec![0b11]);
        let affine = TruthTable::from_fn(2, |x| x.count_ones() % 2 == 1);
        assert!(bent4_witnesses(&mv, &affine).unwrap().contains(&0b11));
    }

    #[test]
    fn affine_univariate_functions_are_flat_for_nonzero_twists() {
        for n in 1..=5 {
            let f = make_field(n, None).unwrap();
            for a in f.elements() {
                for b in [false, true] {
                    let g = TruthTable::from_fn(n, |x| f.trace(f.mul(a, x)) ^ b);
                    for c in 1..(1 << n) {
                        assert!(is_flat(&transform_v::<i64>(&f, &g, c).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_edge_cases() {
        let d = Domain::Multivariate { n: 3 };
        let zero = TwistedSpectrum::<i64> {
            domain: d,
            twist: 5,
            values: vec![G::zero(); 8],
        };
        assert_eq!(inverse_twisted(&zero).unwrap(), vec![G::zero(); 8]);

        // the all-ones sequence is the spectrum of a delta at 0
        let delta_spec = TwistedSpectrum::<i64> {
            domain: d,
            twist: 0,
            values: vec![G::one(); 8],
        };
        let mut delta = vec![G::zero(); 8];
        delta[0] = G::one();
        assert_eq!(inverse_twisted(&delta_spec).unwrap(), delta);

        let odd = TwistedSpectrum::<i64> {
            domain: d,
            twist: 0,
            values: delta.clone(),
        };
        assert_eq!(inverse_twisted(&odd), Err(Error::InexactInverse(3)));
    }

    #[test]
    fn scalar_width_does_not_change_results() {
        let f = make_field(4, None).unwrap();
        let g = TruthTable::from_fn(4, |x| (x * 7 + 3) % 5 < 2);
        for c in 0..16 {
            let a = transform_v::<i32>(&f, &g, c).unwrap();
            let b = transform_v::<i128>(&f, &g, c).unwrap();
            for (x, y) in a.values.iter().zip(&b.values) {
                assert_eq!(x.cast::<i128>().unwrap(), *y);
            }
        }
    }
}
