//! The twisted groups of order `4^n`, their characters, and two
//! relative-difference-set verifiers.
//!
//! Elements are pairs `(x, y)` of `n`-bit values. The laws are
//!
//! * `star_mv`: `(x1,y1)*(x2,y2) = (x1+x2, y1+y2+x1⊙x2)` on `F_2^n × F_2^n`
//! * `star_uv`: `(x1,y1)⋆(x2,y2) = (x1+x2, y1+y2+x1·x2)` on `F_{2^n} × F_{2^n}`
//! * `z4n`: `Z_4^n` with coordinate `k` holding the integer `x_k + 2·y_k`
//!
//! and the forbidden subgroup is `N = {0} × F` in every case. Differences
//! are taken as `d = r1 * r2^-1` over ordered pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::gf2n::FieldSpec;
use crate::planar::VectorialFunction;

pub type GaussianInt = Gaussian<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupLaw {
    StarMv { n: u32 },
    StarUv(FieldSpec),
    Z4n { n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElem {
    pub x: u32,
    pub y: u32,
}

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        GroupElem { x, y }
    }
}

fn parity(v: u32) -> bool {
    v.count_ones() & 1 == 1
}

impl GroupLaw {
    /// The group carrying the graph of a function from `domain`.
    pub fn for_domain(domain: &Domain) -> Self {
        match domain {
            Domain::Multivariate { n } => GroupLaw::StarMv { n: *n },
            Domain::Univariate(f) => GroupLaw::StarUv(*f),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupLaw::StarMv { .. } => "star_mv",
            GroupLaw::StarUv(_) => "star_uv",
            GroupLaw::Z4n { .. } => "z4n",
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            GroupLaw::StarMv { n } | GroupLaw::Z4n { n } => *n,
            GroupLaw::StarUv(f) => f.n(),
        }
    }

    pub fn order(&self) -> usize {
        1 << (2 * self.n())
    }

    pub fn contains(&self, a: GroupElem) -> bool {
        let bound = 1u32 << self.n();
        a.x < bound && a.y < bound
    }

    pub fn check(&self, a: GroupElem) -> Result<GroupElem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                n: self.n(),
                value: (a.x as u64) << 32 | a.y as u64,
            })
        }
    }

    /// All elements, `x` major then `y`.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        let n = self.n();
        (0..(1u32 << n)).flat_map(move |x| (0..(1u32 << n)).map(move |y| GroupElem { x, y }))
    }

    pub fn op(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        match self {
            GroupLaw::StarMv { .. } => GroupElem::new(a.x ^ b.x, a.y ^ b.y ^ (a.x & b.x)),
            GroupLaw::StarUv(f) => GroupElem::new(a.x ^ b.x, a.y ^ b.y ^ f.mul(a.x, b.x)),
            GroupLaw::Z4n { n } => {
                let mut out = GroupElem::IDENTITY;
                for k in 0..*n {
                    let digit = |e: GroupElem| (e.x >> k & 1) + 2 * (e.y >> k & 1);
                    let s = (digit(a) + digit(b)) % 4;
                    out.x |= (s & 1) << k;
                    out.y |= (s >> 1) << k;
                }
                out
            }
        }
    }

    pub fn inverse(&self, a: GroupElem) -> GroupElem {
        match self {
            GroupLaw::StarMv { .. } => GroupElem::new(a.x, a.y ^ a.x),
            GroupLaw::StarUv(f) => GroupElem::new(a.x, a.y ^ f.square(a.x)),
            GroupLaw::Z4n { n } => {
                let mut out = GroupElem::IDENTITY;
                for k in 0..*n {
                    let d = (a.x >> k & 1) + 2 * (a.y >> k & 1);
                    let s = (4 - d) % 4;
                    out.x |= (s & 1) << k;
                    out.y |= (s >> 1) << k;
                }
                out
            }
        }
    }

    pub fn element_order(&self, a: GroupElem) -> u32 {
        let mut p = a;
        let mut k = 1;
        while p != GroupElem::IDENTITY {
            p = self.op(p, a);
            k += 1;
        }
        k
    }

    /// Number of elements of each order.
    pub fn order_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for a in self.elements() {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    /// `N = {0} × F`.
    pub fn forbidden_subgroup(&self) -> Vec<GroupElem> {
        (0..(1u32 << self.n()))
            .map(|y| GroupElem::new(0, y))
            .collect()
    }

    /// `χ_{u,c}(x, y)`:
    ///
    /// * `star_mv`: `(-1)^(u·x + c·y) · i^wt(c⊙x)`
    /// * `star_uv`: `(-1)^(Tr(ux) + Tr(c²y) + σ(c,x)) · i^Tr(cx)`
    pub fn character(&self, u: u32, c: u32, a: GroupElem) -> Result<GaussianInt> {
        match self {
            GroupLaw::StarMv { .. } => {
                let sign = parity(u & a.x) ^ parity(c & a.y);
                Ok(Gaussian::unit(sign, (c & a.x).count_ones()))
            }
            GroupLaw::StarUv(f) => {
                let sign =
                    f.trace(f.mul(u, a.x)) ^ f.trace(f.mul(f.square(c), a.y)) ^ f.sigma(c, a.x);
                Ok(Gaussian::unit(sign, f.trace(f.mul(c, a.x)) as u32))
            }
            GroupLaw::Z4n { .. } => Err(Error::CharactersUnsupported),
        }
    }

    /// `χ_{u,c}(R) = Σ_{r∈R} χ_{u,c}(r)`.
    pub fn character_sum(&self, u: u32, c: u32, set: &[GroupElem]) -> Result<GaussianInt> {
        set.iter().map(|&a| self.character(u, c, a)).sum()
    }
}

/// `{(x, F(x))}`.
pub fn graph_of(f: &VectorialFunction) -> Vec<GroupElem> {
    f.domain()
        .points()
        .map(|x| GroupElem::new(x, f.eval(x)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FailingElement {
    pub element: GroupElem,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RdsReport {
    pub mu: u64,
    pub nu: u64,
    pub k: u64,
    pub lambda: u64,
    pub is_rds: bool,
    pub failing_element: Option<FailingElement>,
}

fn validated_set(law: &GroupLaw, set: &[GroupElem]) -> Result<Vec<GroupElem>> {
    let unique: BTreeSet<GroupElem> = set.iter().map(|&a| law.check(a)).collect::<Result<_>>()?;
    Ok(unique.into_iter().collect())
}

fn check_subgroup(law: &GroupLaw, sub: &BTreeSet<GroupElem>) -> Result<()> {
    if !sub.contains(&GroupElem::IDENTITY) {
        return Err(Error::NotASubgroup("identity missing".into()));
    }
    for &a in sub {
        for &b in sub {
            let p = law.op(a, b);
            if !sub.contains(&p) {
                return Err(Error::NotASubgroup(format!(
                    "({:#x},{:#x}) * ({:#x},{:#x}) leaves the set",
                    a.x, a.y, b.x, b.y
                )));
            }
        }
    }
    Ok(())
}

/// Counts, for every non-identity `d`, the ordered pairs `(r1, r2) ∈ R²`
/// with `r1 * r2^-1 = d`. `λ` is read off the first element outside `N` in
/// canonical order; the first element whose count disagrees is reported.
pub fn rds_verify_bruteforce(
    law: &GroupLaw,
    set: &[GroupElem],
    subgroup: &[GroupElem],
) -> Result<RdsReport> {
    let set = validated_set(law, set)?;
    let sub: BTreeSet<GroupElem> = validated_set(law, subgroup)?.into_iter().collect();
    check_subgroup(law, &sub)?;

    let mut tally: HashMap<GroupElem, u64> = HashMap::new();
    for &r1 in &set {
        for &r2 in &set {
            let d = law.op(r1, law.inverse(r2));
            if d != GroupElem::IDENTITY {
                *tally.entry(d).or_insert(0) += 1;
            }
        }
    }

    let nu = sub.len() as u64;
    let mut lambda = None;
    let mut failing = None;
    for d in law.elements() {
        if d == GroupElem::IDENTITY {
            continue;
        }
        let count = tally.get(&d).copied().unwrap_or(0);
        let expected = if sub.contains(&d) {
            0
        } else {
            *lambda.get_or_insert(count)
        };
        if count != expected {
            failing = Some(FailingElement { element: d, count });
            break;
        }
    }
    Ok(RdsReport {
        mu: law.order() as u64 / nu,
        nu,
        k: set.len() as u64,
        lambda: lambda.unwrap_or(0),
        is_rds: failing.is_none(),
        failing_element: failing,
    })
}

/// The character criterion for a `(2^n, 2^n, 2^n, 1)`-RDS relative to
/// `N = {0} × F`: `|χ_{0,0}(R)| = 2^n`, `χ_{u,0}(R) = 0` for `u ≠ 0`, and
/// `|χ_{u,c}(R)|² = 2^n` for every `c ≠ 0`.
pub fn rds_verify_characters(
    law: &GroupLaw,
    set: &[GroupElem],
    subgroup: &[GroupElem],
) -> Result<bool> {
    if matches!(law, GroupLaw::Z4n { .. }) {
        return Err(Error::CharactersUnsupported);
    }
    let sub: BTreeSet<GroupElem> = validated_set(law, subgroup)?.into_iter().collect();
    let forbidden: BTreeSet<GroupElem> = law.forbidden_subgroup().into_iter().collect();
    if sub != forbidden {
        return Err(Error::UnsupportedSubgroup);
    }
    let set = validated_set(law, set)?;
    let q = 1i64 << law.n();
    if set.len() as i64 != q {
        return Ok(false);
    }
    for c in 0..q as u32 {
        for u in 0..q as u32 {
            let norm = law.character_sum(u, c, &set)?.norm_sq();
            let expected = match (u, c) {
                (0, 0) => q * q,
                (_, 0) => 0,
                _ => q,
            };
            if norm != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
