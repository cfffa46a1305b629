//! Vectorial functions, their components, Dembowski–Ostrom polynomials and
//! the two modified-planarity tests.
//!
//! A function `F` is modified planar when, for every nonzero `a`, the map
//! `x ↦ F(x+a) + F(x) + a⊙x` (multivariate) or `x ↦ F(x+a) + F(x) + a·x`
//! (univariate, field product) is a permutation. Equivalently every
//! component is bent₄ for its matching twist: `c·F` is `c`-bent₄ on
//! `F_2^n`, and `Tr(c²F)` is `c`-bent₄ on `F_{2^n}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boolfun::TruthTable;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::gf2n::{FieldElement, FieldSpec};
use crate::transforms::{is_flat, transform};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorialFunction {
    domain: Domain,
    table: Vec<u32>,
}

impl VectorialFunction {
    pub fn new(domain: Domain, table: Vec<u32>) -> Result<Self> {
        if table.len() != domain.size() {
            return Err(Error::LengthMismatch {
                expected: domain.size(),
                found: table.len(),
            });
        }
        for &v in &table {
            domain.check_point(v as u64)?;
        }
        Ok(VectorialFunction { domain, table })
    }

    pub fn from_fn(domain: Domain, f: impl FnMut(u32) -> u32) -> Result<Self> {
        Self::new(domain, domain.points().map(f).collect())
    }

    pub fn zero(domain: Domain) -> Self {
        VectorialFunction {
            domain,
            table: vec![0; domain.size()],
        }
    }

    pub fn identity(domain: Domain) -> Self {
        VectorialFunction {
            domain,
            table: domain.points().collect(),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn n(&self) -> u32 {
        self.domain.n()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// `F(x+a) + F(x) + a⊙x` or `F(x+a) + F(x) + a·x`.
    pub fn shifted_difference(&self, a: u32, x: u32) -> u32 {
        let bilinear = match &self.domain {
            Domain::Multivariate { .. } => a & x,
            Domain::Univariate(f) => f.mul(a, x),
        };
        self.eval(x ^ a) ^ self.eval(x) ^ bilinear
    }
}

/// Dembowski–Ostrom polynomial plus affine part:
/// `Σ_{i<j} a_ij x^(2^i+2^j) + Σ_i b_i x^(2^i) + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoPolynomial {
    field: FieldSpec,
    quad: BTreeMap<(u32, u32), FieldElement>,
    lin: BTreeMap<u32, FieldElement>,
    constant: FieldElement,
}

impl DoPolynomial {
    pub fn new(
        field: FieldSpec,
        quad: BTreeMap<(u32, u32), FieldElement>,
        lin: BTreeMap<u32, FieldElement>,
        constant: FieldElement,
    ) -> Result<Self> {
        let n = field.n();
        for (&(i, j), &a) in &quad {
            if i >= j {
                return Err(Error::BadQuadraticTerm { i, j });
            }
            if j >= n {
                return Err(Error::ExponentOutOfRange { n, index: j });
            }
            field.check(a as u64)?;
        }
        for (&i, &b) in &lin {
            if i >= n {
                return Err(Error::ExponentOutOfRange { n, index: i });
            }
            field.check(b as u64)?;
        }
        field.check(constant as u64)?;
        Ok(DoPolynomial {
            field,
            quad,
            lin,
            constant,
        })
    }

    pub fn zero(field: FieldSpec) -> Self {
        DoPolynomial {
            field,
            quad: BTreeMap::new(),
            lin: BTreeMap::new(),
            constant: 0,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn quad(&self) -> &BTreeMap<(u32, u32), FieldElement> {
        &self.quad
    }

    pub fn lin(&self) -> &BTreeMap<u32, FieldElement> {
        &self.lin
    }

    pub fn constant(&self) -> FieldElement {
        self.constant
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let conj: Vec<FieldElement> = (0..f.n()).map(|k| f.frobenius(x, k)).collect();
        let mut acc = self.constant;
        for (&(i, j), &a) in &self.quad {
            acc ^= f.mul(a, f.mul(conj[i as usize], conj[j as usize]));
        }
        for (&i, &b) in &self.lin {
            acc ^= f.mul(b, conj[i as usize]);
        }
        acc
    }

    pub fn to_function(&self) -> VectorialFunction {
        VectorialFunction {
            domain: Domain::Univariate(self.field),
            table: self.field.elements().map(|x| self.eval(x)).collect(),
        }
    }
}

/// `x ↦ c·F(x)` for a multivariate `F`.
pub fn component_mv(f: &VectorialFunction, c: u32) -> Result<TruthTable> {
    let Domain::Multivariate { n } = f.domain else {
        return Err(Error::SettingMismatch {
            expected: "multivariate",
        });
    };
    if c == 0 {
        return Err(Error::ZeroComponent);
    }
    f.domain.check_point(c as u64)?;
    Ok(TruthTable::from_fn(n, |x| {
        (c & f.eval(x)).count_ones() & 1 == 1
    }))
}

/// `x ↦ Tr(c²F(x))` for a univariate `F`; indexed by the twist `c` it pairs
/// with.
pub fn component_uv(f: &VectorialFunction, c: FieldElement) -> Result<TruthTable> {
    let Domain::Univariate(field) = f.domain else {
        return Err(Error::SettingMismatch {
            expected: "univariate",
        });
    };
    if c == 0 {
        return Err(Error::ZeroComponent);
    }
    field.check(c as u64)?;
    let c2 = field.square(c);
    Ok(TruthTable::from_fn(field.n(), |x| {
        field.trace(field.mul(c2, f.eval(x)))
    }))
}

/// The component paired with twist `c` in either setting.
pub fn component(f: &VectorialFunction, c: u32) -> Result<TruthTable> {
    match f.domain {
        Domain::Multivariate { .. } => component_mv(f, c),
        Domain::Univariate(_) => component_uv(f, c),
    }
}

/// Direction `a` whose shifted difference map is not injective, with the
/// first colliding pair `x1 < x2` (smallest `x2`) and their common value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermWitness {
    pub direction: u32,
    pub x1: u32,
    pub x2: u32,
    pub value: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermVerdict {
    pub planar: bool,
    pub witness: Option<PermWitness>,
}

fn first_collision(
    f: &VectorialFunction,
    a: u32,
    seen: &mut [u64],
    first: &mut [u32],
) -> Option<PermWitness> {
    seen.iter_mut().for_each(|w| *w = 0);
    for x in f.domain.points() {
        let v = f.shifted_difference(a, x);
        let (word, bit) = ((v >> 6) as usize, v & 63);
        if seen[word] >> bit & 1 == 1 {
            return Some(PermWitness {
                direction: a,
                x1: first[v as usize],
                x2: x,
                value: v,
            });
        }
        seen[word] |= 1 << bit;
        first[v as usize] = x;
    }
    None
}

/// The permutation test over directions `a` in `range`.
pub fn perm_check_directions(
    f: &VectorialFunction,
    range: std::ops::Range<u32>,
) -> Option<PermWitness> {
    let size = f.domain.size();
    let mut seen = vec![0u64; size.div_ceil(64)];
    let mut first = vec![0u32; size];
    range
        .filter(|&a| a != 0)
        .find_map(|a| first_collision(f, a, &mut seen, &mut first))
}

/// Modified planarity by the permutation definition; the witness is the
/// smallest failing direction.
pub fn is_modified_planar_perm(f: &VectorialFunction) -> PermVerdict {
    let witness = perm_check_directions(f, 1..f.domain.size() as u32);
    PermVerdict {
        planar: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentVerdict {
    pub planar: bool,
    /// Smallest `c` whose component is not `c`-bent₄.
    pub failing_twist: Option<u32>,
}

/// Modified planarity by flat twisted spectra of every component.
pub fn is_modified_planar_components(f: &VectorialFunction) -> Result<ComponentVerdict> {
    for c in 1..f.domain.size() as u32 {
        let g = component(f, c)?;
        if !is_flat(&transform::<i64>(&f.domain, &g, c)?) {
            return Ok(ComponentVerdict {
                planar: false,
                failing_twist: Some(c),
            });
        }
    }
    Ok(ComponentVerdict {
        planar: true,
        failing_twist: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanarRoute {
    Perm,
    Components,
}

pub fn is_modified_planar(f: &VectorialFunction, route: PlanarRoute) -> Result<bool> {
    match route {
        PlanarRoute::Perm => Ok(is_modified_planar_perm(f).planar),
        PlanarRoute::Components => Ok(is_modified_planar_components(f)?.planar),
    }
}
