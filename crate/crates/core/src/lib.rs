//! Exact analysis of modified planar functions in characteristic 2.
//!
//! A function `F` on `F_2^n` or `F_{2^n}` is modified planar when all of
//! its shifted difference maps are permutations. This crate checks that
//! property three ways and cross-checks them:
//!
//! * directly, by occupancy vectors ([`planar::is_modified_planar_perm`]);
//! * through the components, whose twisted spectra must be flat
//!   ([`planar::is_modified_planar_components`]);
//! * through the graph of `F` as a relative difference set in a group
//!   isomorphic to `Z_4^n`, either by counting differences or by character
//!   sums ([`rds`]).
//!
//! All arithmetic is exact. Spectra are Gaussian integers generic over the
//! integer scalar; the aliases below fix the scalar to `i64`.

pub mod boolfun;
pub mod domain;
pub mod error;
pub mod formats;
pub mod gaussian;
pub mod gf2n;
pub mod planar;
pub mod rds;
pub mod search;
pub mod selftest;
pub mod transforms;

pub use boolfun::{shifted_derivative_mv, shifted_derivative_uv, TruthTable};
pub use domain::{Domain, Setting};
pub use error::{Error, Result};
pub use gaussian::{Gaussian, Scalar};
pub use gf2n::{make_field, FieldElement, FieldSpec};
pub use planar::{
    component, component_mv, component_uv, is_modified_planar_components, is_modified_planar_perm,
    DoPolynomial, VectorialFunction,
};
pub use rds::{
    graph_of, rds_verify_bruteforce, rds_verify_characters, GroupElem, GroupLaw, RdsReport,
};
pub use search::{run_search, FunctionClass, SearchFilter, SearchJob, SearchReport};
pub use transforms::{bent4_witnesses, fwht, inverse_twisted, is_flat, TwistedSpectrum};

/// Exact Gaussian integer with 64-bit components.
pub type GaussianInt = Gaussian<i64>;

/// A twisted spectrum over 64-bit Gaussian integers.
pub type Spectrum = TwistedSpectrum<i64>;

/// `U_g^c` over `i64`.
pub fn transform_u(g: &TruthTable, c: u32) -> Result<Spectrum> {
    transforms::transform_u(g, c)
}

/// `V_g^c` over `i64`.
pub fn transform_v(field: &FieldSpec, g: &TruthTable, c: FieldElement) -> Result<Spectrum> {
    transforms::transform_v(field, g, c)
}
