//! Class-restricted enumeration of vectorial functions filtered by modified
//! planarity.
//!
//! Every class is a list of coefficient slots, each an `n`-bit value:
//!
//! | class            | slots                                              |
//! |------------------|----------------------------------------------------|
//! | `all`            | `F(0), F(1), …, F(2^n - 1)`                        |
//! | `affine`         | uv: `b_0..b_{n-1}, const`; mv: columns `M e_k`, const |
//! | `do_quadratic`   | `a_ij` for `i < j` in lexicographic order          |
//! | `do_plus_affine` | the quadratic slots, then the affine ones          |
//!
//! A candidate's canonical index packs slot `k` into bits `n·k..n·(k+1)`.
//! Exhaustive jobs walk indices in increasing order; shards own contiguous
//! index ranges and are merged in order, so reports never depend on the
//! shard count. Sampled jobs draw candidate `j` from ChaCha8 keyed by the
//! seed on stream `j`.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Setting};
use crate::error::{Error, Result};
use crate::formats::FunctionFile;
use crate::gf2n::{make_field, FieldSpec};
use crate::planar::{
    is_modified_planar_components, is_modified_planar_perm, DoPolynomial, VectorialFunction,
};

/// Largest number of coefficient bits an exhaustive job may span.
pub const MAX_EXHAUSTIVE_BITS: u32 = 24;
pub const MAX_SAMPLE: u64 = 1 << 24;
pub const REPORT_CAP: usize = 10_000;
pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    All,
    Affine,
    DoQuadratic,
    DoPlusAffine,
}

impl std::str::FromStr for FunctionClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(FunctionClass::All),
            "affine" => Ok(FunctionClass::Affine),
            "do_quadratic" => Ok(FunctionClass::DoQuadratic),
            "do_plus_affine" => Ok(FunctionClass::DoPlusAffine),
            other => Err(Error::Parse(format!("unknown class {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchFilter {
    Perm,
    Components,
    Both,
}

impl std::str::FromStr for SearchFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perm" => Ok(SearchFilter::Perm),
            "components" => Ok(SearchFilter::Components),
            "both" => Ok(SearchFilter::Both),
            other => Err(Error::Parse(format!("unknown filter {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchJob {
    pub setting: Setting,
    pub n: u32,
    /// Univariate field; the default modulus is used when absent.
    pub field: Option<FieldSpec>,
    pub class: FunctionClass,
    pub filter: SearchFilter,
    pub shards: usize,
    pub seed: u64,
    pub sample: Option<u64>,
}

impl SearchJob {
    pub fn exhaustive(
        setting: Setting,
        n: u32,
        class: FunctionClass,
        filter: SearchFilter,
    ) -> Self {
        SearchJob {
            setting,
            n,
            field: None,
            class,
            filter,
            shards: 1,
            seed: 0,
            sample: None,
        }
    }

    pub fn domain(&self) -> Result<Domain> {
        match self.setting {
            Setting::Multivariate => Ok(Domain::Multivariate { n: self.n }),
            Setting::Univariate => {
                let field = match self.field {
                    Some(f) if f.n() != self.n => {
                        return Err(Error::DimensionMismatch {
                            expected: self.n,
                            found: f.n(),
                        })
                    }
                    Some(f) => f,
                    None => make_field(self.n, None)?,
                };
                Ok(Domain::Univariate(field))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub format_version: u32,
    pub examined: u64,
    pub passing: u64,
    pub cross_check: Option<bool>,
    /// Set when more than [`REPORT_CAP`] functions passed.
    pub truncated: bool,
    pub functions: Vec<FunctionFile>,
}

/// Slot layout of one class over one domain.
#[derive(Debug, Clone, Copy)]
pub struct ClassLayout {
    domain: Domain,
    class: FunctionClass,
}

impl ClassLayout {
    pub fn new(domain: Domain, class: FunctionClass) -> Result<Self> {
        let n = domain.n();
        let limit = match class {
            FunctionClass::All => 2,
            FunctionClass::Affine => 8,
            FunctionClass::DoQuadratic | FunctionClass::DoPlusAffine => 5,
        };
        if n > limit {
            return Err(Error::SearchBounds(format!(
                "class {class:?} is limited to n <= {limit}, got n = {n}"
            )));
        }
        Ok(ClassLayout { domain, class })
    }

    fn quad_pairs(&self) -> Vec<(u32, u32)> {
        let n = self.domain.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    }

    pub fn slot_count(&self) -> u32 {
        let n = self.domain.n();
        let quad = n * n.saturating_sub(1) / 2;
        match self.class {
            FunctionClass::All => 1 << n,
            FunctionClass::Affine => n + 1,
            FunctionClass::DoQuadratic => quad,
            FunctionClass::DoPlusAffine => quad + n + 1,
        }
    }

    pub fn index_bits(&self) -> u32 {
        self.slot_count() * self.domain.n()
    }

    /// Number of functions in the class, if it fits in a `u64`.
    pub fn count(&self) -> Option<u64> {
        let bits = self.index_bits();
        (bits < 64).then(|| 1u64 << bits)
    }

    pub fn decode(&self, index: u64) -> Vec<u32> {
        let n = self.domain.n();
        let mask = (1u64 << n) - 1;
        (0..self.slot_count())
            .map(|k| {
                let shift = n * k;
                if shift >= 64 {
                    0
                } else {
                    ((index >> shift) & mask) as u32
                }
            })
            .collect()
    }

    pub fn build(&self, coeffs: &[u32]) -> VectorialFunction {
        debug_assert_eq!(coeffs.len(), self.slot_count() as usize);
        let n = self.domain.n();
        let pairs = self.quad_pairs();
        let (quad, affine): (&[u32], &[u32]) = match self.class {
            FunctionClass::All => {
                return VectorialFunction::new(self.domain, coeffs.to_vec())
                    .expect("slots are n-bit values")
            }
            FunctionClass::Affine => (&[], coeffs),
            FunctionClass::DoQuadratic => (coeffs, &[]),
            FunctionClass::DoPlusAffine => coeffs.split_at(pairs.len()),
        };
        match self.domain {
            Domain::Univariate(field) => {
                let quad: BTreeMap<_, _> =
                    pairs.iter().copied().zip(quad.iter().copied()).collect();
                let (lin, constant) = match affine.split_last() {
                    Some((&c, lin)) => ((0..n).zip(lin.iter().copied()).collect(), c),
                    None => (BTreeMap::new(), 0),
                };
                DoPolynomial::new(field, quad, lin, constant)
                    .expect("slots are n-bit values")
                    .to_function()
            }
            Domain::Multivariate { .. } => VectorialFunction::from_fn(self.domain, |x| {
                let bit = |k: u32| x >> k & 1 == 1;
                let mut v = 0;
                for (&(i, j), &a) in pairs.iter().zip(quad) {
                    if bit(i) && bit(j) {
                        v ^= a;
                    }
                }
                if let Some((&c, cols)) = affine.split_last() {
                    v ^= c;
                    for (k, &col) in cols.iter().enumerate() {
                        if bit(k as u32) {
                            v ^= col;
                        }
                    }
                }
                v
            })
            .expect("slots are n-bit values"),
        }
    }

    fn sample(&self, seed: u64, j: u64) -> Vec<u32> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(j);
        let mask = (1u32 << self.domain.n()) - 1;
        (0..self.slot_count())
            .map(|_| rng.gen::<u32>() & mask)
            .collect()
    }
}

/// Every function of a class, in canonical order.
pub fn enumerate_class(
    domain: Domain,
    class: FunctionClass,
) -> Result<impl Iterator<Item = VectorialFunction>> {
    let layout = ClassLayout::new(domain, class)?;
    let count = exhaustive_count(&layout)?;
    Ok((0..count).map(move |i| layout.build(&layout.decode(i))))
}

fn exhaustive_count(layout: &ClassLayout) -> Result<u64> {
    let bits = layout.index_bits();
    if bits > MAX_EXHAUSTIVE_BITS {
        return Err(Error::SearchBounds(format!(
            "exhaustive enumeration spans 2^{bits} candidates (limit 2^{MAX_EXHAUSTIVE_BITS}); use a sampled job"
        )));
    }
    Ok(1 << bits)
}

struct ShardResult {
    examined: u64,
    passing: Vec<VectorialFunction>,
}

fn evaluate(f: &VectorialFunction, filter: SearchFilter) -> Result<bool> {
    match filter {
        SearchFilter::Perm => Ok(is_modified_planar_perm(f).planar),
        SearchFilter::Components => Ok(is_modified_planar_components(f)?.planar),
        SearchFilter::Both => {
            let perm = is_modified_planar_perm(f).planar;
            let components = is_modified_planar_components(f)?.planar;
            if perm != components {
                return Err(Error::RouteDisagreement {
                    table: f.table().to_vec(),
                    perm,
                    components,
                });
            }
            Ok(perm)
        }
    }
}

fn run_shard(
    layout: &ClassLayout,
    job: &SearchJob,
    range: std::ops::Range<u64>,
) -> Result<ShardResult> {
    let mut out = ShardResult {
        examined: 0,
        passing: Vec::new(),
    };
    for j in range {
        let coeffs = match job.sample {
            Some(_) => layout.sample(job.seed, j),
            None => layout.decode(j),
        };
        let f = layout.build(&coeffs);
        out.examined += 1;
        if evaluate(&f, job.filter)? {
            out.passing.push(f);
        }
    }
    Ok(out)
}

fn collect(job: &SearchJob) -> Result<ShardResult> {
    if job.shards == 0 {
        return Err(Error::SearchBounds("shard count must be at least 1".into()));
    }
    let layout = ClassLayout::new(job.domain()?, job.class)?;
    let total = match job.sample {
        Some(s) if s > MAX_SAMPLE => {
            return Err(Error::SearchBounds(format!(
                "sample size {s} exceeds {MAX_SAMPLE}"
            )))
        }
        Some(s) => s,
        None => exhaustive_count(&layout)?,
    };
    let shards = job.shards as u64;
    let bounds: Vec<u64> = (0..=shards).map(|k| total * k / shards).collect();
    let results: Vec<Result<ShardResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .windows(2)
            .map(|w| {
                let range = w[0]..w[1];
                let layout = &layout;
                scope.spawn(move || run_shard(layout, job, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut merged = ShardResult {
        examined: 0,
        passing: Vec::new(),
    };
    // first error in enumeration order wins
    for r in results {
        let r = r?;
        merged.examined += r.examined;
        merged.passing.extend(r.passing);
    }
    Ok(merged)
}

fn report(job: &SearchJob, r: &ShardResult) -> SearchReport {
    SearchReport {
        format_version: REPORT_FORMAT_VERSION,
        examined: r.examined,
        passing: r.passing.len() as u64,
        cross_check: (job.filter == SearchFilter::Both).then_some(true),
        truncated: r.passing.len() > REPORT_CAP,
        functions: r
            .passing
            .iter()
            .take(REPORT_CAP)
            .map(FunctionFile::from)
            .collect(),
    }
}

pub fn run_search(job: &SearchJob) -> Result<SearchReport> {
    let r = collect(job)?;
    Ok(report(job, &r))
}

/// Like [`run_search`], additionally writing every passing function to
/// `out` as one JSON object per line.
pub fn run_search_streaming(job: &SearchJob, out: &mut dyn Write) -> Result<SearchReport> {
    let r = collect(job)?;
    for f in &r.passing {
        let line = serde_json::to_string(&FunctionFile::from(f)).expect("serialisable");
        writeln!(out, "{line}").map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(report(job, &r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes() {
        let f3 = Domain::Univariate(make_field(3, None).unwrap());
        assert_eq!(
            enumerate_class(f3, FunctionClass::DoQuadratic)
                .unwrap()
                .count(),
            512
        );
        let f1 = Domain::Univariate(make_field(1, None).unwrap());
        assert_eq!(enumerate_class(f1, FunctionClass::All).unwrap().count(), 4);
        let mv2 = Domain::Multivariate { n: 2 };
        assert_eq!(
            enumerate_class(mv2, FunctionClass::All).unwrap().count(),
            256
        );
        assert_eq!(
            enumerate_class(mv2, FunctionClass::Affine).unwrap().count(),
            64
        );
    }

    #[test]
    fn classes_emit_each_function_once() {
        let f2 = Domain::Univariate(make_field(2, None).unwrap());
        let mv2 = Domain::Multivariate { n: 2 };
        for d in [f2, mv2] {
            let all: Vec<_> = enumerate_class(d, FunctionClass::All).unwrap().collect();
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), 256);
            // over F_4 every DO polynomial plus affine part is a distinct map
            let dpa: std::collections::HashSet<_> = enumerate_class(d, FunctionClass::DoPlusAffine)
                .unwrap()
                .collect();
            assert_eq!(dpa.len(), 256);
        }
    }

    #[test]
    fn canonical_order_of_all_class() {
        let mv2 = Domain::Multivariate { n: 2 };
        let v: Vec<_> = enumerate_class(mv2, FunctionClass::All)
            .unwrap()
            .take(5)
            .collect();
        assert_eq!(v[0].table(), &[0, 0, 0, 0]);
        assert_eq!(v[1].table(), &[1, 0, 0, 0]);
        assert_eq!(v[4].table(), &[0, 1, 0, 0]);
    }

    #[test]
    fn bounds_are_enforced() {
        let job = SearchJob::exhaustive(
            Setting::Multivariate,
            3,
            FunctionClass::All,
            SearchFilter::Perm,
        );
        assert!(matches!(run_search(&job), Err(Error::SearchBounds(_))));
        let job = SearchJob::exhaustive(
            Setting::Univariate,
            6,
            FunctionClass::DoQuadratic,
            SearchFilter::Perm,
        );
        assert!(matches!(run_search(&job), Err(Error::SearchBounds(_))));
        let job = SearchJob::exhaustive(
            Setting::Univariate,
            5,
            FunctionClass::DoQuadratic,
            SearchFilter::Perm,
        );
        assert!(matches!(run_search(&job), Err(Error::SearchBounds(_))));
        let mut job = SearchJob::exhaustive(
            Setting::Univariate,
            2,
            FunctionClass::All,
            SearchFilter::Perm,
        );
        job.shards = 0;
        assert!(matches!(run_search(&job), Err(Error::SearchBounds(_))));
    }

    #[test]
    fn small_univariate_searches() {
        let job = SearchJob::exhaustive(
            Setting::Univariate,
            1,
            FunctionClass::All,
            SearchFilter::Both,
        );
        let r = run_search(&job).unwrap();
        assert_eq!((r.examined, r.passing, r.cross_check), (4, 4, Some(true)));
        let job = SearchJob::exhaustive(
            Setting::Univariate,
            2,
            FunctionClass::Affine,
            SearchFilter::Both,
        );
        let r = run_search(&job).unwrap();
        assert_eq!((r.examined, r.passing), (64, 64));
    }

    #[test]
    fn sampled_jobs_are_reproducible_across_shards() {
        let mut job = SearchJob::exhaustive(
            Setting::Univariate,
            5,
            FunctionClass::DoQuadratic,
            SearchFilter::Both,
        );
        job.sample = Some(200);
        job.seed = 42;
        let a = run_search(&job).unwrap();
        job.shards = 3;
        let b = run_search(&job).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.examined, 200);
        job.seed = 43;
        let c = run_search(&job).unwrap();
        assert_eq!(c.examined, 200);
    }

    #[test]
    fn streaming_writes_every_passing_function() {
        let job = SearchJob::exhaustive(
            Setting::Univariate,
            2,
            FunctionClass::Affine,
            SearchFilter::Perm,
        );
        let mut buf = Vec::new();
        let r = run_search_streaming(&job, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count() as u64, r.passing);
        assert!(text.lines().next().unwrap().starts_with(r#"{"mode":"uv""#));
    }
}
