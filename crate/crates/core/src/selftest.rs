//! A quick battery of known values and cross-checks, run by `mpf selftest`.

use crate::boolfun::TruthTable;
use crate::domain::{Domain, Setting};
use crate::gaussian::Gaussian;
use crate::gf2n::make_field;
use crate::planar::{is_modified_planar_components, is_modified_planar_perm, VectorialFunction};
use crate::rds::{graph_of, rds_verify_bruteforce, rds_verify_characters, GroupLaw};
use crate::search::{run_search, FunctionClass, SearchFilter, SearchJob};
use crate::transforms::{bent4_witnesses, inverse_twisted, is_flat, transform, twisted_input};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

fn f4_arithmetic() -> bool {
    let f = make_field(2, None).unwrap();
    f.modulus() == 0b111
        && f.mul(2, 2) == 3
        && f.trace(2)
        && !f.trace(1)
        && f.sigma(1, 2)
        && f.sigma(1, 1)
        && make_field(3, None).unwrap().modulus() == 0b1011
}

fn transform_values() -> bool {
    let f = make_field(2, None).unwrap();
    let zero = TruthTable::zero(2);
    let u = transform::<i64>(&Domain::Multivariate { n: 2 }, &zero, 3).unwrap();
    let v = transform::<i64>(&Domain::Univariate(f), &zero, 1).unwrap();
    u.values[0] == Gaussian::new(0, 2) && v.values[0] == Gaussian::new(0, -2) && is_flat(&v)
}

fn witnesses() -> bool {
    let f = make_field(2, None).unwrap();
    let zero = TruthTable::zero(2);
    bent4_witnesses(&Domain::Univariate(f), &zero).unwrap() == vec![1, 2, 3]
        && bent4_witnesses(&Domain::Multivariate { n: 2 }, &zero).unwrap() == vec![3]
}

fn inverse_round_trip() -> bool {
    let f = make_field(4, None).unwrap();
    let g = TruthTable::from_fn(4, |x| (x * 5 + 1) % 7 < 3);
    [Domain::Multivariate { n: 4 }, Domain::Univariate(f)]
        .iter()
        .all(|d| {
            (0..16).all(|c| {
                let s = transform::<i64>(d, &g, c).unwrap();
                inverse_twisted(&s).unwrap() == twisted_input::<i64>(d, &g, c).unwrap()
            })
        })
}

fn zero_function_split() -> bool {
    (2..=4).all(|n| {
        let uv = VectorialFunction::zero(Domain::Univariate(make_field(n, None).unwrap()));
        let mv = VectorialFunction::zero(Domain::Multivariate { n });
        is_modified_planar_perm(&uv).planar && !is_modified_planar_perm(&mv).planar
    })
}

fn four_way_agreement(setting: Setting) -> bool {
    let domain = match setting {
        Setting::Multivariate => Domain::Multivariate { n: 2 },
        Setting::Univariate => Domain::Univariate(make_field(2, None).unwrap()),
    };
    let law = GroupLaw::for_domain(&domain);
    let n = law.forbidden_subgroup();
    (0u32..256).all(|code| {
        let f = VectorialFunction::from_fn(domain, |x| code >> (2 * x) & 3).unwrap();
        let r = graph_of(&f);
        let perm = is_modified_planar_perm(&f).planar;
        perm == is_modified_planar_components(&f).unwrap().planar
            && perm == rds_verify_bruteforce(&law, &r, &n).unwrap().is_rds
            && perm == rds_verify_characters(&law, &r, &n).unwrap()
    })
}

fn affine_search() -> bool {
    let job = SearchJob::exhaustive(
        Setting::Univariate,
        2,
        FunctionClass::Affine,
        SearchFilter::Both,
    );
    run_search(&job).is_ok_and(|r| r.examined == 64 && r.passing == 64)
}

type Probe = fn() -> bool;

pub fn run() -> Vec<Check> {
    let checks: [(&'static str, Probe); 8] = [
        ("F_4 arithmetic, trace and sigma", f4_arithmetic),
        ("twisted transform values", transform_values),
        ("bent4 witnesses of the zero function", witnesses),
        ("inverse twisted transform round trip", inverse_round_trip),
        ("zero function: uv planar, mv not", zero_function_split),
        ("four-way agreement, all maps on F_2^2", || {
            four_way_agreement(Setting::Multivariate)
        }),
        ("four-way agreement, all maps on F_4", || {
            four_way_agreement(Setting::Univariate)
        }),
        ("affine class over F_4 is planar", affine_search),
    ];
    checks
        .iter()
        .map(|&(name, f)| Check { name, passed: f() })
        .collect()
}
