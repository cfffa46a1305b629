//! JSON and CSV interchange formats.
//!
//! * field: `{"n": 3, "modulus": "0xb"}`
//! * truth table: `{"mode": "mv"|"uv", "n": 2, "bits": "0xa"}`, bit `t` of
//!   the hex integer is `g(t)`; an optional `"field"` overrides the default
//!   modulus of a univariate table
//! * function: `{"mode": .., "n": .., "field": {..}, "table": ["0x..", ..]}`
//! * DO polynomial: `{"quad": {"i,j": "0x.."}, "lin": {"i": "0x.."}, "const": "0x.."}`
//! * RDS input: `{"group": {"law": "star_uv", "n": 2}, "elements": [["0x..", "0x.."], ..]}`
//! * spectrum: CSV rows `u,re,im,norm_sq` with `u` in hex

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boolfun::TruthTable;
use crate::domain::{Domain, Setting};
use crate::error::{Error, Result};
use crate::gf2n::{make_field, FieldSpec};
use crate::planar::{DoPolynomial, VectorialFunction};
use crate::rds::{GroupElem, GroupLaw, RdsReport};
use crate::transforms::TwistedSpectrum;

pub const FORMAT_VERSION: u32 = 1;

pub fn format_hex(v: u64) -> String {
    format!("{v:#x}")
}

pub fn parse_hex(s: &str) -> Result<u64> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| Error::Parse(format!("bad hex value {s:?}: {e}")))
}

fn field_or_default(n: u32, field: Option<FieldSpec>) -> Result<FieldSpec> {
    match field {
        Some(f) if f.n() != n => Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        }),
        Some(f) => Ok(f),
        None => make_field(n, None),
    }
}

/// Builds the domain for a mode tag, `n`, and an optional field override.
pub fn domain_for(setting: Setting, n: u32, field: Option<FieldSpec>) -> Result<Domain> {
    match setting {
        Setting::Multivariate => {
            if !(1..=crate::gf2n::MAX_DEGREE).contains(&n) {
                return Err(Error::DegreeOutOfRange(n));
            }
            Ok(Domain::Multivariate { n })
        }
        Setting::Univariate => Ok(Domain::Univariate(field_or_default(n, field)?)),
    }
}

/// Hex image of a truth table: bit `t` of the integer is entry `t`.
pub fn table_to_hex(t: &TruthTable) -> String {
    let digits = (t.len() / 4).max(1);
    let mut s = String::with_capacity(digits + 2);
    s.push_str("0x");
    for d in (0..digits).rev() {
        let word = t.words()[d / 16];
        let nibble = (word >> (4 * (d % 16))) & 0xf;
        write!(s, "{nibble:x}").unwrap();
    }
    s
}

pub fn table_from_hex(n: u32, hex: &str) -> Result<TruthTable> {
    let digits = hex
        .strip_prefix("0x")
        .or_else(|| hex.strip_prefix("0X"))
        .unwrap_or(hex);
    if digits.is_empty() {
        return Err(Error::Parse("empty truth table".into()));
    }
    let len = 1usize << n;
    let mut words = vec![0u64; len.div_ceil(64)];
    for (i, ch) in digits.chars().rev().enumerate() {
        let v = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?} in truth table")))?
            as u64;
        if v == 0 {
            continue;
        }
        if 4 * i + (64 - v.leading_zeros() as usize) > len {
            return Err(Error::Parse(format!(
                "truth table has bits set beyond index 2^{n}"
            )));
        }
        words[i / 16] |= v << (4 * (i % 16));
    }
    TruthTable::from_words(n, words)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableFile {
    pub mode: Setting,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub bits: String,
}

impl TruthTableFile {
    pub fn new(domain: &Domain, table: &TruthTable) -> Self {
        // the field is only written when it is not the default one
        let field = domain
            .field()
            .filter(|f| make_field(f.n(), None).ok() != Some(**f))
            .copied();
        TruthTableFile {
            mode: domain.setting(),
            n: table.n(),
            field,
            bits: table_to_hex(table),
        }
    }

    pub fn decode(&self) -> Result<(Domain, TruthTable)> {
        let domain = domain_for(self.mode, self.n, self.field)?;
        Ok((domain, table_from_hex(self.n, &self.bits)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub mode: Setting,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub table: Vec<String>,
}

impl From<&VectorialFunction> for FunctionFile {
    fn from(f: &VectorialFunction) -> Self {
        FunctionFile {
            mode: f.domain().setting(),
            n: f.n(),
            field: f.domain().field().copied(),
            table: f.table().iter().map(|&v| format_hex(v as u64)).collect(),
        }
    }
}

impl FunctionFile {
    pub fn decode(&self) -> Result<VectorialFunction> {
        let domain = domain_for(self.mode, self.n, self.field)?;
        let table = self
            .table
            .iter()
            .map(|s| parse_hex(s).and_then(|v| domain.check_point(v)))
            .collect::<Result<Vec<u32>>>()?;
        VectorialFunction::new(domain, table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoPolynomialFile {
    #[serde(default)]
    pub quad: BTreeMap<String, String>,
    #[serde(default)]
    pub lin: BTreeMap<String, String>,
    #[serde(rename = "const", default = "zero_hex")]
    pub constant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

fn zero_hex() -> String {
    "0x0".into()
}

fn parse_index(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent index {s:?}")))
}

impl DoPolynomialFile {
    /// Decodes over `field`, or the file's own field, or the default field
    /// of degree `n`.
    pub fn decode(&self, n: Option<u32>) -> Result<DoPolynomial> {
        let field = match (self.field, n) {
            (Some(f), Some(n)) if f.n() != n => {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.n(),
                })
            }
            (Some(f), _) => f,
            (None, Some(n)) => make_field(n, None)?,
            (None, None) => {
                return Err(Error::Parse(
                    "DO polynomial needs a field or an explicit n".into(),
                ))
            }
        };
        let mut quad = BTreeMap::new();
        for (k, v) in &self.quad {
            let (i, j) = k
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("quadratic key {k:?} is not \"i,j\"")))?;
            quad.insert(
                (parse_index(i)?, parse_index(j)?),
                field.check(parse_hex(v)?)?,
            );
        }
        let mut lin = BTreeMap::new();
        for (k, v) in &self.lin {
            lin.insert(parse_index(k)?, field.check(parse_hex(v)?)?);
        }
        let constant = field.check(parse_hex(&self.constant)?)?;
        DoPolynomial::new(field, quad, lin, constant)
    }
}

impl From<&DoPolynomial> for DoPolynomialFile {
    fn from(p: &DoPolynomial) -> Self {
        DoPolynomialFile {
            quad: p
                .quad()
                .iter()
                .map(|(&(i, j), &a)| (format!("{i},{j}"), format_hex(a as u64)))
                .collect(),
            lin: p
                .lin()
                .iter()
                .map(|(&i, &b)| (i.to_string(), format_hex(b as u64)))
                .collect(),
            constant: format_hex(p.constant() as u64),
            field: Some(*p.field()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub law: String,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

impl GroupFile {
    pub fn decode(&self) -> Result<GroupLaw> {
        if !(1..=crate::gf2n::MAX_DEGREE).contains(&self.n) {
            return Err(Error::DegreeOutOfRange(self.n));
        }
        match self.law.as_str() {
            "star_mv" => Ok(GroupLaw::StarMv { n: self.n }),
            "star_uv" => Ok(GroupLaw::StarUv(field_or_default(self.n, self.field)?)),
            "z4n" => Ok(GroupLaw::Z4n { n: self.n }),
            other => Err(Error::Parse(format!(
                "unknown group law {other:?}, expected star_mv, star_uv or z4n"
            ))),
        }
    }
}

impl From<&GroupLaw> for GroupFile {
    fn from(g: &GroupLaw) -> Self {
        GroupFile {
            law: g.name().into(),
            n: g.n(),
            field: match g {
                GroupLaw::StarUv(f) => Some(*f),
                _ => None,
            },
        }
    }
}

pub type ElemPair = [String; 2];

fn encode_elem(e: &GroupElem) -> ElemPair {
    [format_hex(e.x as u64), format_hex(e.y as u64)]
}

fn decode_elems(law: &GroupLaw, pairs: &[ElemPair]) -> Result<Vec<GroupElem>> {
    pairs
        .iter()
        .map(|[x, y]| {
            let e = GroupElem::new(
                u32::try_from(parse_hex(x)?).unwrap_or(u32::MAX),
                u32::try_from(parse_hex(y)?).unwrap_or(u32::MAX),
            );
            law.check(e)
        })
        .collect()
}

/// A group, a candidate set, and optionally the subgroup to test against
/// (the forbidden subgroup `{0} × F` when omitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdsInput {
    pub group: GroupFile,
    pub elements: Vec<ElemPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<ElemPair>>,
}

pub struct DecodedRdsInput {
    pub law: GroupLaw,
    pub elements: Vec<GroupElem>,
    pub subgroup: Vec<GroupElem>,
}

impl RdsInput {
    pub fn new(law: &GroupLaw, elements: &[GroupElem]) -> Self {
        RdsInput {
            group: GroupFile::from(law),
            elements: elements.iter().map(encode_elem).collect(),
            subgroup: None,
        }
    }

    pub fn decode(&self) -> Result<DecodedRdsInput> {
        let law = self.group.decode()?;
        let elements = decode_elems(&law, &self.elements)?;
        let subgroup = match &self.subgroup {
            Some(s) => decode_elems(&law, s)?,
            None => law.forbidden_subgroup(),
        };
        Ok(DecodedRdsInput {
            law,
            elements,
            subgroup,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailingElementOutput {
    pub element: ElemPair,
    pub count: u64,
}

/// JSON report of both RDS verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdsReportOutput {
    pub format_version: u32,
    pub group: GroupFile,
    pub mu: u64,
    pub nu: u64,
    pub k: u64,
    pub lambda: u64,
    pub is_rds: bool,
    pub failing_element: Option<FailingElementOutput>,
    /// Character criterion verdict; absent where it does not apply.
    pub characters: Option<bool>,
}

impl RdsReportOutput {
    pub fn new(law: &GroupLaw, r: &RdsReport, characters: Option<bool>) -> Self {
        RdsReportOutput {
            format_version: FORMAT_VERSION,
            group: GroupFile::from(law),
            mu: r.mu,
            nu: r.nu,
            k: r.k,
            lambda: r.lambda,
            is_rds: r.is_rds,
            failing_element: r.failing_element.map(|f| FailingElementOutput {
                element: encode_elem(&f.element),
                count: f.count,
            }),
            characters,
        }
    }
}

/// `u,re,im,norm_sq` rows, one per `u`, after a header line.
pub fn spectrum_csv(s: &TwistedSpectrum<i64>) -> String {
    let mut out = String::from("u,re,im,norm_sq\n");
    for (u, v) in s.values.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{}",
            format_hex(u as u64),
            v.re,
            v.im,
            v.norm_sq()
        )
        .unwrap();
    }
    out
}
