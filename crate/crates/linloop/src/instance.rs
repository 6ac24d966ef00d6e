//! Loop instances: the file format, entry sources, homogenisation, and
//! precision-indexed refinement into interval data.

use crate::dyadic::{Dir, Dyadic};
use crate::interval::DyadicInterval;
use crate::ivmatrix::{IntervalMatrix, IntervalVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational scalar; kept in lowest terms with positive denominator by
/// the underlying representation.
pub type RationalScalar = BigRational;

/// Dyadic precision used to enclose literal `[lo,hi]` entries whose
/// endpoints are not dyadic (outward rounding keeps the enclosure sound).
const INTERVAL_ENTRY_PRECISION: u64 = 128;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed instance file: {0}")]
    Json(String),
    #[error("unknown instance kind `{0}` (expected \"linear\" or \"affine\")")]
    UnknownKind(String),
    #[error("malformed entry `{0}`")]
    Syntax(String),
    #[error("zero denominator in entry `{0}`")]
    ZeroDenominator(String),
    #[error("empty interval entry `{0}` (lower endpoint exceeds upper)")]
    EmptyInterval(String),
    #[error("dimension error: {0}")]
    Dimension(String),
}

#[derive(Debug, Error)]
pub enum RefineError {
    #[error("entry oracle failed at precision {precision}: {message}")]
    OracleFailure { precision: u64, message: String },
}

#[derive(Debug, Error)]
pub enum SerializeError {
    #[error("instance contains an opaque oracle entry; only exact and interval entries serialize")]
    OpaqueEntry,
}

/// One matrix or vector entry: exact rational data, a literal interval
/// (physically uncertain data of fixed width), or an external refinement
/// oracle answering precision queries.
#[derive(Clone)]
pub enum EntrySource {
    Exact(RationalScalar),
    ConstantInterval(DyadicInterval),
    Oracle(Arc<dyn Fn(u64) -> Result<DyadicInterval, String> + Send + Sync>),
}

impl EntrySource {
    pub fn from_i64(v: i64) -> EntrySource {
        EntrySource::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    /// Interval of width at most `2^-p` containing the represented real,
    /// except that constant-interval entries are returned unchanged (their
    /// width caps the achievable precision). The flag reports whether the
    /// cap was hit.
    pub fn refine(&self, p: u64) -> Result<(DyadicInterval, bool), RefineError> {
        let width_bound = Dyadic::from_i64_exp(1, -(p as i64));
        match self {
            EntrySource::Exact(r) => Ok((DyadicInterval::from_rational(r, p), false)),
            EntrySource::ConstantInterval(iv) => {
                let capped = iv.width() > width_bound;
                Ok((iv.with_precision(p.max(iv.precision())), capped))
            }
            EntrySource::Oracle(f) => {
                let iv = f(p).map_err(|message| RefineError::OracleFailure {
                    precision: p,
                    message,
                })?;
                let capped = iv.width() > width_bound;
                Ok((iv, capped))
            }
        }
    }

    pub fn negated(&self) -> EntrySource {
        match self {
            EntrySource::Exact(r) => EntrySource::Exact(-r),
            EntrySource::ConstantInterval(iv) => EntrySource::ConstantInterval(iv.neg()),
            EntrySource::Oracle(f) => {
                let f = Arc::clone(f);
                EntrySource::Oracle(Arc::new(move |p| f(p).map(|iv| iv.neg())))
            }
        }
    }

    pub fn as_exact(&self) -> Option<&RationalScalar> {
        match self {
            EntrySource::Exact(r) => Some(r),
            _ => None,
        }
    }

    fn to_entry_string(&self) -> Result<String, SerializeError> {
        match self {
            EntrySource::Exact(r) => Ok(rational_to_entry_string(r)),
            EntrySource::ConstantInterval(iv) => Ok(format!(
                "[{},{}]",
                iv.lo().to_rational_string(),
                iv.hi().to_rational_string()
            )),
            EntrySource::Oracle(_) => Err(SerializeError::OpaqueEntry),
        }
    }
}

impl fmt::Debug for EntrySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntrySource::Exact(r) => write!(f, "Exact({})", r),
            EntrySource::ConstantInterval(iv) => write!(f, "ConstantInterval({})", iv),
            EntrySource::Oracle(_) => write!(f, "Oracle(..)"),
        }
    }
}

impl PartialEq for EntrySource {
    fn eq(&self, other: &EntrySource) -> bool {
        match (self, other) {
            (EntrySource::Exact(a), EntrySource::Exact(b)) => a == b,
            (EntrySource::ConstantInterval(a), EntrySource::ConstantInterval(b)) => {
                a.lo() == b.lo() && a.hi() == b.hi()
            }
            _ => false,
        }
    }
}

fn rational_to_entry_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Linear,
    Affine,
}

/// A linear `(A, B)` or affine `(A, b, B, eta)` loop instance. Immutable
/// after construction; refinement oracles are pure functions of `(entry, p)`,
/// so instances are safe to share between concurrent workers.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopInstance {
    kind: Kind,
    n: usize,
    m: usize,
    a: Vec<Vec<EntrySource>>,
    b_mat: Vec<Vec<EntrySource>>,
    b_vec: Option<Vec<EntrySource>>,
    eta: Option<Vec<EntrySource>>,
}

/// All instance data refined to a common precision.
#[derive(Debug, Clone)]
pub struct RefinedInstance {
    pub a: IntervalMatrix,
    pub b_mat: IntervalMatrix,
    pub b_vec: Option<IntervalVector>,
    pub eta: Option<IntervalVector>,
    /// Some entry could not reach width `2^-p` (constant-interval data).
    pub precision_capped: bool,
    pub precision: u64,
}

impl LoopInstance {
    pub fn new_linear(
        a: Vec<Vec<EntrySource>>,
        b_mat: Vec<Vec<EntrySource>>,
    ) -> Result<LoopInstance, ParseError> {
        let (n, m) = check_shapes(&a, &b_mat, None, None)?;
        Ok(LoopInstance {
            kind: Kind::Linear,
            n,
            m,
            a,
            b_mat,
            b_vec: None,
            eta: None,
        })
    }

    pub fn new_affine(
        a: Vec<Vec<EntrySource>>,
        b_vec: Vec<EntrySource>,
        b_mat: Vec<Vec<EntrySource>>,
        eta: Vec<EntrySource>,
    ) -> Result<LoopInstance, ParseError> {
        let (n, m) = check_shapes(&a, &b_mat, Some(&b_vec), Some(&eta))?;
        Ok(LoopInstance {
            kind: Kind::Affine,
            n,
            m,
            a,
            b_mat,
            b_vec: Some(b_vec),
            eta: Some(eta),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// State dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Constraint count `m`.
    pub fn constraints(&self) -> usize {
        self.m
    }

    pub fn a_entries(&self) -> &[Vec<EntrySource>] {
        &self.a
    }

    pub fn b_mat_entries(&self) -> &[Vec<EntrySource>] {
        &self.b_mat
    }

    pub fn b_vec_entries(&self) -> Option<&[EntrySource]> {
        self.b_vec.as_deref()
    }

    pub fn eta_entries(&self) -> Option<&[EntrySource]> {
        self.eta.as_deref()
    }

    /// True when every entry is an exact rational.
    pub fn is_rational(&self) -> bool {
        let all = |rows: &[Vec<EntrySource>]| {
            rows.iter()
                .all(|r| r.iter().all(|e| matches!(e, EntrySource::Exact(_))))
        };
        all(&self.a)
            && all(&self.b_mat)
            && self
                .b_vec
                .iter()
                .all(|v| v.iter().all(|e| matches!(e, EntrySource::Exact(_))))
            && self
                .eta
                .iter()
                .all(|v| v.iter().all(|e| matches!(e, EntrySource::Exact(_))))
    }

    /// Refines every entry to precision `p` (interval widths at most `2^-p`
    /// except where constant-interval entries cap the precision).
    pub fn refine(&self, p: u64) -> Result<RefinedInstance, RefineError> {
        let mut capped = false;
        let mut refine_matrix = |rows: &[Vec<EntrySource>]| -> Result<IntervalMatrix, RefineError> {
            let mut entries = Vec::new();
            for row in rows {
                for e in row {
                    let (iv, c) = e.refine(p)?;
                    capped |= c;
                    entries.push(iv);
                }
            }
            Ok(IntervalMatrix::new(rows.len(), rows[0].len(), entries))
        };
        let a = refine_matrix(&self.a)?;
        let b_mat = refine_matrix(&self.b_mat)?;
        let mut refine_vec = |v: &Option<Vec<EntrySource>>| -> Result<Option<IntervalVector>, RefineError> {
            match v {
                None => Ok(None),
                Some(v) => {
                    let mut out = Vec::with_capacity(v.len());
                    for e in v {
                        let (iv, c) = e.refine(p)?;
                        capped |= c;
                        out.push(iv);
                    }
                    Ok(Some(out))
                }
            }
        };
        let b_vec = refine_vec(&self.b_vec)?;
        let eta = refine_vec(&self.eta)?;
        Ok(RefinedInstance {
            a,
            b_mat,
            b_vec,
            eta,
            precision_capped: capped,
            precision: p,
        })
    }
}

fn check_shapes(
    a: &[Vec<EntrySource>],
    b_mat: &[Vec<EntrySource>],
    b_vec: Option<&[EntrySource]>,
    eta: Option<&[EntrySource]>,
) -> Result<(usize, usize), ParseError> {
    let n = a.len();
    if n == 0 {
        return Err(ParseError::Dimension("state dimension n must be at least 1".into()));
    }
    for row in a {
        if row.len() != n {
            return Err(ParseError::Dimension(format!(
                "A must be square: found row of length {} in a {}-dimensional system",
                row.len(),
                n
            )));
        }
    }
    let m = b_mat.len();
    if m == 0 {
        return Err(ParseError::Dimension("constraint count m must be at least 1".into()));
    }
    for row in b_mat {
        if row.len() != n {
            return Err(ParseError::Dimension(format!(
                "B row length {} does not match state dimension {}",
                row.len(),
                n
            )));
        }
    }
    if let Some(b) = b_vec {
        if b.len() != n {
            return Err(ParseError::Dimension(format!(
                "b length {} does not match state dimension {}",
                b.len(),
                n
            )));
        }
    }
    if let Some(e) = eta {
        if e.len() != m {
            return Err(ParseError::Dimension(format!(
                "eta length {} does not match constraint count {}",
                e.len(),
                m
            )));
        }
    }
    Ok((n, m))
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    kind: String,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(rename = "B")]
    b_mat: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<String>>,
}

/// Parses the scalar entry grammar: `-?[0-9]+(/[1-9][0-9]*)?` or a decimal
/// `-?[0-9]+\.[0-9]+`, both interpreted exactly.
pub fn parse_rational(s: &str) -> Result<RationalScalar, ParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseError::Syntax(s.to_string()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = parse_integer(num).ok_or_else(|| ParseError::Syntax(s.to_string()))?;
        let d = parse_unsigned(den).ok_or_else(|| ParseError::Syntax(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseError::ZeroDenominator(s.to_string()));
        }
        if den.starts_with('0') {
            // Grammar demands [1-9][0-9]*.
            return Err(ParseError::Syntax(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let n = parse_integer(int_part).ok_or_else(|| ParseError::Syntax(s.to_string()))?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::Syntax(s.to_string()));
        }
        let frac = parse_unsigned(frac_part).ok_or_else(|| ParseError::Syntax(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let negative = int_part.starts_with('-');
        let whole = BigRational::from_integer(n);
        let fractional = BigRational::new(frac, scale);
        return Ok(if negative {
            whole - fractional
        } else {
            whole + fractional
        });
    }
    parse_integer(t)
        .map(BigRational::from_integer)
        .ok_or_else(|| ParseError::Syntax(s.to_string()))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_entry(s: &str) -> Result<EntrySource, ParseError> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| ParseError::Syntax(s.to_string()))?;
        let (lo_s, hi_s) = inner
            .split_once(',')
            .ok_or_else(|| ParseError::Syntax(s.to_string()))?;
        let lo = parse_rational(lo_s)?;
        let hi = parse_rational(hi_s)?;
        if lo > hi {
            return Err(ParseError::EmptyInterval(s.to_string()));
        }
        let iv = DyadicInterval::new(
            Dyadic::from_rational(&lo, INTERVAL_ENTRY_PRECISION, Dir::Down),
            Dyadic::from_rational(&hi, INTERVAL_ENTRY_PRECISION, Dir::Up),
            INTERVAL_ENTRY_PRECISION,
        );
        return Ok(EntrySource::ConstantInterval(iv));
    }
    Ok(EntrySource::Exact(parse_rational(t)?))
}

fn parse_entry_matrix(rows: &[Vec<String>]) -> Result<Vec<Vec<EntrySource>>, ParseError> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_entry(s)).collect())
        .collect()
}

fn parse_entry_vector(v: &[String]) -> Result<Vec<EntrySource>, ParseError> {
    v.iter().map(|s| parse_entry(s)).collect()
}

/// Parses an instance file (UTF-8 JSON, see the README for the schema).
pub fn parse_instance(text: &str) -> Result<LoopInstance, ParseError> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let a = parse_entry_matrix(&raw.a)?;
    let b_mat = parse_entry_matrix(&raw.b_mat)?;
    match raw.kind.as_str() {
        "linear" => {
            if raw.b.is_some() || raw.eta.is_some() {
                return Err(ParseError::Dimension(
                    "linear instances must not carry b or eta".into(),
                ));
            }
            LoopInstance::new_linear(a, b_mat)
        }
        "affine" => {
            let b = raw.b.ok_or_else(|| {
                ParseError::Dimension("affine instances require the b vector".into())
            })?;
            let eta = raw.eta.ok_or_else(|| {
                ParseError::Dimension("affine instances require the eta vector".into())
            })?;
            LoopInstance::new_affine(a, parse_entry_vector(&b)?, b_mat, parse_entry_vector(&eta)?)
        }
        other => Err(ParseError::UnknownKind(other.to_string())),
    }
}

/// Serializes an instance back to the file format. Inverse of
/// `parse_instance` up to entry formatting.
pub fn serialize_instance(inst: &LoopInstance) -> Result<String, SerializeError> {
    let to_rows = |rows: &[Vec<EntrySource>]| -> Result<Vec<Vec<String>>, SerializeError> {
        rows.iter()
            .map(|r| r.iter().map(|e| e.to_entry_string()).collect())
            .collect()
    };
    let to_vec = |v: &Option<Vec<EntrySource>>| -> Result<Option<Vec<String>>, SerializeError> {
        match v {
            None => Ok(None),
            Some(v) => Ok(Some(
                v.iter()
                    .map(|e| e.to_entry_string())
                    .collect::<Result<_, _>>()?,
            )),
        }
    };
    let raw = RawInstance {
        kind: match inst.kind {
            Kind::Linear => "linear".into(),
            Kind::Affine => "affine".into(),
        },
        a: to_rows(&inst.a)?,
        b: to_vec(&inst.b_vec)?,
        b_mat: to_rows(&inst.b_mat)?,
        eta: to_vec(&inst.eta)?,
    };
    Ok(serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail"))
}

/// Homogenises an affine instance `(A, b, B, eta)` into the linear instance
/// `(Ahat, Bhat)` one dimension up:
///
/// ```text
/// Ahat = [ A  b ]      Bhat = [ B  -eta ]
///        [ 0  1 ]             [ 0    1  ]
/// ```
///
/// Exact rational entries stay exact. The affine decision procedure does
/// not route its trapped check through this map (the reduction does not
/// preserve robustness); it is used by the escape formula over `Ahat`, by
/// the simulator equivalence tests, and directly by users.
pub fn homogenise(inst: &LoopInstance) -> LoopInstance {
    assert_eq!(inst.kind, Kind::Affine, "homogenise requires an affine instance");
    let n = inst.n;
    let m = inst.m;
    let b_vec = inst.b_vec.as_ref().expect("affine instance has b");
    let eta = inst.eta.as_ref().expect("affine instance has eta");

    let mut a_hat = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = inst.a[i].clone();
        row.push(b_vec[i].clone());
        a_hat.push(row);
    }
    let mut last = vec![EntrySource::from_i64(0); n];
    last.push(EntrySource::from_i64(1));
    a_hat.push(last);

    let mut b_hat = Vec::with_capacity(m + 1);
    for j in 0..m {
        let mut row = inst.b_mat[j].clone();
        row.push(eta[j].negated());
        b_hat.push(row);
    }
    let mut last = vec![EntrySource::from_i64(0); n];
    last.push(EntrySource::from_i64(1));
    b_hat.push(last);

    LoopInstance::new_linear(a_hat, b_hat).expect("homogenised shapes are valid by construction")
}
