//! Semidecision of the four robustness formulas by compact box-cover
//! verification over (eigenvalue segment x unit-sphere box) pairs.
//!
//! Everything here is one-sided: `Verified` is final and sound for every
//! real instance consistent with the interval data; `Exhausted` only means
//! the budget ran out and is always retriable.

use crate::dyadic::Dyadic;
use crate::instance::{homogenise, Kind, LoopInstance, RefineError, RefinedInstance};
use crate::interval::DyadicInterval;
use crate::ivmatrix::{dot, interval_solve, IntervalMatrix};
use crate::spectral::{
    odd_root_witness, real_spectrum_above, IvPoly, RealSegment, Witness,
};
use crate::verdict::{Certificate, CoverStats, Formula};
use num_rational::BigRational;

/// Working precision for budget round `r`.
pub fn precision_bits(round: u32) -> u64 {
    53 + 32 * round as u64
}

/// Maximum subdivision depth (total splits per box lineage) for round `r`.
pub fn max_depth(round: u32) -> u32 {
    4 + 2 * round
}

/// Sign-change candidate grid for round `r`: dyadics `k / 2^(r+2)` with
/// absolute value at most `2^(r+2)`.
pub fn grid_exponent(round: u32) -> i64 {
    round as i64 + 2
}

/// Work cap per checker round, on top of the depth cap: keeps early budgets
/// cheap while growing without bound, so Exhausted stays retriable.
fn box_cap(round: u32) -> u64 {
    10_000 * (round as u64 + 1)
}

#[derive(Debug, Clone)]
pub struct CoverBudget {
    pub max_depth: u32,
    pub max_boxes: u64,
    pub precision: u64,
}

pub fn round_budget(round: u32) -> CoverBudget {
    CoverBudget {
        max_depth: max_depth(round),
        max_boxes: box_cap(round),
        precision: precision_bits(round),
    }
}

/// An axis-aligned box that may meet the unit sphere, with the interval of
/// `sum v_i^2` over the box cached for the retention filter.
#[derive(Debug, Clone)]
pub struct SphereBox {
    coords: Vec<DyadicInterval>,
    norm_sq: DyadicInterval,
}

impl SphereBox {
    /// Root box `[-1-delta, 1+delta]^n` with `delta = 2^-4`.
    pub fn root(n: usize, precision: u64) -> SphereBox {
        let hi = Dyadic::from_i64_exp(17, -4);
        let iv = DyadicInterval::new(hi.neg(), hi, precision);
        SphereBox::from_coords(vec![iv; n])
    }

    pub fn from_coords(coords: Vec<DyadicInterval>) -> SphereBox {
        let p = coords.iter().map(|c| c.precision()).max().unwrap_or(53);
        let mut norm_sq = DyadicInterval::zero(p);
        for c in &coords {
            norm_sq = norm_sq.add(&c.square());
        }
        SphereBox { coords, norm_sq }
    }

    pub fn coords(&self) -> &[DyadicInterval] {
        &self.coords
    }

    pub fn norm_sq(&self) -> &DyadicInterval {
        &self.norm_sq
    }

    /// Retention filter: the box is kept only if `1` lies in the interval
    /// of `sum v_i^2`, i.e. the box may intersect `S^{n-1}`.
    pub fn may_meet_sphere(&self) -> bool {
        self.norm_sq.contains_dyadic(&Dyadic::one())
    }

    fn split(&self, dim: usize) -> (SphereBox, SphereBox) {
        let (lo, hi) = self.coords[dim].bisect();
        let mut a = self.coords.clone();
        let mut b = self.coords.clone();
        a[dim] = lo;
        b[dim] = hi;
        (SphereBox::from_coords(a), SphereBox::from_coords(b))
    }

    /// Exact membership test for a rational point.
    pub fn contains_point(&self, p: &[BigRational]) -> bool {
        self.coords.len() == p.len()
            && self
                .coords
                .iter()
                .zip(p)
                .all(|(c, x)| c.contains_rational(x))
    }
}

/// Uniform-depth sphere cover: subdivides the root box `depth` times
/// (widest dimension first, ties to the lowest index), retaining boxes that
/// may meet the sphere. At every depth the retained boxes cover `S^{n-1}`.
pub fn sphere_cover(n: usize, depth: u32, precision: u64) -> Vec<SphereBox> {
    let mut boxes = vec![SphereBox::root(n, precision)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(boxes.len() * 2);
        for b in &boxes {
            let dim = widest_dim(&b.coords);
            let (lo, hi) = b.split(dim);
            if lo.may_meet_sphere() {
                next.push(lo);
            }
            if hi.may_meet_sphere() {
                next.push(hi);
            }
        }
        boxes = next;
    }
    boxes
}

fn widest_dim(coords: &[DyadicInterval]) -> usize {
    let mut best = 0;
    let mut best_w = coords[0].width();
    for (i, c) in coords.iter().enumerate().skip(1) {
        let w = c.width();
        if w > best_w {
            best = i;
            best_w = w;
        }
    }
    best
}

/// Outcome of one budgeted cover verification.
#[derive(Debug, Clone)]
pub struct BudgetedResult {
    pub verified: bool,
    pub stats: CoverStats,
}

/// Verifies the compact universally-quantified implication over every
/// `(eigenvalue segment x sphere)` pair: each retained box pair must either
/// refute the antecedent (`A v = lambda v` fails because some coordinate
/// interval of `A v - lambda v` excludes zero) or satisfy the sound open
/// predicate `pred`. Subdivision splits the widest dimension (the
/// eigenvalue interval counts as one dimension); the norm filter discards
/// boxes that provably miss the sphere.
///
/// `pred(lambda_box, vbox)` must return true only if the open predicate
/// holds for all `(lambda, v)` in the box pair.
pub fn cover_verify(
    segments: &[RealSegment],
    a: &IntervalMatrix,
    pred: &dyn Fn(&DyadicInterval, &SphereBox) -> bool,
    budget: &CoverBudget,
) -> BudgetedResult {
    let n = a.rows();
    let p = budget.precision;
    let mut stats = CoverStats {
        boxes_examined: 0,
        max_depth: 0,
        precision_bits: p,
    };
    let mut stack: Vec<(DyadicInterval, SphereBox, u32)> = segments
        .iter()
        .rev()
        .map(|s| (s.to_interval(p), SphereBox::root(n, p), 0))
        .collect();

    while let Some((lambda, vbox, depth)) = stack.pop() {
        if !vbox.may_meet_sphere() {
            continue;
        }
        stats.boxes_examined += 1;
        if depth > stats.max_depth {
            stats.max_depth = depth;
        }
        if stats.boxes_examined > budget.max_boxes {
            return BudgetedResult {
                verified: false,
                stats,
            };
        }

        if refutes_eigen_equation(a, &lambda, &vbox) || pred(&lambda, &vbox) {
            continue;
        }

        if depth >= budget.max_depth {
            return BudgetedResult {
                verified: false,
                stats,
            };
        }

        // Split the widest dimension; the eigenvalue interval is treated
        // as one more coordinate.
        let lambda_w = lambda.width();
        let vdim = widest_dim(&vbox.coords);
        if lambda_w > vbox.coords[vdim].width() {
            let (lo, hi) = lambda.bisect();
            stack.push((hi, vbox.clone(), depth + 1));
            stack.push((lo, vbox, depth + 1));
        } else {
            let (lo, hi) = vbox.split(vdim);
            stack.push((lambda.clone(), hi, depth + 1));
            stack.push((lambda, lo, depth + 1));
        }
    }

    BudgetedResult {
        verified: true,
        stats,
    }
}

/// True when some coordinate interval of `A v - lambda v` excludes zero,
/// refuting `A v = lambda v` for every point in the box pair. No
/// eigenvector is ever computed.
fn refutes_eigen_equation(
    a: &IntervalMatrix,
    lambda: &DyadicInterval,
    vbox: &SphereBox,
) -> bool {
    let v = vbox.coords();
    for i in 0..a.rows() {
        let mut acc = dot(a.row(i), v);
        acc = acc.sub(&lambda.mul(&v[i]));
        if acc.excludes_zero() {
            return true;
        }
    }
    false
}

/// Escape predicate: some constraint row is strictly negative over the box.
fn escape_pred(b: &IntervalMatrix) -> impl Fn(&DyadicInterval, &SphereBox) -> bool + '_ {
    move |_lambda, vbox| {
        (0..b.rows()).any(|j| dot(b.row(j), vbox.coords()).strictly_negative())
    }
}

/// Trappedness predicate: `B v` strictly positive in every row, or strictly
/// negative in every row, over the whole box.
fn trapped_pred(b: &IntervalMatrix) -> impl Fn(&DyadicInterval, &SphereBox) -> bool + '_ {
    move |_lambda, vbox| {
        let rows: Vec<DyadicInterval> = (0..b.rows())
            .map(|j| dot(b.row(j), vbox.coords()))
            .collect();
        rows.iter().all(|r| r.strictly_positive()) || rows.iter().all(|r| r.strictly_negative())
    }
}

/// Per-round status with the work done this round.
#[derive(Debug, Clone)]
pub struct RoundReport {
    pub certificate: Option<Certificate>,
    pub boxes_examined: u64,
    pub max_depth: u32,
    pub precision_capped: bool,
}

/// One escape-formula round: linear instances check the spectrum at or
/// above zero; affine instances check the homogenised system at or above
/// one.
pub fn escaping_round(inst: &LoopInstance, round: u32) -> Result<RoundReport, RefineError> {
    match inst.kind() {
        Kind::Linear => {
            let refined = inst.refine(precision_bits(round))?;
            Ok(escaping_cover_round(
                &refined,
                &Dyadic::zero(),
                Formula::LinearEscaping,
                round,
            ))
        }
        Kind::Affine => {
            let hom = homogenise(inst);
            let refined = hom.refine(precision_bits(round))?;
            Ok(escaping_cover_round(
                &refined,
                &Dyadic::one(),
                Formula::AffineEscaping,
                round,
            ))
        }
    }
}

fn escaping_cover_round(
    refined: &RefinedInstance,
    threshold: &Dyadic,
    formula: Formula,
    round: u32,
) -> RoundReport {
    let budget = round_budget(round);
    let segments = match real_spectrum_above(&refined.a, threshold, budget.precision) {
        Ok(s) => s,
        Err(_) => {
            return RoundReport {
                certificate: None,
                boxes_examined: 0,
                max_depth: 0,
                precision_capped: refined.precision_capped,
            }
        }
    };
    let pred = escape_pred(&refined.b_mat);
    let result = cover_verify(&segments, &refined.a, &pred, &budget);
    RoundReport {
        certificate: result.verified.then(|| Certificate::EscapingCover {
            formula,
            round,
            cover: result.stats.clone(),
        }),
        boxes_examined: result.stats.boxes_examined,
        max_depth: result.stats.max_depth,
        precision_capped: refined.precision_capped,
    }
}

/// One trappedness round. Linear instances run the sign-change search with
/// threshold zero; affine instances first try the fixed-point clause and
/// then the sign-change search with threshold one on the original system.
pub fn trapped_round(inst: &LoopInstance, round: u32) -> Result<RoundReport, RefineError> {
    let refined = inst.refine(precision_bits(round))?;
    match inst.kind() {
        Kind::Linear => Ok(trapped_sign_change_round(
            &refined,
            &Dyadic::zero(),
            Formula::LinearTrapped,
            round,
        )),
        Kind::Affine => {
            if let Some(cert) = fixed_point_clause(&refined, round) {
                return Ok(RoundReport {
                    certificate: Some(cert),
                    boxes_examined: 0,
                    max_depth: 0,
                    precision_capped: refined.precision_capped,
                });
            }
            Ok(trapped_sign_change_round(
                &refined,
                &Dyadic::one(),
                Formula::AffineTrappedSignChange,
                round,
            ))
        }
    }
}

/// Affine trapped clause (i): `1` verified outside the spectrum, an
/// enclosure `s` of `(A - I)^-1 b`, and `B_j s + eta_j < 0` strictly for
/// every row — so the unique fixed point `x* = -s` sits strictly inside the
/// polyhedron.
fn fixed_point_clause(refined: &RefinedInstance, round: u32) -> Option<Certificate> {
    let p = precision_bits(round);
    let a = &refined.a;
    let n = a.rows();
    if !crate::spectral::verify_value_not_in_spectrum(a, &Dyadic::one(), p) {
        return None;
    }
    let a_minus_i = a.sub(&IntervalMatrix::identity(n, p));
    let b_vec = refined.b_vec.as_ref()?;
    let solution = interval_solve(&a_minus_i, b_vec).ok()?;
    let eta = refined.eta.as_ref()?;
    let mut margins = Vec::with_capacity(refined.b_mat.rows());
    for j in 0..refined.b_mat.rows() {
        let t = dot(refined.b_mat.row(j), &solution).add(&eta[j]);
        if !t.strictly_negative() {
            return None;
        }
        margins.push(t.neg());
    }
    Some(Certificate::TrappedFixedPoint {
        round,
        solution,
        margins,
        precision_bits: p,
    })
}

fn trapped_sign_change_round(
    refined: &RefinedInstance,
    threshold: &Dyadic,
    formula: Formula,
    round: u32,
) -> RoundReport {
    let budget = round_budget(round);
    let mut report = RoundReport {
        certificate: None,
        boxes_examined: 0,
        max_depth: 0,
        precision_capped: refined.precision_capped,
    };
    let segments = match real_spectrum_above(&refined.a, threshold, budget.precision) {
        Ok(s) => s,
        Err(_) => return report,
    };
    if segments.is_empty() {
        return report;
    }
    let poly = IvPoly::of_matrix(&refined.a);
    let pred = trapped_pred(&refined.b_mat);
    for (a_pt, b_pt) in candidate_pairs(&segments, threshold, round) {
        let witness = odd_root_witness(&poly, &a_pt, &b_pt);
        let (chi_a, chi_b) = match witness {
            Witness::Verified { chi_a, chi_b } => (chi_a, chi_b),
            Witness::NotVerified => continue,
        };
        // The cover obligation ranges over every eigenvalue in [a, b];
        // those all lie in the validated segments, so clip the segments to
        // the bracket.
        let clipped = clip_segments(&segments, &a_pt, &b_pt);
        if clipped.is_empty() {
            continue;
        }
        let remaining = CoverBudget {
            max_depth: budget.max_depth,
            max_boxes: budget.max_boxes.saturating_sub(report.boxes_examined),
            precision: budget.precision,
        };
        if remaining.max_boxes == 0 {
            break;
        }
        let result = cover_verify(&clipped, &refined.a, &pred, &remaining);
        report.boxes_examined += result.stats.boxes_examined;
        report.max_depth = report.max_depth.max(result.stats.max_depth);
        if result.verified {
            report.certificate = Some(Certificate::TrappedSignChange {
                formula,
                round,
                a: a_pt,
                b: b_pt,
                chi_a,
                chi_b,
                cover: CoverStats {
                    boxes_examined: result.stats.boxes_examined,
                    max_depth: result.stats.max_depth,
                    precision_bits: budget.precision,
                },
            });
            return report;
        }
    }
    report
}

fn clip_segments(segments: &[RealSegment], a: &Dyadic, b: &Dyadic) -> Vec<RealSegment> {
    segments
        .iter()
        .filter_map(|s| {
            let lo = Dyadic::max(&s.lo, a);
            let hi = Dyadic::min(&s.hi, b);
            (lo <= hi).then(|| RealSegment::new(lo, hi))
        })
        .collect()
}

/// Dyadic grid points from the round's candidate grid bracketing runs of
/// spectrum clusters: for each contiguous run of segments, up to two grid
/// points strictly between the threshold (or the previous cluster) and the
/// run, paired with up to two strictly between the run and the next
/// cluster (or the grid range). Runs are scanned rightmost-first so the
/// largest odd eigenvalue is preferred.
///
/// Only pairs that bracket at least one cluster can ever carry a verified
/// sign change, so this enumeration reaches every pair the full dyadic
/// grid could verify, at a fraction of the work.
fn candidate_pairs(
    segments: &[RealSegment],
    threshold: &Dyadic,
    round: u32,
) -> Vec<(Dyadic, Dyadic)> {
    let g = grid_exponent(round);
    let range = Dyadic::from_i64_exp(1, g);
    let mut pairs = Vec::new();
    let k = segments.len();
    // (run length, rightmost-first) ordering.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for len in 1..=k {
        for j in (len - 1..k).rev() {
            runs.push((j + 1 - len, j));
        }
    }
    for (i, j) in runs {
        let lower_floor = if i == 0 {
            threshold.clone()
        } else {
            Dyadic::max(threshold, &segments[i - 1].hi)
        };
        let upper_ceil = if j + 1 < k {
            Some(segments[j + 1].lo.clone())
        } else {
            None
        };
        let below = grid_points_below(&segments[i].lo, g, &lower_floor, &range);
        let above = grid_points_above(&segments[j].hi, g, upper_ceil.as_ref(), &range);
        for a in &below {
            for b in &above {
                if a < b {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    pairs
}

fn dyadic_floor(d: &Dyadic) -> num_bigint::BigInt {
    let e = d.exponent();
    if e >= 0 {
        d.mantissa() << e as u64
    } else {
        d.mantissa() >> (-e) as u64
    }
}

/// Up to two grid points `k/2^g` strictly below `x`, strictly above
/// `floor_limit`, and within `[-2^g, 2^g]`; closest first.
fn grid_points_below(x: &Dyadic, g: i64, floor_limit: &Dyadic, range: &Dyadic) -> Vec<Dyadic> {
    let scaled = x.mul_pow2(g);
    let mut k = dyadic_floor(&scaled);
    let mut out = Vec::new();
    for _ in 0..3 {
        let cand = Dyadic::new(k.clone(), -g);
        if cand < *x && cand > *floor_limit && cand >= range.neg() && cand <= *range {
            out.push(cand);
            if out.len() == 2 {
                break;
            }
        }
        k -= 1;
    }
    out
}

/// Up to two grid points strictly above `x`, strictly below `ceil_limit`
/// when present, within `[-2^g, 2^g]`; closest first.
fn grid_points_above(
    x: &Dyadic,
    g: i64,
    ceil_limit: Option<&Dyadic>,
    range: &Dyadic,
) -> Vec<Dyadic> {
    let scaled = x.mul_pow2(g);
    let mut k = dyadic_floor(&scaled) + 1u32;
    let mut out = Vec::new();
    for _ in 0..3 {
        let cand = Dyadic::new(k.clone(), -g);
        let below_ceil = ceil_limit.map_or(true, |c| cand < *c);
        if cand > *x && below_ceil && cand <= *range {
            out.push(cand);
            if out.len() == 2 {
                break;
            }
        }
        k += 1;
    }
    out
}

#[derive(Debug, Clone)]
pub enum CheckStatus {
    Verified(Certificate),
    Exhausted,
}

/// Result of a full budgeted check: Verified is final and sound; Exhausted
/// is retriable at a larger budget.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub status: CheckStatus,
    pub stats: CoverStats,
}

impl CheckResult {
    pub fn verified(&self) -> bool {
        matches!(self.status, CheckStatus::Verified(_))
    }
}

fn replay(
    inst: &LoopInstance,
    budget: u32,
    round_fn: fn(&LoopInstance, u32) -> Result<RoundReport, RefineError>,
) -> Result<CheckResult, RefineError> {
    let mut stats = CoverStats {
        boxes_examined: 0,
        max_depth: 0,
        precision_bits: precision_bits(0),
    };
    for round in 0..=budget {
        let report = round_fn(inst, round)?;
        stats.boxes_examined += report.boxes_examined;
        stats.max_depth = stats.max_depth.max(report.max_depth);
        stats.precision_bits = precision_bits(round);
        if let Some(cert) = report.certificate {
            return Ok(CheckResult {
                status: CheckStatus::Verified(cert),
                stats,
            });
        }
    }
    Ok(CheckResult {
        status: CheckStatus::Exhausted,
        stats,
    })
}

/// Semidecides robust escaping for a linear instance, replaying rounds
/// `0..=budget` so that success at a budget implies success at every
/// larger budget.
pub fn check_robust_escaping_linear(
    inst: &LoopInstance,
    budget: u32,
) -> Result<CheckResult, RefineError> {
    assert_eq!(inst.kind(), Kind::Linear);
    replay(inst, budget, escaping_round)
}

/// Semidecides robust trappedness for a linear instance.
pub fn check_robust_trapped_linear(
    inst: &LoopInstance,
    budget: u32,
) -> Result<CheckResult, RefineError> {
    assert_eq!(inst.kind(), Kind::Linear);
    replay(inst, budget, trapped_round)
}

/// Semidecides robust escaping for an affine instance via the homogenised
/// system.
pub fn check_robust_escaping_affine(
    inst: &LoopInstance,
    budget: u32,
) -> Result<CheckResult, RefineError> {
    assert_eq!(inst.kind(), Kind::Affine);
    replay(inst, budget, escaping_round)
}

/// Semidecides robust trappedness for an affine instance (fixed-point
/// clause, then the sign-change clause on the original system).
pub fn check_robust_trapped_affine(
    inst: &LoopInstance,
    budget: u32,
) -> Result<CheckResult, RefineError> {
    assert_eq!(inst.kind(), Kind::Affine);
    replay(inst, budget, trapped_round)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::oracle::unit_sphere_points;

    fn linear(text: &str) -> LoopInstance {
        parse_instance(text).unwrap()
    }

    #[test]
    fn sphere_cover_retains_unit_points() {
        for n in 1..=3 {
            for depth in [0u32, 2, 4, 7] {
                let cover = sphere_cover(n, depth, 64);
                for p in unit_sphere_points(n, 40, 5) {
                    assert!(
                        cover.iter().any(|b| b.contains_point(&p)),
                        "n={n} depth={depth}: point {p:?} uncovered"
                    );
                }
            }
        }
    }

    #[test]
    fn empty_segments_verify_vacuously() {
        let a = IntervalMatrix::identity(2, 64);
        let r = cover_verify(&[], &a, &|_, _| false, &round_budget(0));
        assert!(r.verified);
        assert_eq!(r.stats.boxes_examined, 0);
    }

    #[test]
    fn negative_spectrum_escapes_immediately() {
        for a in ["-1", "-2"] {
            let inst = linear(&format!(r#"{{"kind":"linear","A":[["{a}"]],"B":[["1"]]}}"#));
            let r = check_robust_escaping_linear(&inst, 0).unwrap();
            assert!(r.verified(), "A = {a}");
        }
    }

    #[test]
    fn rotation_escapes_vacuously() {
        let inst = linear(r#"{"kind":"linear","A":[["0","-1"],["1","0"]],"B":[["1","0"],["0","1"]]}"#);
        let r = check_robust_escaping_linear(&inst, 0).unwrap();
        assert!(r.verified());
    }

    #[test]
    fn halving_map_is_trapped_not_escaping() {
        let inst = linear(r#"{"kind":"linear","A":[["1/2"]],"B":[["1"]]}"#);
        let esc = check_robust_escaping_linear(&inst, 2).unwrap();
        assert!(!esc.verified());
        let trap = check_robust_trapped_linear(&inst, 2).unwrap();
        assert!(trap.verified());
        match trap.status {
            CheckStatus::Verified(Certificate::TrappedSignChange { a, b, .. }) => {
                let half = Dyadic::from_i64_exp(1, -1);
                assert!(a < half && half < b);
            }
            s => panic!("expected sign-change certificate, got {s:?}"),
        }
    }

    #[test]
    fn doubling_map_is_trapped() {
        let inst = linear(r#"{"kind":"linear","A":[["2"]],"B":[["1"]]}"#);
        let trap = check_robust_trapped_linear(&inst, 1).unwrap();
        assert!(trap.verified());
    }

    #[test]
    fn even_multiplicity_never_witnesses() {
        // A = I2 has eigenvalue 1 with multiplicity two: no sign change
        // exists, so the trapped checker exhausts every budget.
        let inst = linear(r#"{"kind":"linear","A":[["1","0"],["0","1"]],"B":[["1","0"]]}"#);
        let trap = check_robust_trapped_linear(&inst, 3).unwrap();
        assert!(!trap.verified());
        let esc = check_robust_escaping_linear(&inst, 3).unwrap();
        assert!(!esc.verified());
    }

    #[test]
    fn drifting_halving_map_escapes() {
        let inst = parse_instance(
            r#"{"kind":"affine","A":[["1/2"]],"b":["-1"],"B":[["1"]],"eta":["0"]}"#,
        )
        .unwrap();
        let esc = check_robust_escaping_affine(&inst, 4).unwrap();
        assert!(esc.verified());
        let trap = check_robust_trapped_affine(&inst, 2).unwrap();
        assert!(!trap.verified());
    }

    #[test]
    fn affine_zero_translation_is_not_robust() {
        let inst = parse_instance(
            r#"{"kind":"affine","A":[["1/2"]],"b":["0"],"B":[["1"]],"eta":["0"]}"#,
        )
        .unwrap();
        let esc = check_robust_escaping_affine(&inst, 3).unwrap();
        assert!(!esc.verified());
        let trap = check_robust_trapped_affine(&inst, 3).unwrap();
        assert!(!trap.verified());
    }

    #[test]
    fn affine_fixed_point_clause() {
        // A = 1/2, b = 1: fixed point x* = 2, strictly inside B x > 0.
        let inst = parse_instance(
            r#"{"kind":"affine","A":[["1/2"]],"b":["1"],"B":[["1"]],"eta":["0"]}"#,
        )
        .unwrap();
        let trap = check_robust_trapped_affine(&inst, 0).unwrap();
        match trap.status {
            CheckStatus::Verified(cert @ Certificate::TrappedFixedPoint { .. }) => {
                let fp = cert.fixed_point_enclosure().unwrap();
                assert!(fp[0].contains_dyadic(&Dyadic::from_i64(2)));
            }
            s => panic!("expected fixed-point certificate, got {s:?}"),
        }
    }

    #[test]
    fn affine_trapped_sign_change_clause() {
        // A = 2, b = 0: odd eigenvalue above one; B v strictly signed.
        let inst = parse_instance(
            r#"{"kind":"affine","A":[["2"]],"b":["0"],"B":[["1"]],"eta":["0"]}"#,
        )
        .unwrap();
        let trap = check_robust_trapped_affine(&inst, 1).unwrap();
        assert!(trap.verified());
        match trap.status {
            CheckStatus::Verified(Certificate::TrappedSignChange { formula, .. }) => {
                assert_eq!(formula, Formula::AffineTrappedSignChange);
            }
            s => panic!("expected sign-change certificate, got {s:?}"),
        }
    }

    #[test]
    fn escape_with_negative_row_verifies() {
        // A = -1/2, b = 0, B = 1, eta = 1: spectrum of Ahat at/above one is
        // {1} with eigenvectors +-(0,1); Bhat rows pick up the -eta column.
        let inst = parse_instance(
            r#"{"kind":"affine","A":[["-1/2"]],"b":["0"],"B":[["1"]],"eta":["1"]}"#,
        )
        .unwrap();
        let esc = check_robust_escaping_affine(&inst, 4).unwrap();
        assert!(esc.verified());
    }

    #[test]
    fn budget_monotonicity_on_small_corpus() {
        let trapped = linear(r#"{"kind":"linear","A":[["2"]],"B":[["1"]]}"#);
        let mut first_verified = None;
        for budget in 0..=4 {
            let r = check_robust_trapped_linear(&trapped, budget).unwrap();
            if r.verified() && first_verified.is_none() {
                first_verified = Some(budget);
            }
            if let Some(b0) = first_verified {
                assert!(r.verified(), "verified at {b0} but not at {budget}");
            }
        }
        assert!(first_verified.is_some());
    }
}
