//! Validated spectra: complex disk enclosures of all eigenvalues with
//! multiplicity counts, real-segment extraction, odd-multiplicity
//! sign-change witnesses, and point exclusion tests.
//!
//! Root enclosures come from exhaustive subdivision of a root-bound
//! square, discarding boxes whose interval evaluation excludes zero.
//! Multiplicities are counted by a validated argument-principle walk along
//! a rectangular contour in the excluded moat around each cluster: the
//! contour is cut into pieces whose image rectangles each avoid zero and
//! fit in an open half-plane, so the total argument change is a certified
//! sum of quarter turns.

use crate::dyadic::Dyadic;
use crate::interval::DyadicInterval;
use crate::ivmatrix::{char_poly, IntervalMatrix};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("leading coefficient interval contains zero")]
    LeadingCoefficientContainsZero,
    #[error("argument-principle count inconclusive at this precision")]
    CountInconclusive,
}

/// Polynomial with interval coefficients, ascending degree order.
#[derive(Debug, Clone)]
pub struct IvPoly {
    coeffs: Vec<DyadicInterval>,
}

impl IvPoly {
    pub fn new(coeffs: Vec<DyadicInterval>) -> IvPoly {
        assert!(coeffs.len() >= 2, "need degree at least one");
        IvPoly { coeffs }
    }

    pub fn of_matrix(a: &IntervalMatrix) -> IvPoly {
        IvPoly::new(char_poly(a))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[DyadicInterval] {
        &self.coeffs
    }

    /// Interval Horner evaluation at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> DyadicInterval {
        let p = self.precision();
        let xi = DyadicInterval::point(x.clone(), p);
        let mut acc = self.coeffs[self.degree()].clone();
        for k in (0..self.degree()).rev() {
            acc = acc.mul(&xi).add(&self.coeffs[k]);
        }
        acc
    }

    fn precision(&self) -> u64 {
        self.coeffs.iter().map(|c| c.precision()).max().unwrap_or(53)
    }

    /// Rescales to a monic polynomial. Fails when the leading coefficient
    /// interval contains zero.
    fn monic(&self) -> Result<IvPoly, SpectralError> {
        let lead = &self.coeffs[self.degree()];
        if lead.is_point() && lead.contains_dyadic(&Dyadic::one()) {
            return Ok(self.clone());
        }
        if lead.contains_zero() {
            return Err(SpectralError::LeadingCoefficientContainsZero);
        }
        let mut coeffs: Vec<DyadicInterval> = self
            .coeffs
            .iter()
            .map(|c| c.div(lead).expect("lead excludes zero"))
            .collect();
        let p = self.precision();
        *coeffs.last_mut().unwrap() = DyadicInterval::one(p);
        Ok(IvPoly::new(coeffs))
    }

    /// A power of two `R` with every root of every member polynomial inside
    /// `|z| <= R`: the Fujiwara-style bound `2 max_i |c_{d-i}|^(1/i)` for
    /// the monic rescaling, rounded up to powers of two throughout.
    fn root_bound_pow2(&self) -> Dyadic {
        let d = self.degree();
        let mut bound_exp: i64 = 0;
        for i in 1..=d {
            let mag = self.coeffs[d - i].mag();
            if mag.is_zero() {
                continue;
            }
            // mag <= 2^t, so mag^(1/i) <= 2^ceil(t/i).
            let t = mag.mantissa_bits() as i64 + mag.exponent();
            let term = (t + i as i64 - 1).div_euclid(i as i64);
            bound_exp = bound_exp.max(term);
        }
        Dyadic::from_i64_exp(1, 1 + bound_exp)
    }
}

fn horner_box(coeffs: &[DyadicInterval], z: &ComplexBox) -> ComplexBox {
    let p = coeffs
        .iter()
        .map(|c| c.precision())
        .max()
        .unwrap_or(53)
        .max(z.re.precision());
    let top = coeffs.len() - 1;
    let mut acc = ComplexBox {
        re: coeffs[top].clone(),
        im: DyadicInterval::zero(p),
    };
    for k in (0..top).rev() {
        acc = acc.mul(z);
        acc.re = acc.re.add(&coeffs[k]);
    }
    acc
}

/// Box evaluator using the first-order centered form
/// `p(box) in p(mid) + p'(box) (box - mid)`.
///
/// Plain interval Horner suffers badly from the dependency problem near
/// close root pairs (the unresolvable blob stops shrinking with the box
/// side); the centered form is sound for holomorphic `p` because the
/// segment average of `p'` lies in the convex rectangle enclosing
/// `p'(box)`.
struct BoxEvaluator {
    coeffs: Vec<DyadicInterval>,
    deriv: Vec<DyadicInterval>,
}

impl BoxEvaluator {
    fn new(poly: &IvPoly) -> BoxEvaluator {
        let deriv: Vec<DyadicInterval> = poly
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let scale = DyadicInterval::point(Dyadic::from_i64(i as i64), c.precision());
                c.mul(&scale)
            })
            .collect();
        BoxEvaluator {
            coeffs: poly.coeffs.clone(),
            deriv,
        }
    }

    fn eval(&self, z: &ComplexBox) -> ComplexBox {
        let p = z.re.precision();
        let m_re = z.re.mid();
        let m_im = z.im.mid();
        let mid = ComplexBox {
            re: DyadicInterval::point(m_re.clone(), p),
            im: DyadicInterval::point(m_im.clone(), p),
        };
        let at_mid = horner_box(&self.coeffs, &mid);
        let slope = horner_box(&self.deriv, z);
        let delta = ComplexBox {
            re: z.re.sub(&mid.re),
            im: z.im.sub(&mid.im),
        };
        let spread = slope.mul(&delta);
        ComplexBox {
            re: at_mid.re.add(&spread.re),
            im: at_mid.im.add(&spread.im),
        }
    }
}

/// Axis-aligned box in the complex plane.
#[derive(Debug, Clone)]
struct ComplexBox {
    re: DyadicInterval,
    im: DyadicInterval,
}

impl ComplexBox {
    fn mul(&self, rhs: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    fn excludes_zero(&self) -> bool {
        self.re.excludes_zero() || self.im.excludes_zero()
    }

    fn touches(&self, other: &ComplexBox) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    fn hull(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.hull(&other.re),
            im: self.im.hull(&other.im),
        }
    }

    fn inflate(&self, delta: &Dyadic) -> ComplexBox {
        ComplexBox {
            re: self.re.inflate(delta),
            im: self.im.inflate(delta),
        }
    }

    fn min_side(&self) -> Dyadic {
        Dyadic::min(&self.re.width(), &self.im.width())
    }
}

/// Center-radius enclosure of an eigenvalue cluster with a verified root
/// count (with multiplicity).
#[derive(Debug, Clone)]
pub struct ComplexDisk {
    pub center: (DyadicInterval, DyadicInterval),
    pub radius: Dyadic,
    pub count: usize,
}

impl ComplexDisk {
    /// Sound test that the real point `c` lies strictly outside the disk.
    pub fn excludes_real_point(&self, c: &Dyadic) -> bool {
        let p = self.center.0.precision();
        let dre = self.center.0.sub(&DyadicInterval::point(c.clone(), p));
        let dist2 = dre.square().add(&self.center.1.square());
        let r2 = self.radius.mul(&self.radius);
        dist2.lo() > &r2
    }
}

/// Closed real segment with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealSegment {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RealSegment {
    pub fn new(lo: Dyadic, hi: Dyadic) -> RealSegment {
        assert!(lo <= hi);
        RealSegment { lo, hi }
    }

    pub fn to_interval(&self, precision: u64) -> DyadicInterval {
        DyadicInterval::new(self.lo.clone(), self.hi.clone(), precision)
    }
}

const MAX_RETAINED_BOXES: usize = 4096;
const MAX_SUBDIVISION_EVALS: usize = 1_500_000;
const MAX_CONTOUR_DEPTH: u32 = 30;

/// Disks covering the roots of every polynomial in the interval family,
/// with verified multiplicity counts summing to the degree.
///
/// The maximum radius shrinks as `p` grows (for point-coefficient input);
/// interval coefficients of fixed width put a floor on the achievable
/// radius, in which case counting may fail with `CountInconclusive`.
pub fn root_enclosures(poly: &IvPoly, p: u64) -> Result<Vec<ComplexDisk>, SpectralError> {
    let monic = poly.monic()?;
    let clusters = root_clusters(&monic, p);
    let mut disks = Vec::new();
    let mut total = 0usize;
    if clusters.len() == 1 {
        // Every root is in the single cluster; no contour needed.
        let count = monic.degree();
        disks.push(disk_of(&clusters[0].bbox, count));
        return Ok(disks);
    }
    for cluster in &clusters {
        let count = winding_count(&monic, &cluster.contour)?;
        total += count;
        if count > 0 {
            disks.push(disk_of(&cluster.bbox, count));
        }
    }
    if total != monic.degree() {
        return Err(SpectralError::CountInconclusive);
    }
    Ok(disks)
}

fn disk_of(bbox: &ComplexBox, count: usize) -> ComplexDisk {
    let p = bbox.re.precision();
    let center_re = bbox.re.mid();
    let center_im = bbox.im.mid();
    // Half the L1 extent dominates the half-diagonal, so the disk contains
    // the whole bounding box.
    let radius = bbox.re.width().add(&bbox.im.width()).half();
    ComplexDisk {
        center: (
            DyadicInterval::point(center_re, p),
            DyadicInterval::point(center_im, p),
        ),
        radius,
        count,
    }
}

struct Cluster {
    bbox: ComplexBox,
    contour: ComplexBox,
}

/// Subdivides the root-bound square, keeping boxes whose evaluation cannot
/// be shown nonzero, then groups retained boxes into clusters separated by
/// a verified moat.
fn root_clusters(poly: &IvPoly, p: u64) -> Vec<Cluster> {
    let evaluator = BoxEvaluator::new(poly);
    let radius = poly.root_bound_pow2();
    let stop_exp = -((p / 4) as i64).max(8);
    let stop_side = Dyadic::from_i64_exp(1, stop_exp);
    let full = DyadicInterval::new(radius.neg(), radius.clone(), p);
    let mut frontier = vec![ComplexBox {
        re: full.clone(),
        im: full,
    }];
    let mut evals = 0usize;
    loop {
        // Retain only boxes whose image may contain zero.
        let mut kept = Vec::new();
        for b in frontier {
            evals += 1;
            if !evaluator.eval(&b).excludes_zero() {
                kept.push(b);
            }
        }
        let done = kept.is_empty()
            || kept[0].min_side() <= stop_side
            || kept.len() * 4 > MAX_RETAINED_BOXES
            || evals > MAX_SUBDIVISION_EVALS;
        if done {
            frontier = kept;
            break;
        }
        let mut next = Vec::with_capacity(kept.len() * 4);
        for b in &kept {
            let (rl, rh) = b.re.bisect();
            let (il, ih) = b.im.bisect();
            next.push(ComplexBox { re: rl.clone(), im: il.clone() });
            next.push(ComplexBox { re: rh.clone(), im: il });
            next.push(ComplexBox { re: rl, im: ih.clone() });
            next.push(ComplexBox { re: rh, im: ih });
        }
        frontier = next;
    }

    if frontier.is_empty() {
        return Vec::new();
    }

    // Union-find over touching boxes.
    let k = frontier.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..k {
        for j in i + 1..k {
            if frontier[i].touches(&frontier[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut bboxes: Vec<Option<ComplexBox>> = vec![None; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        bboxes[r] = Some(match bboxes[r].take() {
            None => frontier[i].clone(),
            Some(b) => b.hull(&frontier[i]),
        });
    }
    let mut boxes: Vec<ComplexBox> = bboxes.into_iter().flatten().collect();

    // Merge clusters whose moat-inflated bounding boxes overlap, so each
    // contour is guaranteed disjoint from every other cluster.
    let delta = smallest_side(&frontier).half();
    loop {
        let mut merged = false;
        'outer: for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if boxes[i].inflate(&delta).touches(&boxes[j].inflate(&delta)) {
                    let bj = boxes.swap_remove(j);
                    boxes[i] = boxes[i].hull(&bj);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }

    // Deterministic output order: by lower-left corner.
    boxes.sort_by(|a, b| {
        (a.re.lo(), a.im.lo())
            .cmp(&(b.re.lo(), b.im.lo()))
    });
    boxes
        .into_iter()
        .map(|bbox| Cluster {
            contour: bbox.inflate(&delta),
            bbox,
        })
        .collect()
}

fn smallest_side(boxes: &[ComplexBox]) -> Dyadic {
    let mut s = boxes[0].min_side();
    for b in &boxes[1..] {
        let m = b.min_side();
        if m < s {
            s = m;
        }
    }
    s
}

/// One axis-aligned contour piece, in traversal order.
struct Piece<'a> {
    evaluator: &'a BoxEvaluator,
    precision: u64,
}

impl<'a> Piece<'a> {
    /// Label of the open half-plane containing the rectangle: 0 for
    /// `Re > 0`, 1 for `Im > 0`, 2 for `Re < 0`, 3 for `Im < 0`.
    fn label(v: &ComplexBox) -> Option<u8> {
        if v.re.strictly_positive() {
            Some(0)
        } else if v.im.strictly_positive() {
            Some(1)
        } else if v.re.strictly_negative() {
            Some(2)
        } else if v.im.strictly_negative() {
            Some(3)
        } else {
            None
        }
    }

    /// Emits half-plane labels along a horizontal or vertical segment,
    /// splitting until each piece's image fits a half-plane. `forward`
    /// selects the traversal direction along the varying coordinate.
    fn emit(
        &self,
        labels: &mut Vec<u8>,
        fixed: &Dyadic,
        vary: &DyadicInterval,
        horizontal: bool,
        forward: bool,
        depth: u32,
    ) -> Result<(), SpectralError> {
        let z = if horizontal {
            ComplexBox {
                re: vary.clone(),
                im: DyadicInterval::point(fixed.clone(), self.precision),
            }
        } else {
            ComplexBox {
                re: DyadicInterval::point(fixed.clone(), self.precision),
                im: vary.clone(),
            }
        };
        let img = self.evaluator.eval(&z);
        if let Some(l) = Self::label(&img) {
            labels.push(l);
            return Ok(());
        }
        if depth >= MAX_CONTOUR_DEPTH {
            return Err(SpectralError::CountInconclusive);
        }
        let (a, b) = vary.bisect();
        let (first, second) = if forward { (a, b) } else { (b, a) };
        self.emit(labels, fixed, &first, horizontal, forward, depth + 1)?;
        self.emit(labels, fixed, &second, horizontal, forward, depth + 1)
    }
}

/// Validated winding number of `poly` along the rectangle boundary, i.e.
/// the number of roots (with multiplicity) strictly inside — for every
/// polynomial in the interval family at once.
fn winding_count(poly: &IvPoly, rect: &ComplexBox) -> Result<usize, SpectralError> {
    let evaluator = BoxEvaluator::new(poly);
    let piece = Piece {
        evaluator: &evaluator,
        precision: rect.re.precision(),
    };
    let mut labels = Vec::new();
    let (x, y) = (&rect.re, &rect.im);
    // Counterclockwise: bottom, right, top, left.
    piece.emit(&mut labels, y.lo(), x, true, true, 0)?;
    piece.emit(&mut labels, x.hi(), y, false, true, 0)?;
    piece.emit(&mut labels, y.hi(), x, true, false, 0)?;
    piece.emit(&mut labels, x.lo(), y, false, false, 0)?;

    let mut quarter_turns: i64 = 0;
    for i in 0..labels.len() {
        let a = labels[i];
        let b = labels[(i + 1) % labels.len()];
        quarter_turns += match (4 + b - a) % 4 {
            0 => 0,
            1 => 1,
            3 => -1,
            // Opposite half-planes cannot share the junction value; this
            // indicates a contradiction in the label sequence.
            _ => return Err(SpectralError::CountInconclusive),
        };
    }
    if quarter_turns % 4 != 0 || quarter_turns < 0 {
        return Err(SpectralError::CountInconclusive);
    }
    Ok((quarter_turns / 4) as usize)
}

/// Segments covering every real eigenvalue `>= r` of every matrix inside
/// `a`, from the real-axis slices of the root-enclosure disks (inflated
/// outward by one ulp; the over-approximation is the sound direction for
/// the universally quantified formulas).
pub fn real_spectrum_above(
    a: &IntervalMatrix,
    r: &Dyadic,
    p: u64,
) -> Result<Vec<RealSegment>, SpectralError> {
    let poly = IvPoly::of_matrix(a);
    let disks = root_enclosures(&poly, p)?;
    let ulp = Dyadic::from_i64_exp(1, -(p as i64));
    let mut segments = Vec::new();
    for d in &disks {
        let im_lo = d.center.1.lo().sub(&d.radius).sub(&ulp);
        let im_hi = d.center.1.hi().add(&d.radius).add(&ulp);
        if im_lo.signum() > 0 || im_hi.signum() < 0 {
            continue; // disk verified off the real axis
        }
        let lo = d.center.0.lo().sub(&d.radius).sub(&ulp);
        let hi = d.center.0.hi().add(&d.radius).add(&ulp);
        if &hi < r {
            continue; // entirely below the threshold
        }
        segments.push(RealSegment::new(Dyadic::max(&lo, r), hi));
    }
    segments.sort_by(|s, t| s.lo.cmp(&t.lo));
    // Merge overlaps.
    let mut merged: Vec<RealSegment> = Vec::new();
    for s in segments {
        match merged.last_mut() {
            Some(last) if s.lo <= last.hi => {
                if s.hi > last.hi {
                    last.hi = s.hi;
                }
            }
            _ => merged.push(s),
        }
    }
    Ok(merged)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Interval evaluation proved strict opposite signs at the endpoints,
    /// certifying an odd-multiplicity real root in `(a, b)` for every
    /// polynomial in the family. Carries the verified endpoint values.
    Verified {
        chi_a: DyadicInterval,
        chi_b: DyadicInterval,
    },
    /// Inconclusive — never a refutation.
    NotVerified,
}

/// Sign-change certificate for an odd-multiplicity real root in `(a, b)`.
pub fn odd_root_witness(poly: &IvPoly, a: &Dyadic, b: &Dyadic) -> Witness {
    assert!(a < b);
    let chi_a = poly.eval_dyadic(a);
    let chi_b = poly.eval_dyadic(b);
    let opposite = (chi_a.strictly_negative() && chi_b.strictly_positive())
        || (chi_a.strictly_positive() && chi_b.strictly_negative());
    if opposite {
        Witness::Verified { chi_a, chi_b }
    } else {
        Witness::NotVerified
    }
}

/// Semidecides `c` not in the spectrum of any matrix inside `a`: Verified
/// means every root-enclosure disk strictly excludes the point.
pub fn verify_value_not_in_spectrum(a: &IntervalMatrix, c: &Dyadic, p: u64) -> bool {
    let poly = IvPoly::of_matrix(a);
    match root_enclosures(&poly, p) {
        Ok(disks) => disks.iter().all(|d| d.excludes_real_point(c)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn point_poly(coeffs: &[i64]) -> IvPoly {
        IvPoly::new(
            coeffs
                .iter()
                .map(|&c| DyadicInterval::point(Dyadic::from_i64(c), 64))
                .collect(),
        )
    }

    fn mat(n: usize, vs: &[i64]) -> IntervalMatrix {
        IntervalMatrix::new(
            n,
            n,
            vs.iter()
                .map(|&v| DyadicInterval::point(Dyadic::from_i64(v), 64))
                .collect(),
        )
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn covered(disks: &[ComplexDisk], re: &BigRational, im: &BigRational) -> bool {
        disks.iter().any(|d| {
            // |z - center| <= radius via the enclosing box test is
            // conservative for the checks here: use the L2 condition on
            // rationals exactly.
            let cre = d.center.0.mid().to_rational();
            let cim = d.center.1.mid().to_rational();
            let r = d.radius.to_rational();
            let dre = re - cre;
            let dim = im - cim;
            dre.clone() * dre + dim.clone() * dim <= r.clone() * r
        })
    }

    #[test]
    fn quadratic_with_known_roots() {
        // x^2 - 5x + 6 = (x-2)(x-3)
        let poly = point_poly(&[6, -5, 1]);
        let disks = root_enclosures(&poly, 64).unwrap();
        assert_eq!(disks.iter().map(|d| d.count).sum::<usize>(), 2);
        assert!(covered(&disks, &rational(2, 1), &rational(0, 1)));
        assert!(covered(&disks, &rational(3, 1), &rational(0, 1)));
        assert_eq!(disks.len(), 2);
        for d in &disks {
            assert_eq!(d.count, 1);
            assert!(d.radius <= Dyadic::from_i64_exp(1, -8), "radius {}", d.radius);
        }
    }

    #[test]
    fn pure_imaginary_pair() {
        // x^2 + 1: roots at +-i, no disk near the real axis.
        let poly = point_poly(&[1, 0, 1]);
        let disks = root_enclosures(&poly, 64).unwrap();
        assert_eq!(disks.iter().map(|d| d.count).sum::<usize>(), 2);
        assert!(covered(&disks, &rational(0, 1), &rational(1, 1)));
        assert!(covered(&disks, &rational(0, 1), &rational(-1, 1)));
        for d in &disks {
            assert!(d.radius < Dyadic::one());
            let im_lo = d.center.1.lo().sub(&d.radius);
            let im_hi = d.center.1.hi().add(&d.radius);
            assert!(im_lo.signum() > 0 || im_hi.signum() < 0);
        }
    }

    #[test]
    fn double_root_counted_with_multiplicity() {
        // x^2: one cluster of count 2 at the origin.
        let poly = point_poly(&[0, 0, 1]);
        let disks = root_enclosures(&poly, 64).unwrap();
        assert_eq!(disks.iter().map(|d| d.count).sum::<usize>(), 2);
        assert!(covered(&disks, &rational(0, 1), &rational(0, 1)));
    }

    #[test]
    fn far_apart_roots_with_multiplicity() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2: double root at 1, simple at -2.
        let poly = point_poly(&[2, -3, 0, 1]);
        let disks = root_enclosures(&poly, 80).unwrap();
        assert_eq!(disks.iter().map(|d| d.count).sum::<usize>(), 3);
        let near_one: Vec<_> = disks
            .iter()
            .filter(|d| d.center.0.mid().to_rational() > rational(1, 2))
            .collect();
        assert_eq!(near_one.iter().map(|d| d.count).sum::<usize>(), 2);
    }

    #[test]
    fn close_pairs_count_correctly() {
        // (x - 1)(x - 1 - 2^-k): the pair either separates into two disks
        // of count one, or stays one cluster of count two; coverage and
        // count conservation hold either way.
        for k in [3i64, 6, 10, 12] {
            let gap = rational(1, 1 << k);
            let r2 = rational(1, 1) + gap.clone();
            let c0 = &r2 * rational(1, 1);
            let c1 = -(rational(1, 1) + &r2);
            let coeffs = vec![c0, c1, rational(1, 1)];
            let poly = IvPoly::new(
                coeffs
                    .iter()
                    .map(|c| DyadicInterval::from_rational(c, 120))
                    .collect(),
            );
            let disks = root_enclosures(&poly, 120).unwrap();
            assert_eq!(disks.iter().map(|d| d.count).sum::<usize>(), 2, "k={k}");
            assert!(covered(&disks, &rational(1, 1), &rational(0, 1)), "k={k}");
            assert!(covered(&disks, &r2, &rational(0, 1)), "k={k}");
            if disks.len() == 2 {
                assert!(disks.iter().all(|d| d.count == 1), "k={k}");
            }
        }
    }

    #[test]
    fn radius_shrinks_with_precision() {
        let max_radius = |p: u64| {
            root_enclosures(&point_poly(&[6, -5, 1]), p)
                .unwrap()
                .iter()
                .map(|d| d.radius.clone())
                .max()
                .unwrap()
        };
        let mut prev = max_radius(53);
        for p in [61u64, 69, 77, 85, 128] {
            let cur = max_radius(p);
            assert!(cur <= prev, "radius grew from p={} step", p);
            prev = cur;
        }
    }

    #[test]
    fn rotation_matrix_spectrum_misses_reals() {
        let a = mat(2, &[0, -1, 1, 0]);
        let segs = real_spectrum_above(&a, &Dyadic::zero(), 64).unwrap();
        assert!(segs.is_empty(), "{segs:?}");
    }

    #[test]
    fn scalar_half_spectrum() {
        let a = IntervalMatrix::new(
            1,
            1,
            vec![DyadicInterval::point(Dyadic::from_i64_exp(1, -1), 64)],
        );
        let segs = real_spectrum_above(&a, &Dyadic::zero(), 64).unwrap();
        assert_eq!(segs.len(), 1);
        let half = Dyadic::from_i64_exp(1, -1);
        assert!(segs[0].lo <= half && half <= segs[0].hi);
        assert!(segs[0].hi.sub(&segs[0].lo) < Dyadic::from_i64_exp(1, -8));
    }

    #[test]
    fn diagonal_spectrum_above_threshold() {
        let a = mat(2, &[2, 0, 0, 3]);
        let segs = real_spectrum_above(&a, &Dyadic::one(), 64).unwrap();
        assert_eq!(segs.len(), 2);
        assert!(segs[0].lo <= Dyadic::from_i64(2) && Dyadic::from_i64(2) <= segs[0].hi);
        assert!(segs[1].lo <= Dyadic::from_i64(3) && Dyadic::from_i64(3) <= segs[1].hi);
    }

    #[test]
    fn threshold_clips_segments() {
        // Spectrum {-1}: nothing at or above zero.
        let a = mat(1, &[-1]);
        let segs = real_spectrum_above(&a, &Dyadic::zero(), 64).unwrap();
        assert!(segs.is_empty());
    }

    #[test]
    fn odd_witness_examples() {
        // Linear: sign change across the root.
        let linear = point_poly(&[-2, 1]);
        assert!(matches!(
            odd_root_witness(&linear, &Dyadic::from_i64(1), &Dyadic::from_i64(3)),
            Witness::Verified { .. }
        ));
        // Even multiplicity: (x-2)^2 positive at both endpoints.
        let square = point_poly(&[4, -4, 1]);
        assert_eq!(
            odd_root_witness(&square, &Dyadic::from_i64(1), &Dyadic::from_i64(3)),
            Witness::NotVerified
        );
        // x^2 - 5x + 6 on (5/2, 7/2): signs -, +.
        let q = point_poly(&[6, -5, 1]);
        match odd_root_witness(&q, &Dyadic::from_i64_exp(5, -1), &Dyadic::from_i64_exp(7, -1)) {
            Witness::Verified { chi_a, chi_b } => {
                assert!(chi_a.strictly_negative());
                assert!(chi_b.strictly_positive());
            }
            w => panic!("expected verification, got {w:?}"),
        }
    }

    #[test]
    fn spectrum_exclusion_tests() {
        let a_half = IntervalMatrix::new(
            1,
            1,
            vec![DyadicInterval::point(Dyadic::from_i64_exp(1, -1), 64)],
        );
        assert!(verify_value_not_in_spectrum(&a_half, &Dyadic::one(), 64));
        let diag = mat(2, &[1, 0, 0, 2]);
        assert!(!verify_value_not_in_spectrum(&diag, &Dyadic::one(), 64));
        assert!(!verify_value_not_in_spectrum(&diag, &Dyadic::one(), 128));
        let rot = mat(2, &[0, -1, 1, 0]);
        assert!(verify_value_not_in_spectrum(&rot, &Dyadic::one(), 64));
    }

    #[test]
    fn leading_zero_rejected() {
        let poly = IvPoly::new(vec![
            DyadicInterval::point(Dyadic::one(), 64),
            DyadicInterval::new(Dyadic::from_i64(-1), Dyadic::from_i64(1), 64),
        ]);
        assert_eq!(
            root_enclosures(&poly, 64).unwrap_err(),
            SpectralError::LeadingCoefficientContainsZero
        );
    }
}
