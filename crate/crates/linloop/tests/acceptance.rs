//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p linloop --test acceptance -- --nocapture`.

use linloop::driver::decide;
use linloop::dyadic::Dyadic;
use linloop::instance::{homogenise, parse_instance, Kind, LoopInstance};
use linloop::interval::DyadicInterval;
use linloop::ivmatrix::{char_poly, IntervalMatrix};
use linloop::oracle::{
    audit_escaping, audit_trapped, char_poly_q, decide_1x1, exact_parts, sample_instances,
    OneByOne, Rat, SplitMix64,
};
use linloop::semidecision::{
    check_robust_escaping_affine, check_robust_escaping_linear, check_robust_trapped_affine,
    check_robust_trapped_linear, precision_bits,
};
use linloop::spectral::{root_enclosures, IvPoly};
use linloop::verdict::{Certificate, Outcome, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::time::{Duration, Instant};

const MAX_BUDGET: u32 = 8;

fn inst(text: &str) -> LoopInstance {
    parse_instance(text).unwrap()
}

fn decide_timed(inst: &LoopInstance, limit: Duration, what: &str) -> Verdict {
    let t = Instant::now();
    let v = decide(inst, MAX_BUDGET).unwrap();
    let dt = t.elapsed();
    assert!(
        dt <= limit,
        "{what}: decision took {dt:?}, over the {limit:?} limit"
    );
    v
}

fn drifting_halving_map() -> LoopInstance {
    inst(r#"{"kind":"affine","A":[["1/2"]],"b":["-1"],"B":[["1"]],"eta":["0"]}"#)
}

fn halving_map() -> LoopInstance {
    inst(r#"{"kind":"linear","A":[["1/2"]],"B":[["1"]]}"#)
}

fn embedded_halving_map() -> LoopInstance {
    inst(r#"{"kind":"affine","A":[["1/2"]],"b":["0"],"B":[["1"]],"eta":["0"]}"#)
}

fn curated() -> Vec<(&'static str, LoopInstance, Outcome)> {
    vec![
        (
            "rotation",
            inst(r#"{"kind":"linear","A":[["0","-1"],["1","0"]],"B":[["1","0"],["0","1"]]}"#),
            Outcome::RobustEscaping,
        ),
        (
            "doubling",
            inst(r#"{"kind":"linear","A":[["2"]],"B":[["1"]]}"#),
            Outcome::RobustTrapped,
        ),
        (
            "affine fixed point",
            inst(r#"{"kind":"affine","A":[["1/2"]],"b":["1"],"B":[["1"]],"eta":["0"]}"#),
            Outcome::RobustTrapped,
        ),
        (
            "identity boundary",
            inst(r#"{"kind":"linear","A":[["1","0"],["0","1"]],"B":[["1","0"]]}"#),
            Outcome::Unknown,
        ),
    ]
}

fn random_linear_corpus() -> Vec<LoopInstance> {
    let combos: [(usize, usize, u64, usize); 6] = [
        (2, 1, 41, 34),
        (2, 2, 42, 33),
        (2, 3, 43, 33),
        (3, 1, 44, 34),
        (3, 2, 45, 33),
        (3, 3, 46, 33),
    ];
    let mut out = Vec::with_capacity(200);
    for (n, m, seed, count) in combos {
        out.extend(sample_instances(n, m, Kind::Linear, count, seed));
    }
    assert_eq!(out.len(), 200);
    out
}

fn one_by_one_corpus() -> Vec<LoopInstance> {
    sample_instances(1, 1, Kind::Linear, 500, 1)
}

/// Criterion 1: the one-dimensional reference instances decide exactly,
/// under ten seconds each, and their homogenisations are non-robust.
#[test]
fn criterion_1_reference_instances() {
    let limit = Duration::from_secs(10);

    let v = decide_timed(&drifting_halving_map(), limit, "drifting halving map");
    assert_eq!(v.outcome, Outcome::RobustEscaping);

    let v = decide_timed(&halving_map(), limit, "halving map");
    assert_eq!(v.outcome, Outcome::RobustTrapped);

    let v = decide_timed(&embedded_halving_map(), limit, "embedded halving map");
    assert_eq!(v.outcome, Outcome::Unknown);
    assert_eq!(v.budget_used, MAX_BUDGET);

    // Homogenising either reference instance gives a linear instance that is
    // not robust: the reduction does not preserve robustness.
    let hom1 = homogenise(&drifting_halving_map());
    let v = decide_timed(&hom1, limit, "homogenised drifting map");
    assert_eq!(v.outcome, Outcome::Unknown);
    assert_eq!(v.budget_used, MAX_BUDGET);

    let hom2 = homogenise(&embedded_halving_map());
    let v = decide_timed(&hom2, limit, "homogenised embedded map");
    assert_eq!(v.outcome, Outcome::Unknown);
    assert_eq!(v.budget_used, MAX_BUDGET);

    println!("criterion 1 (reference instances): PASS");
}

/// Criterion 2: curated suite with exact expected verdicts, thirty seconds
/// each; the fixed-point certificate must enclose the true fixed point.
#[test]
fn criterion_2_curated_suite() {
    let limit = Duration::from_secs(30);
    for (name, instance, expected) in curated() {
        let v = decide_timed(&instance, limit, name);
        assert_eq!(v.outcome, expected, "{name}");
        if name == "affine fixed point" {
            let cert = v.certificate.as_ref().expect("decided verdicts certify");
            match cert {
                Certificate::TrappedFixedPoint { .. } => {
                    let fp = cert.fixed_point_enclosure().unwrap();
                    assert!(
                        fp[0].contains_dyadic(&Dyadic::from_i64(2)),
                        "fixed-point enclosure {fp:?} misses x* = 2"
                    );
                }
                other => panic!("expected the fixed-point clause, got {other:?}"),
            }
        }
    }
    println!("criterion 2 (curated suite): PASS");
}

/// Criterion 3: on 500 seeded random 1x1 rational instances, decide never
/// contradicts the closed-form oracle, and Unknown only occurs on boundary
/// data (a = 0 or a zero constraint coefficient).
#[test]
fn criterion_3_one_by_one_oracle_agreement() {
    let mut unknowns = 0usize;
    for (i, instance) in one_by_one_corpus().iter().enumerate() {
        let (a, b_mat, _, _) = exact_parts(instance).unwrap();
        let column: Vec<Rat> = b_mat.iter().map(|r| r[0].clone()).collect();
        let oracle = decide_1x1(&a[0][0], &column);
        let v = decide(instance, MAX_BUDGET).unwrap();
        match v.outcome {
            Outcome::RobustEscaping => {
                assert_eq!(oracle, OneByOne::Escaping, "contradiction at index {i}")
            }
            Outcome::RobustTrapped => {
                assert_eq!(oracle, OneByOne::Trapped, "contradiction at index {i}")
            }
            Outcome::Unknown => {
                unknowns += 1;
                let boundary = a[0][0].is_zero() || column.iter().any(|c| c.is_zero());
                assert!(
                    boundary,
                    "non-boundary Unknown at index {i}: a={} B={column:?}",
                    a[0][0]
                );
            }
        }
    }
    println!("criterion 3 (1x1 oracle agreement, {unknowns} boundary unknowns): PASS");
}

/// Criterion 4: random linear instances with n in {{2,3}}, m in {{1,2,3}}
/// halt within the budget on at least 90 percent of cases, inside the
/// thirty-minute envelope.
#[test]
fn criterion_4_random_halting_rate() {
    let start = Instant::now();
    let corpus = random_linear_corpus();
    let mut halted = 0usize;
    for instance in &corpus {
        let v = decide(instance, MAX_BUDGET).unwrap();
        if v.outcome != Outcome::Unknown {
            halted += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed <= Duration::from_secs(30 * 60),
        "corpus run took {elapsed:?}"
    );
    assert!(
        halted * 10 >= corpus.len() * 9,
        "halting rate too low: {halted}/{}",
        corpus.len()
    );
    println!(
        "criterion 4 (random halting rate {halted}/{} in {elapsed:?}): PASS",
        corpus.len()
    );
}

/// Criterion 5: every Verified verdict over the criteria 1-4 corpus is
/// corroborated by an exact simulation audit — trapped witnesses stay 200
/// steps in the closed polyhedron, and 100 sampled points escape within
/// 10^4 steps for escaping verdicts. Zero failures allowed.
#[test]
fn criterion_5_simulation_audits() {
    let mut corpus: Vec<LoopInstance> = vec![
        drifting_halving_map(),
        halving_map(),
        embedded_halving_map(),
        homogenise(&drifting_halving_map()),
        homogenise(&embedded_halving_map()),
    ];
    corpus.extend(curated().into_iter().map(|(_, i, _)| i));
    corpus.extend(one_by_one_corpus());
    corpus.extend(random_linear_corpus());

    let mut escaping_audits = 0usize;
    let mut trapped_audits = 0usize;
    for (i, instance) in corpus.iter().enumerate() {
        let v = decide(instance, MAX_BUDGET).unwrap();
        match v.outcome {
            Outcome::Unknown => continue,
            Outcome::RobustEscaping => {
                audit_escaping(instance, 100, 10_000, 1234)
                    .unwrap_or_else(|e| panic!("escape audit failed at corpus index {i}: {e}"));
                escaping_audits += 1;
            }
            Outcome::RobustTrapped => {
                let cert = v.certificate.as_ref().unwrap();
                audit_trapped(instance, cert, 200)
                    .unwrap_or_else(|e| panic!("trapped audit failed at corpus index {i}: {e}"));
                trapped_audits += 1;
            }
        }
    }
    println!(
        "criterion 5 (simulation audits: {escaping_audits} escaping, {trapped_audits} trapped, 0 failures): PASS"
    );
}

/// Criterion 6: numerics properties — scalar containment on 10^4 random
/// triples, characteristic-polynomial containment on 200 random 3x3
/// matrices, and root-enclosure cover soundness on 50 companion matrices
/// with max radius at most 2^-20 at budget-8 precision.
#[test]
fn criterion_6_numerics_properties() {
    // Scalar ops vs the exact rational reference.
    let mut rng = SplitMix64::new(606);
    let draw = |rng: &mut SplitMix64| {
        BigRational::new(
            BigInt::from(rng.below(1 << 21) as i64 - (1 << 20)),
            BigInt::from(rng.below(999) + 1),
        )
    };
    for case in 0..10_000u64 {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let prec = 24 + (case % 5) * 16;
        let ia = DyadicInterval::from_rational(&a, prec);
        let ib = DyadicInterval::from_rational(&b, prec);
        let ok = match case % 4 {
            0 => ia.add(&ib).contains_rational(&(&a + &b)),
            1 => ia.sub(&ib).contains_rational(&(&a - &b)),
            2 => ia.mul(&ib).contains_rational(&(&a * &b)),
            _ => {
                if b.is_zero() {
                    true
                } else {
                    ia.div(&ib).unwrap().contains_rational(&(&a / &b))
                }
            }
        };
        assert!(ok, "containment failed on case {case}: a={a} b={b}");
    }

    // Characteristic polynomial containment on random 3x3 matrices.
    let mut rng = SplitMix64::new(607);
    for case in 0..200 {
        let entries: Vec<Rat> = (0..9)
            .map(|_| BigRational::new(BigInt::from(rng.below(513) as i64 - 256), BigInt::from(256)))
            .collect();
        let a_q: Vec<Vec<Rat>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let a_iv = IntervalMatrix::new(
            3,
            3,
            entries
                .iter()
                .map(|r| DyadicInterval::from_rational(r, 80))
                .collect(),
        );
        let exact = char_poly_q(&a_q);
        let interval = char_poly(&a_iv);
        for (k, c) in exact.iter().enumerate() {
            assert!(
                interval[k].contains_rational(c),
                "char poly coefficient {k} escaped its interval on case {case}"
            );
        }
    }

    // Root-enclosure cover soundness on companion matrices of polynomials
    // with known rational roots.
    let p8 = precision_bits(MAX_BUDGET);
    let radius_bound = Dyadic::from_i64_exp(1, -20);
    let mut rng = SplitMix64::new(608);
    let mut max_radius = Dyadic::zero();
    for case in 0..50 {
        let degree = 2 + (case % 3) as usize;
        let mut roots: Vec<Rat> = Vec::new();
        while roots.len() < degree {
            let r = BigRational::new(BigInt::from(rng.below(33) as i64 - 16), BigInt::from(4));
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        // Expand prod (x - r_i) in ascending order: c_0 .. c_d = 1.
        let mut coeffs = vec![Rat::from_integer(BigInt::from(1))];
        for r in &roots {
            let mut next = vec![Rat::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        // Companion matrix: subdiagonal ones, last column -c_0..-c_{d-1}.
        let mut entries = vec![DyadicInterval::zero(p8); degree * degree];
        for i in 0..degree {
            if i + 1 < degree {
                entries[(i + 1) * degree + i] = DyadicInterval::one(p8);
            }
            entries[i * degree + (degree - 1)] =
                DyadicInterval::from_rational(&-&coeffs[i], p8);
        }
        let companion = IntervalMatrix::new(degree, degree, entries);
        let poly = IvPoly::new(char_poly(&companion));
        let disks = root_enclosures(&poly, p8)
            .unwrap_or_else(|e| panic!("enclosure failed on case {case}: {e}"));
        assert_eq!(
            disks.iter().map(|d| d.count).sum::<usize>(),
            degree,
            "counts must sum to the degree on case {case}"
        );
        for d in &disks {
            if d.radius > max_radius {
                max_radius = d.radius.clone();
            }
            assert!(
                d.radius <= radius_bound,
                "radius {} exceeds 2^-20 on case {case}",
                d.radius
            );
        }
        // Every known root inside some disk, by exact rational arithmetic.
        let in_disk = |d: &linloop::spectral::ComplexDisk, x: &Rat| {
            let cre = d.center.0.mid().to_rational();
            let cim = d.center.1.mid().to_rational();
            let rr = d.radius.to_rational();
            let dre = x - cre;
            (&dre * &dre) + (&cim * &cim) <= &rr * &rr
        };
        for r in &roots {
            assert!(
                disks.iter().any(|d| in_disk(d, r)),
                "root {r} uncovered on case {case}"
            );
        }
        // Disks are pairwise disjoint here (roots are grid-separated), so
        // each disk must hold exactly its count of roots.
        for (i, di) in disks.iter().enumerate() {
            for dj in disks.iter().skip(i + 1) {
                let dx = di.center.0.mid().to_rational() - dj.center.0.mid().to_rational();
                let dy = di.center.1.mid().to_rational() - dj.center.1.mid().to_rational();
                let rsum = di.radius.to_rational() + dj.radius.to_rational();
                assert!(
                    &dx * &dx + &dy * &dy > &rsum * &rsum,
                    "disks unexpectedly overlap on case {case}"
                );
            }
            let inside = roots.iter().filter(|r| in_disk(di, r)).count();
            assert_eq!(inside, di.count, "disk count mismatch on case {case}");
        }
    }
    println!(
        "criterion 6 (numerics: 10^4 scalar triples, 200 char polys, 50 companions, max radius {max_radius}): PASS"
    );
}

/// Criterion 7: mutual exclusion and budget monotonicity over the whole
/// criteria 1-4 corpus — the two checkers never both verify, and a
/// verdict obtained at budget beta is still obtained at every larger
/// budget (checked at full budget).
#[test]
fn criterion_7_exclusion_and_monotonicity() {
    let mut corpus: Vec<LoopInstance> = vec![
        drifting_halving_map(),
        halving_map(),
        embedded_halving_map(),
        homogenise(&drifting_halving_map()),
        homogenise(&embedded_halving_map()),
    ];
    corpus.extend(curated().into_iter().map(|(_, i, _)| i));
    corpus.extend(one_by_one_corpus());
    corpus.extend(random_linear_corpus());

    let check_escaping = |i: &LoopInstance, budget: u32| match i.kind() {
        Kind::Linear => check_robust_escaping_linear(i, budget).unwrap(),
        Kind::Affine => check_robust_escaping_affine(i, budget).unwrap(),
    };
    let check_trapped = |i: &LoopInstance, budget: u32| match i.kind() {
        Kind::Linear => check_robust_trapped_linear(i, budget).unwrap(),
        Kind::Affine => check_robust_trapped_affine(i, budget).unwrap(),
    };

    let mut violations = 0usize;
    for (i, instance) in corpus.iter().enumerate() {
        let esc_full = check_escaping(instance, MAX_BUDGET);
        let trp_full = check_trapped(instance, MAX_BUDGET);
        if esc_full.verified() && trp_full.verified() {
            violations += 1;
            eprintln!("mutual exclusion violated at corpus index {i}");
        }
        let v = decide(instance, MAX_BUDGET).unwrap();
        match v.outcome {
            Outcome::RobustEscaping => {
                // Monotonicity: verified at the reporting budget and at the
                // full budget.
                assert!(check_escaping(instance, v.budget_used).verified());
                assert!(esc_full.verified(), "monotonicity broken at index {i}");
            }
            Outcome::RobustTrapped => {
                assert!(check_trapped(instance, v.budget_used).verified());
                assert!(trp_full.verified(), "monotonicity broken at index {i}");
            }
            Outcome::Unknown => {
                assert!(!esc_full.verified() && !trp_full.verified());
            }
        }
    }
    assert_eq!(violations, 0);
    println!("criterion 7 (mutual exclusion and budget monotonicity, 0 violations): PASS");
}
