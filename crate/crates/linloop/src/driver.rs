//! Dovetailed decision procedure: runs the escaping and trapped
//! semideciders over increasing budgets and produces verdicts with
//! certificates.

use crate::instance::{LoopInstance, RefineError};
use crate::semidecision::{escaping_round, trapped_round};
use crate::verdict::{Certificate, DecideStats, Outcome, Verdict};

/// Decides the instance within `max_budget` dovetailing rounds.
///
/// Per round the escaping checker runs before the trapped checker; their
/// Verified sets are disjoint open sets, so order can only affect which
/// budget reports, never the verdict. A decided verdict is correct for
/// every real instance consistent with the input data; robust rational
/// instances are decided at some finite budget. `Unknown` is a first-class
/// outcome — boundary instances must diverge, and the stats let callers
/// distinguish "near boundary" from "under-budgeted".
pub fn decide(inst: &LoopInstance, max_budget: u32) -> Result<Verdict, RefineError> {
    let mut stats = DecideStats::default();
    for round in 0..=max_budget {
        let esc = escaping_round(inst, round)?;
        let trp = trapped_round(inst, round)?;
        stats.rounds_completed = round + 1;
        stats.boxes_examined += esc.boxes_examined + trp.boxes_examined;
        stats.last_precision_bits = crate::semidecision::precision_bits(round);
        stats.precision_capped |= esc.precision_capped || trp.precision_capped;
        assert!(
            !(esc.certificate.is_some() && trp.certificate.is_some()),
            "escaping and trapped checkers both verified in round {round}: unsoundness bug"
        );
        if let Some(cert) = esc.certificate {
            return Ok(Verdict::decided(Outcome::RobustEscaping, round, cert, stats));
        }
        if let Some(cert) = trp.certificate {
            return Ok(Verdict::decided(Outcome::RobustTrapped, round, cert, stats));
        }
    }
    Ok(Verdict::unknown(max_budget, stats))
}

/// Re-verifies a certificate against the instance by replaying the
/// recorded budget round; deterministic, so a genuine certificate always
/// replays.
pub fn verify_certificate(inst: &LoopInstance, cert: &Certificate) -> Result<bool, RefineError> {
    let round = cert.round();
    match cert {
        Certificate::EscapingCover { formula, .. } => {
            let report = escaping_round(inst, round)?;
            Ok(report
                .certificate
                .is_some_and(|c| c.formula() == *formula))
        }
        Certificate::TrappedSignChange { a, b, .. } => {
            let report = trapped_round(inst, round)?;
            Ok(match report.certificate {
                Some(Certificate::TrappedSignChange {
                    a: ra, b: rb, ..
                }) => ra == *a && rb == *b,
                _ => false,
            })
        }
        Certificate::TrappedFixedPoint { solution, .. } => {
            let report = trapped_round(inst, round)?;
            Ok(match report.certificate {
                Some(Certificate::TrappedFixedPoint {
                    solution: rs, ..
                }) => rs == *solution,
                _ => false,
            })
        }
    }
}
