//! Verdicts and machine-checkable certificates.

use crate::dyadic::Dyadic;
use crate::interval::DyadicInterval;
use crate::ivmatrix::IntervalVector;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    RobustEscaping,
    RobustTrapped,
    Unknown,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::RobustEscaping => "robust-escaping",
            Outcome::RobustTrapped => "robust-trapped",
            Outcome::Unknown => "unknown",
        }
    }
}

/// Which robustness formula a certificate verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Linear escape: every nonnegative-eigenvalue unit eigenvector has a
    /// strictly violated constraint row.
    LinearEscaping,
    /// Linear trappedness: an odd-multiplicity positive eigenvalue whose
    /// unit eigenvectors are strictly one-signed under B.
    LinearTrapped,
    /// Affine escape: the linear escape condition over the homogenised
    /// system at eigenvalue threshold one.
    AffineEscaping,
    /// Affine trappedness via the fixed point lying strictly inside the
    /// polyhedron.
    AffineTrappedFixedPoint,
    /// Affine trappedness via an odd-multiplicity eigenvalue above one.
    AffineTrappedSignChange,
}

impl Formula {
    pub fn as_str(&self) -> &'static str {
        match self {
            Formula::LinearEscaping => "linear-escaping",
            Formula::LinearTrapped => "linear-trapped",
            Formula::AffineEscaping => "affine-escaping",
            Formula::AffineTrappedFixedPoint => "affine-trapped-fixed-point",
            Formula::AffineTrappedSignChange => "affine-trapped-sign-change",
        }
    }
}

/// Statistics from a completed compact box-cover proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStats {
    pub boxes_examined: u64,
    pub max_depth: u32,
    pub precision_bits: u64,
}

/// The finite evidence behind a Verified verdict. Every numeric field was
/// established by interval evaluation; re-checking at the recorded budget
/// round must succeed.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// Escape formulas (linear or affine/homogenised): the full cover proof.
    EscapingCover {
        formula: Formula,
        round: u32,
        cover: CoverStats,
    },
    /// Trappedness via a characteristic-polynomial sign change on `(a, b)`
    /// plus a cover proof of the strict one-signedness of `B v` over the
    /// bracketed spectrum.
    TrappedSignChange {
        formula: Formula,
        round: u32,
        a: Dyadic,
        b: Dyadic,
        chi_a: DyadicInterval,
        chi_b: DyadicInterval,
        cover: CoverStats,
    },
    /// Affine trappedness via the unique fixed point: an enclosure of
    /// `(A - I)^-1 b` together with the verified strict margins
    /// `B_j x* - eta_j > 0`.
    TrappedFixedPoint {
        round: u32,
        solution: IntervalVector,
        margins: IntervalVector,
        precision_bits: u64,
    },
}

impl Certificate {
    pub fn formula(&self) -> Formula {
        match self {
            Certificate::EscapingCover { formula, .. } => *formula,
            Certificate::TrappedSignChange { formula, .. } => *formula,
            Certificate::TrappedFixedPoint { .. } => Formula::AffineTrappedFixedPoint,
        }
    }

    pub fn round(&self) -> u32 {
        match self {
            Certificate::EscapingCover { round, .. } => *round,
            Certificate::TrappedSignChange { round, .. } => *round,
            Certificate::TrappedFixedPoint { round, .. } => *round,
        }
    }

    /// Enclosure of the fixed point `x* = -(A - I)^-1 b` for fixed-point
    /// certificates.
    pub fn fixed_point_enclosure(&self) -> Option<IntervalVector> {
        match self {
            Certificate::TrappedFixedPoint { solution, .. } => {
                Some(solution.iter().map(|iv| iv.neg()).collect())
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::EscapingCover {
                formula,
                round,
                cover,
            } => json!({
                "formula": formula.as_str(),
                "round": round,
                "cover": cover_json(cover),
            }),
            Certificate::TrappedSignChange {
                formula,
                round,
                a,
                b,
                chi_a,
                chi_b,
                cover,
            } => json!({
                "formula": formula.as_str(),
                "round": round,
                "sign_change": {
                    "a": a.to_rational_string(),
                    "b": b.to_rational_string(),
                    "chi_a": interval_json(chi_a),
                    "chi_b": interval_json(chi_b),
                },
                "cover": cover_json(cover),
            }),
            Certificate::TrappedFixedPoint {
                round,
                solution,
                margins,
                precision_bits,
            } => json!({
                "formula": Formula::AffineTrappedFixedPoint.as_str(),
                "round": round,
                "solution": solution.iter().map(interval_json).collect::<Vec<_>>(),
                "fixed_point": solution.iter().map(|iv| interval_json(&iv.neg())).collect::<Vec<_>>(),
                "margins": margins.iter().map(interval_json).collect::<Vec<_>>(),
                "precision_bits": precision_bits,
            }),
        }
    }
}

fn interval_json(iv: &DyadicInterval) -> Value {
    json!([iv.lo().to_rational_string(), iv.hi().to_rational_string()])
}

fn cover_json(c: &CoverStats) -> Value {
    json!({
        "boxes_examined": c.boxes_examined,
        "max_depth": c.max_depth,
        "precision_bits": c.precision_bits,
    })
}

/// Aggregate statistics for one `decide` call.
#[derive(Debug, Clone, Default)]
pub struct DecideStats {
    pub rounds_completed: u32,
    pub boxes_examined: u64,
    pub last_precision_bits: u64,
    /// Constant-interval entries prevented reaching the requested widths.
    pub precision_capped: bool,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub budget_used: u32,
    pub certificate: Option<Certificate>,
    pub stats: DecideStats,
}

impl Verdict {
    pub fn decided(
        outcome: Outcome,
        budget_used: u32,
        certificate: Certificate,
        stats: DecideStats,
    ) -> Verdict {
        assert!(outcome != Outcome::Unknown);
        Verdict {
            outcome,
            budget_used,
            certificate: Some(certificate),
            stats,
        }
    }

    pub fn unknown(budget_used: u32, stats: DecideStats) -> Verdict {
        Verdict {
            outcome: Outcome::Unknown,
            budget_used,
            certificate: None,
            stats,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "verdict": self.outcome.as_str(),
            "budget_used": self.budget_used,
            "stats": {
                "rounds_completed": self.stats.rounds_completed,
                "boxes_examined": self.stats.boxes_examined,
                "last_precision_bits": self.stats.last_precision_bits,
                "precision_capped": self.stats.precision_capped,
            },
        });
        if let Some(cert) = &self.certificate {
            v["certificate"] = cert.to_json();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_carries_no_certificate() {
        let v = Verdict::unknown(4, DecideStats::default());
        assert!(v.certificate.is_none());
        assert_eq!(v.to_json()["verdict"], "unknown");
    }

    #[test]
    fn fixed_point_enclosure_negates_solution() {
        let sol = vec![DyadicInterval::new(
            Dyadic::from_i64(-3),
            Dyadic::from_i64(-1),
            64,
        )];
        let cert = Certificate::TrappedFixedPoint {
            round: 0,
            solution: sol,
            margins: vec![],
            precision_bits: 53,
        };
        let fp = cert.fixed_point_enclosure().unwrap();
        assert!(fp[0].contains_dyadic(&Dyadic::from_i64(2)));
    }
}
