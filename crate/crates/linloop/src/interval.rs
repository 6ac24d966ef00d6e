//! Validated interval arithmetic over dyadic endpoints.
//!
//! Every operation rounds the lower endpoint down and the upper endpoint up
//! (outward rounding), so the result interval always contains the exact
//! range `{a op b : a in x, b in y}`.

use crate::dyadic::{Dir, Dyadic};
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
}

/// A closed real interval `[lo, hi]` with dyadic endpoints and an attached
/// working precision (mantissa bits) used for outward rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u64,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u64) -> DyadicInterval {
        assert!(lo <= hi, "interval endpoints out of order");
        DyadicInterval { lo, hi, precision }
    }

    pub fn point(v: Dyadic, precision: u64) -> DyadicInterval {
        DyadicInterval {
            lo: v.clone(),
            hi: v,
            precision,
        }
    }

    pub fn zero(precision: u64) -> DyadicInterval {
        DyadicInterval::point(Dyadic::zero(), precision)
    }

    pub fn one(precision: u64) -> DyadicInterval {
        DyadicInterval::point(Dyadic::one(), precision)
    }

    /// Encloses an exact rational with width at most `2^-precision`.
    pub fn from_rational(r: &BigRational, precision: u64) -> DyadicInterval {
        DyadicInterval {
            lo: Dyadic::from_rational(r, precision, Dir::Down),
            hi: Dyadic::from_rational(r, precision, Dir::Up),
            precision,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn with_precision(&self, precision: u64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            precision,
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// Exact dyadic midpoint.
    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).half()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    /// Entire interval strictly above zero.
    pub fn strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    /// Entire interval strictly below zero.
    pub fn strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_dyadic(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn outward(lo: Dyadic, hi: Dyadic, precision: u64) -> DyadicInterval {
        DyadicInterval {
            lo: lo.round(precision, Dir::Down),
            hi: hi.round(precision, Dir::Up),
            precision,
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            precision: self.precision,
        }
    }

    pub fn add(&self, rhs: &DyadicInterval) -> DyadicInterval {
        let p = self.precision.max(rhs.precision);
        Self::outward(self.lo.add(&rhs.lo), self.hi.add(&rhs.hi), p)
    }

    pub fn sub(&self, rhs: &DyadicInterval) -> DyadicInterval {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &DyadicInterval) -> DyadicInterval {
        let p = self.precision.max(rhs.precision);
        let c1 = self.lo.mul(&rhs.lo);
        let c2 = self.lo.mul(&rhs.hi);
        let c3 = self.hi.mul(&rhs.lo);
        let c4 = self.hi.mul(&rhs.hi);
        let lo = Dyadic::min(&Dyadic::min(&c1, &c2), &Dyadic::min(&c3, &c4));
        let hi = Dyadic::max(&Dyadic::max(&c1, &c2), &Dyadic::max(&c3, &c4));
        Self::outward(lo, hi, p)
    }

    /// Tight enclosure of `{a^2 : a in self}`.
    pub fn square(&self) -> DyadicInterval {
        let l2 = self.lo.mul(&self.lo);
        let h2 = self.hi.mul(&self.hi);
        let (lo, hi) = if self.contains_zero() {
            (Dyadic::zero(), Dyadic::max(&l2, &h2))
        } else {
            (Dyadic::min(&l2, &h2), Dyadic::max(&l2, &h2))
        };
        Self::outward(lo, hi, self.precision)
    }

    pub fn div(&self, rhs: &DyadicInterval) -> Result<DyadicInterval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let p = self.precision.max(rhs.precision);
        let c1 = self.lo.div(&rhs.lo, p, Dir::Down);
        let c2 = self.lo.div(&rhs.hi, p, Dir::Down);
        let c3 = self.hi.div(&rhs.lo, p, Dir::Down);
        let c4 = self.hi.div(&rhs.hi, p, Dir::Down);
        let lo = Dyadic::min(&Dyadic::min(&c1, &c2), &Dyadic::min(&c3, &c4));
        let d1 = self.lo.div(&rhs.lo, p, Dir::Up);
        let d2 = self.lo.div(&rhs.hi, p, Dir::Up);
        let d3 = self.hi.div(&rhs.lo, p, Dir::Up);
        let d4 = self.hi.div(&rhs.hi, p, Dir::Up);
        let hi = Dyadic::max(&Dyadic::max(&d1, &d2), &Dyadic::max(&d3, &d4));
        Ok(DyadicInterval {
            lo,
            hi,
            precision: p,
        })
    }

    /// Division by a positive machine integer (exact directed rounding).
    pub fn div_u64(&self, k: u64) -> DyadicInterval {
        assert!(k > 0);
        DyadicInterval {
            lo: self.lo.div_u64(k, self.precision, Dir::Down),
            hi: self.hi.div_u64(k, self.precision, Dir::Up),
            precision: self.precision,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            precision: self.precision,
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: Dyadic::min(&self.lo, &rhs.lo),
            hi: Dyadic::max(&self.hi, &rhs.hi),
            precision: self.precision.max(rhs.precision),
        }
    }

    pub fn intersects(&self, rhs: &DyadicInterval) -> bool {
        self.lo <= rhs.hi && rhs.lo <= self.hi
    }

    /// Widen both endpoints outward by `delta >= 0`.
    pub fn inflate(&self, delta: &Dyadic) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.sub(delta),
            hi: self.hi.add(delta),
            precision: self.precision,
        }
    }

    /// Magnitude upper bound: `max(|lo|, |hi|)`.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Mignitude: distance of the interval from zero (zero if it contains 0).
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (DyadicInterval, DyadicInterval) {
        let m = self.mid();
        (
            DyadicInterval::new(self.lo.clone(), m.clone(), self.precision),
            DyadicInterval::new(m, self.hi.clone(), self.precision),
        )
    }
}

impl std::fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
