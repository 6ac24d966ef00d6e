//! Arbitrary-precision dyadic numbers: `mantissa * 2^exponent`.
//!
//! Dyadics are the endpoint type for all validated interval arithmetic in
//! this crate. Addition, subtraction and multiplication are exact; division
//! and precision reduction use explicitly directed rounding so callers can
//! always round outward.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Down,
    Up,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }
}

/// An arbitrary-precision dyadic number `mantissa * 2^exponent`.
///
/// The representation is kept canonical: the mantissa is odd or zero, and
/// zero is always `(0, 0)`. Canonical form makes equality structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

/// Floor division by a power of two. `BigInt`'s `>>` rounds toward negative
/// infinity, which is exactly floor semantics.
fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    m >> k
}

/// Ceiling division by a power of two.
fn ceil_shr(m: &BigInt, k: u64) -> BigInt {
    -((-m) >> k)
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Dyadic {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// `k * 2^e` for small `k`.
    pub fn from_i64_exp(k: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(k), e)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa = &self.mantissa >> tz;
            self.exponent += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Number of significant bits in the mantissa.
    pub fn mantissa_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: if self.mantissa.is_zero() {
                0
            } else {
                self.exponent
            },
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &rhs.mantissa << (rhs.exponent - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, rhs: &Dyadic) -> Dyadic {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Exact halving; dyadics are closed under division by two.
    pub fn half(&self) -> Dyadic {
        self.mul_pow2(-1)
    }

    /// Round to at most `prec` mantissa bits in direction `dir`.
    pub fn round(&self, prec: u64, dir: Dir) -> Dyadic {
        let prec = prec.max(1);
        let bits = self.mantissa.bits();
        if bits <= prec {
            return self.clone();
        }
        let drop = bits - prec;
        let m = match dir {
            Dir::Down => floor_shr(&self.mantissa, drop),
            Dir::Up => ceil_shr(&self.mantissa, drop),
        };
        Dyadic::new(m, self.exponent + drop as i64)
    }

    /// Directed-rounding division: a result within one ulp of `self / rhs`
    /// at `prec` mantissa bits, rounded in direction `dir`. `rhs` must be
    /// nonzero.
    pub fn div(&self, rhs: &Dyadic, prec: u64, dir: Dir) -> Dyadic {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let prec = prec.max(1);
        // Shift the numerator so the integer quotient carries prec+2 bits.
        let shift = (prec + 2 + rhs.mantissa.bits()).saturating_sub(self.mantissa.bits());
        let num = &self.mantissa << shift;
        let exp = self.exponent - rhs.exponent - shift as i64;
        let q = match dir {
            Dir::Down => floor_div(&num, &rhs.mantissa),
            Dir::Up => ceil_div(&num, &rhs.mantissa),
        };
        Dyadic::new(q, exp).round(prec, dir)
    }

    /// Directed-rounding division by a positive machine integer.
    pub fn div_u64(&self, k: u64, prec: u64, dir: Dir) -> Dyadic {
        self.div(&Dyadic::from_i64(k as i64), prec, dir)
    }

    /// Convert an exact rational to a dyadic, rounded in direction `dir`
    /// with an absolute error below `2^-p`.
    pub fn from_rational(r: &BigRational, p: u64, dir: Dir) -> Dyadic {
        let scaled = r * BigRational::from_integer(BigInt::one() << (p + 1));
        let m = match dir {
            Dir::Down => scaled.floor().to_integer(),
            Dir::Up => scaled.ceil().to_integer(),
        };
        Dyadic::new(m, -((p + 1) as i64))
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Renders the exact value as `p/q` (or an integer when `q = 1`).
    pub fn to_rational_string(&self) -> String {
        let r = self.to_rational();
        if r.denom().is_one() {
            format!("{}", r.numer())
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    if r.is_zero() || (r.sign() == b.sign()) {
        q
    } else {
        q - 1
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -floor_div(&-a, b)
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let sl = self.signum();
        let sr = other.signum();
        if sl != sr {
            return sl.cmp(&sr);
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        a.cmp(&b)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational_string())
    }
}
