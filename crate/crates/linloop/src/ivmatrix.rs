//! Interval matrices and vectors: products, validated linear solving, and
//! the characteristic polynomial via the Faddeev-LeVerrier recurrence.

use crate::interval::DyadicInterval;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    /// Some pivot interval contains zero. Retriable at higher precision;
    /// never evidence of actual singularity.
    #[error("pivot interval contains zero at this precision")]
    SingularAtThisPrecision,
}

pub type IntervalVector = Vec<DyadicInterval>;

/// Rectangular array of intervals in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<DyadicInterval>,
}

impl IntervalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<DyadicInterval>) -> IntervalMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(rows > 0 && cols > 0, "degenerate matrix shape");
        IntervalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize, precision: u64) -> IntervalMatrix {
        let mut entries = vec![DyadicInterval::zero(precision); n * n];
        for i in 0..n {
            entries[i * n + i] = DyadicInterval::one(precision);
        }
        IntervalMatrix::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &DyadicInterval {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: DyadicInterval) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[DyadicInterval] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn precision(&self) -> u64 {
        self.entries.iter().map(|e| e.precision()).max().unwrap_or(53)
    }

    /// Entrywise containment.
    pub fn contains(&self, other: &IntervalMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.contains_interval(b))
    }

    pub fn mat_mul(&self, rhs: &IntervalMatrix) -> IntervalMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions disagree");
        let p = self.precision().max(rhs.precision());
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = DyadicInterval::zero(p);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
                }
                entries.push(acc);
            }
        }
        IntervalMatrix::new(self.rows, rhs.cols, entries)
    }

    pub fn mat_vec(&self, v: &[DyadicInterval]) -> IntervalVector {
        assert_eq!(self.cols, v.len(), "inner dimensions disagree");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, rhs: &IntervalMatrix) -> IntervalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        IntervalMatrix::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, rhs: &IntervalMatrix) -> IntervalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        IntervalMatrix::new(self.rows, self.cols, entries)
    }

    fn trace(&self) -> DyadicInterval {
        assert_eq!(self.rows, self.cols);
        let mut acc = DyadicInterval::zero(self.precision());
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }
}

pub fn dot(a: &[DyadicInterval], b: &[DyadicInterval]) -> DyadicInterval {
    assert_eq!(a.len(), b.len());
    let p = a
        .iter()
        .chain(b.iter())
        .map(|e| e.precision())
        .max()
        .unwrap_or(53);
    let mut acc = DyadicInterval::zero(p);
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// Solves `M x = rhs` by interval Gaussian elimination with partial
/// pivoting. On success the result contains every exact solution of every
/// point system inside `M` and `rhs`.
///
/// Pivots maximise the lower bound of the entry magnitude; a pivot interval
/// containing zero aborts with `SingularAtThisPrecision`.
pub fn interval_solve(
    m: &IntervalMatrix,
    rhs: &[DyadicInterval],
) -> Result<IntervalVector, LinAlgError> {
    assert_eq!(m.rows(), m.cols(), "solve requires a square matrix");
    assert_eq!(m.rows(), rhs.len(), "right-hand side length mismatch");
    let n = m.rows();
    let mut a = m.clone();
    let mut b: Vec<DyadicInterval> = rhs.to_vec();

    for col in 0..n {
        let mut best = col;
        let mut best_mig = a.at(col, col).mig();
        for row in col + 1..n {
            let mig = a.at(row, col).mig();
            if mig > best_mig {
                best = row;
                best_mig = mig;
            }
        }
        if best_mig.is_zero() {
            return Err(LinAlgError::SingularAtThisPrecision);
        }
        if best != col {
            for j in 0..n {
                let tmp = a.at(col, j).clone();
                a.set(col, j, a.at(best, j).clone());
                a.set(best, j, tmp);
            }
            b.swap(col, best);
        }
        let pivot = a.at(col, col).clone();
        for row in col + 1..n {
            if a.at(row, col).contains_zero() && a.at(row, col).is_point() {
                continue;
            }
            let factor = a
                .at(row, col)
                .div(&pivot)
                .expect("pivot checked to exclude zero");
            for j in col..n {
                let v = a.at(row, j).sub(&factor.mul(a.at(col, j)));
                a.set(row, j, v);
            }
            // Zero the eliminated entry exactly; the arithmetic residual is
            // already accounted for by using `factor` intervals on the rest
            // of the row.
            a.set(row, col, DyadicInterval::zero(pivot.precision()));
            let nb = b[row].sub(&factor.mul(&b[col]));
            b[row] = nb;
        }
    }

    let mut x = vec![DyadicInterval::zero(m.precision()); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for j in row + 1..n {
            acc = acc.sub(&a.at(row, j).mul(&x[j]));
        }
        x[row] = acc
            .div(a.at(row, row))
            .expect("pivot checked to exclude zero");
    }
    Ok(x)
}

/// Monic characteristic polynomial coefficients, ascending order
/// (`c_0, ..., c_{n-1}, 1`), by the Faddeev-LeVerrier recurrence. Division
/// happens only by the integers `1..=n`, so interval soundness is immediate.
pub fn char_poly(a: &IntervalMatrix) -> Vec<DyadicInterval> {
    assert_eq!(a.rows(), a.cols(), "characteristic polynomial of a square matrix");
    let n = a.rows();
    let p = a.precision();
    let mut coeffs = vec![DyadicInterval::zero(p); n + 1];
    coeffs[n] = DyadicInterval::one(p);
    let mut m = IntervalMatrix::identity(n, p);
    for k in 1..=n {
        let am = a.mat_mul(&m);
        let c = am.trace().neg().div_u64(k as u64);
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shift = am;
            for i in 0..n {
                let v = shift.at(i, i).add(&c);
                shift.set(i, i, v);
            }
            m = shift;
        }
    }
    coeffs
}
