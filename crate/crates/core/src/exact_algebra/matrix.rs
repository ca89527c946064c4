use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::AlphaPoly;
use super::scalar::ExactScalar;
use crate::error::{EfpError, Result};

/// An integral domain in which Bareiss elimination can run: every division
/// it performs is exact.
pub trait BareissRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / divisor`, or `None` if the division leaves a remainder.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl BareissRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }
}

impl BareissRing for ExactScalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!Zero::is_zero(divisor)).then(|| self / divisor)
    }
}

impl BareissRing for AlphaPoly {
    fn zero() -> Self {
        AlphaPoly::zero()
    }
    fn one() -> Self {
        AlphaPoly::one()
    }
    fn is_zero(&self) -> bool {
        AlphaPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        AlphaPoly::exact_div(self, divisor)
    }
}

/// Row-major matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> ExactMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(EfpError::Domain(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Every intermediate entry is itself a minor of the input, so the divisions
/// by the previous pivot are exact in any integral domain. A zero pivot is
/// replaced by the first nonzero entry below it, flipping the sign.
pub fn det_fraction_free<T: BareissRing>(m: &ExactMatrix<T>) -> Result<T> {
    if m.rows != m.cols {
        return Err(EfpError::Dimension {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let num = row[j].mul(&pivot_row[k]).sub(&row[k].mul(&pivot_row[j]));
                row[j] = num.exact_div(&prev).ok_or_else(|| {
                    EfpError::IdentityViolation(format!(
                        "inexact Bareiss division at step {k}, column {j}"
                    ))
                })?;
            }
            row[k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}
