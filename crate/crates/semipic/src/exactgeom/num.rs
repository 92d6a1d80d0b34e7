//! Rational scalars, vectors, matrices, and exact Gaussian elimination.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A vector of rationals with a fixed ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec {
    pub coords: Vec<Rational>,
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl RatVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        RatVec { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RatVec {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVec {
            coords: entries.iter().map(|&n| rat(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dot(&self, other: &RatVec) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> RatVec {
        RatVec {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// True when every entry is a nonnegative integer.
    pub fn is_nonneg_integer(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        RatVec {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        RatVec {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Least common multiple of the denominators of `v`.
pub fn lcm_of_denominators(v: &RatVec) -> BigInt {
    v.coords
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Scale a nonzero vector to its primitive integer form: integer entries
/// with gcd 1, keeping the direction. Returns `None` for the zero vector.
pub fn primitive_integer(v: &RatVec) -> Option<RatVec> {
    if v.is_zero() {
        return None;
    }
    let lcm = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v
        .coords
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, n| acc.gcd(n));
    Some(RatVec::new(
        ints.into_iter()
            .map(|n| Rational::from_integer(n / &gcd))
            .collect(),
    ))
}

/// A dense matrix of rationals, stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    pub rows: Vec<RatVec>,
    pub ncols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<RatVec>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.dim() == ncols));
        RatMatrix { rows, ncols }
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.dim());
        Self::new(rows, ncols)
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            rows: (0..n).map(|i| RatVec::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            rows: vec![RatVec::zero(ncols); nrows],
            ncols,
        }
    }

    pub fn from_int_rows(entries: &[&[i64]]) -> Self {
        Self::from_rows(entries.iter().map(|r| RatVec::from_ints(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i].coords[j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i].coords[j] = v;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.ncols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.ncols {
                t.rows[j].coords[i] = self.at(i, j).clone();
            }
        }
        t
    }

    /// Matrix-vector product `A v`.
    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        RatVec::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// Vector-matrix product `v^T A`, returned as a vector.
    pub fn vec_mul(&self, v: &RatVec) -> RatVec {
        debug_assert_eq!(v.dim(), self.nrows());
        let mut out = RatVec::zero(self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..self.ncols {
                out.coords[j] = &out.coords[j] + &(&v.coords[i] * &row.coords[j]);
            }
        }
        out
    }

    pub fn mul_mat(&self, other: &RatMatrix) -> RatMatrix {
        debug_assert_eq!(self.ncols, other.nrows());
        let mut out = RatMatrix::zero(self.nrows(), other.ncols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = self.at(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    out.rows[i].coords[j] = &out.rows[i].coords[j] + &(&a * other.at(k, j));
                }
            }
        }
        out
    }

    /// Reduced row echelon form; returns (rref, pivot column per pivot row).
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows() {
                break;
            }
            let Some(pr) = (row..m.nrows()).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.rows.swap(row, pr);
            let inv = m.at(row, col).recip();
            m.rows[row] = m.rows[row].scale(&inv);
            for r in 0..m.nrows() {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    m.rows[r] = &m.rows[r] - &m.rows[row].scale(&f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}` in echelon-canonical form.
    pub fn kernel_basis(&self) -> Vec<RatVec> {
        let (r, pivots) = self.rref();
        let n = self.ncols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = RatVec::zero(n);
            v.coords[fc] = Rational::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v.coords[pc] = -r.at(pi, fc).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let mut aug = RatMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.rows[i].coords[j] = self.at(i, j).clone();
            }
            aug.rows[i].coords[n + i] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).ne((0..n).collect::<Vec<_>>().iter()) {
            return None;
        }
        let mut inv = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.rows[i].coords[j] = r.at(i, n + j).clone();
            }
        }
        Some(inv)
    }
}

impl Mul<&RatVec> for &RatMatrix {
    type Output = RatVec;
    fn mul(self, v: &RatVec) -> RatVec {
        self.mul_vec(v)
    }
}

/// Solution of `A x = b`: a particular solution plus a basis of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: RatVec,
    pub kernel_basis: Vec<RatVec>,
}

/// Exact solve of `A x = b`. The solution set is exactly
/// `particular + span(kernel_basis)`; kernel basis vectors are linearly
/// independent (echelon-canonical).
pub fn solve_affine(a: &RatMatrix, b: &RatVec) -> Result<AffineSolution> {
    if a.nrows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.dim(),
        });
    }
    let n = a.ncols;
    let mut aug = RatMatrix::zero(a.nrows(), n + 1);
    for i in 0..a.nrows() {
        for j in 0..n {
            aug.rows[i].coords[j] = a.at(i, j).clone();
        }
        aug.rows[i].coords[n] = b.coords[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&n) {
        return Err(Error::Infeasible);
    }
    let mut particular = RatVec::zero(n);
    for (pi, &pc) in pivots.iter().enumerate() {
        particular.coords[pc] = r.at(pi, n).clone();
    }
    Ok(AffineSolution {
        particular,
        kernel_basis: a.kernel_basis(),
    })
}

/// Echelon-canonical basis of the span of `vectors`: RREF rows, scaled to
/// primitive integer form, lexicographically sorted. Two sets of vectors
/// span the same subspace exactly when this output coincides.
pub fn canonical_span_basis(vectors: &[RatVec], dim: usize) -> Vec<RatVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::new(vectors.to_vec(), dim);
    let (r, pivots) = m.rref();
    let mut out: Vec<RatVec> = r.rows[..pivots.len()]
        .iter()
        .map(|row| primitive_integer(row).expect("pivot row is nonzero"))
        .collect();
    out.sort();
    out
}
