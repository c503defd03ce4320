//! Exact rational linear algebra: vectors, small dense matrices, symmetric
//! bilinear forms, and definiteness classification.
//!
//! Matrices here are tiny (rank + 2 at most), so the implementations favor
//! clarity over asymptotics. All arithmetic is `BigRational`; nothing is
//! rounded anywhere.

use crate::error::{CoreError, Result};
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Rational n/d. Panics if d == 0.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p", "-p", or "p/q" into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || CoreError::BadScale(s.to_string());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn int_vec_to_rat(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| rat(x)).collect()
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub(crate) data: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Mat::from_rows(rows.iter().map(|r| int_vec_to_rat(r)).collect())
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Gauss-Jordan inverse. Errors on singular input.
    pub fn inverse(&self) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(CoreError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                *a.at_mut(col, j) = a.at(col, j) / &p;
                *inv.at_mut(col, j) = inv.at(col, j) / &p;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    *a.at_mut(r, j) = v;
                    let v = inv.at(r, j) - &f * inv.at(col, j);
                    *inv.at_mut(r, j) = v;
                }
            }
        }
        Ok(inv)
    }

    /// Solves A x = b for square A.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a.at(r, col).is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                det = -det;
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                }
            }
            let p = a.at(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col) / &p;
                for j in col..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    *a.at_mut(r, j) = v;
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = match (row..self.rows).find(|&r| !a.at(r, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for j in 0..self.cols {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(row, j).clone();
                    *a.at_mut(row, j) = tmp;
                }
            }
            let p = a.at(row, col).clone();
            for r in 0..self.rows {
                if r == row || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col) / &p;
                for j in 0..self.cols {
                    let v = a.at(r, j) - &f * a.at(row, j);
                    *a.at_mut(r, j) = v;
                }
            }
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel { x : A x = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut a = self.clone();
        let n = self.cols;
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut row = 0;
        for col in 0..n {
            if row >= self.rows {
                break;
            }
            let pivot = match (row..self.rows).find(|&r| !a.at(r, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(row, j).clone();
                    *a.at_mut(row, j) = tmp;
                }
            }
            let p = a.at(row, col).clone();
            for j in 0..n {
                *a.at_mut(row, j) = a.at(row, j) / &p;
            }
            for r in 0..self.rows {
                if r == row || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(row, j);
                    *a.at_mut(r, j) = v;
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = zero_vec(n);
            v[free] = Rat::one();
            for col in 0..n {
                if let Some(r) = pivot_of_col[col] {
                    v[col] = -a.at(r, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    pub mat: Mat,
}

/// Outcome of exact definiteness classification. `Indefinite` covers
/// everything that is not positive semidefinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite { radical_basis: Vec<Vec<Rat>> },
    Indefinite,
}

impl GramForm {
    pub fn new(mat: Mat) -> Self {
        assert_eq!(mat.rows, mat.cols);
        for i in 0..mat.rows {
            for j in 0..i {
                assert_eq!(mat.at(i, j), mat.at(j, i), "Gram matrix must be symmetric");
            }
        }
        GramForm { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut acc = Rat::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                if y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * self.mat.at(i, j) * &y[j];
            }
        }
        acc
    }

    pub fn norm(&self, x: &[Rat]) -> Rat {
        self.bilinear(x, x)
    }

    /// Exact classification by symmetric (congruence) elimination.
    ///
    /// Pivots only on strictly positive diagonal entries; a negative diagonal
    /// entry, or a zero diagonal entry with a nonzero residual row, certifies
    /// a vector of negative norm. The radical of a positive-semidefinite form
    /// equals the matrix kernel, which is returned as an explicit basis.
    pub fn definiteness(&self) -> Definiteness {
        let n = self.dim();
        let mut a = self.mat.clone();
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let piv = active.iter().position(|&i| a.at(i, i).is_positive());
            match piv {
                Some(pos) => {
                    let i = active.remove(pos);
                    let p = a.at(i, i).clone();
                    for &r in &active {
                        if a.at(r, i).is_zero() {
                            continue;
                        }
                        let f = a.at(r, i) / &p;
                        for &c in &active {
                            let v = a.at(r, c) - &f * a.at(i, c);
                            *a.at_mut(r, c) = v;
                        }
                    }
                }
                None => {
                    // No positive pivot left. Negative diagonal, or a zero
                    // diagonal with nonzero coupling, both defeat PSD.
                    for &i in &active {
                        if a.at(i, i).is_negative() {
                            return Definiteness::Indefinite;
                        }
                        for &j in &active {
                            if !a.at(i, j).is_zero() {
                                return Definiteness::Indefinite;
                            }
                        }
                    }
                    break;
                }
            }
        }
        let radical = self.mat.kernel_basis();
        if radical.is_empty() {
            Definiteness::PositiveDefinite
        } else {
            Definiteness::PositiveSemidefinite { radical_basis: radical }
        }
    }
}
