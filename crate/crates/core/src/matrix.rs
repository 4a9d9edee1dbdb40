//! Dense matrices with exact elimination.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::ser::{SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("matrix", "ragged rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }
}

impl<T: PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::domain("matrix product", "dimension mismatch"));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, t| {
                acc + self[(i, t)].clone() * other[(t, j)].clone()
            })
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }
}

/// Fraction-free (Bareiss) determinant over an integral domain; every
/// intermediate division is exact.
pub fn bareiss_det_int<T: Integer + Clone>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::domain("determinant", "matrix is not square"));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for p in 0..n - 1 {
        if a[(p, p)].is_zero() {
            match (p + 1..n).find(|&r| !a[(r, p)].is_zero()) {
                Some(r) => {
                    a.swap_rows(p, r);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let v = a[(p, p)].clone() * a[(i, j)].clone() - a[(i, p)].clone() * a[(p, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
            a[(i, p)] = T::zero();
        }
        prev = a[(p, p)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { T::zero() - det } else { det })
}

/// Exact rational determinant: each row is scaled to integers by the lcm of
/// its denominators, Bareiss runs on the integer lift, and the scale is
/// divided back out.
pub fn bareiss_det(m: &Matrix<Rat>) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::domain("determinant", "matrix is not square"));
    }
    let mut scale = BigInt::one();
    let mut lifted: Vec<BigInt> = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        let lcm = m.row(i).iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        for r in m.row(i) {
            lifted.push(r.numer() * (&lcm / r.denom()));
        }
        scale *= lcm;
    }
    let int = Matrix {
        rows: m.rows(),
        cols: m.cols(),
        data: lifted,
    };
    Ok(Rat::new(bareiss_det_int(&int)?, scale))
}

/// Gauss-Jordan inverse with first-nonzero pivoting.
pub fn gauss_jordan_inverse<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::domain("inverse", "matrix is not square"));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Matrix::<T>::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[(r, c)].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        let piv = a[(c, c)].clone();
        for j in 0..n {
            a[(c, j)] = a[(c, j)].clone() / piv.clone();
            inv[(c, j)] = inv[(c, j)].clone() / piv.clone();
        }
        for r in 0..n {
            if r == c || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for j in 0..n {
                a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(c, j)].clone();
                inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(c, j)].clone();
            }
        }
    }
    Ok(inv)
}

/// Exact rational inverse; `M * M^-1 = I` is checked before returning.
pub fn exact_inverse(m: &Matrix<Rat>) -> Result<Matrix<Rat>> {
    let inv = gauss_jordan_inverse(m)?;
    if !m.mul(&inv)?.is_identity() {
        return Err(Error::Inconsistent("M * M^-1 != I".into()));
    }
    Ok(inv)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    Inconsistent,
    Underdetermined { rank: usize },
}

/// Solves `A x = b` exactly by reduced row echelon form.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Solution<T>> {
    if a.rows() != b.len() {
        return Err(Error::domain("linear solve", "right-hand side length mismatch"));
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut aug = Matrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !aug[(r, c)].is_zero()) else {
            continue;
        };
        aug.swap_rows(rank, p);
        let piv = aug[(rank, c)].clone();
        for j in 0..=cols {
            aug[(rank, j)] = aug[(rank, j)].clone() / piv.clone();
        }
        for r in 0..rows {
            if r != rank && !aug[(r, c)].is_zero() {
                let f = aug[(r, c)].clone();
                for j in 0..=cols {
                    aug[(r, j)] = aug[(r, j)].clone() - f.clone() * aug[(rank, j)].clone();
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if (rank..rows).any(|r| !aug[(r, cols)].is_zero()) {
        return Ok(Solution::Inconsistent);
    }
    if rank < cols {
        return Ok(Solution::Underdetermined { rank });
    }
    let mut x = vec![T::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, cols)].clone();
    }
    Ok(Solution::Unique(x))
}

/// How a matrix entry goes onto the wire.
pub trait SerializeEntry {
    fn serialize_entry<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error>;
}

impl SerializeEntry for Rat {
    fn serialize_entry<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::fmt::rat(self, s)
    }
}

impl SerializeEntry for BigInt {
    fn serialize_entry<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::fmt::int(self, s)
    }
}

impl SerializeEntry for f64 {
    fn serialize_entry<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(*self)
    }
}

struct Entry<'a, T>(&'a T);

impl<T: SerializeEntry> serde::Serialize for Entry<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize_entry(s)
    }
}

struct RowRef<'a, T>(&'a [T]);

impl<T: SerializeEntry> serde::Serialize for RowRef<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&Entry(v))?;
        }
        seq.end()
    }
}

impl<T: SerializeEntry> serde::Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&RowRef(self.row(i)))?;
        }
        seq.end()
    }
}
