//! Dense square matrices over a generic ring and exact subspaces of `Q^d`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// The arithmetic a matrix entry needs.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// A square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(n: usize) -> Mat<T> {
        Mat {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Mat<T> {
        let mut m = Mat::zeros(n);
        for k in 0..n {
            m.set(k, k, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut m = Mat::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn scale(&self, k: &T) -> Mat<T> {
        Mat {
            n: self.n,
            data: self.data.iter().map(|v| k.clone() * v.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        let n = self.n;
        let mut m = Mat::<T>::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = m.get(r, c).clone() + a.clone() * b.clone();
                        m.set(r, c, v);
                    }
                }
            }
        }
        m
    }

    /// `[self, other] = self * other - other * self`.
    pub fn bracket(&self, other: &Mat<T>) -> Mat<T> {
        self.mul(other).sub(&other.mul(self))
    }
}

impl Mat<i64> {
    pub fn to_rational(&self) -> Mat<Q> {
        Mat {
            n: self.n,
            data: self.data.iter().map(|&v| q(v)).collect(),
        }
    }

    /// The entries as a sparse vector of length `n^2`, index `row * n + col`.
    pub fn flatten(&self) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(k, &v)| (k, q(v)))
            .collect()
    }
}

impl Mat<Q> {
    pub fn flatten(&self) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat<Q>> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::<Q>::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                for c in 0..n {
                    a.data.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
            }
            let d = a.get(col, col).clone();
            for c in 0..n {
                let x = a.get(col, c).clone() / d.clone();
                a.set(col, c, x);
                let y = inv.get(col, c).clone() / d.clone();
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let x = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, x);
                    let y = inv.get(r, c).clone() - f.clone() * inv.get(col, c).clone();
                    inv.set(r, c, y);
                }
            }
        }
        Some(inv)
    }
}

pub type SparseVec = BTreeMap<usize, Q>;

/// A subspace of `Q^d` held as rows in semi-echelon form: each row has a
/// distinct pivot (its first nonzero coordinate), normalised to 1.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn new() -> Subspace {
        Subspace::default()
    }

    pub fn spanned_by<I: IntoIterator<Item = SparseVec>>(vectors: I) -> Subspace {
        let mut s = Subspace::new();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut from = 0;
        loop {
            let Some((&k, _)) = v.range(from..).find(|(k, _)| self.rows.contains_key(k)) else {
                return v;
            };
            let f = v.remove(&k).expect("present");
            for (&c, x) in self.rows[&k].iter().skip(1) {
                let e = v.entry(c).or_insert_with(Q::zero);
                *e -= f.clone() * x;
                if e.is_zero() {
                    v.remove(&c);
                }
            }
            from = k + 1;
        }
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&k, lead)) = v.iter().next() else {
            return false;
        };
        let lead = lead.clone();
        let row = v.into_iter().map(|(c, x)| (c, x / lead.clone())).collect();
        self.rows.insert(k, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.rows.values().all(|r| self.contains(r))
    }

    pub fn vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in other.rows.values() {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }
}

/// Rank of a dense integer matrix given by rows, by fraction-free elimination.
pub fn rank_of_rows(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n_cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                for c in col + 1..n_cols {
                    m[r][c] = &m[r][c] * &m[rank][col] / &prev;
                }
                continue;
            }
            for c in col + 1..n_cols {
                m[r][c] = (&m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c]) / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("small integers embed in every scalar ring")
}
