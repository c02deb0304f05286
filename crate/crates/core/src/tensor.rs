//! Exact rational matrices and matrix tuples (points of `C^m ⊗ C^n ⊗ C^n`
//! with rational coordinates).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::ONE;
        }
        m
    }

    /// Row-major integer entries. Panics on a length mismatch.
    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        RatMatrix { rows, cols, data: vals.iter().map(|&v| Rational::from_integer(v)).collect() }
    }

    pub fn from_rationals(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        RatMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rational::ZERO;
            for k in 0..self.cols {
                let a = self.get(r, k);
                if !a.is_zero() {
                    acc += &(a * other.get(k, c));
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// Row echelon form by exact Gaussian elimination; returns the reduced
    /// matrix, the pivot columns and the sign of the row permutation.
    fn echelon(&self) -> (RatMatrix, Vec<usize>, bool) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut negate = false;
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..a.cols {
                    a.data.swap(p * a.cols + c, row * a.cols + c);
                }
                negate = !negate;
            }
            let inv = a.get(row, col).recip();
            for r in row + 1..a.rows {
                let f = a.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..a.cols {
                    let v = a.get(r, c) - &(&f * a.get(row, c));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots, negate)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Exact determinant. Panics on a non-square matrix.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (a, pivots, negate) = self.echelon();
        if pivots.len() < self.rows {
            return Rational::ZERO;
        }
        let d: Rational = (0..self.rows).map(|i| a.get(i, i).clone()).product();
        if negate {
            -d
        } else {
            d
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.determinant().is_zero()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = RatMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Rational::ONE
            } else {
                Rational::ZERO
            }
        });
        for col in 0..n {
            let p = (col..n).find(|&r| !aug.get(r, col).is_zero()).ok_or(Error::Singular)?;
            for c in 0..2 * n {
                aug.data.swap(p * 2 * n + c, col * 2 * n + c);
            }
            let inv = aug.get(col, col).recip();
            for c in 0..2 * n {
                let v = aug.get(col, c) * &inv;
                aug.set(col, c, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = aug.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..2 * n {
                    let v = aug.get(r, c) - &(&f * aug.get(col, c));
                    aug.set(r, c, v);
                }
            }
        }
        Ok(RatMatrix::from_fn(n, n, |r, c| aug.get(r, c + n).clone()))
    }

    /// A nonzero vector `v` with `self * v = 0`, if one exists.
    pub fn kernel_vector(&self) -> Option<Vec<Rational>> {
        let (a, pivots, _) = self.echelon();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut v = vec![Rational::ZERO; self.cols];
        v[free] = Rational::ONE;
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut s = Rational::ZERO;
            for c in pc + 1..self.cols {
                s += &(a.get(i, c) * &v[c]);
            }
            v[pc] = -(&s / a.get(i, pc));
        }
        Some(v)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    fn to_nested(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    fn from_nested(rows: Vec<Vec<Rational>>) -> std::result::Result<Self, ParseError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ParseError::Tensor("ragged matrix".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_nested()).finish()
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(d)?;
        RatMatrix::from_nested(rows).map_err(serde::de::Error::custom)
    }
}

/// An `m`-tuple of `n x n` rational matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    n: usize,
    slices: Vec<RatMatrix>,
}

impl Tensor {
    pub fn new(slices: Vec<RatMatrix>) -> Result<Self> {
        let first = slices
            .first()
            .ok_or_else(|| ParseError::Tensor("a tensor needs at least one slice".into()))?;
        let n = first.rows;
        if n == 0 || slices.iter().any(|s| s.rows != n || s.cols != n) {
            return Err(ParseError::Tensor("slices must share one square shape".into()).into());
        }
        Ok(Tensor { n, slices })
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Tensor { n, slices: vec![RatMatrix::zeros(n, n); m] }
    }

    pub fn m(&self) -> usize {
        self.slices.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slice(&self, k: usize) -> &RatMatrix {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[RatMatrix] {
        &self.slices
    }

    /// `Σ λ_k A_k`.
    pub fn pencil(&self, lambda: &[Rational]) -> RatMatrix {
        assert_eq!(lambda.len(), self.m(), "one coefficient per slice");
        self.slices
            .iter()
            .zip(lambda)
            .fold(RatMatrix::zeros(self.n, self.n), |acc, (a, l)| acc.add(&a.scale(l)))
    }

    /// The `m x n²` matrix whose `k`-th row is slice `k` read row by row.
    pub fn slice_flattening(&self) -> RatMatrix {
        let n = self.n;
        RatMatrix::from_fn(self.m(), n * n, |k, p| self.slices[k].get(p / n, p % n).clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tensor serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| ParseError::Tensor(e.to_string()).into())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.slices).finish()
    }
}

/// JSON form: an array of `m` slices, each an array of `n` rows of rational
/// strings.
impl Serialize for Tensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.slices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let slices = Vec::<RatMatrix>::deserialize(d)?;
        Tensor::new(slices).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn determinant_and_inverse() {
        let a = RatMatrix::from_i64(3, 3, &[2, 1, 0, 0, 1, 4, 1, 0, 3]);
        assert_eq!(a.determinant(), r(2 * 3 + 4 - 0));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
        let sing = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(sing.determinant(), r(0));
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
        assert_eq!(sing.rank(), 1);
        let k = sing.kernel_vector().unwrap();
        assert_eq!(k, vec![r(-2), r(1)]);
        assert!(RatMatrix::identity(3).kernel_vector().is_none());
        let swap = RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(swap.determinant(), r(-1));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let t = Tensor::new(vec![
            RatMatrix::from_rationals(2, 2, vec![Rational::new(1, 2), r(0), r(-3), r(1)]),
            RatMatrix::identity(2),
        ])
        .unwrap();
        let s = t.to_json();
        assert_eq!(s, r#"[[["1/2","0/1"],["-3/1","1/1"]],[["1/1","0/1"],["0/1","1/1"]]]"#);
        assert_eq!(Tensor::from_json(&s).unwrap(), t);
        assert!(Tensor::from_json(r#"[[["1","2"]]]"#).is_err());
        assert!(Tensor::from_json(r#"[[["1"]],[["1","0"],["0","1"]]]"#).is_err());
        assert!(Tensor::from_json("[]").is_err());
        assert!(Tensor::from_json(r#"[[["1/0"]]]"#).is_err());
    }

    proptest! {
        #[test]
        fn determinant_is_multiplicative(a in proptest::collection::vec(-6i64..7, 9), b in proptest::collection::vec(-6i64..7, 9)) {
            let a = RatMatrix::from_i64(3, 3, &a);
            let b = RatMatrix::from_i64(3, 3, &b);
            prop_assert_eq!(a.mul(&b).determinant(), &a.determinant() * &b.determinant());
        }
    }
}
