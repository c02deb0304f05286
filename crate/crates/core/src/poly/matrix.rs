use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{Poly, Ring};

/// Dense matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// A minor together with the rows and columns (0-based) it was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: Poly,
}

impl PolyMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![Poly::zero(ring); rows * cols] }
    }

    /// Builds from row-major entries. Panics if the count or rings disagree.
    pub fn from_rows(ring: Ring, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        assert!(entries.iter().all(|p| p.ring() == ring), "entries in different rings");
        PolyMatrix { ring, rows, cols, entries }
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::from_rows(ring, rows, cols, entries)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        assert_eq!(p.ring(), self.ring, "entry in a different ring");
        self.entries[r * self.cols + c] = p;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(self.ring, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Row-major canonical strings.
    pub fn to_canonical_strings(&self) -> Vec<String> {
        self.entries.iter().map(Poly::to_canonical_string).collect()
    }

    /// Exact determinant by Laplace expansion memoized over column subsets:
    /// `sub[S]` is the determinant of the last `|S|` rows restricted to the
    /// columns in `S`.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let k = self.rows;
        if k == 0 {
            return Ok(Poly::constant(self.ring, Rational::ONE));
        }
        assert!(k < usize::BITS as usize, "matrix too large for subset expansion");
        let full = (1usize << k) - 1;
        let mut sub: Vec<Option<Poly>> = vec![None; 1 << k];
        sub[0] = Some(Poly::constant(self.ring, Rational::ONE));
        // masks in increasing popcount order
        let mut masks: Vec<usize> = (1..=full).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let size = mask.count_ones() as usize;
            let row = k - size;
            let mut acc = Poly::zero(self.ring);
            for (pos, col) in (0..k).filter(|c| mask & (1 << c) != 0).enumerate() {
                let entry = self.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let rest = match &sub[mask & !(1 << col)] {
                    Some(p) if !p.is_zero() => p,
                    _ => continue,
                };
                let term = entry.mul_unchecked(rest);
                acc = if pos % 2 == 0 { acc.add_unchecked(&term) } else { acc.sub_unchecked(&term) };
            }
            sub[mask] = Some(acc);
        }
        Ok(sub[full].take().unwrap())
    }

    /// Every `t x t` minor, in lexicographic (rows, cols) order, zeros included.
    pub fn all_minors(&self, t: usize) -> Result<Vec<Minor>> {
        if t == 0 || t > self.rows.min(self.cols) {
            return Err(Error::MinorSize { size: t, rows: self.rows, cols: self.cols });
        }
        let mut out = Vec::new();
        for rows in combinations(self.rows, t) {
            for cols in combinations(self.cols, t) {
                let poly = self.submatrix(&rows, &cols).determinant()?;
                out.push(Minor { rows: rows.clone(), cols, poly });
            }
        }
        Ok(out)
    }

    /// Nonzero `t x t` minors with duplicates removed (first occurrence kept).
    pub fn minors_of(&self, t: usize) -> Result<Vec<Minor>> {
        let mut seen = HashSet::new();
        Ok(self
            .all_minors(t)?
            .into_iter()
            .filter(|m| !m.poly.is_zero() && seen.insert(m.poly.clone()))
            .collect())
    }
}

impl Poly {
    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        self.add_scaled_term(other, &super::Monomial::one(self.ring.num_vars()), &Rational::ONE)
    }

    pub(crate) fn sub_unchecked(&self, other: &Poly) -> Poly {
        self.sub_scaled_term(other, &super::Monomial::one(self.ring.num_vars()), &Rational::ONE)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
