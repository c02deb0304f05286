//! Sparse multivariate polynomials over the rationals in the variables
//! `x[k][i][j]`, the `(i, j)` entry of the `k`-th matrix of a tuple.
//!
//! Monomials are compared in graded reverse lexicographic order. Variables are
//! ranked so that every entry of `X(1)` is greater than every entry of `X(2)`
//! and so on; inside one matrix the ranking is row-major by default and can be
//! switched to column-major through [`VarOrder`].

mod eval;
mod matrix;
mod monomial;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::Tensor;

pub use eval::PointValues;
pub use matrix::{Minor, PolyMatrix};
pub use monomial::Monomial;

/// Ranking of the entries inside one matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarOrder {
    /// `x11 > x12 > ... > x1n > x21 > ... > xnn`
    #[default]
    RowMajor,
    /// `x11 > x21 > ... > xn1 > x12 > ... > xnn`
    ColumnMajor,
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarOrder::RowMajor => f.write_str("row-major"),
            VarOrder::ColumnMajor => f.write_str("column-major"),
        }
    }
}

/// The polynomial ring `Q[x[k][i][j] : 1 <= k <= m, 1 <= i, j <= n]` with
/// degrevlex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    m: usize,
    n: usize,
    order: VarOrder,
}

impl Ring {
    /// Panics if `m == 0` or `n == 0`.
    pub fn new(m: usize, n: usize) -> Self {
        Self::with_order(m, n, VarOrder::RowMajor)
    }

    pub fn with_order(m: usize, n: usize, order: VarOrder) -> Self {
        assert!(m >= 1 && n >= 1, "ring needs m >= 1 and n >= 1");
        let nvars = m * n * n;
        assert!(nvars <= u16::MAX as usize, "too many variables");
        Ring { m, n, order }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> VarOrder {
        self.order
    }

    pub fn num_vars(&self) -> usize {
        self.m * self.n * self.n
    }

    /// Human-readable description embedded in certificates.
    pub fn describe(&self) -> String {
        format!(
            "degrevlex; X(1) > X(2) > ... > X({}); {} within each {}x{} matrix",
            self.m, self.order, self.n, self.n
        )
    }

    /// Position of a variable; index 0 is the greatest variable.
    pub fn index_of(&self, v: VarId) -> Result<usize> {
        if !self.contains(v) {
            return Err(crate::error::ParseError::VariableOutOfRange {
                var: v.to_string(),
                m: self.m,
                n: self.n,
            }
            .into());
        }
        Ok(self.index_unchecked(v))
    }

    fn contains(&self, v: VarId) -> bool {
        (1..=self.m).contains(&v.slice) && (1..=self.n).contains(&v.row) && (1..=self.n).contains(&v.col)
    }

    pub(crate) fn index_unchecked(&self, v: VarId) -> usize {
        let n = self.n;
        let within = match self.order {
            VarOrder::RowMajor => (v.row - 1) * n + (v.col - 1),
            VarOrder::ColumnMajor => (v.col - 1) * n + (v.row - 1),
        };
        (v.slice - 1) * n * n + within
    }

    pub fn var_at(&self, index: usize) -> VarId {
        let n = self.n;
        let slice = index / (n * n) + 1;
        let within = index % (n * n);
        let (a, b) = (within / n + 1, within % n + 1);
        match self.order {
            VarOrder::RowMajor => VarId { slice, row: a, col: b },
            VarOrder::ColumnMajor => VarId { slice, row: b, col: a },
        }
    }

    fn check(&self, other: &Ring) -> Result<()> {
        if self != other {
            Err(Error::RingMismatch { left: *self, right: *other })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[m={}, n={}, {}]", self.m, self.n, self.order)
    }
}

/// One indeterminate: entry `(row, col)` of matrix number `slice`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId {
    pub slice: usize,
    pub row: usize,
    pub col: usize,
}

impl VarId {
    pub fn new(slice: usize, row: usize, col: usize) -> Self {
        VarId { slice, row, col }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{}][{}][{}]", self.slice, self.row, self.col)
    }
}

/// Degrevlex comparison of two monomials of `ring`.
pub fn compare_monomials(ring: &Ring, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    let nv = ring.num_vars();
    if a.num_vars() != nv || b.num_vars() != nv {
        return Err(Error::InvalidParameter(format!(
            "monomial over {} / {} variables in a ring with {nv}",
            a.num_vars(),
            b.num_vars()
        )));
    }
    Ok(a.cmp(b))
}

/// A polynomial in canonical form: terms strictly descending, no zero
/// coefficients. The zero polynomial has no terms and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.num_vars()), c)
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.num_vars(), ring.num_vars());
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Poly { ring, terms: vec![(m, c)] }
        }
    }

    pub fn var(ring: Ring, v: VarId) -> Result<Self> {
        let idx = ring.index_of(v)?;
        Ok(Self::monomial(ring, Monomial::var(ring.num_vars(), idx), Rational::ONE))
    }

    /// Shorthand for `var(ring, VarId::new(k, i, j))` that panics when out of range.
    pub fn x(ring: Ring, k: usize, i: usize, j: usize) -> Self {
        Self::var(ring, VarId::new(k, i, j)).expect("variable out of range")
    }

    /// Canonicalizes arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc += &c;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((m, c)),
            }
        }
        Poly { ring, terms: out }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted(ring: Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Indices of the variables occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.num_vars()];
        for (m, _) in &self.terms {
            for (i, _) in m.iter() {
                seen[i] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * t * self`; stays sorted because the order is multiplicative.
    pub fn mul_term(&self, t: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m * t, a * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        Ok(self.add_scaled_term(other, &Monomial::one(self.ring.num_vars()), &Rational::ONE))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        Ok(self.sub_scaled_term(other, &Monomial::one(self.ring.num_vars()), &Rational::ONE))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self - c * t * g` in one merge pass.
    pub(crate) fn sub_scaled_term(&self, g: &Poly, t: &Monomial, c: &Rational) -> Poly {
        self.add_scaled_term(g, t, &-c)
    }

    /// `self + c * t * g` in one merge pass.
    pub(crate) fn add_scaled_term(&self, g: &Poly, t: &Monomial, c: &Rational) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().peekable();
        let unit = t.is_one();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => {
                    if unit {
                        ma.cmp(mb)
                    } else {
                        ma.cmp_with_product(mb, t)
                    }
                }
            };
            match ord {
                Ordering::Greater => {
                    let (m, x) = a.next().unwrap();
                    out.push((m.clone(), x.clone()));
                }
                Ordering::Less => {
                    let (m, y) = b.next().unwrap();
                    let m = if unit { m.clone() } else { m * t };
                    out.push((m, y * c));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + &(y * c);
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                }
            }
        }
        Poly { ring: self.ring, terms: out }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma * mb, ca * cb));
            }
        }
        Poly::from_terms(self.ring, prods)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.ring, Rational::ONE);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Exact value at a tensor point; `x[k][i][j]` takes the `(i, j)` entry of
    /// slice `k`.
    pub fn evaluate(&self, point: &Tensor) -> Result<Rational> {
        let values = point_values(&self.ring, point)?;
        Ok(self.evaluate_at(&values))
    }

    /// Evaluation against precomputed variable values in ring index order.
    pub fn evaluate_at(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter() {
                let v = &values[i];
                if v.is_zero() {
                    t = Rational::ZERO;
                    break;
                }
                for _ in 0..e {
                    t *= v;
                }
            }
            if !t.is_zero() {
                acc += &t;
            }
        }
        acc
    }

    /// Canonical text form, see [`Poly::parse`].
    pub fn to_canonical_string(&self) -> String {
        text::write_poly(self)
    }

    /// Parses the canonical text form: terms `c*x[k][i][j]^e*...` joined by
    /// ` + `, coefficients `num/den` (plain integers accepted), `0` for zero.
    pub fn parse(ring: Ring, s: &str) -> Result<Poly> {
        text::parse_poly(ring, s)
    }
}

/// Values of all ring variables at a tensor, in ring index order.
pub fn point_values(ring: &Ring, point: &Tensor) -> Result<Vec<Rational>> {
    if point.m() != ring.m() || point.n() != ring.n() {
        return Err(Error::DimensionMismatch { m: ring.m(), n: ring.n(), tm: point.m(), tn: point.n() });
    }
    Ok((0..ring.num_vars())
        .map(|idx| {
            let v = ring.var_at(idx);
            point.slice(v.slice - 1).get(v.row - 1, v.col - 1).clone()
        })
        .collect())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_canonical_string())
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods when the
// rings are not known to agree.
impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::RatMatrix;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn mono(ring: Ring, vars: &[(usize, usize, usize)]) -> Monomial {
        let mut m = Monomial::one(ring.num_vars());
        for &(k, i, j) in vars {
            m = &m * &Monomial::var(ring.num_vars(), ring.index_of(VarId::new(k, i, j)).unwrap());
        }
        m
    }

    #[test]
    fn variable_ranking() {
        let ring = Ring::new(2, 2);
        assert_eq!(ring.index_of(VarId::new(1, 1, 2)).unwrap(), 1);
        assert_eq!(ring.index_of(VarId::new(1, 2, 1)).unwrap(), 2);
        assert_eq!(ring.index_of(VarId::new(2, 1, 1)).unwrap(), 4);
        let cm = Ring::with_order(2, 2, VarOrder::ColumnMajor);
        assert_eq!(cm.index_of(VarId::new(1, 2, 1)).unwrap(), 1);
        for idx in 0..ring.num_vars() {
            assert_eq!(ring.index_of(ring.var_at(idx)).unwrap(), idx);
            assert_eq!(cm.index_of(cm.var_at(idx)).unwrap(), idx);
        }
        assert!(ring.index_of(VarId::new(3, 1, 1)).is_err());
        assert!(ring.index_of(VarId::new(1, 0, 1)).is_err());
    }

    #[test]
    fn degrevlex_examples() {
        let ring = Ring::new(1, 2);
        let a = mono(ring, &[(1, 1, 2), (1, 2, 1)]);
        let b = mono(ring, &[(1, 1, 1), (1, 2, 2)]);
        assert_eq!(compare_monomials(&ring, &a, &b).unwrap(), Ordering::Greater);
        let sq = mono(ring, &[(1, 1, 1), (1, 1, 1)]);
        let mixed = mono(ring, &[(1, 1, 1), (1, 1, 2)]);
        assert_eq!(compare_monomials(&ring, &sq, &mixed).unwrap(), Ordering::Greater);
        let lin = mono(ring, &[(1, 1, 1)]);
        let cube = mono(ring, &[(1, 2, 2), (1, 2, 2), (1, 2, 2)]);
        assert_eq!(compare_monomials(&ring, &lin, &cube).unwrap(), Ordering::Less);
        let other = Ring::new(2, 2);
        assert!(compare_monomials(&other, &lin, &cube).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let ring = Ring::new(1, 2);
        let x11 = Poly::x(ring, 1, 1, 1);
        let x22 = Poly::x(ring, 1, 2, 2);
        assert!((&x11 - &x11).is_zero());
        assert!((&x11 + &(-&x11)).is_zero());
        let prod = (&x11 + &x22) * (&x11 - &x22);
        assert_eq!(prod, &x11.pow(2) - &x22.pow(2));
        let det = &x11 * &x22 - &Poly::x(ring, 1, 1, 2) * &Poly::x(ring, 1, 2, 1);
        assert_eq!(det.scale(&r(3)).leading_monomial(), det.leading_monomial());
        assert_eq!(Poly::zero(ring).degree(), None);
        assert_eq!(Poly::constant(ring, r(4)).degree(), Some(0));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Poly::x(Ring::new(1, 2), 1, 1, 1);
        let b = Poly::x(Ring::new(2, 2), 1, 1, 1);
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
        let cm = Poly::x(Ring::with_order(1, 2, VarOrder::ColumnMajor), 1, 1, 1);
        assert!(a.checked_sub(&cm).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let ring = Ring::new(2, 2);
        let det1 = &Poly::x(ring, 1, 1, 1) * &Poly::x(ring, 1, 2, 2)
            - &Poly::x(ring, 1, 1, 2) * &Poly::x(ring, 1, 2, 1);
        let id = Tensor::new(vec![RatMatrix::identity(2), RatMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(det1.evaluate(&id).unwrap(), r(1));
        let rank1 = RatMatrix::from_i64(2, 2, &[2, 6, 1, 3]);
        let t = Tensor::new(vec![rank1, RatMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(det1.evaluate(&t).unwrap(), r(0));
        let f = &Poly::x(ring, 1, 1, 1) * &Poly::x(ring, 2, 2, 2);
        let t = Tensor::new(vec![
            RatMatrix::from_i64(2, 2, &[2, 0, 0, 0]),
            RatMatrix::from_i64(2, 2, &[0, 0, 0, 5]),
        ])
        .unwrap();
        assert_eq!(f.evaluate(&t).unwrap(), r(10));
        let wrong = Tensor::new(vec![RatMatrix::identity(2)]).unwrap();
        assert!(matches!(f.evaluate(&wrong), Err(Error::DimensionMismatch { .. })));
    }
}
