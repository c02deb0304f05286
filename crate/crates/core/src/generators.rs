//! The polynomial families that vanish on singular matrix tuples.
//!
//! * pencil polarizations: the coefficients of `det(λ1 X1 + ... + λm Xm)` as
//!   a polynomial in `λ`, which span the degree-`n` part of the ideal;
//! * block cubics (`n = 2`): 3x3 minors of `[[Xi, Xj], [Xk, 0]]`;
//! * quartic products (`n = 2`): products of 2x2 minors of column pairs of
//!   the slice flattening;
//! * flattening minors: `(n²−n+1)`-minors of the slice flattening;
//! * product equations: products of one `(n²−2n+3)`-minor of the slice
//!   flattening with one maximal minor of each side flattening.
//!
//! Every element keeps an [`Origin`] describing how it was built. Matrix
//! numbers, rows and columns in origins are 1-based.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Minor, Poly, PolyMatrix, Ring, VarId};
use crate::rational::Rational;
use crate::rng::stream_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Degree-`n` polarizations of the determinant pencil (quadrics for `n = 2`).
    Pencil,
    BlockCubic,
    QuarticProduct,
    FlatteningMinor,
    ProductEquation,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Pencil => "pencil",
            Family::BlockCubic => "block-cubic",
            Family::QuarticProduct => "quartic-product",
            Family::FlatteningMinor => "flattening-minor",
            Family::ProductEquation => "product-equation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    /// Coefficient of `λ^a`; `slices` lists the matrices with multiplicity.
    Pencil { slices: Vec<usize> },
    BlockMinor { triple: [usize; 3], rows: Vec<usize>, cols: Vec<usize> },
    /// `G_{ab} · G_{cd}`; `left_rows`/`right_rows` are the row pairs of the two
    /// 2x2 minors.
    QuarticProduct { left_cols: [usize; 2], left_rows: [usize; 2], right_cols: [usize; 2], right_rows: [usize; 2] },
    FlatteningMinor { rows: Vec<usize>, cols: Vec<usize> },
    ProductEquation { slice_minor: usize, row_side_minor: usize, col_side_minor: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub poly: Poly,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub family: Family,
    pub ring: Ring,
    pub elements: Vec<Generator>,
}

impl GeneratorSet {
    pub fn polys(&self) -> Vec<Poly> {
        self.elements.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn dedup(elements: Vec<Generator>) -> Vec<Generator> {
    let mut seen = HashSet::new();
    elements
        .into_iter()
        .filter(|g| !g.poly.is_zero() && seen.insert(g.poly.clone()))
        .collect()
}

fn require_n2(ring: Ring, what: &str) -> Result<()> {
    if ring.n() != 2 {
        return Err(Error::InvalidParameter(format!("{what} is defined for 2x2 matrices only (n={})", ring.n())));
    }
    Ok(())
}

fn to_one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// Nondecreasing `len`-tuples over `1..=m` in lexicographic order.
fn multisets(m: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in start..=m {
            cur.push(k);
            go(k, m, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, len, &mut Vec::new(), &mut out);
    out
}

/// Distinct orderings of a sorted tuple.
fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// The coefficients of every `λ`-monomial of degree `n` in
/// `det(λ1 X1 + ... + λm Xm)`. The coefficient of `λ^a` is the sum of
/// `det(M_c)` over the assignments `c` of matrices to rows with content `a`,
/// where row `r` of `M_c` is row `r` of `X_{c(r)}`.
pub fn det_pencil_generators(ring: Ring) -> Result<GeneratorSet> {
    let n = ring.n();
    if n < 2 {
        return Err(Error::InvalidParameter("pencil generators need n >= 2".into()));
    }
    let mut elements = Vec::new();
    for slices in multisets(ring.m(), n) {
        let mut acc = Poly::zero(ring);
        for assignment in distinct_permutations(&slices) {
            let mat = PolyMatrix::from_fn(ring, n, n, |r, c| Poly::x(ring, assignment[r], r + 1, c + 1));
            acc = &acc + &mat.determinant()?;
        }
        elements.push(Generator { poly: acc, origin: Origin::Pencil { slices } });
    }
    Ok(GeneratorSet { family: Family::Pencil, ring, elements })
}

fn block_matrix(ring: Ring, i: usize, j: usize, k: usize) -> PolyMatrix {
    PolyMatrix::from_fn(ring, 4, 4, |r, c| {
        let (slice, rr, cc) = match (r < 2, c < 2) {
            (true, true) => (i, r, c),
            (true, false) => (j, r, c - 2),
            (false, true) => (k, r - 2, c),
            (false, false) => return Poly::zero(ring),
        };
        Poly::x(ring, slice, rr + 1, cc + 1)
    })
}

/// All 3x3 minors of `[[Xi, Xj], [Xk, 0]]` over ordered triples of pairwise
/// distinct matrices, zeros and duplicates removed. Empty for `m < 3`.
pub fn block_cubics(ring: Ring) -> Result<GeneratorSet> {
    require_n2(ring, "block cubics")?;
    let m = ring.m();
    let mut elements = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=m {
                if i == j || j == k || i == k {
                    continue;
                }
                for minor in block_matrix(ring, i, j, k).all_minors(3)? {
                    elements.push(Generator {
                        poly: minor.poly,
                        origin: Origin::BlockMinor {
                            triple: [i, j, k],
                            rows: to_one_based(&minor.rows),
                            cols: to_one_based(&minor.cols),
                        },
                    });
                }
            }
        }
    }
    Ok(GeneratorSet { family: Family::BlockCubic, ring, elements: dedup(elements) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatteningMode {
    /// `C^m → C^n ⊗ C^n`: row `k` lists `X(k)` row by row (`m x n²`).
    Slice,
    /// `C^n → C^m ⊗ C^n`: row `i` concatenates row `i` of `X(1), ..., X(m)`.
    RowSide,
    /// `C^n → C^m ⊗ C^n`: row `j` concatenates column `j` of `X(1), ..., X(m)`.
    ColSide,
}

pub fn flattening(ring: Ring, mode: FlatteningMode) -> PolyMatrix {
    let (m, n) = (ring.m(), ring.n());
    let x = |v: VarId| Poly::var(ring, v).expect("in range");
    match mode {
        FlatteningMode::Slice => {
            PolyMatrix::from_fn(ring, m, n * n, |k, p| x(VarId::new(k + 1, p / n + 1, p % n + 1)))
        }
        FlatteningMode::RowSide => {
            PolyMatrix::from_fn(ring, n, m * n, |i, p| x(VarId::new(p / n + 1, i + 1, p % n + 1)))
        }
        FlatteningMode::ColSide => {
            PolyMatrix::from_fn(ring, n, m * n, |j, p| x(VarId::new(p / n + 1, p % n + 1, j + 1)))
        }
    }
}

/// 2x2 minors of the `m x 2` submatrix of the slice flattening on columns
/// `a`, `b` (1-based, columns ordered `x11, x12, x21, x22`).
fn column_pair_minors(ring: Ring, a: usize, b: usize) -> Result<Vec<Minor>> {
    let t = flattening(ring, FlatteningMode::Slice);
    let rows: Vec<usize> = (0..ring.m()).collect();
    t.submatrix(&rows, &[a - 1, b - 1]).all_minors(2)
}

/// `G12·G24 ∪ G13·G34`, duplicates removed. Needs `m >= 2`.
pub fn quartic_products(ring: Ring) -> Result<GeneratorSet> {
    require_n2(ring, "quartic products")?;
    if ring.m() < 2 {
        return Err(Error::InvalidParameter("quartic products need m >= 2".into()));
    }
    let mut elements = Vec::new();
    for (left, right) in [([1, 2], [2, 4]), ([1, 3], [3, 4])] {
        let gl = column_pair_minors(ring, left[0], left[1])?;
        let gr = column_pair_minors(ring, right[0], right[1])?;
        for g in &gl {
            for h in &gr {
                elements.push(Generator {
                    poly: &g.poly * &h.poly,
                    origin: Origin::QuarticProduct {
                        left_cols: left,
                        left_rows: [g.rows[0] + 1, g.rows[1] + 1],
                        right_cols: right,
                        right_rows: [h.rows[0] + 1, h.rows[1] + 1],
                    },
                });
            }
        }
    }
    Ok(GeneratorSet { family: Family::QuarticProduct, ring, elements: dedup(elements) })
}

/// Pencil quadrics, block cubics and quartic products with their origins,
/// made monic and deduplicated, in family order.
pub fn candidate_generators(ring: Ring) -> Result<Vec<Generator>> {
    require_n2(ring, "the candidate basis")?;
    let mut all = det_pencil_generators(ring)?.elements;
    all.extend(block_cubics(ring)?.elements);
    if ring.m() >= 2 {
        all.extend(quartic_products(ring)?.elements);
    }
    let monic = all
        .into_iter()
        .map(|g| Generator { poly: g.poly.monic(), origin: g.origin })
        .collect();
    Ok(dedup(monic))
}

/// The candidate Gröbner basis of the ideal of singular 2x2 tuples.
pub fn candidate_basis(ring: Ring) -> Result<Vec<Poly>> {
    Ok(candidate_generators(ring)?.into_iter().map(|g| g.poly).collect())
}

/// Size of the flattening minors: `n² − n + 1`.
pub fn flattening_minor_size(n: usize) -> usize {
    n * n - n + 1
}

/// All `(n²−n+1)`-minors of the slice flattening; empty when `m < n²−n+1`.
pub fn fano_minors(ring: Ring) -> Result<GeneratorSet> {
    let t = flattening_minor_size(ring.n());
    let elements = if ring.m() < t {
        Vec::new()
    } else {
        flattening(ring, FlatteningMode::Slice)
            .minors_of(t)?
            .into_iter()
            .map(|mi| Generator {
                origin: Origin::FlatteningMinor { rows: to_one_based(&mi.rows), cols: to_one_based(&mi.cols) },
                poly: mi.poly,
            })
            .collect()
    };
    Ok(GeneratorSet { family: Family::FlatteningMinor, ring, elements })
}

/// The three minor families whose triple products vanish on singular tuples.
/// The full product set is far too large to materialize, so products are
/// enumerated lazily or sampled.
#[derive(Clone, Debug)]
pub struct ProductEquations {
    ring: Ring,
    slice_minors: Vec<Minor>,
    row_side_minors: Vec<Minor>,
    col_side_minors: Vec<Minor>,
    warning: Option<String>,
}

/// One product `g · h · k`, kept factored.
#[derive(Clone, Copy, Debug)]
pub struct ProductEquation<'a> {
    pub indices: (usize, usize, usize),
    pub factors: [&'a Poly; 3],
}

impl ProductEquation<'_> {
    pub fn expand(&self) -> Poly {
        &(self.factors[0] * self.factors[1]) * self.factors[2]
    }

    /// Sum of the factor degrees, which is the degree of the product.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.degree().expect("nonzero minors")).sum()
    }

    /// Product of the factor values at precomputed variable values.
    pub fn evaluate_at(&self, values: &[Rational]) -> Rational {
        self.factors.iter().map(|f| f.evaluate_at(values)).product()
    }

    pub fn origin(&self) -> Origin {
        Origin::ProductEquation {
            slice_minor: self.indices.0,
            row_side_minor: self.indices.1,
            col_side_minor: self.indices.2,
        }
    }
}

impl ProductEquations {
    /// Minor size for the slice flattening: `n² − 2n + 3`.
    pub fn slice_minor_size(n: usize) -> usize {
        n * n - 2 * n + 3
    }

    pub fn new(ring: Ring) -> Result<Self> {
        let n = ring.n();
        if n < 2 {
            return Err(Error::InvalidParameter("product equations need n >= 2".into()));
        }
        let t = Self::slice_minor_size(n);
        if ring.m() < t {
            return Ok(ProductEquations {
                ring,
                slice_minors: Vec::new(),
                row_side_minors: Vec::new(),
                col_side_minors: Vec::new(),
                warning: Some(format!("m={} is below n²−2n+3={t}; no product equations", ring.m())),
            });
        }
        Ok(ProductEquations {
            ring,
            slice_minors: flattening(ring, FlatteningMode::Slice).minors_of(t)?,
            row_side_minors: flattening(ring, FlatteningMode::RowSide).minors_of(n)?,
            col_side_minors: flattening(ring, FlatteningMode::ColSide).minors_of(n)?,
            warning: None,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub fn slice_minors(&self) -> &[Minor] {
        &self.slice_minors
    }

    pub fn row_side_minors(&self) -> &[Minor] {
        &self.row_side_minors
    }

    pub fn col_side_minors(&self) -> &[Minor] {
        &self.col_side_minors
    }

    /// Number of products (not deduplicated).
    pub fn count(&self) -> u128 {
        self.slice_minors.len() as u128 * self.row_side_minors.len() as u128 * self.col_side_minors.len() as u128
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> ProductEquation<'_> {
        ProductEquation {
            indices: (i, j, k),
            factors: [&self.slice_minors[i].poly, &self.row_side_minors[j].poly, &self.col_side_minors[k].poly],
        }
    }

    /// All products in index order (slice minor slowest).
    pub fn iter(&self) -> impl Iterator<Item = ProductEquation<'_>> + '_ {
        let (a, b, c) = (self.slice_minors.len(), self.row_side_minors.len(), self.col_side_minors.len());
        (0..a).flat_map(move |i| (0..b).flat_map(move |j| (0..c).map(move |k| self.get(i, j, k))))
    }

    /// `count` index triples drawn uniformly with replacement.
    pub fn sample(&self, seed: u64, count: usize) -> impl Iterator<Item = ProductEquation<'_>> + '_ {
        let mut rng = stream_rng(seed, 0x5052_4f44);
        let (a, b, c) = (self.slice_minors.len(), self.row_side_minors.len(), self.col_side_minors.len());
        let count = if a * b * c == 0 { 0 } else { count };
        (0..count).map(move |_| {
            let (i, j, k) = (rng.gen_range(0..a), rng.gen_range(0..b), rng.gen_range(0..c));
            self.get(i, j, k)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::leading_ideal_squarefree;

    fn r2(m: usize) -> Ring {
        Ring::new(m, 2)
    }

    #[test]
    fn multisets_and_permutations() {
        assert_eq!(multisets(2, 2), vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(multisets(7, 3).len(), 84);
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_permutations(&[4]).len(), 1);
    }

    #[test]
    fn pencil_generators_small_cases() {
        let ring = r2(1);
        let set = det_pencil_generators(ring).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(
            set.elements[0].poly,
            &(&Poly::x(ring, 1, 1, 1) * &Poly::x(ring, 1, 2, 2)) - &(&Poly::x(ring, 1, 1, 2) * &Poly::x(ring, 1, 2, 1))
        );
        let ring = r2(2);
        let set = det_pencil_generators(ring).unwrap();
        assert_eq!(set.len(), 3);
        let x = |k, i, j| Poly::x(ring, k, i, j);
        let mixed = &(&(&x(1, 1, 1) * &x(2, 2, 2)) + &(&x(2, 1, 1) * &x(1, 2, 2)))
            - &(&(&x(1, 1, 2) * &x(2, 2, 1)) + &(&x(2, 1, 2) * &x(1, 2, 1)));
        assert_eq!(set.elements[1].poly, mixed);
        assert_eq!(set.elements[1].origin, Origin::Pencil { slices: vec![1, 2] });
        assert_eq!(det_pencil_generators(Ring::new(7, 3)).unwrap().len(), 84);
    }

    #[test]
    fn block_cubics_shape() {
        assert!(block_cubics(r2(2)).unwrap().is_empty());
        let cubics = block_cubics(r2(3)).unwrap();
        assert!(!cubics.is_empty());
        for g in &cubics.elements {
            assert_eq!(g.poly.degree(), Some(3));
            assert!(g.poly.is_homogeneous());
            assert!(g.poly.terms().iter().all(|(m, _)| m.is_squarefree()));
        }
        assert!(block_cubics(Ring::new(3, 3)).is_err());
    }

    #[test]
    fn flattening_layouts() {
        let ring = r2(3);
        let t = flattening(ring, FlatteningMode::Slice);
        assert_eq!((t.rows(), t.cols()), (3, 4));
        assert_eq!(t.get(1, 2), &Poly::x(ring, 2, 2, 1));
        let mut seen = HashSet::new();
        for r in 0..3 {
            for c in 0..4 {
                assert!(seen.insert(t.get(r, c).clone()));
            }
        }
        let rs = flattening(ring, FlatteningMode::RowSide);
        assert_eq!((rs.rows(), rs.cols()), (2, 6));
        assert_eq!(rs.get(1, 3), &Poly::x(ring, 2, 2, 2));
        assert_eq!(rs.get(0, 3), &Poly::x(ring, 2, 1, 2));
        let cs = flattening(ring, FlatteningMode::ColSide);
        assert_eq!(cs.get(0, 3), &Poly::x(ring, 2, 2, 1));
        let ring = Ring::new(2, 3);
        let t = flattening(ring, FlatteningMode::Slice);
        for k in 1..=2 {
            for i in 1..=3 {
                for j in 1..=3 {
                    assert_eq!(t.get(k - 1, (i - 1) * 3 + (j - 1)), &Poly::x(ring, k, i, j));
                }
            }
        }
    }

    #[test]
    fn quartic_product_counts() {
        let q2 = quartic_products(r2(2)).unwrap();
        assert_eq!(q2.len(), 2);
        let q3 = quartic_products(r2(3)).unwrap();
        assert!(q3.len() <= 18);
        for g in &q3.elements {
            assert_eq!(g.poly.degree(), Some(4));
        }
        // two products have a squared variable in their leading monomial
        // (cross-checked with an independent sympy computation)
        let literal = q3.elements.iter().filter(|g| !g.poly.leading_monomial().unwrap().is_squarefree()).count();
        assert_eq!(literal, 2);
        assert!(!leading_ideal_squarefree(&q3.polys()));
    }

    #[test]
    fn candidate_basis_small_cases() {
        let b1 = candidate_basis(r2(1)).unwrap();
        assert_eq!(b1.len(), 1);
        let b2 = candidate_basis(r2(2)).unwrap();
        assert_eq!(b2.len(), 5);
        assert!(b2.iter().all(|p| p.leading_coeff().unwrap().is_one()));
        let again = candidate_basis(r2(2)).unwrap();
        assert_eq!(b2, again);
    }

    #[test]
    fn fano_minor_counts() {
        assert_eq!(fano_minors(r2(3)).unwrap().len(), 4);
        assert!(fano_minors(r2(2)).unwrap().is_empty());
        assert!(fano_minors(Ring::new(6, 3)).unwrap().is_empty());
    }

    #[test]
    fn product_equation_sizes() {
        let pe = ProductEquations::new(r2(3)).unwrap();
        assert_eq!(pe.slice_minors().len(), 4);
        assert_eq!(pe.row_side_minors().len(), 15);
        assert_eq!(pe.col_side_minors().len(), 15);
        let first = pe.iter().next().unwrap();
        assert_eq!(first.degree(), 7);
        assert_eq!(first.expand().degree(), Some(7));
        assert_eq!(pe.iter().count() as u128, pe.count());
        let low = ProductEquations::new(r2(2)).unwrap();
        assert!(low.warning().is_some());
        assert_eq!(low.iter().count(), 0);
        assert_eq!(low.sample(1, 10).count(), 0);
        let a: Vec<_> = pe.sample(9, 5).map(|p| p.indices).collect();
        let b: Vec<_> = pe.sample(9, 5).map(|p| p.indices).collect();
        assert_eq!(a, b);
    }
}
