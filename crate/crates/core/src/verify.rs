//! Oracles for the vanishing ideal of singular matrix tuples: exact sample
//! points, point-vanishing, the group action, degree-wise membership by
//! linear algebra, and randomized determinant identity testing.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{monomials_of_degree, Echelon};
use crate::poly::{Poly, PointValues, Ring};
use crate::rational::Rational;
use crate::rng::{random_invertible, small_rational, stream_rng};
use crate::tensor::{RatMatrix, Tensor};

const SAMPLE_STREAM: u64 = 0x5341_4d50;
const DIT_STREAM: u64 = 0x4449_5400;

/// Parameters of one sample from a compression space: every slice maps a
/// fixed `(s+1)`-dimensional subspace into a fixed `s`-dimensional one.
#[derive(Clone, Debug, Serialize)]
pub struct CompressionSpec {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub seed: u64,
    /// `(P, Q)` with slices sent to `P A Q`. Drawn from the seed when absent.
    pub basis_change: Option<(RatMatrix, RatMatrix)>,
}

impl CompressionSpec {
    pub fn new(n: usize, m: usize, s: usize, seed: u64) -> Self {
        CompressionSpec { n, m, s, seed, basis_change: None }
    }

    /// Keeps the adapted coordinates (no basis change).
    pub fn adapted(n: usize, m: usize, s: usize, seed: u64) -> Self {
        let id = RatMatrix::identity(n);
        CompressionSpec { n, m, s, seed, basis_change: Some((id.clone(), id)) }
    }
}

/// Draws a point of `Sing_{n,m}`. In adapted coordinates rows `s..n` of
/// columns `0..=s` are zero (0-based), so `e_0, ..., e_s` map into the span
/// of `e_0, ..., e_{s-1}`.
pub fn sample_sing(spec: &CompressionSpec) -> Result<Tensor> {
    let CompressionSpec { n, m, s, seed, .. } = *spec;
    if n == 0 || s >= n {
        return Err(Error::InvalidCompression { s, n });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mut rng = stream_rng(seed, SAMPLE_STREAM);
    let (p, q) = match &spec.basis_change {
        Some((p, q)) => {
            if p.rows() != n || p.cols() != n || q.rows() != n || q.cols() != n {
                return Err(Error::InvalidParameter(format!("basis change must be {n}x{n}")));
            }
            if !p.is_invertible() || !q.is_invertible() {
                return Err(Error::Singular);
            }
            (p.clone(), q.clone())
        }
        None => (random_invertible(&mut rng, n), random_invertible(&mut rng, n)),
    };
    let slices = (0..m)
        .map(|_| {
            let a = RatMatrix::from_fn(n, n, |r, c| {
                if r >= s && c <= s {
                    Rational::ZERO
                } else {
                    small_rational(&mut rng)
                }
            });
            p.mul(&a).mul(&q)
        })
        .collect();
    Tensor::new(slices)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishFailure {
    pub index: usize,
    pub poly: String,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishReport {
    pub vanishes: bool,
    pub checked: usize,
    pub first_failure: Option<VanishFailure>,
}

/// Evaluates every polynomial at `point`; reports the first (lowest index)
/// one that does not vanish.
pub fn vanish_check(polys: &[Poly], point: &Tensor) -> Result<VanishReport> {
    let Some(first) = polys.first() else {
        return Ok(VanishReport { vanishes: true, checked: 0, first_failure: None });
    };
    let ring = first.ring();
    if let Some(p) = polys.iter().find(|p| p.ring() != ring) {
        return Err(Error::RingMismatch { left: ring, right: p.ring() });
    }
    let values = PointValues::at(ring, point)?;
    let bad = polys.par_iter().position_first(|p| !values.vanishes(p));
    Ok(match bad {
        None => VanishReport { vanishes: true, checked: polys.len(), first_failure: None },
        Some(i) => VanishReport {
            vanishes: false,
            checked: polys.len(),
            first_failure: Some(VanishFailure {
                index: i,
                poly: polys[i].to_canonical_string(),
                value: values.evaluate(&polys[i]),
            }),
        },
    })
}

/// An element `(U, V, W)` of `GL_m × GL_n × GL_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    u: RatMatrix,
    v: RatMatrix,
    w: RatMatrix,
}

impl GroupElement {
    pub fn new(u: RatMatrix, v: RatMatrix, w: RatMatrix) -> Result<Self> {
        for mat in [&u, &v, &w] {
            if mat.rows() != mat.cols() {
                return Err(Error::NotSquare { rows: mat.rows(), cols: mat.cols() });
            }
        }
        if v.rows() != w.rows() {
            return Err(Error::InvalidParameter("V and W must have the same size".into()));
        }
        if !u.is_invertible() || !v.is_invertible() || !w.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(GroupElement { u, v, w })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        GroupElement { u: RatMatrix::identity(m), v: RatMatrix::identity(n), w: RatMatrix::identity(n) }
    }

    pub fn random<R: Rng>(rng: &mut R, m: usize, n: usize) -> Self {
        GroupElement { u: random_invertible(rng, m), v: random_invertible(rng, n), w: random_invertible(rng, n) }
    }

    pub fn inverse(&self) -> Self {
        let inv = |a: &RatMatrix| a.inverse().expect("validated invertible");
        GroupElement { u: inv(&self.u), v: inv(&self.v), w: inv(&self.w) }
    }

    pub fn u(&self) -> &RatMatrix {
        &self.u
    }

    pub fn v(&self) -> &RatMatrix {
        &self.v
    }

    pub fn w(&self) -> &RatMatrix {
        &self.w
    }
}

/// `B_j = Σ_i U_ij · (V A_i W)`.
pub fn act(g: &GroupElement, t: &Tensor) -> Result<Tensor> {
    let (m, n) = (t.m(), t.n());
    if g.u.rows() != m || g.v.rows() != n {
        return Err(Error::DimensionMismatch { m: g.u.rows(), n: g.v.rows(), tm: m, tn: n });
    }
    let inner: Vec<RatMatrix> = t.slices().iter().map(|a| g.v.mul(a).mul(&g.w)).collect();
    let slices = (0..m)
        .map(|j| {
            inner
                .iter()
                .enumerate()
                .fold(RatMatrix::zeros(n, n), |acc, (i, c)| acc.add(&c.scale(g.u.get(i, j))))
        })
        .collect();
    Tensor::new(slices)
}

/// The degree-`d` component of the ideal generated by a list of homogeneous
/// polynomials, as an explicit span of `x^α · g`.
#[derive(Clone, Debug)]
pub struct DegreeSpan {
    degree: u32,
    rows: usize,
    echelon: Echelon,
}

impl DegreeSpan {
    pub fn new(ring: Ring, generators: &[Poly], degree: u32) -> Result<Self> {
        let mut echelon = Echelon::new(ring);
        let mut rows = 0;
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch { left: ring, right: g.ring() });
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            let Some(dg) = g.degree() else { continue };
            if dg > degree {
                continue;
            }
            for mono in monomials_of_degree(ring.num_vars(), degree - dg) {
                echelon.insert(&g.mul_term(&mono, &Rational::ONE));
                rows += 1;
            }
        }
        Ok(DegreeSpan { degree, rows, echelon })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of multiplied generators fed into the span.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        if f.ring() != self.echelon.ring() {
            return Err(Error::RingMismatch { left: self.echelon.ring(), right: f.ring() });
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        match f.degree() {
            None => Ok(true),
            Some(d) if d != self.degree => Err(Error::DegreeMismatch { expected: self.degree, got: d }),
            Some(_) => Ok(self.echelon.contains(f)),
        }
    }
}

/// Whether `f` lies in the span of all `x^α · g` (`g ∈ generators`) of degree
/// `degree`. Decided by exact linear algebra, without a Gröbner basis.
pub fn degreewise_membership(f: &Poly, generators: &[Poly], degree: u32) -> Result<bool> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if let Some(d) = f.degree() {
        if d != degree {
            return Err(Error::DegreeMismatch { expected: degree, got: d });
        }
    }
    DegreeSpan::new(f.ring(), generators, degree)?.contains(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DitVerdict {
    AllSingular { trials: usize },
    WitnessFound { lambda: Vec<i64>, det: Rational, trial: usize },
}

impl DitVerdict {
    pub fn is_singular(&self) -> bool {
        matches!(self, DitVerdict::AllSingular { .. })
    }
}

/// Evaluates `det(Σ λ_i A_i)` at `trials` integer points with entries in
/// `[-bound, bound]`; stops at the first nonzero determinant.
pub fn dit_random(t: &Tensor, trials: usize, seed: u64, bound: i64) -> Result<DitVerdict> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if bound < 1 {
        return Err(Error::InvalidParameter("coefficient bound must be at least 1".into()));
    }
    let mut rng = stream_rng(seed, DIT_STREAM);
    for trial in 0..trials {
        let lambda: Vec<i64> = (0..t.m()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let coeffs: Vec<Rational> = lambda.iter().map(|&l| Rational::from_integer(l)).collect();
        let det = t.pencil(&coeffs).determinant();
        if !det.is_zero() {
            return Ok(DitVerdict::WitnessFound { lambda, det, trial });
        }
    }
    Ok(DitVerdict::AllSingular { trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{candidate_basis, det_pencil_generators, fano_minors};

    fn det1(ring: Ring) -> Poly {
        &(&Poly::x(ring, 1, 1, 1) * &Poly::x(ring, 1, 2, 2)) - &(&Poly::x(ring, 1, 1, 2) * &Poly::x(ring, 1, 2, 1))
    }

    #[test]
    fn samples_have_the_compression_shape() {
        let t = sample_sing(&CompressionSpec::adapted(3, 4, 1, 9)).unwrap();
        for a in t.slices() {
            for r in 1..3 {
                for c in 0..2 {
                    assert!(a.get(r, c).is_zero());
                }
            }
        }
        for s in 0..3 {
            let t = sample_sing(&CompressionSpec::new(3, 4, s, 5)).unwrap();
            assert!(dit_random(&t, 20, 1, 50).unwrap().is_singular());
        }
        assert_eq!(
            sample_sing(&CompressionSpec::new(2, 2, 2, 0)).unwrap_err(),
            Error::InvalidCompression { s: 2, n: 2 }
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_sing(&CompressionSpec::new(2, 3, 0, 42)).unwrap();
        let b = sample_sing(&CompressionSpec::new(2, 3, 0, 42)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_sing(&CompressionSpec::new(2, 3, 0, 43)).unwrap());
    }

    #[test]
    fn candidate_basis_vanishes_on_samples() {
        let ring = Ring::new(3, 2);
        let g = candidate_basis(ring).unwrap();
        for s in 0..2 {
            let t = sample_sing(&CompressionSpec::new(2, 3, s, 11)).unwrap();
            assert!(vanish_check(&g, &t).unwrap().vanishes);
        }
    }

    #[test]
    fn vanish_check_reports_witness_and_handles_empty() {
        let ring = Ring::new(1, 2);
        let id = Tensor::new(vec![RatMatrix::identity(2)]).unwrap();
        let r = vanish_check(&[det1(ring)], &id).unwrap();
        assert!(!r.vanishes);
        let f = r.first_failure.unwrap();
        assert_eq!(f.index, 0);
        assert_eq!(f.value, Rational::ONE);
        assert!(vanish_check(&[], &id).unwrap().vanishes);
        let wrong = Tensor::zeros(2, 2);
        assert!(matches!(vanish_check(&[det1(ring)], &wrong), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn action_identity_permutation_and_inverse() {
        let t = sample_sing(&CompressionSpec::new(2, 3, 1, 3)).unwrap();
        assert_eq!(act(&GroupElement::identity(3, 2), &t).unwrap(), t);

        let perm = RatMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
        let g = GroupElement::new(perm, RatMatrix::identity(2), RatMatrix::identity(2)).unwrap();
        let b = act(&g, &t).unwrap();
        // column j of U picks the source slice
        assert_eq!(b.slice(0), t.slice(2));
        assert_eq!(b.slice(1), t.slice(0));
        assert_eq!(b.slice(2), t.slice(1));

        let g = GroupElement::random(&mut stream_rng(1, 1), 3, 2);
        assert_eq!(act(&g.inverse(), &act(&g, &t).unwrap()).unwrap(), t);

        let singular = RatMatrix::zeros(2, 2);
        assert_eq!(
            GroupElement::new(RatMatrix::identity(3), singular, RatMatrix::identity(2)).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn action_preserves_vanishing() {
        let ring = Ring::new(3, 2);
        let g_basis = candidate_basis(ring).unwrap();
        let mut rng = stream_rng(8, 0);
        for seed in 0..5 {
            let t = sample_sing(&CompressionSpec::new(2, 3, (seed % 2) as usize, seed)).unwrap();
            let g = GroupElement::random(&mut rng, 3, 2);
            assert!(vanish_check(&g_basis, &act(&g, &t).unwrap()).unwrap().vanishes);
        }
    }

    #[test]
    fn membership_examples() {
        let ring = Ring::new(3, 2);
        let quads = det_pencil_generators(ring).unwrap().polys();
        let f = &Poly::x(ring, 1, 1, 1) * &det1(ring);
        assert!(degreewise_membership(&f, &quads, 3).unwrap());
        let g = &Poly::x(ring, 1, 1, 1) * &Poly::x(ring, 2, 1, 1);
        assert!(!degreewise_membership(&g, &quads, 2).unwrap());
        assert_eq!(degreewise_membership(&g, &quads, 3).unwrap_err(), Error::DegreeMismatch { expected: 3, got: 2 });
        let inhomog = &g + &Poly::x(ring, 1, 1, 1);
        assert_eq!(degreewise_membership(&inhomog, &quads, 2).unwrap_err(), Error::NotHomogeneous);
        assert!(degreewise_membership(&Poly::zero(ring), &quads, 2).unwrap());
    }

    #[test]
    fn degree_two_span_dimension() {
        for m in 1..=4 {
            let ring = Ring::new(m, 2);
            let quads = det_pencil_generators(ring).unwrap().polys();
            let span = DegreeSpan::new(ring, &quads, 2).unwrap();
            assert_eq!(span.dimension(), m * (m + 1) / 2);
        }
    }

    #[test]
    fn dit_examples() {
        assert!(dit_random(&Tensor::zeros(3, 2), 10, 0, 5).unwrap().is_singular());
        let mut slices = vec![RatMatrix::identity(2)];
        slices.extend(std::iter::repeat(RatMatrix::zeros(2, 2)).take(2));
        let t = Tensor::new(slices).unwrap();
        match dit_random(&t, 10, 0, 5).unwrap() {
            DitVerdict::WitnessFound { lambda, det, .. } => {
                assert_ne!(lambda[0], 0);
                assert_eq!(det, Rational::from_integer(lambda[0] * lambda[0]));
            }
            v => panic!("expected a witness, got {v:?}"),
        }
        assert!(dit_random(&t, 0, 0, 5).is_err());
    }

    #[test]
    fn fano_minors_vanish_on_samples() {
        let ring = Ring::new(7, 3);
        let minors = fano_minors(ring).unwrap().polys();
        assert_eq!(minors.len(), 36);
        let t = sample_sing(&CompressionSpec::new(3, 7, 1, 2)).unwrap();
        assert!(vanish_check(&minors, &t).unwrap().vanishes);
    }
}
