//! Sparse row echelon over Q, with polynomials as vectors indexed by
//! monomials. Used for degree-wise span and membership questions where a
//! Gröbner basis would be overkill (or would be the thing under test).

use std::collections::HashMap;

use crate::poly::{Monomial, Poly, Ring};

/// Rows with pairwise distinct leading monomials, each monic.
///
/// Only leading terms are eliminated, so rows are not fully reduced against
/// each other; that is enough for rank and membership.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: Ring,
    pivots: HashMap<Monomial, Poly>,
}

impl Echelon {
    pub fn new(ring: Ring) -> Self {
        Echelon { ring, pivots: HashMap::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading terms until the leading monomial is not a pivot.
    /// The result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &Poly) -> Poly {
        let one = Monomial::one(self.ring.num_vars());
        let mut v = v.clone();
        while let Some((lm, lc)) = v.leading_term() {
            match self.pivots.get(lm) {
                Some(row) => {
                    let c = lc.clone();
                    v = v.sub_scaled_term(row, &one, &c);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Poly) -> bool {
        assert_eq!(v.ring(), self.ring, "ring mismatch");
        let r = self.reduce(v);
        match r.leading_monomial() {
            None => false,
            Some(lm) => {
                let lm = lm.clone();
                self.pivots.insert(lm, r.monic());
                true
            }
        }
    }

    pub fn contains(&self, v: &Poly) -> bool {
        self.reduce(v).is_zero()
    }
}

/// All monomials of total degree `d` in `num_vars` variables, in no
/// particular order.
pub fn monomials_of_degree(num_vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; num_vars], &mut out);
    out
}

/// Rank of a list of polynomials viewed as coefficient vectors.
pub fn rank(ring: Ring, polys: &[Poly]) -> usize {
    let mut e = Echelon::new(ring);
    for p in polys {
        e.insert(p);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use proptest::prelude::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn monomial_counts() {
        for nv in 1..6 {
            for d in 0..5 {
                let ms = monomials_of_degree(nv, d);
                assert_eq!(ms.len() as u64, binom(nv as u64 + d as u64 - 1, d as u64));
                assert!(ms.iter().all(|m| m.degree() == d));
            }
        }
        assert_eq!(monomials_of_degree(16, 4).len(), 3876);
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let ring = Ring::new(1, 2);
        let a = Poly::x(ring, 1, 1, 1);
        let b = Poly::x(ring, 1, 2, 2);
        let c = &(&a * &Poly::constant(ring, Rational::new(3, 2))) - &b;
        let mut e = Echelon::new(ring);
        assert!(e.insert(&a));
        assert!(e.insert(&c));
        assert!(!e.insert(&b));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&(&a + &b)));
        assert!(!e.contains(&Poly::x(ring, 1, 1, 2)));
    }

    proptest! {
        // rank of random combinations of k independent monomials is at most k
        #[test]
        fn span_of_combinations(coeffs in proptest::collection::vec((-5i64..5, -5i64..5, -5i64..5), 1..6)) {
            let ring = Ring::new(1, 2);
            let basis = [Poly::x(ring, 1, 1, 1), Poly::x(ring, 1, 1, 2), Poly::x(ring, 1, 2, 1)];
            let rows: Vec<Poly> = coeffs.iter().map(|&(a, b, c)| {
                let mut p = basis[0].scale(&Rational::from_integer(a));
                p = &p + &basis[1].scale(&Rational::from_integer(b));
                &p + &basis[2].scale(&Rational::from_integer(c))
            }).collect();
            let r = rank(ring, &rows);
            prop_assert!(r <= 3.min(rows.len()));
            let mut e = Echelon::new(ring);
            for row in &rows { e.insert(row); }
            for row in &rows { prop_assert!(e.contains(row)); }
        }
    }
}
