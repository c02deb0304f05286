use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{point_values, Poly, Ring};
use crate::error::Result;
use crate::rational::{denominator_lcm, Rational};
use crate::tensor::Tensor;

/// Variable values brought to a common denominator, for repeated exact
/// evaluation. Terms are accumulated as plain integers and only the final sum
/// is turned back into a rational, which avoids a gcd per multiplication.
#[derive(Clone, Debug)]
pub struct PointValues {
    ring: Ring,
    values: Vec<Rational>,
    nums: Vec<BigInt>,
    den: BigInt,
}

impl PointValues {
    pub fn new(ring: Ring, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), ring.num_vars(), "one value per variable");
        let den = denominator_lcm(&values);
        let nums = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        PointValues { ring, values, nums, den }
    }

    pub fn at(ring: Ring, point: &Tensor) -> Result<Self> {
        Ok(Self::new(ring, point_values(&ring, point)?))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `den^D · lcm(coeff denominators) · f(point)` as an integer, where `D`
    /// is the degree of `f`; zero iff `f` vanishes at the point.
    fn scaled(&self, f: &Poly) -> (BigInt, BigInt, u32) {
        let top = f.degree().unwrap_or(0);
        let cden = denominator_lcm(f.terms().iter().map(|(_, c)| c));
        let homogeneous = f.is_homogeneous();
        let mut den_pows = vec![BigInt::one()];
        if !homogeneous {
            for k in 1..=top as usize {
                let next = &den_pows[k - 1] * &self.den;
                den_pows.push(next);
            }
        }
        let mut sum = BigInt::zero();
        'terms: for (m, c) in f.terms() {
            let mut t = c.numer() * (&cden / c.denom());
            for (i, e) in m.iter() {
                let v = &self.nums[i];
                if v.is_zero() {
                    continue 'terms;
                }
                for _ in 0..e {
                    t *= v;
                }
            }
            if !homogeneous {
                t *= &den_pows[(top - m.degree()) as usize];
            }
            sum += t;
        }
        (sum, cden, top)
    }

    pub fn evaluate(&self, f: &Poly) -> Rational {
        assert_eq!(f.ring(), self.ring, "ring mismatch");
        if f.is_zero() {
            return Rational::ZERO;
        }
        let (sum, cden, top) = self.scaled(f);
        if sum.is_zero() {
            return Rational::ZERO;
        }
        let den = cden * self.den.pow(top);
        Rational::from_bigint_ratio(sum, den)
    }

    pub fn vanishes(&self, f: &Poly) -> bool {
        assert_eq!(f.ring(), self.ring, "ring mismatch");
        f.is_zero() || self.scaled(f).0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_direct_evaluation(
            coeffs in proptest::collection::vec((-9i64..9, 1i64..9), 4),
            vals in proptest::collection::vec((-9i64..9, 1i64..9), 4),
        ) {
            let ring = Ring::new(1, 2);
            let x = |i, j| Poly::x(ring, 1, i, j);
            let c = |k: usize| Poly::constant(ring, Rational::new(coeffs[k].0, coeffs[k].1));
            // mixed degrees on purpose
            let f = &(&(&c(0) * &(&x(1, 1) * &x(2, 2))) + &(&c(1) * &x(1, 2).pow(3)))
                + &(&(&c(2) * &x(2, 1)) + &c(3));
            let values: Vec<Rational> = vals.iter().map(|&(a, b)| Rational::new(a, b)).collect();
            let pv = PointValues::new(ring, values.clone());
            prop_assert_eq!(pv.evaluate(&f), f.evaluate_at(&values));
            prop_assert_eq!(pv.vanishes(&f), f.evaluate_at(&values).is_zero());
        }
    }
}
