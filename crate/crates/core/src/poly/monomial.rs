use std::cmp::Ordering;
use std::ops::Mul;

use smallvec::SmallVec;

type Exps = SmallVec<[u8; 32]>;

/// A power product stored as a dense exponent vector indexed by ring
/// variable position (0 = greatest variable).
///
/// `Ord` is degrevlex: higher total degree wins; on a tie, the monomial with
/// the smaller exponent at the last position where they differ is greater.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
    // bit (i mod 64) set iff some variable with that residue occurs
    mask: u64,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, num_vars), degree: 0, mask: 0 }
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.exps[index] = 1;
        m.degree = 1;
        m.mask = 1 << (index % 64);
        m
    }

    /// Panics if an exponent exceeds 255.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let exps: Exps = exps
            .iter()
            .map(|&e| u8::try_from(e).expect("exponent overflow"))
            .collect();
        Self::from_exps(exps)
    }

    fn from_exps(exps: Exps) -> Self {
        let mut degree = 0u32;
        let mut mask = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                degree += e as u32;
                mask |= 1 << (i % 64);
            }
        }
        Monomial { exps, degree, mask }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    /// Nonzero `(index, exponent)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e as u32))
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree || self.mask & !other.mask != 0 {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Self::from_exps(exps)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect();
        Self::from_exps(exps)
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        if self.mask & other.mask == 0 {
            return true;
        }
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// `self.cmp(&(other * t))` without building the product.
    pub fn cmp_with_product(&self, other: &Monomial, t: &Monomial) -> Ordering {
        let d = other.degree + t.degree;
        match self.degree.cmp(&d) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.exps.len()).rev() {
            let a = self.exps[i] as u32;
            let b = other.exps[i] as u32 + t.exps[i] as u32;
            if a != b {
                return if a < b { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            if a != b {
                return if a < b { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Mul<&'a Monomial> for &'a Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        let exps: Exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps, degree: self.degree + rhs.degree, mask: self.mask | rhs.mask }
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Monomial{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 0, 2]);
        let b = m(&[1, 1, 3]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[0, 1, 1]));
        assert_eq!(a.lcm(&m(&[0, 2, 1])), m(&[1, 2, 2]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 3, 1])));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 1, 0]).is_squarefree());
        assert!(!a.is_squarefree());
    }

    #[test]
    fn mask_collisions_do_not_fake_common_variables() {
        let mut e = vec![0u32; 70];
        e[0] = 1;
        let a = m(&e);
        e[0] = 0;
        e[64] = 1;
        let b = m(&e);
        assert!(a.is_coprime(&b));
        assert!(!a.divides(&b));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 5).prop_map(|e| Monomial::from_exponents(&e))
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = a.cmp(&b);
            prop_assert_eq!((&a * &c).cmp(&(&b * &c)), ab);
            prop_assert_eq!(a.cmp_with_product(&b, &c), a.cmp(&(&b * &c)));
        }

        #[test]
        fn order_refines_degree_and_is_total(a in arb_mono(), b in arb_mono()) {
            if a.degree() > b.degree() {
                prop_assert_eq!(a.cmp(&b), Ordering::Greater);
            }
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        }
    }
}
