//! Multivariate division, S-polynomials, Buchberger's algorithm and the
//! Buchberger-criterion check used to certify candidate bases.
//!
//! Normal forms are deterministic: at every step the reducer is the first
//! basis element (in list order) whose leading monomial divides the current
//! leading monomial. Pairs whose leading monomials share no variable are
//! skipped by the product criterion; everything else is reduced explicitly.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Ring};
use crate::rational::Rational;

/// `(lcm/LT(f))·f − (lcm/LT(g))·g`.
pub fn s_polynomial(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch { left: f.ring(), right: g.ring() });
    }
    let ((mf, cf), (mg, cg)) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ZeroPolynomial),
    };
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &cf.recip());
    Ok(a.sub_scaled_term(g, &mg.quotient_of(&l), &cg.recip()))
}

/// Precomputed leading data for repeated division by one list of divisors.
pub struct Reducer<'a> {
    divisors: &'a [Poly],
    leads: Vec<(Monomial, Rational)>,
}

impl<'a> Reducer<'a> {
    /// Zero divisors are ignored.
    pub fn new(divisors: &'a [Poly]) -> Self {
        let leads = divisors
            .iter()
            .map(|g| match g.leading_term() {
                Some((m, c)) => (m.clone(), c.recip()),
                None => (Monomial::one(g.ring().num_vars()), Rational::ZERO),
            })
            .collect();
        Reducer { divisors, leads }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        self.leads
            .iter()
            .position(|(lm, inv)| !inv.is_zero() && lm.divides(m))
    }

    /// Remainder of `f` on division by the divisors: no term of the result is
    /// divisible by a divisor's leading monomial, and `f − result` lies in the
    /// ideal they generate.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let ring = f.ring();
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut p: Vec<(Monomial, Rational)> = f.terms().to_vec();
        let mut start = 0;
        while start < p.len() {
            let (lm, lc) = &p[start];
            match self.find(lm) {
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
                Some(k) => {
                    let (glm, ginv) = &self.leads[k];
                    let t = glm.quotient_of(lm);
                    let c = lc * ginv;
                    // the leading terms cancel exactly; merge the tails
                    p = merge_sub(&p[start + 1..], &self.divisors[k].terms()[1..], &t, &c);
                    start = 0;
                }
            }
        }
        Poly::from_sorted(ring, rem)
    }
}

/// `a − c·t·b` for canonical term slices.
fn merge_sub(
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    t: &Monomial,
    c: &Rational,
) -> Vec<(Monomial, Rational)> {
    use std::cmp::Ordering;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Less
        } else if j == b.len() {
            Ordering::Greater
        } else {
            a[i].0.cmp_with_product(&b[j].0, t)
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((&b[j].0 * t, -(&b[j].1 * c)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - &(&b[j].1 * c);
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Remainder of `f` modulo `divisors` with first-match reducer selection.
pub fn normal_form(f: &Poly, divisors: &[Poly]) -> Poly {
    Reducer::new(divisors).normal_form(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingPair {
    pub first: usize,
    pub second: usize,
    /// Canonical text of the nonzero remainder.
    pub remainder: String,
    #[serde(skip)]
    pub remainder_poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCheckResult {
    pub is_basis: bool,
    pub failing_pair: Option<FailingPair>,
    pub pairs_examined: u64,
    pub pairs_skipped_by_criterion: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Skip pairs with coprime leading monomials without reducing them.
    pub product_criterion: bool,
    pub parallel: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { product_criterion: true, parallel: true }
    }
}

/// Buchberger's criterion: every S-pair must reduce to zero.
pub fn is_groebner_basis(basis: &[Poly]) -> BasisCheckResult {
    is_groebner_basis_with(basis, CheckOptions::default())
}

/// Pairs are visited in lexicographic `(i, j)` order, `i < j`. On failure the
/// counts describe the sequential prefix up to and including the failing
/// pair, so reports do not depend on thread scheduling.
pub fn is_groebner_basis_with(basis: &[Poly], opts: CheckOptions) -> BasisCheckResult {
    let reducer = Reducer::new(basis);
    let lms: Vec<Option<&Monomial>> = basis.iter().map(Poly::leading_monomial).collect();
    let mut work: Vec<(u32, u32)> = Vec::new();
    let mut skipped = 0u64;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (Some(a), Some(b)) = (lms[i], lms[j]) else { continue };
            if opts.product_criterion && a.is_coprime(b) {
                skipped += 1;
            } else {
                work.push((i as u32, j as u32));
            }
        }
    }
    let reduces_nonzero = |&(i, j): &(u32, u32)| {
        let s = s_polynomial(&basis[i as usize], &basis[j as usize]).expect("nonzero basis elements");
        !reducer.normal_form(&s).is_zero()
    };
    let failure = if opts.parallel {
        work.par_iter().position_first(reduces_nonzero)
    } else {
        work.iter().position(reduces_nonzero)
    };
    match failure {
        None => BasisCheckResult {
            is_basis: true,
            failing_pair: None,
            pairs_examined: work.len() as u64,
            pairs_skipped_by_criterion: skipped,
        },
        Some(pos) => {
            let (i, j) = (work[pos].0 as usize, work[pos].1 as usize);
            let rem = reducer.normal_form(&s_polynomial(&basis[i], &basis[j]).unwrap());
            // coprime pairs preceding (i, j) in lexicographic order
            let skipped_before = if opts.product_criterion {
                (0..=i)
                    .flat_map(|a| (a + 1..basis.len()).map(move |b| (a, b)))
                    .take_while(|&p| p < (i, j))
                    .filter(|&(a, b)| match (lms[a], lms[b]) {
                        (Some(x), Some(y)) => x.is_coprime(y),
                        _ => false,
                    })
                    .count() as u64
            } else {
                0
            };
            BasisCheckResult {
                is_basis: false,
                failing_pair: Some(FailingPair {
                    first: i,
                    second: j,
                    remainder: rem.to_canonical_string(),
                    remainder_poly: rem,
                }),
                pairs_examined: pos as u64 + 1,
                pairs_skipped_by_criterion: skipped_before,
            }
        }
    }
}

/// True iff the monomial ideal generated by the leading monomials is
/// square-free, i.e. every leading monomial that is not a proper multiple of
/// another element's leading monomial has all exponents at most 1.
pub fn leading_ideal_squarefree(basis: &[Poly]) -> bool {
    squarefree_report(basis).leading_ideal_squarefree
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeReport {
    pub leading_ideal_squarefree: bool,
    /// Elements whose own leading monomial is square-free.
    pub squarefree_elements: usize,
    /// Elements with a squared variable in the leading monomial whose leading
    /// monomial is nevertheless a multiple of a square-free one.
    pub redundant_nonsquarefree: Vec<usize>,
    /// Elements whose leading monomial is a minimal generator of the leading
    /// ideal and is not square-free.
    pub offending: Vec<usize>,
}

pub fn squarefree_report(basis: &[Poly]) -> SquarefreeReport {
    let lms: Vec<&Monomial> = basis.iter().filter_map(Poly::leading_monomial).collect();
    let mut report = SquarefreeReport {
        leading_ideal_squarefree: true,
        squarefree_elements: 0,
        redundant_nonsquarefree: Vec::new(),
        offending: Vec::new(),
    };
    for (i, lm) in lms.iter().enumerate() {
        if lm.is_squarefree() {
            report.squarefree_elements += 1;
            continue;
        }
        let covered = lms
            .iter()
            .any(|other| other.is_squarefree() && other.divides(lm) && *other != *lm);
        if covered {
            report.redundant_nonsquarefree.push(i);
        } else {
            report.offending.push(i);
            report.leading_ideal_squarefree = false;
        }
    }
    report
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuchbergerOptions {
    /// Also drop pairs by Buchberger's chain criterion.
    pub chain_criterion: bool,
    /// Reduce each degree batch of S-pairs in parallel.
    pub parallel: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BuchbergerStats {
    pub pairs_reduced: u64,
    pub pairs_skipped_product: u64,
    pub pairs_skipped_chain: u64,
    pub max_degree: u32,
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by ascending
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    generators: Vec<Poly>,
    stats: BuchbergerStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn stats(&self) -> &BuchbergerStats {
        &self.stats
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, &self.generators)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Completes `generators` to a reduced Gröbner basis (product criterion only).
pub fn buchberger(generators: &[Poly]) -> Result<GroebnerBasis> {
    buchberger_with(generators, BuchbergerOptions { chain_criterion: false, parallel: true })
}

/// Pairs are processed by the normal strategy: ascending lcm degree, then
/// index pair. All pairs of the lowest pending degree are reduced against a
/// snapshot of the basis, then committed one by one in pair order, each
/// result reduced again against whatever the batch has already added.
pub fn buchberger_with(generators: &[Poly], opts: BuchbergerOptions) -> Result<GroebnerBasis> {
    let ring = generators.first().ok_or(Error::ZeroPolynomial)?.ring();
    if let Some(bad) = generators.iter().find(|g| g.ring() != ring) {
        return Err(Error::RingMismatch { left: ring, right: bad.ring() });
    }
    if generators.iter().any(Poly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }

    let mut state = State { basis: Vec::new(), pending: BTreeSet::new(), stats: BuchbergerStats::default() };
    for g in generators {
        state.push(g.monic());
    }

    while let Some(&(deg, _, _)) = state.pending.iter().next() {
        let batch: Vec<(u32, usize, usize)> = state.pending.iter().take_while(|p| p.0 == deg).cloned().collect();
        let mut live = Vec::with_capacity(batch.len());
        for p in batch {
            state.pending.remove(&p);
            if opts.chain_criterion && state.chain_skips(p.1, p.2) {
                state.stats.pairs_skipped_chain += 1;
            } else {
                live.push((p.1, p.2));
            }
        }
        state.stats.max_degree = state.stats.max_degree.max(deg);
        state.stats.pairs_reduced += live.len() as u64;
        let snapshot = &state.basis;
        let reducer = Reducer::new(snapshot);
        let reduce = |&(i, j): &(usize, usize)| {
            let s = s_polynomial(&snapshot[i], &snapshot[j]).expect("nonzero basis");
            reducer.normal_form(&s)
        };
        let remainders: Vec<Poly> = if opts.parallel {
            live.par_iter().map(reduce).collect()
        } else {
            live.iter().map(reduce).collect()
        };
        for r in remainders {
            if r.is_zero() {
                continue;
            }
            let r = normal_form(&r, &state.basis);
            if !r.is_zero() {
                state.push(r.monic());
            }
        }
    }

    let stats = state.stats;
    Ok(GroebnerBasis { ring, generators: interreduce(state.basis), stats })
}

struct State {
    basis: Vec<Poly>,
    pending: BTreeSet<(u32, usize, usize)>,
    stats: BuchbergerStats,
}

impl State {
    fn push(&mut self, g: Poly) {
        let j = self.basis.len();
        let lj = g.leading_monomial().unwrap().clone();
        for (i, f) in self.basis.iter().enumerate() {
            let li = f.leading_monomial().unwrap();
            if li.is_coprime(&lj) {
                self.stats.pairs_skipped_product += 1;
            } else {
                self.pending.insert((li.lcm(&lj).degree(), i, j));
            }
        }
        self.basis.push(g);
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let la = self.basis[a].leading_monomial().unwrap();
        let lb = self.basis[b].leading_monomial().unwrap();
        self.pending.contains(&(la.lcm(lb).degree(), a, b))
    }

    /// Some third element's leading monomial divides `lcm(i, j)` and neither
    /// of its pairs with `i` or `j` is still waiting.
    fn chain_skips(&self, i: usize, j: usize) -> bool {
        let l = self.basis[i].leading_monomial().unwrap().lcm(self.basis[j].leading_monomial().unwrap());
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.basis[k].leading_monomial().unwrap().divides(&l)
                && !self.is_pending(i, k)
                && !self.is_pending(j, k)
        })
    }
}

/// Minimalizes, tail-reduces and sorts by ascending leading monomial.
fn interreduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, h)| h.clone())
            .collect();
        out.push(normal_form(&minimal[i], &others).monic());
    }
    out
}

/// Removes exact duplicates, keeping first occurrences.
pub fn dedup_polys(polys: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut seen = HashSet::new();
    polys.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // x = x[1][1][1] > y = x[1][1][2] > z = x[1][2][1] > w = x[1][2][2]
    fn ring() -> Ring {
        Ring::new(1, 2)
    }
    fn x() -> Poly {
        Poly::x(ring(), 1, 1, 1)
    }
    fn y() -> Poly {
        Poly::x(ring(), 1, 1, 2)
    }
    fn one() -> Poly {
        Poly::constant(ring(), Rational::ONE)
    }

    #[test]
    fn s_polynomial_examples() {
        let f = &x().pow(2) - &y();
        let g = &(&x() * &y()) - &one();
        assert_eq!(s_polynomial(&f, &g).unwrap(), &x() - &y().pow(2));
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        assert!(s_polynomial(&x().pow(2), &y().pow(2)).unwrap().is_zero());
        assert!(matches!(s_polynomial(&f, &Poly::zero(ring())), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn normal_form_examples() {
        let f = &x().pow(2) - &y();
        assert_eq!(normal_form(&(&x().pow(2) * &y()), std::slice::from_ref(&f)), y().pow(2));
        let h = &(&x() * &y()) + &Poly::x(ring(), 1, 2, 2).pow(3);
        assert!(normal_form(&(&h * &f), &[f.clone()]).is_zero());
    }

    #[test]
    fn first_match_reducer() {
        // both x and x*y divide x*y; list order decides
        let a = &x() - &Poly::x(ring(), 1, 2, 2);
        let b = &(&x() * &y()) - &one();
        let f = &x() * &y();
        assert_eq!(normal_form(&f, &[a.clone(), b.clone()]), &y() * &Poly::x(ring(), 1, 2, 2));
        assert_eq!(normal_form(&f, &[b, a]), one());
    }

    #[test]
    fn criterion_examples() {
        let f = &x().pow(2) - &y();
        let g = &(&x() * &y()) - &one();
        let res = is_groebner_basis(&[f.clone(), g.clone()]);
        assert!(!res.is_basis);
        let fail = res.failing_pair.unwrap();
        assert_eq!((fail.first, fail.second), (0, 1));
        assert_eq!(fail.remainder_poly, &x() - &y().pow(2));
        assert_eq!(res.pairs_examined, 1);
        assert!(is_groebner_basis(&[g]).is_basis);
    }

    #[test]
    fn buchberger_example() {
        let f = &x().pow(2) - &y();
        let g = &(&x() * &y()) - &one();
        let gb = buchberger(&[f.clone(), g.clone()]).unwrap();
        assert!(is_groebner_basis(gb.generators()).is_basis);
        assert!(gb.contains(&f) && gb.contains(&g));
        assert!(gb.contains(&(&x() - &y().pow(2))));
        // degrevlex: y^2 < x*y < x^2, and y^2 leads x - y^2
        let expect = vec![&y().pow(2) - &x(), g.clone(), f.clone()];
        assert_eq!(gb.generators(), expect.as_slice());
        let again = buchberger(gb.generators()).unwrap();
        assert_eq!(again.generators(), gb.generators());
        let chain = buchberger_with(&[f, g], BuchbergerOptions { chain_criterion: true, parallel: false }).unwrap();
        assert_eq!(chain.generators(), gb.generators());
    }

    #[test]
    fn squarefree_leading_ideal() {
        assert!(!leading_ideal_squarefree(&[&x().pow(2) - &y()]));
        assert!(leading_ideal_squarefree(&[&(&x() * &y()) - &one()]));
        // x^2*y is not square-free but lies in the ideal generated by x*y
        let basis = [&(&x() * &y()) - &one(), &(&x().pow(2) * &y()) - &x()];
        let rep = squarefree_report(&basis);
        assert!(rep.leading_ideal_squarefree);
        assert_eq!(rep.redundant_nonsquarefree, vec![1]);
        assert!(!leading_ideal_squarefree(&[x().pow(2), &x() * &y()]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-3i64..4, proptest::collection::vec(0u32..3, 4)), 1..4).prop_map(|terms| {
            Poly::from_terms(
                ring(),
                terms.into_iter().map(|(c, e)| (Monomial::from_exponents(&e), Rational::from_integer(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn completion_yields_a_basis(fs in proptest::collection::vec(arb_poly(), 1..4)) {
            let fs: Vec<Poly> = fs.into_iter().filter(|p| !p.is_zero() && p.degree().unwrap_or(0) <= 3).collect();
            prop_assume!(!fs.is_empty());
            let gb = buchberger(&fs).unwrap();
            prop_assert!(is_groebner_basis(gb.generators()).is_basis);
            for f in &fs {
                prop_assert!(gb.contains(f));
            }
            let chained = buchberger_with(&fs, BuchbergerOptions { chain_criterion: true, parallel: true }).unwrap();
            prop_assert_eq!(chained.generators(), gb.generators());
        }

        #[test]
        fn combinations_reduce_to_zero(fs in proptest::collection::vec(arb_poly(), 1..3), hs in proptest::collection::vec(arb_poly(), 2)) {
            let fs: Vec<Poly> = fs.into_iter().filter(|p| !p.is_zero()).collect();
            prop_assume!(!fs.is_empty());
            let gb = buchberger(&fs).unwrap();
            let combo = fs.iter().zip(&hs).fold(Poly::zero(ring()), |acc, (f, h)| &acc + &(f * h));
            prop_assert!(gb.normal_form(&combo).is_zero());
        }

        #[test]
        fn remainder_is_linear(fs in proptest::collection::vec(arb_poly(), 1..3), a in arb_poly(), b in arb_poly()) {
            let fs: Vec<Poly> = fs.into_iter().filter(|p| !p.is_zero()).collect();
            prop_assume!(!fs.is_empty());
            let gb = buchberger(&fs).unwrap();
            let lhs = gb.normal_form(&(&a + &b));
            let rhs = gb.normal_form(&(&gb.normal_form(&a) + &gb.normal_form(&b)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_criterion_is_sound(fs in proptest::collection::vec(arb_poly(), 1..4)) {
            let fs: Vec<Poly> = fs.into_iter().filter(|p| !p.is_zero()).collect();
            prop_assume!(!fs.is_empty());
            let gb = buchberger(&fs).unwrap();
            let full = is_groebner_basis_with(gb.generators(), CheckOptions { product_criterion: false, parallel: false });
            prop_assert!(full.is_basis);
            prop_assert_eq!(full.pairs_skipped_by_criterion, 0);
        }
    }
}
