//! Values computed independently (sympy `groebner`, grevlex, same variable
//! order) and frozen here.

use std::collections::BTreeMap;

use sing_core::generators::{block_cubics, candidate_basis, det_pencil_generators};
use sing_core::groebner::{buchberger, is_groebner_basis};
use sing_core::{Monomial, Poly, Ring};

fn degree_profile(polys: &[Poly]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for p in polys {
        *out.entry(p.degree().unwrap()).or_insert(0) += 1;
    }
    out
}

fn minimal_leading_monomials(basis: &[Poly]) -> Vec<Monomial> {
    let lms: Vec<&Monomial> = basis.iter().map(|p| p.leading_monomial().unwrap()).collect();
    let mut out: Vec<Monomial> = lms
        .iter()
        .filter(|a| !lms.iter().any(|b| b != *a && b.divides(a)))
        .map(|a| (*a).clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn quadric_groebner_basis_matches_reference() {
    let expected: [(usize, usize, &[(u32, usize)]); 2] = [
        (3, 24, &[(2, 6), (3, 2), (4, 5), (5, 8), (6, 3)]),
        (4, 132, &[(2, 10), (3, 8), (4, 26), (5, 64), (6, 24)]),
    ];
    for (m, size, profile) in expected {
        let ring = Ring::new(m, 2);
        let gb = buchberger(&det_pencil_generators(ring).unwrap().polys()).unwrap();
        assert_eq!(gb.generators().len(), size, "m={m}");
        assert_eq!(degree_profile(gb.generators()), profile.iter().copied().collect(), "m={m}");
        assert!(is_groebner_basis(gb.generators()).is_basis);
    }
}

#[test]
fn block_cubic_remainders_match_reference() {
    for (m, nonzero, total) in [(3, 24, 48), (4, 96, 144)] {
        let ring = Ring::new(m, 2);
        let gb = buchberger(&det_pencil_generators(ring).unwrap().polys()).unwrap();
        let cubics = block_cubics(ring).unwrap();
        assert_eq!(cubics.len(), total);
        let count = cubics.elements.iter().filter(|g| !gb.contains(&g.poly)).count();
        assert_eq!(count, nonzero, "m={m}");
    }
}

#[test]
fn candidate_leading_ideal_matches_reference() {
    // the reference reduced basis of <candidate> has exactly these many
    // elements, all with square-free leading monomials
    for (m, minimal) in [(3, 14), (4, 44)] {
        let basis = candidate_basis(Ring::new(m, 2)).unwrap();
        let lms = minimal_leading_monomials(&basis);
        assert_eq!(lms.len(), minimal, "m={m}");
        assert!(lms.iter().all(Monomial::is_squarefree));
    }
}

#[test]
fn reduced_basis_of_candidate_is_its_interreduction() {
    let ring = Ring::new(3, 2);
    let basis = candidate_basis(ring).unwrap();
    let gb = buchberger(&basis).unwrap();
    // a Gröbner basis already: completion adds nothing new to the leading ideal
    assert_eq!(minimal_leading_monomials(gb.generators()), minimal_leading_monomials(&basis));
    assert_eq!(gb.generators().len(), 14);
}
