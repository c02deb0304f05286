use proptest::prelude::*;
use sing_core::generators::{
    block_cubics, candidate_basis, det_pencil_generators, fano_minors, flattening, quartic_products,
    FlatteningMode, ProductEquations,
};
use sing_core::groebner::buchberger;
use sing_core::linalg::monomials_of_degree;
use sing_core::verify::{degreewise_membership, DegreeSpan};
use sing_core::{Poly, Rational, Ring, VarOrder};

#[test]
fn cubics_agree_with_flattening_minors_modulo_quadrics() {
    for m in [3, 4] {
        let ring = Ring::new(m, 2);
        let quads = det_pencil_generators(ring).unwrap().polys();
        let cubics = block_cubics(ring).unwrap().polys();
        let minors: Vec<Poly> =
            flattening(ring, FlatteningMode::Slice).minors_of(3).unwrap().into_iter().map(|mi| mi.poly).collect();
        let with = |extra: &[Poly]| {
            let mut g = quads.clone();
            g.extend_from_slice(extra);
            DegreeSpan::new(ring, &g, 3).unwrap().dimension()
        };
        let both: Vec<Poly> = cubics.iter().chain(&minors).cloned().collect();
        let d = with(&both);
        assert_eq!(with(&cubics), d, "m={m}");
        assert_eq!(with(&minors), d, "m={m}");
        assert!(d > with(&[]));
    }
}

#[test]
fn family_sizes() {
    let r3 = Ring::new(3, 2);
    assert_eq!(det_pencil_generators(r3).unwrap().len(), 6);
    assert_eq!(quartic_products(Ring::new(2, 2)).unwrap().len(), 2);
    assert_eq!(quartic_products(r3).unwrap().len(), 18);
    assert_eq!(fano_minors(r3).unwrap().len(), 4);
    assert!(fano_minors(Ring::new(6, 3)).unwrap().is_empty());
    assert_eq!(fano_minors(Ring::new(7, 3)).unwrap().len(), 36);
    assert_eq!(candidate_basis(Ring::new(1, 2)).unwrap().len(), 1);
    assert_eq!(candidate_basis(Ring::new(2, 2)).unwrap().len(), 5);

    let pe = ProductEquations::new(r3).unwrap();
    assert_eq!(
        (pe.slice_minors().len(), pe.row_side_minors().len(), pe.col_side_minors().len()),
        (4, 15, 15)
    );
    assert!(pe.iter().take(20).all(|e| e.degree() == 7));

    let pe = ProductEquations::new(Ring::new(6, 3)).unwrap();
    assert_eq!(
        (pe.slice_minors().len(), pe.row_side_minors().len(), pe.col_side_minors().len()),
        (84, 816, 816)
    );
    assert_eq!(pe.count(), 84 * 816 * 816);
    assert!(pe.sample(1, 50).all(|e| e.degree() == 12));

    let below = ProductEquations::new(Ring::new(5, 3)).unwrap();
    assert_eq!(below.count(), 0);
    assert!(below.warning().is_some());
}

#[test]
fn candidate_basis_is_deterministic() {
    for order in [VarOrder::RowMajor, VarOrder::ColumnMajor] {
        let ring = Ring::with_order(4, 2, order);
        let a: Vec<String> = candidate_basis(ring).unwrap().iter().map(Poly::to_canonical_string).collect();
        let b: Vec<String> = candidate_basis(ring).unwrap().iter().map(Poly::to_canonical_string).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn quartics_reduce_to_zero_for_m2() {
    let ring = Ring::new(2, 2);
    let gb = buchberger(&det_pencil_generators(ring).unwrap().polys()).unwrap();
    for q in quartic_products(ring).unwrap().polys() {
        assert!(gb.contains(&q));
    }
}

// The two membership oracles must agree wherever both apply.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn membership_oracles_agree(
        picks in proptest::collection::vec((0usize..6, 0usize..12, -3i64..4), 1..4),
        noise in proptest::option::of((0usize..78, 1i64..4)),
    ) {
        let ring = Ring::new(3, 2);
        let quads = det_pencil_generators(ring).unwrap().polys();
        let gb = buchberger(&quads).unwrap();
        let linear = monomials_of_degree(ring.num_vars(), 1);
        let cubic_monomials = monomials_of_degree(ring.num_vars(), 3);
        let mut f = Poly::zero(ring);
        for (q, v, c) in picks {
            f = &f + &quads[q].mul_term(&linear[v], &Rational::from_integer(c));
        }
        if let Some((i, c)) = noise {
            f = &f + &Poly::monomial(ring, cubic_monomials[i].clone(), Rational::from_integer(c));
        }
        let member = degreewise_membership(&f, &quads, 3).unwrap();
        prop_assert_eq!(member, gb.contains(&f));
    }
}
