mod common;

use braidmat::ncalg::{
    hilbert_dims, hilbert_dims_by_span, ideal_membership, orient_relations, relation_span_equal, relations_span_equal,
    AlgebraError, Monomial, NCPoly, Presentation,
};
use braidmat::presents::*;
use braidmat::qscalar::RatFunc;
use braidmat::rmat::RMatrix;
use common::*;

fn all_builders(r: &RMatrix) -> Vec<Presentation> {
    vec![
        frt_algebra(r).unwrap(),
        braided_matrices(r).unwrap(),
        braided_chain(&ChainSpec::new(r.clone(), 2)).unwrap(),
        braided_chain(&ChainSpec::new(r.clone(), 3)).unwrap(),
        braided_chain_rearranged(&ChainSpec::new(r.clone(), 2)).unwrap(),
        Preset::Square.build(r).unwrap(),
    ]
}

/// `x·y - y·x` for every pair of roster letters.
fn commutators(g: usize) -> Vec<NCPoly<RatFunc>> {
    let mut out = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            let mut p = NCPoly::zero();
            p.add_term(Monomial::from_letters(&[a, b]), &RatFunc::one());
            p.add_term(Monomial::from_letters(&[b, a]), &RatFunc::from_int(-1));
            out.push(p);
        }
    }
    out
}

fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|d| (0..=d).map(|k| a[k] * b[d - k]).sum()).collect()
}

#[test]
fn builders_are_quadratic_and_self_consistent() {
    for p in all_builders(&RMatrix::glq2()) {
        assert!(p.validate().is_ok(), "{}", p.name);
        for (k, r) in p.relations.iter().enumerate() {
            assert!(r.is_homogeneous_of(2), "{} relation {k}", p.name);
            let m = ideal_membership(r, &p, 2).unwrap();
            assert!(m.member);
            assert_eq!(m.certificate.unwrap().replay(&p.relations), *r);
        }
    }
}

#[test]
fn identity_gives_commutative_presentations() {
    for p in all_builders(&RMatrix::identity(2)) {
        assert!(
            relations_span_equal(&p.relations, &commutators(p.roster.len())),
            "{}",
            p.name
        );
    }
}

#[test]
fn one_copy_chain_is_braided_matrices() {
    for r in [RMatrix::glq2(), RMatrix::identity(2), RMatrix::flip(2)] {
        let bm = braided_matrices(&r).unwrap();
        let chain = braided_chain(&ChainSpec::new(r, 1)).unwrap();
        assert_eq!(chain.roster.len(), bm.roster.len());
        assert!(chain
            .roster
            .iter()
            .zip(&bm.roster)
            .all(|(a, b)| (a.row, a.col) == (b.row, b.col)));
        assert!(relations_span_equal(&chain.relations, &bm.relations));
    }
}

#[test]
fn rescaling_r_keeps_the_relation_span() {
    let r = RMatrix::glq2();
    for s in ["2", "q^3", "(q + 1)/(q - 2)"] {
        let scaled = r.scale(&q(s));
        assert!(relation_span_equal(&braided_matrices(&r).unwrap(), &braided_matrices(&scaled).unwrap()).unwrap());
        assert!(relation_span_equal(&frt_algebra(&r).unwrap(), &frt_algebra(&scaled).unwrap()).unwrap());
    }
}

#[test]
fn one_dimensional_frt_is_free() {
    let r = RMatrix::identity(1).scale(&q("q^2 + 1"));
    assert!(frt_algebra(&r).unwrap().relations.is_empty());
}

#[test]
fn chain_block_layout() {
    let p = braided_chain(&ChainSpec::new(RMatrix::glq2(), 3)).unwrap();
    let names: Vec<&str> = p.blocks.iter().map(|b| b.name.as_str()).collect();
    assert_eq!(names, ["u1", "u2", "u3", "u2,u1", "u3,u1", "u3,u2"]);
    assert_eq!(p.roster.len(), 12);
    assert!(matches!(
        braided_chain(&ChainSpec::new(RMatrix::glq2(), 0)),
        Err(PresentError::EmptyChain)
    ));
}

#[test]
fn rearranged_cross_blocks_span_the_same_relations() {
    for n in [2, 3] {
        let spec = ChainSpec::new(RMatrix::glq2(), n);
        assert!(relation_span_equal(
            &braided_chain(&spec).unwrap(),
            &braided_chain_rearranged(&spec).unwrap()
        )
        .unwrap());
    }
}

#[test]
fn missing_cross_block_is_unorientable() {
    let p = braided_chain(&ChainSpec::new(RMatrix::glq2(), 2))
        .unwrap()
        .without_block("u2,u1");
    assert!(matches!(orient_relations(&p), Err(AlgebraError::Unorientable { .. })));
}

#[test]
fn square_cross_block_is_an_exchange() {
    let sq = braided_tensor_square(&TensorSquareSpec {
        base: braided_matrices(&RMatrix::glq2()).unwrap(),
        r: RMatrix::glq2(),
        statistics: Statistics::Braided,
    })
    .unwrap();
    let block = sq.presentation.block("R.u|L.u").unwrap();
    assert_eq!(block.range().len(), 16);
    assert!(orient_relations(&sq.presentation).is_ok());
}

#[test]
fn square_dims_are_the_convolution_of_the_factor() {
    for r in [RMatrix::glq2(), RMatrix::identity(2)] {
        let base = braided_matrices(&r).unwrap();
        let factor = hilbert_dims_by_span(&base, 2);
        let sq = Preset::Square.build(&r).unwrap();
        assert_eq!(hilbert_dims_by_span(&sq, 2), convolve(&factor, &factor, 3));
        assert_eq!(hilbert_dims(&sq, 2).unwrap(), convolve(&factor, &factor, 3));
    }
}

#[test]
fn square_against_chain() {
    let w = square_iso_witness(&RMatrix::identity(2), 3).unwrap();
    assert!(w.equal);
    assert_eq!(w.first_dims, vec![1, 8, 36, 120]);

    let r = RMatrix::glq2();
    let sq = Preset::Square.build(&r).unwrap();
    let chain = braided_chain(&ChainSpec::new(r, 2)).unwrap();
    let broken = compare_dims(&sq, &chain.without_block("u2,u1"), 2).unwrap();
    assert!(!broken.equal);
}

#[test]
fn documents_round_trip() {
    for p in all_builders(&RMatrix::glq2()) {
        let text = p.save();
        let back = Presentation::load(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.save(), text);
    }
}

#[test]
fn glq2_flat_through_degree_three() {
    let p = braided_matrices(&RMatrix::glq2()).unwrap();
    assert_eq!(hilbert_dims_by_span(&p, 3), vec![1, 4, 10, 20]);
    assert_eq!(hilbert_dims(&p, 4).unwrap(), vec![1, 4, 10, 20, 35]);
    let chain = braided_chain(&ChainSpec::new(RMatrix::glq2(), 2)).unwrap();
    assert_eq!(hilbert_dims_by_span(&chain, 2), vec![1, 8, 36]);
}
