#![allow(dead_code)]

use braidmat::ncalg::{all_words, Echelon, GenId, Monomial, NCPoly, Presentation};
use braidmat::presents::LEFT_TAG;
use braidmat::qscalar::{parse_scalar, LaurentPoly, RatFunc};
use braidmat::rmat::RMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn q(text: &str) -> RatFunc {
    parse_scalar(text).unwrap()
}

/// The shipped R with the `q - q^-1` entry replaced by `1 + q`.
pub fn perturbed_glq2() -> RMatrix {
    RMatrix::glq2().with_entry([0, 1, 1, 0], q("1 + q"))
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    })
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

pub fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("zero", |x| !x.is_zero())
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=9).prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

/// Random homogeneous-or-not polynomial over `generators` letters.
pub fn poly_over(generators: usize, max_degree: usize, max_terms: usize) -> impl Strategy<Value = NCPoly<RatFunc>> {
    let term = (
        prop::collection::vec(0..generators, 0..=max_degree),
        -3i64..=3,
        -2i64..=2,
    );
    prop::collection::vec(term, 0..=max_terms).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (letters, c, e) in terms {
            p.add_term(
                Monomial::from_letters(&letters),
                &RatFunc::from_int(c).times(&RatFunc::q_pow(e)),
            );
        }
        p
    })
}

/// Roster `x[1,1], x[1,2], ...` of a free algebra with `g` letters.
pub fn letter_roster(g: usize) -> Vec<GenId> {
    (0..g).map(|k| GenId::new("x", 1 + k / 2, 1 + k % 2)).collect()
}

/// Sparse 4x4 R-matrix with small Laurent entries.
pub fn sparse_r() -> impl Strategy<Value = RMatrix> {
    prop::collection::vec(
        ((0usize..2, 0usize..2, 0usize..2, 0usize..2), -2i64..=2, -1i64..=1),
        1..7,
    )
    .prop_map(|es| {
        let mut r = RMatrix::identity(2).scale(&RatFunc::zero());
        for ((i, j, k, l), c, e) in es {
            r = r.with_entry([i, j, k, l], RatFunc::from_int(c).times(&RatFunc::q_pow(e)));
        }
        r
    })
}

/// Grading of a word in a braided tensor square: letters per factor, and
/// the sum of `row - col` over all letters. Every relation of the square is
/// homogeneous for it, and so is the image of a relation under the matrix
/// coproduct.
pub fn square_grade(sq: &Presentation, w: &[u16]) -> [i64; 3] {
    let mut g = [0i64; 3];
    for &x in w {
        let id = &sq.roster[x as usize];
        if id.copy.starts_with(LEFT_TAG) {
            g[0] += 1
        } else {
            g[1] += 1
        }
        g[2] += id.row as i64 - id.col as i64;
    }
    g
}

/// Independent membership test: echelonizes every `l·r·m` with the grade of
/// `target`, then checks whether `target` lies in the span. No rewriting.
pub fn graded_span_member(sq: &Presentation, target: &NCPoly<RatFunc>) -> bool {
    let d = target.degree().unwrap();
    let tg = square_grade(sq, target.leading().unwrap().0.letters());
    assert!(
        target.terms().all(|(m, _)| square_grade(sq, m.letters()) == tg),
        "target not homogeneous"
    );
    let ng = sq.roster.len();
    let mut ech = Echelon::new();
    for rel in &sq.relations {
        let rg = square_grade(sq, rel.leading().unwrap().0.letters());
        assert!(
            rel.terms().all(|(m, _)| square_grade(sq, m.letters()) == rg),
            "relation not homogeneous"
        );
        for ll in 0..=d - 2 {
            for l in all_words(ng, ll) {
                let gl = square_grade(sq, &l);
                for r in all_words(ng, d - 2 - ll) {
                    let gr = square_grade(sq, &r);
                    if (0..3).all(|i| gl[i] + gr[i] + rg[i] == tg[i]) {
                        ech.insert(rel.sandwich(&l, &r), None);
                    }
                }
            }
        }
    }
    ech.contains(target)
}
