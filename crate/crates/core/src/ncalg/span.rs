//! Brute-force span computations: every `m·r·m'` of a given degree is
//! written out and echelonized. Exponential in the degree, so only used for
//! small cross-checks and for comparing quadratic relation spans.

use crate::field::Field;

use super::engine::Membership;
use super::linear::{Echelon, MembershipCertificate};
use super::poly::{Monomial, NCPoly, Word};
use super::presentation::Presentation;
use super::AlgebraError;

/// All words of length `len` over `generators` letters, in increasing order.
pub fn all_words(generators: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * generators);
        for w in &out {
            for g in 0..generators {
                let mut x = w.clone();
                x.push(g as u16);
                next.push(x);
            }
        }
        out = next;
    }
    out
}

/// Echelon basis of the degree-`d` part of the ideal, rows certified.
pub fn ideal_component<C: Field>(p: &Presentation<C>, d: usize) -> Echelon<C> {
    let mut ech = Echelon::new();
    if d < 2 {
        return ech;
    }
    let g = p.roster.len();
    for left_len in 0..=d - 2 {
        let lefts = all_words(g, left_len);
        let rights = all_words(g, d - 2 - left_len);
        for l in &lefts {
            for r in &rights {
                for (k, rel) in p.relations.iter().enumerate() {
                    let mut cert = MembershipCertificate::new();
                    cert.add(
                        Monomial::from_word(l.clone()),
                        k,
                        Monomial::from_word(r.clone()),
                        &C::one(),
                    );
                    ech.insert(rel.sandwich(l, r), Some(cert));
                }
            }
        }
    }
    ech
}

/// Membership by direct rank computation on the degree components of `q`.
pub fn membership_by_span<C: Field>(
    q: &NCPoly<C>,
    p: &Presentation<C>,
    bound: usize,
) -> Result<Membership<C>, AlgebraError> {
    let deg = q.degree().unwrap_or(0);
    if deg > bound {
        return Err(AlgebraError::DegreeAboveBound { degree: deg, bound });
    }
    let mut residue = NCPoly::zero();
    let mut cert = MembershipCertificate::new();
    for d in q.degrees() {
        let ech = ideal_component(p, d);
        let (r, c) = ech.reduce(q.component(d), Some(MembershipCertificate::new()));
        residue = residue.add(&r);
        // c certifies the subtracted part: component = r - c.replay()
        cert.add_scaled_sandwich(&C::one().negated(), &[], &c.unwrap(), &[]);
    }
    let member = residue.is_zero();
    Ok(Membership {
        member,
        certificate: member.then_some(cert),
        residue,
    })
}

/// `dim_d = g^d - rank(I_d)` by explicit rank computation.
pub fn hilbert_dims_by_span<C: Field>(p: &Presentation<C>, bound: usize) -> Vec<usize> {
    let g = p.roster.len();
    (0..=bound)
        .map(|d| g.pow(d as u32) - ideal_component(p, d).rank())
        .collect()
}

fn span_of<C: Field>(rels: &[NCPoly<C>]) -> Echelon<C> {
    let mut ech = Echelon::new();
    for r in rels {
        ech.insert(r.clone(), None);
    }
    ech
}

/// True iff the two relation lists span the same space.
pub fn relation_span_equal<C: Field>(a: &Presentation<C>, b: &Presentation<C>) -> Result<bool, AlgebraError> {
    if a.roster != b.roster {
        return Err(AlgebraError::RosterMismatch);
    }
    Ok(relations_span_equal(&a.relations, &b.relations))
}

/// Mutual containment of two spans of polynomials.
pub fn relations_span_equal<C: Field>(a: &[NCPoly<C>], b: &[NCPoly<C>]) -> bool {
    let sa = span_of(a);
    let sb = span_of(b);
    sa.rank() == sb.rank() && b.iter().all(|r| sa.contains(r)) && a.iter().all(|r| sb.contains(r))
}

/// Multiplicative extension of `images` (indexed by source roster position).
pub fn substitute_generators<C: Field>(p: &NCPoly<C>, images: &[Option<NCPoly<C>>]) -> Result<NCPoly<C>, AlgebraError> {
    let mut out = NCPoly::zero();
    for (m, c) in p.terms() {
        let mut acc = NCPoly::constant(c.clone());
        for &g in m.letters() {
            let img = images
                .get(g as usize)
                .and_then(Option::as_ref)
                .ok_or(AlgebraError::MissingImage(g as usize))?;
            acc = acc.mul(img);
        }
        out = out.add(&acc);
    }
    Ok(out)
}
