//! Degree-bounded ideal computations.
//!
//! The ideal of a quadratic presentation is homogeneous, so its degree-`d`
//! part can be computed one degree at a time. Starting from the oriented
//! quadratic rules, every overlap of two rule heads of total length `d` gives
//! an S-polynomial; the ones that do not rewrite to zero are echelonized and
//! become new rules of degree `d`. After processing degrees `3..=D` every
//! element of the ideal of degree at most `D` rewrites to zero, so membership
//! is decided by the normal form and the degree-`d` dimension of the quotient
//! is the number of words that contain no rule head.
//!
//! Completion runs without certificates. When a membership certificate needs
//! a rule produced by completion, the completion is repeated once with
//! certificate tracking.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::field::Field;

use super::linear::{Echelon, MembershipCertificate};
use super::poly::{NCPoly, Word};
use super::presentation::Presentation;
use super::rewrite::{orient_relations, RewriteSystem, Rule};
use super::AlgebraError;

/// Rules added while completing degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionStep {
    pub degree: usize,
    pub overlaps: usize,
    pub added: usize,
}

#[derive(Clone, Debug)]
pub struct Membership<C> {
    pub member: bool,
    /// Present when `member`; replays to the queried polynomial.
    pub certificate: Option<MembershipCertificate<C>>,
    /// Normal form of the query; zero exactly when `member`.
    pub residue: NCPoly<C>,
}

#[derive(Clone, Debug)]
pub struct IdealEngine<C> {
    relations: Vec<NCPoly<C>>,
    generators: usize,
    bound: usize,
    quadratic: RewriteSystem<C>,
    rules: RewriteSystem<C>,
    steps: Vec<CompletionStep>,
    certified: OnceLock<RewriteSystem<C>>,
}

impl<C: Field> IdealEngine<C> {
    /// Orients the relations and completes the rule set through degree `bound`.
    pub fn new(p: &Presentation<C>, bound: usize) -> Result<Self, AlgebraError> {
        let rules = orient_relations(p)?;
        Ok(Self::complete(p, rules, bound))
    }

    /// Like [`IdealEngine::new`] but ignores the presentation's exchange
    /// requirements.
    pub fn new_unchecked(p: &Presentation<C>, bound: usize) -> Result<Self, AlgebraError> {
        let mut relaxed = p.clone();
        relaxed.exchange.clear();
        let rules = orient_relations(&relaxed)?;
        Ok(Self::complete(p, rules, bound))
    }

    fn complete(p: &Presentation<C>, quadratic: RewriteSystem<C>, bound: usize) -> Self {
        let (rules, steps) = complete_rules(quadratic.clone(), bound, false);
        IdealEngine {
            relations: p.relations.clone(),
            generators: p.roster.len(),
            bound,
            quadratic,
            rules,
            steps,
            certified: OnceLock::new(),
        }
    }

    /// The completed rules with a certificate on every rule.
    fn certified_rules(&self) -> &RewriteSystem<C> {
        if self.quadratic_rules_complete() {
            return &self.rules;
        }
        self.certified
            .get_or_init(|| complete_rules(self.quadratic.clone(), self.bound, true).0)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn rules(&self) -> &RewriteSystem<C> {
        &self.rules
    }

    pub fn relations(&self) -> &[NCPoly<C>] {
        &self.relations
    }

    pub fn completion_steps(&self) -> &[CompletionStep] {
        &self.steps
    }

    /// True when the oriented quadratic rules needed no completion up to the bound.
    pub fn quadratic_rules_complete(&self) -> bool {
        self.rules.len() == self.quadratic.len()
    }

    fn check_degree(&self, p: &NCPoly<C>) -> Result<(), AlgebraError> {
        let d = p.degree().unwrap_or(0);
        if d > self.bound {
            return Err(AlgebraError::DegreeAboveBound {
                degree: d,
                bound: self.bound,
            });
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &NCPoly<C>) -> Result<NCPoly<C>, AlgebraError> {
        self.check_degree(p)?;
        Ok(self.rules.normal_form(p))
    }

    pub fn membership(&self, p: &NCPoly<C>) -> Result<Membership<C>, AlgebraError> {
        self.check_degree(p)?;
        let residue = self.rules.normal_form(p);
        if !residue.is_zero() {
            return Ok(Membership {
                member: false,
                certificate: None,
                residue,
            });
        }
        let (residue, cert) = self.certified_rules().normal_form_tracked(p);
        debug_assert!(residue.is_zero());
        Ok(Membership {
            member: true,
            certificate: Some(cert),
            residue,
        })
    }

    /// Dimensions of the graded components of the quotient, degrees `0..=bound`.
    pub fn hilbert_dims(&self) -> Vec<usize> {
        let mut dims = vec![1];
        let mut level: Vec<Word> = vec![Word::new()];
        for _ in 1..=self.bound {
            let mut next = Vec::new();
            for w in &level {
                for g in 0..self.generators {
                    let mut x = w.clone();
                    x.push(g as u16);
                    if !self.rules.has_head_suffix(&x) {
                        next.push(x);
                    }
                }
            }
            dims.push(next.len());
            level = next;
        }
        dims
    }
}

fn overlaps<C: Field>(rules: &RewriteSystem<C>, d: usize) -> Vec<(usize, usize, usize)> {
    let rules = rules.rules();
    let mut by_prefix: HashMap<&[u16], Vec<usize>> = HashMap::new();
    for (bi, b) in rules.iter().enumerate() {
        let lb = b.head.letters();
        for k in 1..lb.len() {
            by_prefix.entry(&lb[..k]).or_default().push(bi);
        }
    }
    let mut out = Vec::new();
    for (ai, a) in rules.iter().enumerate() {
        let la = a.head.letters();
        for k in 1..la.len() {
            if let Some(bs) = by_prefix.get(&la[la.len() - k..]) {
                for &bi in bs {
                    if la.len() + rules[bi].head.degree() - k == d {
                        out.push((ai, bi, k));
                    }
                }
            }
        }
    }
    out
}

/// `poly_a · tail - head · poly_b` for heads overlapping in `k` letters.
fn s_poly<C: Field>(
    rules: &RewriteSystem<C>,
    (a, b, k): (usize, usize, usize),
    tracked: bool,
) -> (NCPoly<C>, MembershipCertificate<C>) {
    let (ra, rb) = (&rules.rules()[a], &rules.rules()[b]);
    let la = ra.head.letters();
    let lb = rb.head.letters();
    let tail = &lb[k..];
    let head = &la[..la.len() - k];
    let mut s = ra.poly.sandwich(&[], tail);
    s.add_scaled_sandwich(&C::one().negated(), head, &rb.poly, &[]);
    let mut cert = MembershipCertificate::new();
    if tracked {
        cert.add_scaled_sandwich(&C::one(), &[], &ra.cert, tail);
        cert.add_scaled_sandwich(&C::one().negated(), head, &rb.cert, &[]);
    }
    (s, cert)
}

fn complete_degree<C: Field>(rules: &mut RewriteSystem<C>, d: usize, tracked: bool) -> CompletionStep {
    let found = overlaps(rules, d);
    let pending: Vec<(usize, usize, usize)> = found
        .par_iter()
        .filter(|&&o| !rules.normal_form(&s_poly(rules, o, false).0).is_zero())
        .cloned()
        .collect();
    let mut ech = Echelon::new();
    for o in pending {
        let (s, mut cert) = s_poly(rules, o, tracked);
        if tracked {
            let (nf, red) = rules.normal_form_tracked(&s);
            cert.add_scaled_sandwich(&C::one().negated(), &[], &red, &[]);
            ech.insert(nf, Some(cert));
        } else {
            ech.insert(rules.normal_form(&s), None);
        }
    }
    ech.interreduce();
    let added = ech.rank();
    for row in ech.into_rows() {
        rules.push(Rule {
            head: row.poly.leading().unwrap().0.clone(),
            poly: row.poly,
            cert: row.cert.unwrap_or_default(),
        });
    }
    CompletionStep {
        degree: d,
        overlaps: found.len(),
        added,
    }
}

fn complete_rules<C: Field>(
    mut rules: RewriteSystem<C>,
    bound: usize,
    tracked: bool,
) -> (RewriteSystem<C>, Vec<CompletionStep>) {
    let steps = (3..=bound).map(|d| complete_degree(&mut rules, d, tracked)).collect();
    (rules, steps)
}

/// Decides `p ∈ I` up to degree `bound`, with a certificate when it is.
pub fn ideal_membership<C: Field>(
    p: &NCPoly<C>,
    presentation: &Presentation<C>,
    bound: usize,
) -> Result<Membership<C>, AlgebraError> {
    IdealEngine::new_unchecked(presentation, bound)?.membership(p)
}

/// Quotient dimensions in degrees `0..=bound`.
pub fn hilbert_dims<C: Field>(presentation: &Presentation<C>, bound: usize) -> Result<Vec<usize>, AlgebraError> {
    Ok(IdealEngine::new_unchecked(presentation, bound)?.hilbert_dims())
}
