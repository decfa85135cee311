//! Rewrite rules `head -> lower terms` and normal forms.

use std::collections::HashMap;

use crate::field::Field;

use super::linear::{Echelon, MembershipCertificate};
use super::poly::{Monomial, NCPoly, Word};
use super::presentation::Presentation;
use super::AlgebraError;

/// `head -> head - poly`; `poly` is monic with leading monomial `head`.
#[derive(Clone, Debug)]
pub struct Rule<C> {
    pub head: Monomial,
    pub poly: NCPoly<C>,
    /// Expresses `poly` through the presentation's relations.
    pub cert: MembershipCertificate<C>,
}

impl<C: Field> Rule<C> {
    /// Right-hand side of the rule.
    pub fn replacement(&self) -> NCPoly<C> {
        let mut r = self.poly.neg();
        r.add_term(self.head.clone(), &C::one());
        r
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<C> {
    rules: Vec<Rule<C>>,
    lookup: HashMap<Word, usize>,
    /// Distinct head lengths, longest first.
    lengths: Vec<usize>,
}

impl<C: Field> Default for RewriteSystem<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Field> RewriteSystem<C> {
    pub fn new() -> Self {
        RewriteSystem {
            rules: Vec::new(),
            lookup: HashMap::new(),
            lengths: Vec::new(),
        }
    }

    pub fn rules(&self) -> &[Rule<C>] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn push(&mut self, rule: Rule<C>) {
        let d = rule.head.degree();
        self.lookup.insert(rule.head.word().clone(), self.rules.len());
        self.rules.push(rule);
        if !self.lengths.contains(&d) {
            self.lengths.push(d);
            self.lengths.sort_unstable_by(|a, b| b.cmp(a));
        }
    }

    pub fn rule_for(&self, head: &[u16]) -> Option<&Rule<C>> {
        self.lookup.get(head).map(|&i| &self.rules[i])
    }

    /// Leftmost rule head inside `w`, preferring the longest at a given start.
    pub fn find_leftmost(&self, w: &[u16]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &len in &self.lengths {
                if start + len <= w.len() {
                    if let Some(&idx) = self.lookup.get(&w[start..start + len]) {
                        return Some((start, idx));
                    }
                }
            }
        }
        None
    }

    /// True when some head ends exactly at the last letter of `w`.
    pub fn has_head_suffix(&self, w: &[u16]) -> bool {
        self.lengths
            .iter()
            .any(|&len| len <= w.len() && self.lookup.contains_key(&w[w.len() - len..]))
    }

    pub fn is_normal(&self, w: &[u16]) -> bool {
        self.find_leftmost(w).is_none()
    }

    fn reduce(&self, p: &NCPoly<C>, mut cert: Option<&mut MembershipCertificate<C>>) -> NCPoly<C> {
        let mut work = p.clone().into_terms();
        let mut out = std::collections::BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_leftmost(w.letters()) {
                None => {
                    out.insert(w, c);
                }
                Some((start, idx)) => {
                    let rule = &self.rules[idx];
                    let letters = w.letters();
                    let left = &letters[..start];
                    let right = &letters[start + rule.head.degree()..];
                    let neg = c.negated();
                    for (m, rc) in rule.poly.terms() {
                        if *m == rule.head {
                            continue;
                        }
                        let key = m.sandwich(left, right);
                        let add = rc.times(&neg);
                        match work.get_mut(&key) {
                            Some(v) => {
                                let s = v.plus(&add);
                                if s.is_zero() {
                                    work.remove(&key);
                                } else {
                                    *v = s;
                                }
                            }
                            None => {
                                work.insert(key, add);
                            }
                        }
                    }
                    if let Some(cert) = cert.as_deref_mut() {
                        cert.add_scaled_sandwich(&c, left, &rule.cert, right);
                    }
                }
            }
        }
        NCPoly::from_map(out)
    }

    /// Rewrites every reducible term (largest first, leftmost occurrence)
    /// until no head occurs.
    pub fn normal_form(&self, p: &NCPoly<C>) -> NCPoly<C> {
        self.reduce(p, None)
    }

    /// Normal form together with a certificate for `p - normal_form(p)`.
    pub fn normal_form_tracked(&self, p: &NCPoly<C>) -> (NCPoly<C>, MembershipCertificate<C>) {
        let mut cert = MembershipCertificate::new();
        let nf = self.reduce(p, Some(&mut cert));
        (nf, cert)
    }
}

/// Solves the quadratic relations for their largest monomials.
///
/// The result is the reduced echelon basis of the relation span: heads are
/// distinct, each head exceeds every monomial on its right-hand side, and no
/// right-hand side contains another head. Fails when a word required by the
/// presentation's exchange pairs is not a head.
pub fn orient_relations<C: Field>(p: &Presentation<C>) -> Result<RewriteSystem<C>, AlgebraError> {
    p.validate()?;
    let mut ech = Echelon::new();
    for (k, r) in p.relations.iter().enumerate() {
        ech.insert(r.clone(), Some(MembershipCertificate::relation(k)));
    }
    ech.interreduce();
    let mut sys = RewriteSystem::new();
    for row in ech.into_rows() {
        sys.push(Rule {
            head: row.poly.leading().unwrap().0.clone(),
            poly: row.poly,
            cert: row.cert.unwrap(),
        });
    }
    for (upper, lower) in &p.exchange {
        let up = p
            .copy_matrix(upper)
            .ok_or_else(|| AlgebraError::UnknownGenerator(format!("copy {upper}")))?;
        let lo = p
            .copy_matrix(lower)
            .ok_or_else(|| AlgebraError::UnknownGenerator(format!("copy {lower}")))?;
        for &x in &up {
            for &y in &lo {
                let w = Monomial::from_letters(&[x, y]);
                if sys.rule_for(w.letters()).is_none() {
                    return Err(AlgebraError::Unorientable {
                        word: p.format_monomial(&w),
                    });
                }
            }
        }
    }
    Ok(sys)
}

/// Normal form of `p` under `rules`, refusing inputs above `degree_cap`.
pub fn normal_form<C: Field>(
    p: &NCPoly<C>,
    rules: &RewriteSystem<C>,
    degree_cap: usize,
) -> Result<NCPoly<C>, AlgebraError> {
    let d = p.degree().unwrap_or(0);
    if d > degree_cap {
        return Err(AlgebraError::DegreeAboveBound {
            degree: d,
            bound: degree_cap,
        });
    }
    Ok(rules.normal_form(p))
}
