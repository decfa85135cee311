//! Sparse exact linear algebra on polynomials, with optional bookkeeping of
//! how each row was assembled from the defining relations.

use std::collections::{BTreeMap, HashMap};

use crate::field::Field;

use super::poly::{Monomial, NCPoly};

/// A sum `Σ c · left · r_k · right` over relations `r_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MembershipCertificate<C> {
    terms: BTreeMap<(Monomial, usize, Monomial), C>,
}

impl<C: Field> Default for MembershipCertificate<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Field> MembershipCertificate<C> {
    pub fn new() -> Self {
        MembershipCertificate { terms: BTreeMap::new() }
    }

    /// `1 · r_k · 1`.
    pub fn relation(k: usize) -> Self {
        let mut c = Self::new();
        c.add(Monomial::one(), k, Monomial::one(), &C::one());
        c
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, usize, &Monomial, &C)> {
        self.terms.iter().map(|((l, k, r), c)| (l, *k, r, c))
    }

    pub fn add(&mut self, left: Monomial, relation: usize, right: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        let key = (left, relation, right);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = v.plus(c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// `self += s · left · other · right`.
    pub fn add_scaled_sandwich(&mut self, s: &C, left: &[u16], other: &Self, right: &[u16]) {
        if s.is_zero() {
            return;
        }
        let lm = Monomial::from_word(left.into());
        let rm = Monomial::from_word(right.into());
        for ((l, k, r), c) in &other.terms {
            self.add(lm.concat(l), *k, r.concat(&rm), &c.times(s));
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::new();
        out.add_scaled_sandwich(s, &[], self, &[]);
        out
    }

    /// Sums the certified combination.
    pub fn replay(&self, relations: &[NCPoly<C>]) -> NCPoly<C> {
        let mut out = NCPoly::zero();
        for ((l, k, r), c) in &self.terms {
            out.add_scaled_sandwich(c, l.letters(), &relations[*k], r.letters());
        }
        out
    }

    pub fn try_map_coeffs<D: Field, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<MembershipCertificate<D>, E> {
        let mut out = MembershipCertificate::new();
        for ((l, k, r), c) in &self.terms {
            out.add(l.clone(), *k, r.clone(), &f(c)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct EchelonRow<C> {
    /// Monic; its leading monomial is the pivot.
    pub poly: NCPoly<C>,
    pub cert: Option<MembershipCertificate<C>>,
}

/// Row-echelon basis of a span of polynomials under the monomial order.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    rows: Vec<EchelonRow<C>>,
    pivots: HashMap<Monomial, usize>,
}

impl<C: Field> Default for Echelon<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Field> Echelon<C> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[EchelonRow<C>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<EchelonRow<C>> {
        self.rows
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.pivots.contains_key(m)
    }

    /// Fully reduces `p` against the rows. The certificate, when tracked,
    /// follows the same row operations.
    pub fn reduce(
        &self,
        mut p: NCPoly<C>,
        mut cert: Option<MembershipCertificate<C>>,
    ) -> (NCPoly<C>, Option<MembershipCertificate<C>>) {
        let mut cursor = p.leading().map(|(m, _)| m.clone());
        while let Some(m) = cursor {
            if let Some(&idx) = self.pivots.get(&m) {
                let c = p.coeff(&m).negated();
                let row = &self.rows[idx];
                p.add_scaled_sandwich(&c, &[], &row.poly, &[]);
                if let (Some(cert), Some(rc)) = (cert.as_mut(), row.cert.as_ref()) {
                    cert.add_scaled_sandwich(&c, &[], rc, &[]);
                }
            }
            cursor = p.prev_below(&m);
        }
        (p, cert)
    }

    pub fn contains(&self, p: &NCPoly<C>) -> bool {
        self.reduce(p.clone(), None).0.is_zero()
    }

    /// Adds `p` to the span; returns the new row index when `p` was independent.
    pub fn insert(&mut self, p: NCPoly<C>, cert: Option<MembershipCertificate<C>>) -> Option<usize> {
        let (r, cert) = self.reduce(p, cert);
        let (lead, lc) = match r.leading() {
            None => return None,
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let inv = lc.inverse().expect("nonzero leading coefficient");
        let row = EchelonRow {
            poly: r.scale(&inv),
            cert: cert.map(|c| c.scale(&inv)),
        };
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        Some(self.rows.len() - 1)
    }

    /// Back-substitutes so no row contains another row's pivot, and sorts
    /// rows by ascending pivot.
    pub fn interreduce(&mut self) {
        let mut rows = std::mem::take(&mut self.rows);
        rows.sort_by(|a, b| a.poly.leading().unwrap().0.cmp(b.poly.leading().unwrap().0));
        self.pivots.clear();
        for row in rows {
            let lead = row.poly.leading().unwrap().0.clone();
            let lc = row.poly.leading().unwrap().1.clone();
            // reduce the tail only; earlier rows have smaller pivots
            let mut tail = row.poly.clone();
            tail.add_term(lead.clone(), &lc.negated());
            let (tail, cert) = self.reduce(tail, row.cert);
            let mut poly = tail;
            poly.add_term(lead.clone(), &lc);
            self.pivots.insert(lead, self.rows.len());
            self.rows.push(EchelonRow { poly, cert });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = NCPoly<BigRational>;

    fn w(l: &[usize]) -> Monomial {
        Monomial::from_letters(l)
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new();
        let a = P::from_terms([
            (w(&[1, 0]), BigRational::from_i64(2)),
            (w(&[0, 1]), BigRational::from_i64(-2)),
        ]);
        let b = P::from_terms([
            (w(&[1, 1]), BigRational::from_i64(1)),
            (w(&[0, 0]), BigRational::from_i64(1)),
        ]);
        assert!(e.insert(a.clone(), None).is_some());
        assert!(e.insert(a.scale(&BigRational::from_i64(3)), None).is_none());
        assert!(e.insert(b.clone(), None).is_some());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&a.add(&b)));
        assert!(!e.contains(&P::generator(0)));
    }

    #[test]
    fn certificates_follow_row_operations() {
        let rels = vec![
            P::from_terms([
                (w(&[1, 0]), BigRational::from_i64(1)),
                (w(&[0, 1]), BigRational::from_i64(-1)),
            ]),
            P::from_terms([
                (w(&[1, 0]), BigRational::from_i64(1)),
                (w(&[0, 0]), BigRational::from_i64(-1)),
            ]),
        ];
        let mut e = Echelon::new();
        for (k, r) in rels.iter().enumerate() {
            e.insert(r.clone(), Some(MembershipCertificate::relation(k)));
        }
        e.interreduce();
        for row in e.rows() {
            assert_eq!(row.cert.as_ref().unwrap().replay(&rels), row.poly);
        }
    }
}
