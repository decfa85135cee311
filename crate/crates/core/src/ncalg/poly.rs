use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::field::Field;

/// Raw generator word; letters are roster positions.
pub type Word = SmallVec<[u16; 8]>;

/// A word in the generators, ordered degree-lexicographically: longer words
/// are larger, equal lengths compare letter by letter with roster position as
/// precedence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Word);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Word::new())
    }

    pub fn letter(g: usize) -> Self {
        Monomial(SmallVec::from_slice(&[g as u16]))
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Monomial(letters.iter().map(|&g| g as u16).collect())
    }

    pub fn from_word(word: Word) -> Self {
        Monomial(word)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Monomial(w)
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &[u16], right: &[u16]) -> Monomial {
        let mut w = Word::with_capacity(left.len() + self.0.len() + right.len());
        w.extend_from_slice(left);
        w.extend_from_slice(&self.0);
        w.extend_from_slice(right);
        Monomial(w)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Noncommutative polynomial: a finite map from words to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Default for NCPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> NCPoly<C> {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn generator(g: usize) -> Self {
        Self::term(C::one(), Monomial::letter(g))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        NCPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    /// Highest degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().plus(c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += s * left * other * right`.
    pub fn add_scaled_sandwich(&mut self, s: &C, left: &[u16], other: &Self, right: &[u16]) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.sandwich(left, right), &c.times(s));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.negated());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.times(s))).collect(),
        }
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.concat(mb), &ca.times(cb));
            }
        }
        out
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &[u16], right: &[u16]) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.sandwich(left, right), c.clone()))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Monomial::degree).collect();
        d.dedup();
        d
    }

    /// Applies `f` to each coefficient; zero images are dropped.
    pub fn try_map_coeffs<D: Field, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<NCPoly<D>, E> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(NCPoly { terms })
    }

    /// Renames letters through `map` (old roster position -> new position).
    pub fn relabel(&self, map: &[usize]) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let w: Word = m.letters().iter().map(|&g| map[g as usize] as u16).collect();
                    (Monomial::from_word(w), c.clone())
                })
                .collect(),
        }
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub(crate) fn from_map(terms: BTreeMap<Monomial, C>) -> Self {
        NCPoly { terms }
    }

    /// Largest monomial strictly below `bound`.
    pub(crate) fn prev_below(&self, bound: &Monomial) -> Option<Monomial> {
        self.terms.range(..bound.clone()).next_back().map(|(m, _)| m.clone())
    }
}

impl<C: fmt::Debug> fmt::Debug for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = NCPoly<BigRational>;

    #[test]
    fn deglex_order() {
        let a = Monomial::from_letters(&[1, 0]);
        let b = Monomial::from_letters(&[0, 1]);
        let c = Monomial::from_letters(&[0, 0, 0]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::letter(3) < b);
    }

    #[test]
    fn multiplication_is_concatenation() {
        let x = P::generator(0);
        let y = P::generator(1);
        let z = P::generator(2);
        // x(y+z) = xy + xz
        let lhs = x.mul(&y.add(&z));
        let rhs = x.mul(&y).add(&x.mul(&z));
        assert_eq!(lhs, rhs);
        assert_eq!(P::one().mul(&lhs), lhs);
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        assert_ne!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = P::generator(0);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.scale(&BigRational::from_i64(0)), P::zero());
    }
}
