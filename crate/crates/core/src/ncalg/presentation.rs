use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::qscalar::{tokenize, ExprValue, Parser, RatFunc, ScalarError};
use crate::rmat::INDEX_CONVENTION;

use super::poly::{Monomial, NCPoly};
use super::AlgebraError;

/// Matrix generator `copy[row,col]` (1-based row and column).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId {
    pub copy: String,
    pub row: usize,
    pub col: usize,
}

impl GenId {
    pub fn new(copy: impl Into<String>, row: usize, col: usize) -> Self {
        GenId {
            copy: copy.into(),
            row,
            col,
        }
    }

    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let bad = || AlgebraError::BadGenerator(text.to_string());
        let (label, rest) = text.trim().split_once('[').ok_or_else(bad)?;
        let inner = rest.strip_suffix(']').ok_or_else(bad)?;
        let (r, c) = inner.split_once(',').ok_or_else(bad)?;
        let label = label.trim();
        if label.is_empty() || label == "q" {
            return Err(bad());
        }
        Ok(GenId {
            copy: label.to_string(),
            row: r.trim().parse().map_err(|_| bad())?,
            col: c.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.copy, self.row, self.col)
    }
}

/// Contiguous run of relations that came from one matrix relation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationBlock {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

impl RelationBlock {
    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

/// Generators, quadratic relations and the monomial order.
///
/// The order is degree-lexicographic with generator precedence given by the
/// roster (earlier = smaller). `exchange` lists copy pairs `(upper, lower)`
/// for which every word `upper·lower` must become a rewrite-rule head.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation<C = RatFunc> {
    pub name: String,
    pub n: usize,
    pub roster: Vec<GenId>,
    pub relations: Vec<NCPoly<C>>,
    pub blocks: Vec<RelationBlock>,
    pub exchange: Vec<(String, String)>,
}

impl<C: Field> Presentation<C> {
    /// Free algebra on the roster.
    pub fn free(name: impl Into<String>, n: usize, roster: Vec<GenId>) -> Self {
        Presentation {
            name: name.into(),
            n,
            roster,
            relations: Vec::new(),
            blocks: Vec::new(),
            exchange: Vec::new(),
        }
    }

    pub fn index_of(&self, g: &GenId) -> Option<usize> {
        self.roster.iter().position(|x| x == g)
    }

    /// Copy labels in roster order, without repeats.
    pub fn copies(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for g in &self.roster {
            if !out.contains(&g.copy) {
                out.push(g.copy.clone());
            }
        }
        out
    }

    /// Roster positions of the `n x n` generator matrix of `copy`, row-major.
    pub fn copy_matrix(&self, copy: &str) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                out.push(self.index_of(&GenId::new(copy, i, j))?);
            }
        }
        Some(out)
    }

    pub fn block(&self, name: &str) -> Option<&RelationBlock> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Checks roster validity and that every relation is quadratic.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.roster.len() > u16::MAX as usize {
            return Err(AlgebraError::RosterTooLarge(self.roster.len()));
        }
        for g in &self.roster {
            if g.row == 0 || g.col == 0 || g.row > self.n || g.col > self.n {
                return Err(AlgebraError::BadGenerator(g.to_string()));
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            if !r.is_homogeneous_of(2) {
                return Err(AlgebraError::NotQuadratic(k));
            }
            if r.terms()
                .any(|(m, _)| m.letters().iter().any(|&g| g as usize >= self.roster.len()))
            {
                return Err(AlgebraError::UnknownGenerator(format!("letter in relation {k}")));
            }
        }
        Ok(())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.letters()
            .iter()
            .map(|&g| self.roster[g as usize].to_string())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Prints terms leading-first, e.g. `u[1,2]*u[1,1] - q^2 * u[1,1]*u[1,2]`.
    pub fn format_poly(&self, p: &NCPoly<C>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in p.terms().rev().enumerate() {
            let term = format_term(&c.to_string(), c, &self.format_monomial(m), m.is_one());
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }

    pub fn map_coeffs<D: Field, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Presentation<D>, E> {
        Ok(Presentation {
            name: self.name.clone(),
            n: self.n,
            roster: self.roster.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| r.try_map_coeffs(&f))
                .collect::<Result<_, _>>()?,
            blocks: self.blocks.clone(),
            exchange: self.exchange.clone(),
        })
    }

    /// Same presentation with one block of relations removed.
    pub fn without_block(&self, name: &str) -> Self {
        let mut out = self.clone();
        let Some(b) = self.block(name).cloned() else {
            return out;
        };
        out.relations.drain(b.range());
        let width = b.end - b.start;
        out.blocks.retain(|x| x.name != name);
        for x in out.blocks.iter_mut() {
            if x.start >= b.end {
                x.start -= width;
                x.end -= width;
            }
        }
        out
    }
}

fn format_term<C: Field>(coeff: &str, c: &C, word: &str, is_unit: bool) -> String {
    let simple = !coeff.contains(' ');
    if is_unit {
        return if simple {
            coeff.to_string()
        } else {
            format!("({coeff})")
        };
    }
    if c.is_one() {
        word.to_string()
    } else if c.negated().is_one() {
        format!("-{word}")
    } else if simple {
        format!("{coeff} * {word}")
    } else {
        format!("({coeff}) * {word}")
    }
}

struct PolyCtx {
    lookup: HashMap<GenId, usize>,
}

struct ParsedPoly(NCPoly<RatFunc>);

impl ExprValue for ParsedPoly {
    type Error = AlgebraError;
    type Ctx = PolyCtx;

    fn from_integer(digits: &str) -> Result<Self, AlgebraError> {
        let n: BigInt = digits.parse().map_err(|_| ScalarError::Syntax {
            pos: 0,
            msg: format!("bad integer {digits}"),
        })?;
        Ok(ParsedPoly(NCPoly::constant(RatFunc::from_rational(
            BigRational::from_integer(n),
        ))))
    }

    fn parameter() -> Self {
        ParsedPoly(NCPoly::constant(RatFunc::q_pow(1)))
    }

    fn generator(ctx: &Self::Ctx, label: &str, row: usize, col: usize) -> Result<Self, AlgebraError> {
        let g = GenId::new(label, row, col);
        match ctx.lookup.get(&g) {
            Some(&idx) => Ok(ParsedPoly(NCPoly::generator(idx))),
            None => Err(AlgebraError::UnknownGenerator(g.to_string())),
        }
    }

    fn add(self, rhs: Self) -> Self {
        ParsedPoly(self.0.add(&rhs.0))
    }

    fn sub(self, rhs: Self) -> Self {
        ParsedPoly(self.0.sub(&rhs.0))
    }

    fn mul(self, rhs: Self) -> Self {
        ParsedPoly(self.0.mul(&rhs.0))
    }

    fn div(self, rhs: Self) -> Result<Self, AlgebraError> {
        let s = scalar_value(&rhs.0).ok_or(AlgebraError::NonScalarDivisor)?;
        let inv = s.recip()?;
        Ok(ParsedPoly(self.0.scale(&inv)))
    }

    fn neg(self) -> Self {
        ParsedPoly(self.0.neg())
    }

    fn pow(self, exp: i64) -> Result<Self, AlgebraError> {
        if let Some(s) = scalar_value(&self.0) {
            return Ok(ParsedPoly(NCPoly::constant(s.pow(exp)?)));
        }
        if exp < 0 {
            return Err(AlgebraError::NonScalarDivisor);
        }
        let mut acc = NCPoly::one();
        for _ in 0..exp {
            acc = acc.mul(&self.0);
        }
        Ok(ParsedPoly(acc))
    }
}

fn scalar_value(p: &NCPoly<RatFunc>) -> Option<RatFunc> {
    if p.is_zero() {
        return Some(RatFunc::zero());
    }
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if m.is_one() => Some((*c).clone()),
        _ => None,
    }
}

impl Presentation<RatFunc> {
    /// Parses the textual polynomial syntax against this roster.
    pub fn parse_poly(&self, text: &str) -> Result<NCPoly<RatFunc>, AlgebraError> {
        let ctx = PolyCtx {
            lookup: self.roster.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect(),
        };
        let tokens = tokenize(text)?;
        Ok(Parser::<ParsedPoly>::new(&tokens, text.len(), &ctx).parse_all()?.0)
    }

    pub fn to_document(&self) -> PresentationDocument {
        PresentationDocument {
            convention: INDEX_CONVENTION.to_string(),
            order: "degree-lexicographic; generator precedence = roster order (first is smallest)".to_string(),
            name: self.name.clone(),
            n: self.n,
            roster: self.roster.iter().map(ToString::to_string).collect(),
            exchange: self.exchange.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
            blocks: self.blocks.clone(),
            relations: self.relations.iter().map(|r| self.format_poly(r)).collect(),
        }
    }

    pub fn save(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn load(text: &str) -> Result<Self, AlgebraError> {
        let doc: PresentationDocument =
            serde_json::from_str(text).map_err(|e| AlgebraError::Document(e.to_string()))?;
        doc.build()
    }
}

/// Serialized presentation: roster plus relations in the textual syntax.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationDocument {
    pub convention: String,
    pub order: String,
    pub name: String,
    pub n: usize,
    pub roster: Vec<String>,
    pub exchange: Vec<[String; 2]>,
    pub blocks: Vec<RelationBlock>,
    pub relations: Vec<String>,
}

impl PresentationDocument {
    pub fn build(&self) -> Result<Presentation<RatFunc>, AlgebraError> {
        let roster = self
            .roster
            .iter()
            .map(|s| GenId::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut p = Presentation::free(self.name.clone(), self.n, roster);
        p.exchange = self.exchange.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        p.blocks = self.blocks.clone();
        p.relations = self
            .relations
            .iter()
            .map(|r| p.parse_poly(r))
            .collect::<Result<_, _>>()?;
        p.validate()?;
        Ok(p)
    }
}
