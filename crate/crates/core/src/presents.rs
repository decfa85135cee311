//! Builders that expand matrix relations into quadratic presentations.
//!
//! Every matrix relation lives on the two-leg space `V ⊗ V`: a generator
//! matrix `u` enters as `u_1 = u ⊗ 1` (entries `u^i_k δ^j_l`) or
//! `u_2 = 1 ⊗ u` (entries `δ^i_k u^j_l`), and `R_21` comes from
//! [`leg_embed`] with legs `(2,1)`. The `N^4` entries of `lhs - rhs` are
//! enumerated row-major and the linearly dependent ones are dropped.

use serde::Serialize;
use thiserror::Error;

use crate::ncalg::{hilbert_dims, AlgebraError, Echelon, GenId, NCPoly, Presentation, RelationBlock};
use crate::qscalar::RatFunc;
use crate::rmat::{invert, leg_embed, LegMap, QMatrix, RMatrix, RMatrixError};

type Poly = NCPoly<RatFunc>;

#[derive(Debug, Error)]
pub enum PresentError {
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("a chain needs at least one copy")]
    EmptyChain,
    #[error("base presentation is not a matrix presentation of size {0}")]
    NotMatrixPresentation(usize),
}

/// Square matrix with noncommutative polynomial entries.
#[derive(Clone, Debug)]
struct PolyMatrix {
    dim: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        PolyMatrix { dim, entries }
    }

    fn scalar(m: &QMatrix) -> Self {
        Self::from_fn(m.dim(), |r, c| {
            let v = m.get(r, c);
            if v.is_zero() {
                Poly::zero()
            } else {
                Poly::constant(v.clone())
            }
        })
    }

    fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.dim + c]
    }

    fn mul(&self, other: &Self) -> Self {
        Self::from_fn(self.dim, |r, c| {
            let mut acc = Poly::zero();
            for k in 0..self.dim {
                let (a, b) = (self.get(r, k), other.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c).sub(other.get(r, c)))
    }
}

/// `u ⊗ 1` for the generator matrix at roster positions `gens` (row-major).
fn first_leg(n: usize, gens: &[usize]) -> PolyMatrix {
    PolyMatrix::from_fn(n * n, |r, c| {
        let (i, j, k, l) = (r / n, r % n, c / n, c % n);
        if j == l {
            Poly::generator(gens[i * n + k])
        } else {
            Poly::zero()
        }
    })
}

/// `1 ⊗ u`.
fn second_leg(n: usize, gens: &[usize]) -> PolyMatrix {
    PolyMatrix::from_fn(n * n, |r, c| {
        let (i, j, k, l) = (r / n, r % n, c / n, c % n);
        if i == k {
            Poly::generator(gens[j * n + l])
        } else {
            Poly::zero()
        }
    })
}

fn matrix_roster(copy: &str, n: usize) -> Vec<GenId> {
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| GenId::new(copy, i, j)))
        .collect()
}

struct Builder {
    p: Presentation,
    span: Echelon<RatFunc>,
}

impl Builder {
    fn new(name: &str, n: usize, roster: Vec<GenId>) -> Self {
        Builder {
            p: Presentation::free(name, n, roster),
            span: Echelon::new(),
        }
    }

    /// Appends the independent entries of `m` as one block.
    fn block(&mut self, name: String, m: &PolyMatrix) {
        let start = self.p.relations.len();
        for e in &m.entries {
            if !e.is_zero() && self.span.insert(e.clone(), None).is_some() {
                self.p.relations.push(e.clone());
            }
        }
        let end = self.p.relations.len();
        self.p.blocks.push(RelationBlock { name, start, end });
    }

    fn gens(&self, copy: &str) -> Vec<usize> {
        self.p.copy_matrix(copy).expect("copy in roster")
    }
}

struct Operators {
    r: PolyMatrix,
    r21: PolyMatrix,
    r_inv: PolyMatrix,
    r21_inv: PolyMatrix,
}

impl Operators {
    fn new(r: &RMatrix) -> Result<Self, PresentError> {
        let inv = invert(r)?;
        Ok(Operators {
            r: PolyMatrix::scalar(&r.to_matrix()),
            r21: PolyMatrix::scalar(&leg_embed(r, LegMap::legs(2, 1, 2))),
            r_inv: PolyMatrix::scalar(&inv.to_matrix()),
            r21_inv: PolyMatrix::scalar(&leg_embed(&inv, LegMap::legs(2, 1, 2))),
        })
    }

    /// `R_21 x_1 R y_2 - y_2 R_21 x_1 R`; with `x = y` the braided-matrix relations.
    fn braided(&self, n: usize, x: &[usize], y: &[usize]) -> PolyMatrix {
        let x1 = first_leg(n, x);
        let y2 = second_leg(n, y);
        let lhs = self.r21.mul(&x1).mul(&self.r).mul(&y2);
        let rhs = y2.mul(&self.r21).mul(&x1).mul(&self.r);
        lhs.sub(&rhs)
    }

    /// `x_1 R y_2 - R_21^{-1} y_2 R_21 x_1 R`, the same relations solved for `x_1 R y_2`.
    fn braided_rearranged(&self, n: usize, x: &[usize], y: &[usize]) -> PolyMatrix {
        let x1 = first_leg(n, x);
        let y2 = second_leg(n, y);
        let lhs = x1.mul(&self.r).mul(&y2);
        let rhs = self.r21_inv.mul(&y2).mul(&self.r21).mul(&x1).mul(&self.r);
        lhs.sub(&rhs)
    }

    /// `R^{-1} v_1 R u_2 - u_2 R^{-1} v_1 R`.
    fn statistics(&self, n: usize, v: &[usize], u: &[usize]) -> PolyMatrix {
        let v1 = first_leg(n, v);
        let u2 = second_leg(n, u);
        let lhs = self.r_inv.mul(&v1).mul(&self.r).mul(&u2);
        let rhs = u2.mul(&self.r_inv).mul(&v1).mul(&self.r);
        lhs.sub(&rhs)
    }

    /// `R t_1 t_2 - t_2 t_1 R`.
    fn frt(&self, n: usize, t: &[usize]) -> PolyMatrix {
        let t1 = first_leg(n, t);
        let t2 = second_leg(n, t);
        self.r.mul(&t1).mul(&t2).sub(&t2.mul(&t1).mul(&self.r))
    }
}

/// Quantum matrices: generators `t[i,j]`, relations `R t_1 t_2 = t_2 t_1 R`.
pub fn frt_algebra(r: &RMatrix) -> Result<Presentation, PresentError> {
    let ops = Operators::new(r)?;
    let n = r.dim();
    let mut b = Builder::new("frt", n, matrix_roster("t", n));
    let t = b.gens("t");
    b.block("t".into(), &ops.frt(n, &t));
    Ok(b.p)
}

/// Braided matrices: generators `u[i,j]`, relations `R_21 u_1 R u_2 = u_2 R_21 u_1 R`.
pub fn braided_matrices(r: &RMatrix) -> Result<Presentation, PresentError> {
    let ops = Operators::new(r)?;
    let n = r.dim();
    let mut b = Builder::new("bm", n, matrix_roster("u", n));
    let u = b.gens("u");
    b.block("u".into(), &ops.braided(n, &u, &u));
    Ok(b.p)
}

#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub r: RMatrix,
    pub n: usize,
}

impl ChainSpec {
    pub fn new(r: RMatrix, n: usize) -> Self {
        ChainSpec { r, n }
    }

    /// Copy labels `u1..un`.
    pub fn labels(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("u{i}")).collect()
    }
}

fn chain_with(
    spec: &ChainSpec,
    name: &str,
    cross: impl Fn(&Operators, usize, &[usize], &[usize]) -> PolyMatrix,
) -> Result<Presentation, PresentError> {
    if spec.n == 0 {
        return Err(PresentError::EmptyChain);
    }
    let ops = Operators::new(&spec.r)?;
    let n = spec.r.dim();
    let labels = spec.labels();
    let roster = labels.iter().flat_map(|c| matrix_roster(c, n)).collect();
    let mut b = Builder::new(name, n, roster);
    for c in &labels {
        let g = b.gens(c);
        b.block(c.clone(), &ops.braided(n, &g, &g));
    }
    for i in 1..spec.n {
        for j in 0..i {
            let (hi, lo) = (b.gens(&labels[i]), b.gens(&labels[j]));
            b.block(format!("{},{}", labels[i], labels[j]), &cross(&ops, n, &hi, &lo));
            b.p.exchange.push((labels[i].clone(), labels[j].clone()));
        }
    }
    Ok(b.p)
}

/// Copies `u1..un` of braided matrices; for every `i > j` the cross relations
/// `R_21 u^(i)_1 R u^(j)_2 = u^(j)_2 R_21 u^(i)_1 R`. Later copies sit above
/// earlier ones in the order, so `u^(i) u^(j)` words rewrite to `u^(j) u^(i)`.
pub fn braided_chain(spec: &ChainSpec) -> Result<Presentation, PresentError> {
    chain_with(spec, "chain", Operators::braided)
}

/// The chain with each cross block written as `v_1 R u_2 = R_21^{-1} u_2 R_21 v_1 R`.
pub fn braided_chain_rearranged(spec: &ChainSpec) -> Result<Presentation, PresentError> {
    chain_with(spec, "chain-rearranged", Operators::braided_rearranged)
}

/// How the two tensor factors exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    /// `v u = u v`: the ordinary tensor product.
    Trivial,
    /// `R^{-1} v_1 R u_2 = u_2 R^{-1} v_1 R`.
    Braided,
}

#[derive(Clone, Debug)]
pub struct TensorSquareSpec {
    pub base: Presentation,
    pub r: RMatrix,
    pub statistics: Statistics,
}

/// Tensor square together with the embeddings of the two factors.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    pub presentation: Presentation,
    /// `left[g]` is the roster position of the left copy of base generator `g`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub statistics: Statistics,
}

pub const LEFT_TAG: &str = "L.";
pub const RIGHT_TAG: &str = "R.";

fn tagged(g: &GenId, tag: &str) -> GenId {
    GenId::new(format!("{tag}{}", g.copy), g.row, g.col)
}

/// Both copies of the base algebra; every right-factor generator matrix `v`
/// exchanges with every left-factor matrix `u` by the chosen statistics. The
/// right factor is above the left one, so mixed words normalize to left-then-right.
pub fn braided_tensor_square(spec: &TensorSquareSpec) -> Result<TensorSquare, PresentError> {
    let base = &spec.base;
    let n = base.n;
    if spec.r.dim() != n {
        return Err(PresentError::NotMatrixPresentation(spec.r.dim()));
    }
    let copies = base.copies();
    for c in &copies {
        if base.copy_matrix(c).is_none() {
            return Err(PresentError::NotMatrixPresentation(n));
        }
    }
    let ops = Operators::new(&spec.r)?;
    let g = base.roster.len();
    let roster: Vec<GenId> = base
        .roster
        .iter()
        .map(|x| tagged(x, LEFT_TAG))
        .chain(base.roster.iter().map(|x| tagged(x, RIGHT_TAG)))
        .collect();
    let left: Vec<usize> = (0..g).collect();
    let right: Vec<usize> = (g..2 * g).collect();
    let mut p = Presentation::free(format!("square({})", base.name), n, roster);
    for (tag, map) in [(LEFT_TAG, &left), (RIGHT_TAG, &right)] {
        let offset = p.relations.len();
        p.relations.extend(base.relations.iter().map(|r| r.relabel(map)));
        p.blocks.extend(base.blocks.iter().map(|b| RelationBlock {
            name: format!("{tag}{}", b.name),
            start: b.start + offset,
            end: b.end + offset,
        }));
        p.exchange.extend(
            base.exchange
                .iter()
                .map(|(a, b)| (format!("{tag}{a}"), format!("{tag}{b}"))),
        );
    }
    let mut span = Echelon::new();
    for r in &p.relations {
        span.insert(r.clone(), None);
    }
    for vc in &copies {
        for uc in &copies {
            let (vl, ul) = (format!("{RIGHT_TAG}{vc}"), format!("{LEFT_TAG}{uc}"));
            let v = p.copy_matrix(&vl).expect("tagged copy");
            let u = p.copy_matrix(&ul).expect("tagged copy");
            let m = match spec.statistics {
                Statistics::Braided => ops.statistics(n, &v, &u),
                Statistics::Trivial => first_leg(n, &v)
                    .mul(&second_leg(n, &u))
                    .sub(&second_leg(n, &u).mul(&first_leg(n, &v))),
            };
            let start = p.relations.len();
            for e in m.entries {
                if !e.is_zero() && span.insert(e.clone(), None).is_some() {
                    p.relations.push(e);
                }
            }
            p.blocks.push(RelationBlock {
                name: format!("{vl}|{ul}"),
                start,
                end: p.relations.len(),
            });
            p.exchange.push((vl, ul));
        }
    }
    Ok(TensorSquare {
        presentation: p,
        left,
        right,
        statistics: spec.statistics,
    })
}

/// Named builders, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Frt,
    Bm,
    /// Chain with the given number of copies.
    Chain(usize),
    /// Braided tensor square of braided matrices.
    Square,
}

impl Preset {
    /// Parses `frt`, `bm`, `square` or `chain` (the latter with `copies`).
    pub fn parse(name: &str, copies: usize) -> Option<Self> {
        match name {
            "frt" => Some(Preset::Frt),
            "bm" => Some(Preset::Bm),
            "chain" => Some(Preset::Chain(copies)),
            "square" => Some(Preset::Square),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Frt => "frt",
            Preset::Bm => "bm",
            Preset::Chain(_) => "chain",
            Preset::Square => "square",
        }
    }

    /// Exchange law between the two factors of the coproduct's codomain.
    pub fn statistics(&self) -> Statistics {
        match self {
            Preset::Frt => Statistics::Trivial,
            _ => Statistics::Braided,
        }
    }

    pub fn build(&self, r: &RMatrix) -> Result<Presentation, PresentError> {
        match *self {
            Preset::Frt => frt_algebra(r),
            Preset::Bm => braided_matrices(r),
            Preset::Chain(n) => braided_chain(&ChainSpec::new(r.clone(), n)),
            Preset::Square => Ok(braided_tensor_square(&TensorSquareSpec {
                base: braided_matrices(r)?,
                r: r.clone(),
                statistics: Statistics::Braided,
            })?
            .presentation),
        }
    }

    /// The preset together with the tensor square its coproduct lands in.
    pub fn build_with_square(&self, r: &RMatrix) -> Result<(Presentation, TensorSquare), PresentError> {
        let p = self.build(r)?;
        let sq = braided_tensor_square(&TensorSquareSpec {
            base: p.clone(),
            r: r.clone(),
            statistics: self.statistics(),
        })?;
        Ok((p, sq))
    }
}

/// Graded-dimension comparison of two presentations of (supposedly) isomorphic algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub degree_bound: usize,
    pub first: String,
    pub first_dims: Vec<usize>,
    pub second: String,
    pub second_dims: Vec<usize>,
    pub equal: bool,
}

pub fn compare_dims(a: &Presentation, b: &Presentation, bound: usize) -> Result<IsoWitness, PresentError> {
    let first_dims = hilbert_dims(a, bound)?;
    let second_dims = hilbert_dims(b, bound)?;
    Ok(IsoWitness {
        degree_bound: bound,
        first: a.name.clone(),
        equal: first_dims == second_dims,
        first_dims,
        second: b.name.clone(),
        second_dims,
    })
}

/// Braided tensor square of `B(R)` (statistics `R^{-1}`) against the two-copy
/// chain (cross relations through `R_21`).
pub fn square_iso_witness(r: &RMatrix, bound: usize) -> Result<IsoWitness, PresentError> {
    let square = braided_tensor_square(&TensorSquareSpec {
        base: braided_matrices(r)?,
        r: r.clone(),
        statistics: Statistics::Braided,
    })?;
    let chain = braided_chain(&ChainSpec::new(r.clone(), 2))?;
    compare_dims(&square.presentation, &chain, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{orient_relations, relation_span_equal, Monomial};

    #[test]
    fn glq2_braided_matrices_rank_and_rule() {
        let p = braided_matrices(&RMatrix::glq2()).unwrap();
        assert_eq!(p.relations.len(), 6);
        let rules = orient_relations(&p).unwrap();
        // roster a=u[1,1] b=u[1,2] c=u[2,1] d=u[2,2]
        let ba = Monomial::from_letters(&[1, 0]);
        let rule = rules.rule_for(ba.letters()).expect("b a is a head");
        let rhs = rule.replacement();
        assert_eq!(rhs, Poly::term(RatFunc::q_pow(2), Monomial::from_letters(&[0, 1])));
    }

    #[test]
    fn frt_glq2_span() {
        let p = frt_algebra(&RMatrix::glq2()).unwrap();
        assert_eq!(p.relations.len(), 6);
        assert!(frt_algebra(&RMatrix::identity(1)).unwrap().relations.is_empty());
    }

    #[test]
    fn chain_blocks() {
        let p = braided_chain(&ChainSpec::new(RMatrix::glq2(), 3)).unwrap();
        let names: Vec<_> = p.blocks.iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, ["u1", "u2", "u3", "u2,u1", "u3,u1", "u3,u2"]);
        for b in &p.blocks[3..] {
            assert_eq!(b.end - b.start, 16);
        }
    }

    #[test]
    fn rearranged_cross_block_spans_agree() {
        let spec = ChainSpec::new(RMatrix::glq2(), 2);
        let a = braided_chain(&spec).unwrap();
        let b = braided_chain_rearranged(&spec).unwrap();
        assert!(relation_span_equal(&a, &b).unwrap());
    }

    #[test]
    fn identity_square_commutes() {
        let r = RMatrix::identity(2);
        let sq = braided_tensor_square(&TensorSquareSpec {
            base: braided_matrices(&r).unwrap(),
            r: r.clone(),
            statistics: Statistics::Braided,
        })
        .unwrap();
        assert_eq!(sq.presentation.roster.len(), 8);
        assert_eq!(hilbert_dims(&sq.presentation, 2).unwrap(), vec![1, 8, 36]);
    }
}
