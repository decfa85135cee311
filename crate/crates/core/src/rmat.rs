//! R-matrices: storage, leg embeddings, the Yang-Baxter check, inverse and
//! second inverse.
//!
//! Index convention: an entry `R^{ij}_{kl}` sits at row `(i,j)` and column
//! `(k,l)` of the `N^2 x N^2` matrix, flattened row-major as `(i-1)*N + j`.
//! Indices are 1-based in documents and 0-based in the API.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::qscalar::{parse_scalar, RatFunc, ScalarError};

pub const INDEX_CONVENTION: &str =
    "R^{ij}_{kl} at row (i,j), column (k,l); row-major flattening (i-1)*N+j; indices 1-based";

pub type QMatrix = Matrix<RatFunc>;

#[derive(Debug, Error)]
pub enum RMatrixError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("entry index ({i},{j},{k},{l}) out of range for dim {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        dim: usize,
    },
    #[error("duplicate entry ({i},{j},{k},{l})")]
    DuplicateEntry { i: usize, j: usize, k: usize, l: usize },
    #[error("coefficient of entry ({i},{j},{k},{l}): {source}")]
    Coefficient {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        source: ScalarError,
    },
    #[error("malformed R-matrix document: {0}")]
    Document(#[from] serde_json::Error),
    #[error("R-matrix is singular")]
    Singular,
    #[error("invalid leg map ({a},{b}) for arity {arity}")]
    InvalidLegs { a: usize, b: usize, arity: usize },
}

/// Sparse `N^2 x N^2` R-matrix with entries `R^{ij}_{kl}` (0-based keys).
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    dim: usize,
    entries: BTreeMap<[usize; 4], RatFunc>,
}

impl RMatrix {
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = ([usize; 4], RatFunc)>,
    ) -> Result<Self, RMatrixError> {
        if dim == 0 {
            return Err(RMatrixError::ZeroDimension);
        }
        let mut map = BTreeMap::new();
        for (idx, value) in entries {
            let [i, j, k, l] = idx;
            if idx.iter().any(|&x| x >= dim) {
                return Err(RMatrixError::IndexOutOfRange {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    l: l + 1,
                    dim,
                });
            }
            if map.contains_key(&idx) {
                return Err(RMatrixError::DuplicateEntry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    l: l + 1,
                });
            }
            map.insert(idx, value);
        }
        map.retain(|_, v| !v.is_zero());
        Ok(RMatrix { dim, entries: map })
    }

    /// Reads back a full `N^2 x N^2` matrix in the row-major convention.
    pub fn from_matrix(dim: usize, m: &QMatrix) -> Self {
        assert_eq!(m.dim(), dim * dim);
        let mut entries = BTreeMap::new();
        for r in 0..dim * dim {
            for c in 0..dim * dim {
                let v = m.get(r, c);
                if !v.is_zero() {
                    entries.insert([r / dim, r % dim, c / dim, c % dim], v.clone());
                }
            }
        }
        RMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                entries.insert([i, j, i, j], RatFunc::one());
            }
        }
        RMatrix { dim, entries }
    }

    /// The flip `tau`, `R^{ij}_{kl} = delta^i_l delta^j_k`.
    pub fn flip(dim: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                entries.insert([i, j, j, i], RatFunc::one());
            }
        }
        RMatrix { dim, entries }
    }

    /// The standard `GL_q(2)` R-matrix.
    pub fn glq2() -> Self {
        load_rmatrix(GLQ2_DOCUMENT).expect("shipped GL_q(2) document parses")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
        self.entries.get(&[i, j, k, l]).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 4], &RatFunc)> {
        self.entries.iter()
    }

    pub fn to_matrix(&self) -> QMatrix {
        let n = self.dim;
        let mut m = QMatrix::zeros(n * n);
        for (&[i, j, k, l], v) in &self.entries {
            m.set(i * n + j, k * n + l, v.clone());
        }
        m
    }

    pub fn scale(&self, s: &RatFunc) -> Self {
        RMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, v.times(s)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Replaces (or inserts) one entry; zero removes it.
    pub fn with_entry(&self, idx: [usize; 4], value: RatFunc) -> Self {
        let mut out = self.clone();
        if value.is_zero() {
            out.entries.remove(&idx);
        } else {
            out.entries.insert(idx, value);
        }
        out
    }

    /// Partial transpose in the second index pair: `(R^{t2})^{ij}_{kl} = R^{il}_{kj}`.
    pub fn partial_transpose_second(&self) -> Self {
        RMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&[i, j, k, l], v)| ([i, l, k, j], v.clone()))
                .collect(),
        }
    }

    pub fn to_document(&self) -> RMatrixDocument {
        RMatrixDocument {
            convention: Some(INDEX_CONVENTION.to_string()),
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&[i, j, k, l], v)| EntryDocument {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    l: l + 1,
                    coeff: v.to_string(),
                })
                .collect(),
        }
    }

    /// Pretty-printed JSON document; `load_rmatrix` reads it back unchanged.
    pub fn save(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RMatrix")
            .field("dim", &self.dim)
            .field("entries", &self.entries)
            .finish()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EntryDocument {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RMatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    pub dim: usize,
    pub entries: Vec<EntryDocument>,
}

impl RMatrixDocument {
    pub fn build(&self) -> Result<RMatrix, RMatrixError> {
        let mut parsed = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let (i, j, k, l) = (e.i, e.j, e.k, e.l);
            if [i, j, k, l].iter().any(|&x| x == 0 || x > self.dim) {
                return Err(RMatrixError::IndexOutOfRange {
                    i,
                    j,
                    k,
                    l,
                    dim: self.dim,
                });
            }
            let value = parse_scalar(&e.coeff).map_err(|source| RMatrixError::Coefficient { i, j, k, l, source })?;
            parsed.push(([i - 1, j - 1, k - 1, l - 1], value));
        }
        RMatrix::from_entries(self.dim, parsed)
    }
}

pub const GLQ2_DOCUMENT: &str = r#"{
  "convention": "R^{ij}_{kl} at row (i,j), column (k,l); row-major flattening (i-1)*N+j; indices 1-based",
  "dim": 2,
  "entries": [
    { "i": 1, "j": 1, "k": 1, "l": 1, "coeff": "q" },
    { "i": 1, "j": 2, "k": 1, "l": 2, "coeff": "1" },
    { "i": 1, "j": 2, "k": 2, "l": 1, "coeff": "q - q^-1" },
    { "i": 2, "j": 1, "k": 2, "l": 1, "coeff": "1" },
    { "i": 2, "j": 2, "k": 2, "l": 2, "coeff": "q" }
  ]
}"#;

/// Parses an R-matrix JSON document.
pub fn load_rmatrix(document: &str) -> Result<RMatrix, RMatrixError> {
    let doc: RMatrixDocument = serde_json::from_str(document)?;
    doc.build()
}

/// Ordered pair of distinct tensor legs `(a, b)` inside `arity` legs (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegMap {
    a: usize,
    b: usize,
    arity: usize,
}

impl LegMap {
    pub fn new(a: usize, b: usize, arity: usize) -> Result<Self, RMatrixError> {
        if a == b || a >= arity || b >= arity {
            return Err(RMatrixError::InvalidLegs { a, b, arity });
        }
        Ok(LegMap { a, b, arity })
    }

    /// 1-based constructor matching the `R_{13}` notation.
    pub fn legs(a: usize, b: usize, arity: usize) -> Self {
        assert!(a >= 1 && b >= 1, "legs are 1-based");
        Self::new(a - 1, b - 1, arity).expect("valid legs")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

fn multi_index(mut flat: usize, dim: usize, arity: usize) -> Vec<usize> {
    let mut idx = vec![0; arity];
    for slot in idx.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
    idx
}

/// The operator on `V^{⊗n}` acting as `R` on legs `(a, b)` and as the identity
/// on the remaining legs.
pub fn leg_embed(r: &RMatrix, legs: LegMap) -> QMatrix {
    let n = r.dim;
    let size = n.pow(legs.arity as u32);
    let mut out = QMatrix::zeros(size);
    for row in 0..size {
        let ri = multi_index(row, n, legs.arity);
        for (&[i, j, k, l], v) in &r.entries {
            if ri[legs.a] != i || ri[legs.b] != j {
                continue;
            }
            let mut ci = ri.clone();
            ci[legs.a] = k;
            ci[legs.b] = l;
            let col = ci.iter().fold(0, |acc, &x| acc * n + x);
            out.set(row, col, v.clone());
        }
    }
    out
}

/// An index pair where the two sides of the Yang-Baxter equation differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeWitness {
    /// 1-based output multi-index.
    pub row: Vec<usize>,
    /// 1-based input multi-index.
    pub col: Vec<usize>,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeOutcome {
    pub holds: bool,
    pub witness: Option<YbeWitness>,
}

/// Checks `R12 R13 R23 = R23 R13 R12` exactly.
pub fn ybe_check(r: &RMatrix) -> YbeOutcome {
    let r12 = leg_embed(r, LegMap::legs(1, 2, 3));
    let r13 = leg_embed(r, LegMap::legs(1, 3, 3));
    let r23 = leg_embed(r, LegMap::legs(2, 3, 3));
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    match lhs.first_difference(&rhs) {
        None => YbeOutcome {
            holds: true,
            witness: None,
        },
        Some((row, col)) => YbeOutcome {
            holds: false,
            witness: Some(YbeWitness {
                row: multi_index(row, r.dim, 3).into_iter().map(|x| x + 1).collect(),
                col: multi_index(col, r.dim, 3).into_iter().map(|x| x + 1).collect(),
                lhs: lhs.get(row, col).clone(),
                rhs: rhs.get(row, col).clone(),
            }),
        },
    }
}

pub fn invert(r: &RMatrix) -> Result<RMatrix, RMatrixError> {
    let inv = r.to_matrix().inverse().ok_or(RMatrixError::Singular)?;
    Ok(RMatrix::from_matrix(r.dim, &inv))
}

/// `((R^{t2})^{-1})^{t2}`, or `None` when the partial transpose is singular.
pub fn second_inverse(r: &RMatrix) -> Option<RMatrix> {
    let pt = r.partial_transpose_second();
    let inv = pt.to_matrix().inverse()?;
    Some(RMatrix::from_matrix(r.dim, &inv).partial_transpose_second())
}

/// Invertible with a second inverse.
pub fn is_biinvertible(r: &RMatrix) -> bool {
    invert(r).is_ok() && second_inverse(r).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> RatFunc {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn documents_round_trip() {
        let r = RMatrix::glq2();
        let saved = r.save();
        let back = load_rmatrix(&saved).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.save(), saved);
    }

    #[test]
    fn document_errors() {
        let bad = r#"{"dim":2,"entries":[{"i":3,"j":1,"k":1,"l":1,"coeff":"1"}]}"#;
        assert!(matches!(load_rmatrix(bad), Err(RMatrixError::IndexOutOfRange { .. })));
        let dup =
            r#"{"dim":2,"entries":[{"i":1,"j":1,"k":1,"l":1,"coeff":"1"},{"i":1,"j":1,"k":1,"l":1,"coeff":"q"}]}"#;
        assert!(matches!(load_rmatrix(dup), Err(RMatrixError::DuplicateEntry { .. })));
        let parse = r#"{"dim":2,"entries":[{"i":1,"j":1,"k":1,"l":1,"coeff":"q +"}]}"#;
        assert!(matches!(load_rmatrix(parse), Err(RMatrixError::Coefficient { .. })));
        assert!(matches!(load_rmatrix("{"), Err(RMatrixError::Document(_))));
    }

    #[test]
    fn identity_and_flip_documents() {
        let id = r#"{"dim":2,"entries":[
            {"i":1,"j":1,"k":1,"l":1,"coeff":"1"},{"i":1,"j":2,"k":1,"l":2,"coeff":"1"},
            {"i":2,"j":1,"k":2,"l":1,"coeff":"1"},{"i":2,"j":2,"k":2,"l":2,"coeff":"1"}]}"#;
        assert_eq!(load_rmatrix(id).unwrap(), RMatrix::identity(2));
        let flip = r#"{"dim":2,"entries":[
            {"i":1,"j":1,"k":1,"l":1,"coeff":"1"},{"i":1,"j":2,"k":2,"l":1,"coeff":"1"},
            {"i":2,"j":1,"k":1,"l":2,"coeff":"1"},{"i":2,"j":2,"k":2,"l":2,"coeff":"1"}]}"#;
        assert_eq!(load_rmatrix(flip).unwrap(), RMatrix::flip(2));
    }

    #[test]
    fn glq2_entries() {
        let r = RMatrix::glq2();
        assert_eq!(r.get(0, 1, 1, 0), q("q - q^-1"));
        assert_eq!(r.get(0, 0, 0, 0), q("q"));
        assert!(r.get(1, 0, 0, 1).is_zero());
    }

    #[test]
    fn leg_embed_adjacent_legs_are_kronecker_products() {
        let r = RMatrix::glq2();
        let rm = r.to_matrix();
        let r12 = leg_embed(&r, LegMap::legs(1, 2, 3));
        let r23 = leg_embed(&r, LegMap::legs(2, 3, 3));
        for row in 0..8 {
            for col in 0..8 {
                // R ⊗ I
                let expect12 = if row % 2 == col % 2 {
                    rm.get(row / 2, col / 2).clone()
                } else {
                    RatFunc::zero()
                };
                assert_eq!(r12.get(row, col), &expect12);
                // I ⊗ R
                let expect23 = if row / 4 == col / 4 {
                    rm.get(row % 4, col % 4).clone()
                } else {
                    RatFunc::zero()
                };
                assert_eq!(r23.get(row, col), &expect23);
            }
        }
    }

    #[test]
    fn leg_embed_outer_legs_match_conjugation_by_swap() {
        // R13 = P23 R12 P23 with P23 the swap of legs 2 and 3
        let r = RMatrix::glq2();
        let p23 = leg_embed(&RMatrix::flip(2), LegMap::legs(2, 3, 3));
        let r12 = leg_embed(&r, LegMap::legs(1, 2, 3));
        assert_eq!(leg_embed(&r, LegMap::legs(1, 3, 3)), p23.mul(&r12).mul(&p23));
        // R21 = tau R tau on two legs
        let tau = RMatrix::flip(2).to_matrix();
        assert_eq!(leg_embed(&r, LegMap::legs(2, 1, 2)), tau.mul(&r.to_matrix()).mul(&tau));
    }

    #[test]
    fn invalid_legs() {
        assert!(LegMap::new(1, 1, 3).is_err());
        assert!(LegMap::new(0, 3, 3).is_err());
    }

    #[test]
    fn ybe_examples() {
        assert!(ybe_check(&RMatrix::identity(2)).holds);
        assert!(ybe_check(&RMatrix::flip(2)).holds);
        assert!(ybe_check(&RMatrix::flip(3)).holds);
        assert!(ybe_check(&RMatrix::glq2()).holds);
        let broken = RMatrix::glq2().with_entry([0, 1, 1, 0], q("1 + q"));
        let out = ybe_check(&broken);
        assert!(!out.holds);
        let w = out.witness.unwrap();
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(invert(&RMatrix::identity(2)).unwrap(), RMatrix::identity(2));
        assert_eq!(invert(&RMatrix::flip(2)).unwrap(), RMatrix::flip(2));
        let r = RMatrix::glq2();
        let inv = invert(&r).unwrap();
        assert_eq!(r.to_matrix().mul(&inv.to_matrix()), QMatrix::identity(4));
        // R^{-1} for GL_q(2): q^-1 on the diagonal corners, -(q - q^-1) off-diagonal
        assert_eq!(inv.get(0, 0, 0, 0), q("q^-1"));
        assert_eq!(inv.get(0, 1, 1, 0), q("q^-1 - q"));
        let singular = RMatrix::from_entries(2, [([0, 0, 0, 0], RatFunc::one())]).unwrap();
        assert!(matches!(invert(&singular), Err(RMatrixError::Singular)));
    }

    #[test]
    fn second_inverse_examples() {
        assert_eq!(second_inverse(&RMatrix::identity(2)), Some(RMatrix::identity(2)));
        // partial transpose of the flip is delta^i_j delta^k_l: rank one
        assert_eq!(RMatrix::flip(2).partial_transpose_second().to_matrix().rank(), 1);
        assert!(second_inverse(&RMatrix::flip(2)).is_none());
        assert!(second_inverse(&RMatrix::flip(1)).is_some());
        let r = RMatrix::glq2();
        let t = second_inverse(&r).expect("GL_q(2) is biinvertible");
        // sum_{ab} T^{ib}_{aj} R^{al}_{kb} = delta^i_k delta^j_l
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let mut s = RatFunc::zero();
                        for a in 0..2 {
                            for b in 0..2 {
                                s = s.plus(&t.get(i, b, a, j).times(&r.get(a, l, k, b)));
                            }
                        }
                        let expect = if i == k && j == l {
                            RatFunc::one()
                        } else {
                            RatFunc::zero()
                        };
                        assert_eq!(s, expect);
                    }
                }
            }
        }
    }
}
