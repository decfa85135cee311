//! Matrix coproduct and counit, and degree-bounded checks that they make a
//! presentation into a bialgebra whose coproduct lands in a tensor square.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::ncalg::{
    orient_relations, substitute_generators, AlgebraError, GenId, IdealEngine, MembershipCertificate, NCPoly,
    Presentation,
};
use crate::presents::{PresentError, Preset, TensorSquare, LEFT_TAG, RIGHT_TAG};
use crate::qscalar::{RatFunc, ScalarError};
use crate::rmat::{invert, is_biinvertible, second_inverse, ybe_check, RMatrix, INDEX_CONVENTION};

/// Smallest bound at which the image of a quadratic relation can be decided.
pub const MIN_DEGREE_BOUND: usize = 4;

#[derive(Debug, Error)]
pub enum BialgError {
    #[error("degree bound {0} is below {MIN_DEGREE_BOUND}")]
    BoundTooSmall(usize),
    #[error("generator {0} has no counterpart in the tensor square")]
    RosterMismatch(String),
    #[error("the coproduct of preset `square` is not constructed (it needs matrix inverses)")]
    Unsupported,
    #[error("evaluation points disagree on relation {relation}: an evaluation point is degenerate")]
    ModeDisagreement { relation: usize },
    #[error("no usable evaluation point found")]
    NoEvaluationPoint,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Present(#[from] PresentError),
}

/// Images of the generators under the coproduct and values of the counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductSpec<C = RatFunc> {
    /// `images[g]` lives in the tensor square.
    pub images: Vec<NCPoly<C>>,
    pub counit: Vec<C>,
    /// Roster positions of the left and right copies of each generator.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl<C: Field> CoproductSpec<C> {
    pub fn try_map_coeffs<D: Field, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<CoproductSpec<D>, E> {
        Ok(CoproductSpec {
            images: self
                .images
                .iter()
                .map(|p| p.try_map_coeffs(&f))
                .collect::<Result<_, _>>()?,
            counit: self.counit.iter().map(&f).collect::<Result<_, _>>()?,
            left: self.left.clone(),
            right: self.right.clone(),
        })
    }

    /// Position in the square -> (is right factor, base generator).
    fn factor_of(&self, square_size: usize) -> Vec<Option<(bool, usize)>> {
        let mut out = vec![None; square_size];
        for (g, &x) in self.left.iter().enumerate() {
            out[x] = Some((false, g));
        }
        for (g, &x) in self.right.iter().enumerate() {
            out[x] = Some((true, g));
        }
        out
    }
}

fn tagged(g: &GenId, tag: &str) -> GenId {
    GenId::new(format!("{tag}{}", g.copy), g.row, g.col)
}

/// `u^i_j -> Σ_k L.u^i_k R.u^k_j` for every copy, counit `δ^i_j`.
pub fn matrix_coproduct<C: Field>(
    p: &Presentation<C>,
    square: &Presentation<C>,
) -> Result<CoproductSpec<C>, BialgError> {
    let find = |g: &GenId, tag: &str| {
        let t = tagged(g, tag);
        square
            .index_of(&t)
            .ok_or_else(|| BialgError::RosterMismatch(t.to_string()))
    };
    let mut images = Vec::with_capacity(p.roster.len());
    let mut counit = Vec::with_capacity(p.roster.len());
    let mut left = Vec::with_capacity(p.roster.len());
    let mut right = Vec::with_capacity(p.roster.len());
    for g in &p.roster {
        left.push(find(g, LEFT_TAG)?);
        right.push(find(g, RIGHT_TAG)?);
        let mut img = NCPoly::zero();
        for k in 1..=p.n {
            let a = find(&GenId::new(g.copy.clone(), g.row, k), LEFT_TAG)?;
            let b = find(&GenId::new(g.copy.clone(), k, g.col), RIGHT_TAG)?;
            img = img.add(&NCPoly::generator(a).mul(&NCPoly::generator(b)));
        }
        images.push(img);
        counit.push(if g.row == g.col { C::one() } else { C::zero() });
    }
    Ok(CoproductSpec {
        images,
        counit,
        left,
        right,
    })
}

#[derive(Clone, Debug)]
pub struct RelationVerdict<C = RatFunc> {
    pub index: usize,
    pub holds: bool,
    /// Image of the relation under the coproduct, unreduced.
    pub image: NCPoly<C>,
    pub certificate: Option<MembershipCertificate<C>>,
    /// Normal form of the image; nonzero exactly when the check fails.
    pub residue: NCPoly<C>,
}

fn images_vec<C: Field>(spec: &CoproductSpec<C>) -> Vec<Option<NCPoly<C>>> {
    spec.images.iter().cloned().map(Some).collect()
}

fn check_relations<C: Field>(
    p: &Presentation<C>,
    spec: &CoproductSpec<C>,
    engine: &IdealEngine<C>,
) -> Result<Vec<RelationVerdict<C>>, BialgError> {
    let images = images_vec(spec);
    p.relations
        .par_iter()
        .enumerate()
        .map(|(index, r)| {
            let image = substitute_generators(r, &images)?;
            let m = engine.membership(&image)?;
            Ok(RelationVerdict {
                index,
                holds: m.member,
                image,
                certificate: m.certificate,
                residue: m.residue,
            })
        })
        .collect()
}

/// Maps every relation through the coproduct and decides membership of the
/// image in the square's ideal, through degree `bound`.
pub fn verify_homomorphism<C: Field>(
    p: &Presentation<C>,
    spec: &CoproductSpec<C>,
    square: &Presentation<C>,
    bound: usize,
) -> Result<Vec<RelationVerdict<C>>, BialgError> {
    if bound < MIN_DEGREE_BOUND {
        return Err(BialgError::BoundTooSmall(bound));
    }
    let engine = IdealEngine::new_unchecked(square, bound)?;
    check_relations(p, spec, &engine)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounitVerdict {
    pub pass: bool,
    /// Generators `g` with `(ε ⊗ id) Δ g != g`.
    pub left_unit_failures: Vec<String>,
    /// Generators `g` with `(id ⊗ ε) Δ g != g`.
    pub right_unit_failures: Vec<String>,
    /// Relations `r` with `ε(r) != 0`.
    pub relation_failures: Vec<usize>,
}

/// Unit laws of the counit on generators and vanishing on relations.
pub fn verify_counit<C: Field>(p: &Presentation<C>, spec: &CoproductSpec<C>) -> CounitVerdict {
    let square_size = spec.left.len() + spec.right.len();
    let factors = spec.factor_of(square_size);
    let collapse = |counit_on_right: bool| -> Vec<Option<NCPoly<C>>> {
        factors
            .iter()
            .map(|f| {
                f.map(|(is_right, g)| {
                    if is_right == counit_on_right {
                        NCPoly::constant(spec.counit[g].clone())
                    } else {
                        NCPoly::generator(g)
                    }
                })
            })
            .collect()
    };
    let (eps_left, eps_right) = (collapse(false), collapse(true));
    let mut left_unit_failures = Vec::new();
    let mut right_unit_failures = Vec::new();
    for (g, img) in spec.images.iter().enumerate() {
        let want = NCPoly::generator(g);
        if substitute_generators(img, &eps_left).ok() != Some(want.clone()) {
            left_unit_failures.push(p.roster[g].to_string());
        }
        if substitute_generators(img, &eps_right).ok() != Some(want) {
            right_unit_failures.push(p.roster[g].to_string());
        }
    }
    let scalars: Vec<Option<NCPoly<C>>> = spec.counit.iter().map(|c| Some(NCPoly::constant(c.clone()))).collect();
    let relation_failures: Vec<usize> = p
        .relations
        .iter()
        .enumerate()
        .filter(|(_, r)| !substitute_generators(r, &scalars).map(|x| x.is_zero()).unwrap_or(false))
        .map(|(k, _)| k)
        .collect();
    CounitVerdict {
        pass: left_unit_failures.is_empty() && right_unit_failures.is_empty() && relation_failures.is_empty(),
        left_unit_failures,
        right_unit_failures,
        relation_failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoassocVerdict {
    pub pass: bool,
    /// Roster positions where `(Δ ⊗ id) Δ` and `(id ⊗ Δ) Δ` differ.
    pub failures: Vec<usize>,
}

/// Formal comparison of `(Δ ⊗ id) Δ` and `(id ⊗ Δ) Δ` on generators, in the
/// free algebra on three tagged copies of the roster.
pub fn verify_coassoc<C: Field>(spec: &CoproductSpec<C>) -> CoassocVerdict {
    let g = spec.images.len();
    let square_size = spec.left.len() + spec.right.len();
    let factors = spec.factor_of(square_size);
    // copy t of generator x sits at t*g + x
    let relabel_pair = |img: &NCPoly<C>, lo: usize| -> NCPoly<C> {
        let map: Vec<usize> = factors
            .iter()
            .map(|f| f.map(|(r, x)| (lo + r as usize) * g + x).unwrap_or(usize::MAX))
            .collect();
        img.relabel(&map)
    };
    let first: Vec<Option<NCPoly<C>>> = factors
        .iter()
        .map(|f| {
            f.map(|(r, x)| {
                if r {
                    NCPoly::generator(2 * g + x)
                } else {
                    relabel_pair(&spec.images[x], 0)
                }
            })
        })
        .collect();
    let second: Vec<Option<NCPoly<C>>> = factors
        .iter()
        .map(|f| {
            f.map(|(r, x)| {
                if r {
                    relabel_pair(&spec.images[x], 1)
                } else {
                    NCPoly::generator(x)
                }
            })
        })
        .collect();
    let failures: Vec<usize> = spec
        .images
        .iter()
        .enumerate()
        .filter(|(_, img)| {
            let a = substitute_generators(img, &first).ok();
            let b = substitute_generators(img, &second).ok();
            a.is_none() || a != b
        })
        .map(|(k, _)| k)
        .collect();
    CoassocVerdict {
        pass: failures.is_empty(),
        failures,
    }
}

/// Exact arithmetic over `Q(q)`, or specialization at random rational `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Probabilistic { points: usize, seed: u64 },
}

impl Mode {
    pub fn probabilistic() -> Self {
        Mode::Probabilistic { points: 3, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub bound: usize,
    pub mode: Mode,
    /// Include full certificates rather than their sizes.
    pub emit_certificates: bool,
    /// Record wall time (makes the report nondeterministic).
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: MIN_DEGREE_BOUND,
            mode: Mode::Exact,
            emit_certificates: false,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeReport {
    pub kind: &'static str,
    pub certifying: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbeReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    pub ok: bool,
    pub rules: usize,
    pub square_rules: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub left: String,
    pub relation: usize,
    pub right: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub index: usize,
    pub relation: String,
    pub holds: bool,
    pub certificate_terms: usize,
    /// Summing the certificate reproduces the image exactly.
    pub replay_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub pass: bool,
    pub relations: Vec<RelationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub convention: String,
    pub preset: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
    pub dim: usize,
    pub degree_bound: usize,
    pub mode: ModeReport,
    pub ybe: YbeReport,
    pub invertible: bool,
    pub biinvertible: bool,
    pub orientation: OrientationReport,
    pub completion_warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homomorphism: Option<HomomorphismReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counit: Option<CounitVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coassociativity: Option<CoassocVerdict>,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn certificate_terms<C: Field>(cert: &MembershipCertificate<C>, square: &Presentation<C>) -> Vec<CertificateTerm> {
    cert.entries()
        .map(|(l, k, r, c)| CertificateTerm {
            left: square.format_monomial(l),
            relation: k,
            right: square.format_monomial(r),
            coeff: c.to_string(),
        })
        .collect()
}

fn relation_reports<C: Field>(
    p: &Presentation<C>,
    square: &Presentation<C>,
    verdicts: &[RelationVerdict<C>],
    emit: bool,
) -> Vec<RelationReport> {
    verdicts
        .iter()
        .map(|v| {
            let replay_ok = v
                .certificate
                .as_ref()
                .map(|c| c.replay(&square.relations) == v.image)
                .unwrap_or(false);
            RelationReport {
                index: v.index,
                relation: p.format_poly(&p.relations[v.index]),
                holds: v.holds && replay_ok,
                certificate_terms: v.certificate.as_ref().map_or(0, |c| c.len()),
                replay_ok,
                certificate: if emit {
                    v.certificate.as_ref().map(|c| certificate_terms(c, square))
                } else {
                    None
                },
                residue: (!v.holds).then(|| square.format_poly(&v.residue)),
            }
        })
        .collect()
}

fn completion_warnings<C: Field>(engine: &IdealEngine<C>) -> Vec<String> {
    engine
        .completion_steps()
        .iter()
        .filter(|s| s.added > 0)
        .map(|s| {
            format!(
                "quadratic rules are not confluent in degree {}: completion added {} rules",
                s.degree, s.added
            )
        })
        .collect()
}

struct Checked {
    homomorphism: HomomorphismReport,
    counit: CounitVerdict,
    coassoc: CoassocVerdict,
    warnings: Vec<String>,
}

fn run_checks<C: Field>(
    p: &Presentation<C>,
    square: &Presentation<C>,
    bound: usize,
    emit: bool,
) -> Result<(Checked, Vec<bool>), BialgError> {
    let spec = matrix_coproduct(p, square)?;
    let engine = IdealEngine::new_unchecked(square, bound)?;
    let verdicts = check_relations(p, &spec, &engine)?;
    let relations = relation_reports(p, square, &verdicts, emit);
    let holds = relations.iter().map(|r| r.holds).collect();
    Ok((
        Checked {
            homomorphism: HomomorphismReport {
                pass: relations.iter().all(|r| r.holds),
                relations,
            },
            counit: verify_counit(p, &spec),
            coassoc: verify_coassoc(&spec),
            warnings: completion_warnings(&engine),
        },
        holds,
    ))
}

/// Random rationals `a/b` avoiding `0` and `±1`, reproducible from `seed`.
pub fn evaluation_points(seed: u64, count: usize) -> impl Iterator<Item = BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<BigRational> = Vec::new();
    std::iter::from_fn(move || loop {
        let a: i64 = rng.random_range(-97..=97);
        let b: i64 = rng.random_range(1..=97);
        let x = BigRational::new(BigInt::from(a), BigInt::from(b));
        let bad = a == 0 || x == BigRational::from_i64(1) || x == BigRational::from_i64(-1) || seen.contains(&x);
        if !bad {
            seen.push(x.clone());
            return Some(x);
        }
    })
    .take(count)
}

fn specialize(p: &Presentation, q0: &BigRational) -> Result<Presentation<BigRational>, ScalarError> {
    p.map_coeffs(|c| c.evaluate_at(q0))
}

fn degenerate_at(r: &RMatrix, q0: &BigRational) -> bool {
    let m = r.to_matrix();
    let mut entries = Vec::new();
    for row in 0..m.dim() {
        for col in 0..m.dim() {
            match m.get(row, col).evaluate_at(q0) {
                Ok(v) => entries.push(v),
                Err(_) => return true,
            }
        }
    }
    let d = m.dim();
    let num = crate::matrix::Matrix::from_fn(d, |a, b| entries[a * d + b].clone());
    num.rank() != d
}

/// Builds `preset` over `r` and checks the Yang-Baxter equation,
/// biinvertibility, orientation, and the bialgebra axioms through degree `bound`.
pub fn verify_bialgebra(preset: Preset, r: &RMatrix, opts: &VerifyOptions) -> Result<VerificationReport, BialgError> {
    if opts.bound < MIN_DEGREE_BOUND {
        return Err(BialgError::BoundTooSmall(opts.bound));
    }
    if preset == Preset::Square {
        return Err(BialgError::Unsupported);
    }
    let start = Instant::now();
    let ybe = ybe_check(r);
    let invertible = invert(r).is_ok();
    let biinvertible = is_biinvertible(r);
    let mut report = VerificationReport {
        convention: INDEX_CONVENTION.to_string(),
        preset: preset.name().to_string(),
        copies: match preset {
            Preset::Chain(n) => Some(n),
            _ => None,
        },
        dim: r.dim(),
        degree_bound: opts.bound,
        mode: match opts.mode {
            Mode::Exact => ModeReport {
                kind: "exact",
                certifying: true,
                seed: None,
                points: Vec::new(),
            },
            Mode::Probabilistic { seed, .. } => ModeReport {
                kind: "probabilistic",
                certifying: false,
                seed: Some(seed),
                points: Vec::new(),
            },
        },
        ybe: YbeReport {
            holds: ybe.holds,
            witness: ybe
                .witness
                .map(|w| format!("entry ({:?}, {:?}): lhs {} != rhs {}", w.row, w.col, w.lhs, w.rhs)),
        },
        invertible,
        biinvertible,
        orientation: OrientationReport {
            ok: false,
            rules: 0,
            square_rules: 0,
            error: None,
        },
        completion_warnings: Vec::new(),
        homomorphism: None,
        counit: None,
        coassociativity: None,
        warnings: Vec::new(),
        errors: Vec::new(),
        pass: false,
        wall_time_seconds: None,
    };
    if !ybe.holds {
        report
            .warnings
            .push("R does not satisfy the Yang-Baxter equation".into());
    }
    if second_inverse(r).is_none() {
        report
            .warnings
            .push("R has no second inverse (not biinvertible)".into());
    }
    let finish = |mut rep: VerificationReport| {
        if opts.timing {
            rep.wall_time_seconds = Some(start.elapsed().as_secs_f64());
        }
        rep
    };

    let (p, square) = match preset.build_with_square(r) {
        Ok(x) => x,
        Err(e) => {
            report.errors.push(format!("builder: {e}"));
            return Ok(finish(report));
        }
    };
    let TensorSquare {
        presentation: square, ..
    } = square;
    match (orient_relations(&p), orient_relations(&square)) {
        (Ok(a), Ok(b)) => {
            report.orientation = OrientationReport {
                ok: true,
                rules: a.len(),
                square_rules: b.len(),
                error: None,
            }
        }
        (a, b) => {
            let e = a.err().or(b.err()).expect("one side failed");
            report.orientation.error = Some(e.to_string());
            report.errors.push(format!("orientation: {e}"));
            return Ok(finish(report));
        }
    }

    let checked = match opts.mode {
        Mode::Exact => run_checks(&p, &square, opts.bound, opts.emit_certificates)?.0,
        Mode::Probabilistic { points, seed } => {
            let mut first: Option<(Checked, Vec<bool>)> = None;
            let mut used = Vec::new();
            let mut candidates = evaluation_points(seed, 64 * points.max(1));
            while used.len() < points.max(1) {
                let q0 = candidates.next().ok_or(BialgError::NoEvaluationPoint)?;
                if degenerate_at(r, &q0) {
                    continue;
                }
                let (ps, ss) = match (specialize(&p, &q0), specialize(&square, &q0)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => continue,
                };
                let (c, holds) = run_checks(&ps, &ss, opts.bound, opts.emit_certificates)?;
                if let Some((_, h0)) = &first {
                    if let Some(k) = h0.iter().zip(&holds).position(|(a, b)| a != b) {
                        return Err(BialgError::ModeDisagreement { relation: k });
                    }
                } else {
                    first = Some((c, holds));
                }
                used.push(q0.to_string());
            }
            report.mode.points = used;
            first.expect("at least one point").0
        }
    };
    report.completion_warnings = checked.warnings;
    report.pass = invertible
        && checked.homomorphism.pass
        && checked.counit.pass
        && checked.coassoc.pass
        && report.errors.is_empty();
    report.homomorphism = Some(checked.homomorphism);
    report.counit = Some(checked.counit);
    report.coassociativity = Some(checked.coassoc);
    Ok(finish(report))
}
