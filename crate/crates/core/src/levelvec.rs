//! Level vectors, level numbers and local preservation of Birkhoff-James
//! orthogonality, decided through supporting functionals.
//!
//! `x` is a level vector of `T` iff some `f ∈ J(x)` and `g ∈ J(Tx)` satisfy
//! `T^× g = (‖Tx‖/‖x‖)·f`; the level number is then `‖Tx‖²/‖x‖²`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::faces::{antipodal_representatives, census, Face};
use crate::linalg::{Matrix, Vector};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::oracle::{minimize_norm_1d, normalize};
use crate::orthogonality::{bj_orthogonal, subspace_orthogonal};
use crate::rational::{from_f64, int, ratio, to_f64, Rational, Value};
use crate::rng::SampleRng;
use crate::space::{Functional, Mode, Operator, Polytope, Space};
use crate::support::{is_supporting, support_set};

/// A pair `f ∈ J(x)`, `g ∈ J(Tx)` with `T^× g = (‖Tx‖/‖x‖)·f`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelWitness {
    pub f: Functional,
    pub g: Functional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelCertificate {
    pub x: Vector,
    pub level_number: Value,
    /// Absent exactly when `Tx = 0`.
    pub witness: Option<LevelWitness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalVerdict {
    pub holds: bool,
    /// `g ∈ J(Tx)` with `T^× g = (‖Tx‖/‖x‖)·f`; absent when `Tx = 0` or on failure.
    pub g: Option<Functional>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    /// `x ⊥_B y` while `Tx` is not orthogonal to `Ty`.
    pub y: Vector,
    /// `‖Tx‖ − min_λ ‖Tx + λTy‖`, positive.
    pub margin: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreservationReport {
    pub x: Vector,
    pub holds: bool,
    pub failing_functional: Option<Functional>,
    pub counterexample: Option<Counterexample>,
}

/// Exact data shared by the polyhedral decision procedures at a point `x`.
struct ExactSetup {
    tx: Vector,
    /// `‖Tx‖/‖x‖`.
    c: Rational,
    f_vertices: Vec<Vector>,
    g_vertices: Vec<Vector>,
    /// `T^× g` for every vertex `g` of `J(Tx)`.
    images: Vec<Vector>,
}

/// Float data: `J(x) = {f}`, `J(Tx) = {g}`.
struct FloatSetup {
    tx: Vector,
    c: f64,
    f: Vec<f64>,
    g: Vec<f64>,
    image: Vec<f64>,
}

enum Setup {
    /// `Tx = 0`.
    Degenerate,
    Exact(ExactSetup),
    Float(FloatSetup),
}

fn transpose_apply_f64(m: &Matrix, g: &[f64]) -> Vec<f64> {
    (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| to_f64(m.get(r, c)) * g[r]).sum())
        .collect()
}

fn setup(t: &Operator, x: &Vector) -> Result<Setup> {
    t.domain().check_vector(x)?;
    if x.is_zero() {
        return Err(Error::ZeroVector("x"));
    }
    let mode = t.mode()?;
    let tx = t.apply(x)?;
    if tx.is_zero() {
        return Ok(Setup::Degenerate);
    }
    let jx = support_set(t.domain(), x)?;
    let jtx = support_set(t.codomain(), &tx)?;
    Ok(match mode {
        Mode::Exact => {
            let c = t.codomain().norm_exact(&tx).expect("exact")
                / t.domain().norm_exact(x).expect("exact");
            let g_vertices = jtx.exact_vertices().expect("exact").to_vec();
            let mt = t.matrix().transpose();
            Setup::Exact(ExactSetup {
                images: g_vertices.iter().map(|g| mt.mul_vec(g)).collect(),
                tx,
                c,
                f_vertices: jx.exact_vertices().expect("exact").to_vec(),
                g_vertices,
            })
        }
        Mode::Float => {
            let f = match jx.functionals().remove(0) {
                Functional::Float(f) => f,
                Functional::Exact(_) => unreachable!("float support set"),
            };
            let g = match jtx.functionals().remove(0) {
                Functional::Float(g) => g,
                Functional::Exact(_) => unreachable!("float support set"),
            };
            Setup::Float(FloatSetup {
                c: t.codomain().norm_f64(&tx) / t.domain().norm_f64(x),
                image: transpose_apply_f64(t.matrix(), &g),
                tx,
                f,
                g,
            })
        }
    })
}

fn both_euclidean(t: &Operator) -> bool {
    matches!((t.domain(), t.codomain()), (Space::Lp(a), Space::Lp(b)) if a.is_euclidean() && b.is_euclidean())
}

/// Convex weights `ν` with `Σ ν_j images_j = target`, if any.
fn convex_representation(images: &[Vector], target: &Vector) -> Option<Vec<Rational>> {
    if images.len() == 1 {
        return (images[0] == *target).then(|| vec![int(1)]);
    }
    let m = images.len();
    let mut lp = LinearProgram::new(m);
    lp.add_constraint(vec![int(1); m], Relation::Eq, int(1));
    for r in 0..target.dim() {
        lp.add_constraint(
            images.iter().map(|h| h.coords()[r].clone()).collect(),
            Relation::Eq,
            target.coords()[r].clone(),
        );
    }
    match lp.solve() {
        LpOutcome::Optimal { values, .. } => Some(values),
        _ => None,
    }
}

/// Joint search over `J(x)` and `J(Tx)`: `Σ ν_j T^× g_j = c Σ μ_i f_i`, choosing
/// among feasible `f = Σ μ_i f_i` one closest in ℓ1 to the barycenter of `J(x)`.
fn joint_representation(s: &ExactSetup) -> Option<(Vector, Vector)> {
    let (p, q) = (s.f_vertices.len(), s.images.len());
    let n = s.f_vertices[0].dim();
    let fs: Vec<&Vector> = s.f_vertices.iter().collect();
    let center = Vector::combination(&vec![ratio(1, p as i64); p], &fs);
    // Variables: μ (p), ν (q), d (n).
    let width = p + q + n;
    let mut lp = LinearProgram::new(width);
    let block = |a: Rational, b: Rational| {
        let mut row = vec![Rational::zero(); width];
        row[..p].fill(a);
        row[p..p + q].fill(b);
        row
    };
    lp.add_constraint(block(int(1), int(0)), Relation::Eq, int(1));
    lp.add_constraint(block(int(0), int(1)), Relation::Eq, int(1));
    for r in 0..n {
        let mut row = vec![Rational::zero(); width];
        for (i, f) in s.f_vertices.iter().enumerate() {
            row[i] = -(&s.c * &f.coords()[r]);
        }
        for (j, h) in s.images.iter().enumerate() {
            row[p + j] = h.coords()[r].clone();
        }
        lp.add_constraint(row, Relation::Eq, Rational::zero());
        for sign in [int(1), int(-1)] {
            let mut row = vec![Rational::zero(); width];
            for (i, f) in s.f_vertices.iter().enumerate() {
                row[i] = &sign * &f.coords()[r];
            }
            row[p + q + r] = int(-1);
            lp.add_constraint(row, Relation::Le, &sign * &center.coords()[r]);
        }
    }
    let mut objective = vec![Rational::zero(); width];
    objective[p + q..].fill(int(-1));
    lp.maximize(objective);
    match lp.solve() {
        LpOutcome::Optimal { values, .. } => {
            let f = Vector::combination(&values[..p], &fs);
            let g =
                Vector::combination(&values[p..p + q], &s.g_vertices.iter().collect::<Vec<_>>());
            Some((f, g))
        }
        _ => None,
    }
}

fn level_number_value(t: &Operator, x: &Vector, tx: &Vector) -> Value {
    match (
        t.codomain().norm_squared_exact(tx),
        t.domain().norm_squared_exact(x),
    ) {
        (Some(a), Some(b)) => Value::Exact(a / b),
        _ => {
            let r = t.codomain().norm_f64(tx) / t.domain().norm_f64(x);
            Value::Float(r * r)
        }
    }
}

/// Relative size of `T^× g − c·f` in the dual norm of the domain.
fn float_residual(t: &Operator, s: &FloatSetup, f: &[f64]) -> f64 {
    let diff: Vec<f64> = s.image.iter().zip(f).map(|(h, f)| h - s.c * f).collect();
    t.domain().dual().norm_f64_of(&diff) / s.c
}

/// Whether `T^× T x = k x` with `k = ‖Tx‖²/‖x‖²` (ℓ2 on both sides, exact).
fn euclidean_level(t: &Operator, x: &Vector, tx: &Vector) -> bool {
    let k = tx.dot(tx) / x.dot(x);
    t.matrix().transpose().mul_vec(tx) == x.scale(&k)
}

/// Decides whether `x` is a level vector of `T`.
///
/// On polyhedral spaces the witness `f` is a feasible functional nearest (in ℓ1)
/// to the barycenter of the vertices of `J(x)`.
pub fn is_level_vector(t: &Operator, x: &Vector) -> Result<Option<LevelCertificate>> {
    let s = match setup(t, x)? {
        Setup::Degenerate => {
            return Ok(Some(LevelCertificate {
                x: x.clone(),
                level_number: Value::Exact(Rational::zero()),
                witness: None,
            }))
        }
        s => s,
    };
    let witness = match &s {
        Setup::Degenerate => unreachable!(),
        Setup::Exact(s) => {
            let pair = if s.f_vertices.len() == 1 {
                let f = &s.f_vertices[0];
                convex_representation(&s.images, &f.scale(&s.c)).map(|nu| {
                    (
                        f.clone(),
                        Vector::combination(&nu, &s.g_vertices.iter().collect::<Vec<_>>()),
                    )
                })
            } else {
                joint_representation(s)
            };
            pair.map(|(f, g)| LevelWitness {
                f: Functional::Exact(f),
                g: Functional::Exact(g),
            })
        }
        Setup::Float(fs) => {
            let ok = if both_euclidean(t) {
                euclidean_level(t, x, &fs.tx)
            } else {
                float_residual(t, fs, &fs.f) <= t.domain().tolerance()
            };
            ok.then(|| LevelWitness {
                f: Functional::Float(fs.f.clone()),
                g: Functional::Float(fs.g.clone()),
            })
        }
    };
    let tx = match &s {
        Setup::Exact(s) => &s.tx,
        Setup::Float(s) => &s.tx,
        Setup::Degenerate => unreachable!(),
    };
    Ok(witness.map(|w| LevelCertificate {
        x: x.clone(),
        level_number: level_number_value(t, x, tx),
        witness: Some(w),
    }))
}

/// `‖Tx‖²/‖x‖²` for a level vector `x`.
pub fn level_number(t: &Operator, x: &Vector) -> Result<Value> {
    is_level_vector(t, x)?
        .map(|c| c.level_number)
        .ok_or(Error::NotLevelVector)
}

/// Whether `T` preserves Birkhoff-James orthogonality at `x` with respect to
/// `ker f`, i.e. some `g ∈ J(Tx)` has `T^× g = (‖Tx‖/‖x‖)·f`.
pub fn preserves_bj_directional(
    t: &Operator,
    x: &Vector,
    f: &Functional,
) -> Result<DirectionalVerdict> {
    let s = setup(t, x)?;
    match (&s, f) {
        (Setup::Exact(_), Functional::Exact(fv)) | (Setup::Degenerate, Functional::Exact(fv)) => {
            if t.domain().polytope().is_none() || !is_supporting(t.domain(), x, fv)? {
                return Err(Error::NotSupportingFunctional);
            }
        }
        (Setup::Float(_), Functional::Float(fv)) | (Setup::Degenerate, Functional::Float(fv)) => {
            let Space::Lp(d) = t.domain() else {
                return Err(Error::NotSupportingFunctional);
            };
            let j = d.duality_map(&x.to_f64());
            let diff: Vec<f64> = j.iter().zip(fv).map(|(a, b)| a - b).collect();
            if fv.len() != j.len() || d.conjugate().norm_f64(&diff) > d.tolerance() {
                return Err(Error::NotSupportingFunctional);
            }
        }
        _ => return Err(Error::NotSupportingFunctional),
    }
    Ok(match s {
        Setup::Degenerate => DirectionalVerdict {
            holds: true,
            g: None,
        },
        Setup::Exact(s) => {
            let fv = f.as_exact().expect("checked above");
            match convex_representation(&s.images, &fv.scale(&s.c)) {
                Some(nu) => DirectionalVerdict {
                    holds: true,
                    g: Some(Functional::Exact(Vector::combination(
                        &nu,
                        &s.g_vertices.iter().collect::<Vec<_>>(),
                    ))),
                },
                None => DirectionalVerdict {
                    holds: false,
                    g: None,
                },
            }
        }
        Setup::Float(fs) => {
            let holds = if both_euclidean(t) {
                euclidean_level(t, x, &fs.tx)
            } else {
                let Functional::Float(fv) = f else {
                    unreachable!()
                };
                float_residual(t, &fs, fv) <= t.domain().tolerance()
            };
            DirectionalVerdict {
                holds,
                g: holds.then(|| Functional::Float(fs.g.clone())),
            }
        }
    })
}

/// `y` with `f(y) = 0` and `g(Ty)` of one strict sign on every vertex `g` of `J(Tx)`.
fn separating_direction(f: &Vector, images: &[Vector]) -> Option<Vector> {
    let n = f.dim();
    for sign in [Relation::Ge, Relation::Le] {
        let mut lp = LinearProgram::new(n);
        for i in 0..n {
            lp.set_free(i);
        }
        lp.add_constraint(f.coords().to_vec(), Relation::Eq, Rational::zero());
        let rhs = if sign == Relation::Ge {
            int(1)
        } else {
            int(-1)
        };
        for h in images {
            lp.add_constraint(h.coords().to_vec(), sign, rhs.clone());
        }
        if let LpOutcome::Optimal { values, .. } = lp.solve() {
            return Some(Vector::new(values));
        }
    }
    None
}

fn oracle_gap(space: &Space, tx: &Vector, ty: &Vector) -> Result<Value> {
    if ty.is_zero() {
        return Ok(Value::Exact(Rational::zero()));
    }
    let line = minimize_norm_1d(space, tx, ty)?;
    Ok(match (&line.value, space.norm_exact(tx)) {
        (Value::Exact(m), Some(n)) => Value::Exact(n - m),
        _ => Value::Float(space.norm_f64(tx) - line.value.to_f64()),
    })
}

/// Decides `x ⊥_B y ⇒ Tx ⊥_B Ty` for all `y`, i.e. `(‖Tx‖/‖x‖)·J(x) ⊆ T^×(J(Tx))`,
/// and produces a verified counterexample on failure.
pub fn preserves_bj_at(t: &Operator, x: &Vector) -> Result<PreservationReport> {
    let holds_report = || PreservationReport {
        x: x.clone(),
        holds: true,
        failing_functional: None,
        counterexample: None,
    };
    match setup(t, x)? {
        Setup::Degenerate => Ok(holds_report()),
        Setup::Exact(s) => {
            let Some(f) = s
                .f_vertices
                .iter()
                .find(|f| convex_representation(&s.images, &f.scale(&s.c)).is_none())
            else {
                return Ok(holds_report());
            };
            let y = separating_direction(f, &s.images).ok_or_else(|| {
                Error::Internal("no separating direction for a failing functional".into())
            })?;
            let y = normalize(t.domain(), &y);
            let ty = t.apply(&y)?;
            if !bj_orthogonal(t.domain(), x, &y)?.orthogonal
                || bj_orthogonal(t.codomain(), &s.tx, &ty)?.orthogonal
            {
                return Err(Error::Internal("counterexample failed verification".into()));
            }
            Ok(PreservationReport {
                x: x.clone(),
                holds: false,
                failing_functional: Some(Functional::Exact(f.clone())),
                counterexample: Some(Counterexample {
                    margin: oracle_gap(t.codomain(), &s.tx, &ty)?,
                    y,
                }),
            })
        }
        Setup::Float(fs) => {
            let euclidean = both_euclidean(t);
            let holds = if euclidean {
                euclidean_level(t, x, &fs.tx)
            } else {
                float_residual(t, &fs, &fs.f) <= t.domain().tolerance()
            };
            if holds {
                return Ok(holds_report());
            }
            let y = if euclidean {
                // u = TᵀTx − kx is orthogonal to x and ⟨Tx, Tu⟩ = ‖u‖² > 0.
                let k = fs.tx.dot(&fs.tx) / x.dot(x);
                t.matrix().transpose().mul_vec(&fs.tx).add_scaled(&-k, x)
            } else {
                let u: Vec<f64> = fs
                    .image
                    .iter()
                    .zip(&fs.f)
                    .map(|(h, f)| h - fs.c * f)
                    .collect();
                let xf = x.to_f64();
                let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
                let r = dot(&fs.f, &u) / dot(&fs.f, &xf);
                Vector::new(
                    u.iter()
                        .zip(&xf)
                        .map(|(a, b)| from_f64(a - r * b))
                        .collect(),
                )
            };
            let ty = t.apply(&y)?;
            Ok(PreservationReport {
                x: x.clone(),
                holds: false,
                failing_functional: Some(Functional::Float(fs.f.clone())),
                counterexample: Some(Counterexample {
                    margin: oracle_gap(t.codomain(), &fs.tx, &ty)?,
                    y,
                }),
            })
        }
    }
}

/// Necessary condition for level vectors: `Tx = 0` or `ker T ⊂ x^{⊥_B}`.
pub fn kernel_condition(t: &Operator, x: &Vector) -> Result<bool> {
    t.domain().check_vector(x)?;
    if x.is_zero() {
        return Err(Error::ZeroVector("x"));
    }
    if t.apply(x)?.is_zero() {
        return Ok(true);
    }
    let basis = t.kernel_basis();
    if basis.is_empty() {
        return Ok(true);
    }
    Ok(subspace_orthogonal(t.domain(), x, &basis)?.orthogonal)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub point: Vector,
    /// Level number when the point is a level vector.
    pub level_number: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceLevelRecord {
    pub face: Face,
    pub vertices: Vec<Vector>,
    /// Centroid first, then the random relative-interior samples.
    pub tested: Vec<PointRecord>,
    /// Distinct level numbers found on the face, ascending.
    pub level_numbers: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelNumberReport {
    /// Distinct level numbers found, ascending.
    pub values: Vec<Rational>,
    /// Faces (one per antipodal pair) on which a level vector was found.
    pub per_face: Vec<FaceLevelRecord>,
    /// Upper bound on the number of level numbers; absent when the operator
    /// is not an endomorphism.
    pub bound: Option<Rational>,
    pub under_approximation: bool,
    pub samples_per_face: usize,
    pub seed: u64,
}

/// Samples the relative interior of one face from each antipodal pair
/// (centroid plus random strictly positive convex combinations of its
/// vertices; a vertex is its own relative interior) and collects the level
/// numbers found. The result is an
/// under-approximation of the set of all level numbers.
pub fn enumerate_level_numbers(
    t: &Operator,
    samples_per_face: usize,
    seed: u64,
) -> Result<LevelNumberReport> {
    let ball = t.domain().require_polytope("level-number enumeration")?;
    t.mode()?;
    let mut rng = SampleRng::new(seed);
    let mut values = BTreeSet::new();
    let mut per_face = Vec::new();
    for face in antipodal_representatives(t.domain())? {
        let points = face.vertex_points(ball);
        let mut candidates = vec![face.centroid(ball)];
        for _ in 0..if face.dim == 0 { 0 } else { samples_per_face } {
            candidates.push(Vector::combination(
                &rng.positive_weights(points.len()),
                &points,
            ));
        }
        let mut tested = Vec::with_capacity(candidates.len());
        let mut found = BTreeSet::new();
        for point in candidates {
            let k = is_level_vector(t, &point)?
                .map(|c| c.level_number.as_exact().expect("exact").clone());
            if let Some(k) = &k {
                found.insert(k.clone());
            }
            tested.push(PointRecord {
                point,
                level_number: k,
            });
        }
        if !found.is_empty() {
            values.extend(found.iter().cloned());
            per_face.push(FaceLevelRecord {
                vertices: points.into_iter().cloned().collect(),
                face,
                tested,
                level_numbers: found.into_iter().collect(),
            });
        }
    }
    let bound = if t.domain() == t.codomain() {
        Some(level_count_bound(t)?)
    } else {
        None
    };
    Ok(LevelNumberReport {
        values: values.into_iter().collect(),
        per_face,
        bound,
        under_approximation: true,
        samples_per_face,
        seed,
    })
}

/// Unit ball of `ker T` in the coordinates of a kernel basis `K`:
/// `{z : f(Kz) ≤ 1}` for the facet normals `f` of the domain ball.
fn kernel_ball(ball: &Polytope, basis: &[Vector]) -> Result<Space> {
    let normals: BTreeSet<Vector> = ball
        .facets()
        .iter()
        .map(|f| Vector::new(basis.iter().map(|k| f.dot(k)).collect()))
        .filter(|v| !v.is_zero())
        .collect();
    let normals: Vec<Vector> = normals.into_iter().collect();
    Ok(Space::Polyhedral(std::sync::Arc::new(
        Polytope::from_halfspaces(&normals)?,
    )))
}

/// Bound on the number of distinct level numbers of `T ∈ 𝕃(𝕏)` on a
/// polyhedral space: `½Σ|F_k|` when injective, otherwise
/// `½(Σ|F_k| − Σ|G_k|) + 1` with `G_k` the faces of the unit ball of `ker T`.
pub fn level_count_bound(t: &Operator) -> Result<Rational> {
    t.domain().require_polytope("level-number bound")?;
    if t.domain() != t.codomain() {
        return Err(Error::InvalidArgument(
            "the level-number bound needs an operator on a single space".into(),
        ));
    }
    let ball = t.domain().polytope().expect("checked");
    let total = Rational::from_integer(census(t.domain())?.total.into());
    let basis = t.kernel_basis();
    if basis.is_empty() {
        return Ok(total / int(2));
    }
    let kernel_total = if basis.len() == ball.dim() {
        total.clone()
    } else {
        Rational::from_integer(census(&kernel_ball(ball, &basis)?)?.total.into())
    };
    Ok((total - kernel_total) / int(2) + Rational::one())
}
