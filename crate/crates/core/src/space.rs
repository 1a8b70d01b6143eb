//! Finite-dimensional real normed spaces, their duals, and operators between them.
//!
//! Polyhedral spaces (including ℓ1ⁿ and ℓ∞ⁿ, which are lowered to the
//! cross-polytope and the cube) are handled in exact rational arithmetic.
//! ℓp for 1 < p < ∞ runs in `f64` with a relative tolerance carried by the
//! space itself; ℓ2 additionally gets exact squared norms and pairings.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{rank, solve_square, Matrix, Vector};
use crate::rational::{format_rational, int, to_f64, Rational, Value};

/// Largest dimension accepted for the closed-form ℓ1ⁿ / ℓ∞ⁿ balls (2ⁿ vertices or facets).
pub const MAX_COMBINATORIAL_DIM: usize = 12;
/// Largest dimension accepted for polytopes given by an explicit vertex list.
pub const MAX_GENERAL_DIM: usize = 8;
/// Default relative tolerance of the floating-point path.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// A dual vector, exact on the polyhedral path and `f64` on the ℓp path.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    Exact(Vector),
    Float(Vec<f64>),
}

impl Functional {
    pub fn apply_f64(&self, x: &Vector) -> f64 {
        match self {
            Functional::Exact(f) => to_f64(&f.dot(x)),
            Functional::Float(f) => f.iter().zip(x.to_f64()).map(|(a, b)| a * b).sum(),
        }
    }

    pub fn as_exact(&self) -> Option<&Vector> {
        match self {
            Functional::Exact(f) => Some(f),
            Functional::Float(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Functional::Exact(f) => serde_json::json!(f.to_strings()),
            Functional::Float(f) => serde_json::json!(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallFamily {
    /// Unit ball of ℓ1ⁿ.
    CrossPolytope,
    /// Unit ball of ℓ∞ⁿ.
    Cube,
    General,
}

/// A centrally symmetric, full-dimensional polytope used as a unit ball.
///
/// Both representations are kept: `vertices` are the extreme points of the
/// ball and `facets` are the normals `f` with `max_v f(v) = 1`, i.e. the
/// vertices of the dual ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    family: BallFamily,
    vertices: Vec<Vector>,
    facets: Vec<Vector>,
    vertex_antipode: Vec<usize>,
    facet_antipode: Vec<usize>,
}

fn sign_vectors(n: usize) -> Vec<Vector> {
    (0..1usize << n)
        .map(|mask| {
            Vector::new(
                (0..n)
                    .map(|i| {
                        if mask >> (n - 1 - i) & 1 == 1 {
                            int(-1)
                        } else {
                            int(1)
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

fn signed_units(n: usize) -> Vec<Vector> {
    (0..n)
        .flat_map(|i| {
            let e = Vector::unit(n, i);
            let neg = -&e;
            [e, neg]
        })
        .collect()
}

fn antipodes(points: &[Vector]) -> Result<Vec<usize>> {
    let index: HashMap<&Vector, usize> = points.iter().enumerate().map(|(i, v)| (v, i)).collect();
    points
        .iter()
        .map(|v| {
            index.get(&-v).copied().ok_or_else(|| {
                Error::InvalidSpace(format!("vertex set is not symmetric: -{v} missing"))
            })
        })
        .collect()
}

/// Vertices of the polar `{f : f(p) ≤ 1 for all p}` of a full-dimensional
/// symmetric point set, by solving `f(p_i) = 1` on every `dim`-subset.
pub(crate) fn polar_vertices(points: &[Vector], dim: usize) -> Vec<Vector> {
    let mut found: Vec<Vector> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let ones = vec![Rational::one(); dim];
    for subset in combinations(points.len(), dim) {
        let rows: Vec<Vector> = subset.iter().map(|&i| points[i].clone()).collect();
        let Some(f) = solve_square(&rows, &ones) else {
            continue;
        };
        if points.iter().all(|p| f.dot(p) <= Rational::one()) && seen.insert(f.clone()) {
            found.push(f);
        }
    }
    found
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

impl Polytope {
    /// Unit ball of ℓ1ⁿ.
    pub fn cross(n: usize) -> Result<Self> {
        Self::check_combinatorial_dim(n)?;
        let vertices = signed_units(n);
        let facets = sign_vectors(n);
        Ok(Polytope {
            dim: n,
            family: BallFamily::CrossPolytope,
            vertex_antipode: antipodes(&vertices)?,
            facet_antipode: antipodes(&facets)?,
            vertices,
            facets,
        })
    }

    /// Unit ball of ℓ∞ⁿ.
    pub fn cube(n: usize) -> Result<Self> {
        Ok(Self::cross(n)?.polar())
    }

    fn check_combinatorial_dim(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if n > MAX_COMBINATORIAL_DIM {
            return Err(Error::TooLarge(format!(
                "dimension {n} exceeds {MAX_COMBINATORIAL_DIM} for ℓ1/ℓ∞ balls"
            )));
        }
        Ok(())
    }

    /// Builds a ball from its extreme points, validating symmetry, full
    /// dimension, and that every listed point is extreme.
    pub fn from_vertices(vertices: Vec<Vector>) -> Result<Self> {
        let dim = vertices
            .first()
            .ok_or_else(|| Error::InvalidSpace("no ball vertices".into()))?
            .dim();
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if dim > MAX_GENERAL_DIM {
            return Err(Error::TooLarge(format!(
                "explicit polytopes are limited to dimension {MAX_GENERAL_DIM}"
            )));
        }
        for v in &vertices {
            check_dim(dim, v.dim())?;
            if v.is_zero() {
                return Err(Error::InvalidSpace(
                    "zero vector listed as a ball vertex".into(),
                ));
            }
        }
        let mut unique = std::collections::HashSet::new();
        if !vertices.iter().all(|v| unique.insert(v)) {
            return Err(Error::InvalidSpace("duplicate ball vertex".into()));
        }
        let vertex_antipode = antipodes(&vertices)?;
        if rank(&vertices) != dim {
            return Err(Error::InvalidSpace(
                "ball vertices do not span the space".into(),
            ));
        }
        let facets = polar_vertices(&vertices, dim);
        for v in &vertices {
            let tight: Vec<Vector> = facets
                .iter()
                .filter(|f| f.dot(v).is_one())
                .cloned()
                .collect();
            if rank(&tight) != dim {
                return Err(Error::InvalidSpace(format!(
                    "{v} is not an extreme point of the ball"
                )));
            }
        }
        let facet_antipode = antipodes(&facets)?;
        Ok(Polytope {
            dim,
            family: BallFamily::General,
            vertices,
            facets,
            vertex_antipode,
            facet_antipode,
        })
    }

    /// Builds the ball `{x : f(x) ≤ 1 for every f in normals}`; the normal set
    /// must be symmetric and may contain redundant inequalities.
    pub fn from_halfspaces(normals: &[Vector]) -> Result<Self> {
        let dim = normals
            .first()
            .ok_or_else(|| Error::InvalidSpace("no halfspaces".into()))?
            .dim();
        if rank(normals) != dim {
            return Err(Error::InvalidSpace(
                "halfspaces do not bound a polytope".into(),
            ));
        }
        Self::from_vertices(polar_vertices(normals, dim))
    }

    /// The dual ball; vertices and facets swap roles.
    pub fn polar(&self) -> Polytope {
        Polytope {
            dim: self.dim,
            family: match self.family {
                BallFamily::CrossPolytope => BallFamily::Cube,
                BallFamily::Cube => BallFamily::CrossPolytope,
                BallFamily::General => BallFamily::General,
            },
            vertices: self.facets.clone(),
            facets: self.vertices.clone(),
            vertex_antipode: self.facet_antipode.clone(),
            facet_antipode: self.vertex_antipode.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> BallFamily {
        self.family
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn vertex_antipode(&self, i: usize) -> usize {
        self.vertex_antipode[i]
    }

    pub fn facet_antipode(&self, i: usize) -> usize {
        self.facet_antipode[i]
    }

    /// Minkowski functional of the ball.
    pub fn norm(&self, x: &Vector) -> Rational {
        match self.family {
            BallFamily::CrossPolytope => x.coords().iter().map(|c| c.abs()).sum(),
            BallFamily::Cube => x.max_abs(),
            BallFamily::General => self
                .facets
                .iter()
                .map(|f| f.dot(x))
                .max()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// Norm of a functional in the dual space: `max_v f(v)` over ball vertices.
    pub fn dual_norm(&self, f: &Vector) -> Rational {
        match self.family {
            BallFamily::CrossPolytope => f.max_abs(),
            BallFamily::Cube => f.coords().iter().map(|c| c.abs()).sum(),
            BallFamily::General => self
                .vertices
                .iter()
                .map(|v| f.dot(v))
                .max()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// Indices of the facet normals `f` with `f(x) = ‖x‖`.
    pub fn tight_facets(&self, x: &Vector) -> Vec<usize> {
        let n = self.norm(x);
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.dot(x) == n)
            .map(|(i, _)| i)
            .collect()
    }
}

/// ℓp with 1 < p < ∞, evaluated in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSpace {
    dim: usize,
    p: Rational,
    tolerance: f64,
}

impl LpSpace {
    pub fn new(dim: usize, p: Rational) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if p <= Rational::one() {
            return Err(Error::InvalidSpace(format!(
                "ℓp float path requires p > 1, got {}",
                format_rational(&p)
            )));
        }
        Ok(LpSpace {
            dim,
            p,
            tolerance: DEFAULT_FLOAT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn p_f64(&self) -> f64 {
        to_f64(&self.p)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_euclidean(&self) -> bool {
        self.p == int(2)
    }

    pub fn conjugate(&self) -> LpSpace {
        let q = &self.p / (&self.p - Rational::one());
        LpSpace {
            dim: self.dim,
            p: q,
            tolerance: self.tolerance,
        }
    }

    pub fn norm_f64(&self, x: &[f64]) -> f64 {
        let p = self.p_f64();
        let scale = x.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let sum: f64 = x.iter().map(|c| (c.abs() / scale).powf(p)).sum();
        scale * sum.powf(1.0 / p)
    }

    /// The unique supporting functional `sign(x_i)|x_i|^{p-1} / ‖x‖^{p-1}`.
    pub fn duality_map(&self, x: &[f64]) -> Vec<f64> {
        let p = self.p_f64();
        let n = self.norm_f64(x);
        x.iter()
            .map(|&c| c.signum() * (c.abs() / n).powf(p - 1.0))
            .map(|c| if c.is_nan() { 0.0 } else { c })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exponent {
    Finite(Rational),
    Infinity,
}

/// A finite-dimensional real normed space.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Polyhedral(Arc<Polytope>),
    Lp(LpSpace),
}

impl Space {
    /// ℓpⁿ; p = 1 and p = ∞ are lowered to their polyhedral balls.
    pub fn lp(dim: usize, p: Exponent) -> Result<Self> {
        match p {
            Exponent::Infinity => Ok(Space::Polyhedral(Arc::new(Polytope::cube(dim)?))),
            Exponent::Finite(p) if p.is_one() => {
                Ok(Space::Polyhedral(Arc::new(Polytope::cross(dim)?)))
            }
            Exponent::Finite(p) => Ok(Space::Lp(LpSpace::new(dim, p)?)),
        }
    }

    pub fn l1(dim: usize) -> Result<Self> {
        Self::lp(dim, Exponent::Finite(int(1)))
    }

    pub fn linf(dim: usize) -> Result<Self> {
        Self::lp(dim, Exponent::Infinity)
    }

    pub fn l2(dim: usize) -> Result<Self> {
        Self::lp(dim, Exponent::Finite(int(2)))
    }

    pub fn polyhedral(vertices: Vec<Vector>) -> Result<Self> {
        Ok(Space::Polyhedral(Arc::new(Polytope::from_vertices(
            vertices,
        )?)))
    }

    pub fn dim(&self) -> usize {
        match self {
            Space::Polyhedral(b) => b.dim(),
            Space::Lp(s) => s.dim(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Space::Polyhedral(_) => Mode::Exact,
            Space::Lp(_) => Mode::Float,
        }
    }

    pub fn polytope(&self) -> Option<&Polytope> {
        match self {
            Space::Polyhedral(b) => Some(b),
            Space::Lp(_) => None,
        }
    }

    pub fn require_polytope(&self, what: &'static str) -> Result<&Polytope> {
        self.polytope().ok_or(Error::NotPolyhedral(what))
    }

    pub fn check_vector(&self, x: &Vector) -> Result<()> {
        check_dim(self.dim(), x.dim())
    }

    /// Exact norm on polyhedral spaces.
    pub fn norm_exact(&self, x: &Vector) -> Option<Rational> {
        self.polytope().map(|b| b.norm(x))
    }

    /// ‖x‖² exactly, where it is rational: polyhedral spaces and ℓ2.
    pub fn norm_squared_exact(&self, x: &Vector) -> Option<Rational> {
        match self {
            Space::Polyhedral(b) => {
                let n = b.norm(x);
                Some(&n * &n)
            }
            Space::Lp(s) if s.is_euclidean() => Some(x.dot(x)),
            Space::Lp(_) => None,
        }
    }

    pub fn norm_f64(&self, x: &Vector) -> f64 {
        match self {
            Space::Polyhedral(b) => to_f64(&b.norm(x)),
            Space::Lp(s) => s.norm_f64(&x.to_f64()),
        }
    }

    pub fn norm_f64_of(&self, x: &[f64]) -> f64 {
        match self {
            Space::Polyhedral(b) => {
                let v = b
                    .facets()
                    .iter()
                    .map(|f| f.to_f64().iter().zip(x).map(|(a, b)| a * b).sum::<f64>());
                v.fold(0.0, f64::max)
            }
            Space::Lp(s) => s.norm_f64(x),
        }
    }

    /// Relative tolerance of the active arithmetic (zero on the exact path).
    pub fn tolerance(&self) -> f64 {
        match self {
            Space::Polyhedral(_) => 0.0,
            Space::Lp(s) => s.tolerance(),
        }
    }

    pub fn dual(&self) -> Space {
        match self {
            Space::Polyhedral(b) => Space::Polyhedral(Arc::new(b.polar())),
            Space::Lp(s) => Space::Lp(s.conjugate()),
        }
    }

    /// Short description used in reports, e.g. `ℓ1^3` or `polyhedral^2`.
    pub fn label(&self) -> String {
        match self {
            Space::Polyhedral(b) => match b.family() {
                BallFamily::CrossPolytope => format!("l1^{}", b.dim()),
                BallFamily::Cube => format!("linf^{}", b.dim()),
                BallFamily::General => format!("polyhedral^{}", b.dim()),
            },
            Space::Lp(s) => format!("l{}^{}", format_rational(s.p()), s.dim()),
        }
    }
}

/// ‖x‖ in the given space.
pub fn norm(space: &Space, x: &Vector) -> Result<Value> {
    space.check_vector(x)?;
    Ok(match space.norm_exact(x) {
        Some(n) => Value::Exact(n),
        None => Value::Float(space.norm_f64(x)),
    })
}

/// The dual space: ℓp ↦ ℓq and a polyhedral ball ↦ its polar.
pub fn dual_space(space: &Space) -> Space {
    space.dual()
}

/// A linear map between two spaces, stored as an exact `m × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: Matrix,
    domain: Space,
    codomain: Space,
}

impl Operator {
    pub fn new(matrix: Matrix, domain: Space, codomain: Space) -> Result<Self> {
        check_dim(domain.dim(), matrix.cols())?;
        check_dim(codomain.dim(), matrix.rows())?;
        Ok(Operator {
            matrix,
            domain,
            codomain,
        })
    }

    /// An operator on a single space.
    pub fn on(space: &Space, matrix: Matrix) -> Result<Self> {
        Self::new(matrix, space.clone(), space.clone())
    }

    pub fn identity(space: &Space) -> Self {
        Operator {
            matrix: Matrix::identity(space.dim()),
            domain: space.clone(),
            codomain: space.clone(),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        self.domain.check_vector(x)?;
        Ok(self.matrix.mul_vec(x))
    }

    /// `T^×`, acting from the dual of the codomain to the dual of the domain.
    pub fn adjoint(&self) -> Operator {
        Operator {
            matrix: self.matrix.transpose(),
            domain: self.codomain.dual(),
            codomain: self.domain.dual(),
        }
    }

    pub fn scaled(&self, s: &Rational) -> Operator {
        Operator {
            matrix: self.matrix.scale(s),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.matrix.nullspace()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.cols()
    }

    /// Shared arithmetic mode of domain and codomain.
    pub fn mode(&self) -> Result<Mode> {
        match (self.domain.mode(), self.codomain.mode()) {
            (a, b) if a == b => Ok(a),
            _ => Err(Error::MixedArithmetic),
        }
    }
}

/// Free-function form of [`Operator::adjoint`].
pub fn adjoint(t: &Operator) -> Operator {
    t.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{LinearProgram, LpOutcome, Relation};
    use crate::rational::ratio;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    pub(crate) fn hexagon() -> Space {
        Space::polyhedral(vec![
            v(&[1, 0]),
            v(&[0, 1]),
            v(&[1, 1]),
            v(&[-1, 0]),
            v(&[0, -1]),
            v(&[-1, -1]),
        ])
        .unwrap()
    }

    /// Minkowski functional `min{t : x = Σ μ_i v_i, Σ μ_i = t, μ ≥ 0}` by LP.
    fn minkowski_oracle(vertices: &[Vector], x: &Vector) -> Rational {
        let m = vertices.len();
        let mut lp = LinearProgram::new(m);
        for r in 0..x.dim() {
            lp.add_constraint(
                vertices.iter().map(|v| v.coords()[r].clone()).collect(),
                Relation::Eq,
                x.coords()[r].clone(),
            );
        }
        lp.maximize(vec![int(-1); m]);
        match lp.solve() {
            LpOutcome::Optimal { objective, .. } => -objective,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn norm_examples() {
        let l1 = Space::l1(3).unwrap();
        let x = Vector::new(vec![ratio(1, 2), ratio(1, 2), int(0)]);
        assert_eq!(norm(&l1, &x).unwrap(), Value::Exact(int(1)));
        let linf = Space::linf(3).unwrap();
        let y = Vector::new(vec![int(1), ratio(1, 2), int(0)]);
        assert_eq!(norm(&linf, &y).unwrap(), Value::Exact(int(1)));
        let hex = hexagon();
        assert_eq!(norm(&hex, &v(&[1, 1])).unwrap(), Value::Exact(int(1)));
        assert!(matches!(
            norm(&l1, &v(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hexagon_norm_matches_minkowski_oracle() {
        let hex = hexagon();
        let verts = hex.polytope().unwrap().vertices().to_vec();
        let mut rng = crate::rng::SampleRng::new(3);
        for _ in 0..50 {
            let x = Vector::new(vec![rng.rational(2, 6), rng.rational(2, 6)]);
            assert_eq!(
                hex.norm_exact(&x).unwrap(),
                minkowski_oracle(&verts, &x),
                "{x}"
            );
        }
        assert_eq!(minkowski_oracle(&verts, &v(&[1, 1])), int(1));
    }

    #[test]
    fn hexagon_facets() {
        let hex = hexagon();
        let mut facets = hex.polytope().unwrap().facets().to_vec();
        facets.sort();
        let mut expected = vec![
            v(&[1, 0]),
            v(&[0, 1]),
            v(&[-1, 1]),
            v(&[-1, 0]),
            v(&[0, -1]),
            v(&[1, -1]),
        ];
        expected.sort();
        assert_eq!(facets, expected);
    }

    #[test]
    fn dual_space_examples() {
        let d = dual_space(&Space::l1(3).unwrap());
        assert_eq!(d.label(), "linf^3");
        assert_eq!(d, Space::linf(3).unwrap());
        assert_eq!(dual_space(&Space::linf(2).unwrap()), Space::l1(2).unwrap());

        let square =
            Space::polyhedral(vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])]).unwrap();
        let mut dv = dual_space(&square).polytope().unwrap().vertices().to_vec();
        dv.sort();
        let mut expected = vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])];
        expected.sort();
        assert_eq!(dv, expected);

        let l3 = Space::lp(2, Exponent::Finite(int(3))).unwrap();
        match dual_space(&l3) {
            Space::Lp(s) => assert_eq!(s.p(), &ratio(3, 2)),
            _ => panic!(),
        }
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Space::polyhedral(vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0])]),
            Err(Error::InvalidSpace(_))
        ));
        // (1, 0) lies inside conv{±(1,1), ±(1,-1)}.
        assert!(matches!(
            Space::polyhedral(vec![
                v(&[1, 1]),
                v(&[1, -1]),
                v(&[-1, 1]),
                v(&[-1, -1]),
                v(&[1, 0]),
                v(&[-1, 0])
            ]),
            Err(Error::InvalidSpace(_))
        ));
        assert!(matches!(
            Space::polyhedral(vec![v(&[1, 1]), v(&[-1, -1])]),
            Err(Error::InvalidSpace(_))
        ));
        assert!(matches!(Space::linf(13), Err(Error::TooLarge(_))));
        assert!(Space::linf(12).is_ok());
        assert!(matches!(
            Space::lp(2, Exponent::Finite(ratio(1, 2))),
            Err(Error::InvalidSpace(_))
        ));
    }

    #[test]
    fn adjoint_examples() {
        let linf = Space::linf(3).unwrap();
        let t = Operator::on(&linf, Matrix::diagonal(&[int(1), int(2), int(3)])).unwrap();
        let ta = adjoint(&t);
        assert_eq!(ta.domain(), &Space::l1(3).unwrap());
        assert_eq!(ta.matrix(), t.matrix());

        let m = Matrix::from_int_rows(&[&[3, -2, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        let t = Operator::on(&linf, m.clone()).unwrap();
        assert_eq!(t.adjoint().matrix(), &m.transpose());
        let x = Vector::new(vec![int(1), ratio(-1, 3), int(2)]);
        let g = Vector::new(vec![ratio(1, 2), int(0), ratio(-1, 2)]);
        assert_eq!(
            g.dot(&t.apply(&x).unwrap()),
            t.adjoint().apply(&g).unwrap().dot(&x)
        );

        let id = Operator::identity(&linf);
        assert_eq!(id.adjoint(), Operator::identity(&Space::l1(3).unwrap()));
    }

    #[test]
    fn combinations_enumerate() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 3).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn lp_float_norms() {
        let l2 = Space::l2(2).unwrap();
        assert!((l2.norm_f64(&v(&[3, 4])) - 5.0).abs() < 1e-12);
        assert_eq!(l2.norm_squared_exact(&v(&[3, 4])), Some(int(25)));
        match &l2 {
            Space::Lp(s) => {
                let f = s.duality_map(&[3.0, 4.0]);
                assert!((f[0] - 0.6).abs() < 1e-12 && (f[1] - 0.8).abs() < 1e-12);
            }
            _ => panic!(),
        }
    }
}
