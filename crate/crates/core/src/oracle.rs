//! Brute-force baselines used to validate the dual-certificate algorithms.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::orthogonality::bj_orthogonal_oracle;
use crate::rational::{from_f64, int, Rational, Value};
use crate::rng::SampleRng;
use crate::space::{BallFamily, Operator, Space};
use crate::support::{support_set, SupportSet};

const TERNARY_WIDTH: f64 = 1e-10;

/// Minimizer and minimum of `λ ↦ ‖x + λy‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineMinimum {
    pub lambda: Value,
    pub value: Value,
}

/// Minimizes the convex map `λ ↦ ‖x + λy‖` on `|λ| ≤ 2‖x‖/‖y‖`, which contains
/// every minimizer since `‖x + λy‖ ≥ |λ|‖y‖ − ‖x‖`.
///
/// Polyhedral spaces scan all breakpoints of the piecewise-linear map exactly;
/// ties are broken towards the smallest `|λ|`. The float path uses ternary search.
pub fn minimize_norm_1d(space: &Space, x: &Vector, y: &Vector) -> Result<LineMinimum> {
    space.check_vector(x)?;
    space.check_vector(y)?;
    if y.is_zero() {
        return Err(Error::ZeroVector("y"));
    }
    match space {
        Space::Polyhedral(ball) => {
            let bound = int(2) * ball.norm(x) / ball.norm(y);
            let mut candidates: BTreeSet<Rational> = BTreeSet::new();
            candidates.insert(-bound.clone());
            candidates.insert(bound.clone());
            candidates.insert(Rational::zero());
            match ball.family() {
                BallFamily::CrossPolytope => {
                    for (xi, yi) in x.coords().iter().zip(y.coords()) {
                        if !yi.is_zero() {
                            candidates.insert(-xi / yi);
                        }
                    }
                }
                _ => {
                    // ‖x + λy‖ = max_i (a_i + λ b_i); kinks are pairwise crossings.
                    let lines: Vec<(Rational, Rational)> =
                        ball.facets().iter().map(|f| (f.dot(x), f.dot(y))).collect();
                    for (i, (ai, bi)) in lines.iter().enumerate() {
                        for (aj, bj) in &lines[i + 1..] {
                            if bi != bj {
                                candidates.insert((aj - ai) / (bi - bj));
                            }
                        }
                    }
                }
            }
            let mut best: Option<(Rational, Rational)> = None;
            for lambda in candidates.into_iter().filter(|l| l.abs() <= bound) {
                let value = ball.norm(&x.add_scaled(&lambda, y));
                let better = match &best {
                    None => true,
                    Some((bl, bv)) => value < *bv || (value == *bv && lambda.abs() < bl.abs()),
                };
                if better {
                    best = Some((lambda, value));
                }
            }
            let (lambda, value) = best.expect("candidate set is nonempty");
            Ok(LineMinimum {
                lambda: Value::Exact(lambda),
                value: Value::Exact(value),
            })
        }
        Space::Lp(s) => {
            let xf = x.to_f64();
            let yf = y.to_f64();
            let eval = |l: f64| {
                let p: Vec<f64> = xf.iter().zip(&yf).map(|(a, b)| a + l * b).collect();
                s.norm_f64(&p)
            };
            let bound = 2.0 * s.norm_f64(&xf) / s.norm_f64(&yf);
            let (mut lo, mut hi) = (-bound, bound);
            while hi - lo > TERNARY_WIDTH {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if eval(m1) <= eval(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let mid = 0.5 * (lo + hi);
            let (lambda, value) = if eval(0.0) <= eval(mid) {
                (0.0, eval(0.0))
            } else {
                (mid, eval(mid))
            };
            Ok(LineMinimum {
                lambda: Value::Float(lambda),
                value: Value::Float(value),
            })
        }
    }
}

/// Deterministic stream of unit vectors.
#[derive(Debug, Clone)]
pub struct SampleStream {
    pub seed: u64,
    pub count: usize,
    pub space: Space,
}

impl SampleStream {
    pub fn vectors(&self) -> Vec<Vector> {
        sample_sphere(&self.space, self.count, self.seed)
    }
}

/// Random nonzero direction with coordinates in `{k/8 : |k| ≤ 8}`.
pub(crate) fn random_direction(rng: &mut SampleRng, dim: usize) -> Vector {
    loop {
        let v = Vector::new((0..dim).map(|_| rng.rational(1, 8)).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// Normalizes a nonzero vector: exactly on polyhedral spaces, to within 1e-12 otherwise.
pub fn normalize(space: &Space, x: &Vector) -> Vector {
    match space.norm_exact(x) {
        Some(n) => x.scale(&n.recip()),
        None => {
            let n = space.norm_f64(x);
            Vector::new(x.to_f64().iter().map(|c| from_f64(c / n)).collect())
        }
    }
}

/// `n` unit vectors drawn from the documented deterministic generator.
pub fn sample_sphere(space: &Space, n: usize, seed: u64) -> Vec<Vector> {
    let mut rng = SampleRng::new(seed);
    (0..n)
        .map(|_| normalize(space, &random_direction(&mut rng, space.dim())))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleCheckReport {
    pub x: Vector,
    pub samples: usize,
    /// Sampled `y` with `x ⊥_B y` but `Tx` not orthogonal to `Ty`.
    pub violations: Vec<Vector>,
}

/// Picks `y ∈ ker f` for a random `f ∈ J(x)` so that `x ⊥_B y`.
fn sample_orthogonal(set: &SupportSet, space: &Space, rng: &mut SampleRng) -> Vector {
    let x = set.base_point();
    let z = random_direction(rng, x.dim());
    match set {
        SupportSet::Exact { vertices, .. } => {
            let weights = rng.positive_weights(vertices.len());
            let f = Vector::combination(&weights, &vertices.iter().collect::<Vec<_>>());
            let t = f.dot(&z) / f.dot(x);
            z.add_scaled(&-t, x)
        }
        SupportSet::Float { functional, .. } => match space {
            Space::Lp(s) if s.is_euclidean() => {
                let t = x.dot(&z) / x.dot(x);
                z.add_scaled(&-t, x)
            }
            _ => {
                let xf = x.to_f64();
                let zf = z.to_f64();
                let dot = |u: &[f64]| functional.iter().zip(u).map(|(a, b)| a * b).sum::<f64>();
                let t = dot(&zf) / dot(&xf);
                Vector::new(
                    zf.iter()
                        .zip(&xf)
                        .map(|(a, b)| from_f64(a - t * b))
                        .collect(),
                )
            }
        },
    }
}

/// Local preservation of Birkhoff-James orthogonality at `x` by direct search:
/// draws `y ∈ x^{⊥_B}` and tests `Tx ⊥_B Ty` with the minimization oracle.
pub fn preservation_sample_check(
    t: &Operator,
    x: &Vector,
    n: usize,
    seed: u64,
) -> Result<SampleCheckReport> {
    t.mode()?;
    let set = support_set(t.domain(), x)?;
    let tx = t.apply(x)?;
    let mut rng = SampleRng::new(seed);
    let mut violations = Vec::new();
    for _ in 0..n {
        let y = sample_orthogonal(&set, t.domain(), &mut rng);
        let ty = t.apply(&y)?;
        if !bj_orthogonal_oracle(t.codomain(), &tx, &ty)?.orthogonal {
            violations.push(y);
        }
    }
    Ok(SampleCheckReport {
        x: x.clone(),
        samples: n,
        violations,
    })
}
