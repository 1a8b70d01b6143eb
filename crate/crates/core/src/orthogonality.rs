//! Birkhoff-James orthogonality of vectors and subspaces, decided by dual
//! certificates: `x ⊥_B y` iff some `f ∈ J(x)` vanishes on `y`.

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{rank, Vector};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::oracle::minimize_norm_1d;
use crate::rational::{int, ratio, to_f64, Rational, Value};
use crate::space::{Functional, Space};
use crate::support::support_set;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dual,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Dual => "dual",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityVerdict {
    pub orthogonal: bool,
    /// `f ∈ J(x)` vanishing on `y` (or on the subspace); present when
    /// orthogonal and `x ≠ 0` on the dual path.
    pub witness: Option<Functional>,
    pub method: Method,
    /// Float path only: relative distance of the decision from its threshold.
    pub margin: Option<f64>,
}

impl OrthogonalityVerdict {
    fn trivial(method: Method) -> Self {
        OrthogonalityVerdict {
            orthogonal: true,
            witness: None,
            method,
            margin: None,
        }
    }
}

fn average(vectors: &[&Vector]) -> Vector {
    let w = ratio(1, vectors.len() as i64);
    Vector::combination(&vec![w; vectors.len()], vectors)
}

/// Decides `x ⊥_B y` over the reals: `min_{J(x)} f(y) ≤ 0 ≤ max_{J(x)} f(y)`.
///
/// The witness is the barycenter of the vertices of `J(x)` vanishing on `y`,
/// or else the zero crossing on the segment between the barycenters of the
/// negative and the positive vertices.
pub fn bj_orthogonal(space: &Space, x: &Vector, y: &Vector) -> Result<OrthogonalityVerdict> {
    space.check_vector(x)?;
    space.check_vector(y)?;
    if x.is_zero() {
        return Ok(OrthogonalityVerdict::trivial(Method::Dual));
    }
    match space {
        Space::Polyhedral(_) => {
            let set = support_set(space, x)?;
            let vertices = set
                .exact_vertices()
                .expect("polyhedral support set is exact");
            let values: Vec<Rational> = vertices.iter().map(|f| f.dot(y)).collect();
            let pick = |pred: fn(&Rational) -> bool| -> Vec<&Vector> {
                vertices
                    .iter()
                    .zip(&values)
                    .filter(|(_, v)| pred(v))
                    .map(|(f, _)| f)
                    .collect()
            };
            let zeros = pick(|v| v.is_zero());
            let witness = if !zeros.is_empty() {
                Some(average(&zeros))
            } else {
                let neg = pick(|v| v.is_negative());
                let pos = pick(|v| v.is_positive());
                if neg.is_empty() || pos.is_empty() {
                    None
                } else {
                    let a = average(&neg);
                    let b = average(&pos);
                    let (va, vb) = (a.dot(y), b.dot(y));
                    let t = -&va / (&vb - &va);
                    Some(Vector::combination(&[int(1) - &t, t], &[&a, &b]))
                }
            };
            Ok(OrthogonalityVerdict {
                orthogonal: witness.is_some(),
                witness: witness.map(Functional::Exact),
                method: Method::Dual,
                margin: None,
            })
        }
        Space::Lp(s) => {
            let f = s.duality_map(&x.to_f64());
            let y_norm = s.norm_f64(&y.to_f64());
            if y.is_zero() {
                return Ok(OrthogonalityVerdict {
                    orthogonal: true,
                    witness: Some(Functional::Float(f)),
                    method: Method::Dual,
                    margin: None,
                });
            }
            let (orthogonal, margin) = if s.is_euclidean() {
                let pairing = x.dot(y);
                let m = to_f64(&pairing).abs() / (s.norm_f64(&x.to_f64()) * y_norm);
                (pairing.is_zero(), m)
            } else {
                let fy: f64 = f.iter().zip(y.to_f64()).map(|(a, b)| a * b).sum();
                let m = fy.abs() / y_norm;
                (m <= s.tolerance(), m)
            };
            Ok(OrthogonalityVerdict {
                orthogonal,
                witness: orthogonal.then_some(Functional::Float(f)),
                method: Method::Dual,
                margin: Some(margin),
            })
        }
    }
}

/// Decides `x ⊥_B y` directly from the definition by minimizing `λ ↦ ‖x + λy‖`.
pub fn bj_orthogonal_oracle(space: &Space, x: &Vector, y: &Vector) -> Result<OrthogonalityVerdict> {
    space.check_vector(x)?;
    space.check_vector(y)?;
    if x.is_zero() || y.is_zero() {
        return Ok(OrthogonalityVerdict::trivial(Method::Oracle));
    }
    let line = minimize_norm_1d(space, x, y)?;
    Ok(match (&line.value, space.norm_exact(x)) {
        (Value::Exact(min), Some(nx)) => OrthogonalityVerdict {
            orthogonal: *min >= nx,
            witness: None,
            method: Method::Oracle,
            margin: None,
        },
        _ => {
            let nx = space.norm_f64(x);
            let gap = (nx - line.value.to_f64()) / nx;
            OrthogonalityVerdict {
                orthogonal: gap <= space.tolerance(),
                witness: None,
                method: Method::Oracle,
                margin: Some(gap),
            }
        }
    })
}

/// Decides `span(basis) ⊂ x^{⊥_B}` by searching `f ∈ J(x)` with `f(b) = 0`
/// for every basis vector (an LP over convex weights of the vertices of `J(x)`).
pub fn subspace_orthogonal(
    space: &Space,
    x: &Vector,
    basis: &[Vector],
) -> Result<OrthogonalityVerdict> {
    space.check_vector(x)?;
    for b in basis {
        check_dim(space.dim(), b.dim())?;
    }
    if x.is_zero() {
        return Err(Error::ZeroVector("x"));
    }
    if rank(basis) != basis.len() {
        return Err(Error::LinearlyDependent);
    }
    let set = support_set(space, x)?;
    match space {
        Space::Polyhedral(_) => {
            let vertices = set.exact_vertices().expect("exact");
            let m = vertices.len();
            let mut lp = LinearProgram::new(m);
            lp.add_constraint(vec![int(1); m], Relation::Eq, int(1));
            for b in basis {
                lp.add_constraint(
                    vertices.iter().map(|f| f.dot(b)).collect(),
                    Relation::Eq,
                    Rational::zero(),
                );
            }
            let witness = match lp.solve() {
                LpOutcome::Optimal { values, .. } => Some(Vector::combination(
                    &values,
                    &vertices.iter().collect::<Vec<_>>(),
                )),
                _ => None,
            };
            Ok(OrthogonalityVerdict {
                orthogonal: witness.is_some(),
                witness: witness.map(Functional::Exact),
                method: Method::Dual,
                margin: None,
            })
        }
        Space::Lp(s) => {
            let f = set.functionals().remove(0);
            let mut worst = 0.0f64;
            let mut exact_zero = true;
            for b in basis {
                let m = f.apply_f64(b).abs() / s.norm_f64(&b.to_f64());
                worst = worst.max(m);
                if s.is_euclidean() {
                    exact_zero &= x.dot(b).is_zero();
                }
            }
            let orthogonal = if s.is_euclidean() {
                exact_zero
            } else {
                worst <= s.tolerance()
            };
            Ok(OrthogonalityVerdict {
                orthogonal,
                witness: orthogonal.then_some(f),
                method: Method::Dual,
                margin: Some(worst),
            })
        }
    }
}
