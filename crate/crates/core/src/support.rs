//! Supporting functionals: the set `J(x)` of norm-one dual vectors with `f(x) = ‖x‖`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rational::{Rational, Value};
use crate::space::{Functional, Mode, Space};

/// `J(x)` as a polytope in vertex representation.
///
/// On polyhedral spaces the vertices are exactly the dual-ball vertices
/// (facet normals) attaining the norm at `x`, so the list is irredundant.
/// On ℓp spaces with 1 < p < ∞ the set is the single duality-map value.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportSet {
    Exact {
        base_point: Vector,
        vertices: Vec<Vector>,
        /// Indices into the space's facet list.
        facet_indices: Vec<usize>,
    },
    Float {
        base_point: Vector,
        functional: Vec<f64>,
    },
}

impl SupportSet {
    pub fn base_point(&self) -> &Vector {
        match self {
            SupportSet::Exact { base_point, .. } | SupportSet::Float { base_point, .. } => {
                base_point
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            SupportSet::Exact { .. } => Mode::Exact,
            SupportSet::Float { .. } => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SupportSet::Exact { vertices, .. } => vertices.len(),
            SupportSet::Float { .. } => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exact_vertices(&self) -> Option<&[Vector]> {
        match self {
            SupportSet::Exact { vertices, .. } => Some(vertices),
            SupportSet::Float { .. } => None,
        }
    }

    pub fn functionals(&self) -> Vec<Functional> {
        match self {
            SupportSet::Exact { vertices, .. } => {
                vertices.iter().cloned().map(Functional::Exact).collect()
            }
            SupportSet::Float { functional, .. } => vec![Functional::Float(functional.clone())],
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.len() == 1
    }
}

/// `J(x)` for nonzero `x`.
pub fn support_set(space: &Space, x: &Vector) -> Result<SupportSet> {
    space.check_vector(x)?;
    if x.is_zero() {
        return Err(Error::ZeroVector("x"));
    }
    Ok(match space {
        Space::Polyhedral(ball) => {
            let facet_indices = ball.tight_facets(x);
            SupportSet::Exact {
                base_point: x.clone(),
                vertices: facet_indices
                    .iter()
                    .map(|&i| ball.facets()[i].clone())
                    .collect(),
                facet_indices,
            }
        }
        Space::Lp(s) => SupportSet::Float {
            base_point: x.clone(),
            functional: s.duality_map(&x.to_f64()),
        },
    })
}

/// Whether `J(x)` is a single functional.
pub fn is_smooth(space: &Space, x: &Vector) -> Result<bool> {
    Ok(support_set(space, x)?.is_smooth())
}

/// `(min, max)` of `f(y)` over `J(x)`; attained at vertices by linearity.
pub fn eval_range(set: &SupportSet, y: &Vector) -> Result<(Value, Value)> {
    crate::error::check_dim(set.base_point().dim(), y.dim())?;
    Ok(match set {
        SupportSet::Exact { vertices, .. } => {
            let values: Vec<Rational> = vertices.iter().map(|f| f.dot(y)).collect();
            let min = values.iter().min().cloned().unwrap_or_else(Rational::zero);
            let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
            (Value::Exact(min), Value::Exact(max))
        }
        SupportSet::Float { functional, .. } => {
            let v: f64 = functional.iter().zip(y.to_f64()).map(|(a, b)| a * b).sum();
            (Value::Float(v), Value::Float(v))
        }
    })
}

/// Whether `f` lies in `J(x)`: dual norm at most one and `f(x) = ‖x‖`.
pub fn is_supporting(space: &Space, x: &Vector, f: &Vector) -> Result<bool> {
    space.check_vector(x)?;
    space.check_vector(f)?;
    let ball = space.require_polytope("exact supporting-functional check")?;
    Ok(ball.dual_norm(f) <= num_traits::One::one() && f.dot(x) == ball.norm(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn sorted(mut vs: Vec<Vector>) -> Vec<Vector> {
        vs.sort();
        vs
    }

    /// All sign vectors in {-1,1}^n, enumerated independently of the space.
    fn cube_vertices(n: usize) -> Vec<Vector> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| [-1, 1].map(|s| [p.clone(), vec![s]].concat()))
                .collect();
        }
        out.iter().map(|c| v(c)).collect()
    }

    #[test]
    fn l1_vertex_support_matches_brute_force() {
        let l1 = Space::l1(3).unwrap();
        let x = v(&[1, 0, 0]);
        let set = support_set(&l1, &x).unwrap();
        let oracle: Vec<Vector> = cube_vertices(3)
            .into_iter()
            .filter(|f| f.dot(&x) == int(1))
            .collect();
        assert_eq!(oracle.len(), 4);
        assert_eq!(
            sorted(set.exact_vertices().unwrap().to_vec()),
            sorted(oracle)
        );
    }

    #[test]
    fn linf_support_examples() {
        let linf = Space::linf(3).unwrap();
        let x = Vector::new(vec![int(1), ratio(1, 2), int(0)]);
        let set = support_set(&linf, &x).unwrap();
        assert_eq!(set.exact_vertices().unwrap(), &[v(&[1, 0, 0])]);
        assert!(is_smooth(&linf, &x).unwrap());

        let set = support_set(&linf, &v(&[1, 1, 0])).unwrap();
        assert_eq!(
            sorted(set.exact_vertices().unwrap().to_vec()),
            sorted(vec![v(&[1, 0, 0]), v(&[0, 1, 0])])
        );
        assert!(!is_smooth(&linf, &v(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn l2_is_smooth() {
        let l2 = Space::l2(3).unwrap();
        assert!(is_smooth(&l2, &v(&[1, -2, 5])).unwrap());
        assert!(matches!(
            is_smooth(&l2, &v(&[0, 0, 0])),
            Err(Error::ZeroVector(_))
        ));
    }

    #[test]
    fn eval_range_examples() {
        let l1 = Space::l1(3).unwrap();
        let set = support_set(&l1, &v(&[1, 0, 0])).unwrap();
        let y = Vector::new(vec![ratio(1, 2), ratio(1, 2), int(0)]);
        assert_eq!(
            eval_range(&set, &y).unwrap(),
            (Value::Exact(int(0)), Value::Exact(int(1)))
        );
        assert_eq!(
            eval_range(&set, &v(&[0, 0, 0])).unwrap(),
            (Value::Exact(int(0)), Value::Exact(int(0)))
        );

        let linf = Space::linf(3).unwrap();
        let set = support_set(&linf, &v(&[1, 1, 0])).unwrap();
        assert_eq!(
            eval_range(&set, &v(&[1, 1, 0])).unwrap(),
            (Value::Exact(int(1)), Value::Exact(int(1)))
        );
        assert!(eval_range(&set, &v(&[1, 1])).is_err());
    }

    #[test]
    fn supporting_membership() {
        let l1 = Space::l1(3).unwrap();
        let x = v(&[1, 0, 0]);
        assert!(is_supporting(&l1, &x, &v(&[1, 0, 0])).unwrap());
        assert!(is_supporting(&l1, &x, &Vector::new(vec![int(1), ratio(1, 3), int(-1)])).unwrap());
        assert!(!is_supporting(&l1, &x, &v(&[1, 2, 0])).unwrap());
        assert!(!is_supporting(&l1, &x, &v(&[0, 1, 0])).unwrap());
    }
}
