//! Face lattice of a polyhedral unit ball: census, minimal faces and
//! relative-interior membership.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{affine_dim, Vector};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{int, ratio, Rational};
use crate::space::{BallFamily, Polytope, Space};

/// Explicit (non closed-form) lattices are built only up to this dimension.
pub const MAX_LATTICE_DIM: usize = 6;

/// A proper face of the unit ball, stored by vertex incidence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    /// Indices into the ball vertices, ascending.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Indices of the dual-ball vertices (facet normals) equal to 1 on the face.
    pub supporting: Vec<usize>,
}

impl Face {
    pub fn vertex_points<'a>(&self, ball: &'a Polytope) -> Vec<&'a Vector> {
        self.vertices.iter().map(|&i| &ball.vertices()[i]).collect()
    }

    pub fn supporting_functionals<'a>(&self, ball: &'a Polytope) -> Vec<&'a Vector> {
        self.supporting.iter().map(|&i| &ball.facets()[i]).collect()
    }

    pub fn centroid(&self, ball: &Polytope) -> Vector {
        let w = ratio(1, self.vertices.len() as i64);
        Vector::combination(&vec![w; self.vertices.len()], &self.vertex_points(ball))
    }

    /// The face `−F`.
    pub fn antipode(&self, ball: &Polytope) -> Face {
        let mut vertices: Vec<usize> = self
            .vertices
            .iter()
            .map(|&i| ball.vertex_antipode(i))
            .collect();
        let mut supporting: Vec<usize> = self
            .supporting
            .iter()
            .map(|&i| ball.facet_antipode(i))
            .collect();
        vertices.sort_unstable();
        supporting.sort_unstable();
        Face {
            vertices,
            dim: self.dim,
            supporting,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    /// `counts[k]` is the number of `k`-faces, `k = 0..n−1`.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl FaceCensus {
    fn from_counts(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        FaceCensus { counts, total }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn incidence(points: &[Vector], normal: &Vector) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| normal.dot(p).is_one())
        .map(|(i, _)| i)
        .collect()
}

fn face_from_vertices(ball: &Polytope, vertices: Vec<usize>) -> Face {
    let points: Vec<&Vector> = vertices.iter().map(|&i| &ball.vertices()[i]).collect();
    let supporting = (0..ball.facets().len())
        .filter(|&j| points.iter().all(|p| ball.facets()[j].dot(p).is_one()))
        .collect();
    Face {
        dim: affine_dim(&points),
        vertices,
        supporting,
    }
}

/// Lattice of a cube or cross-polytope from sign patterns in `{−1,0,1}ⁿ∖{0}`.
fn closed_form_lattice(ball: &Polytope) -> Vec<Face> {
    let n = ball.dim();
    let vertex_index: HashMap<&Vector, usize> = ball
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let facet_index: HashMap<&Vector, usize> = ball
        .facets()
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let sign_vectors = |fixed: &[i64]| -> Vec<Vector> {
        let free: Vec<usize> = (0..n).filter(|&i| fixed[i] == 0).collect();
        (0..1usize << free.len())
            .map(|mask| {
                let mut c: Vec<Rational> = fixed.iter().map(|&s| int(s)).collect();
                for (b, &i) in free.iter().enumerate() {
                    c[i] = int(if mask >> b & 1 == 1 { -1 } else { 1 });
                }
                Vector::new(c)
            })
            .collect()
    };
    let units = |pattern: &[i64]| -> Vec<Vector> {
        (0..n)
            .filter(|&i| pattern[i] != 0)
            .map(|i| Vector::unit(n, i).scale(&int(pattern[i])))
            .collect()
    };
    let mut faces = Vec::new();
    let mut pattern = vec![-1i64; n];
    loop {
        if pattern.iter().any(|&s| s != 0) {
            let support = pattern.iter().filter(|&&s| s != 0).count();
            let (verts, facets, dim) = match ball.family() {
                BallFamily::Cube => (sign_vectors(&pattern), units(&pattern), n - support),
                _ => (units(&pattern), sign_vectors(&pattern), support - 1),
            };
            let mut vertices: Vec<usize> = verts.iter().map(|v| vertex_index[v]).collect();
            let mut supporting: Vec<usize> = facets.iter().map(|f| facet_index[f]).collect();
            vertices.sort_unstable();
            supporting.sort_unstable();
            faces.push(Face {
                vertices,
                dim,
                supporting,
            });
        }
        let mut i = 0;
        while i < n && pattern[i] == 1 {
            pattern[i] = -1;
            i += 1;
        }
        if i == n {
            break;
        }
        pattern[i] += 1;
    }
    faces.sort();
    faces.sort_by_key(|f| f.dim);
    faces
}

/// Closes the facet vertex sets under intersection.
fn general_lattice(ball: &Polytope) -> Vec<Face> {
    let mut sets: BTreeSet<Vec<usize>> = ball
        .facets()
        .iter()
        .map(|f| incidence(ball.vertices(), f))
        .collect();
    let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
    let facet_sets: Vec<Vec<usize>> = sets.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for f in &facet_sets {
                let meet: Vec<usize> = s
                    .iter()
                    .filter(|i| f.binary_search(i).is_ok())
                    .copied()
                    .collect();
                if !meet.is_empty() && sets.insert(meet.clone()) {
                    next.push(meet);
                }
            }
        }
        frontier = next;
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|s| face_from_vertices(ball, s))
        .collect();
    faces.sort();
    faces.sort_by_key(|f| f.dim);
    faces
}

/// All proper faces of the unit ball, each exactly once, ordered by
/// dimension and then by vertex indices.
pub fn face_lattice(space: &Space) -> Result<Vec<Face>> {
    let ball = space.require_polytope("face lattice")?;
    Ok(match ball.family() {
        BallFamily::General => {
            if ball.dim() > MAX_LATTICE_DIM {
                return Err(Error::TooLarge(format!(
                    "face lattices of general balls are limited to dimension {MAX_LATTICE_DIM}"
                )));
            }
            general_lattice(ball)
        }
        _ => closed_form_lattice(ball),
    })
}

pub fn census_of(faces: &[Face], dim: usize) -> FaceCensus {
    let mut counts = vec![0u64; dim];
    for f in faces {
        counts[f.dim] += 1;
    }
    FaceCensus::from_counts(counts)
}

/// Number of `k`-faces for each `k`; closed form for cubes and cross-polytopes.
pub fn census(space: &Space) -> Result<FaceCensus> {
    let ball = space.require_polytope("face census")?;
    let n = ball.dim() as u64;
    Ok(match ball.family() {
        BallFamily::Cube => {
            FaceCensus::from_counts((0..n).map(|k| binomial(n, k) << (n - k)).collect())
        }
        BallFamily::CrossPolytope => {
            FaceCensus::from_counts((0..n).map(|k| binomial(n, k + 1) << (k + 1)).collect())
        }
        BallFamily::General => census_of(&face_lattice(space)?, ball.dim()),
    })
}

fn require_unit(ball: &Polytope, x: &Vector) -> Result<()> {
    if ball.norm(x).is_one() {
        Ok(())
    } else {
        Err(Error::NotUnitVector)
    }
}

/// The unique face containing the unit vector `x` in its relative interior.
pub fn minimal_face(space: &Space, x: &Vector) -> Result<Face> {
    let ball = space.require_polytope("minimal face")?;
    space.check_vector(x)?;
    require_unit(ball, x)?;
    let supporting = ball.tight_facets(x);
    let vertices: Vec<usize> = (0..ball.vertices().len())
        .filter(|&i| {
            supporting
                .iter()
                .all(|&j| ball.facets()[j].dot(&ball.vertices()[i]).is_one())
        })
        .collect();
    let points: Vec<&Vector> = vertices.iter().map(|&i| &ball.vertices()[i]).collect();
    Ok(Face {
        dim: affine_dim(&points),
        vertices,
        supporting,
    })
}

/// Whether `x ∈ Int_r F`: `x` is a convex combination of the vertices of `F`
/// with all weights strictly positive (maximal common weight `t > 0`).
pub fn is_relative_interior(space: &Space, x: &Vector, face: &Face) -> Result<bool> {
    let ball = space.require_polytope("relative interior")?;
    space.check_vector(x)?;
    require_unit(ball, x)?;
    let points = face.vertex_points(ball);
    let m = points.len();
    // Variables: μ_0..μ_{m−1}, t.
    let mut lp = LinearProgram::new(m + 1);
    lp.set_free(m);
    for r in 0..x.dim() {
        let mut row: Vec<Rational> = points.iter().map(|p| p.coords()[r].clone()).collect();
        row.push(Rational::zero());
        lp.add_constraint(row, Relation::Eq, x.coords()[r].clone());
    }
    let mut sum = vec![int(1); m];
    sum.push(Rational::zero());
    lp.add_constraint(sum, Relation::Eq, int(1));
    for i in 0..m {
        let mut row = vec![Rational::zero(); m + 1];
        row[i] = int(1);
        row[m] = int(-1);
        lp.add_constraint(row, Relation::Ge, Rational::zero());
    }
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = int(1);
    lp.maximize(objective);
    Ok(match lp.solve() {
        LpOutcome::Optimal { objective, .. } => objective.is_positive(),
        _ => false,
    })
}

/// Extreme points of the unit ball.
pub fn extreme_points(space: &Space) -> Result<Vec<Vector>> {
    Ok(space
        .require_polytope("extreme points")?
        .vertices()
        .to_vec())
}

/// One face from each antipodal pair `{F, −F}`, in lattice order.
pub fn antipodal_representatives(space: &Space) -> Result<Vec<Face>> {
    let ball = space.require_polytope("face lattice")?;
    Ok(face_lattice(space)?
        .into_iter()
        .filter(|f| f.vertices <= f.antipode(ball).vertices)
        .collect())
}
