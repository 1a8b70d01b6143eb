//! Named spaces and operators used by tests, the CLI self-test and docs.

use crate::linalg::{Matrix, Vector};
use crate::rational::int;
use crate::space::{Operator, Space};

/// Hexagonal ball with vertices `±(1,0)`, `±(0,1)`, `±(1,1)`.
pub fn hexagon() -> Space {
    let vertices = [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]]
        .iter()
        .map(|v| Vector::from_ints(v))
        .collect();
    Space::polyhedral(vertices).expect("hexagon is a valid ball")
}

/// Diagonal operator on a single space.
pub fn diagonal(space: &Space, entries: &[i64]) -> Operator {
    let d: Vec<_> = entries.iter().map(|&e| int(e)).collect();
    Operator::on(space, Matrix::diagonal(&d)).expect("diagonal matches dimension")
}

/// `(x, y, z) ↦ (3x − 2y, x, z)` on ℓ∞³.
pub fn shear_linf3() -> Operator {
    let space = Space::linf(3).expect("valid");
    Operator::on(
        &space,
        Matrix::from_int_rows(&[&[3, -2, 0], &[1, 0, 0], &[0, 0, 1]]).expect("3x3"),
    )
    .expect("3x3")
}
