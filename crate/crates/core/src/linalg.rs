//! Dense exact vectors and matrices over the rationals.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{format_rational, int, parse_rational, to_f64, Rational};

/// A vector (or a dual-space functional) with exact rational coordinates.
///
/// Functionals act on vectors through the standard pairing `f(x) = Σ f_i x_i`,
/// so both share this type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[i] = int(1);
        v
    }

    /// Parses comma-separated rationals, e.g. `"1,1/2,0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rational, other: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn max_abs(&self) -> Rational {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Convex combination `Σ w_i v_i` (weights are used as given).
    pub fn combination(weights: &[Rational], vectors: &[&Vector]) -> Vector {
        let dim = vectors.first().map_or(0, |v| v.dim());
        let mut out = Vector::zeros(dim);
        for (w, v) in weights.iter().zip(vectors) {
            if !w.is_zero() {
                out = out.add_scaled(w, v);
            }
        }
        out
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }
}

/// Row-major dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::InvalidArgument("matrix has no rows".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::InvalidArgument("matrix has no columns".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            check_dim(ncols, row.len())?;
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| int(c)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Matrix::diagonal(&vec![int(1); n])
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        let mut entries = vec![Rational::zero(); n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = d.clone();
        }
        Matrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows)
            .map(|r| Vector::new(self.row(r).to_vec()))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        debug_assert_eq!(self.cols, x.dim());
        Vector::new(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(x.coords())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.row_vectors())
    }

    /// Basis of `{x : Ax = 0}` in reduced form.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (rref, pivots) = row_reduce(&self.row_vectors(), self.cols);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = Vector::zeros(self.cols);
            v.0[free] = int(1);
            for (row, &p) in rref.iter().zip(&pivots) {
                v.0[p] = -row.0[free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn row_reduce(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i].0[c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r].0[c].recip();
        m[r] = m[r].scale(&inv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row.0[c].is_zero() {
                let factor = -row.0[c].clone();
                *row = row.add_scaled(&factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(vectors: &[Vector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => row_reduce(vectors, v.dim()).1.len(),
    }
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dim(points: &[&Vector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((base, rest)) => {
            let diffs: Vec<Vector> = rest.iter().map(|p| *p - base).collect();
            rank(&diffs)
        }
    }
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub fn solve_square(a: &[Vector], b: &[Rational]) -> Option<Vector> {
    let n = a.len();
    let augmented: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut coords = row.0.clone();
            coords.push(rhs.clone());
            Vector(coords)
        })
        .collect();
    let (rref, pivots) = row_reduce(&augmented, n);
    if pivots.len() != n {
        return None;
    }
    Some(Vector((0..n).map(|i| rref[i].0[n].clone()).collect()))
}
