#![allow(dead_code)]

use bjlevel::catalog::{diagonal, hexagon, shear_linf3};
use bjlevel::rational::{int, ratio};
use bjlevel::rng::SampleRng;
use bjlevel::support::support_set;
use bjlevel::{Matrix, Operator, Rational, Space, Vector};

pub fn v(c: &[i64]) -> Vector {
    Vector::from_ints(c)
}

pub fn vr(c: &[(i64, i64)]) -> Vector {
    Vector::new(c.iter().map(|&(p, q)| ratio(p, q)).collect())
}

pub fn polyhedral_spaces() -> Vec<(&'static str, Space)> {
    vec![
        ("l1^2", Space::l1(2).unwrap()),
        ("l1^3", Space::l1(3).unwrap()),
        ("linf^2", Space::linf(2).unwrap()),
        ("linf^3", Space::linf(3).unwrap()),
        ("hexagon", hexagon()),
    ]
}

/// Nonzero vector with coordinates `k/den`, `|k| ≤ range·den`.
pub fn random_vector(rng: &mut SampleRng, dim: usize, range: i64, den: i64) -> Vector {
    loop {
        let x = Vector::new((0..dim).map(|_| rng.rational(range, den)).collect());
        if !x.is_zero() {
            return x;
        }
    }
}

/// Operator with entries `k/2`, `|k| ≤ 4`.
pub fn random_operator(space: &Space, rng: &mut SampleRng) -> Operator {
    let n = space.dim();
    let rows = (0..n)
        .map(|_| (0..n).map(|_| rng.rational(2, 2)).collect())
        .collect();
    Operator::on(space, Matrix::from_rows(rows).unwrap()).unwrap()
}

/// `c·P` with `P` a signed permutation matrix and `c = p/q`, `1 ≤ p ≤ 4`, `1 ≤ q ≤ 3`.
pub fn scaled_signed_permutation(space: &Space, rng: &mut SampleRng) -> (Operator, Rational) {
    let n = space.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.int_in(0, i as i64) as usize);
    }
    let scale = ratio(rng.int_in(1, 4), rng.int_in(1, 3));
    let mut m = Matrix::zeros(n, n);
    for (row, &col) in perm.iter().enumerate() {
        let sign = if rng.int_in(0, 1) == 0 {
            int(1)
        } else {
            int(-1)
        };
        m.set(row, col, sign * scale.clone());
    }
    (Operator::on(space, m).unwrap(), scale)
}

/// Whether every row and column holds exactly one nonzero entry, all of equal modulus.
pub fn is_scaled_signed_permutation(m: &Matrix) -> bool {
    let n = m.rows();
    let mut modulus: Option<Rational> = None;
    for r in 0..n {
        let nonzero: Vec<&Rational> = m.row(r).iter().filter(|e| **e != int(0)).collect();
        if nonzero.len() != 1 {
            return false;
        }
        let a = num_traits::Signed::abs(nonzero[0]);
        match &modulus {
            None => modulus = Some(a),
            Some(s) if *s == a => {}
            Some(_) => return false,
        }
    }
    (0..n).all(|c| (0..n).filter(|&r| *m.get(r, c) != int(0)).count() == 1)
}

/// A seeded battery of operators on `space`: structured maps followed by `random` random ones.
pub fn operator_battery(
    name: &str,
    space: &Space,
    random: usize,
    seed: u64,
) -> Vec<(String, Operator)> {
    let n = space.dim();
    let mut ops = vec![("identity".to_string(), Operator::identity(space))];
    let diag: Vec<i64> = (1..=n as i64).collect();
    ops.push((format!("diag{diag:?}"), diagonal(space, &diag)));
    let mut singular = vec![1; n];
    singular[0] = 0;
    ops.push((format!("diag{singular:?}"), diagonal(space, &singular)));
    let mut spike = vec![1; n];
    spike[0] = 2;
    ops.push((format!("diag{spike:?}"), diagonal(space, &spike)));
    if name == "linf^3" {
        ops.push(("shear".to_string(), shear_linf3()));
    }
    let mut rng = SampleRng::new(seed);
    ops.push((
        "signed permutation".to_string(),
        scaled_signed_permutation(space, &mut rng).0,
    ));
    for i in 0..random {
        ops.push((format!("random #{i}"), random_operator(space, &mut rng)));
    }
    ops
}

/// A `y` with `x ⊥_B y`, taken from the kernel of a random convex combination of `J(x)`.
pub fn orthogonal_direction(space: &Space, x: &Vector, rng: &mut SampleRng) -> Vector {
    let set = support_set(space, x).unwrap();
    let f = match set.exact_vertices() {
        Some(vertices) => {
            let weights = rng.positive_weights(vertices.len());
            Vector::combination(&weights, &vertices.iter().collect::<Vec<_>>())
        }
        None => {
            let functional = set.functionals().remove(0);
            let bjlevel::Functional::Float(f) = functional else {
                unreachable!()
            };
            Vector::new(f.iter().map(|c| bjlevel::rational::from_f64(*c)).collect())
        }
    };
    loop {
        let z = random_vector(rng, x.dim(), 1, 4);
        let y = z.add_scaled(&-(f.dot(&z) / f.dot(x)), x);
        if !y.is_zero() {
            return y;
        }
    }
}
