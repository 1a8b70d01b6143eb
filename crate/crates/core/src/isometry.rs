//! Scalar multiples of isometries, the scalar-identity criterion, and
//! transfer of level vectors to the adjoint.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::faces::extreme_points;
use crate::levelvec::{
    is_level_vector, preserves_bj_at, preserves_bj_directional, LevelCertificate,
};
use crate::linalg::{rank, Matrix, Vector};
use crate::oracle::sample_sphere;
use crate::orthogonality::bj_orthogonal;
use crate::rational::{from_f64, Rational, Value};
use crate::space::{Functional, Operator, Space};
use crate::support::is_smooth;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Refuted,
    /// Sampling found no refutation; never a proof.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    pub verdict: Verdict,
    /// `c` with `‖Tx‖ = c‖x‖` on every checked point.
    pub scale: Option<Value>,
    /// `(x, y)` with `x ⊥_B y` and `Tx` not orthogonal to `Ty`.
    pub witness: Option<(Vector, Vector)>,
    pub checked_points: Vec<Vector>,
}

impl IsometryReport {
    fn zero_operator() -> Self {
        IsometryReport {
            verdict: Verdict::Certified,
            scale: Some(Value::Exact(Rational::zero())),
            witness: None,
            checked_points: Vec::new(),
        }
    }
}

fn ratio_at(t: &Operator, x: &Vector) -> Result<Value> {
    let tx = t.apply(x)?;
    Ok(
        match (t.codomain().norm_exact(&tx), t.domain().norm_exact(x)) {
            (Some(a), Some(b)) => Value::Exact(a / b),
            _ => Value::Float(t.codomain().norm_f64(&tx) / t.domain().norm_f64(x)),
        },
    )
}

/// Certifies or refutes that `T` is a scalar multiple of an isometry by
/// testing preservation of Birkhoff-James orthogonality at every extreme
/// point of a polyhedral domain ball.
pub fn certify_scalar_isometry_polyhedral(t: &Operator) -> Result<IsometryReport> {
    let points = extreme_points(t.domain())?;
    t.mode()?;
    if t.is_zero() {
        return Ok(IsometryReport::zero_operator());
    }
    let mut checked = Vec::with_capacity(points.len());
    for v in points {
        let report = preserves_bj_at(t, &v)?;
        checked.push(v.clone());
        if !report.holds {
            let y = report
                .counterexample
                .expect("failed preservation carries a counterexample")
                .y;
            return Ok(IsometryReport {
                verdict: Verdict::Refuted,
                scale: None,
                witness: Some((v, y)),
                checked_points: checked,
            });
        }
    }
    let scale = ratio_at(t, &checked[0])?;
    for v in &checked[1..] {
        if ratio_at(t, v)? != scale {
            return Err(Error::Internal(format!(
                "orthogonality is preserved at every extreme point but ‖Tv‖ varies (at {v})"
            )));
        }
    }
    Ok(IsometryReport {
        verdict: Verdict::Certified,
        scale: Some(scale),
        witness: None,
        checked_points: checked,
    })
}

/// `λ` with `T = λ·I`, when `T` is an endomorphism of that form.
fn identity_multiple(t: &Operator) -> Option<Rational> {
    if t.domain() != t.codomain() {
        return None;
    }
    let lambda = t.matrix().get(0, 0).clone();
    (*t.matrix() == Matrix::identity(t.domain().dim()).scale(&lambda)).then_some(lambda)
}

fn counterexample_at(t: &Operator, x: &Vector) -> Result<Option<(Vector, Vector)>> {
    let report = preserves_bj_at(t, x)?;
    Ok(report.counterexample.map(|c| (x.clone(), c.y)))
}

fn same_scale(a: &Value, b: &Value, tolerance: f64) -> bool {
    match (a, b) {
        (Value::Exact(a), Value::Exact(b)) => a == b,
        _ => {
            let (a, b) = (a.to_f64(), b.to_f64());
            (a - b).abs() <= tolerance * a.abs().max(b.abs()).max(1.0)
        }
    }
}

/// Tests `N` sampled unit vectors: a non-level vector or a varying ratio
/// `‖Tx‖/‖x‖` refutes; otherwise the verdict is inconclusive with the common
/// ratio. Only `T = 0` and multiples of the identity are certified.
pub fn probe_scalar_isometry_grid(t: &Operator, n: usize, seed: u64) -> Result<IsometryReport> {
    t.mode()?;
    if t.is_zero() {
        return Ok(IsometryReport::zero_operator());
    }
    if let Some(lambda) = identity_multiple(t) {
        return Ok(IsometryReport {
            verdict: Verdict::Certified,
            scale: Some(Value::Exact(num_traits::Signed::abs(&lambda))),
            witness: None,
            checked_points: Vec::new(),
        });
    }
    let tolerance = t.domain().tolerance().max(t.codomain().tolerance());
    let mut checked: Vec<Vector> = Vec::new();
    let mut scale: Option<Value> = None;
    for x in sample_sphere(t.domain(), n, seed) {
        checked.push(x.clone());
        if is_level_vector(t, &x)?.is_none() {
            return Ok(IsometryReport {
                verdict: Verdict::Refuted,
                scale: None,
                witness: counterexample_at(t, &x)?,
                checked_points: checked,
            });
        }
        let r = ratio_at(t, &x)?;
        match &scale {
            None => scale = Some(r),
            Some(s) if same_scale(s, &r, tolerance) => {}
            Some(_) => {
                let mut witness = None;
                for p in &checked {
                    witness = counterexample_at(t, p)?;
                    if witness.is_some() {
                        break;
                    }
                }
                return Ok(IsometryReport {
                    verdict: Verdict::Refuted,
                    scale: None,
                    witness,
                    checked_points: checked,
                });
            }
        }
    }
    Ok(IsometryReport {
        verdict: Verdict::Inconclusive,
        scale,
        witness: None,
        checked_points: checked,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarIdentityReport {
    pub linearly_independent: bool,
    /// `λ_i` with `T x_i = λ_i x_i`, when `x_i` is an eigenvector.
    pub eigenvalues: Vec<Option<Rational>>,
    /// Conditions (i)–(iv): eigenvectors; `x₁` smooth with `Tx₁ ≠ 0`;
    /// `x₁` a level vector; `x₁` not orthogonal to any other candidate.
    pub conditions: [bool; 4],
    /// `λ` with `T = λ·I`, when every condition holds.
    pub certified: Option<Rational>,
}

impl ScalarIdentityReport {
    /// Roman numerals of the failing conditions.
    pub fn failed(&self) -> Vec<&'static str> {
        ["i", "ii", "iii", "iv"]
            .into_iter()
            .zip(self.conditions)
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }
}

fn eigenvalue(t: &Operator, x: &Vector) -> Result<Option<Rational>> {
    let tx = t.apply(x)?;
    let Some(i) = x.coords().iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let lambda = &tx.coords()[i] / &x.coords()[i];
    Ok((tx == x.scale(&lambda)).then_some(lambda))
}

fn is_unit(space: &Space, x: &Vector) -> bool {
    match space.norm_exact(x) {
        Some(n) => n.is_one(),
        None => (space.norm_f64(x) - 1.0).abs() <= space.tolerance().max(1e-12),
    }
}

/// Decides whether `T` is a scalar multiple of the identity from `n` unit
/// candidates, reporting which of the four conditions fail.
pub fn scalar_identity_test(t: &Operator, candidates: &[Vector]) -> Result<ScalarIdentityReport> {
    let space = t.domain();
    if space != t.codomain() {
        return Err(Error::InvalidArgument(
            "the identity test needs an operator on a single space".into(),
        ));
    }
    if candidates.len() != space.dim() {
        return Err(Error::InvalidArgument(format!(
            "expected {} candidates, found {}",
            space.dim(),
            candidates.len()
        )));
    }
    for x in candidates {
        space.check_vector(x)?;
        if !is_unit(space, x) {
            return Err(Error::NotUnitVector);
        }
    }
    let x1 = &candidates[0];
    let eigenvalues = candidates
        .iter()
        .map(|x| eigenvalue(t, x))
        .collect::<Result<Vec<_>>>()?;
    let linearly_independent = rank(candidates) == candidates.len();
    let conditions = [
        eigenvalues.iter().all(Option::is_some),
        is_smooth(space, x1)? && !t.apply(x1)?.is_zero(),
        is_level_vector(t, x1)?.is_some(),
        candidates[1..]
            .iter()
            .map(|x| bj_orthogonal(space, x1, x).map(|v| !v.orthogonal))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b),
    ];
    let certified = if linearly_independent && conditions.iter().all(|&c| c) {
        let lambda = eigenvalues[0].clone().expect("condition (i)");
        if *t.matrix() != Matrix::identity(space.dim()).scale(&lambda) {
            return Err(Error::Internal(
                "all four conditions hold but T is not a multiple of the identity".into(),
            ));
        }
        Some(lambda)
    } else {
        None
    };
    Ok(ScalarIdentityReport {
        linearly_independent,
        eigenvalues,
        conditions,
        certified,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjointTransfer {
    pub x: Vector,
    /// `ψ ∈ J(Tx/‖Tx‖)`, a level vector of `T^×`.
    pub psi: Functional,
    pub level_number: Value,
    pub adjoint_level_number: Value,
    pub adjoint_certificate: LevelCertificate,
    /// `T^×` preserves orthogonality at `ψ` with respect to the kernel of
    /// the canonical image of `Tx/‖Tx‖`.
    pub dual_directional: bool,
}

/// Transfers a level vector `x ∈ S_𝕏` of `T` to the level vector `ψ` of `T^×`
/// taken from the certificate, with the same level number.
pub fn adjoint_level_transfer(t: &Operator, x: &Vector) -> Result<AdjointTransfer> {
    t.domain().check_vector(x)?;
    if x.is_zero() {
        return Err(Error::ZeroVector("x"));
    }
    if !is_unit(t.domain(), x) {
        return Err(Error::NotUnitVector);
    }
    let tx = t.apply(x)?;
    if tx.is_zero() {
        return Err(Error::ZeroVector("Tx"));
    }
    let cert = is_level_vector(t, x)?.ok_or(Error::NotLevelVector)?;
    let g = cert.witness.as_ref().expect("Tx ≠ 0").g.clone();
    let adj = t.adjoint();
    let (psi_vector, normal) = match (&g, t.codomain()) {
        (Functional::Exact(g), _) => {
            let n = t.codomain().norm_exact(&tx).expect("exact");
            (g.clone(), Functional::Exact(tx.scale(&n.recip())))
        }
        // ψ = Tx/‖Tx‖ on ℓ2; the level test is scale invariant.
        (Functional::Float(gf), Space::Lp(s)) => {
            let psi = if s.is_euclidean() {
                tx.clone()
            } else {
                Vector::new(gf.iter().map(|&c| from_f64(c)).collect())
            };
            let dual = adj.domain();
            let Space::Lp(d) = dual else {
                unreachable!("dual of ℓp")
            };
            (psi.clone(), Functional::Float(d.duality_map(&psi.to_f64())))
        }
        (Functional::Float(_), Space::Polyhedral(_)) => {
            unreachable!("polyhedral support sets are exact")
        }
    };
    let adjoint_certificate = is_level_vector(&adj, &psi_vector)?
        .ok_or_else(|| Error::Internal("ψ is not a level vector of the adjoint".into()))?;
    let same = match (&cert.level_number, &adjoint_certificate.level_number) {
        (Value::Exact(a), Value::Exact(b)) => a == b,
        (a, b) => same_scale(a, b, t.domain().tolerance().max(1e-12) * 10.0),
    };
    if !same {
        return Err(Error::Internal(
            "level numbers of T and its adjoint differ".into(),
        ));
    }
    let dual_directional = preserves_bj_directional(&adj, &psi_vector, &normal)?.holds;
    Ok(AdjointTransfer {
        x: x.clone(),
        psi: match g {
            Functional::Exact(_) => Functional::Exact(psi_vector),
            Functional::Float(f) => Functional::Float(f),
        },
        level_number: cert.level_number,
        adjoint_level_number: adjoint_certificate.level_number.clone(),
        adjoint_certificate,
        dual_directional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{diagonal, shear_linf3};
    use crate::rational::{int, ratio};

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn vr(c: &[(i64, i64)]) -> Vector {
        Vector::new(c.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    #[test]
    fn certify_examples() {
        let l1 = Space::l1(3).unwrap();
        let report = certify_scalar_isometry_polyhedral(&diagonal(&l1, &[1, 2, 3])).unwrap();
        assert_eq!(report.verdict, Verdict::Refuted);
        let (x, y) = report.witness.unwrap();
        let t = diagonal(&l1, &[1, 2, 3]);
        assert!(bj_orthogonal(&l1, &x, &y).unwrap().orthogonal);
        assert!(
            !bj_orthogonal(&l1, &t.apply(&x).unwrap(), &t.apply(&y).unwrap())
                .unwrap()
                .orthogonal
        );

        let report = certify_scalar_isometry_polyhedral(&diagonal(&l1, &[3, 3, 3])).unwrap();
        assert_eq!(
            (report.verdict, report.scale),
            (Verdict::Certified, Some(Value::Exact(int(3))))
        );

        let linf4 = Space::linf(4).unwrap();
        let p =
            Matrix::from_int_rows(&[&[0, -1, 0, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 0, -1, 0]])
                .unwrap();
        let report = certify_scalar_isometry_polyhedral(&Operator::on(&linf4, p).unwrap()).unwrap();
        assert_eq!(
            (report.verdict, report.scale),
            (Verdict::Certified, Some(Value::Exact(int(1))))
        );
        assert_eq!(report.checked_points.len(), 16);

        let zero = Operator::on(&l1, Matrix::zeros(3, 3)).unwrap();
        assert_eq!(
            certify_scalar_isometry_polyhedral(&zero).unwrap().scale,
            Some(Value::Exact(int(0)))
        );
        let l2 = Operator::identity(&Space::l2(2).unwrap());
        assert!(certify_scalar_isometry_polyhedral(&l2).is_err());
    }

    #[test]
    fn probe_examples() {
        let l2 = Space::l2(3).unwrap();
        // Rational rotation with entries from the (3,4,5) triple.
        let q = Matrix::from_rows(vec![
            vec![ratio(3, 5), ratio(-4, 5), int(0)],
            vec![ratio(4, 5), ratio(3, 5), int(0)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        let report = probe_scalar_isometry_grid(&Operator::on(&l2, q).unwrap(), 200, 1).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!((report.scale.unwrap().to_f64() - 1.0).abs() < 1e-9);

        let l1 = Space::l1(3).unwrap();
        let report = probe_scalar_isometry_grid(&diagonal(&l1, &[2, 1, 1]), 200, 1).unwrap();
        assert_eq!(report.verdict, Verdict::Refuted);
        assert!(report.witness.is_some());

        let zero = Operator::on(&l2, Matrix::zeros(3, 3)).unwrap();
        let report = probe_scalar_isometry_grid(&zero, 10, 1).unwrap();
        assert_eq!(
            (report.verdict, report.scale),
            (Verdict::Certified, Some(Value::Exact(int(0))))
        );
    }

    #[test]
    fn scalar_identity_cases() {
        let linf = Space::linf(3).unwrap();
        let t = shear_linf3();
        let s = diagonal(&linf, &[1, 1, 2]);
        let half = |c: &[(i64, i64)]| vr(c);
        let case1 = scalar_identity_test(
            &s,
            &[
                v(&[1, 0, 0]),
                half(&[(1, 1), (1, 2), (0, 1)]),
                half(&[(1, 1), (0, 1), (1, 2)]),
            ],
        )
        .unwrap();
        assert_eq!(case1.failed(), vec!["i"]);
        let case2 = scalar_identity_test(
            &t,
            &[
                v(&[1, 1, 0]),
                half(&[(1, 1), (1, 2), (0, 1)]),
                half(&[(1, 1), (1, 1), (1, 2)]),
            ],
        )
        .unwrap();
        assert_eq!(case2.failed(), vec!["ii"]);
        let case3 = scalar_identity_test(
            &t,
            &[
                half(&[(1, 1), (1, 2), (0, 1)]),
                v(&[1, 1, 0]),
                half(&[(1, 1), (1, 1), (1, 2)]),
            ],
        )
        .unwrap();
        assert_eq!(case3.failed(), vec!["iii"]);
        let case4 = scalar_identity_test(
            &s,
            &[
                v(&[1, 0, 0]),
                half(&[(1, 1), (1, 2), (0, 1)]),
                v(&[0, 0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(case4.failed(), vec!["iv"]);
        for case in [case1, case2, case3, case4] {
            assert!(case.linearly_independent && case.certified.is_none());
        }

        let two = diagonal(&linf, &[2, 2, 2]);
        let report = scalar_identity_test(
            &two,
            &[
                half(&[(1, 1), (1, 2), (1, 4)]),
                half(&[(1, 2), (1, 1), (1, 4)]),
                half(&[(1, 4), (1, 2), (1, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(report.certified, Some(int(2)));

        assert!(matches!(
            scalar_identity_test(&two, &[v(&[1, 0, 0])]),
            Err(Error::InvalidArgument(_))
        ));
        assert_eq!(
            scalar_identity_test(&two, &[v(&[2, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]),
            Err(Error::NotUnitVector)
        );
    }

    #[test]
    fn adjoint_transfer_examples() {
        let t = diagonal(&Space::linf(3).unwrap(), &[1, 2, 3]);
        let rec = adjoint_level_transfer(&t, &v(&[1, 0, 0])).unwrap();
        assert_eq!(rec.psi, Functional::Exact(v(&[1, 0, 0])));
        assert_eq!(rec.level_number, Value::Exact(int(1)));
        assert_eq!(rec.adjoint_level_number, Value::Exact(int(1)));
        assert!(rec.dual_directional);
        assert_eq!(t.adjoint().domain().label(), Space::l1(3).unwrap().label());

        let d = diagonal(&Space::linf(2).unwrap(), &[2, 1]);
        let rec = adjoint_level_transfer(&d, &v(&[1, 1])).unwrap();
        assert_eq!(rec.psi, Functional::Exact(v(&[1, 0])));
        assert_eq!(
            (rec.level_number, rec.adjoint_level_number),
            (Value::Exact(int(4)), Value::Exact(int(4)))
        );

        let id = Operator::identity(&Space::l1(3).unwrap());
        let rec = adjoint_level_transfer(&id, &v(&[1, 0, 0])).unwrap();
        assert_eq!(rec.level_number, Value::Exact(int(1)));

        let shear = shear_linf3();
        assert_eq!(
            adjoint_level_transfer(&shear, &vr(&[(1, 1), (1, 2), (0, 1)])),
            Err(Error::NotLevelVector)
        );
        let k = diagonal(&Space::linf(3).unwrap(), &[0, 1, 1]);
        assert_eq!(
            adjoint_level_transfer(&k, &v(&[1, 0, 0])),
            Err(Error::ZeroVector("Tx"))
        );
    }

    #[test]
    fn euclidean_adjoint_transfer() {
        let l2 = Space::l2(2).unwrap();
        let t = diagonal(&l2, &[3, 1]);
        let rec = adjoint_level_transfer(&t, &v(&[1, 0])).unwrap();
        assert_eq!(rec.level_number, Value::Exact(int(9)));
        assert!(rec.dual_directional);
    }
}
