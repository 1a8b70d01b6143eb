//! Worked-example battery run by `bjlevel selftest`.

use bjlevel::catalog::{diagonal, shear_linf3};
use bjlevel::isometry::{
    adjoint_level_transfer, certify_scalar_isometry_polyhedral, scalar_identity_test, Verdict,
};
use bjlevel::levelvec::{
    enumerate_level_numbers, is_level_vector, level_count_bound, level_number, preserves_bj_at,
    preserves_bj_directional,
};
use bjlevel::oracle::{minimize_norm_1d, preservation_sample_check};
use bjlevel::orthogonality::bj_orthogonal;
use bjlevel::rational::int;
use bjlevel::{Functional, Operator, Rational, Result, Space, Value, Vector};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn vec(text: &str) -> Vector {
    Vector::parse(text).expect("literal vector")
}

fn exact(k: i64) -> Value {
    Value::Exact(int(k))
}

fn check(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn failed_conditions(t: &Operator, candidates: &[&str]) -> Result<Vec<&'static str>> {
    let c: Vec<Vector> = candidates.iter().map(|s| vec(s)).collect();
    Ok(scalar_identity_test(t, &c)?.failed())
}

pub fn run() -> Vec<Check> {
    let l1 = Space::l1(3).expect("valid");
    let linf = Space::linf(3).expect("valid");
    let linf2 = Space::linf(2).expect("valid");
    let t211 = diagonal(&l1, &[2, 1, 1]);
    let t123_l1 = diagonal(&l1, &[1, 2, 3]);
    let t123_linf = diagonal(&linf, &[1, 2, 3]);
    let d21 = diagonal(&linf2, &[2, 1]);
    let s = diagonal(&linf, &[1, 1, 2]);
    let shear = shear_linf3();
    let e1 = vec("1,0,0");

    vec![
        check(
            "adjoint of diag(1,2,3) on linf^3 is diag(1,2,3) on l1^3",
            || {
                let adj = t123_linf.adjoint();
                Ok((
                    adj.matrix() == t123_linf.matrix()
                        && *adj.domain() == l1
                        && *adj.codomain() == l1,
                    adj.domain().label(),
                ))
            },
        ),
        check(
            "l1^3 diag(2,1,1): (1,0,0) is a level vector with k = 4",
            || {
                let k = level_number(&t211, &e1)?;
                Ok((k == exact(4), k.to_string()))
            },
        ),
        check(
            "l1^3 diag(2,1,1): (1,0,0) orthogonal to (1/2,1/2,0)",
            || {
                Ok((
                    bj_orthogonal(&l1, &e1, &vec("1/2,1/2,0"))?.orthogonal,
                    String::new(),
                ))
            },
        ),
        check(
            "l1^3 diag(2,1,1): (2,0,0) not orthogonal to (1,1/2,0)",
            || {
                Ok((
                    !bj_orthogonal(&l1, &vec("2,0,0"), &vec("1,1/2,0"))?.orthogonal,
                    String::new(),
                ))
            },
        ),
        check(
            "l1^3 diag(2,1,1): preserves along ker f for f = (1,0,0)",
            || {
                Ok((
                    preserves_bj_directional(&t211, &e1, &Functional::Exact(e1.clone()))?.holds,
                    String::new(),
                ))
            },
        ),
        check(
            "l1^3 diag(2,1,1): does not preserve orthogonality at (1,0,0)",
            || {
                let r = preserves_bj_at(&t211, &e1)?;
                let Some(c) = r.counterexample else {
                    return Ok((false, "no counterexample".into()));
                };
                let verified = bj_orthogonal(&l1, &e1, &c.y)?.orthogonal
                    && !bj_orthogonal(&l1, &t211.apply(&e1)?, &t211.apply(&c.y)?)?.orthogonal;
                Ok((!r.holds && verified, format!("y = {}", c.y)))
            },
        ),
        check(
            "l1^3 diag(2,1,1): sampling finds violations at (1,0,0)",
            || {
                let n = preservation_sample_check(&t211, &e1, 100, 1)?
                    .violations
                    .len();
                Ok((n > 0, format!("{n} violations")))
            },
        ),
        check("l1^3: min of |(2,0,0) + t(1,1/2,0)| is 1 at t = -2", || {
            let m = minimize_norm_1d(&l1, &vec("2,0,0"), &vec("1,1/2,0"))?;
            Ok((
                m.lambda == exact(-2) && m.value == exact(1),
                format!("{} at {}", m.value, m.lambda),
            ))
        }),
        check("linf^3 shear: (1,1/2,0) is not a level vector", || {
            Ok((
                is_level_vector(&shear, &vec("1,1/2,0"))?.is_none(),
                String::new(),
            ))
        }),
        check("linf^3 shear: (1,1,0) is a level vector with k = 1", || {
            let c = is_level_vector(&shear, &vec("1,1,0"))?;
            Ok((c.is_some_and(|c| c.level_number == exact(1)), String::new()))
        }),
        check("linf^3 (x,y,2z): preserves along ker f at (1,0,0)", || {
            Ok((
                preserves_bj_directional(&s, &e1, &Functional::Exact(e1.clone()))?.holds,
                String::new(),
            ))
        }),
        check(
            "linf^2 diag(2,1): level numbers 1 at (0,1) and 4 at (1,1)",
            || {
                let a = level_number(&d21, &vec("0,1"))?;
                let b = level_number(&d21, &vec("1,1"))?;
                Ok((a == exact(1) && b == exact(4), format!("{a}, {b}")))
            },
        ),
        check("linf^2 diag(2,1): enumeration finds {1, 4}", || {
            let r = enumerate_level_numbers(&d21, 5, 42)?;
            Ok((
                r.values == [int(1), int(4)] && r.under_approximation,
                format!(
                    "{:?}",
                    r.values.iter().map(|k| k.to_string()).collect::<Vec<_>>()
                ),
            ))
        }),
        check("l1^3 diag(1,2,3): enumeration contains 1, 4, 9", || {
            let r = enumerate_level_numbers(&t123_l1, 5, 42)?;
            Ok((
                [1, 4, 9].iter().all(|&k| r.values.contains(&int(k))),
                format!("{} values", r.values.len()),
            ))
        }),
        check("level-number bound on l1^3 and linf^3 is 13", || {
            let a = level_count_bound(&t123_l1)?;
            let b = level_count_bound(&t123_linf)?;
            Ok((a == int(13) && b == int(13), format!("{a}, {b}")))
        }),
        check(
            "l1^3 diag(1,2,3): extreme points are level vectors with k in {1,4,9}",
            || {
                let mut ks: Vec<Rational> = Vec::new();
                for v in bjlevel::faces::extreme_points(&l1)? {
                    ks.push(
                        level_number(&t123_l1, &v)?
                            .as_exact()
                            .cloned()
                            .unwrap_or_default(),
                    );
                }
                ks.sort();
                ks.dedup();
                Ok((ks == [int(1), int(4), int(9)], String::new()))
            },
        ),
        check(
            "l1^3 diag(1,2,3): not a scalar multiple of an isometry",
            || {
                let r = certify_scalar_isometry_polyhedral(&t123_l1)?;
                Ok((
                    r.verdict == Verdict::Refuted && r.witness.is_some(),
                    r.verdict.as_str().into(),
                ))
            },
        ),
        check(
            "linf^3 diag(1,2,3): preserves orthogonality at (1,0,0)",
            || Ok((preserves_bj_at(&t123_linf, &e1)?.holds, String::new())),
        ),
        check(
            "linf^3 diag(1,2,3): sampling finds no violation at (1,0,0)",
            || {
                let n = preservation_sample_check(&t123_linf, &e1, 100, 1)?
                    .violations
                    .len();
                Ok((n == 0, format!("{n} violations")))
            },
        ),
        check(
            "linf^3 diag(1,2,3): adjoint transfer at (1,0,0) gives psi = (1,0,0), k = 1",
            || {
                let r = adjoint_level_transfer(&t123_linf, &e1)?;
                let ok = r.psi == Functional::Exact(e1.clone())
                    && r.level_number == exact(1)
                    && r.adjoint_level_number == exact(1);
                Ok((ok, String::new()))
            },
        ),
        check("scalar-identity case 1 fails only (i)", || {
            let f = failed_conditions(&s, &["1,0,0", "1,1/2,0", "1,0,1/2"])?;
            Ok((f == ["i"], f.join(",")))
        }),
        check("scalar-identity case 2 fails only (ii)", || {
            let f = failed_conditions(&shear, &["1,1,0", "1,1/2,0", "1,1,1/2"])?;
            Ok((f == ["ii"], f.join(",")))
        }),
        check("scalar-identity case 3 fails only (iii)", || {
            let f = failed_conditions(&shear, &["1,1/2,0", "1,1,0", "1,1,1/2"])?;
            Ok((f == ["iii"], f.join(",")))
        }),
        check("scalar-identity case 4 fails only (iv)", || {
            let f = failed_conditions(&s, &["1,0,0", "1,1/2,0", "0,0,1"])?;
            Ok((f == ["iv"], f.join(",")))
        }),
    ]
}
