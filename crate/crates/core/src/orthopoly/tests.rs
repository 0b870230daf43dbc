use super::*;
use crate::numerics::{factorial, gauss_rule, ln_gamma, re, WeightFamily};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

const H: Method = Method::Hypergeometric;
const R: Method = Method::Recurrence;

fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
}

fn all_paths(f: &PolyFamily, n: usize, x: Scalar) -> Vec<Scalar> {
    let mut out = vec![eval(f, n, x, H).unwrap(), eval(f, n, x, R).unwrap()];
    if f.is_q_family() {
        out.push(eval(f, n, x, Method::ProductSeries).unwrap());
    }
    out
}

fn sample_families() -> Vec<PolyFamily> {
    vec![
        PolyFamily::Laguerre { alpha: 0.5 },
        PolyFamily::Meixner { beta: 1.5, c: 0.4 },
        PolyFamily::MeixnerPollaczek {
            lambda: 0.75,
            phi: PI / 3.0,
        },
        PolyFamily::Jacobi { a: 0.3, b: 1.2 },
        PolyFamily::Hahn {
            a: 0.5,
            b: 1.5,
            n: 7,
        },
        PolyFamily::ContinuousHahn {
            a: Complex64::new(0.7, 0.2),
            b: Complex64::new(1.1, -0.3),
            c: Complex64::new(0.7, -0.2),
            d: Complex64::new(1.1, 0.3),
        },
        PolyFamily::Hermite,
        PolyFamily::AlSalamChihara {
            a: re(0.4),
            b: re(0.2),
            q: 0.3,
        },
        PolyFamily::AskeyWilson {
            a: re(0.5),
            b: re(0.3),
            c: re(-0.4),
            d: re(0.2),
            q: 0.35,
        },
    ]
}

#[test]
fn degree_one_laguerre() {
    let f = PolyFamily::Laguerre { alpha: 1.0 };
    for m in [H, R] {
        assert!(eval(&f, 1, re(2.0), m).unwrap().norm() < 1e-15);
        assert!(close(eval(&f, 1, re(0.3), m).unwrap(), re(1.7), 1e-15));
    }
}

#[test]
fn degree_zero_is_one() {
    for f in sample_families() {
        let x = if let PolyFamily::Hahn { .. } = f {
            re(3.0)
        } else {
            re(0.37)
        };
        for v in all_paths(&f, 0, x) {
            assert!(close(v, ONE, 1e-15), "{}: {v}", f.name());
        }
    }
    let f = PolyFamily::Meixner { beta: 1.5, c: 0.25 };
    assert_eq!(eval(&f, 0, re(7.0), H).unwrap(), ONE);
}

// Reference values from independent high-precision summation of the
// hypergeometric definitions.
#[test]
fn reference_values() {
    let fams = sample_families();
    let cases: [(usize, usize, Scalar, f64); 9] = [
        (0, 7, re(2.3), 1.058_583_304_126_984),
        (1, 5, re(3.0), 6.571_428_571_428_571),
        (2, 6, re(0.4), -0.195515970555799),
        (3, 8, re(0.45), -0.35275241435936404),
        (4, 4, re(3.0), 1.4114285714285714),
        (5, 3, re(0.4), -9.455264000000001),
        (6, 9, re(1.1), -12897.031735808001),
        (7, 2, re((PI / 3.0).cos()), -0.316_000_000_000_000_6),
        (8, 4, re(0.9f64.cos()), -0.649_462_630_531_016),
    ];
    for (i, n, x, want) in cases {
        for v in all_paths(&fams[i], n, x) {
            assert!(
                close(v, re(want), 1e-12),
                "{} n={n}: {v} vs {want}",
                fams[i].name()
            );
            assert!(v.im.abs() < 1e-12 * v.norm());
        }
    }
}

#[test]
fn parameter_violations() {
    let bad = [
        PolyFamily::Laguerre { alpha: -1.0 },
        PolyFamily::Meixner { beta: 0.0, c: 0.5 },
        PolyFamily::Meixner { beta: 1.0, c: 1.0 },
        PolyFamily::MeixnerPollaczek {
            lambda: 0.0,
            phi: 1.0,
        },
        PolyFamily::MeixnerPollaczek {
            lambda: 1.0,
            phi: PI,
        },
        PolyFamily::Jacobi { a: -1.5, b: 0.0 },
        PolyFamily::AlSalamChihara {
            a: re(0.1),
            b: re(0.1),
            q: 1.0,
        },
    ];
    for f in bad {
        assert!(
            matches!(eval(&f, 2, re(0.3), R), Err(Error::Domain(_))),
            "{f:?}"
        );
    }
    let hahn = PolyFamily::Hahn {
        a: 0.5,
        b: 0.5,
        n: 4,
    };
    assert!(eval(&hahn, 5, re(1.0), R).is_err());
    assert!(eval(&hahn, 2, re(1.5), R).is_err());
    assert!(eval(&hahn, 2, re(5.0), R).is_err());
    assert!(eval(&PolyFamily::Hermite, MAX_DEGREE + 1, re(0.0), R).is_err());
    assert!(eval(&PolyFamily::Hermite, 3, re(0.0), Method::ProductSeries).is_err());
}

#[test]
fn hahn_scaled_matches_definition() {
    let (a, b, big) = (0.5, 1.5, 7usize);
    let f = PolyFamily::Hahn { a, b, n: big };
    for n in 0..=big {
        for x in 0..=big {
            let scaled = hahn_scaled(n, x as f64, a, b, big as f64);
            let direct = eval(&f, n, re(x as f64), H).unwrap().re
                * crate::numerics::pochhammer_real(-(big as f64), n);
            assert!(
                (scaled - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                "n={n} x={x}"
            );
        }
    }
    // degree beyond N: the scaled form is finite (and vanishes on the grid)
    assert_eq!(hahn_scaled(3, 1.0, 0.5, 0.5, 2.0), 0.0);
}

#[test]
fn meixner_scaled_matches_definition() {
    let f = PolyFamily::Meixner { beta: 1.7, c: 0.36 };
    for n in 0..8 {
        for m in 0..8 {
            let direct = eval(&f, n, re(m as f64), H).unwrap().re * 0.6f64.powi((n + m) as i32);
            let s = meixner_scaled(n, m, 1.7, 0.6);
            assert!(
                (s - direct).abs() <= 1e-12 * direct.abs().max(1e-3),
                "n={n} m={m}"
            );
            // γ → −γ flips the sign by (−1)^{n+m}
            let flipped = meixner_scaled(n, m, 1.7, -0.6);
            let sign = if (n + m) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((flipped - sign * s).abs() <= 1e-13 * s.abs().max(1.0));
        }
    }
    // γ = 0: only the k = n = m term survives
    assert_eq!(meixner_scaled(2, 3, 0.5, 0.0), 0.0);
    let want = -factorial(3) / crate::numerics::pochhammer_real(0.5, 3);
    assert!((meixner_scaled(3, 3, 0.5, 0.0) - want).abs() < 1e-12);
}

#[test]
fn jacobi_homogeneous_matches_polynomial() {
    let (a, b) = (0.6, 1.4);
    let f = PolyFamily::Jacobi { a, b };
    for j in 0..10 {
        let (x1, x2): (f64, f64) = (0.7, 1.9);
        let s = x1 + x2;
        let direct = s.powi(j as i32) * eval(&f, j, re((x2 - x1) / s), R).unwrap().re;
        let h = jacobi_homogeneous(j, a, b, x1, x2);
        assert!((h - direct).abs() <= 1e-12 * direct.abs().max(1.0), "j={j}");
    }
    assert_eq!(jacobi_homogeneous(3, a, b, 0.0, 0.0), 0.0);
    assert_eq!(jacobi_homogeneous(0, a, b, 0.0, 0.0), 1.0);
}

#[test]
fn jacobi_norm_examples() {
    assert!((jacobi_norm(0, 0.5, 0.5).unwrap() - 2.0).abs() < 1e-14);
    assert!((jacobi_norm(1, 0.5, 0.5).unwrap() - 2.0 / 3.0).abs() < 1e-14);
    assert!((jacobi_norm(0, 0.8, 1.3).unwrap() - 1.5133646828094849).abs() < 1e-13);
    assert!(jacobi_norm(2, 0.0, 1.0).is_err());
    // small k1 + k2 keeps Γ(2k₁+2k₂−1) arguments away from the j = 0 formula
    assert!(jacobi_norm(0, 0.1, 0.1).unwrap() > 0.0);
}

#[test]
fn aw_weight_examples() {
    let q = 0.35;
    let zero = [re(0.0); 4];
    let w = aw_weight(0.0, zero, q).unwrap();
    assert!((w - 10.459405829992209).abs() < 1e-12);
    let p = [re(0.5), re(0.3), re(-0.4), re(0.2)];
    let w = aw_weight(0.3, p, q).unwrap();
    assert!((w - 8.964_034_738_662_26).abs() < 1e-12);
    let perm = [re(-0.4), re(0.2), re(0.5), re(0.3)];
    assert!((aw_weight(0.3, perm, q).unwrap() - w).abs() < 1e-14 * w);
    assert!(matches!(aw_weight(1.0, p, q), Err(Error::Domain(_))));
    assert!(aw_weight(0.2, [re(1.2), re(0.1), re(0.1), re(0.1)], q).is_err());
    // non-conjugate complex parameters give a complex weight
    assert!(aw_weight(
        0.2,
        [Complex64::new(0.2, 0.3), re(0.1), re(0.1), re(0.1)],
        q
    )
    .is_err());
}

fn gram_check(
    n_polys: usize,
    points: usize,
    f: &PolyFamily,
    rule: WeightFamily,
    norm: impl Fn(usize) -> f64,
) {
    let r = gauss_rule(rule, points).unwrap();
    for i in 0..n_polys {
        for j in 0..=i {
            let g = r
                .integrate(|x| eval(f, i, re(x), R).unwrap() * eval(f, j, re(x), R).unwrap())
                .re;
            let want = if i == j { norm(i) } else { 0.0 };
            let scale = (norm(i) * norm(j)).sqrt();
            assert!(
                (g - want).abs() <= 1e-7 * scale,
                "{} ({i},{j}): {g} vs {want}",
                f.name()
            );
        }
    }
}

#[test]
fn quadrature_gram_matrices() {
    let alpha = 0.7;
    gram_check(
        8,
        12,
        &PolyFamily::Laguerre { alpha },
        WeightFamily::Laguerre { alpha },
        |n| (ln_gamma(n as f64 + alpha + 1.0).unwrap() - ln_gamma(n as f64 + 1.0).unwrap()).exp(),
    );
    gram_check(8, 12, &PolyFamily::Hermite, WeightFamily::Hermite, |n| {
        PI.sqrt() * 2f64.powi(n as i32) * factorial(n)
    });
    let (k1, k2) = (0.8, 1.3);
    let (a, b) = (2.0 * k1 - 1.0, 2.0 * k2 - 1.0);
    gram_check(
        8,
        12,
        &PolyFamily::Jacobi { a, b },
        WeightFamily::Jacobi { a, b },
        |n| jacobi_norm(n, k1, k2).unwrap(),
    );
}

#[test]
fn askey_wilson_gram_by_theta_quadrature() {
    let q = 0.3;
    let p = [re(0.5), re(0.3), re(-0.4), re(0.2)];
    let f = PolyFamily::AskeyWilson {
        a: p[0],
        b: p[1],
        c: p[2],
        d: p[3],
        q,
    };
    let rule = gauss_rule(WeightFamily::TrapezoidTheta, 256).unwrap();
    let weights: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&t| aw_weight_theta(t, p, q).unwrap())
        .collect();
    let vals: Vec<Vec<Scalar>> = (0..8)
        .map(|n| {
            rule.nodes
                .iter()
                .map(|&t| eval_mu(&f, n, MuPoint::from_theta(t), R).unwrap().value)
                .collect()
        })
        .collect();
    for i in 0..8 {
        for j in 0..=i {
            let g: f64 = (0..rule.len())
                .map(|k| (vals[i][k] * vals[j][k]).re * weights[k] * rule.weights[k])
                .sum();
            let want = if i == j {
                aw_norm(i, p, q).unwrap()
            } else {
                0.0
            };
            let scale = (aw_norm(i, p, q).unwrap() * aw_norm(j, p, q).unwrap()).sqrt();
            assert!((g - want).abs() <= 1e-7 * scale, "({i},{j}): {g} vs {want}");
        }
    }
}

#[test]
fn aw_norm_zero_matches_quadrature() {
    let q = 0.45;
    let p = [
        Complex64::new(0.3, 0.4),
        Complex64::new(0.3, -0.4),
        re(0.6),
        re(-0.1),
    ];
    let rule = gauss_rule(WeightFamily::TrapezoidTheta, 512).unwrap();
    let total = rule.integrate_real(|t| aw_weight_theta(t, p, q).unwrap());
    assert!((total - aw_norm(0, p, q).unwrap()).abs() <= 1e-7 * total);
}

#[test]
fn mu_point_symmetry() {
    let p = MuPoint::from_theta(0.8);
    assert!((p.mu.re - 0.8f64.cos()).abs() < 1e-16);
    let inv = MuPoint::from_x(ONE / p.x);
    assert!(close(inv.mu, p.mu, 1e-15));
    let back = MuPoint::from_mu(p.mu);
    assert!(close(back.x, p.x, 1e-15));
}

#[test]
fn all_zero_q_parameters_give_q_hermite() {
    let q = 0.4;
    let z = re(0.0);
    let aw_f = PolyFamily::AskeyWilson {
        a: z,
        b: z,
        c: z,
        d: z,
        q,
    };
    let asc_f = PolyFamily::AlSalamChihara { a: z, b: z, q };
    for n in 0..10 {
        let x = re(0.3);
        let r = eval(&aw_f, n, x, R).unwrap();
        for v in all_paths(&aw_f, n, x)
            .into_iter()
            .chain(all_paths(&asc_f, n, x))
        {
            assert!(close(v, r, 1e-12));
        }
    }
}

#[test]
fn product_series_agrees_at_high_degree() {
    let p = PolyFamily::AskeyWilson {
        a: re(0.5),
        b: re(0.3),
        c: re(-0.4),
        d: re(0.2),
        q: 0.4,
    };
    let s = PolyFamily::AlSalamChihara {
        a: Complex64::new(0.4, 0.3),
        b: Complex64::new(0.4, -0.3),
        q: 0.6,
    };
    for f in [p, s] {
        for n in [10, 25, 50] {
            let x = re(0.9f64.cos());
            let a = eval(&f, n, x, R).unwrap();
            let b = eval(&f, n, x, Method::ProductSeries).unwrap();
            assert!(close(a, b, 1e-10), "{} n={n}: {a} vs {b}", f.name());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn continuous_hahn_table_row_is_real(
        k1 in 0.1f64..3.0, k2 in 0.1f64..3.0, x1 in -3.0f64..3.0, x2 in -3.0f64..3.0, j in 0usize..=10,
    ) {
        let s = x1 + x2;
        let f = PolyFamily::ContinuousHahn {
            a: re(k1),
            b: Complex64::new(k2, -s),
            c: re(k1),
            d: Complex64::new(k2, s),
        };
        let v = eval(&f, j, re(x1), R).unwrap();
        prop_assert!(v.im.abs() <= 1e-10 * v.norm().max(1e-300));
        let h = eval_detailed(&f, j, re(x1), H).unwrap();
        if h.cancellation <= 1e5 {
            prop_assert!(h.value.im.abs() <= 1e-10 * h.value.norm().max(1e-300));
        }
    }

    #[test]
    fn askey_wilson_permutation_symmetry(
        a in -0.9f64..0.9, b in -0.9f64..0.9, c in -0.9f64..0.9, d in -0.9f64..0.9,
        q in 0.1f64..0.9, theta in 0.0f64..PI, n in 0usize..=12, perm in 0usize..24,
    ) {
        let mut p = [re(a), re(b), re(c), re(d)];
        let base = PolyFamily::AskeyWilson { a: p[0], b: p[1], c: p[2], d: p[3], q };
        // decode a permutation of four items from its index
        let mut idx = perm;
        for i in (1..4usize).rev() {
            let j = idx % (i + 1);
            idx /= i + 1;
            p.swap(i, j);
        }
        let permuted = PolyFamily::AskeyWilson { a: p[0], b: p[1], c: p[2], d: p[3], q };
        let pt = MuPoint::from_theta(theta);
        let v0 = eval_mu(&base, n, pt, Method::ProductSeries).unwrap().value;
        let v1 = eval_mu(&permuted, n, pt, Method::ProductSeries).unwrap().value;
        let scale = eval_mu(&base, n, pt, Method::ProductSeries).unwrap().cancellation.max(1.0) * v0.norm().max(1e-3);
        prop_assert!((v0 - v1).norm() <= 1e-10 * scale);
    }

    #[test]
    fn laguerre_and_jacobi_paths_agree(alpha in -0.9f64..4.0, b in -0.9f64..4.0, x in -1.0f64..1.0, n in 0usize..=50) {
        for f in [PolyFamily::Laguerre { alpha }, PolyFamily::Jacobi { a: alpha, b }] {
            let xx = if let PolyFamily::Laguerre { .. } = f { re((x + 1.0) * 5.0) } else { re(x) };
            let h = eval_detailed(&f, n, xx, H).unwrap();
            let r = eval(&f, n, xx, R).unwrap();
            if h.cancellation <= 1e5 {
                prop_assert!(close(h.value, r, 1e-9), "{} n={} {} vs {}", f.name(), n, h.value, r);
            }
        }
    }
}
