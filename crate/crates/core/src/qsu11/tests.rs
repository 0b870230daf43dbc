use std::collections::BTreeMap;
use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;

use super::*;

fn label(k: f64, q: f64, s: f64) -> QRepLabel {
    QRepLabel::new(k, q, s).unwrap()
}

type Vector = BTreeMap<usize, f64>;

fn apply_word(r: QRepLabel, word: &[QGenerator], n: usize) -> Vector {
    // rightmost generator acts first
    word.iter()
        .rev()
        .fold(Vector::from([(n, 1.0)]), |v, &g| qrep_apply(r, g, &v))
}

fn combine(terms: &[(f64, &Vector)]) -> Vector {
    let mut out = Vector::new();
    for (w, v) in terms {
        for (&i, &c) in v.iter() {
            *out.entry(i).or_insert(0.0) += w * c;
        }
    }
    out
}

fn max_abs(v: &Vector) -> f64 {
    v.values().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn label_validation() {
    assert!(QRepLabel::new(0.0, 0.5, 1.0).is_err());
    assert!(QRepLabel::new(1.0, 1.0, 1.0).is_err());
    assert!(QRepLabel::new(1.0, 0.5, 0.0).is_err());
    assert!(label(0.9, 0.3, 1.1).in_measure_range());
    assert!(!label(0.1, 0.3, 3.0).in_measure_range());
}

#[test]
fn generator_examples() {
    let r = label(0.7, 0.4, 1.3);
    let a = qrep_action(r, QGenerator::A, 3);
    assert_eq!(a[0].0, 3);
    assert_relative_eq!(a[0].1, 0.4f64.powf(1.85), epsilon = 1e-15);
    assert!(qrep_action(r, QGenerator::C, 0).is_empty());
    assert_eq!(qrep_action(r, QGenerator::B, 2)[0].0, 3);
}

#[test]
fn defining_relations_on_basis() {
    let r = label(0.75, 0.35, 1.4);
    let q = r.q();
    let h = q.sqrt();
    use QGenerator::*;
    for n in 0..=10 {
        let ad = apply_word(r, &[A, D], n);
        assert!((ad[&n] - 1.0).abs() < 1e-14);
        let da = apply_word(r, &[D, A], n);
        assert!((da[&n] - 1.0).abs() < 1e-14);

        let ab = apply_word(r, &[A, B], n);
        let ba = apply_word(r, &[B, A], n);
        assert!(max_abs(&combine(&[(1.0, &ab), (-h, &ba)])) <= 1e-14 * max_abs(&ab));

        let ac = apply_word(r, &[A, C], n);
        let ca = apply_word(r, &[C, A], n);
        assert!(max_abs(&combine(&[(1.0, &ac), (-1.0 / h, &ca)])) <= 1e-14 * max_abs(&ac).max(1.0));

        let bc = apply_word(r, &[B, C], n);
        let cb = apply_word(r, &[C, B], n);
        let a2 = apply_word(r, &[A, A], n);
        let d2 = apply_word(r, &[D, D], n);
        let w = 1.0 / (h - 1.0 / h);
        let lhs = combine(&[(1.0, &bc), (-1.0, &cb)]);
        let rhs = combine(&[(w, &a2), (-w, &d2)]);
        let diff = combine(&[(1.0, &lhs), (-1.0, &rhs)]);
        assert!(max_abs(&diff) <= 1e-12 * max_abs(&rhs), "n = {n}: {diff:?}");
    }
}

#[test]
fn ysa_two_by_two() {
    // diag (s + 1/s)(q^{k+n} − 1)/(q^{−1/2} − q^{1/2}), offdiag √((1−q)(1−q^{2k}))/(q^{−1/2} − q^{1/2})
    let m = ysa_matrix(label(1.0, 0.5, 1.2), 2).unwrap();
    assert_relative_eq!(m.diag()[0], -1.4377837884126466, max_relative = 1e-14);
    assert_relative_eq!(m.diag()[1], -2.1566756826189699, max_relative = 1e-14);
    assert_relative_eq!(
        m.offdiag()[0],
        0.866_025_403_784_438_6,
        max_relative = 1e-14
    );

    let m = ysa_matrix(label(1.0, 0.5, 1.0), 3).unwrap();
    let h = 0.5f64.sqrt();
    for n in 0..3 {
        assert_relative_eq!(
            m.diag()[n],
            2.0 * (0.5f64.powi(1 + n as i32) - 1.0) / (1.0 / h - h),
            max_relative = 1e-14
        );
    }
}

#[test]
fn q_eigvec_examples() {
    let r = label(0.8, 0.4, 1.1);
    let x = MuPoint::from_theta(PI / 4.0);
    let l = q_eigvec_coeffs(r, x, 20).unwrap();
    assert_eq!(l.values[0], ONE);
    assert!(l.recurrence_residual().unwrap() <= 1e-9);

    let at_s = MuPoint::from_x(Scalar::new(1.1, 0.0));
    assert!(r.eigenvalue(at_s).norm() < 1e-15);
}

#[test]
fn q_eigvec_recurrence_off_circle() {
    let r = label(1.3, 0.6, -0.7);
    let x = MuPoint::from_x(Scalar::new(0.4, 0.9));
    let l = q_eigvec_coeffs(r, x, 30).unwrap();
    assert!(l.recurrence_residual().unwrap() <= 1e-9);
}

#[test]
fn q_eigvec_generating_function() {
    let r = label(0.9, 0.45, 1.25);
    let x = MuPoint::from_theta(1.1);
    let l = q_eigvec_coeffs(r, x, 60).unwrap();
    for z in [
        Scalar::new(0.4, 0.0),
        Scalar::new(-0.2, 0.3),
        Scalar::new(0.0, -0.4),
    ] {
        let series: Scalar = l
            .values
            .iter()
            .enumerate()
            .map(|(n, v)| v * q_basis_realized(r.k(), r.q(), n, z))
            .sum();
        let closed = q_eigvec_realized(r, x, z).unwrap();
        assert!((series - closed).norm() <= 1e-8 * closed.norm(), "z = {z}");
    }
}

#[test]
fn uncoupled_realized_examples() {
    let (x1, x2) = (MuPoint::from_theta(0.9), MuPoint::from_theta(2.0));
    let v = q_uncoupled_realized(0.6, 0.9, 0.3, 1.1, x1, x2, ONE * 0.0, ONE * 0.0).unwrap();
    assert_eq!(v, ONE);
    assert!(matches!(
        q_uncoupled_realized(
            0.6,
            0.9,
            0.5,
            1.1,
            MuPoint::from_x(ONE * 2.0),
            x2,
            ONE * 4.0,
            ONE * 0.0
        ),
        Err(Error::Pole(_))
    ));
}

#[test]
fn uncoupled_realized_matches_double_series() {
    let (k1, k2, q, s): (f64, f64, f64, f64) = (0.6, 0.9, 0.3, 1.1);
    let (x1, x2) = (MuPoint::from_theta(0.8), MuPoint::from_theta(2.2));
    let (z1, z2) = (Scalar::new(0.35, 0.1), Scalar::new(-0.2, 0.25));
    let (t1, t2) = (q.powf(k1), q.powf(k2));
    let first = PolyFamily::AlSalamChihara {
        a: x2.x * t1,
        b: t1 / x2.x,
        q,
    };
    let second = PolyFamily::AlSalamChihara {
        a: ONE * (t2 * s),
        b: ONE * (t2 / s),
        q,
    };
    let coeff = |family: &PolyFamily, k: f64, x: MuPoint, n: usize| {
        let p = orthopoly::eval_mu(family, n, x, Method::Recurrence)
            .unwrap()
            .value;
        p / (qpoch(ONE * q, q, n) * qpoch(ONE * q.powf(2.0 * k), q, n)).sqrt()
    };
    let mut total = CompensatedSum::new();
    for n1 in 0..30 {
        let a = coeff(&first, k1, x1, n1) * q_basis_realized(k1, q, n1, z1);
        for n2 in 0..30 {
            total.add(a * coeff(&second, k2, x2, n2) * q_basis_realized(k2, q, n2, z2));
        }
    }
    let direct = q_uncoupled_realized(k1, k2, q, s, x1, x2, z1, z2).unwrap();
    assert!((total.value() - direct).norm() <= 1e-8 * direct.norm());
}

#[test]
fn coupled_realized_examples() {
    let q: f64 = 0.3;
    let (z1, z2) = (Scalar::new(0.2, 0.1), Scalar::new(-0.15, 0.25));
    assert_relative_eq!(
        q_coupled_realized(0.6, 0.9, 0, 0, q, z1, z2).unwrap().re,
        1.0,
        epsilon = 1e-15
    );

    // j = 1, n = 0: N (z₂ − q^{k₁} z₁) with N² = (1 − q^{2k₁})(1 − q^{2k₂})/((1 − q)(1 − q^{2k₁+2k₂}))
    let (k1, k2): (f64, f64) = (0.6, 0.9);
    let v = q_coupled_realized(k1, k2, 1, 0, q, z1, z2).unwrap();
    let norm = ((1.0 - q.powf(2.0 * k1)) * (1.0 - q.powf(2.0 * k2))
        / ((1.0 - q) * (1.0 - q.powf(2.0 * k1 + 2.0 * k2))))
    .sqrt();
    assert!((v - (z2 - z1 * q.powf(k1)) * norm).norm() < 1e-15);

    // values of the defining product times the 3phi2, at 30 digits
    let cases = [
        (
            0.6,
            0.9,
            2,
            3,
            z1,
            z2,
            Scalar::new(0.000_698_378_040_923_264_4, 0.000_546_582_001_090_416_4),
        ),
        (
            0.8,
            1.4,
            0,
            4,
            Scalar::new(0.3, 0.0),
            Scalar::new(0.1, -0.2),
            Scalar::new(0.008_896_704_731_251_577, -0.003593112346561208),
        ),
        (
            0.7,
            0.5,
            3,
            5,
            Scalar::new(0.1, 0.2),
            Scalar::new(0.05, 0.3),
            Scalar::new(-1.8436942940373345e-5, -2.2458155990772365e-5),
        ),
    ];
    for (k1, k2, j, n, z1, z2, want) in cases {
        let got = q_coupled_realized(k1, k2, j, n, q, z1, z2).unwrap();
        assert!(
            (got - want).norm() <= 1e-12 * want.norm(),
            "j={j} n={n}: {got} vs {want}"
        );
    }
}

#[test]
fn coupled_realized_is_regular_at_zero_second_argument() {
    let got = q_coupled_realized(0.6, 0.9, 2, 3, 0.3, Scalar::new(0.2, 0.1), ONE * 0.0).unwrap();
    let want = Scalar::new(-3.253_642_568_828_615e-5, 3.510_509_087_420_348e-5);
    assert!((got - want).norm() <= 1e-12 * want.norm(), "{got}");
}

#[test]
fn expansion_example() {
    let (x1, x2) = (MuPoint::from_theta(PI / 3.0), MuPoint::from_theta(PI / 5.0));
    let z = Scalar::new(0.2, 0.0);
    let check = q_expansion_residual(0.6, 0.9, 0.3, 1.1, x1, x2, z, z, 25, 25).unwrap();
    assert_relative_eq!(check.uncoupled.re, 1.3556336131351386, max_relative = 1e-13);
    assert!(check.residual <= 1e-6, "{check:?}");

    let zero =
        q_expansion_residual(0.6, 0.9, 0.3, 1.1, x1, x2, ONE * 0.0, ONE * 0.0, 3, 3).unwrap();
    assert_eq!(zero.uncoupled, ONE);
    assert!(zero.residual < 1e-15);
}

#[test]
fn expansion_converges_in_jmax() {
    let (x1, x2) = (MuPoint::from_theta(0.7), MuPoint::from_theta(2.1));
    let (z1, z2) = (Scalar::new(0.25, 0.05), Scalar::new(0.2, -0.1));
    let residuals: Vec<f64> = [5, 10, 20]
        .iter()
        .map(|&j| {
            q_expansion_residual(0.6, 0.9, 0.3, 1.1, x1, x2, z1, z2, j, 30)
                .unwrap()
                .residual
        })
        .collect();
    assert!(residuals[1] < residuals[0]);
    assert!(residuals[2] <= residuals[1].max(1e-14));
}

proptest! {
    #[test]
    fn ysa_is_symmetric(k in 0.1f64..4.0, q in 0.05f64..0.95, s in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0]) {
        let r = label(k, q, s);
        prop_assert!(ysa_matrix(r, 25).is_ok());
    }

    #[test]
    fn q_eigvec_recurrence(k in 0.2f64..3.0, q in 0.1f64..0.9, s in 0.3f64..3.0, theta in 0.0f64..3.1) {
        let l = q_eigvec_coeffs(label(k, q, s), MuPoint::from_theta(theta), 30).unwrap();
        prop_assert!(l.recurrence_residual().unwrap() <= 1e-9);
    }
}
