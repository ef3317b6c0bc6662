use num_rational::Ratio;
use powmean::series::power_type_series;
use powmean::{mean_series, MeanKind, PowerTypeSpec};

type Q = Ratio<i128>;

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn to_f64(r: &Q) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Coefficients of `1 / s(t)` by long division, `s[0] != 0`.
fn reciprocal(s: &[Q]) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::with_capacity(s.len());
    for k in 0..s.len() {
        let mut acc = if k == 0 { q(1, 1) } else { q(0, 1) };
        for j in 1..=k {
            acc -= s[j] * out[k - j];
        }
        out.push(acc / s[0]);
    }
    out
}

#[test]
fn logarithmic_mean_series_by_long_division() {
    // ln(1 + t) / t = sum (-1)^k t^k / (k + 1)
    let n = 8;
    let s: Vec<Q> = (0..=n as i128)
        .map(|k| q(if k % 2 == 0 { 1 } else { -1 }, k + 1))
        .collect();
    let exact = reciprocal(&s);
    let expected = [
        q(1, 1),
        q(1, 2),
        q(-1, 12),
        q(1, 24),
        q(-19, 720),
        q(3, 160),
        q(-863, 60480),
    ];
    assert_eq!(&exact[..7], &expected);
    let got = mean_series(MeanKind::L, n).unwrap();
    for (k, c) in exact.iter().enumerate() {
        let tol = if k < 3 { 1e-14 } else { 1e-12 };
        assert!(
            (got.coeff(k) - to_f64(c)).abs() < tol,
            "c{k}: {} vs {c}",
            got.coeff(k)
        );
    }
}

/// Binomial series of `(1 + t)^(1/2)`.
fn sqrt_series(n: usize) -> Vec<Q> {
    let mut out = vec![q(1, 1)];
    for k in 1..=n as i128 {
        let prev = out[k as usize - 1];
        out.push(prev * q(1, 2) - prev * q(k - 1, 1));
        let last = out.last_mut().unwrap();
        *last /= q(k, 1);
    }
    out
}

#[test]
fn geometric_and_heronian_series() {
    let n = 6;
    let g = sqrt_series(n);
    assert_eq!(&g[..4], &[q(1, 1), q(1, 2), q(-1, 8), q(1, 16)]);
    let got = mean_series(MeanKind::G, n).unwrap();
    for (k, c) in g.iter().enumerate() {
        assert!((got.coeff(k) - to_f64(c)).abs() < 1e-15, "G c{k}");
    }
    // He(1 + t, 1) = (2 + t + sqrt(1 + t)) / 3
    let got = mean_series(MeanKind::He, n).unwrap();
    for (k, c) in g.iter().enumerate() {
        let lin = match k {
            0 => q(2, 1),
            1 => q(1, 1),
            _ => q(0, 1),
        };
        let want = (lin + c) / q(3, 1);
        assert!((got.coeff(k) - to_f64(&want)).abs() < 1e-15, "He c{k}");
    }
}

#[test]
fn second_coefficients_of_every_mean() {
    let table = [
        (MeanKind::A, q(0, 1)),
        (MeanKind::G, q(-1, 8)),
        (MeanKind::He, q(-1, 24)),
        (MeanKind::L, q(-1, 12)),
        (MeanKind::I, q(-1, 24)),
        (MeanKind::P, q(-1, 24)),
        (MeanKind::T, q(1, 12)),
        (MeanKind::N, q(1, 24)),
        (MeanKind::Z, q(1, 8)),
        (MeanKind::Y, q(1, 24)),
    ];
    for (kind, c2) in table {
        let s = mean_series(kind, 2).unwrap();
        assert!(
            (s.coeff(2) - to_f64(&c2)).abs() < 1e-15,
            "{kind}: {}",
            s.coeff(2)
        );
    }
}

#[test]
fn power_type_second_coefficient_rule() {
    // M(1 + s, 1) = 1 + s/2 + c s^2 with s = (1 + t)^p - 1 gives c2(M_p) = p c + (p - 1) / 8
    for kind in MeanKind::ALL {
        let c = mean_series(kind, 2).unwrap().coeff(2);
        for p in [-3.0, -0.5, 0.25, 2.0, 5.0] {
            let s = power_type_series(PowerTypeSpec::of(kind, p), 2).unwrap();
            assert!((s.coeff(1) - 0.5).abs() < 1e-15);
            let want = p * c + (p - 1.0) / 8.0;
            assert!(
                (s.coeff(2) - want).abs() < 1e-14,
                "{kind}_{p}: {} vs {want}",
                s.coeff(2)
            );
        }
    }
}
