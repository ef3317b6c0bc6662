use powmean::means::{log_gap, relative_gap};
use powmean::{
    mean_eval, power_type_eval, rescaling_identity_residual, Jet, MeanKind, PowerTypeSpec,
};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = MeanKind> {
    (0usize..10).prop_map(|i| MeanKind::ALL[i])
}

fn positive(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|e| 10f64.powf(e))
}

fn order() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), -20.0..20.0f64]
}

fn jet(c0: std::ops::Range<f64>) -> impl Strategy<Value = Jet> {
    (c0, prop::collection::vec(-2.0..2.0f64, 6)).prop_map(|(c, mut rest)| {
        rest.insert(0, c);
        Jet::new(rest).unwrap()
    })
}

fn close_jets(a: &Jet, b: &Jet, tol: f64) -> bool {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + y.abs()))
}

proptest! {
    #[test]
    fn mean_property(k in kind(), p in order(), a in positive(1e-6, 1e6), b in positive(1e-6, 1e6)) {
        let v = power_type_eval(PowerTypeSpec::new(k, p).unwrap(), a, b).unwrap().value;
        prop_assert!(a.min(b) <= v && v <= a.max(b));
    }

    #[test]
    fn symmetry_and_reflexivity(k in kind(), p in order(), a in positive(1e-6, 1e6), b in positive(1e-6, 1e6)) {
        let spec = PowerTypeSpec::new(k, p).unwrap();
        let ab = power_type_eval(spec, a, b).unwrap().value;
        let ba = power_type_eval(spec, b, a).unwrap().value;
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(power_type_eval(spec, a, a).unwrap().value, a);
    }

    #[test]
    fn homogeneity(k in kind(), a in positive(1e-3, 1e3), b in positive(1e-3, 1e3), t in positive(1e-3, 1e3)) {
        let m = mean_eval(k, a, b).unwrap().value;
        let mt = mean_eval(k, t * a, t * b).unwrap().value;
        prop_assert!(((mt - t * m) / (t * m)).abs() <= 1e-12, "{} vs {}", mt, t * m);
    }

    #[test]
    fn unit_order_is_the_base_mean(k in kind(), a in positive(1e-3, 1e3), b in positive(1e-3, 1e3)) {
        let base = mean_eval(k, a, b).unwrap().value;
        let p1 = power_type_eval(PowerTypeSpec::of(k, 1.0), a, b).unwrap().value;
        prop_assert!(((base - p1) / base).abs() <= 1e-14);
    }

    #[test]
    fn continuity_at_order_zero(k in kind(), a in positive(1e-2, 1e2), r in 0.85..1.18f64, s in prop::bool::ANY) {
        // M_p / G - 1 is about p kappa w^2, so the 1e-5 band needs a / b near 1
        let p = if s { 1e-3 } else { -1e-3 };
        let b = a * r;
        let g = (a * b).sqrt();
        let v = power_type_eval(PowerTypeSpec::of(k, p), a, b).unwrap().value;
        prop_assert!(((v - g) / g).abs() <= 1e-5);
    }

    #[test]
    fn order_zero_limit_is_linear_in_p(k in kind(), a in positive(1e-2, 1e2), b in positive(1e-2, 1e2)) {
        let g = (a * b).sqrt();
        let dev = |p: f64| (power_type_eval(PowerTypeSpec::of(k, p), a, b).unwrap().value / g).ln().abs();
        let w = 0.5 * (a / b).ln().abs();
        prop_assert!(dev(1e-3) <= 1e-3 * w * w * 1.01 + 1e-15);
        prop_assert!(dev(1e-6) <= dev(1e-3) * 1.01e-3 + 1e-15);
    }

    #[test]
    fn rescaling_identity(k in kind(), p in -5.0..5.0f64, t in 0.2..3.0f64, neg in prop::bool::ANY,
                          a in positive(0.1, 10.0), b in positive(0.1, 10.0)) {
        let t = if neg { -t } else { t };
        let r = rescaling_identity_residual(PowerTypeSpec::of(k, p), t, a, b).unwrap();
        prop_assert!(r <= 1e-10, "{}", r);
    }

    #[test]
    fn gaps_are_antisymmetric(k1 in kind(), k2 in kind(), p in -5.0..5.0f64, a in positive(0.1, 10.0), b in positive(0.1, 10.0)) {
        let (l, r) = (PowerTypeSpec::of(k1, p), PowerTypeSpec::base(k2));
        prop_assert_eq!(log_gap(l, r, a, b).unwrap(), -log_gap(r, l, a, b).unwrap());
        let direct = power_type_eval(r, a, b).unwrap().value / power_type_eval(l, a, b).unwrap().value - 1.0;
        prop_assert!((relative_gap(l, r, a, b).unwrap() - direct).abs() <= 1e-13);
    }

    #[test]
    fn jet_product_quotient_round_trip(f in jet(-2.0..2.0), g in jet(0.5..3.0)) {
        let back = f.mul(&g).unwrap().div(&g).unwrap();
        prop_assert!(close_jets(&back, &f, 1e-10));
    }

    #[test]
    fn jet_exp_ln_round_trip(f in jet(0.5..3.0)) {
        let back = f.ln().unwrap().exp();
        prop_assert!(close_jets(&back, &f, 1e-10));
        let root = f.sqrt().unwrap();
        prop_assert!(close_jets(&root.square(), &f, 1e-10));
    }

    #[test]
    fn jet_products_commute_and_distribute(f in jet(-2.0..2.0), g in jet(-2.0..2.0), h in jet(-2.0..2.0)) {
        prop_assert!(close_jets(&f.mul(&g).unwrap(), &g.mul(&f).unwrap(), 1e-14));
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert!(close_jets(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn jet_inverse_functions(f in jet(-0.5..0.5)) {
        prop_assert!(close_jets(&f.sinh().asinh(), &f, 1e-10));
        prop_assert!(close_jets(&f.tanh().atan().tan_check(), &f.tanh(), 1e-10));
        prop_assert!(close_jets(&f.integral(0.25).derivative(), &f, 1e-15));
    }

    #[test]
    fn composition_matches_pointwise(f in jet(-0.5..0.5), h in 1e-4..1e-3f64) {
        // truncation error of an order-6 jet at h is O(h^7)
        let x = f.eval(h);
        let cases: [(Jet, f64); 6] = [
            (f.exp(), x.exp()),
            (f.atan(), x.atan()),
            (f.asinh(), x.asinh()),
            (f.asin().unwrap(), x.asin()),
            (f.add_scalar(2.0).ln().unwrap(), (x + 2.0).ln()),
            (f.add_scalar(2.0).powf(-1.5).unwrap(), (x + 2.0).powf(-1.5)),
        ];
        for (j, want) in cases {
            prop_assert!((j.eval(h) - want).abs() <= 1e-13 * (1.0 + want.abs()));
        }
    }
}

trait TanCheck {
    fn tan_check(&self) -> Jet;
}

impl TanCheck for Jet {
    /// `tan` of a jet from the sine and cosine series of its constant-free part.
    fn tan_check(&self) -> Jet {
        let n = self.order();
        let c0 = self.coeff(0);
        let d = self.add_scalar(-c0);
        let (mut s, mut c) = (Jet::constant(0.0, n), Jet::constant(1.0, n));
        let mut term = Jet::constant(1.0, n);
        for k in 1..=n {
            term = term.mul(&d).unwrap().scale(1.0 / k as f64);
            match k % 4 {
                1 => s = s.add(&term).unwrap(),
                2 => c = c.sub(&term).unwrap(),
                3 => s = s.sub(&term).unwrap(),
                _ => c = c.add(&term).unwrap(),
            }
        }
        let sin = s.scale(c0.cos()).add(&c.scale(c0.sin())).unwrap();
        let cos = c.scale(c0.cos()).sub(&s.scale(c0.sin())).unwrap();
        sin.div(&cos).unwrap()
    }
}
