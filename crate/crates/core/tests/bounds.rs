use std::f64::consts::PI;

use proptest::collection::vec;
use proptest::prelude::*;
use sinebound::bounds::{
    eval_bound, gamma_lemma_sides, gamma_theorem_sides, lhs_family, lhs_general, rhs_general,
    BoundForm, BoundParams, Family, ParamVector, WeightedAngles,
};

/// Direct evaluation, no log-space, no symmetric reduction.
fn naive_bound(sigma: f64, lam: f64) -> f64 {
    (PI * sigma / lam).sin().powf(lam)
}

fn naive_sin(x: f64) -> f64 {
    (PI * x).sin()
}

fn eval(form: BoundForm, values: &[f64]) -> f64 {
    form.eval(values).unwrap().value()
}

fn assert_close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want}");
}

#[test]
fn lhs_general_examples() {
    let wa = WeightedAngles::new(vec![0.25, 0.75], vec![0.5, 0.5]).unwrap();
    assert_close(lhs_general(&wa).0, (PI / 4.0).sin().ln(), 1e-15);
    assert_close(lhs_general(&wa).0, -0.346_573_590_279_972_6, 1e-12);

    let wa = WeightedAngles::with_positive_weights(vec![0.5], vec![1.0]).unwrap();
    assert_eq!(lhs_general(&wa).0, 0.0);

    let wa = WeightedAngles::new(vec![0.2, 0.3], vec![0.3, 0.2]).unwrap();
    let oracle = 0.3 * naive_sin(0.2).ln() + 0.2 * naive_sin(0.3).ln();
    assert_close(lhs_general(&wa).0, oracle, 1e-15);
    assert_close(lhs_general(&wa).0, -0.201_805_155_594_434_95, 1e-12);
}

#[test]
fn rhs_general_examples() {
    let wa = WeightedAngles::new(vec![0.25, 0.75], vec![0.5, 0.5]).unwrap();
    let b = rhs_general(&wa).unwrap();
    assert_close(b.arg, 0.5, 0.0);
    assert_close(b.value(), 1.0, 0.0);

    let wa = WeightedAngles::new(vec![0.2, 0.3], vec![0.3, 0.2]).unwrap();
    let b = rhs_general(&wa).unwrap();
    assert_close(b.sigma, 0.12, 1e-16);
    assert_close(b.lam, 0.5, 0.0);
    assert_close(b.value(), naive_bound(0.12, 0.5), 1e-14);
    assert_close(b.value(), 0.827_373_619_309_129_7, 1e-12);
    // same numbers as Tn on (0.2, 0.3)
    assert_close(b.value(), eval(BoundForm::Tn, &[0.2, 0.3]), 1e-14);

    let x = 0.37;
    let wa = WeightedAngles::with_positive_weights(vec![x], vec![1.0]).unwrap();
    assert_close(rhs_general(&wa).unwrap().value(), naive_sin(x), 1e-15);
}

#[test]
fn gamma_lemma_examples() {
    let wa = WeightedAngles::from_exponents(vec![0.3, 0.3], &[2.0, 2.0]).unwrap();
    let (l, r) = gamma_lemma_sides(&wa).unwrap();
    assert_close(l, r, 1e-15);

    let wa = WeightedAngles::from_exponents(vec![0.25, 0.75], &[2.0, 2.0]).unwrap();
    let (l, r) = gamma_lemma_sides(&wa).unwrap();
    assert_close(l, 0.572_364_942_924_700_1, 1e-14);
    // reflection: Gamma(1/4) Gamma(3/4) = pi sqrt 2
    assert_close(r, 0.5 * (PI * 2f64.sqrt()).ln(), 1e-14);
    assert!(l <= r);

    let wa = WeightedAngles::from_exponents(vec![0.9; 3], &[3.0; 3]).unwrap();
    let (l, r) = gamma_lemma_sides(&wa).unwrap();
    assert_close(l, r, 1e-14);
}

#[test]
fn gamma_theorem_examples() {
    let wa = WeightedAngles::from_exponents(vec![0.25, 0.75], &[2.0, 2.0]).unwrap();
    let (l, r) = gamma_theorem_sides(&wa).unwrap();
    assert_close(l, PI.ln(), 1e-14);
    assert_close(r, (PI * 2f64.sqrt()).ln(), 1e-14);

    let wa = WeightedAngles::from_exponents(vec![0.5, 0.5], &[2.0, 2.0]).unwrap();
    let (l, r) = gamma_theorem_sides(&wa).unwrap();
    assert_close(l, PI.ln(), 1e-14);
    assert_close(r, PI.ln(), 1e-14);

    let wa = WeightedAngles::from_exponents(vec![0.2, 0.3], &[4.0, 4.0 / 3.0]).unwrap();
    let (l, r) = gamma_theorem_sides(&wa).unwrap();
    assert_close(l, 1.418_632_708_903_441_5, 1e-12);
    assert_close(r, 1.436_529_806_219_962, 1e-12);
    assert!(l <= r + 1e-10);
}

#[test]
fn eval_bound_examples() {
    use BoundForm::*;
    let s = Sn.eval(&[0.2, 0.3]).unwrap();
    assert_close(s.sigma, 0.3, 1e-16);
    assert_close(s.lam, 0.5, 1e-16);
    assert_close(s.value(), naive_bound(0.3, 0.5), 1e-14);
    assert_close(s.value(), 0.975_221_265_300_933_4, 1e-12);

    let t = Tn.eval(&[0.2, 0.3]).unwrap();
    assert_close(t.sigma, 0.12, 1e-16);
    assert_close(t.value(), 0.827_373_619_309_129_7, 1e-12);

    let p = P2n.eval(&[0.2, 0.3]).unwrap();
    assert_close(p.lam, 0.9, 1e-15);
    assert_close(p.sigma, 0.2, 0.0);
    assert_close(p.value(), naive_bound(0.2, 0.9), 1e-14);
    assert_close(p.value(), 0.671_832_094_700_914_4, 1e-12);

    let q = Q2n.eval(&[0.2, 0.3]).unwrap();
    assert_close(q.arg, 0.311_111_111_111_111_1, 1e-15);
    assert_close(q.value(), 0.844_727_809_951_686_8, 1e-12);

    assert_close(eval(A2, &[0.25, 0.25]), (PI / 4.0).sin(), 1e-15);
    assert_close(eval(B2, &[0.25, 0.25]), (3.0 * PI / 8.0).sin(), 1e-15);

    let s3 = S3.eval(&[0.2, 0.3, 0.4]).unwrap();
    assert_close(s3.arg, 2.0 / 3.0, 1e-15);
    assert_close(s3.value(), 0.878_572_425_428_644_1, 1e-12);
    let t3 = T3.eval(&[0.2, 0.3, 0.4]).unwrap();
    assert_close(t3.value(), naive_bound(0.26, 0.9), 1e-14);
    assert_close(t3.value(), 0.807_010_024_983_199_2, 1e-12);

    assert_close(eval(Diag, &[0.25]), (3.0 * PI / 8.0).sin(), 1e-15);
    assert_close(eval(KFamA, &[2.0, 0.1]), 3.0 * 3f64.sqrt() / 8.0, 1e-14);
    assert_close(eval(KFamA, &[2.0, 0.1]), 0.649_519_052_838_329, 1e-12);

    // C37 with n = 2 by hand: sigma = l2(1-l1) + l2(l1 + 1 - l2), lam = l1 + 2 l2
    let c = C37a.eval(&[0.2, 0.3]).unwrap();
    assert_close(c.sigma, 0.3 * 0.8 + 0.3 * 0.9, 1e-15);
    assert_close(c.lam, 0.8, 1e-15);
    let c = C37b.eval(&[0.2, 0.3]).unwrap();
    assert_close(c.sigma, 0.3 * 0.2 + 0.3 * 0.5, 1e-15);
}

#[test]
fn eval_bound_param_dispatch() {
    let p = BoundParams::from_slice(BoundForm::CorMain, &[0.2, 0.3, 0.3, 0.2]).unwrap();
    let b = eval_bound(BoundForm::CorMain, &p).unwrap();
    assert_close(b.value(), 0.827_373_619_309_129_7, 1e-12);
    let k = BoundParams::from_slice(BoundForm::KFamB, &[2.0, 0.2]).unwrap();
    let b = eval_bound(BoundForm::KFamB, &k).unwrap();
    assert_close(b.value(), (2.0 * PI * 2.0 * 0.2 / 3.0).sin().powi(3), 1e-14);
    // mismatched parameter kinds
    assert!(eval_bound(BoundForm::S3, &p).is_err());
    assert!(eval_bound(BoundForm::CorMain, &k).is_err());
}

#[test]
fn lhs_family_examples() {
    let p = ParamVector::new(vec![0.2, 0.3]).unwrap();
    let c = lhs_family(Family::Cyclic, &p).unwrap();
    assert_close(
        c.0,
        0.3 * naive_sin(0.2).ln() + 0.2 * naive_sin(0.3).ln(),
        1e-15,
    );
    assert_close(c.value(), 0.817_254_149_829_005, 1e-12);
    let d = lhs_family(Family::Paired, &p).unwrap();
    assert_close(
        d.value(),
        naive_sin(0.2).powf(0.7) * naive_sin(0.3).powf(0.2),
        1e-14,
    );
    assert_close(d.value(), 0.660_761_314_720_946_7, 1e-12);
    let h = ParamVector::new(vec![0.5, 0.5]).unwrap();
    assert_eq!(lhs_family(Family::Cyclic, &h).unwrap().0, 0.0);
    let e = lhs_family(Family::Doubled, &p).unwrap();
    assert_close(
        e.value(),
        naive_sin(0.2).powf(0.3) * naive_sin(0.3).powf(0.5),
        1e-14,
    );
}

fn unit() -> impl Strategy<Value = f64> {
    1e-6f64..(1.0 - 1e-6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn argument_fraction_in_unit_interval(l in vec(unit(), 3)) {
        use BoundForm::*;
        for form in [A2, B2, SYx, TYx, SZy, TZy, SZx, TZx, Diag, OneDA, OneDB, OneDC, S3, T3, Sn, Tn, C37a, C37b] {
            let n = match form.arity() {
                sinebound::bounds::Arity::Exact(n) => n,
                _ => 3,
            };
            let b = form.eval(&l[..n]).unwrap();
            prop_assert!(b.arg > 0.0 && b.arg < 1.0);
            prop_assert!(b.log_value <= 0.0);
        }
        for form in [P2n, Q2n] {
            let b = form.eval(&l[..2]).unwrap();
            prop_assert!(b.arg > 0.0 && b.arg < 1.0);
        }
    }

    #[test]
    fn general_bound_holds(n in 1usize..7, seed in vec((unit(), 1e-6f64..0.999_999), 6)) {
        let (a, w): (Vec<f64>, Vec<f64>) = seed.into_iter().take(n).unzip();
        let wa = WeightedAngles::new(a, w).unwrap();
        prop_assert!(lhs_general(&wa).0 <= rhs_general(&wa).unwrap().log_value + 1e-10);
        let (l, r) = gamma_lemma_sides(&wa).unwrap();
        prop_assert!(l <= r + 1e-10);
        let (l, r) = gamma_theorem_sides(&wa).unwrap();
        prop_assert!(l <= r + 1e-10);
    }

    #[test]
    fn family_bounds_hold(l in vec(unit(), 2..7)) {
        for fam in [Family::Cyclic, Family::Doubled] {
            let lhs = lhs_family(fam, &ParamVector::new(l.clone()).unwrap()).unwrap().0;
            for form in fam.bounds() {
                prop_assert!(lhs <= form.eval(&l).unwrap().log_value + 1e-10);
            }
        }
        let even = &l[..l.len() / 2 * 2];
        let lhs = lhs_family(Family::Paired, &ParamVector::new(even.to_vec()).unwrap()).unwrap().0;
        for form in Family::Paired.bounds() {
            prop_assert!(lhs <= form.eval(even).unwrap().log_value + 1e-10);
        }
    }

    #[test]
    fn substitution_coherence(x in unit(), y in unit()) {
        use BoundForm::*;
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        // y = x, z = y, z = x in the three-angle forms
        let pairs = [
            (SYx, S3, [x, x, y]),
            (TYx, T3, [x, x, y]),
            (SZy, S3, [x, y, y]),
            (TZy, T3, [x, y, y]),
            (SZx, S3, [x, y, x]),
            (TZx, T3, [x, y, x]),
        ];
        for (two, three, args) in pairs {
            let d = rel(eval(two, &[x, y]), eval(three, &args));
            prop_assert!(d <= 1e-15, "{two} vs {three}: {d:e}");
        }
    }

    #[test]
    fn two_variable_closed_forms(x in unit(), y in unit()) {
        use BoundForm::*;
        // (form, sigma, lam) written out in the reduced variables
        let cases = [
            (SYx, x * (1.0 - x) + y, 2.0 * x + y),
            (TYx, x * (x + 2.0 * y), 2.0 * x + y),
            (SZy, y * (2.0 - y), x + 2.0 * y),
            (TZy, y * (2.0 * x + y), x + 2.0 * y),
            (SZx, x * (1.0 + x) + y * (1.0 - 2.0 * x), 2.0 * x + y),
            (TZx, x * (x + 2.0 * y), 2.0 * x + y),
        ];
        for (form, sigma, lam) in cases {
            let b = form.eval(&[x, y]).unwrap();
            prop_assert!((b.sigma - sigma).abs() <= 8.0 * f64::EPSILON * lam, "{form} sigma");
            prop_assert!((b.lam - lam).abs() <= 2.0 * f64::EPSILON * lam, "{form} lam");
        }
    }

    #[test]
    fn kfamily_is_rescaled_two_angle_bound(k in 1u32..8, u in 0.01f64..0.99) {
        let y = u / k as f64;
        let x = 1.0 - k as f64 * y;
        let a = BoundForm::A2.eval(&[x, y]).unwrap().log_value / y;
        let b = BoundForm::B2.eval(&[x, y]).unwrap().log_value / y;
        let ka = BoundForm::KFamA.eval(&[k as f64, y]).unwrap().log_value;
        let kb = BoundForm::KFamB.eval(&[k as f64, y]).unwrap().log_value;
        prop_assert!((a.exp() - ka.exp()).abs() <= 1e-12 * ka.exp());
        prop_assert!((b.exp() - kb.exp()).abs() <= 1e-12 * kb.exp());
    }

    #[test]
    fn log_value_matches_naive(l in vec(unit(), 3)) {
        let b = BoundForm::S3.eval(&l).unwrap();
        let naive = naive_bound(b.sigma, b.lam);
        // the naive form rounds pi * arg before the sine, which costs
        // about lam * eps / (1 - arg) relative near arg = 1
        let cond = b.lam / b.arg.min(1.0 - b.arg);
        let tol = 1e-13 + 4.0 * f64::EPSILON * cond;
        prop_assert!((b.value() - naive).abs() <= tol * naive, "tol {tol:e}");
    }
}
