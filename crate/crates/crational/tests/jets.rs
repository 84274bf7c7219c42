use crational::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rational_curve() -> VRatFn {
    // (z² + i, 1/(z − 2), z³)/(z + 3)
    let zp3 = CPoly::from_int_pairs(&[(3, 0), (1, 0)]);
    VRatFn::new(
        vec![
            CPoly::from_int_pairs(&[(0, 1), (0, 0), (1, 0)]),
            CPoly::from_int_pairs(&[(1, 0)]),
            CPoly::from_int_pairs(&[(0, 0), (0, 0), (0, 0), (1, 0)]),
        ],
        vec![(zp3, 1)],
    )
}

/// Real map x = F + conj F as jets at z0.
fn x_jets(f: &FloatRat, z0: C64, order: usize) -> Vec<Jet> {
    f.taylor(z0, order)
        .unwrap()
        .iter()
        .map(|s| {
            let j = Jet::from_holomorphic(s);
            &j + &j.conj()
        })
        .collect()
}

fn x_value(f: &FloatRat, z: C64) -> Vec<f64> {
    f.eval(z).iter().map(|v| 2.0 * v.re).collect()
}

#[test]
fn reciprocal_product_is_one() {
    let f = rational_curve().to_float();
    let s = f.taylor(c(0.4, 0.1), 6).unwrap();
    let j = Jet::from_holomorphic(&s[0]) + Jet::var_zb(c(0.4, 0.1), 6);
    let one = &j * &j.recip().unwrap();
    assert!((one.value() - 1.0).norm() < 1e-14);
    for a in 0..=6 {
        for b in 0..=6 - a {
            if a + b > 0 {
                assert!(one.coeff(a, b).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn log_inverts_exp() {
    let j = Jet::from_fn(5, |a, b| c(0.3 / (1 + a) as f64, -0.2 * b as f64));
    let back = j.exp().log().unwrap();
    assert!((&back - &j).max_abs() < 1e-12);
}

#[test]
fn zero_constant_term_errors() {
    let j = Jet::var_z(c(0.0, 0.0), 3);
    assert_eq!(j.recip(), Err(CrationalError::DivisionByZeroJet));
    assert_eq!(j.log(), Err(CrationalError::NonpositiveBranch));
    assert_eq!(j.sqrt(), Err(CrationalError::NonpositiveBranch));
}

#[test]
fn holomorphic_seed_has_no_antiholomorphic_slots() {
    let f = rational_curve().to_float();
    for s in f.taylor(c(-0.5, 0.8), 5).unwrap() {
        let j = Jet::from_holomorphic(&s);
        for a in 0..=5 {
            for b in 1..=5 - a {
                assert_eq!(j.coeff(a, b), c(0.0, 0.0));
            }
        }
    }
}

#[test]
fn mixed_coefficient_of_squared_norm_matches_finite_differences() {
    let f = rational_curve().to_float();
    let z0 = c(0.4, 0.1);
    let x = x_jets(&f, z0, 4);
    let sq = x.iter().fold(Jet::zero(4), |acc, xi| &acc + &(xi * xi));
    let norm2 = |z: C64| x_value(&f, z).iter().map(|v| v * v).sum::<f64>();
    // ∂_z∂_z̄ = Δ/4
    let h = 1e-3;
    let lap = (norm2(z0 + h) + norm2(z0 - h) + norm2(z0 + c(0.0, h)) + norm2(z0 - c(0.0, h))
        - 4.0 * norm2(z0))
        / (h * h);
    let exact = sq.coeff(1, 1);
    assert!((exact - lap / 4.0).norm() <= 1e-5 * exact.norm());
    assert!((sq.value().re - norm2(z0)).abs() < 1e-12);
}

#[test]
fn product_rule_matches_finite_differences() {
    let f = rational_curve().to_float();
    let z0 = c(0.2, -0.3);
    let x = x_jets(&f, z0, 3);
    let prod = &x[0] * &x[1];
    let g = |z: C64| {
        let v = x_value(&f, z);
        v[0] * v[1]
    };
    let h = 1e-5;
    let dx = (g(z0 + h) - g(z0 - h)) / (2.0 * h);
    let dy = (g(z0 + c(0.0, h)) - g(z0 - c(0.0, h))) / (2.0 * h);
    let dz = c(dx, -dy) * 0.5;
    assert!((prod.derivative(1, 0) - dz).norm() <= 1e-7 * dz.norm().max(1.0));
    assert!((prod.derivative(0, 1) - dz.conj()).norm() <= 1e-7 * dz.norm().max(1.0));
}

#[test]
fn x_is_real_and_its_jet_splits() {
    let f = rational_curve().to_float();
    let x = x_jets(&f, c(0.1, 0.6), 4);
    for xi in &x {
        assert!((&xi.conj() - xi).max_abs() < 1e-15);
    }
}

fn arb_jet(order: usize) -> impl Strategy<Value = Jet> {
    let n = (order + 1) * (order + 1);
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_map(move |v| {
        Jet::from_fn(order, |a, b| {
            let (re, im) = v[a * (order + 1) + b];
            if a + b == 0 {
                c(1.5 + re, im)
            } else {
                c(re, im)
            }
        })
    })
}

proptest! {
    #[test]
    fn conj_is_an_involution_and_multiplicative(f in arb_jet(4), g in arb_jet(4)) {
        prop_assert!((&f.conj().conj() - &f).max_abs() == 0.0);
        let lhs = (&f * &g).conj();
        let rhs = &f.conj() * &g.conj();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn wirtinger_leibniz(f in arb_jet(4), g in arb_jet(4)) {
        let lhs = (&f * &g).dz();
        let rhs = &f.dz() * &g + &f * &g.dz();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
        let lhs = (&f * &g).dzb();
        let rhs = &f.dzb() * &g + &f * &g.dzb();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn sqrt_squares_back(f in arb_jet(5)) {
        let r = f.sqrt().unwrap();
        prop_assert!((&(&r * &r) - &f).max_abs() < 1e-11);
    }

    #[test]
    fn division_inverts_multiplication(f in arb_jet(4), g in arb_jet(4)) {
        let q = (&f * &g).div(&g).unwrap();
        prop_assert!((&q - &f).max_abs() < 1e-11);
    }
}
