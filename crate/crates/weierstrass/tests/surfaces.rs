use std::collections::BTreeMap;
use std::f64::consts::PI;

use crational::{contour_residue, gq_int, gq_rat, q, qr, CPoly, VRatFn, C64, GQ};
use num_traits::{One, Zero};
use weierstrass::*;

/// Exact equality of two vector rational functions by cross-multiplication.
fn same_function(a: &VRatFn, b: &VRatFn) -> bool {
    let (da, db) = (a.expanded_den(), b.expanded_den());
    a.nums.iter().zip(&b.nums).all(|(p, r)| p * &db == r * &da)
}

fn eps(n: usize, j: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
}

const CASES: [(usize, usize); 3] = [(0, 4), (1, 4), (2, 7)];

#[test]
fn generated_data_is_conformal_exactly() {
    for (k, m) in CASES {
        let w = generate(k, m, 1).unwrap();
        let r = verify_conformal(&w);
        assert!(
            r.pass && !r.degenerate && r.offending.is_empty(),
            "k={k} m={m}"
        );
        assert_eq!(w.ambient_dim, 6 * k + 3);
        assert!(w.vector(1).iter().all(Zero::is_zero));
    }
}

#[test]
fn generated_isotropy_order_is_strict() {
    for (k, m) in CASES {
        let w = generate(k, m, 1).unwrap();
        assert_eq!(isotropy_order(&w).unwrap(), IsotropyOrder::Finite(k));
        let prof = isotropy_profile(&w, k + 2).unwrap();
        assert_eq!(prof.len(), k + 2);
        assert!(prof[..=k].iter().all(|&z| z));
        assert!(!prof[k + 1], "⟨x_z^(k+2), x_z^(k+2)⟩ should not vanish");
    }
}

#[test]
fn residue_relations_hold_exactly() {
    for (k, m) in CASES {
        let w = generate(k, m, 3).unwrap();
        let n = w.n;
        for j in 2..n {
            let mult = gq_rat(qr((n - j + 1) as i64, (j - 1) as i64));
            let lhs = w.vector(n + j);
            let rhs: Vec<GQ> = w.vector(j).iter().map(|c| c * &mult).collect();
            assert_eq!(lhs, rhs, "j={j}");
        }
        let inv = gq_rat(qr(1, n as i64 - 1));
        let c0 = gq_rat(qr(n as i64 + 1, n as i64 - 1));
        let expect: Vec<GQ> = w
            .vector(n)
            .iter()
            .zip(w.vector(0))
            .map(|(a, b)| a * &inv + b * &c0)
            .collect();
        assert_eq!(w.vector(2 * n), expect);
        for key in [0, 2 * m + 2, 2 * n] {
            assert!(w.vector(key).iter().any(|c| !c.is_zero()));
        }
    }
}

#[test]
fn realized_lambda_table_is_scaled_target() {
    for (k, m) in CASES {
        let t = solve_tau(k, m, None, 5).unwrap();
        let w = assemble_vectors(&t, Some(5)).unwrap();
        let f = gq_rat(w.provenance.lambda_scale.clone().unwrap());
        let target = target_lambdas(&t);
        let real = w.lambda_table();
        let keys: std::collections::BTreeSet<_> =
            target.entries.keys().chain(real.entries.keys()).collect();
        for &(a, b) in keys {
            assert_eq!(real.get(a, b), &f * target.get(a, b), "λ_({a},{b})");
        }
    }
}

#[test]
fn bryant_m4_realization_is_twice_the_target() {
    let t = solve_tau(0, 4, Some(q(8)), 0).unwrap();
    let w = assemble_vectors(&t, None).unwrap();
    assert_eq!(w.provenance.lambda_scale, Some(q(2)));
    let lt = w.lambda_table();
    assert_eq!(lt.get(5, 5), gq_int(16, 0));
    assert_eq!(lt.get(0, 10), gq_int(-8, 0));
    assert_eq!(lt.get(9, 10), gq_int(-20, 0));
    assert_eq!(lt.get(10, 18), gq_rat(qr(-25, 2)));
}

#[test]
fn generated_ends_are_planar() {
    for (k, m) in CASES {
        let w = generate(k, m, 2).unwrap();
        let rep = verify_planar_ends(&w, 1e-10).unwrap();
        assert_eq!(rep.planar_count(), 2 * m + 2);
        assert!(rep.all_planar());
        assert!(rep.max_residue() < 1e-10);
        for e in &rep.ends {
            assert_eq!(e.pole_order, 2);
        }
    }
}

#[test]
fn residue_agrees_with_contour_quadrature() {
    let w = generate(1, 4, 0).unwrap();
    let f = w.x_z().to_float();
    let rep = end_report(&w, 1e-10).unwrap();
    let e1 = eps(w.n, 1);
    let entry = rep
        .ends
        .iter()
        .find(|e| (e.location - e1).norm() < 1e-12)
        .unwrap();
    for i in 0..w.ambient_dim {
        let rc = contour_residue(|z| f.eval(z)[i], e1, 0.05, 256);
        assert!(rc.norm() < 1e-9, "component {i}: {rc}");
    }
    assert!(entry.residue < 1e-10);
}

#[test]
fn simple_pole_is_not_planar() {
    // x_z = e₁/z realized as P = z (zⁿ − 1)² e₁
    let n = 3;
    let zn1 = zn_minus_one(n);
    let p = &CPoly::z() * &zn1.pow(2);
    let w = WeierstrassData {
        ambient_dim: 3,
        k: None,
        m: None,
        n,
        numerators: vec![p, CPoly::zero(), CPoly::zero()],
        provenance: Provenance::default(),
    };
    let rep = end_report(&w, 1e-10).unwrap();
    assert_eq!(rep.ends[0].class, EndClass::NonPlanarPole);
    assert_eq!(rep.ends[0].pole_order, 1);
    assert!((rep.ends[0].residue - 1.0).abs() < 1e-12);
    for e in &rep.ends[1..] {
        assert_eq!(e.class, EndClass::Regular);
    }
    assert!(matches!(
        integrate_primitive(&w),
        Err(WeierstrassError::NonzeroResidue(0))
    ));
}

#[test]
fn bryant_closed_form() {
    let w = bryant_peng_xiao(4);
    assert_eq!(w.n, 9);
    let mut r = vec![GQ::zero(); 10];
    r[0] = gq_int(4, 0);
    r[9] = gq_int(5, 0);
    let r = CPoly::from_coeffs(r);
    assert_eq!(w.numerators[2], &CPoly::monomial(gq_int(2, 0), 5) * &r);
    assert!(verify_conformal(&w).pass);
    assert_eq!(isotropy_order(&w).unwrap(), IsotropyOrder::Finite(0));
    let rep = verify_planar_ends(&w, 1e-10).unwrap();
    assert_eq!(rep.ends.len(), 10);
    assert!(rep.all_planar());
    assert!(rep.ends.iter().all(|e| e.residue < 1e-10));
}

#[test]
fn bryant_primitive_differentiates_back() {
    let w = bryant_peng_xiao(4);
    let f = integrate_primitive(&w).unwrap();
    assert!(same_function(&f.derivative(), &w.x_z()));
}

#[test]
fn r4_example_is_conformal_and_non_isotropic() {
    for m in 2..6 {
        let w = r4_example(m);
        assert_eq!(w.ambient_dim, 4);
        assert!(verify_conformal(&w).pass, "m={m}");
        assert_eq!(isotropy_order(&w).unwrap(), IsotropyOrder::Finite(0));
        let rep = verify_planar_ends(&w, 1e-10).unwrap();
        assert_eq!(rep.planar_count(), 2 * m + 1);
        assert!(same_function(&r4_primitive(m).derivative(), &w.x_z()));
    }
}

#[test]
fn r4_first_pair_factor_for_m2() {
    // e₁ + i e₂ half of the first numerator carries (3z⁴ − 1)/2
    let f = r4_primitive(2);
    let (e1, e2) = (&f.nums[0], &f.nums[1]);
    let plus = (e1 + &e2.scale(&gq_int(0, -1))).scale(&gq_rat(qr(1, 2)));
    let expected = CPoly::from_coeffs(vec![
        gq_rat(qr(-1, 2)),
        GQ::zero(),
        GQ::zero(),
        GQ::zero(),
        gq_rat(qr(3, 2)),
    ]);
    // F = A / (2 z (z⁴ − 1))
    assert_eq!(plus, expected);
}

#[test]
fn totally_isotropic_example_is_total() {
    let w = totally_isotropic_example();
    assert!(verify_conformal(&w).pass);
    assert_eq!(isotropy_order(&w).unwrap(), IsotropyOrder::Total);
    assert!(w.lambda_table().entries.is_empty());
    let rep = verify_planar_ends(&w, 1e-10).unwrap();
    assert_eq!(rep.planar_count(), 3);
    assert!(rep.all_planar());
    assert!(integrate_primitive(&w).is_ok());
}

#[test]
fn two_v0_plus_v2_leaves_a_residue() {
    let base = totally_isotropic_example();
    let mut v = BTreeMap::new();
    for j in [0, 2, 3] {
        v.insert(j, base.vector(j));
    }
    let v4: Vec<GQ> = base
        .vector(0)
        .iter()
        .zip(base.vector(2))
        .map(|(a, b)| a * gq_int(2, 0) + b)
        .collect();
    v.insert(4, v4);
    let w = WeierstrassData::from_vectors(2, 4, &v, Provenance::default());
    assert!(matches!(
        integrate_primitive(&w),
        Err(WeierstrassError::NonzeroResidue(_))
    ));
    let rep = end_report(&w, 1e-10).unwrap();
    assert!(rep.max_residue() > 1e-3);
}

#[test]
fn perturbed_coefficient_breaks_conformality() {
    let mut w = generate(1, 4, 0).unwrap();
    let j = 6;
    let mut c = w.numerators[3].coeffs().to_vec();
    c[j] = &c[j] + GQ::one();
    w.numerators[3] = CPoly::from_coeffs(c);
    let r = verify_conformal(&w);
    assert!(!r.pass);
    assert!(!r.offending.is_empty());
    // the perturbation pairs with every nonzero v_l·e₄ entry at exponent j + l
    let partners: Vec<usize> = (0..=w.max_degree())
        .filter(|&l| !w.numerators[3].coeff(l).is_zero() && l != j)
        .map(|l| j + l)
        .collect();
    assert!(r
        .offending
        .iter()
        .any(|e| partners.contains(e) || *e == 2 * j));
    assert!(matches!(
        isotropy_order(&w),
        Err(WeierstrassError::NotConformal(_))
    ));
}

#[test]
fn zero_datum_is_flagged_degenerate() {
    let w = WeierstrassData {
        ambient_dim: 3,
        k: None,
        m: None,
        n: 3,
        numerators: vec![CPoly::zero(); 3],
        provenance: Provenance::default(),
    };
    let r = verify_conformal(&w);
    assert!(r.pass && r.degenerate);
    assert_eq!(isotropy_order(&w), Err(WeierstrassError::Degenerate));
}

#[test]
fn elementary_primitives() {
    // x_z = 1/z² → F = −1/z + const
    let n = 3;
    let p = zn_minus_one(n).pow(2);
    let w = WeierstrassData {
        ambient_dim: 1,
        k: None,
        m: None,
        n,
        numerators: vec![p],
        provenance: Provenance::default(),
    };
    let f = integrate_primitive(&w).unwrap();
    assert!(same_function(&f.derivative(), &w.x_z()));
    let z1 = C64::new(0.3, 0.2);
    let z2 = C64::new(-0.4, 0.5);
    let g = |z: C64| f.eval_c64(z)[0] + 1.0 / z;
    assert!((g(z1) - g(z2)).norm() < 1e-12);
    // x_z = z → F = z²/2 + const
    let w2 = WeierstrassData {
        numerators: vec![&CPoly::monomial(GQ::one(), 3) * &zn_minus_one(n).pow(2)],
        ..w
    };
    let f2 = integrate_primitive(&w2).unwrap();
    assert!(same_function(&f2.derivative(), &w2.x_z()));
    let h = |z: C64| f2.eval_c64(z)[0] - z * z / 2.0;
    assert!((h(z1) - h(z2)).norm() < 1e-12);
}
