use crational::{Jet, C64};
use moebius::jets;
use moebius::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn generated() -> MinimalSurface {
    MinimalSurface::from_weierstrass(&weierstrass::generate(1, 4, 1).unwrap()).unwrap()
}

fn bryant() -> Inverted<MinimalSurface> {
    Inverted::new(MinimalSurface::from_weierstrass(&weierstrass::bryant_peng_xiao(4)).unwrap())
}

fn constant_x(values: &[f64]) -> Vec<Jet> {
    values
        .iter()
        .map(|&v| Jet::constant(c(v, 0.0), 3))
        .collect()
}

#[test]
fn light_cone_lift_of_origin_and_unit_sphere() {
    let y = jets::value(&light_cone_lift(&constant_x(&[0.0, 0.0, 0.0])));
    assert_eq!(
        y,
        vec![
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0)
        ]
    );
    let y = jets::value(&light_cone_lift(&constant_x(&[0.6, 0.0, 0.8])));
    assert!(y[1].norm() < 1e-15);
    assert!(y[0].re > 0.0);
}

proptest! {
    #[test]
    fn light_cone_lift_is_null_as_a_jet(
        a in proptest::collection::vec(-3i32..=3, 12),
        z0 in (-0.5f64..0.5, -0.5f64..0.5),
    ) {
        // x_i = a_i0 + a_i1 z + a_i2 z z̄ + conj, rational coefficients
        let z = Jet::var_z(c(z0.0, z0.1), 4);
        let zb = z.conj();
        let x: Vec<Jet> = a
            .chunks(4)
            .map(|q| {
                let h = &(&z.scale(c(q[1] as f64 / 2.0, q[2] as f64 / 3.0)) + &(&z * &zb).scale_re(q[3] as f64 / 5.0))
                    .add_const(c(q[0] as f64 / 7.0, 0.0));
                h.re()
            })
            .collect();
        let y = light_cone_lift(&x);
        prop_assert!(jets::pair(&y, &y).max_abs() < 1e-12);
        prop_assert!(y[0].value().re > 0.0);
    }
}

#[test]
fn canonical_lift_of_the_plane() {
    let plane = ClosedForm::plane();
    let p = ChartPoint::z(c(0.3, -0.2));
    let yt = light_cone_lift_bounded(&plane.x_jets(p, 4).unwrap()).unwrap();
    let lift = canonical_lift(&yt, p.at).unwrap();
    let h = jets::pair(&jets::dz(&lift.y), &jets::dzb(&lift.y));
    assert!((h.value() - 0.5).norm() < 1e-14);
    assert!(jets::pair(&lift.y, &lift.y).max_abs() < 1e-14);
}

#[test]
fn canonical_lift_normalisation_on_generated_surface() {
    let s = generated();
    let p = ChartPoint::z(c(0.4, 0.1));
    let yt = light_cone_lift_bounded(&s.x_jets(p, 6).unwrap()).unwrap();
    let lift = canonical_lift(&yt, p.at).unwrap();
    let h = jets::pair(&jets::dz(&lift.y), &jets::dzb(&lift.y)).add_const(c(-0.5, 0.0));
    assert!(h.value().norm() < 1e-12);
    // identically, not only at the basepoint
    assert!(h.max_abs() < 1e-10);
    assert_eq!(lift.order(), 5);
}

#[test]
fn degenerate_metric_is_a_branch_point() {
    let folded = ClosedForm::new("z^2", 3, Vec::new(), |z| {
        let (u, v) = ((z * z).re(), (z * z).im());
        Ok(vec![u, v, Jet::zero(z.order())])
    });
    let err = MoebiusFrame::at_point(&folded, ChartPoint::z(c(0.0, 0.0)), 4).unwrap_err();
    assert!(matches!(err, MoebiusError::BranchPoint { .. }), "{err:?}");
    assert!(MoebiusFrame::at_point(&folded, ChartPoint::z(c(0.5, 0.0)), 4).is_ok());
}

#[test]
fn ends_are_immersed_points_of_the_lift() {
    // approaching the end at 1 from the z chart, the frame stays valid
    let s = generated();
    for d in [1e-1, 1e-2, 1e-3] {
        let f = MoebiusFrame::at_point(&s, ChartPoint::z(c(1.0 - d, 0.0)), 3).unwrap();
        assert!(
            f.frame_defects().iter().all(|&e| e < 1e-8),
            "d={d}: {:?}",
            f.frame_defects()
        );
    }
    assert!(matches!(
        s.x_jets(ChartPoint::z(c(1.0, 0.0)), 2),
        Err(MoebiusError::AtEnd(_))
    ));
    // ∞ is a regular point of the minimal surface; the w chart evaluates it
    let f = MoebiusFrame::at_point(&s, ChartPoint::w(c(0.0, 0.0)), 4).unwrap();
    assert!(f.frame_defects().iter().all(|&e| e < 1e-10));
}

#[test]
fn plane_and_sphere_have_vanishing_hopf_differential() {
    let p = ChartPoint::z(c(0.2, 0.7));
    let f = MoebiusFrame::at_point(&ClosedForm::plane(), p, 4).unwrap();
    assert!(jets::value(&f.kappa).iter().all(|v| v.norm() < 1e-14));
    assert!(f.s.value().norm() < 1e-14);
    for q in [p, ChartPoint::w(c(0.1, -0.3)), ChartPoint::z(c(0.0, 0.0))] {
        let f = MoebiusFrame::at_point(&ClosedForm::round_sphere(), q, 4).unwrap();
        assert!(kappa_norm(&f) < 1e-13, "{q:?}");
    }
}

#[test]
fn frame_conditions_and_normality_of_kappa() {
    let sources: Vec<Box<dyn SurfaceSource>> = vec![
        Box::new(generated()),
        Box::new(bryant()),
        Box::new(ClosedForm::cylinder()),
    ];
    for s in &sources {
        for p in sample_points(s.as_ref(), 12, 5) {
            let f = MoebiusFrame::at_point(s.as_ref(), p, 5).unwrap();
            let d = f.frame_defects();
            assert!(d.iter().all(|&e| e < 1e-10), "{p:?}: {d:?}");
            let k = jets::value(&f.kappa);
            for v in [&f.y, &f.yz, &f.yzb, &f.n] {
                let v = jets::value(v);
                // cancellation error scales with the Euclidean sizes
                let scale = (minkowski::norm(&k) * minkowski::norm(&v)).max(1.0);
                assert!(minkowski::pair(&k, &v).norm() < 1e-11 * scale, "{p:?}");
            }
        }
    }
}

#[test]
fn closed_form_n_matches_linear_solve() {
    let s = generated();
    for p in sample_points(&s, 8, 11) {
        let f = MoebiusFrame::at_point(&s, p, 4).unwrap();
        let yzzb = jets::value(&jets::dzb(&f.yz));
        let n = solve_n_linear(&jets::value(&f.y), &jets::value(&f.yz), &yzzb).unwrap();
        let diff: Vec<C64> = n
            .iter()
            .zip(jets::value(&f.n))
            .map(|(a, b)| a - b)
            .collect();
        let scale = minkowski::norm(&n).max(1.0);
        assert!(minkowski::norm(&diff) < 1e-9 * scale, "{p:?}");
    }
}

#[test]
fn normal_connection_on_the_plane_is_flat() {
    let f = MoebiusFrame::at_point(&ClosedForm::plane(), ChartPoint::z(c(0.1, 0.2)), 4).unwrap();
    // e₄ (the third coordinate of ℝ³) is normal and constant
    let xi = jets::constant(
        &[
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ],
        2,
    );
    let d = f.normal_d(&xi, Direction::Z).unwrap();
    assert!(jets::value(&d).iter().all(|v| v.norm() < 1e-14));
}

#[test]
fn normal_d_rejects_tangent_input() {
    let f = MoebiusFrame::at_point(&generated(), ChartPoint::z(c(0.3, 0.2)), 4).unwrap();
    assert!(matches!(
        f.normal_d(&f.yz, Direction::Z),
        Err(MoebiusError::NotNormal(_))
    ));
}

#[test]
fn structure_equation_for_normal_fields() {
    // ξ_z = D_zξ + 2⟨ξ, D_z̄κ⟩Y − 2⟨ξ, κ⟩Y_z̄ for normal ξ
    let s = generated();
    for p in sample_points(&s, 6, 2) {
        let f = MoebiusFrame::at_point(&s, p, 6).unwrap();
        let dzbk = jets::value(&dzb_kappa(&f));
        let k = jets::value(&f.kappa);
        for b in &f.normal_basis {
            let e: Vec<C64> = b.iter().map(|&x| c(x, 0.0)).collect();
            let xi = f.normal_part(&jets::constant(&e, f.order()));
            let dz = jets::value(&f.normal_d(&xi, Direction::Z).unwrap());
            let xz = jets::value(&jets::dz(&xi));
            let x0 = jets::value(&xi);
            let (a, bb) = (minkowski::pair(&x0, &dzbk), minkowski::pair(&x0, &k));
            let (y, yzb) = (jets::value(&f.y), jets::value(&f.yzb));
            let r: Vec<C64> = (0..xz.len())
                .map(|i| xz[i] - dz[i] - 2.0 * a * y[i] + 2.0 * bb * yzb[i])
                .collect();
            assert!(
                minkowski::norm(&r) < 1e-10 * (1.0 + minkowski::norm(&xz)),
                "{p:?}"
            );
            assert!(minkowski::pair(&dz, &y).norm() < 1e-11);
        }
    }
}

#[test]
fn normal_basis_is_orthonormal_and_normal() {
    let f = MoebiusFrame::at_point(&generated(), ChartPoint::z(c(-0.2, 0.35)), 4).unwrap();
    assert_eq!(f.normal_basis.len(), f.ambient_dim() - 4);
    for (i, a) in f.normal_basis.iter().enumerate() {
        for (j, b) in f.normal_basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((minkowski::pair_real(a, b) - want).abs() < 1e-10);
        }
        let ac: Vec<C64> = a.iter().map(|&x| c(x, 0.0)).collect();
        for v in [&f.y, &f.yz, &f.n] {
            assert!(minkowski::pair(&ac, &jets::value(v)).norm() < 1e-9);
        }
    }
}
