use crational::C64;
use harmonic::linalg::containment;
use moebius::jets;
use moebius::*;
use nalgebra::DMatrix;
use twistor::jvec::{herm, value_norm};
use twistor::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn built() -> MinimalSurface {
    MinimalSurface::from_weierstrass(&build_totally_isotropic_example()).unwrap()
}

fn spiral_torus() -> ClosedForm {
    ClosedForm::new("spiral-torus", 4, Vec::new(), |z| {
        let b = 0.7;
        let (u, v) = (z.re(), z.im());
        let phase = u.log()?.scale(c(0.0, b)).exp();
        let g = (&u * &phase).scale_re(1.0 / (1.0 + b * b).sqrt());
        let e = v.scale(c(0.0, 1.0)).exp();
        Ok(vec![g.re(), g.im(), e.re(), e.im()])
    })
}

fn flat(dim: usize) -> ClosedForm {
    ClosedForm::new(
        "flat-plane",
        dim,
        vec![ChartPoint::w(c(0.0, 0.0))],
        move |z| {
            let mut out = vec![z.re(), z.im()];
            out.resize(dim, crational::Jet::zero(z.order()));
            Ok(out)
        },
    )
}

fn field(s: &dyn SurfaceSource, count: usize, seed: u64) -> FrameField {
    adapted_frame_field(s, &sample_points(s, count, seed), 8)
}

fn so4(angles: [f64; 3]) -> DMatrix<f64> {
    let r = minkowski::mat_mul(
        &minkowski::mat_mul(
            &minkowski::rotation(4, 0, 1, angles[0]),
            &minkowski::rotation(4, 1, 2, angles[1]),
        ),
        &minkowski::rotation(4, 0, 3, angles[2]),
    );
    DMatrix::from_fn(4, 4, |i, j| r[i][j])
}

#[test]
fn j_matrix_is_a_complex_structure() {
    for m in 1..=5 {
        let j = j_matrix(m);
        assert_eq!(&j * &j, -DMatrix::identity(2 * m, 2 * m));
        assert_eq!(j.transpose(), -&j);
    }
}

#[test]
fn built_example_is_totally_isotropic() {
    let w = build_totally_isotropic_example();
    let r = TotallyIsotropicReport::of(&w).unwrap();
    assert!(r.pass(), "{r:?}");
    assert_eq!(r.isotropy.to_string(), "total");
    assert_eq!(w.ambient_dim, 4);
    assert_eq!(w.n, 2);
    let mut ends: Vec<f64> = r.ends.iter().map(|z| z.re).collect();
    ends.sort_by(f64::total_cmp);
    assert_eq!(ends, vec![-1.0, 0.0, 1.0]);
    assert!(r.ends.iter().all(|z| z.im.abs() < 1e-15));
}

#[test]
fn adapted_frames_of_the_built_example() {
    let f = field(&built(), 12, 3);
    assert!(f.masked.is_empty(), "{:?}", f.masked);
    assert_eq!(f.frames.len(), 12);
    assert!(f.det_sign().is_some());
    assert_eq!(f.sign_flips, 0);
    for fr in &f.frames {
        assert_eq!(fr.m, 2);
        assert_eq!(fr.pi_rank, 1);
        assert!(fr.orthonormality_defect() < 1e-10);
        assert!(fr.isotropy_defect() < 1e-10);
        assert!((fr.det().abs() - 1.0).abs() < 1e-10);
        // J² = −1 on the tangent space of S⁴, and I is its +i eigenspace
        let j = fr.complex_structure();
        let x = DMatrix::from_fn(5, 1, |i, _| jets::value(&fr.x)[i].re);
        let t = DMatrix::identity(5, 5) - &x * x.transpose();
        assert!((&j * &j + &t).amax() < 1e-10);
        for e in fr.isotropic() {
            let v = jets::value(&e);
            for (row, want) in v.iter().enumerate() {
                let got: C64 = (0..5).map(|k| v[k] * j[(row, k)]).sum();
                assert!((got - c(0.0, 1.0) * want).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn frames_span_the_stabilized_chain() {
    let s = built();
    for p in sample_points(&s, 6, 9) {
        let mf = MoebiusFrame::at_point(&s, p, 8).unwrap();
        let fr = adapted_frame(&mf).unwrap();
        let x = sphere_point(&mf).unwrap();
        let pis = harmonic::pi_bundles(&mf, 2).unwrap();
        assert_eq!(pis[0].len(), 1);
        assert_eq!(pis[1].len(), 1);
        let i2 = fr.i2();
        for p in &pis[0] {
            let v = jets::sub(&p[1..], &jets::scale(&p[0], &x));
            assert!(containment(&v, &i2, 0.0) < 1e-8);
            // already Hermitian-orthogonal to E₁
            let e1 = &fr.isotropic()[0];
            assert!(herm(&v, e1).value().norm() < 1e-10 * value_norm(&v) * value_norm(e1));
        }
    }
}

#[test]
fn built_example_is_a_normal_horizontal_twistor_curve() {
    let f = field(&built(), 12, 4);
    let r = j_holomorphic_check(&f.frames);
    assert_eq!(r.samples, 12);
    assert_eq!(r.verdict(1e-6), Some(TwistorCase::Holomorphic));
    assert!(r.holomorphic < 1e-6, "{r:?}");
    assert!(r.anti_holomorphic > 0.5, "{r:?}");
    assert!(normal_horizontal_check(&f.frames) < 1e-6);
    let t = transfer_bound(&f.frames, &r);
    assert!(t.holds, "{t:?}");
    assert!(t.isotropy < 1e-10);
}

#[test]
fn conjugate_frames_are_anti_holomorphic() {
    let f = field(&built(), 6, 5);
    let conj: Vec<TwistorFrame> = f.frames.iter().map(TwistorFrame::conjugate).collect();
    assert!(conj
        .iter()
        .all(|fr| fr.case == TwistorCase::AntiHolomorphic));
    let r = j_holomorphic_check(&conj);
    assert_eq!(r.verdict(1e-6), Some(TwistorCase::AntiHolomorphic));
    assert!(normal_horizontal_check(&conj) < 1e-6);
    assert!(transfer_bound(&conj, &r).holds);
}

#[test]
fn rotated_frames_fail_both_verdicts() {
    let f = field(&built(), 6, 6);
    for angles in [[0.7, 0.0, 0.0], [0.3, -1.1, 0.4], [2.0, 0.5, -0.9]] {
        let r = so4(angles);
        assert!((r.determinant() - 1.0).abs() < 1e-12);
        let rotated: Vec<TwistorFrame> = f.frames.iter().map(|fr| fr.rotated(&r)).collect();
        assert!(rotated[0].orthonormality_defect() < 1e-10);
        let rep = j_holomorphic_check(&rotated);
        assert_eq!(rep.verdict(1e-6), None, "{angles:?} {rep:?}");
        assert!(rep.residual() > 1e-2, "{angles:?} {rep:?}");
    }
}

#[test]
fn veronese_lift_is_horizontal() {
    let v = veronese();
    let f = field(&v, 10, 2);
    assert!(f.masked.is_empty(), "{:?}", f.masked);
    let r = j_holomorphic_check(&f.frames);
    assert!(r.verdict(1e-6).is_some(), "{r:?}");
    assert!(normal_horizontal_check(&f.frames) < 1e-6);
    // the stronger condition: E_{j,z̄} ∈ I ⊕ span{x}
    for fr in &f.frames {
        let mut span = fr.isotropic();
        span.push(fr.x.clone());
        for e in fr.isotropic() {
            let d = match fr.case {
                TwistorCase::Holomorphic => jets::dzb(&e),
                TwistorCase::AntiHolomorphic => jets::dz(&e),
            };
            assert!(containment(&d, &span, value_norm(&e)) < 1e-8);
        }
    }
}

#[test]
fn finite_isotropy_order_is_rejected() {
    let s = MinimalSurface::from_weierstrass(&weierstrass::generate(1, 4, 1).unwrap()).unwrap();
    let mf = MoebiusFrame::at_point(&s, sample_points(&s, 1, 1)[0], 10).unwrap();
    let e = adapted_frame(&mf).unwrap_err();
    assert_eq!(e, TwistorError::NotTotallyIsotropic { order: 1 });
    let mf = MoebiusFrame::at_point(&spiral_torus(), ChartPoint::z(c(1.0, 0.3)), 8).unwrap();
    assert!(matches!(
        adapted_frame(&mf),
        Err(TwistorError::NotTotallyIsotropic { .. })
    ));
}

#[test]
fn odd_dimensions_are_rejected() {
    let mf =
        MoebiusFrame::at_point(&ClosedForm::cylinder(), ChartPoint::z(c(0.2, 0.1)), 6).unwrap();
    assert_eq!(
        completed_frame(&mf).unwrap_err(),
        TwistorError::OddDimension(3)
    );
}

#[test]
fn flat_plane_has_an_empty_chain() {
    let f = field(&flat(4), 6, 1);
    assert!(f.masked.is_empty(), "{:?}", f.masked);
    assert_eq!(f.det_sign(), Some(1));
    for fr in &f.frames {
        assert_eq!(fr.pi_rank, 0);
        assert!(fr.orthonormality_defect() < 1e-10);
    }
    assert!(j_holomorphic_check(&f.frames).verdict(1e-6).is_some());
    assert!(normal_horizontal_check(&f.frames) < 1e-10);
}

#[test]
fn surfaces_in_the_two_sphere_are_vacuously_normal_horizontal() {
    let f = field(&flat(2), 4, 1);
    assert!(f.masked.is_empty(), "{:?}", f.masked);
    assert!(f.frames.iter().all(|fr| fr.m == 1 && fr.i2().is_empty()));
    assert_eq!(normal_horizontal_check(&f.frames), 0.0);
    assert!(j_holomorphic_check(&f.frames).verdict(1e-6).is_some());
}

#[test]
fn transfer_bound_on_non_isotropic_surfaces() {
    let r4 = MinimalSurface::from_weierstrass(&weierstrass::r4_example(2)).unwrap();
    let torus = spiral_torus();
    let cases: [(&str, &dyn SurfaceSource, Vec<ChartPoint>); 2] = [
        ("r4", &r4, sample_points(&r4, 6, 2)),
        (
            "spiral torus",
            &torus,
            (0..6)
                .map(|i| ChartPoint::z(c(0.7 + 0.1 * i as f64, 0.3 * i as f64)))
                .collect(),
        ),
    ];
    for (name, s, pts) in cases {
        let frames: Vec<TwistorFrame> = pts
            .iter()
            .map(|&p| completed_frame(&MoebiusFrame::at_point(s, p, 8).unwrap()).unwrap())
            .collect();
        assert!(frames.iter().all(|f| f.det() > 0.0));
        let r = j_holomorphic_check(&frames);
        let t = transfer_bound(&frames, &r);
        assert!(t.tau > 1e-2 && t.isotropy > 1e-2, "{name} {t:?}");
        assert!(t.holds, "{name} {t:?}");
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]
    #[test]
    fn small_rotations_bound_isotropy(eps in 1e-6f64..1e-2, seed in 0u64..50) {
        let s = built();
        let frames: Vec<TwistorFrame> = adapted_frame_field(&s, &sample_points(&s, 3, seed), 8)
            .frames
            .iter()
            .map(|f| f.rotated(&so4([eps, 0.0, 0.0])))
            .collect();
        let r = j_holomorphic_check(&frames);
        proptest::prop_assert!(r.residual() > 0.1 * eps);
        let t = transfer_bound(&frames, &r);
        proptest::prop_assert!(t.holds);
    }
}
