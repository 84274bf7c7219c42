use std::f64::consts::PI;

use crational::C64;
use moebius::jets;
use moebius::*;
use weierstrass::IsotropyOrder;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn generated(k: usize, m: usize) -> MinimalSurface {
    MinimalSurface::from_weierstrass(&weierstrass::generate(k, m, 1).unwrap()).unwrap()
}

fn bryant() -> Inverted<MinimalSurface> {
    Inverted::new(MinimalSurface::from_weierstrass(&weierstrass::bryant_peng_xiao(4)).unwrap())
}

/// `(γ(u), cos v, sin v)` with `γ` a unit-speed logarithmic spiral: a
/// conformal torus-like surface in ℝ⁴ that is neither Willmore nor
/// S-Willmore.
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

fn spiral_points() -> Vec<ChartPoint> {
    (0..8)
        .map(|i| ChartPoint::z(c(0.6 + 0.17 * i as f64, 0.4 * i as f64 - 1.0)))
        .collect()
}

#[test]
fn plane_has_no_residuals() {
    let f = MoebiusFrame::at_point(&ClosedForm::plane(), ChartPoint::z(c(0.4, 0.1)), 6).unwrap();
    let r = invariant_report(&f).unwrap();
    assert!(r.willmore_residual < 1e-14);
    assert!(r.gauss_residual < 1e-14 && r.codazzi_residual < 1e-14 && r.ricci_residual < 1e-14);
    assert!(r.chi0 < 1e-14 && r.theta0.norm() < 1e-28);
    assert!(r.energy_density.abs() < 1e-28);
}

#[test]
fn minimal_surfaces_satisfy_the_willmore_equation() {
    let cases: Vec<(Box<dyn SurfaceSource>, usize)> =
        vec![(Box::new(bryant()), 50), (Box::new(generated(1, 4)), 20)];
    for (s, count) in &cases {
        for p in sample_points(s.as_ref(), *count, 7) {
            let f = MoebiusFrame::at_point(s.as_ref(), p, 5).unwrap();
            let scale = kappa_norm(&f).max(1.0);
            assert!(willmore_residual(&f).unwrap() < 1e-6 * scale, "{p:?}");
        }
    }
}

#[test]
fn cylinder_is_not_willmore() {
    let f = MoebiusFrame::at_point(&ClosedForm::cylinder(), ChartPoint::z(c(0.3, 0.2)), 5).unwrap();
    assert!((kappa_norm(&f) - 0.25).abs() < 1e-12);
    assert!((willmore_residual(&f).unwrap() - 1.0 / 32.0).abs() < 1e-12);
}

#[test]
fn integrability_residuals_vanish() {
    let sources: Vec<(Box<dyn SurfaceSource>, Vec<ChartPoint>)> = vec![
        (
            Box::new(generated(1, 4)),
            sample_points(&generated(1, 4), 10, 3),
        ),
        (
            Box::new(generated(0, 4)),
            sample_points(&generated(0, 4), 10, 3),
        ),
        (Box::new(bryant()), sample_points(&bryant(), 10, 3)),
        (Box::new(spiral_torus()), spiral_points()),
    ];
    for (s, pts) in &sources {
        for p in pts {
            let f = MoebiusFrame::at_point(s.as_ref(), *p, 5).unwrap();
            let scale = kappa_norm(&f).powi(2).max(1.0);
            let r = invariant_report(&f).unwrap();
            for (name, v) in [
                ("gauss", r.gauss_residual),
                ("codazzi", r.codazzi_residual),
                ("ricci", r.ricci_residual),
            ] {
                assert!(v < 1e-6 * scale, "{name} {v:e} at {p:?}");
            }
        }
    }
}

#[test]
fn corrupted_kappa_breaks_gauss() {
    let s = generated(1, 4);
    let worst = sample_points(&s, 10, 3)
        .into_iter()
        .map(|p| {
            let mut f = MoebiusFrame::at_point(&s, p, 5).unwrap();
            f.kappa = jets::scale_c(c(1.01, 0.0), &f.kappa);
            gauss_residual(&f).unwrap()
        })
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst:e}");
}

#[test]
fn chi0_vanishes_on_minimal_surfaces() {
    for s in [generated(1, 4), generated(0, 4)] {
        for p in sample_points(&s, 10, 9) {
            let f = MoebiusFrame::at_point(&s, p, 4).unwrap();
            let ct = chi0_theta0(&f).unwrap();
            assert!(ct.chi0_norm() < 1e-8, "{p:?}");
        }
    }
}

#[test]
fn theta0_is_the_self_pairing_of_chi0() {
    for p in spiral_points() {
        let f = MoebiusFrame::at_point(&spiral_torus(), p, 4).unwrap();
        let ct = chi0_theta0(&f).unwrap();
        assert!(
            ct.chi0_norm() > 1e-3,
            "test surface should not be S-Willmore"
        );
        let d = (ct.theta0 - ct.chi0_self_pairing()).norm();
        assert!(d < 1e-10 * ct.theta0.norm().max(1.0), "{d:e}");
    }
}

fn frame_after(m: &minkowski::Mat, s: &dyn SurfaceSource, p: ChartPoint) -> MoebiusFrame {
    let yt = light_cone_lift_bounded(&s.x_jets(p, 5).unwrap()).unwrap();
    let lift = canonical_lift(&jets::transform(m, &yt), p.at).unwrap();
    MoebiusFrame::from_lift(&lift, p).unwrap()
}

#[test]
fn scalars_are_lorentz_invariant() {
    let s = spiral_torus();
    let t = minkowski::mat_mul(
        &minkowski::boost(6, 3, 0.8),
        &minkowski::mat_mul(
            &minkowski::rotation(6, 2, 5, 1.1),
            &minkowski::boost(6, 1, -0.4),
        ),
    );
    for p in spiral_points() {
        let (a, b) = (
            frame_after(&minkowski::identity(6), &s, p),
            frame_after(&t, &s, p),
        );
        let (ra, rb) = (invariant_report(&a).unwrap(), invariant_report(&b).unwrap());
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(1e-3);
        assert!(
            rel(ra.willmore_residual, rb.willmore_residual) < 1e-8,
            "{p:?}"
        );
        assert!(rel(ra.chi0, rb.chi0) < 1e-8);
        assert!((ra.theta0 - rb.theta0).norm() / ra.theta0.norm().max(1e-3) < 1e-8);
        assert!(rel(ra.energy_density, rb.energy_density) < 1e-8);
    }
}

#[test]
fn charts_agree_after_reweighting() {
    let s = generated(1, 4);
    for z0 in [c(0.3, 0.4), c(-0.55, 0.2), c(0.1, -0.7)] {
        let w0 = 1.0 / z0;
        let fz = MoebiusFrame::at_point(&s, ChartPoint::z(z0), 3).unwrap();
        let fw = MoebiusFrame::at_point(&s, ChartPoint::w(w0), 3).unwrap();
        let dz_dw = -1.0 / (w0 * w0);
        let weight = dz_dw * dz_dw / dz_dw.norm();
        let kz = jets::value(&fz.kappa);
        let kw = jets::value(&fw.kappa);
        let diff: Vec<C64> = kz.iter().zip(&kw).map(|(a, b)| a * weight - b).collect();
        assert!(
            minkowski::norm(&diff) < 1e-8 * minkowski::norm(&kw).max(1.0),
            "{z0}"
        );
        let (rz, rw) = (energy_density(&fz), energy_density(&fw));
        assert!((rz * dz_dw.norm_sqr() - rw).abs() < 1e-8 * rw.max(1.0));
    }
}

#[test]
fn quadrature_building_blocks() {
    // Gauss–Legendre is exact through degree 2n−1
    let nodes = energy::gauss_legendre(6, 0.5, 2.0);
    let integral: f64 = nodes.iter().map(|(x, w)| w * x.powi(11)).sum();
    let exact = (2f64.powi(12) - 0.5f64.powi(12)) / 12.0;
    assert!((integral - exact).abs() < 1e-12 * exact);
    assert_eq!(energy::bump(0.3), 1.0);
    assert_eq!(energy::bump(1.2), 0.0);
    assert!((energy::bump(0.75) - 0.5).abs() < 1e-15);
    let f = |r: f64| 3.0 + 2.0 * r * r - 5.0 * r.powi(4);
    let ex = energy::richardson_r2(&[f(0.1), f(0.05), f(0.025)]);
    assert!((ex - 3.0).abs() < 1e-13);
}

fn quick() -> EnergySpec {
    EnergySpec {
        radial: 48,
        angular: 192,
        ..EnergySpec::default()
    }
}

#[test]
fn energy_of_plane_and_sphere_is_zero() {
    for s in [ClosedForm::plane(), ClosedForm::round_sphere()] {
        let r = willmore_energy(&s, &quick()).unwrap();
        assert!(r.w.abs() < 1e-12, "{}: {}", s.name(), r.w);
        assert_eq!(r.nearest_integer, 0);
    }
}

#[test]
fn energy_of_bryant_surface_is_quantized() {
    let r = willmore_energy(&bryant(), &quick()).unwrap();
    assert!(r.relative_deviation < 0.01, "{}", r.w_over_4pi);
    assert_eq!(r.nearest_integer, 9);
    assert_eq!(r.bumps.len(), 11);
    assert!((r.w - 36.0 * PI).abs() < 0.01 * 36.0 * PI);
}

#[test]
fn coarse_quadrature_is_rejected() {
    let spec = EnergySpec {
        radial: 6,
        angular: 12,
        tol: 1e-6,
        ..EnergySpec::default()
    };
    assert!(matches!(
        willmore_energy(&bryant(), &spec),
        Err(MoebiusError::QuadratureNonconvergent { .. })
    ));
}

#[test]
fn moebius_isotropy_matches_exact_order() {
    for (k, m) in [(0, 4), (1, 4)] {
        let w = weierstrass::generate(k, m, 1).unwrap();
        let s = MinimalSurface::from_weierstrass(&w).unwrap();
        let pts = sample_points(&s, 6, 4);
        let got = moebius_isotropy_order(&s, &pts, k + 2, 1e-6).unwrap();
        assert_eq!(got, weierstrass::isotropy_order(&w).unwrap());
        assert_eq!(got, IsotropyOrder::Finite(k));
    }
    let r4 = MinimalSurface::from_weierstrass(&weierstrass::r4_example(2)).unwrap();
    let pts = sample_points(&r4, 6, 4);
    assert_eq!(
        moebius_isotropy_order(&r4, &pts, 3, 1e-6).unwrap(),
        IsotropyOrder::Finite(0)
    );
}

#[test]
fn plane_is_totally_isotropic() {
    let pts = vec![ChartPoint::z(c(0.1, 0.2)), ChartPoint::z(c(-0.4, 0.3))];
    let got = moebius_isotropy_order(&ClosedForm::plane(), &pts, 3, 1e-9).unwrap();
    assert_eq!(got, IsotropyOrder::Total);
}

#[test]
fn willmore_residual_needs_jet_depth() {
    let f = MoebiusFrame::at_point(&generated(1, 4), ChartPoint::z(c(0.2, 0.1)), 3).unwrap();
    assert!(matches!(
        willmore_residual(&f),
        Err(MoebiusError::OrderTooLow { .. })
    ));
}
