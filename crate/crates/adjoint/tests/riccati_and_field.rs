use std::sync::Arc;

use adjoint::grid::{central_weights, jet_from_grid};
use adjoint::*;
use crational::C64;
use moebius::jets;
use moebius::{ChartPoint, ClosedForm, MinimalSurface, MoebiusFrame};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn generated() -> MinimalSurface {
    MinimalSurface::from_weierstrass(&weierstrass::generate(1, 4, 1).unwrap()).unwrap()
}

const CENTER: C64 = C64::new(0.45, 0.2);

fn zero_mu() -> Arc<ComplexifiedMu> {
    Arc::new(|_, _| Ok(c(0.0, 0.0)))
}

fn constant_field(grid: &Grid, m: C64) -> MuField {
    MuField {
        grid: grid.clone(),
        mu: vec![m; grid.len()],
        w: vec![None; grid.len()],
        blowup: vec![false; grid.len()],
    }
}

#[test]
fn fornberg_weights() {
    assert_eq!(central_weights(1, 1), vec![-0.5, 0.0, 0.5]);
    assert_eq!(central_weights(2, 1), vec![1.0, -2.0, 1.0]);
    let w = central_weights(1, 2);
    let want = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
    assert!(w.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
}

#[test]
fn grid_jets_are_exact_on_polynomials() {
    let grid = Grid::centered(c(0.1, -0.2), 1.0, 13);
    // f = z³ z̄ + 2i z̄²
    let f: Vec<C64> = grid
        .points()
        .iter()
        .map(|&z| z * z * z * z.conj() + c(0.0, 2.0) * z.conj() * z.conj())
        .collect();
    let (i, j) = (6, 6);
    let z = grid.point(i, j);
    let jet = jet_from_grid(&grid, &f, i, j, 4, 3);
    let want = [
        (
            (0, 0),
            z * z * z * z.conj() + c(0.0, 2.0) * z.conj() * z.conj(),
        ),
        ((1, 0), 3.0 * z * z * z.conj()),
        ((0, 1), z * z * z + c(0.0, 4.0) * z.conj()),
        ((1, 1), 3.0 * z * z),
        ((0, 2), c(0.0, 4.0)),
        ((3, 1), c(6.0, 0.0)),
        ((2, 2), c(0.0, 0.0)),
    ];
    for ((a, b), v) in want {
        assert!((jet.derivative(a, b) - v).norm() < 1e-8, "({a},{b})");
    }
}

proptest! {
    #[test]
    fn adjoint_lift_is_null_and_normalised(
        re in -20.0f64..20.0,
        im in -20.0f64..20.0,
        x in -0.5f64..0.5,
        y in -0.5f64..0.5,
    ) {
        let f = MoebiusFrame::at_point(&generated(), ChartPoint::z(c(x, y)), 3).unwrap();
        let mu = c(re, im);
        let yh = adjoint_lift(mu, &f);
        let scale = 1.0 + mu.norm_sqr();
        prop_assert!(minkowski::pair(&yh, &yh).norm() < 1e-11 * scale * scale);
        let p = minkowski::pair(&yh, &jets::value(&f.y));
        prop_assert!((p + 1.0).norm() < 1e-11 * scale);
    }
}

#[test]
fn zero_mu_gives_the_conformal_normal() {
    let f = MoebiusFrame::at_point(&generated(), ChartPoint::z(c(0.2, 0.3)), 3).unwrap();
    assert_eq!(adjoint_lift(c(0.0, 0.0), &f), jets::value(&f.n));
}

#[test]
fn co_touch_residual_on_the_plane() {
    let grid = Grid::centered(c(0.0, 0.0), 1.0, 15);
    let frames = frame_field(&ClosedForm::plane(), &grid, 4).unwrap();
    for (m, want) in [(c(0.0, 0.0), c(0.0, 0.0)), (c(1.0, 0.0), c(-0.5, 0.0))] {
        let field = adjoint_field(&frames, &constant_field(&grid, m), STENCIL, 1e-8).unwrap();
        for a in &field.samples {
            assert!((a.theta - want).norm() < 1e-12);
            assert!(a.rho.norm() < 1e-12);
            // metric ½|ρ|² + ½|θ|² + 4⟨η,η̄⟩ with ρ = η = 0
            assert!((a.metric - 0.5 * want.norm_sqr()).abs() < 1e-12);
        }
        // ρ ≡ 0 everywhere: the whole sampled region is branch locus
        assert_eq!(field.branch_set.len(), field.samples.len());
    }
}

#[test]
fn small_grids_are_rejected() {
    let grid = Grid::centered(c(0.0, 0.0), 1.0, 2 * STENCIL);
    let frames = frame_field(&ClosedForm::plane(), &grid, 4).unwrap();
    assert_eq!(
        adjoint_field(&frames, &constant_field(&grid, c(0.0, 0.0)), STENCIL, 1e-8).unwrap_err(),
        AdjointError::GridTooCoarse {
            needed: 2 * STENCIL + 1,
            have: 2 * STENCIL
        }
    );
}

#[test]
fn infinite_data_recovers_the_base_solution() {
    let s = generated();
    let grid = Grid::centered(CENTER, 0.5, 9);
    let mu0 = minimal_dual_mu(s);
    let mu = riccati_extend(mu0.as_ref(), &grid, (4, 4), &InitialData::Infinite, 4).unwrap();
    for (z, m) in grid.points().iter().zip(&mu.mu) {
        assert_eq!(*m, mu0(*z, z.conj()).unwrap());
    }
    assert!(mu.w.iter().all(Option::is_none));
}

#[test]
fn riccati_on_the_plane_matches_closed_form() {
    let grid = Grid::centered(c(0.1, 0.1), 1.0, 11);
    let base = (3, 5);
    let zb = grid.point(base.0, base.1);
    let g = |zeta: C64| c(2.0, 1.0) + 0.3 * zeta;
    let mu = riccati_extend(
        zero_mu().as_ref(),
        &grid,
        base,
        &InitialData::Function(Arc::new(g)),
        2,
    )
    .unwrap();
    for (idx, z) in grid.points().into_iter().enumerate() {
        let w = -(z - zb) / 2.0 + g(z.conj());
        assert!((mu.w[idx].unwrap() - w).norm() < 1e-13);
        assert!((mu.mu[idx] - 1.0 / w).norm() < 1e-12);
    }
}

#[test]
fn poles_of_mu_are_flagged() {
    let grid = Grid::centered(c(0.0, 0.0), 1.0, 5);
    // w = −(z − z_b)/2 + g vanishes at z_b + 2g, a grid point
    let g = c(grid.h, 0.0);
    let mu = riccati_extend(
        zero_mu().as_ref(),
        &grid,
        (0, 2),
        &InitialData::Constant(g),
        1,
    )
    .unwrap();
    let flagged: Vec<usize> = (0..grid.len()).filter(|&k| mu.blowup[k]).collect();
    assert_eq!(flagged, vec![grid.index(2, 2)]);
}

#[test]
fn row_integration_is_path_independent() {
    let s = generated();
    let grid = Grid::centered(CENTER, 0.5, 17);
    let mu0 = minimal_dual_mu(s);
    let g0 = c(0.7, 0.3);
    let j = 8;
    let (zl, zr) = (grid.point(0, j), grid.point(16, j));
    let left = riccati_extend(mu0.as_ref(), &grid, (0, j), &InitialData::Constant(g0), 8).unwrap();
    // consistent data at the right end: transport g0 across the base row
    let m = mu0.clone();
    let transported = move |zeta: C64| integrate_w(m.as_ref(), zeta, zl, g0, zr, 128).unwrap();
    let right = riccati_extend(
        mu0.as_ref(),
        &grid,
        (16, j),
        &InitialData::Function(Arc::new(transported)),
        8,
    )
    .unwrap();
    for k in 0..grid.len() {
        let (a, b) = (left.mu[k], right.mu[k]);
        assert!((a - b).norm() < 1e-6 * a.norm().max(1.0), "{k}: {a} {b}");
    }
}

fn riccati_adjoint() -> (AdjointField, std::time::Duration) {
    let s = generated();
    let start = std::time::Instant::now();
    let grid = Grid::centered(CENTER, 0.5, 41);
    let frames = frame_field(&s, &grid, 4).unwrap();
    let mu0 = minimal_dual_mu(s);
    let mu = riccati_extend(
        mu0.as_ref(),
        &grid,
        (20, 20),
        &InitialData::Constant(c(0.7, 0.3)),
        4,
    )
    .unwrap();
    let field = adjoint_field(&frames, &mu, STENCIL, 1e-6).unwrap();
    (field, start.elapsed())
}

#[test]
fn riccati_adjoint_identities() {
    let (field, elapsed) = riccati_adjoint();
    let r = field.summary();
    assert!(elapsed.as_secs_f64() < 60.0);
    assert_eq!(r.count, 31 * 31);
    assert!(r.theta < 1e-5, "{:e}", r.theta);
    assert!(r.eta_self < 1e-10, "{:e}", r.eta_self);
    assert!(r.yhat_null < 1e-10, "{:e}", r.yhat_null);
    assert!(r.yhat_y < 1e-10, "{:e}", r.yhat_y);
    assert!(r.yhat_conformal < 1e-5, "{:e}", r.yhat_conformal);
    assert!(r.metric_identity < 1e-5, "{:e}", r.metric_identity);
    assert!(r.min_metric > 0.1);
    // not the dual: the η term carries a visible share of the metric
    assert!(field.samples.iter().any(|a| a.eta_energy > 0.1));
}

#[test]
fn riccati_adjoint_is_willmore() {
    let (field, _) = riccati_adjoint();
    let w = adjoint_willmore_residual(&field, STENCIL, 3, 1e-8).unwrap();
    assert!(w.not_immersed.is_empty());
    assert!(w.relative.len() >= 49);
    assert!(w.max_relative < 1e-3, "{:e}", w.max_relative);
}

#[test]
fn dual_adjoint_is_a_point() {
    let s = generated();
    let grid = Grid::centered(CENTER, 0.5, 21);
    let frames = frame_field(&s, &grid, 4).unwrap();
    let mu0 = minimal_dual_mu(s);
    let mu = riccati_extend(mu0.as_ref(), &grid, (10, 10), &InitialData::Infinite, 4).unwrap();
    let field = adjoint_field(&frames, &mu, STENCIL, 1e-6).unwrap();
    let r = field.summary();
    assert!(r.theta < 1e-5 && r.rho < 1e-6, "{r:?}");
    assert_eq!(field.branch_set.len(), r.count);
    assert!(matches!(
        adjoint_willmore_residual(&field, STENCIL, 2, 1e-8),
        Err(AdjointError::NotImmersed(_))
    ));
}

#[test]
fn adjoint_of_the_plane_is_not_immersed() {
    let grid = Grid::centered(c(0.0, 0.0), 1.0, 21);
    let frames = frame_field(&ClosedForm::plane(), &grid, 4).unwrap();
    let mu = riccati_extend(
        zero_mu().as_ref(),
        &grid,
        (10, 10),
        &InitialData::Constant(c(3.0, 1.0)),
        2,
    )
    .unwrap();
    let field = adjoint_field(&frames, &mu, STENCIL, 1e-6).unwrap();
    assert!(field.summary().theta < 1e-10);
    assert!(matches!(
        adjoint_willmore_residual(&field, STENCIL, 2, 1e-8),
        Err(AdjointError::NotImmersed(_))
    ));
}
