//! Square sample grids and central finite differences.

use crational::{Jet, C64};

/// `nx × ny` points `origin + h·(i + i·j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub origin: C64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    /// `n × n` grid centred at `center` with spacing `size / 64`.
    pub fn centered(center: C64, size: f64, n: usize) -> Self {
        let h = size / 64.0;
        let half = h * (n - 1) as f64 / 2.0;
        Grid {
            origin: center - C64::new(half, half),
            h,
            nx: n,
            ny: n,
        }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn point(&self, i: usize, j: usize) -> C64 {
        self.origin + C64::new(i as f64 * self.h, j as f64 * self.h)
    }

    /// All points, row-major.
    pub fn points(&self) -> Vec<C64> {
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (i, j)))
            .map(|(i, j)| self.point(i, j))
            .collect()
    }

    /// Whether a centred stencil of half-width `r` fits around `(i, j)`.
    pub fn is_interior(&self, i: usize, j: usize, r: usize) -> bool {
        i >= r && j >= r && i + r < self.nx && j + r < self.ny
    }

    /// Indices `(i, j)` whose stencil of half-width `r` fits.
    pub fn interior(&self, r: usize) -> Vec<(usize, usize)> {
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (i, j)))
            .filter(|&(i, j)| self.is_interior(i, j, r))
            .collect()
    }
}

/// Weights of the `m`-th derivative at 0 from samples at `offsets`
/// (Fornberg's recursion).
pub fn fornberg(offsets: &[f64], m: usize) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[m]).collect()
}

/// Central weights `w_{−r..=r}` for the `m`-th derivative with unit spacing.
pub fn central_weights(m: usize, r: usize) -> Vec<f64> {
    let offsets: Vec<f64> = (-(r as i64)..=r as i64).map(|k| k as f64).collect();
    fornberg(&offsets, m)
}

/// Central differences on a grid field with half-width `r`.
#[derive(Clone, Debug)]
pub struct Differ {
    pub grid: Grid,
    pub r: usize,
    first: Vec<f64>,
}

impl Differ {
    pub fn new(grid: &Grid, r: usize) -> Self {
        Differ {
            grid: grid.clone(),
            r,
            first: central_weights(1, r),
        }
    }

    fn along(&self, f: &[C64], i: usize, j: usize, di: i64, dj: i64, w: &[f64]) -> C64 {
        let r = self.r as i64;
        (-r..=r)
            .zip(w)
            .map(|(k, &wk)| {
                let ii = (i as i64 + k * di) as usize;
                let jj = (j as i64 + k * dj) as usize;
                f[self.grid.index(ii, jj)] * wk
            })
            .sum()
    }

    /// `(∂_x f, ∂_y f)` at an interior point.
    pub fn grad(&self, f: &[C64], i: usize, j: usize) -> (C64, C64) {
        let h = self.grid.h;
        (
            self.along(f, i, j, 1, 0, &self.first) / h,
            self.along(f, i, j, 0, 1, &self.first) / h,
        )
    }

    /// `∂_z f = ½(f_x − i f_y)`.
    pub fn dz(&self, f: &[C64], i: usize, j: usize) -> C64 {
        let (fx, fy) = self.grad(f, i, j);
        0.5 * (fx - C64::new(0.0, 1.0) * fy)
    }

    /// `∂_z̄ f = ½(f_x + i f_y)`.
    pub fn dzb(&self, f: &[C64], i: usize, j: usize) -> C64 {
        let (fx, fy) = self.grad(f, i, j);
        0.5 * (fx + C64::new(0.0, 1.0) * fy)
    }
}

/// `∂_x^p ∂_y^q` of a grid field at `(i, j)` by tensor-product central
/// stencils of half-width `r`.
pub fn mixed_partial(
    grid: &Grid,
    f: &[C64],
    i: usize,
    j: usize,
    p: usize,
    q: usize,
    r: usize,
) -> C64 {
    let wx = central_weights(p, r);
    let wy = central_weights(q, r);
    let ri = r as i64;
    let mut acc = C64::new(0.0, 0.0);
    for (a, &ua) in (-ri..=ri).zip(&wx) {
        if ua == 0.0 {
            continue;
        }
        for (b, &vb) in (-ri..=ri).zip(&wy) {
            if vb == 0.0 {
                continue;
            }
            let idx = grid.index((i as i64 + a) as usize, (j as i64 + b) as usize);
            acc += f[idx] * (ua * vb);
        }
    }
    acc / grid.h.powi((p + q) as i32)
}

/// Wirtinger jet of order `order` at `(i, j)` reconstructed from the grid
/// field by finite differences.
///
/// `∂_z^a ∂_z̄^b = 2^{−(a+b)} (∂_x − i∂_y)^a (∂_x + i∂_y)^b`, expanded into
/// `∂_x^p ∂_y^q`.
pub fn jet_from_grid(grid: &Grid, f: &[C64], i: usize, j: usize, order: usize, r: usize) -> Jet {
    let partial: Vec<Vec<C64>> = (0..=order)
        .map(|p| {
            (0..=order - p)
                .map(|q| mixed_partial(grid, f, i, j, p, q, r))
                .collect()
        })
        .collect();
    let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
    Jet::from_fn(order, |a, b| {
        // coefficients of (X − iY)^a (X + iY)^b, indexed by the power of Y
        let mut poly = vec![C64::new(1.0, 0.0)];
        for (count, sign) in [(a, -1.0), (b, 1.0)] {
            for _ in 0..count {
                let mut next = vec![C64::new(0.0, 0.0); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] += c * C64::new(0.0, sign);
                }
                poly = next;
            }
        }
        let n = a + b;
        let d: C64 = poly
            .iter()
            .enumerate()
            .map(|(q, c)| c * partial[n - q][q])
            .sum();
        d / (2f64.powi(n as i32) * fact(a) * fact(b))
    })
}
