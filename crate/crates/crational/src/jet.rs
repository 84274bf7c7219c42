use std::ops::{Add, Mul, Neg, Sub};

use crate::gauss::C64;
use crate::series::Series;
use crate::CrationalError;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Truncated bivariate Taylor expansion in `(z − z₀, z̄ − z̄₀)`.
///
/// Slot `(a, b)` holds `∂_z^a ∂_z̄^b f(z₀) / (a! b!)` for `a + b ≤ order`.
/// Binary operations truncate to the smaller order of their operands.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    c: Vec<C64>,
}

impl Jet {
    #[inline]
    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.order + 1) + b
    }

    pub fn zero(order: usize) -> Self {
        Jet {
            order,
            c: vec![ZERO; (order + 1) * (order + 1)],
        }
    }

    pub fn constant(v: C64, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.c[0] = v;
        j
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut j = Self::zero(order);
        for a in 0..=order {
            for b in 0..=order - a {
                let k = j.idx(a, b);
                j.c[k] = f(a, b);
            }
        }
        j
    }

    /// Jet of the coordinate `z` at `z0`.
    pub fn var_z(z0: C64, order: usize) -> Self {
        let mut j = Self::constant(z0, order);
        if order > 0 {
            j.set(1, 0, C64::new(1.0, 0.0));
        }
        j
    }

    /// Jet of `z̄` at `z0`.
    pub fn var_zb(z0: C64, order: usize) -> Self {
        Self::var_z(z0, order).conj()
    }

    /// Holomorphic seed: Taylor coefficients go to the `(a, 0)` slots.
    pub fn from_holomorphic(s: &Series) -> Self {
        let order = s.order();
        let mut j = Self::zero(order);
        for a in 0..=order {
            j.set(a, 0, s.c[a]);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, a: usize, b: usize) -> C64 {
        if a + b > self.order {
            return ZERO;
        }
        self.c[self.idx(a, b)]
    }

    pub fn set(&mut self, a: usize, b: usize, v: C64) {
        assert!(
            a + b <= self.order,
            "slot ({a},{b}) beyond order {}",
            self.order
        );
        let k = self.idx(a, b);
        self.c[k] = v;
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    /// `∂_z^a ∂_z̄^b f(z₀)`.
    pub fn derivative(&self, a: usize, b: usize) -> C64 {
        let fa: f64 = (1..=a).map(|i| i as f64).product();
        let fb: f64 = (1..=b).map(|i| i as f64).product();
        self.coeff(a, b) * fa * fb
    }

    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Jet::from_fn(order, |a, b| self.coeff(a, b))
    }

    pub fn conj(&self) -> Self {
        Jet::from_fn(self.order, |a, b| self.coeff(b, a).conj())
    }

    /// `(f + f̄)/2`.
    pub fn re(&self) -> Self {
        (self + &self.conj()).scale(C64::new(0.5, 0.0))
    }

    /// `(f − f̄)/(2i)`.
    pub fn im(&self) -> Self {
        (self - &self.conj()).scale(C64::new(0.0, -0.5))
    }

    /// `∂_z`, losing one order. An order-0 jet maps to the zero jet.
    pub fn dz(&self) -> Self {
        if self.order == 0 {
            return Jet::zero(0);
        }
        Jet::from_fn(self.order - 1, |a, b| self.coeff(a + 1, b) * (a + 1) as f64)
    }

    /// `∂_z̄`, losing one order.
    pub fn dzb(&self) -> Self {
        if self.order == 0 {
            return Jet::zero(0);
        }
        Jet::from_fn(self.order - 1, |a, b| self.coeff(a, b + 1) * (b + 1) as f64)
    }

    pub fn scale(&self, k: C64) -> Self {
        Jet {
            order: self.order,
            c: self.c.iter().map(|v| v * k).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        Jet {
            order: self.order,
            c: self.c.iter().map(|v| v * k).collect(),
        }
    }

    pub fn add_const(&self, k: C64) -> Self {
        let mut r = self.clone();
        r.c[0] += k;
        r
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn zip(&self, o: &Jet, f: impl Fn(C64, C64) -> C64) -> Jet {
        let n = self.order.min(o.order);
        Jet::from_fn(n, |a, b| f(self.coeff(a, b), o.coeff(a, b)))
    }

    fn cauchy(&self, o: &Jet) -> Jet {
        let n = self.order.min(o.order);
        let mut r = Jet::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let x = self.c[self.idx(i, j)];
                if x == ZERO {
                    continue;
                }
                let rest = n - i - j;
                for p in 0..=rest {
                    for q in 0..=rest - p {
                        let y = o.c[o.idx(p, q)];
                        let k = r.idx(i + p, j + q);
                        r.c[k] += x * y;
                    }
                }
            }
        }
        r
    }

    /// Evaluates `Σ g_n (f − f(z₀))^n` given `g_n = g^{(n)}(f(z₀))/n!`.
    fn compose(&self, g: &[C64]) -> Jet {
        let mut h = self.clone();
        h.c[0] = ZERO;
        let mut r = Jet::constant(g[self.order.min(g.len() - 1)], self.order);
        for n in (0..self.order.min(g.len() - 1)).rev() {
            r = r.cauchy(&h);
            r.c[0] += g[n];
        }
        r
    }

    pub fn recip(&self) -> Result<Jet, CrationalError> {
        let a = self.c[0];
        if a.norm() == 0.0 {
            return Err(CrationalError::DivisionByZeroJet);
        }
        let inv = 1.0 / a;
        let mut g = Vec::with_capacity(self.order + 1);
        let mut p = inv;
        for _ in 0..=self.order {
            g.push(p);
            p *= -inv;
        }
        Ok(self.compose(&g))
    }

    pub fn div(&self, o: &Jet) -> Result<Jet, CrationalError> {
        Ok(self * &o.recip()?)
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        let mut g = Vec::with_capacity(self.order + 1);
        let mut f = 1.0;
        for n in 0..=self.order {
            if n > 0 {
                f *= n as f64;
            }
            g.push(e / f);
        }
        self.compose(&g)
    }

    /// Principal logarithm.
    pub fn log(&self) -> Result<Jet, CrationalError> {
        let a = self.c[0];
        if a.norm() == 0.0 {
            return Err(CrationalError::NonpositiveBranch);
        }
        let mut g = vec![a.ln()];
        let inv = 1.0 / a;
        let mut p = inv;
        for n in 1..=self.order {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            g.push(p * (sign / n as f64));
            p *= inv;
        }
        Ok(self.compose(&g))
    }

    /// Principal power `f^e`.
    pub fn powc(&self, e: C64) -> Result<Jet, CrationalError> {
        let a = self.c[0];
        if a.norm() == 0.0 {
            return Err(CrationalError::NonpositiveBranch);
        }
        let mut g = Vec::with_capacity(self.order + 1);
        let mut binom = C64::new(1.0, 0.0);
        for n in 0..=self.order {
            if n > 0 {
                binom = binom * (e - (n - 1) as f64) / n as f64;
            }
            g.push(binom * a.powc(e - n as f64));
        }
        Ok(self.compose(&g))
    }

    pub fn powf(&self, e: f64) -> Result<Jet, CrationalError> {
        self.powc(C64::new(e, 0.0))
    }

    pub fn sqrt(&self) -> Result<Jet, CrationalError> {
        self.powf(0.5)
    }
}

/// Basepoint values of a vector of jets.
pub fn jet_vec_value(v: &[Jet]) -> Vec<C64> {
    v.iter().map(Jet::value).collect()
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        self.zip(o, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        self.cauchy(o)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet { (&self).$f(&o) }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $f(self, o: &Jet) -> Jet { (&self).$f(o) }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet { self.$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Mul<C64> for &Jet {
    type Output = Jet;
    fn mul(self, k: C64) -> Jet {
        self.scale(k)
    }
}

impl Mul<C64> for Jet {
    type Output = Jet;
    fn mul(self, k: C64) -> Jet {
        self.scale(k)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale_re(k)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale_re(k)
    }
}
