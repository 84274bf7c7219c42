use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::gauss::{gq_int, to_c64, C64, GQ};

/// Polynomial in `z` with exact Gaussian-rational coefficients, ascending
/// degree. Trailing zeros are always stripped, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CPoly {
    coeffs: Vec<GQ>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GQ::one())
    }

    pub fn constant(c: GQ) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: GQ, k: usize) -> Self {
        let mut v = vec![GQ::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(GQ::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<GQ>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    /// Integer coefficients `(re, im)` pairs, ascending.
    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::from_coeffs(pairs.iter().map(|&(a, b)| gq_int(a, b)).collect())
    }

    pub fn coeffs(&self) -> &[GQ] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> GQ {
        self.coeffs.get(k).cloned().unwrap_or_else(GQ::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect()
    }

    pub fn scale(&self, c: &GQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * gq_int(k as i64, 0))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Coefficientwise complex conjugate: the polynomial `conj(p(conj z))`.
    pub fn conj(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn eval(&self, z: &GQ) -> GQ {
        let mut acc = GQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_c64(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + to_c64(c);
        }
        acc
    }

    pub fn to_c64_coeffs(&self) -> Vec<C64> {
        self.coeffs.iter().map(to_c64).collect()
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    ///
    /// # Panics
    /// If `d` is the zero polynomial.
    pub fn div_rem(&self, d: &CPoly) -> (CPoly, CPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = GQ::one() / d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (CPoly::zero(), CPoly::zero());
        };
        if nd < dd {
            return (CPoly::zero(), self.clone());
        }
        let mut quot = vec![GQ::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &c * dj;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (CPoly::from_coeffs(quot), CPoly::from_coeffs(r))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &CPoly, b: &CPoly) -> CPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn monic(&self) -> CPoly {
        match self.coeffs.last() {
            None => CPoly::zero(),
            Some(l) => self.scale(&(GQ::one() / l.clone())),
        }
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, o: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        CPoly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, o: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        CPoly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, o: &CPoly) -> CPoly {
        if self.is_zero() || o.is_zero() {
            return CPoly::zero();
        }
        let mut v = vec![GQ::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + a * b;
                }
            }
        }
        CPoly::from_coeffs(v)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for CPoly {
            type Output = CPoly;
            fn $f(self, o: CPoly) -> CPoly { (&self).$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
