use crate::gauss::C64;
use crate::CrationalError;

/// Truncated univariate Taylor series `Σ c_k t^k`, `k ≤ order`, used to
/// push holomorphic data through exact-derivative evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub c: Vec<C64>,
}

impl Series {
    pub fn zeros(order: usize) -> Self {
        Series {
            c: vec![C64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(v: C64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.c[0] = v;
        s
    }

    /// The local coordinate `z0 + t`.
    pub fn variable(z0: C64, order: usize) -> Self {
        let mut s = Self::constant(z0, order);
        if order > 0 {
            s.c[1] = C64::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add(&self, o: &Series) -> Series {
        Series {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: C64) -> Series {
        Series {
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.c.len().min(o.c.len());
        let mut r = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            if self.c[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n - i {
                r[i + j] += self.c[i] * o.c[j];
            }
        }
        Series { c: r }
    }

    pub fn recip(&self) -> Result<Series, CrationalError> {
        let a0 = self.c[0];
        if a0.norm() == 0.0 {
            return Err(CrationalError::DivisionByZeroJet);
        }
        let n = self.c.len();
        let mut r = vec![C64::new(0.0, 0.0); n];
        r[0] = 1.0 / a0;
        for k in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.c[j] * r[k - j];
            }
            r[k] = -acc / a0;
        }
        Ok(Series { c: r })
    }

    /// Horner evaluation of the polynomial with coefficients `p` at `t`.
    pub fn poly_at(p: &[C64], t: &Series) -> Series {
        let mut acc = Series::zeros(t.order());
        for a in p.iter().rev() {
            acc = acc.mul(t);
            acc.c[0] += a;
        }
        acc
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative_at(&self, k: usize) -> C64 {
        let f: f64 = (1..=k).map(|i| i as f64).product();
        self.c[k] * f
    }
}
