use num_traits::One;

use crate::gauss::{C64, GQ};
use crate::poly::CPoly;
use crate::series::Series;
use crate::CrationalError;

/// Denominator kept in factored form `Π q_i^{e_i}`; each `q_i` is
/// nonconstant and the factors are pairwise distinct as polynomials.
pub type Factors = Vec<(CPoly, u32)>;

fn normalize(mut num: CPoly, den: Factors) -> (CPoly, Factors) {
    let mut out: Factors = Vec::new();
    for (p, e) in den {
        if e == 0 {
            continue;
        }
        match p.degree() {
            None => panic!("zero factor in denominator"),
            Some(0) => {
                let c = p.coeff(0).clone();
                let mut inv = GQ::one();
                for _ in 0..e {
                    inv /= c.clone();
                }
                num = num.scale(&inv);
            }
            Some(_) => {
                if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
                    slot.1 += e;
                } else {
                    out.push((p, e));
                }
            }
        }
    }
    (num, out)
}

fn expand(den: &Factors) -> CPoly {
    den.iter()
        .fold(CPoly::one(), |acc, (p, e)| &acc * &p.pow(*e))
}

fn merge(a: &Factors, b: &Factors) -> Factors {
    let mut out = a.clone();
    for (p, e) in b {
        if let Some(slot) = out.iter_mut().find(|(q, _)| q == p) {
            slot.1 += e;
        } else {
            out.push((p.clone(), *e));
        }
    }
    out
}

/// Numerator of the quotient-rule derivative of `P / Π q_i^{e_i}`; the new
/// denominator is `Π q_i^{e_i+1}`.
fn derivative_numerator(p: &CPoly, den: &Factors) -> CPoly {
    let base: Vec<&CPoly> = den.iter().map(|(q, _)| q).collect();
    let all = base.iter().fold(CPoly::one(), |acc, q| &acc * q);
    let mut out = &p.derivative() * &all;
    for (i, (qi, ei)) in den.iter().enumerate() {
        let others = base
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(CPoly::one(), |acc, (_, q)| &acc * q);
        let term = &(&qi.derivative() * &others) * p;
        out = &out - &term.scale(&crate::gauss::gq_int(*ei as i64, 0));
    }
    out
}

fn bump(den: &Factors) -> Factors {
    den.iter().map(|(q, e)| (q.clone(), e + 1)).collect()
}

/// Scalar rational function with a factored denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn {
    pub num: CPoly,
    pub den: Factors,
}

impl RatFn {
    pub fn new(num: CPoly, den: Factors) -> Self {
        let (num, den) = normalize(num, den);
        RatFn { num, den }
    }

    pub fn poly(p: CPoly) -> Self {
        RatFn {
            num: p,
            den: Vec::new(),
        }
    }

    /// True iff the function vanishes identically (exact).
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn expanded_den(&self) -> CPoly {
        expand(&self.den)
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_empty() {
            return RatFn::poly(self.num.derivative());
        }
        RatFn {
            num: derivative_numerator(&self.num, &self.den),
            den: bump(&self.den),
        }
    }

    pub fn mul(&self, o: &RatFn) -> Self {
        RatFn::new(&self.num * &o.num, merge(&self.den, &o.den))
    }

    pub fn add(&self, o: &RatFn) -> Self {
        let a = self.expanded_den();
        let b = o.expanded_den();
        RatFn::new(&(&self.num * &b) + &(&o.num * &a), merge(&self.den, &o.den))
    }

    /// Lowest terms as `(numerator, monic denominator)`.
    pub fn reduce(&self) -> (CPoly, CPoly) {
        let d = self.expanded_den();
        if self.num.is_zero() {
            return (CPoly::zero(), CPoly::one());
        }
        let g = CPoly::gcd(&self.num, &d);
        let (n, _) = self.num.div_rem(&g);
        let (d, _) = d.div_rem(&g);
        let lead = d.coeffs().last().cloned().unwrap_or_else(GQ::one);
        let inv = GQ::one() / lead;
        (n.scale(&inv), d.scale(&inv))
    }

    pub fn eval_c64(&self, z: C64) -> C64 {
        let d = self.den.iter().fold(C64::new(1.0, 0.0), |acc, (p, e)| {
            acc * p.eval_c64(z).powu(*e)
        });
        self.num.eval_c64(z) / d
    }
}

/// Vector of rational functions over a common factored denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct VRatFn {
    pub nums: Vec<CPoly>,
    pub den: Factors,
}

impl VRatFn {
    pub fn new(nums: Vec<CPoly>, den: Factors) -> Self {
        // Constant factors rescale every numerator identically.
        let (scale, den) = normalize(CPoly::one(), den);
        let c = scale.coeff(0);
        VRatFn {
            nums: nums.iter().map(|p| p.scale(&c)).collect(),
            den,
        }
    }

    pub fn dim(&self) -> usize {
        self.nums.len()
    }

    pub fn component(&self, i: usize) -> RatFn {
        RatFn {
            num: self.nums[i].clone(),
            den: self.den.clone(),
        }
    }

    pub fn expanded_den(&self) -> CPoly {
        expand(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(CPoly::is_zero)
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_empty() {
            return VRatFn {
                nums: self.nums.iter().map(CPoly::derivative).collect(),
                den: Vec::new(),
            };
        }
        VRatFn {
            nums: self
                .nums
                .iter()
                .map(|p| derivative_numerator(p, &self.den))
                .collect(),
            den: bump(&self.den),
        }
    }

    /// Complex-bilinear Euclidean pairing `Σ f_i g_i`.
    pub fn pairing(&self, o: &VRatFn) -> Result<RatFn, CrationalError> {
        if self.dim() != o.dim() {
            return Err(CrationalError::DimensionMismatch(self.dim(), o.dim()));
        }
        let num = self
            .nums
            .iter()
            .zip(&o.nums)
            .fold(CPoly::zero(), |acc, (a, b)| &acc + &(a * b));
        Ok(RatFn {
            num,
            den: merge(&self.den, &o.den),
        })
    }

    pub fn scale(&self, c: &GQ) -> Self {
        VRatFn {
            nums: self.nums.iter().map(|p| p.scale(c)).collect(),
            den: self.den.clone(),
        }
    }

    pub fn eval_c64(&self, z: C64) -> Vec<C64> {
        self.to_float().eval(z)
    }

    pub fn to_float(&self) -> FloatRat {
        FloatRat {
            nums: self.nums.iter().map(CPoly::to_c64_coeffs).collect(),
            den: expand(&self.den).to_c64_coeffs(),
        }
    }
}

/// Double-precision copy of a [`VRatFn`] with expanded denominator, for
/// repeated evaluation and Taylor seeding.
#[derive(Clone, Debug)]
pub struct FloatRat {
    pub nums: Vec<Vec<C64>>,
    pub den: Vec<C64>,
}

fn horner(c: &[C64], z: C64) -> C64 {
    c.iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, a| acc * z + a)
}

impl FloatRat {
    pub fn dim(&self) -> usize {
        self.nums.len()
    }

    pub fn eval(&self, z: C64) -> Vec<C64> {
        let d = horner(&self.den, z);
        self.nums.iter().map(|p| horner(p, z) / d).collect()
    }

    pub fn den_at(&self, z: C64) -> C64 {
        horner(&self.den, z)
    }

    /// Each component composed with the series `t`.
    pub fn at_series(&self, t: &Series) -> Result<Vec<Series>, CrationalError> {
        let d = Series::poly_at(&self.den, t);
        let dinv = d.recip()?;
        Ok(self
            .nums
            .iter()
            .map(|p| Series::poly_at(p, t).mul(&dinv))
            .collect())
    }

    /// Taylor coefficients of each component at `z0`, up to order `order`.
    pub fn taylor(&self, z0: C64, order: usize) -> Result<Vec<Series>, CrationalError> {
        self.at_series(&Series::variable(z0, order))
    }
}

impl Default for RatFn {
    fn default() -> Self {
        RatFn::poly(CPoly::zero())
    }
}
