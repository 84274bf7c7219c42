use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::CrationalError;

/// Arbitrary-precision rational.
pub type Q = BigRational;
/// Exact Gaussian rational `re + i·im`.
pub type GQ = Complex<Q>;
/// Double-precision complex scalar.
pub type C64 = Complex<f64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn gq(re: Q, im: Q) -> GQ {
    Complex::new(re, im)
}

pub fn gq_int(re: i64, im: i64) -> GQ {
    Complex::new(q(re), q(im))
}

pub fn gq_rat(r: Q) -> GQ {
    Complex::new(r, Q::zero())
}

pub fn to_c64(z: &GQ) -> C64 {
    C64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// `[re_num, re_den, im_num, im_den]` as decimal strings.
pub fn quad_to_strings(z: &GQ) -> [String; 4] {
    [
        z.re.numer().to_string(),
        z.re.denom().to_string(),
        z.im.numer().to_string(),
        z.im.denom().to_string(),
    ]
}

pub fn quad_from_strings(s: &[String; 4]) -> Result<GQ, CrationalError> {
    let int = |t: &str| -> Result<BigInt, CrationalError> {
        t.parse::<BigInt>()
            .map_err(|_| CrationalError::Parse(t.to_string()))
    };
    let part = |n: &str, d: &str| -> Result<Q, CrationalError> {
        let d = int(d)?;
        if d.is_zero() {
            return Err(CrationalError::Parse(format!("{n}/0")));
        }
        Ok(Q::new(int(n)?, d))
    };
    Ok(Complex::new(part(&s[0], &s[1])?, part(&s[2], &s[3])?))
}
