//! Multiprecision complex numbers on top of MPFR floats.
//!
//! Only the field operations the Euler-product algebra needs are provided;
//! transcendental work on the complex plane is done in double precision by
//! the analytic engine.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rug::Float;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// `2^{-bits}` as an f64 (bits may exceed the f64 exponent range, in which case 0).
pub fn pow2_neg(bits: i64) -> f64 {
    if bits > 1074 {
        0.0
    } else {
        2f64.powi(-(bits as i32))
    }
}

/// Threshold `2^{-(precision - slack)}` used by every exact-identity check.
pub fn identity_threshold(precision: u32, slack: u32) -> f64 {
    pow2_neg(precision as i64 - slack as i64)
}

#[derive(Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        MpComplex::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        MpComplex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        MpComplex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        MpComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::with_val(re.prec(), 0);
        MpComplex { re, im }
    }

    /// `e^{iθ}` with θ given in double precision (the angle itself is exact).
    pub fn from_phase(prec: u32, theta: f64) -> Self {
        let t = Float::with_val(prec, theta);
        let (s, c) = t.sin_cos(Float::new(prec));
        MpComplex { re: c, im: s }
    }

    /// `r e^{iθ}` with modulus and angle supplied as MPFR values.
    pub fn from_polar(modulus: &Float, theta: &Float) -> Self {
        let prec = modulus.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        MpComplex {
            re: Float::with_val(prec, &c * modulus),
            im: Float::with_val(prec, &s * modulus),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn conj(&self) -> Self {
        MpComplex {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut n = Float::with_val(prec, self.re.square_ref());
        n += Float::with_val(prec, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.hypot_ref(&self.im))
    }

    pub fn scale(&self, factor: &Float) -> Self {
        let prec = self.prec();
        MpComplex {
            re: Float::with_val(prec, &self.re * factor),
            im: Float::with_val(prec, &self.im * factor),
        }
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let n = self.norm_sqr();
        MpComplex {
            re: Float::with_val(prec, &self.re / &n),
            im: Float::with_val(prec, -Float::with_val(prec, &self.im / &n)),
        }
    }

    pub fn powu(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MpComplex::one(self.prec());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, k: i32) -> Self {
        if k >= 0 {
            self.powu(k as u32)
        } else {
            self.recip().powu(k.unsigned_abs())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `|self - other|` rounded to f64.
    pub fn dist(&self, other: &MpComplex) -> f64 {
        (self - other).abs().to_f64()
    }

    /// Decimal rendering of both parts with `digits` significant digits.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (float_to_decimal(&self.re, digits), float_to_decimal(&self.im, digits))
    }
}

/// Number of decimal digits that faithfully represent `bits` binary digits.
pub fn decimal_digits_for(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

pub fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a> Add<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &'a MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        MpComplex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &'a MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        MpComplex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &'a MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        let ac = Float::with_val(prec, &self.re * &rhs.re);
        let bd = Float::with_val(prec, &self.im * &rhs.im);
        let ad = Float::with_val(prec, &self.re * &rhs.im);
        let bc = Float::with_val(prec, &self.im * &rhs.re);
        MpComplex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl<'a> Div<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn div(self, rhs: &'a MpComplex) -> MpComplex {
        self * &rhs.recip()
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        let prec = self.prec();
        MpComplex {
            re: Float::with_val(prec, -&self.re),
            im: Float::with_val(prec, -&self.im),
        }
    }
}

impl Add for MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: MpComplex) -> MpComplex {
        &self + &rhs
    }
}

impl Sub for MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: MpComplex) -> MpComplex {
        &self - &rhs
    }
}

impl Mul for MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: MpComplex) -> MpComplex {
        &self * &rhs
    }
}

impl AddAssign<&MpComplex> for MpComplex {
    fn add_assign(&mut self, rhs: &MpComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&MpComplex> for MpComplex {
    fn sub_assign(&mut self, rhs: &MpComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&MpComplex> for MpComplex {
    fn mul_assign(&mut self, rhs: &MpComplex) {
        *self = &*self * rhs;
    }
}
