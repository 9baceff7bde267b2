//! Reals carried as `mantissa * 2^exponent` with an unbounded exponent.
//!
//! Products like `|a|^(2n)` times a Jacobi value of size `|a|^(-2n)` leave
//! the range of `f64` long before their product does; keeping the exponent
//! in an `i64` lets such products be formed exactly in scale.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg};

use crate::scalar::{c, Real};

/// `mantissa * 2^exponent`, with `|mantissa|` in `[1, 2)` or exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal<T> {
    mantissa: T,
    exponent: i64,
}

/// `x * 2^e`, applied in chunks so intermediate powers stay finite.
pub fn ldexp<T: Real>(mut x: T, mut e: i64) -> T {
    const CHUNK: i64 = 60;
    let up = c::<T>(2f64.powi(CHUNK as i32));
    let down = c::<T>(2f64.powi(-(CHUNK as i32)));
    while e > CHUNK {
        x *= up;
        e -= CHUNK;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -CHUNK {
        x *= down;
        e += CHUNK;
        if x == T::zero() {
            return x;
        }
    }
    x * c::<T>(2.0).powi(e as i32)
}

/// Splits a finite nonzero `x` into `(m, e)` with `x = m 2^e`, `1 <= |m| < 2`.
fn split<T: Real>(x: T) -> (T, i64) {
    let mut e = x.abs().log2().floor().to_i64().unwrap_or(0);
    let mut m = ldexp(x, -e);
    let two = c::<T>(2.0);
    while m.abs() >= two {
        m /= two;
        e += 1;
    }
    while m.abs() < T::one() {
        m *= two;
        e -= 1;
    }
    (m, e)
}

impl<T: Real> ScaledReal<T> {
    pub fn zero() -> Self {
        ScaledReal {
            mantissa: T::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        ScaledReal {
            mantissa: T::one(),
            exponent: 0,
        }
    }

    /// Wraps a plain value. Non-finite inputs are kept as-is in the
    /// mantissa so that [`ScaledReal::is_finite`] reports them.
    pub fn from_real(x: T) -> Self {
        if x == T::zero() || !x.is_finite() {
            return ScaledReal {
                mantissa: if x == T::zero() { T::zero() } else { x },
                exponent: 0,
            };
        }
        let (mantissa, exponent) = split(x);
        ScaledReal { mantissa, exponent }
    }

    /// Builds `m * 2^e` and renormalizes.
    pub fn from_parts(m: T, e: i64) -> Self {
        let mut s = Self::from_real(m);
        if s.mantissa != T::zero() && s.mantissa.is_finite() {
            s.exponent += e;
        }
        s
    }

    pub fn mantissa(&self) -> T {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == T::zero()
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite()
    }

    /// Converts back, overflowing to infinity or underflowing to zero.
    pub fn to_real(&self) -> T {
        ldexp(self.mantissa, self.exponent)
    }

    /// `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> T {
        if self.is_zero() {
            return T::neg_infinity();
        }
        self.mantissa.abs().log2() + c::<T>(self.exponent as f64)
    }

    /// `self^k` by repeated squaring; `k` may be negative.
    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.recip() } else { *self };
        let mut exp = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            exp >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        ScaledReal::from_parts(T::one() / self.mantissa, -self.exponent)
    }

    pub fn abs(&self) -> Self {
        ScaledReal {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiplies by `2^e` exactly.
    pub fn scale2(&self, e: i64) -> Self {
        if self.is_zero() || !self.is_finite() {
            return *self;
        }
        ScaledReal {
            mantissa: self.mantissa,
            exponent: self.exponent + e,
        }
    }
}

impl<T: Real> Mul for ScaledReal<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        ScaledReal::from_parts(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl<T: Real> Add for ScaledReal<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shifted = ldexp(small.mantissa, small.exponent - big.exponent);
        ScaledReal::from_parts(big.mantissa + shifted, big.exponent)
    }
}

impl<T: Real> Neg for ScaledReal<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ScaledReal {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl<T: Real> PartialOrd for ScaledReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let z = T::zero();
        let sa = self.mantissa.partial_cmp(&z)?;
        let sb = other.mantissa.partial_cmp(&z)?;
        if sa != sb || sa == Ordering::Equal {
            return sa.partial_cmp(&sb);
        }
        let by_magnitude = self
            .exponent
            .cmp(&other.exponent)
            .then(self.mantissa.abs().partial_cmp(&other.mantissa.abs())?);
        Some(if sa == Ordering::Greater {
            by_magnitude
        } else {
            by_magnitude.reverse()
        })
    }
}
