//! Floating-point abstraction shared by the numerical modules.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar the walk, entropy and quadrature code is generic over.
///
/// Implemented for `f32` and `f64`. Tolerances quoted throughout the crate
/// assume `f64`; for narrower types they are widened to a small multiple of
/// the type's epsilon (see [`tolerance`]).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
#[inline]
pub fn c<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in scalar type")
}

/// Converts an integer count into `T`.
#[inline]
pub fn n<T: Real>(x: usize) -> T {
    T::from_usize(x).expect("usize representable in scalar type")
}

/// `max(requested, 64 ε)`: the requested f64 tolerance, widened for
/// scalar types whose rounding unit makes it unreachable.
#[inline]
pub fn tolerance<T: Real>(requested: f64) -> T {
    c::<T>(requested).max(T::epsilon() * c(64.0))
}

/// Error-free `x*x = hi + lo` via fused multiply-add.
#[inline]
pub(crate) fn square_exact<T: Real>(x: T) -> (T, T) {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (hi, lo)
}

/// Neumaier-compensated sum.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(terms: I) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Sum of terms taken in descending order of magnitude, compensated.
pub fn sum_descending<T: Real>(mut terms: Vec<T>) -> T {
    terms.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap_or(std::cmp::Ordering::Equal));
    compensated_sum(terms)
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, carrying about twice
/// the precision of `T`. Used where alternating sums cancel many digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFold<T> {
    pub hi: T,
    pub lo: T,
}

#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum<T: Real>(a: T, b: T) -> TwoFold<T> {
    let s = a + b;
    TwoFold { hi: s, lo: b - (s - a) }
}

impl<T: Real> TwoFold<T> {
    pub fn new(x: T) -> Self {
        TwoFold { hi: x, lo: T::zero() }
    }

    pub fn zero() -> Self {
        Self::new(T::zero())
    }

    pub fn to_real(self) -> T {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < T::zero() {
            -self
        } else {
            self
        }
    }

    pub fn powi(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::new(T::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<T: Real> std::ops::Neg for TwoFold<T> {
    type Output = Self;
    fn neg(self) -> Self {
        TwoFold {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl<T: Real> std::ops::Add for TwoFold<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }
}

impl<T: Real> std::ops::Sub for TwoFold<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> std::ops::Mul for TwoFold<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.hi * rhs.hi;
        let e = self.hi.mul_add(rhs.hi, -p);
        quick_two_sum(p, e + (self.hi * rhs.lo + self.lo * rhs.hi))
    }
}

impl<T: Real> std::ops::Div for TwoFold<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Self::new(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Self::new(q2);
        let q3 = r.hi / rhs.hi;
        quick_two_sum(q1, q2) + Self::new(q3)
    }
}
