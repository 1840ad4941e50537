//! Scalar abstraction for operator coefficients.
//!
//! Coefficients are always `Complex<T>`; `T` is the real component type.
//! Integer `T` keeps Gram identities and trace formulas exact, float `T` is
//! used once irrational normalizations or eigenvalues enter.

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, NumCast, Signed, ToPrimitive};

/// Real component type of an operator coefficient.
pub trait Scalar:
    Signed + NumCast + ToPrimitive + Copy + PartialOrd + Debug + Send + Sync + 'static
{
    /// `2^e` in this scalar type.
    fn pow2(e: u32) -> Self {
        <Self as NumCast>::from(1u64 << e).expect("power of two representable")
    }

    /// Lossless-or-nearest conversion from a small signed integer.
    fn from_i64(v: i64) -> Self {
        <Self as NumCast>::from(v).expect("integer representable")
    }
}

impl<T> Scalar for T where
    T: Signed + NumCast + ToPrimitive + Copy + PartialOrd + Debug + Send + Sync + 'static
{
}

/// Floating-point scalars (`f32`, `f64`).
pub trait Real: Scalar + Float {}

impl<T: Scalar + Float> Real for T {}

/// Multiply a complex coefficient by a sign in `{-1, +1}`.
#[inline]
pub fn signed<T: Scalar>(c: Complex<T>, sign: i32) -> Complex<T> {
    if sign < 0 {
        -c
    } else {
        c
    }
}

/// Convert a complex coefficient to another real component type.
pub fn cast_complex<T: Scalar, U: Scalar>(c: Complex<T>) -> Complex<U> {
    Complex::new(
        <U as NumCast>::from(c.re).expect("coefficient representable"),
        <U as NumCast>::from(c.im).expect("coefficient representable"),
    )
}

/// `|c|` as `f64`.
pub fn abs_f64<T: Scalar>(c: Complex<T>) -> f64 {
    let re = c.re.to_f64().unwrap_or(f64::NAN);
    let im = c.im.to_f64().unwrap_or(f64::NAN);
    re.hypot(im)
}

/// Complex conjugate without requiring a `Clone + Num` bound chain at the call site.
#[inline]
pub fn conj<T: Scalar>(c: Complex<T>) -> Complex<T> {
    Complex::new(c.re, -c.im)
}
