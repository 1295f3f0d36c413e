//! Scalar abstraction: the numeric core is generic over the float width.

use num_complex::Complex;

/// Floating-point scalar the solver and the design formulas are generic over.
///
/// `f64` backs every type alias exported at the crate root and is what the
/// CLI uses. `f32` is available for quick coarse scans; resolving kHz-scale
/// decay rates on 10 GHz modes genuinely needs `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Conversion from `f64`, used for physical constants and parsed input.
    fn from_f64_lossy(x: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(x).expect("finite f64 converts to scalar")
    }

    /// Conversion to `f64`, used for reporting and error payloads.
    fn to_f64_lossy(self) -> f64;
}

impl Real for f32 {
    fn to_f64_lossy(self) -> f64 {
        f64::from(self)
    }
}

impl Real for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

/// Complex value over the chosen scalar.
pub type C<T> = Complex<T>;

/// Shorthand for converting an `f64` literal into the generic scalar.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64_lossy(x)
}

/// Evenly spaced grid of `n >= 2` points from `start` to `stop` inclusive.
pub fn linspace<T: Real>(start: T, stop: T, n: usize) -> Vec<T> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![start];
    }
    let step = (stop - start) / real::<T>((n - 1) as f64);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                stop
            } else {
                start + step * real::<T>(i as f64)
            }
        })
        .collect()
}
