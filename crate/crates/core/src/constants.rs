//! Physical constants, CODATA-2018 values.
//!
//! All figure-of-merit numbers in this crate are reproducible because every
//! formula pulls its constants from this single table.

use crate::scalar::Real;

/// Vacuum permittivity ε₀ (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Vacuum permeability μ₀ (H/m).
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;

/// Reduced Planck constant ℏ (J·s).
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// Planck constant h (J·s, exact).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Elementary charge e (C, exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

pub fn eps0<T: Real>() -> T {
    T::from_f64_lossy(VACUUM_PERMITTIVITY)
}

pub fn mu0<T: Real>() -> T {
    T::from_f64_lossy(VACUUM_PERMEABILITY)
}

pub fn hbar<T: Real>() -> T {
    T::from_f64_lossy(REDUCED_PLANCK)
}

pub fn planck<T: Real>() -> T {
    T::from_f64_lossy(PLANCK)
}

pub fn elementary_charge<T: Real>() -> T {
    T::from_f64_lossy(ELEMENTARY_CHARGE)
}
