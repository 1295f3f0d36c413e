//! Coplanar-waveguide cross-section to per-unit-length line parameters.
//!
//! The center conductor of width `w` sits between two ground planes at gap
//! `s`; conformal mapping gives the geometric capacitance and inductance per
//! length, and the sheet kinetic inductance of the superconducting film adds
//! `L_ksheet / w` in series. For the nanowires considered here the kinetic
//! term dominates by three orders of magnitude.

use crate::constants::{eps0, mu0};
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Coplanar-waveguide cross-section plus film kinetic inductance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpwGeometry<T> {
    /// Center conductor width w (m).
    pub center_width: T,
    /// Gap from center conductor to each ground plane s (m).
    pub gap_to_ground: T,
    /// Relative permittivity of the substrate half-space.
    pub substrate_permittivity: T,
    /// Sheet kinetic inductance of the film (H per square).
    pub sheet_kinetic_inductance: T,
}

impl<T: Real> CpwGeometry<T> {
    pub fn new(
        center_width: T,
        gap_to_ground: T,
        substrate_permittivity: T,
        sheet_kinetic_inductance: T,
    ) -> Result<Self> {
        if !(center_width > T::zero()) {
            return Err(Error::InvalidGeometry("center width must be > 0".into()));
        }
        if !(gap_to_ground > T::zero()) {
            return Err(Error::InvalidGeometry("ground gap must be > 0".into()));
        }
        if !(substrate_permittivity >= T::one()) {
            return Err(Error::InvalidGeometry(
                "substrate permittivity must be >= 1".into(),
            ));
        }
        if !(sheet_kinetic_inductance >= T::zero()) {
            return Err(Error::InvalidGeometry(
                "sheet kinetic inductance must be >= 0".into(),
            ));
        }
        Ok(Self {
            center_width,
            gap_to_ground,
            substrate_permittivity,
            sheet_kinetic_inductance,
        })
    }

    /// Conformal-mapping modulus k = w / (w + 2s).
    pub fn modulus(&self) -> T {
        self.center_width / (self.center_width + real::<T>(2.0) * self.gap_to_ground)
    }
}

/// Per-unit-length transmission-line parameters of the CPW.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams<T> {
    /// C_l (F/m).
    pub capacitance_per_length: T,
    /// L_l (H/m), geometric plus kinetic.
    pub inductance_per_length: T,
    /// Z_c = sqrt(L_l / C_l) (Ω).
    pub characteristic_impedance: T,
    /// ε_eff = (ε_sub + 1) / 2 for a half-space substrate.
    pub effective_permittivity: T,
    /// v_ph = 1 / sqrt(L_l C_l) (m/s).
    pub phase_velocity: T,
}

/// Complete elliptic integral of the first kind K(k), by arithmetic-geometric
/// mean iteration, terminating when the relative change drops below 1e-15.
///
/// Accurate to machine precision for 0 <= k < 1; diverges as k -> 1.
pub fn complete_elliptic_integral_k<T: Real>(modulus: T) -> Result<T> {
    if modulus < T::zero() || modulus >= T::one() {
        return Err(Error::Domain(format!(
            "elliptic modulus must lie in [0, 1), got {}",
            modulus.to_f64_lossy()
        )));
    }
    let mut a = T::one();
    let mut b = (T::one() - modulus * modulus).sqrt();
    let tol = real::<T>(1e-15).max(T::epsilon());
    for _ in 0..64 {
        let next_a = (a + b) * real::<T>(0.5);
        let next_b = (a * b).sqrt();
        let change = (next_a - a).abs();
        a = next_a;
        b = next_b;
        if change <= tol * a {
            break;
        }
    }
    Ok(T::PI() / (real::<T>(2.0) * a))
}

/// Capacitance per length C_l = 2 ε₀ (ε_sub + 1) K(k)/K(k') with
/// k = w/(w + 2s), k' = sqrt(1 - k²).
pub fn cpw_capacitance_per_length<T: Real>(geom: &CpwGeometry<T>) -> T {
    let k = geom.modulus();
    let k_prime = (T::one() - k * k).sqrt();
    let ratio = complete_elliptic_integral_k(k).expect("modulus in [0,1) by construction")
        / complete_elliptic_integral_k(k_prime).expect("complement in (0,1] by construction");
    real::<T>(2.0) * eps0::<T>() * (geom.substrate_permittivity + T::one()) * ratio
}

/// Geometric inductance per length, (μ₀/4) K(k')/K(k).
pub fn geometric_inductance_per_length<T: Real>(geom: &CpwGeometry<T>) -> T {
    let k = geom.modulus();
    let k_prime = (T::one() - k * k).sqrt();
    mu0::<T>() / real::<T>(4.0)
        * (complete_elliptic_integral_k(k_prime).expect("complement in (0,1]")
            / complete_elliptic_integral_k(k).expect("modulus in [0,1)"))
}

/// Kinetic inductance per length, L_ksheet / w.
pub fn kinetic_inductance_per_length<T: Real>(geom: &CpwGeometry<T>) -> T {
    geom.sheet_kinetic_inductance / geom.center_width
}

/// Total series inductance per length, geometric plus kinetic.
pub fn total_inductance_per_length<T: Real>(geom: &CpwGeometry<T>) -> T {
    geometric_inductance_per_length(geom) + kinetic_inductance_per_length(geom)
}

/// Assembles the full per-unit-length parameter set from the cross-section.
pub fn line_params<T: Real>(geom: &CpwGeometry<T>) -> LineParams<T> {
    let c_l = cpw_capacitance_per_length(geom);
    let l_l = total_inductance_per_length(geom);
    LineParams {
        capacitance_per_length: c_l,
        inductance_per_length: l_l,
        characteristic_impedance: (l_l / c_l).sqrt(),
        effective_permittivity: (geom.substrate_permittivity + T::one()) / real::<T>(2.0),
        phase_velocity: T::one() / (l_l * c_l).sqrt(),
    }
}
