//! Frequency-domain transmission-line network simulation and design toolkit
//! for high-impedance superconducting nanowire resonators: coplanar-waveguide
//! line parameters, multiport S-parameters of distributed/lumped networks,
//! resonance extraction, bias-line leakage sweeps, and quantum-transducer
//! figures of merit.
//!
//! The numeric core is generic over the scalar type through [`scalar::Real`]
//! (`f64` or `f32`); the `*64` aliases below fix the default precision.

pub mod acsolver;
pub mod constants;
pub mod cpwgeom;
pub mod error;
pub mod netlist;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{linspace, Real, C};

/// Default-precision aliases.
pub type CpwGeometry64 = cpwgeom::CpwGeometry<f64>;
pub type LineParams64 = cpwgeom::LineParams<f64>;
pub type CircuitGraph64 = netlist::CircuitGraph<f64>;
pub type CoupledResonatorParams64 = netlist::CoupledResonatorParams<f64>;
pub type SParameterSweep64 = acsolver::SParameterSweep<f64>;
pub type ComplexFrequency64 = acsolver::ComplexFrequency<f64>;
