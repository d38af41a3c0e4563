//! Simulation and analysis of the Dirac quantum cellular automaton (DQCA)
//! and the coined discrete-time quantum walk (QW) on a one-dimensional
//! lattice.
//!
//! The crate is organised around the walker state [`SpinorField`]:
//!
//! * [`lattice`] holds the state types, constructors and moments.
//! * [`evolution`] holds the step operators, their momentum-space form,
//!   dispersion relations, an exact FFT engine and the Hamiltonian.
//! * [`asymptotics`] holds the weak-limit density and the stationary-phase
//!   approximation together with the exact oscillatory integrals.
//! * [`entanglement`] holds the coin reduced density matrix and entropy.
//!
//! Positions are dimensionless lattice indices and quasi-momenta are the
//! dimensionless `p d / hbar` in `[-pi, pi)`. Physical units only enter
//! through [`LatticeUnits`] in the Hamiltonian.

// `!(x <= y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod entanglement;
mod error;
pub mod evolution;
pub mod lattice;
pub mod matrix;
pub mod quadrature;

pub use error::{Error, Result};

pub use asymptotics::{
    OscillatoryIntegralResult, QuadratureMethod, StationaryPointData, WeakLimitDensity,
};
pub use entanglement::DensityMatrix2;
pub use evolution::{
    BandCoefficients, Dqca, HermitianMatrix2, Meyer, MeyerCoefficients, ModelParams,
    MomentumEigensystem, Qw, UnitaryMatrix2,
};
pub use lattice::{BlochAngles, LatticeUnits, SpinorField};
pub use matrix::Mat2;

/// Complex amplitude type used throughout the crate.
pub type ComplexValue = num_complex::Complex64;
