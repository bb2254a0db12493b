//! Heisenberg matrix mechanics for a single particle in a one-dimensional
//! infinite square well `[0, L]`, plus a second-quantized layer for many
//! non-interacting particles in the same well.
//!
//! Every observable is a matrix in the energy eigenbasis `Ψ_n(x) = √(2/L) sin(nπx/L)`,
//! truncated to the first `N` modes. States are static and operators carry
//! the time dependence. Truncation artifacts (the zero trace of `[x, p]`,
//! edge defects in `p²`) are reported rather than hidden.
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! Modules:
//!
//! - [`well`]: configuration, spectrum, eigenfunctions and closed-form
//!   position/momentum matrix elements.
//! - [`operator`]: dense complex operator matrices, time evolution,
//!   commutators and the canonical-commutator diagnostics.
//! - [`dynamics`]: states, expectation values, force matrix, Ehrenfest and
//!   spreading reports, revival time.
//! - [`fock`]: occupation-number basis, ladder operators, field operators
//!   and densities.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration used for projections
//!   and integrated checks.

#![no_std]

extern crate alloc;

pub mod dynamics;
mod error;
pub mod fock;
pub mod operator;
pub mod quadrature;
pub mod well;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `|z|`, usable without `std`.
pub fn modulus(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

pub use dynamics::{
    dispersion, ehrenfest_report, expectation, force_matrix, gaussian_packet, revival_time,
    short_time_expansion_check, spread_report, xt_x0_commutator, ReportKind, ReportRow,
    RunReport, ShortTimeResiduals, StateVector, TimeGrid,
};
pub use fock::{
    annihilator, check_algebra, condensate_state, creator, density_expectation, field_operator,
    heisenberg_field, many_body_hamiltonian, AlgebraReport, FockBasis, FockOperator, FockState,
    Statistics,
};
pub use operator::{
    build_hamiltonian, build_momentum, build_position, canonical_commutator_report, commutator,
    evolve, hamilton_derivative, CommutatorReport, InteriorBlockSpec, OperatorMatrix,
};
pub use well::{
    eigen_energy, eigenfunction, mode_frequency, momentum_element, position_element, wavenumber,
    ModeIndex, WellConfig,
};
