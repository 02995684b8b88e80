//! Numerical laboratory for Maxwell fields on the exterior static region of
//! Reissner-Nordström-de Sitter black holes.
//!
//! The crate computes the black-hole geometry (horizon radii, photon sphere,
//! tortoise coordinate, mode potential, trapping term), evolves spin-
//! component modes in 1+1 dimensions, and measures the energy functionals
//! whose conservation laws, trapping identities, and decay bounds the
//! analysis rests on.
//!
//! Layout:
//!
//! - [`geometry`]: horizon function, roots, photon sphere, r ↔ r* map,
//!   potential and trapping term, generic-horizon validation;
//! - [`harmonics`]: mode indices, angular eigenvalues and coupling constants;
//! - [`fields`]: grids, initial profiles, per-mode states, stress-energy
//!   algebra, snapshot format;
//! - [`evolution`]: leapfrog wave solver, RK4 Maxwell solver, trajectories,
//!   Lie-derivative trajectories, CSV export;
//! - [`diagnostics`]: energies, conformal quantities, identity residuals,
//!   hypersurface fluxes, decay fits, Hardy checks;
//! - [`oracles`]: independent references (companion-matrix quartic solver,
//!   method-of-characteristics wave, refined quadrature, deformation-tensor
//!   identity) used to validate everything else.

pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod fields;
pub mod geometry;
pub mod harmonics;
pub mod oracles;
mod stencil;

pub use error::{Error, Result};
pub use evolution::{
    cfl_dt, evolve_maxwell, evolve_wave, Boundary, EnergyRecord, EvolutionConfig,
    MaxwellTrajectory, WaveTrajectory,
};
pub use fields::{
    make_maxwell_state, make_wave_state, Grid, MaxwellModeState, Profile, WaveModeState,
};
pub use geometry::{
    generic_f_validate, horizon_roots, photon_sphere, rw_coefficients, validate_params,
    AdmissibilityReport, BlackHoleParams, GeometryMap, HorizonData, HorizonRoots,
};
pub use harmonics::{coupling_constants, laplacian_eigenvalue, poincare_gap, ModeIndex};
