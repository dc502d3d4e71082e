//! Three-state discrete-time quantum walks on the line.
//!
//! A walker with internal states (L, S, R) hops left, stays, or hops right
//! each step after a 3×3 unitary coin acts on its internal state. Whether the
//! evolution operator keeps a k-independent eigenvalue — and therefore traps
//! part of the walker near the origin forever — depends entirely on the coin.
//! This crate classifies coins by that property, constructs the two complete
//! localizing coin families, and computes the physics that follows from them:
//!
//! - [`coins`]: the U(3) parametrization, the two localizing families `C1`
//!   and `C2`, and an analytic classifier for arbitrary unitary coins;
//! - [`spectrum`]: the momentum-space evolution operator, Brillouin-zone
//!   eigenvalue scans, and dispersion relations ω(k);
//! - [`kinematics`]: group and peak velocities, the cusp curve, per-family
//!   velocity maxima;
//! - [`trapping`]: stationary states, residue integrals, and closed-form
//!   asymptotic trapping probabilities, gated by a quadrature oracle;
//! - [`simulator`]: direct position-space evolution, the independent check
//!   for everything above;
//! - [`linalg`]: minimal complex 3×3 machinery including a unitary
//!   eigensolver;
//! - [`cli`]: the command-line front end (`coin`, `scan`, `simulate`,
//!   `verify`).

pub mod cli;
pub mod coins;
pub mod kinematics;
pub mod linalg;
pub mod simulator;
pub mod spectrum;
pub mod trapping;

pub use coins::{
    build_c1, build_c2, build_unitary, classify_coin, compute_minors, extract_dispersion_params,
    C1Params, C2Params, Classification, CoinClass, CoinParams, UnitaryCoin,
};
pub use kinematics::{
    c1_cusp_curve, c1_dispersion_params, c1_vmax, c2_dispersion_params, c2_vmax, group_velocity,
    peak_velocity, DispersionParams, PeakMethod, PeakVelocityResult,
};
pub use linalg::{eigensystem, is_unitary, mat_mul, CoinAxis, Complex, EigenSystem, Mat3C, Vec3C};
pub use simulator::{
    decay_exponent, simulate, simulate_on_lattice, Initial, SimulationSummary, WalkState,
};
pub use spectrum::{
    dispersion_omega, evolution_at_k, spectral_scan, verify_dispersion, SpectralScan,
};
pub use trapping::{
    limiting_amplitudes, norm_factors, p_infinity_closed, p_infinity_quadrature, residue_integrals,
    stationary_state, FamilyParams, NormFactors, ResidueIntegrals, TrappingResult,
};

use std::f64::consts::{PI, TAU};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Newton polishing of a characteristic root did not reach tolerance.
    #[error("eigenvalue polishing did not converge")]
    NonConvergence,
    /// Null-space extraction failed even after the repeated-root fallback.
    #[error("degenerate eigenvector extraction failed")]
    DegenerateEigenvector,
    /// Input matrix is not unitary within the requested tolerance.
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    /// C2 family parameters violate |sin κ| ≤ |sin(δ+κ)| or sin(δ+κ) = 0.
    #[error(
        "invalid C2 parameters: need |sin kappa| <= |sin(delta+kappa)| and sin(delta+kappa) != 0"
    )]
    InvalidC2Params,
    /// Coin diagonal does not have the point-spectrum form C_LL = C_RR*, mu real.
    #[error("coin inconsistent with point-spectrum form: {0}")]
    InconsistentCoin(&'static str),
    /// Argument left the domain of an inverse trig function.
    #[error("argument {0} outside domain")]
    DomainError(f64),
    /// Group velocity requested at (or within 1e-12 of) a band edge.
    #[error("band edge: |rho cos(k-gamma) - mu| within 1e-12 of 1")]
    BandEdge,
    /// Eigenvalue continuity matching across the Brillouin zone failed.
    #[error("eigenvalue track matching failed")]
    TrackingFailure,
    /// Stationary-state norm vanishes somewhere: a ≤ 2|b|.
    #[error("pole on integration contour: a <= 2|b| (a={a}, b={b})")]
    PoleOnContour { a: f64, b: f64 },
    /// Closed-form trapping amplitudes disagree with the defining integral.
    #[error("closed form {closed} vs quadrature {quadrature} beyond 1e-8")]
    ClosedFormMismatch { closed: f64, quadrature: f64 },
    /// The light cone reached the truncated lattice boundary.
    #[error("light cone reached lattice boundary")]
    LatticeOverflow,
    /// Origin-probability residual is numerically zero; nothing to fit.
    #[error("origin-probability residual below 1e-14; nothing to fit")]
    InsufficientSignal,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Wraps an angle into (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}
