//! Interpolation by matrix-valued polynomials that carry a symmetry on the
//! imaginary axis: Hermitian (even), skew-Hermitian (odd), `J`-Hermitian,
//! positive semidefinite (GPE) or fixed-inertia (nuGPE) values on `i*R`.
//!
//! The solver follows a three-stage recipe:
//!
//! 1. a minimal-degree structured interpolant `P` from a block-Vandermonde
//!    system over the reduced node set ([`interp`]),
//! 2. a family of neutral polynomials `Psi` vanishing at every node,
//!    parameterized by a matrix `M` ([`neutral`]),
//! 3. a threshold `beta_hat` such that `F = P + beta * Psi` lands in the
//!    requested class for every admissible `beta` ([`beta`]).
//!
//! The [`poly`] module provides the underlying matrix-polynomial arithmetic
//! (evaluation, the `#`-adjoint `F^#(s) = F^*(-s^*)`, McMillan degree) and
//! [`symmetry`] the class definitions together with sampled membership
//! sweeps along the imaginary axis.

pub mod beta;
pub mod grid;
pub mod interp;
pub mod linalg;
pub mod neutral;
pub mod poly;
pub mod symmetry;

pub use beta::{
    assemble, beta_hat_gpe, beta_hat_nugpe, beta_hat_refined, block_diagonalize, gpe_family,
    nugpe_norm_bound, BetaCertificate, BetaError, BlockSplit, FamilyMode, InterpolantFamily,
    Refinement,
};
pub use grid::{Exclusions, GridSpec};
pub use interp::{
    check_feasible, reduce_data, solve_structured, solve_unstructured, InterpError,
    InterpolationProblem, ReducedData, Violation,
};
pub use neutral::{build_neutral, default_m_param, normalize_spectral, NeutralError, NeutralPolynomial};
pub use poly::{MatrixPolynomial, PolyError, C64, CMatrix};
pub use symmetry::{
    gpe_sweep, is_even, is_odd, nugpe_sweep, satisfies_general_ab, SweepReport, SymmetryClass,
    SymmetryError,
};
