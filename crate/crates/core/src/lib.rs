//! Curvature verification toolkit for the 13-dimensional Berger space
//! B¹³ = SU(5)/(Sp(2)×T¹).
//!
//! The crate constructs the relevant Lie algebras inside su(5) from their
//! defining equations, realizes the isometric conjugations σ, ρ and ξ,
//! splits the tangent model m into the σ-eigenspaces V⁺/V⁻, computes
//! sectional curvature through the normal-homogeneous bracket formula, and
//! certifies the curvature extrema 29/4 and 4/37 (pinching 16/1073) by
//! multi-start optimization over 2-planes. Exact integer arithmetic for the
//! cohomology orders r_p = 4p−1 and s_p = 8p²−4p+1 lives in [`topology`].
//!
//! Modules mirror the pipeline: [`mat`] (5×5 complex arithmetic and
//! subspaces), [`lie`] (algebra construction), [`involution`] (σ/ρ/ξ and
//! the transport/rigidity reports), [`curvature`], [`pinch`] (optimizer),
//! [`topology`], and [`report`] (aggregated machine-readable verdict).

pub mod curvature;
pub mod involution;
pub mod lie;
pub mod mat;
pub mod pinch;
pub mod report;
pub mod topology;

use thiserror::Error;

/// Errors shared across the toolkit's modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Generator or algebra indices outside their documented ranges.
    #[error("invalid index for generator {kind}: ({k}, {l})")]
    InvalidIndex { kind: char, k: usize, l: usize },

    /// Invalid parameters for a named algebra (e.g. t1_p with p = 0).
    #[error("invalid algebra parameters: {0}")]
    InvalidAlgebra(String),

    /// Gram-Schmidt input vector lies (to tolerance) in the span of its
    /// predecessors.
    #[error("rank-deficient input: vector {index} is within tolerance of the span of its predecessors")]
    RankDeficient { index: usize },

    /// A subspace expected to be contained in an ambient space is not.
    #[error("containment failure: {0}")]
    Containment(String),

    /// A matrix expected inside a given subspace has a large residual.
    #[error("vector not in subspace {space}: residual {residual:.3e}")]
    NotInSubspace { space: &'static str, residual: f64 },

    /// `sectional` requires an orthonormal pair; normalization is the
    /// caller's job.
    #[error("inputs are not an orthonormal pair (residual {residual:.3e}); use plane_curvature for general spanning pairs")]
    NotOrthonormal { residual: f64 },

    /// Spanning pair is numerically collinear.
    #[error("degenerate plane: Gram determinant {det:.3e} below 1e-12")]
    DegeneratePlane { det: f64 },

    /// Conjugation matrix failed its defining validation (unitarity or
    /// Sp(2) membership), which signals a transcription bug.
    #[error("conjugation validation failed: {0}")]
    BadConjugation(String),

    /// `eigensplit` requires the map to restrict to an involution of the
    /// subspace.
    #[error("map does not restrict to an involution of the subspace: {0}")]
    NotInvolution(String),

    /// Every optimizer start failed to converge.
    #[error("optimization failed: no start converged")]
    OptimizationFailed,

    /// A reported extremum is inconsistent with an observed evaluation.
    #[error("extremum soundness violated: {0}")]
    UnsoundExtremum(String),

    /// Integer-order arithmetic overflowed 64 bits.
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    /// Malformed interchange data (matrix or plane JSON).
    #[error("malformed {what}: field `{field}` {problem}")]
    Malformed {
        what: &'static str,
        field: String,
        problem: String,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Tolerance for algebraic identities (brackets, projections, eigensplits).
pub const TOL_ALGEBRAIC: f64 = 1e-10;
/// Tolerance for the `is_*` matrix predicates.
pub const TOL_PREDICATE: f64 = 1e-12;
/// Singular-value threshold separating true zeros from genuine directions
/// in rank decisions.
pub const TOL_RANK: f64 = 1e-8;
/// Tolerance for curvature values checked against their exact rationals.
pub const TOL_CURVATURE: f64 = 1e-9;
