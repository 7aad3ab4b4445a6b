//! Crate-wide error type.

use thiserror::Error;

/// Every failure mode of the library, one variant per contract error.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Series inversion requires a nonzero lowest-order coefficient.
    #[error("cannot invert a series whose lowest-order coefficient is zero")]
    InvertZeroLeading,
    /// `principal_root` needs leading coefficient 1 (or an exact rational root).
    #[error("leading coefficient has no rational {0}-th root")]
    RootNotRational(u32),
    /// Series comparison requested beyond the truncation order of an operand.
    #[error("series not defined through the requested order (defined to {0})")]
    InsufficientOrder(String),
    /// Eisenstein series exist only for even weight.
    #[error("Eisenstein weight must be even, got {0}")]
    OddWeight(i64),
    /// Unknown or unsupported model identifier.
    #[error("unknown model: {0}")]
    UnknownModel(String),
    /// Lattice operations need a positive definite Gram matrix.
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    /// Even-lattice operations need even diagonal norms.
    #[error("lattice is not even (some |α|² is odd)")]
    NotEven,
    /// Discriminant-group machinery needs a nondegenerate Gram matrix.
    #[error("Gram matrix is degenerate")]
    DegenerateGram,
    /// Evaluation at a lattice point of the pole set.
    #[error("evaluation point lies on the period lattice (pole)")]
    PoleAtLatticePoint,
    /// Chemical-potential twist breaks the geometric tail decay.
    #[error("chemical potential too large: |e^{{±2πiμ}} q| does not decay")]
    NonconvergentMu,
    /// Kinematics on the thermal pole set ζ ± α ∈ ℤ.
    #[error("kinematic configuration lies on the pole set")]
    PoleKinematics,
    /// Requested tolerance unreachable within the precision budget.
    #[error("requested tolerance {0} not reachable")]
    NonconvergentTolerance(f64),
    /// Matrix outside the subgroup a form is covariant under.
    #[error("matrix is outside the form's covariance subgroup {0}")]
    WrongSubgroup(String),
    /// Curve point does not satisfy the active curve equation.
    #[error("point is not on the curve")]
    NotOnCurve,
    /// Discriminant vanishes: the Weierstrass cubic is singular.
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    /// Quartic reduction requires distinct roots.
    #[error("repeated root among the quartic roots")]
    RepeatedRoot,
    /// sn evaluation hit a pole of p₁¹¹.
    #[error("pole encountered in sn evaluation")]
    PoleEncountered,
    /// Laurent extraction condition number exceeded the tolerance.
    #[error("Laurent extraction unstable: condition estimate {0:.3e}")]
    ExtractionUnstable(f64),
    /// Moving-frame construction degenerates for (anti)parallel unit vectors.
    #[error("unit vectors are collinear; frame decomposition degenerates")]
    CollinearVectors,
    /// Degeneracy table queried outside the model's spectrum.
    #[error("energy level {0} outside the model's spectrum")]
    OutOfSpectrum(String),
    /// Cocycle closure left the enumeration window.
    #[error("cocycle window too small: triple products escape the window")]
    WindowTooSmall,
    /// N=2 superconformal labels outside the allowed (l, m) range.
    #[error("invalid N=2 labels (l={0}, m={1})")]
    InvalidLabels(i64, i64),
    /// Numerical quadrature failed to reach its target accuracy.
    #[error("quadrature failed: estimated error {0:.3e}")]
    QuadratureFailure(f64),
    /// Malformed input that does not fit a more specific variant.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
