//! Exact arithmetic of truncated Puiseux/Laurent series in `q` over
//! arbitrary-precision rationals, and constructors for every q-expansion the
//! library needs: Eisenstein series (including the twisted sectors), η, Δ, j,
//! theta null values, partition functions and thermal energy means.
//!
//! All exponents are integers over a per-series denominator (the library needs
//! denominators 2, 3, 8, 24, 48); mixed arithmetic rescales to the lcm.
//! Coefficients are exact [`Rat`] values, or [`UnitPoly`] Laurent polynomials
//! in `y = e^{2πiμ}` for two-variable characters.

mod forms;
mod partition;
mod series;
mod unitpoly;

pub use forms::{
    bernoulli, delta_series, divisor_sigma, eisenstein_series, eta_series, f2_series,
    g2_series, g4_240_series, j_series, named_form_series, theta_null_series, NamedForm,
};
pub use partition::{
    energy_mean_series, mode_spectrum, partition_series, EnergyModel, Mode, PartitionModel,
};
pub use series::{BiSeries, Coeff, FracSeries, Series, SeriesCmp};
pub use unitpoly::UnitPoly;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Convenience: build a `Rat` from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Convenience: build an integer `Rat`.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(num.into())
}
