//! Exact partition functions and thermal energy-mean series for the free-field
//! models: mode spectra, Gibbs sums, and the two-variable (chemical-potential)
//! Neveu-Schwarz/Ramond products.

use num_traits::{One, ToPrimitive};

use super::series::{BiSeries, FracSeries};
use super::unitpoly::UnitPoly;
use super::{eta_series, rat, rat_int, Rat};
use crate::Error;

/// Partition-function models (two-variable, `y = e^{2πiμ}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionModel {
    /// Z_NS as the mode product q^{−1/24}∏(1+y⁻¹q^{n−1/2})(1+y q^{n−1/2}).
    WeylNsProduct,
    /// Z_NS as ϑ(μ,τ)/η(τ) (triple-product counterpart of `WeylNsProduct`).
    WeylNsTheta,
    /// Ramond-sector product, returned as y^{1/2}·Z_R = q^{1/12}(1+y)∏(1+y⁻¹qⁿ)(1+yqⁿ)
    /// so that all `y` powers stay integral.
    WeylR,
    /// Ising (Majorana–Weyl) Neveu-Schwarz sector q^{−1/48}∏(1+q^{n−1/2}).
    IsingNs,
    /// Ising Ramond sector q^{1/24}∏(1+qⁿ).
    IsingR,
}

impl PartitionModel {
    pub fn parse(s: &str) -> crate::Result<Self> {
        match s {
            "weyl_NS_product" => Ok(Self::WeylNsProduct),
            "weyl_NS_theta" => Ok(Self::WeylNsTheta),
            "weyl_R" => Ok(Self::WeylR),
            "ising_NS" => Ok(Self::IsingNs),
            "ising_R" => Ok(Self::IsingR),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }
}

fn order_num_on(order: &Rat, den: i64) -> i64 {
    (order * rat_int(den))
        .ceil()
        .to_integer()
        .to_i64()
        .expect("order fits in i64")
}

/// Exact two-variable partition series of the given model through `order`.
pub fn partition_series(model: PartitionModel, order: &Rat) -> BiSeries {
    match model {
        PartitionModel::WeylNsProduct => {
            let den = 24;
            let ord = order_num_on(order, den);
            // Relative order past the q^{−1/24} prefactor, in 1/24 steps.
            let rel = ord + 1;
            let mut acc = BiSeries::one(den, rel);
            let mut n: i64 = 1;
            while 12 * (2 * n - 1) < rel {
                let k = 12 * (2 * n - 1);
                for ypow in [-1i64, 1] {
                    let factor = BiSeries::from_terms(
                        den,
                        [
                            (0, UnitPoly::constant(Rat::one())),
                            (k, UnitPoly::monomial(ypow, Rat::one())),
                        ],
                        rel,
                    );
                    acc = acc.mul(&factor);
                }
                n += 1;
            }
            let pref = BiSeries::monomial(den, -1, UnitPoly::constant(Rat::one()), ord + 1);
            pref.mul(&acc).truncated(ord)
        }
        PartitionModel::WeylNsTheta => {
            let work = order + rat_int(2);
            let eta_inv = eta_series(&work).invert().expect("η starts with q^{1/24}");
            // ϑ(μ,τ) = Σ_n q^{n²/2} yⁿ on the ℤ/2 grid.
            let ord2 = order_num_on(&work, 2);
            let mut terms: Vec<(i64, UnitPoly)> = vec![(0, UnitPoly::constant(Rat::one()))];
            let mut n: i64 = 1;
            while n * n < ord2 {
                terms.push((
                    n * n,
                    UnitPoly::monomial(n, Rat::one()).add(&UnitPoly::monomial(-n, Rat::one())),
                ));
                n += 1;
            }
            let theta = BiSeries::from_terms(2, terms, ord2);
            let prod = theta.mul(&BiSeries::from_frac(&eta_inv));
            prod.truncated(order_num_on(order, prod.exp_den()))
        }
        PartitionModel::WeylR => {
            let den = 12;
            let ord = order_num_on(order, den);
            let rel = ord - 1; // past the q^{1/12} prefactor
            let mut acc = BiSeries::from_terms(
                den,
                [
                    (0, UnitPoly::constant(Rat::one())),
                    (0, UnitPoly::monomial(1, Rat::one())),
                ],
                rel.max(0),
            );
            let mut n: i64 = 1;
            while 12 * n < rel {
                for ypow in [-1i64, 1] {
                    let factor = BiSeries::from_terms(
                        den,
                        [
                            (0, UnitPoly::constant(Rat::one())),
                            (12 * n, UnitPoly::monomial(ypow, Rat::one())),
                        ],
                        rel,
                    );
                    acc = acc.mul(&factor);
                }
                n += 1;
            }
            let pref = BiSeries::monomial(den, 1, UnitPoly::constant(Rat::one()), ord);
            pref.mul(&acc).truncated(ord)
        }
        PartitionModel::IsingNs => {
            let den = 48;
            let ord = order_num_on(order, den);
            let rel = ord + 1;
            let mut acc = FracSeries::one(den, rel);
            let mut n: i64 = 1;
            while 24 * (2 * n - 1) < rel {
                let factor = FracSeries::from_terms(
                    den,
                    [(0, Rat::one()), (24 * (2 * n - 1), Rat::one())],
                    rel,
                );
                acc = acc.mul(&factor);
                n += 1;
            }
            let pref = FracSeries::monomial(den, -1, Rat::one(), ord + 1);
            BiSeries::from_frac(&pref.mul(&acc).truncated(ord))
        }
        PartitionModel::IsingR => {
            let den = 24;
            let ord = order_num_on(order, den);
            let rel = ord - 1;
            let mut acc = FracSeries::one(den, rel.max(0));
            let mut n: i64 = 1;
            while 24 * n < rel {
                let factor =
                    FracSeries::from_terms(den, [(0, Rat::one()), (24 * n, Rat::one())], rel);
                acc = acc.mul(&factor);
                n += 1;
            }
            let pref = FracSeries::monomial(den, 1, Rat::one(), ord);
            BiSeries::from_frac(&pref.mul(&acc).truncated(ord))
        }
    }
}

/// Free-field models with a mode spectrum and an exact thermal energy mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyModel {
    /// Complex chiral Weyl fermion; mean = F₂.
    ChiralWeyl,
    /// Majorana–Weyl (Ising) NS sector; mean = F₂/2.
    IsingNs,
    /// Ising Ramond sector; mean = G₂(τ) − 2G₂(2τ).
    IsingR,
    /// D=4 massless scalar; mean (with E₀ = 1/240 included) = G₄.
    Scalar4,
    /// Canonical d=3/2 Weyl field; E₀ = −17/960.
    Weyl4Canonical,
    /// Subcanonical d=1/2 Weyl field; E₀ = 29/960.
    Weyl4Subcanonical,
    /// Free Maxwell field; mean = 2G₄ − 2G₂ (vacuum constant 11/120).
    Maxwell,
    /// Longitudinal (gauge) modes; mean = 2G₄ + 2G₂ (constant −3/40).
    GaugeLongitudinal,
    /// Maxwell plus gauge modes; mean = 4G₄ (constant 1/60).
    MaxwellPlusGauge,
}

impl EnergyModel {
    pub fn parse(s: &str) -> crate::Result<Self> {
        match s {
            "chiral_weyl" => Ok(Self::ChiralWeyl),
            "ising_NS" => Ok(Self::IsingNs),
            "ising_R" => Ok(Self::IsingR),
            "scalar4" => Ok(Self::Scalar4),
            "weyl4_canonical" => Ok(Self::Weyl4Canonical),
            "weyl4_subcanonical" => Ok(Self::Weyl4Subcanonical),
            "maxwell" => Ok(Self::Maxwell),
            "gauge_longitudinal" => Ok(Self::GaugeLongitudinal),
            "maxwell_plus_gauge" => Ok(Self::MaxwellPlusGauge),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }

    /// Vacuum (zero-point) constant included in the energy mean.
    pub fn vacuum_energy(&self) -> Rat {
        match self {
            Self::ChiralWeyl => rat(-1, 24),
            Self::IsingNs => rat(-1, 48),
            Self::IsingR => rat(1, 24),
            Self::Scalar4 => rat(1, 240),
            Self::Weyl4Canonical => rat(-17, 960),
            Self::Weyl4Subcanonical => rat(29, 960),
            Self::Maxwell => rat(11, 120),
            Self::GaugeLongitudinal => rat(-3, 40),
            Self::MaxwellPlusGauge => rat(1, 60),
        }
    }
}

/// One excitation level of a mode spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mode {
    /// Level in half-integer units: energy = `level_x2`/2.
    pub level_x2: i64,
    /// Number of modes at this level (all charges counted).
    pub degeneracy: i64,
    /// Fermi (true) or Bose (false) statistics.
    pub fermi: bool,
}

/// The mode spectrum of a model up to energy `max_level_x2/2` inclusive.
pub fn mode_spectrum(model: EnergyModel, max_level_x2: i64) -> Vec<Mode> {
    let mut out = Vec::new();
    match model {
        EnergyModel::ChiralWeyl | EnergyModel::IsingNs => {
            let d = if model == EnergyModel::ChiralWeyl { 2 } else { 1 };
            let mut k = 1; // levels n − 1/2
            while k <= max_level_x2 {
                out.push(Mode { level_x2: k, degeneracy: d, fermi: true });
                k += 2;
            }
        }
        EnergyModel::IsingR => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                out.push(Mode { level_x2: 2 * n, degeneracy: 1, fermi: true });
                n += 1;
            }
        }
        EnergyModel::Scalar4 => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                out.push(Mode { level_x2: 2 * n, degeneracy: n * n, fermi: false });
                n += 1;
            }
        }
        EnergyModel::Weyl4Canonical => {
            let mut n = 0; // levels n + 3/2
            while 2 * n + 3 <= max_level_x2 {
                out.push(Mode {
                    level_x2: 2 * n + 3,
                    degeneracy: 2 * (n + 1) * (n + 2),
                    fermi: true,
                });
                n += 1;
            }
        }
        EnergyModel::Weyl4Subcanonical => {
            let mut n = 0; // levels n + 1/2
            while 2 * n + 1 <= max_level_x2 {
                out.push(Mode {
                    level_x2: 2 * n + 1,
                    degeneracy: 2 * (3 * n * (n + 1) + 2),
                    fermi: true,
                });
                n += 1;
            }
        }
        EnergyModel::Maxwell => {
            let mut n = 2; // n = 1 carries d = 0
            while 2 * n <= max_level_x2 {
                out.push(Mode { level_x2: 2 * n, degeneracy: 2 * (n * n - 1), fermi: false });
                n += 1;
            }
        }
        EnergyModel::GaugeLongitudinal => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                out.push(Mode { level_x2: 2 * n, degeneracy: 2 * (n * n + 1), fermi: false });
                n += 1;
            }
        }
        EnergyModel::MaxwellPlusGauge => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                out.push(Mode { level_x2: 2 * n, degeneracy: 4 * n * n, fermi: false });
                n += 1;
            }
        }
    }
    out
}

/// Exact thermal energy mean Σ ℓ·d(ℓ)·q^ℓ/(1 ∓ q^ℓ) plus the vacuum constant,
/// through integer order `order` (series on the ℤ/2 exponent grid).
pub fn energy_mean_series(model: EnergyModel, order: i64) -> FracSeries {
    let ord2 = 2 * order;
    let mut terms: Vec<(i64, Rat)> = vec![(0, model.vacuum_energy())];
    for mode in mode_spectrum(model, ord2) {
        let weight = rat(mode.level_x2 * mode.degeneracy, 2);
        // q^ℓ/(1−q^ℓ) = Σ_j q^{ℓj};  q^ℓ/(1+q^ℓ) = Σ_j (−1)^{j−1} q^{ℓj}.
        let mut j = 1;
        while mode.level_x2 * j < ord2 {
            let sign = if mode.fermi && j % 2 == 0 { -Rat::one() } else { Rat::one() };
            terms.push((mode.level_x2 * j, &weight * sign));
            j += 1;
        }
    }
    FracSeries::from_terms(2, terms, ord2)
}
