//! Laurent polynomials in the unimodular variable `y = q_μ = e^{2πiμ}`,
//! used as the coefficient ring of two-variable partition functions.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::Rat;
use crate::Error;

/// A finite Laurent polynomial Σ c_k y^k with exact rational coefficients.
///
/// No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnitPoly {
    terms: BTreeMap<i64, Rat>,
}

impl UnitPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    /// The monomial `c·y^k`.
    pub fn monomial(k: i64, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// True when no terms are stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `y^k` (zero when absent).
    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterate `(power, coefficient)` in increasing power order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let entry = terms.entry(ka + kb).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Multiplicative inverse, defined only for monomials `c·y^k` (c ≠ 0).
    pub fn inv(&self) -> crate::Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::InvertZeroLeading);
        }
        let (k, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(-k, c.recip()))
    }

    /// Evaluate at `y = e^{2πiμ}`.
    pub fn eval(&self, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| y.powi(*k as i32) * rat_to_f64(c))
            .sum()
    }
}

/// Lossy conversion of an exact rational to `f64` (used only in the numeric lane).
pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Denormal-range fallback: divide as big floats via string round-trip.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}
