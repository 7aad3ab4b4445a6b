//! Generic truncated series in `q` with exponents on the grid `ℤ/den` and
//! coefficients in an exact ring (`Rat` or `UnitPoly`).

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::json;

use super::unitpoly::rat_to_f64;
use super::{Rat, UnitPoly};
use crate::Error;

/// Coefficient ring abstraction shared by one- and two-variable series.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse where defined (leading coefficients only).
    fn inv_ref(&self) -> crate::Result<Self>;
    /// Multiplication by an exact rational scalar.
    fn scale_rat(&self, r: &Rat) -> Self;
    /// JSON form per the serialization schema.
    fn to_json(&self) -> serde_json::Value;
}

impl Coeff for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        Rat::from_integer(1.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> crate::Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::InvertZeroLeading);
        }
        Ok(self.recip())
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        self * r
    }
    fn to_json(&self) -> serde_json::Value {
        json!(format!("{}", self))
    }
}

impl Coeff for UnitPoly {
    fn zero() -> Self {
        UnitPoly::zero()
    }
    fn one() -> Self {
        UnitPoly::constant(<Rat as Coeff>::one())
    }
    fn is_zero(&self) -> bool {
        UnitPoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn inv_ref(&self) -> crate::Result<Self> {
        self.inv()
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .iter()
            .map(|(k, c)| (k.to_string(), json!(format!("{}", c))))
            .collect();
        json!({ "y_terms": map })
    }
}

/// Truncated series Σ c_k q^{k/den}, known exactly for exponents `< order`.
///
/// Invariants: every stored key `k` satisfies `k < order_num`; no stored
/// coefficient is zero; `den ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff> {
    den: i64,
    terms: BTreeMap<i64, C>,
    order_num: i64,
}

/// One-variable series with exact rational coefficients.
pub type FracSeries = Series<Rat>;
/// Two-variable series: rational coefficients in `y = e^{2πiμ}` per q-power.
pub type BiSeries = Series<UnitPoly>;

/// Result of an exact comparison of two series through a given order.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesCmp<C> {
    Equal,
    Mismatch { exponent: Rat, lhs: C, rhs: C },
}

impl<C: Coeff> Series<C> {
    /// The zero series on the grid `ℤ/den`, known through `order_num/den`.
    pub fn zero(den: i64, order_num: i64) -> Self {
        assert!(den >= 1, "exponent denominator must be positive");
        Self {
            den,
            terms: BTreeMap::new(),
            order_num,
        }
    }

    /// The constant series 1.
    pub fn one(den: i64, order_num: i64) -> Self {
        Self::monomial(den, 0, C::one(), order_num)
    }

    /// The single term `c·q^{k/den}`.
    pub fn monomial(den: i64, k: i64, c: C, order_num: i64) -> Self {
        let mut s = Self::zero(den, order_num);
        if !c.is_zero() && k < order_num {
            s.terms.insert(k, c);
        }
        s
    }

    /// Build from `(key, coeff)` pairs on the grid `ℤ/den`.
    pub fn from_terms(
        den: i64,
        terms: impl IntoIterator<Item = (i64, C)>,
        order_num: i64,
    ) -> Self {
        let mut s = Self::zero(den, order_num);
        for (k, c) in terms {
            if k < order_num {
                s.add_term(k, c);
            }
        }
        s
    }

    fn add_term(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Exponent denominator `den`.
    pub fn exp_den(&self) -> i64 {
        self.den
    }

    /// Truncation order as an exact rational.
    pub fn order(&self) -> Rat {
        Rat::new(self.order_num.into(), self.den.into())
    }

    /// Truncation order numerator on the grid `ℤ/den`.
    pub fn order_num(&self) -> i64 {
        self.order_num
    }

    /// Leading (lowest) exponent numerator, or the order when no term is stored.
    pub fn leading_num(&self) -> i64 {
        self.terms
            .keys()
            .next()
            .copied()
            .unwrap_or(self.order_num)
    }

    /// Coefficient of `q^e`; zero when absent below the order, `None` beyond it.
    pub fn coeff(&self, e: &Rat) -> Option<C> {
        if e >= &self.order() {
            return None;
        }
        let scaled = e * Rat::from_integer(self.den.into());
        if !scaled.is_integer() {
            return Some(C::zero());
        }
        let k: i64 = num_traits::ToPrimitive::to_i64(&scaled.to_integer())?;
        Some(self.terms.get(&k).cloned().unwrap_or_else(C::zero))
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (Rat, &C)> {
        let den = self.den;
        self.terms
            .iter()
            .map(move |(k, c)| (Rat::new((*k).into(), den.into()), c))
    }

    /// Iterate raw `(key, coefficient)` pairs on the grid `ℤ/den`.
    pub fn iter_raw(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Rescale to a denominator that is a multiple of the current one.
    pub fn rescale(&self, new_den: i64) -> Self {
        assert!(new_den % self.den == 0, "new denominator must be a multiple");
        let f = new_den / self.den;
        Self {
            den: new_den,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            order_num: self.order_num.saturating_mul(f),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let den = self.den.lcm(&other.den);
        (self.rescale(den), other.rescale(den))
    }

    /// Drop all terms with exponent ≥ `order_num/den` and lower the order.
    pub fn truncated(&self, order_num: i64) -> Self {
        let order_num = order_num.min(self.order_num);
        Self {
            den: self.den,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| **k < order_num)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            order_num,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let order_num = a.order_num.min(b.order_num);
        let mut out = Self::zero(a.den, order_num);
        for (k, c) in a.terms.into_iter().chain(b.terms) {
            if k < order_num {
                out.add_term(k, c);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            den: self.den,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
            order_num: self.order_num,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, r: &Rat) -> Self {
        if Zero::is_zero(r) {
            return Self::zero(self.den, self.order_num);
        }
        Self {
            den: self.den,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.scale_rat(r)))
                .collect(),
            order_num: self.order_num,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        // Knowing a through O_a and b from exponent l_b yields the product
        // through min(O_a + l_b, O_b + l_a).
        let order_num = (a.order_num + b.leading_num()).min(b.order_num + a.leading_num());
        let mut out = Self::zero(a.den, order_num);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                if k < order_num {
                    out.add_term(k, ca.mul_ref(cb));
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero (invertible) leading coefficient.
    pub fn invert(&self) -> crate::Result<Self> {
        let lead = *self.terms.keys().next().ok_or(Error::InvertZeroLeading)?;
        let a0 = self.terms.get(&lead).unwrap().clone();
        let a0_inv = a0.inv_ref()?;
        // Relative precision: n coefficients past the leading one.
        let n = (self.order_num - lead).max(0) as usize;
        // Dense relative coefficients a[d] = coeff of q^{(lead+d)/den} / leading part.
        let mut a_rel = vec![C::zero(); n];
        for (k, c) in &self.terms {
            let d = (*k - lead) as usize;
            if d < n {
                a_rel[d] = c.clone();
            }
        }
        let mut b_rel = vec![C::zero(); n];
        if n > 0 {
            b_rel[0] = a0_inv.clone();
            for d in 1..n {
                let mut acc = C::zero();
                for j in 1..=d {
                    if !a_rel[j].is_zero() && !b_rel[d - j].is_zero() {
                        acc = acc.add_ref(&a_rel[j].mul_ref(&b_rel[d - j]));
                    }
                }
                b_rel[d] = a0_inv.mul_ref(&acc).neg_ref();
            }
        }
        let order_num = self.order_num - 2 * lead;
        let mut out = Self::zero(self.den, order_num);
        for (d, c) in b_rel.into_iter().enumerate() {
            out.add_term(-lead + d as i64, c);
        }
        Ok(out)
    }

    /// Integer power by repeated squaring (negative powers via inversion).
    pub fn int_pow(&self, n: i64) -> crate::Result<Self> {
        if n == 0 {
            return Ok(Self::one(self.den, self.order_num));
        }
        let (mut base, exp) = if n < 0 {
            (self.invert()?, (-n) as u64)
        } else {
            (self.clone(), n as u64)
        };
        let mut result: Option<Self> = None;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result.unwrap())
    }

    /// Exact comparison through `through` (exclusive of nothing: exponents < through).
    pub fn series_equal(&self, other: &Self, through: &Rat) -> crate::Result<SeriesCmp<C>> {
        if &self.order() < through || &other.order() < through {
            let got = self.order().min(other.order());
            return Err(Error::InsufficientOrder(format!("{}", got)));
        }
        let (a, b) = self.aligned(other);
        let lim_scaled = through * Rat::from_integer(a.den.into());
        let mut keys: Vec<i64> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            if Rat::from_integer(k.into()) >= lim_scaled {
                break;
            }
            let ca = a.terms.get(&k).cloned().unwrap_or_else(C::zero);
            let cb = b.terms.get(&k).cloned().unwrap_or_else(C::zero);
            if ca != cb {
                return Ok(SeriesCmp::Mismatch {
                    exponent: Rat::new(k.into(), a.den.into()),
                    lhs: ca,
                    rhs: cb,
                });
            }
        }
        Ok(SeriesCmp::Equal)
    }

    /// Substitute `q → q^m` for a positive rational `m` (τ → mτ).
    pub fn scale_exponents(&self, m: &Rat) -> Self {
        assert!(m > &<Rat as Zero>::zero());
        let mn: i64 = num_traits::ToPrimitive::to_i64(m.numer()).expect("scale numerator");
        let md: i64 = num_traits::ToPrimitive::to_i64(m.denom()).expect("scale denominator");
        let den = self.den * md;
        Self {
            den,
            terms: self.terms.iter().map(|(k, c)| (k * mn, c.clone())).collect(),
            order_num: self.order_num * mn,
        }
    }

    /// JSON per the schema `{"exp_den": N, "terms": [[k, coeff]…], "order": "a/b"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!([k, c.to_json()]))
            .collect();
        json!({
            "exp_den": self.den,
            "terms": terms,
            "order": format!("{}", self.order()),
        })
    }
}

impl FracSeries {
    /// Substitute τ → (τ+1)/2 on an integer-exponent series:
    /// `c·qⁿ → c·(−1)ⁿ·q^{n/2}`.
    pub fn half_shift(&self) -> Self {
        assert_eq!(self.den, 1, "half_shift needs integer exponents");
        Self {
            den: 2,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, if k % 2 == 0 { c.clone() } else { -c }))
                .collect(),
            order_num: self.order_num,
        }
    }

    /// Principal n-th root of a series with leading coefficient 1.
    pub fn principal_root(&self, n: u32) -> crate::Result<Self> {
        assert!(n >= 1);
        let lead = *self
            .terms
            .keys()
            .next()
            .ok_or(Error::RootNotRational(n))?;
        let c0 = self.terms.get(&lead).unwrap();
        if c0 != &<Rat as Coeff>::one() {
            return Err(Error::RootNotRational(n));
        }
        let nn = n as i64;
        // Relative part g with f = q^{lead/den}(1+g); binomial series (1+g)^{1/n}.
        let rel_order = self.order_num - lead;
        let mut g = Self::zero(self.den, rel_order);
        for (k, c) in &self.terms {
            if *k != lead {
                g.add_term(k - lead, c.clone());
            }
        }
        let inv_n = Rat::new(1.into(), (nn).into());
        let mut acc = Self::one(self.den, rel_order);
        let mut term = Self::one(self.den, rel_order);
        let mut j: i64 = 0;
        loop {
            j += 1;
            // binom(1/n, j) = binom(1/n, j-1)·(1/n − (j−1))/j
            let factor =
                (&inv_n - Rat::from_integer((j - 1).into())) / Rat::from_integer(j.into());
            term = term.mul(&g).scale(&factor);
            if term.terms.is_empty() || term.leading_num() >= rel_order {
                break;
            }
            acc = acc.add(&term);
        }
        // Shift exponents: result exponents (lead + d·n)/(den·n).
        let den = self.den * nn;
        let mut out = Self::zero(den, lead + rel_order * nn);
        for (d, c) in acc.terms {
            out.add_term(lead + d * nn, c);
        }
        Ok(out)
    }

    /// Evaluate at `q^{1/den} = e^{2πiτ/den}` (principal fractional powers in τ).
    pub fn eval_tau(&self, tau: Complex64) -> Complex64 {
        let w = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau
            / Complex64::new(self.den as f64, 0.0))
        .exp();
        self.terms
            .iter()
            .map(|(k, c)| w.powi(*k as i32) * rat_to_f64(c))
            .sum()
    }
}

impl BiSeries {
    /// Evaluate at `q^{1/den} = e^{2πiτ/den}`, `y = e^{2πiμ}`.
    pub fn eval_tau_mu(&self, tau: Complex64, mu: Complex64) -> Complex64 {
        let w = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau
            / Complex64::new(self.den as f64, 0.0))
        .exp();
        let y = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * mu).exp();
        self.terms
            .iter()
            .map(|(k, c)| w.powi(*k as i32) * c.eval(y))
            .sum()
    }

    /// Specialize `y = 1` (μ = 0), collapsing to a one-variable series.
    pub fn at_y_one(&self) -> FracSeries {
        let mut out = FracSeries::zero(self.den, self.order_num);
        for (k, poly) in &self.terms {
            let mut total = <Rat as Coeff>::zero();
            for (_, c) in poly.iter() {
                total += c;
            }
            out.add_term(*k, total);
        }
        out
    }

    /// Promote a one-variable series to constant-in-`y` coefficients.
    pub fn from_frac(s: &FracSeries) -> Self {
        let mut out = BiSeries::zero(s.den, s.order_num);
        for (k, c) in &s.terms {
            out.add_term(*k, UnitPoly::constant(c.clone()));
        }
        out
    }
}
