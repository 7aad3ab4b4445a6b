//! Constructors of the named q-expansions: Bernoulli numbers, divisor sums,
//! Eisenstein series (straight and twisted), η, Δ, j, F₂ and theta null values.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::series::FracSeries;
use super::{rat, rat_int, Rat};
use crate::Error;

/// Bernoulli number `B_l` with the `B₁ = −1/2` convention.
pub fn bernoulli(l: u32) -> Rat {
    // Recurrence Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m ≥ 1.
    let mut b: Vec<Rat> = Vec::with_capacity(l as usize + 1);
    b.push(Rat::one());
    for m in 1..=l as usize {
        let mut acc = Rat::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(binom.clone()) * bj;
            // C(m+1, j+1) = C(m+1, j)·(m+1−j)/(j+1)
            binom = binom * BigInt::from(m as i64 + 1 - j as i64) / BigInt::from(j as i64 + 1);
        }
        b.push(-acc / Rat::from_integer((m as i64 + 1).into()));
    }
    b[l as usize].clone()
}

/// Divisor power sum σ_l(n) = Σ_{r | n} r^l.
pub fn divisor_sigma(l: u32, n: u64) -> BigInt {
    assert!(n >= 1, "divisor_sigma needs n ≥ 1");
    let mut acc = BigInt::zero();
    let mut r = 1u64;
    while r * r <= n {
        if n % r == 0 {
            acc += BigInt::from(r).pow(l);
            let s = n / r;
            if s != r {
                acc += BigInt::from(s).pow(l);
            }
        }
        r += 1;
    }
    acc
}

/// Integer-exponent Eisenstein series G_{2k}(τ) = −B_{2k}/(4k) + Σ σ_{2k−1}(n) qⁿ.
pub(crate) fn g_series(two_k: u32, order: i64) -> FracSeries {
    assert!(two_k >= 2 && two_k % 2 == 0);
    let k2 = two_k;
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    let constant = -bernoulli(k2) / rat_int(2 * k2 as i64);
    terms.push((0, constant));
    for n in 1..order.max(0) {
        terms.push((n, Rat::from_integer(divisor_sigma(k2 - 1, n as u64))));
    }
    FracSeries::from_terms(1, terms, order)
}

/// G₂ series (quasi-modular weight 2), constant −1/24.
pub fn g2_series(order: i64) -> FracSeries {
    g_series(2, order)
}

/// Eisenstein series, straight or twisted by the sign character (−1)^{κm+λn}.
///
/// For `two_k ≥ 4` the twisted sectors are the absolutely convergent lattice
/// sums, given exactly by sublattice rescalings of G_{2k}:
///
/// * (1,0): `2 G(2τ) − G(τ)`
/// * (0,1): `2^{1−2k} G(τ/2) − G(τ)`
/// * (1,1): `2^{1−2k} G((τ+1)/2) − G(τ)`
///
/// For `two_k = 2` the lattice sum diverges and the regularized weight-2
/// forms are returned, normalized as twice the Laurent data of the thermal
/// 2-point functions (so that `(2,1,1)` is exactly `F₂ = 2G₂(τ) − G₂((τ+1)/2)`,
/// the complex-Weyl energy mean; `(2,1,0)` is twice the Ramond free energy):
///
/// * (1,1): `F₂ = 2G₂(τ) − G₂((τ+1)/2)`
/// * (1,0): `2G₂(τ) − 4G₂(2τ)`
/// * (0,1): `2G₂(τ) − G₂(τ/2)`
pub fn eisenstein_series(two_k: i64, kappa: u8, lambda: u8, order: &Rat) -> crate::Result<FracSeries> {
    if two_k < 2 || two_k % 2 != 0 {
        return Err(Error::OddWeight(two_k));
    }
    let two_k_u = two_k as u32;
    let ord_int = order_ceil(order);
    let g = |n: i64| g_series(two_k_u, n);
    let half = |n: i64| g_series(two_k_u, n).half_shift(); // τ → (τ+1)/2
    let double = |n: i64| g_series(two_k_u, n).scale_exponents(&rat_int(2)); // τ → 2τ
    let halve = |n: i64| g_series(two_k_u, n).scale_exponents(&rat(1, 2)); // τ → τ/2

    let series = match (kappa & 1, lambda & 1) {
        (0, 0) => g(ord_int),
        _ if two_k == 2 => {
            let g2 = g(2 * ord_int).scale(&rat_int(2));
            match (kappa & 1, lambda & 1) {
                (1, 1) => g2.sub(&half(2 * ord_int)),
                (1, 0) => g2.sub(&double(ord_int).scale(&rat_int(4))),
                (0, 1) => g2.sub(&halve(2 * ord_int)),
                _ => unreachable!(),
            }
        }
        (1, 0) => double(ord_int).scale(&rat_int(2)).sub(&g(ord_int)),
        (0, 1) => {
            let w = Rat::new(1.into(), BigInt::from(2).pow(two_k_u - 1));
            halve(2 * ord_int).scale(&w).sub(&g(2 * ord_int))
        }
        (1, 1) => {
            let w = Rat::new(1.into(), BigInt::from(2).pow(two_k_u - 1));
            half(2 * ord_int).scale(&w).sub(&g(2 * ord_int))
        }
        _ => unreachable!(),
    };
    Ok(truncate_to(&series, order))
}

fn order_ceil(order: &Rat) -> i64 {
    let c = order.ceil();
    c.to_integer().to_i64().expect("order fits in i64")
}

fn truncate_to(s: &FracSeries, order: &Rat) -> FracSeries {
    let den = Rat::from_integer(s.exp_den().into());
    let scaled = order * &den;
    let num = scaled.ceil().to_integer().to_i64().expect("order fits");
    s.truncated(num.min(s.order_num()))
}

/// Named one-variable forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedForm {
    Eta,
    Delta,
    J,
    G4_240,
    F2,
}

impl NamedForm {
    pub fn parse(s: &str) -> crate::Result<Self> {
        match s {
            "eta" => Ok(Self::Eta),
            "delta" => Ok(Self::Delta),
            "j" => Ok(Self::J),
            "g4_240" => Ok(Self::G4_240),
            "f2" => Ok(Self::F2),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }
}

/// Dedekind η = q^{1/24} ∏_{n≥1}(1−qⁿ), exact through `order`.
pub fn eta_series(order: &Rat) -> FracSeries {
    let rel = order_ceil(&(order - rat(1, 24)));
    let prod = euler_product(rel.max(0));
    let pref = FracSeries::monomial(24, 1, Rat::one(), 1 + 24 * rel);
    truncate_to(&pref.mul(&prod.rescale(24)), order)
}

/// ∏_{n=1}^{∞}(1−qⁿ) through integer order `rel`.
fn euler_product(rel: i64) -> FracSeries {
    // Pentagonal number theorem: Σ_{k∈ℤ} (−1)^k q^{k(3k−1)/2}.
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    let mut k: i64 = 0;
    loop {
        let e_pos = k * (3 * k - 1) / 2;
        let e_neg = k * (3 * k + 1) / 2;
        if e_pos >= rel && e_neg >= rel && k > 0 {
            break;
        }
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        if e_pos < rel {
            terms.push((e_pos, sign.clone()));
        }
        if k > 0 && e_neg < rel {
            terms.push((e_neg, sign));
        }
        k += 1;
    }
    FracSeries::from_terms(1, terms, rel)
}

/// Δ = η²⁴ = q·∏(1−qⁿ)²⁴, exact through `order`.
pub fn delta_series(order: &Rat) -> FracSeries {
    let rel = order_ceil(order) - 1;
    let p = euler_product(rel.max(1));
    let p24 = p.int_pow(24).expect("power of unit series");
    let shifted = FracSeries::monomial(1, 1, Rat::one(), rel + 1).mul(&p24);
    truncate_to(&shifted, order)
}

/// 240·G₄ = 1 + 240 Σ σ₃(n) qⁿ.
pub fn g4_240_series(order: &Rat) -> FracSeries {
    truncate_to(&g_series(4, order_ceil(order)).scale(&rat_int(240)), order)
}

/// F₂ = 2G₂(τ) − G₂((τ+1)/2), the weight-2 Γ_θ form (constant −1/24).
pub fn f2_series(order: &Rat) -> FracSeries {
    eisenstein_series(2, 1, 1, order).expect("weight 2 is even")
}

/// The modular invariant j = (240G₄)³/Δ = q⁻¹ + 744 + 196884q + … .
pub fn j_series(order: &Rat) -> FracSeries {
    // (240G₄)³/Δ loses one order from the q⁻¹ pole of 1/Δ.
    let work = order + rat_int(2);
    let num = g4_240_series(&work).int_pow(3).expect("cube");
    let den = delta_series(&work).invert().expect("Δ has leading coefficient 1");
    truncate_to(&num.mul(&den), order)
}

/// Dispatch for the named forms.
pub fn named_form_series(name: NamedForm, order: &Rat) -> FracSeries {
    match name {
        NamedForm::Eta => eta_series(order),
        NamedForm::Delta => delta_series(order),
        NamedForm::J => j_series(order),
        NamedForm::G4_240 => g4_240_series(order),
        NamedForm::F2 => f2_series(order),
    }
}

/// Theta null values ϑ_{μν}(0, τ) as exact series on the grid ℤ/8:
///
/// * ϑ₀₀ = 1 + 2Σ q^{n²/2}
/// * ϑ₀₁ = 1 + 2Σ (−1)ⁿ q^{n²/2}
/// * ϑ₁₀ = 2Σ q^{(2n−1)²/8}
/// * ϑ₁₁ = 0
pub fn theta_null_series(mu: u8, nu: u8, order: &Rat) -> FracSeries {
    let ord8 = {
        let scaled = order * rat_int(8);
        scaled.ceil().to_integer().to_i64().expect("order fits")
    };
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    match (mu & 1, nu & 1) {
        (1, 1) => {}
        (1, 0) => {
            let mut n: i64 = 1;
            loop {
                let e = (2 * n - 1) * (2 * n - 1); // (2n−1)²/8 on the ℤ/8 grid
                if e >= ord8 {
                    break;
                }
                terms.push((e, rat_int(2)));
                n += 1;
            }
        }
        (0, par) => {
            terms.push((0, Rat::one()));
            let mut n: i64 = 1;
            loop {
                let e = 4 * n * n; // n²/2 on the ℤ/8 grid
                if e >= ord8 {
                    break;
                }
                let c = if par == 1 && n % 2 == 1 {
                    rat_int(-2)
                } else {
                    rat_int(2)
                };
                terms.push((e, c));
                n += 1;
            }
        }
        _ => unreachable!(),
    }
    FracSeries::from_terms(8, terms, ord8)
}
