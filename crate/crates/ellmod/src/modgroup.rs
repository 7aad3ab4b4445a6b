//! Exact SL(2,ℤ) machinery: Möbius actions, fundamental-domain reduction,
//! congruence-subgroup membership, and index/genus/dimension formulas.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::qseries::Rat;

/// A 2×2 integer matrix of determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> crate::Result<Self> {
        let m = Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if m.det() != BigInt::one() {
            return Err(crate::Error::InvalidInput(format!(
                "determinant {} ≠ 1",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1).unwrap()
    }

    /// The inversion S = (0, −1; 1, 0).
    pub fn s() -> Self {
        Self::new(0, -1, 1, 0).unwrap()
    }

    /// The translation T = (1, 1; 0, 1).
    pub fn t() -> Self {
        Self::new(1, 1, 0, 1).unwrap()
    }

    /// T^n.
    pub fn t_pow(n: i64) -> Self {
        Self {
            a: BigInt::one(),
            b: n.into(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// Möbius action τ ↦ (aτ+b)/(cτ+d) on the upper half plane.
    pub fn act(&self, tau: Complex64) -> Complex64 {
        let a = big_to_f64(&self.a);
        let b = big_to_f64(&self.b);
        let c = big_to_f64(&self.c);
        let d = big_to_f64(&self.d);
        (a * tau + b) / (c * tau + d)
    }

    /// The automorphy denominator cτ+d.
    pub fn cocycle(&self, tau: Complex64) -> Complex64 {
        big_to_f64(&self.c) * tau + big_to_f64(&self.d)
    }

    /// Mod-2 action on p-function indices: (κ,λ) ↦ ([aκ+bλ]₂, [cκ+dλ]₂).
    pub fn index_act(&self, kappa: u8, lambda: u8) -> (u8, u8) {
        let two = BigInt::from(2);
        let k = ((&self.a * kappa + &self.b * lambda) % &two + &two) % &two;
        let l = ((&self.c * kappa + &self.d * lambda) % &two + &two) % &two;
        (k.to_u8().unwrap(), l.to_u8().unwrap())
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::MAX)
}

/// Congruence subgroups recognized by [`subgroup_member`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupId {
    /// Γ(1) = SL(2,ℤ).
    Full,
    /// Γ(N): γ ≡ 1 mod N.
    PrincipalN(u64),
    /// Γ₀(N): c ≡ 0 mod N.
    Gamma0N(u64),
    /// Γ_θ: ac and bd both even (generated by S and T²).
    Theta,
}

/// Exact congruence-condition membership test.
pub fn subgroup_member(g: &UnimodularMatrix, id: SubgroupId) -> bool {
    if g.det() != BigInt::one() {
        return false;
    }
    match id {
        SubgroupId::Full => true,
        SubgroupId::PrincipalN(n) => {
            let n = BigInt::from(n);
            let one = BigInt::one();
            ((&g.a - &one) % &n).is_zero()
                && (&g.b % &n).is_zero()
                && (&g.c % &n).is_zero()
                && ((&g.d - &one) % &n).is_zero()
        }
        SubgroupId::Gamma0N(n) => {
            let n = BigInt::from(n);
            (&g.c % &n).is_zero()
        }
        SubgroupId::Theta => {
            let two = BigInt::from(2);
            ((&g.a * &g.c) % &two).is_zero() && ((&g.b * &g.d) % &two).is_zero()
        }
    }
}

/// One reduction step recorded in the word returned by [`reduce_fundamental`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    S,
    TPow(i64),
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Step::S => write!(f, "S"),
            Step::TPow(n) => write!(f, "T^{}", n),
        }
    }
}

/// Result of a fundamental-domain reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Representative in D: |Re τ*| ≤ 1/2, |τ*| ≥ 1 (ties per the conventions
    /// Re ∈ [−1/2, 1/2) and Re ≤ 0 on the unit circle).
    pub tau_star: Complex64,
    /// Matrix with τ* = γτ.
    pub gamma: UnimodularMatrix,
    /// The steps applied, left-to-right composition equal to γ.
    pub word: Vec<Step>,
}

const BOUNDARY_TOL: f64 = 1e-12;

/// Reduce τ ∈ 𝔥 to the standard fundamental domain by the T/S loop.
pub fn reduce_fundamental(tau: Complex64) -> Reduction {
    assert!(tau.im > 0.0, "τ must lie in the upper half plane");
    let mut t = tau;
    let mut gamma = UnimodularMatrix::identity();
    let mut word: Vec<Step> = Vec::new();
    for _ in 0..10_000 {
        let n = t.re.round();
        if n != 0.0 {
            t -= n;
            let step = UnimodularMatrix::t_pow(-(n as i64));
            gamma = step.mul(&gamma);
            word.push(Step::TPow(-(n as i64)));
        }
        let norm = t.norm_sqr();
        if norm < 1.0 - BOUNDARY_TOL {
            t = -1.0 / t;
            gamma = UnimodularMatrix::s().mul(&gamma);
            word.push(Step::S);
            continue;
        }
        // Tie-breaking: Re ∈ [−1/2, 1/2); on |τ| = 1 prefer Re ≤ 0.
        if (t.re - 0.5).abs() < BOUNDARY_TOL {
            t -= 1.0;
            gamma = UnimodularMatrix::t_pow(-1).mul(&gamma);
            word.push(Step::TPow(-1));
            continue;
        }
        if (norm - 1.0).abs() < BOUNDARY_TOL && t.re > BOUNDARY_TOL {
            t = -1.0 / t;
            gamma = UnimodularMatrix::s().mul(&gamma);
            word.push(Step::S);
            continue;
        }
        break;
    }
    Reduction {
        tau_star: t,
        gamma,
        word,
    }
}

/// Exact fundamental-domain reduction for τ with rational real and imaginary parts.
pub fn reduce_fundamental_exact(re: &Rat, im: &Rat) -> (Rat, Rat, UnimodularMatrix, Vec<Step>) {
    assert!(im > &Rat::zero(), "τ must lie in the upper half plane");
    let mut x = re.clone();
    let mut y = im.clone();
    let mut gamma = UnimodularMatrix::identity();
    let mut word: Vec<Step> = Vec::new();
    let half = Rat::new(1.into(), 2.into());
    loop {
        // Translate Re into [−1/2, 1/2).
        let n = (&x + &half).floor().to_integer();
        if !n.is_zero() {
            x -= Rat::from_integer(n.clone());
            let ni = n.to_i64().expect("translation fits i64");
            gamma = UnimodularMatrix::t_pow(-ni).mul(&gamma);
            word.push(Step::TPow(-ni));
        }
        let norm = &x * &x + &y * &y;
        if norm < Rat::one() || (norm == Rat::one() && x > Rat::zero()) {
            // Apply S: τ → −1/τ = (−x + iy)/(x²+y²).
            x = -&x / &norm;
            y = &y / &norm;
            gamma = UnimodularMatrix::s().mul(&gamma);
            word.push(Step::S);
            continue;
        }
        break;
    }
    (x, y, gamma, word)
}

/// Topological data (index μ, cusp count ν∞, genus g) of Γ(N).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaNData {
    pub index: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu_inf: u64,
    pub genus: u64,
}

/// Index, cusps and genus of the principal congruence subgroup Γ(N).
///
/// `index` is the index in SL(2,ℤ), μ = N³∏_{p|N}(1−p⁻²). The cusp count and
/// genus use the projective index μ̄ (= μ/2 for N > 2, since −1 ∉ Γ(N) then):
/// ν∞ = μ̄/N and g = 1 + μ̄/12 − ν∞/2, giving g = 0 for N ≤ 5, g(6) = 1,
/// g(7) = 3, g(8) = 5.
pub fn gamma_n_data(n: u64) -> GammaNData {
    assert!(n >= 1);
    if n == 1 {
        return GammaNData {
            index: 1,
            nu2: 1,
            nu3: 1,
            nu_inf: 1,
            genus: 0,
        };
    }
    // μ = N³ ∏_{p|N} (1 − p⁻²), computed exactly.
    let mut mu = Rat::from_integer(BigInt::from(n).pow(3));
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            mu *= Rat::one() - Rat::new(1.into(), BigInt::from(p).pow(2));
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        mu *= Rat::one() - Rat::new(1.into(), BigInt::from(m).pow(2));
    }
    let index = mu.to_integer().to_u64().expect("index is a positive integer");
    let proj_index = if n > 2 { index / 2 } else { index };
    let nu_inf = proj_index / n;
    // g = 1 + μ̄/12 − ν₂/4 − ν₃/3 − ν∞/2 with ν₂ = ν₃ = 0 for N ≥ 2.
    let genus_rat = Rat::one() + Rat::new(proj_index.into(), 12.into())
        - Rat::new(nu_inf.into(), 2.into());
    let genus = genus_rat.to_integer().to_u64().expect("genus is a non-negative integer");
    GammaNData {
        index,
        nu2: 0,
        nu3: 0,
        nu_inf,
        genus,
    }
}

/// Dimension of the space of modular forms of even weight 2k from
/// topological data (genus g, cusps ν∞, elliptic counts ν₂, ν₃).
pub fn dim_forms(two_k: i64, g: i64, nu_inf: i64, nu2: i64, nu3: i64) -> u64 {
    assert!(two_k % 2 == 0, "weight must be even");
    let k = two_k / 2;
    if k < 0 {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    let d = (2 * k - 1) * (g - 1)
        + nu_inf * k
        + num_integer::Integer::div_floor(&(k * nu2), &2)
        + num_integer::Integer::div_floor(&(2 * k * nu3), &3);
    d.max(0) as u64
}
