//! Numeric evaluation of modular forms with geometric tail control, plus
//! covariance residuals (including the G₂ anomaly and theta characters).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elliptic::eisenstein_num;
use crate::modgroup::{subgroup_member, SubgroupId, UnimodularMatrix};
use crate::qseries::Rat;
use crate::Error;

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest tolerance reachable in the f64 precision budget.
const TOL_FLOOR: f64 = 1e-15;

/// Identifier of a numerically evaluable form.
#[derive(Clone, Debug, PartialEq)]
pub enum FormId {
    /// G_{2k}(τ).
    Eisenstein(u32),
    /// Twisted sector G_{2k}^{κλ}; weight 2 uses the regularized forms.
    EisensteinTwisted(u32, u8, u8),
    /// Non-holomorphic weight-2 completion G₂*(τ) = G₂(τ) + 1/(8π Im τ).
    G2Star,
    /// F₂ = 2G₂(τ) − G₂((τ+1)/2), weight 2 under Γ_θ.
    F2,
    /// Dedekind η with the principal branch q^{1/24} = e^{2πiτ/24}.
    Eta,
    /// Δ = q·∏(1−qⁿ)²⁴.
    Delta,
    /// Modular invariant j = (240G₄)³/Δ.
    J,
    /// Lattice theta Θ_Q(τ) = Σ_x q^{½xᵀAx} for an even Gram matrix A.
    LatticeTheta(Vec<Vec<i64>>),
}

/// Evaluate a form at τ with truncation tail below `tol`.
pub fn form_eval(f: &FormId, tau: Complex64, tol: f64) -> crate::Result<Complex64> {
    assert!(tau.im > 0.0, "τ must lie in the upper half plane");
    if tol < TOL_FLOOR {
        return Err(Error::NonconvergentTolerance(tol));
    }
    Ok(match f {
        FormId::Eisenstein(two_k) => eisenstein_num(*two_k, tau),
        FormId::EisensteinTwisted(two_k, kappa, lambda) => {
            twisted_eisenstein_num(*two_k, *kappa, *lambda, tau)
        }
        FormId::G2Star => eisenstein_num(2, tau) + 1.0 / (8.0 * PI * tau.im),
        FormId::F2 => 2.0 * eisenstein_num(2, tau) - eisenstein_num(2, (tau + 1.0) / 2.0),
        FormId::Eta => eta_num(tau, tol),
        FormId::Delta => delta_num(tau, tol),
        FormId::J => {
            let g4 = 240.0 * eisenstein_num(4, tau);
            g4 * g4 * g4 / delta_num(tau, tol)
        }
        FormId::LatticeTheta(gram) => lattice_theta_num(gram, tau, tol)?,
    })
}

/// Twisted G_{2k}^{κλ} by sublattice rescaling (weight ≥ 4), or the
/// regularized weight-2 combinations (matching the exact series in qseries).
fn twisted_eisenstein_num(two_k: u32, kappa: u8, lambda: u8, tau: Complex64) -> Complex64 {
    assert!(two_k >= 2 && two_k % 2 == 0);
    let g = |t: Complex64| eisenstein_num(two_k, t);
    match (kappa & 1, lambda & 1) {
        (0, 0) => g(tau),
        _ if two_k == 2 => {
            let g2 = 2.0 * g(tau);
            match (kappa & 1, lambda & 1) {
                (1, 1) => g2 - g((tau + 1.0) / 2.0),
                (1, 0) => g2 - 4.0 * g(2.0 * tau),
                (0, 1) => g2 - g(tau / 2.0),
                _ => unreachable!(),
            }
        }
        (1, 0) => 2.0 * g(2.0 * tau) - g(tau),
        (0, 1) => 2f64.powi(1 - two_k as i32) * g(tau / 2.0) - g(tau),
        (1, 1) => 2f64.powi(1 - two_k as i32) * g((tau + 1.0) / 2.0) - g(tau),
        _ => unreachable!(),
    }
}

/// ∏_{n≥1}(1−qⁿ), truncated when the geometric tail falls below `tol`.
fn euler_product_num(tau: Complex64, tol: f64) -> Complex64 {
    let q = (2.0 * PI * I * tau).exp();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..100_000 {
        qn *= q;
        acc *= 1.0 - qn;
        if qn.norm() < tol * (1.0 - q.norm()).max(1e-3) {
            break;
        }
    }
    acc
}

fn eta_num(tau: Complex64, tol: f64) -> Complex64 {
    (2.0 * PI * I * tau / 24.0).exp() * euler_product_num(tau, tol)
}

fn delta_num(tau: Complex64, tol: f64) -> Complex64 {
    let p = euler_product_num(tau, tol);
    (2.0 * PI * I * tau).exp() * p.powi(24)
}

/// Θ_Q by Fincke–Pohst-style enumeration of {x : ½xᵀAx ≤ R} with R set by
/// the geometric tail |q|^R.
fn lattice_theta_num(gram: &[Vec<i64>], tau: Complex64, tol: f64) -> crate::Result<Complex64> {
    let r = gram.len();
    for row in gram {
        if row.len() != r {
            return Err(Error::InvalidInput("Gram matrix is not square".into()));
        }
    }
    for i in 0..r {
        if gram[i][i] % 2 != 0 {
            return Err(Error::NotEven);
        }
        for j in 0..r {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
            }
        }
    }
    // Q(x) = ½xᵀAx = Σ_i c_i (x_i + Σ_{j>i} u_ij x_j)²: Cholesky of ½A.
    let mut a: Vec<Vec<f64>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| v as f64 / 2.0).collect())
        .collect();
    let mut coef = vec![0.0; r];
    let mut u = vec![vec![0.0; r]; r];
    for i in 0..r {
        if a[i][i] <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        coef[i] = a[i][i];
        for j in i..r {
            u[i][j] = a[i][j] / a[i][i];
        }
        for k in i + 1..r {
            for l in i + 1..r {
                a[k][l] -= a[k][i] * a[i][l] / a[i][i];
            }
        }
    }
    // Radius: |q|^R ≤ tol·(1−|q|) ⇒ R = ln(tol(1−|q|))/ln|q|, plus margin.
    let qn = (-2.0 * PI * tau.im).exp();
    let radius = (tol * (1.0 - qn)).ln() / qn.ln() + 2.0;
    let q2 = 2.0 * PI * I * tau;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut x = vec![0i64; r];
    enumerate(&coef, &u, r, radius, &mut x, 0.0, &mut |norm| {
        acc += (q2 * norm).exp();
    });
    Ok(acc)
}

/// Recursive enumeration over coordinate i = r−1 … 0 of all x with Q(x) ≤ R.
fn enumerate(
    coef: &[f64],
    u: &[Vec<f64>],
    level: usize,
    remaining: f64,
    x: &mut Vec<i64>,
    partial: f64,
    visit: &mut impl FnMut(f64),
) {
    if level == 0 {
        visit(partial);
        return;
    }
    let i = level - 1;
    let center: f64 = (i + 1..x.len()).map(|j| u[i][j] * x[j] as f64).sum();
    let halfwidth = (remaining / coef[i]).max(0.0).sqrt();
    let lo = (-center - halfwidth - 1e-9).ceil() as i64;
    let hi = (-center + halfwidth + 1e-9).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let t = xi as f64 + center;
        let contrib = coef[i] * t * t;
        if contrib <= remaining + 1e-9 {
            enumerate(coef, u, i, remaining - contrib, x, partial + contrib, visit);
        }
    }
    x[i] = 0;
}

/// Level of an even positive Gram matrix: the smallest N with N·A⁻¹ even
/// integral.
pub fn lattice_level(gram: &[Vec<i64>]) -> crate::Result<u64> {
    let r = gram.len();
    // Invert over exact rationals by Gaussian elimination.
    let mut m: Vec<Vec<Rat>> = (0..r)
        .map(|i| {
            (0..2 * r)
                .map(|j| {
                    if j < r {
                        Rat::from_integer(gram[i][j].into())
                    } else if j - r == i {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..r {
        let pivot = (col..r)
            .find(|&i| !m[i][col].is_zero())
            .ok_or(Error::DegenerateGram)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..2 * r {
            m[col][j] = &m[col][j] / &p;
        }
        for i in 0..r {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..2 * r {
                    let sub = &f * &m[col][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
    }
    // N·A⁻¹ integral with even diagonal.
    let mut n = BigInt::one();
    for i in 0..r {
        for j in 0..r {
            let inv = &m[i][j + r];
            n = num_integer::lcm(n, inv.denom().abs());
        }
    }
    loop {
        let ok = (0..r).all(|i| {
            let d = &m[i][i + r] * Rat::from_integer(n.clone());
            d.is_integer() && (d.to_integer() % 2i32).is_zero()
        });
        if ok {
            break;
        }
        n *= 2;
    }
    n.to_u64().ok_or_else(|| Error::InvalidInput("level overflow".into()))
}

/// Kronecker symbol (a/n).
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Factor out 2s from n: (a/2) = 0, ±1 by a mod 8.
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Character χ(d) of a theta series: the Kronecker symbol ((−1)^{r/2}det A / d).
/// For the two-squares form diag(2,2) this is (−4/d) = (−1)^{(d−1)/2}.
pub fn quad_character(gram: &[Vec<i64>], d: i64) -> crate::Result<f64> {
    let r = gram.len();
    if r % 2 != 0 {
        return Err(Error::InvalidInput(
            "character implemented for even rank only".into(),
        ));
    }
    let det = int_det(gram)?;
    let disc = if (r / 2) % 2 == 0 { det } else { -det };
    Ok(kronecker(disc, d) as f64)
}

fn int_det(gram: &[Vec<i64>]) -> crate::Result<i64> {
    let r = gram.len();
    let mut m: Vec<Vec<Rat>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| Rat::from_integer(v.into())).collect())
        .collect();
    let mut det = Rat::one();
    for col in 0..r {
        let pivot = (col..r).find(|&i| !m[i][col].is_zero());
        let Some(pivot) = pivot else {
            return Ok(0);
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= &m[col][col];
        let p = m[col][col].clone();
        for i in col + 1..r {
            let f = &m[i][col] / &p;
            for j in col..r {
                let sub = &f * &m[col][j];
                m[i][j] = &m[i][j] - sub;
            }
        }
    }
    det.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("determinant overflow".into()))
}

/// Covariance residual (cτ+d)^{−weight} f(γτ) − f(τ).
///
/// For weight-2 G₂ the residual is the anomaly i·c/(4π(cτ+d)), not zero.
/// F₂ is only Γ_θ-covariant and Θ_Q only Γ₀(N)-covariant up to the character
/// χ(d); matrices outside the covariance subgroup are rejected.
pub fn covariance_residual(
    f: &FormId,
    weight: i32,
    gamma: &UnimodularMatrix,
    tau: Complex64,
    tol: f64,
) -> crate::Result<Complex64> {
    let mut chi = 1.0f64;
    match f {
        FormId::F2 => {
            if !subgroup_member(gamma, SubgroupId::Theta) {
                return Err(Error::WrongSubgroup("Gamma_theta".into()));
            }
        }
        FormId::LatticeTheta(gram) => {
            let level = lattice_level(gram)?;
            if !subgroup_member(gamma, SubgroupId::Gamma0N(level)) {
                return Err(Error::WrongSubgroup(format!("Gamma_0({level})")));
            }
            let d = gamma
                .d
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("d overflow".into()))?;
            chi = quad_character(gram, d)?;
            if chi == 0.0 {
                return Err(Error::InvalidInput("character vanishes at d".into()));
            }
        }
        _ => {}
    }
    let j = gamma.cocycle(tau);
    let transformed = form_eval(f, gamma.act(tau), tol)?;
    let base = form_eval(f, tau, tol)?;
    Ok(transformed / (chi * j.powi(weight)) - base)
}
