//! Vacuum and thermal (Gibbs) two-point functions of the free conformal
//! field models on compactified space-time, their energy mean values, and
//! Laurent-coefficient extraction.
//!
//! Kinematics live on the "conformal cylinder": a correlator depends on the
//! conformal time difference ζ₁₂ = ζ₁ − ζ₂ and on the angle 2πα between the
//! two points on the unit sphere (u₁·u₂ = cos 2πα).  The combinations
//! ζ± = ζ₁₂ ± α separate the light-cone poles.  Thermal correlators at
//! q = e^{2πiτ} are obtained from the vacuum ones either by an image sum
//! over time translations ζ₁₂ → ζ₁₂ + kτ (with a (−1)^{2dk} phase for a
//! field of dimension d) or, in closed form, by replacing the trigonometric
//! kernels with the lattice functions p_k^{κλ} of the `elliptic` module.
//! Both representations are implemented; the image sum serves as an oracle.
//!
//! Matrix-valued (Weyl) correlators are expressed in the moving frame: for
//! unit vectors u₁, u₂ the unique complex vectors v, v̄ with
//! u₁ = e^{iπα}v + e^{−iπα}v̄, u₂ = e^{−iπα}v + e^{iπα}v̄ diagonalize the
//! two-point functions, whose 2×2 values are built from the quaternionic
//! matrices Q_k = −iσ_k, Q₄ = 1.

use crate::elliptic::{eisenstein_num, p_eval, PIndex};
use crate::{Error, Result};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Distance (in units of the sine) below which kinematics count as on a pole.
const POLE_TOL: f64 = 1e-9;
/// Collinearity rejection threshold on |sin 2πα|.
const COLLINEAR_TOL: f64 = 1e-8;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// 1/sin πz, computed through e^{iπz} so that large |Im z| underflows to 0
/// instead of overflowing.
fn inv_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return -inv_sin_pi(-z);
    }
    let w = (I * PI * z).exp(); // |w| ≤ 1
    2.0 * I * w / (w * w - 1.0)
}

/// cot πz, stable for large |Im z| (tends to ∓i).
fn cot_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return -cot_pi(-z);
    }
    let w = (2.0 * PI * I * z).exp(); // |w| ≤ 1
    I * (w + 1.0) / (w - 1.0)
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

/// The free-field models whose two-point functions and energy means are
/// implemented.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelId {
    /// Complex chiral Weyl fermion (D = 2, d = 1/2).
    ChiralWeyl,
    /// Majorana–Weyl (chiral Ising) fermion, Neveu–Schwarz sector.
    IsingNs,
    /// Majorana–Weyl fermion, Ramond sector (energy mean only).
    IsingR,
    /// N = 2 superconformal fields G^± of dimension 3/2.  The central charge
    /// and the energy mean ⟨L̃₀⟩ are inputs: the two-point function does not
    /// determine them.
    N2Super { c: f64, l0_mean: Complex64 },
    /// Free massless scalar in even dimension D ≥ 4 (d₀ = (D−2)/2).
    Scalar { dim: u32 },
    /// Canonical d = 3/2 Weyl field in D = 4.
    Weyl4Canonical,
    /// Subcanonical d = 1/2 Weyl field in D = 4.
    Weyl4Subcanonical,
    /// Free Maxwell field in D = 4.
    Maxwell,
    /// Longitudinal (pure gauge) modes of the D = 4 potential
    /// (energy mean only).
    GaugeLongitudinal,
    /// Chiral restriction of the D = 4 scalar: the thermal two-point
    /// function of a chiral U(1) current, −(2π)⁻² p₂(ζ₁₂, τ).
    ChiralU1Restriction,
}

impl ModelId {
    /// Parse the CLI model tags.  `scalarD` selects the D-dimensional scalar
    /// (even D ≥ 4); `n2_super` takes c = 3 (level one) and ⟨L̃₀⟩ = 0 unless
    /// set explicitly by the caller afterwards.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "chiral_weyl" => Ok(Self::ChiralWeyl),
            "ising_NS" => Ok(Self::IsingNs),
            "ising_R" => Ok(Self::IsingR),
            "n2_super" => Ok(Self::N2Super { c: 3.0, l0_mean: C_ZERO }),
            "weyl4_canonical" => Ok(Self::Weyl4Canonical),
            "weyl4_subcanonical" => Ok(Self::Weyl4Subcanonical),
            "maxwell" => Ok(Self::Maxwell),
            "gauge_longitudinal" => Ok(Self::GaugeLongitudinal),
            "chiral_u1_restriction" => Ok(Self::ChiralU1Restriction),
            other => {
                if let Some(d) = other.strip_prefix("scalar") {
                    let dim: u32 = d
                        .parse()
                        .map_err(|_| Error::UnknownModel(other.to_string()))?;
                    if dim < 4 || dim % 2 != 0 {
                        return Err(Error::InvalidInput(format!(
                            "scalar dimension must be even and ≥ 4, got {dim}"
                        )));
                    }
                    Ok(Self::Scalar { dim })
                } else {
                    Err(Error::UnknownModel(other.to_string()))
                }
            }
        }
    }

    /// Twice the conformal dimension of the field; fixes the (−1)^{2dk}
    /// phase of the image sum.
    pub fn two_d(&self) -> i64 {
        match self {
            Self::ChiralWeyl | Self::IsingNs | Self::IsingR | Self::Weyl4Subcanonical => 1,
            Self::N2Super { .. } | Self::Weyl4Canonical => 3,
            Self::Scalar { dim } => (*dim as i64) - 2,
            Self::Maxwell => 4,
            Self::GaugeLongitudinal => 2,
            Self::ChiralU1Restriction => 2,
        }
    }

    fn needs_angle(&self) -> bool {
        matches!(
            self,
            Self::Scalar { .. } | Self::Weyl4Canonical | Self::Weyl4Subcanonical | Self::Maxwell
        )
    }
}

// ---------------------------------------------------------------------------
// Kinematics and the moving frame
// ---------------------------------------------------------------------------

/// Two points on the conformal cylinder: complex conformal times ζ₁, ζ₂ and
/// (for D > 2 models) the sphere angle α with u₁·u₂ = cos 2πα,
/// Re α ∈ [0, 1/2].
#[derive(Clone, Debug)]
pub struct Kinematics {
    pub zeta1: Complex64,
    pub zeta2: Complex64,
    /// Unit vectors on the sphere, when given explicitly.
    pub u1: Option<Vec<f64>>,
    pub u2: Option<Vec<f64>>,
    /// Half the sphere angle divided by 2π: u₁·u₂ = cos 2πα.
    pub alpha: f64,
}

impl Kinematics {
    /// Kinematics of a chiral (D = 2) model: only ζ₁₂ matters.
    pub fn chiral(zeta1: Complex64, zeta2: Complex64) -> Self {
        Kinematics { zeta1, zeta2, u1: None, u2: None, alpha: 0.0 }
    }

    /// Kinematics from the angle alone, placing the two points in the
    /// canonical frame u_{1,2} = (0, …, 0, ±sin πα, cos πα) on S^{dim−1}.
    pub fn from_angle(zeta1: Complex64, zeta2: Complex64, alpha: f64, dim: usize) -> Result<Self> {
        if !(0.0..=0.5).contains(&alpha) {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in [0, 1/2], got {alpha}"
            )));
        }
        if dim < 2 {
            return Err(Error::InvalidInput("need dim ≥ 2".into()));
        }
        let (s, c) = (PI * alpha).sin_cos();
        let mut u1 = vec![0.0; dim];
        let mut u2 = vec![0.0; dim];
        u1[dim - 2] = s;
        u1[dim - 1] = c;
        u2[dim - 2] = -s;
        u2[dim - 1] = c;
        Ok(Kinematics { zeta1, zeta2, u1: Some(u1), u2: Some(u2), alpha })
    }

    /// Kinematics from explicit unit vectors (|u| = 1 within 1e−12); the
    /// angle branch is fixed by the principal arccos, Re α ∈ [0, 1/2].
    pub fn from_vectors(
        zeta1: Complex64,
        zeta2: Complex64,
        u1: Vec<f64>,
        u2: Vec<f64>,
    ) -> Result<Self> {
        if u1.len() != u2.len() || u1.is_empty() {
            return Err(Error::InvalidInput("u₁ and u₂ must have equal length".into()));
        }
        for u in [&u1, &u2] {
            let norm: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!("|u| = {norm} is not 1")));
            }
        }
        let dot: f64 = u1.iter().zip(&u2).map(|(a, b)| a * b).sum();
        let alpha = dot.clamp(-1.0, 1.0).acos() / (2.0 * PI);
        Ok(Kinematics { zeta1, zeta2, u1: Some(u1), u2: Some(u2), alpha })
    }

    pub fn zeta12(&self) -> Complex64 {
        self.zeta1 - self.zeta2
    }

    pub fn zeta_plus(&self) -> Complex64 {
        self.zeta12() + self.alpha
    }

    pub fn zeta_minus(&self) -> Complex64 {
        self.zeta12() - self.alpha
    }

    fn shifted(&self, dz: Complex64) -> Self {
        let mut k = self.clone();
        k.zeta1 += dz;
        k
    }

    fn check_angle(&self) -> Result<()> {
        if (2.0 * PI * self.alpha).sin().abs() < COLLINEAR_TOL {
            return Err(Error::CollinearVectors);
        }
        Ok(())
    }

    /// The explicit vectors, defaulting to the canonical D = 4 frame.
    fn frame_vectors(&self) -> (Vec<f64>, Vec<f64>) {
        match (&self.u1, &self.u2) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => {
                let (s, c) = (PI * self.alpha).sin_cos();
                (vec![0.0, 0.0, s, c], vec![0.0, 0.0, -s, c])
            }
        }
    }
}

/// The moving-frame vectors: u₁ = e^{iπα}v + e^{−iπα}v̄ and
/// u₂ = e^{−iπα}v + e^{iπα}v̄.
#[derive(Clone, Debug)]
pub struct FrameVectors {
    pub v: Vec<Complex64>,
    pub vbar: Vec<Complex64>,
}

/// Solve the 2×2 linear system defining the moving frame.  The two unit
/// vectors must not be collinear.
pub fn moving_frame(u1: &[f64], u2: &[f64]) -> Result<FrameVectors> {
    if u1.len() != u2.len() || u1.is_empty() {
        return Err(Error::InvalidInput("u₁ and u₂ must have equal length".into()));
    }
    let dot: f64 = u1.iter().zip(u2).map(|(a, b)| a * b).sum();
    if dot.abs() > 1.0 - COLLINEAR_TOL * COLLINEAR_TOL / 2.0 {
        return Err(Error::CollinearVectors);
    }
    let alpha = dot.clamp(-1.0, 1.0).acos() / (2.0 * PI);
    let a = (I * PI * alpha).exp();
    let ab = (-I * PI * alpha).exp();
    let det = a * a - ab * ab; // 2i sin 2πα
    if det.norm() < COLLINEAR_TOL {
        return Err(Error::CollinearVectors);
    }
    let v: Vec<Complex64> = u1
        .iter()
        .zip(u2)
        .map(|(&x1, &x2)| (a * x1 - ab * x2) / det)
        .collect();
    let vbar: Vec<Complex64> = u1
        .iter()
        .zip(u2)
        .map(|(&x1, &x2)| (a * x2 - ab * x1) / det)
        .collect();
    Ok(FrameVectors { v, vbar })
}

// ---------------------------------------------------------------------------
// Quaternionic 2×2 matrices
// ---------------------------------------------------------------------------

/// A 2×2 complex matrix; the values of spinor two-point functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixVal(pub [[Complex64; 2]; 2]);

impl MatrixVal {
    pub fn zero() -> Self {
        MatrixVal([[C_ZERO; 2]; 2])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] += other.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        for row in &mut m.0 {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = MatrixVal::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    m.0[i][j] += self.0[i][k] * other.0[k][j];
                }
            }
        }
        m
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// z̸ = Σ z^α Q_α with Q_k = −iσ_k (k = 1, 2, 3), Q₄ = 1.
    pub fn slash(z: &[Complex64]) -> Result<Self> {
        if z.len() != 4 {
            return Err(Error::InvalidInput("slash needs a 4-vector".into()));
        }
        let (z1, z2, z3, z4) = (z[0], z[1], z[2], z[3]);
        Ok(MatrixVal([
            [z4 - I * z3, -z2 - I * z1],
            [z2 - I * z1, z4 + I * z3],
        ]))
    }

    /// z̸⁺ = Σ z^α Q_α⁺ (the components themselves are not conjugated).
    pub fn slash_plus(z: &[Complex64]) -> Result<Self> {
        if z.len() != 4 {
            return Err(Error::InvalidInput("slash needs a 4-vector".into()));
        }
        let (z1, z2, z3, z4) = (z[0], z[1], z[2], z[3]);
        Ok(MatrixVal([
            [z4 + I * z3, z2 + I * z1],
            [-z2 + I * z1, z4 - I * z3],
        ]))
    }
}

// ---------------------------------------------------------------------------
// Correlator values
// ---------------------------------------------------------------------------

/// The value of a two-point function: a complex number for scalar-valued
/// models, a 2×2 matrix for Weyl fields, a component triple for Maxwell
/// (the two helicity functions W(ζ₁₂, ±α) and the F₃F₃ function).
#[derive(Clone, Debug, PartialEq)]
pub enum CorrVal {
    Scalar(Complex64),
    Matrix(MatrixVal),
    Maxwell {
        w_plus: Complex64,
        w_minus: Complex64,
        f33: Complex64,
    },
}

impl CorrVal {
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (CorrVal::Scalar(a), CorrVal::Scalar(b)) => CorrVal::Scalar(a + b),
            (CorrVal::Matrix(a), CorrVal::Matrix(b)) => CorrVal::Matrix(a.add(b)),
            (
                CorrVal::Maxwell { w_plus: a1, w_minus: a2, f33: a3 },
                CorrVal::Maxwell { w_plus: b1, w_minus: b2, f33: b3 },
            ) => CorrVal::Maxwell { w_plus: a1 + b1, w_minus: a2 + b2, f33: a3 + b3 },
            _ => unreachable!("mismatched correlator shapes"),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        match self {
            CorrVal::Scalar(a) => CorrVal::Scalar(a * s),
            CorrVal::Matrix(m) => CorrVal::Matrix(m.scale(s)),
            CorrVal::Maxwell { w_plus, w_minus, f33 } => CorrVal::Maxwell {
                w_plus: w_plus * s,
                w_minus: w_minus * s,
                f33: f33 * s,
            },
        }
    }

    /// Largest magnitude among the components (for relative comparisons).
    pub fn norm(&self) -> f64 {
        match self {
            CorrVal::Scalar(a) => a.norm(),
            CorrVal::Matrix(m) => m.norm(),
            CorrVal::Maxwell { w_plus, w_minus, f33 } => {
                w_plus.norm().max(w_minus.norm()).max(f33.norm())
            }
        }
    }

    /// The scalar value, if this is a scalar correlator.
    pub fn scalar(&self) -> Option<Complex64> {
        match self {
            CorrVal::Scalar(a) => Some(*a),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Gegenbauer polynomials
// ---------------------------------------------------------------------------

/// C_n^λ(x) by the three-term recurrence
/// n C_n = 2x(n+λ−1) C_{n−1} − (n+2λ−2) C_{n−2},
/// which stays finite for arbitrary n (the explicit factorial sum overflows
/// past n ≈ 170).
pub fn gegenbauer(n: u32, lambda: f64, x: Complex64) -> Complex64 {
    if n == 0 {
        return C_ONE;
    }
    let mut prev = C_ONE;
    let mut cur = 2.0 * lambda * x;
    for m in 2..=(n as i64) {
        let next =
            (2.0 * x * c64(m as f64 + lambda - 1.0) * cur - c64(m as f64 + 2.0 * lambda - 2.0) * prev)
                / c64(m as f64);
        prev = cur;
        cur = next;
    }
    cur
}

// ---------------------------------------------------------------------------
// Vacuum two-point functions
// ---------------------------------------------------------------------------

fn check_poles(points: &[Complex64]) -> Result<()> {
    for &z in points {
        let n = inv_sin_pi(z).norm();
        if !n.is_finite() || n > 1.0 / POLE_TOL {
            return Err(Error::PoleKinematics);
        }
    }
    Ok(())
}

/// The Maxwell helicity function W₀(ζ₁₂, α) in the vacuum.
fn maxwell_w0(z: Complex64, alpha: f64) -> Complex64 {
    let zp = z + alpha;
    let zm = z - alpha;
    let s2a = (2.0 * PI * alpha).sin();
    let c2a = (2.0 * PI * alpha).cos();
    let inv_p = inv_sin_pi(zp);
    (cot_pi(zm) - cot_pi(zp)) / (4.0 * s2a.powi(3))
        - (cot_pi(zp) * inv_p * inv_p - (c2a / s2a) * inv_p * inv_p) / (4.0 * s2a)
}

fn maxwell_f33_vac(zp: Complex64, zm: Complex64, alpha: f64) -> Complex64 {
    let s2a = (2.0 * PI * alpha).sin();
    let c2a = (2.0 * PI * alpha).cos();
    let inv_p = inv_sin_pi(zp);
    let inv_m = inv_sin_pi(zm);
    (inv_p * inv_p + inv_m * inv_m + 2.0 * (c2a / s2a) * (cot_pi(zp) - cot_pi(zm)))
        / (4.0 * s2a * s2a)
}

/// The N = 2 vacuum kernel whose image sum gives the thermal correlator:
/// (ic/24)(1 + cos²πζ)/sin³πζ + ⟨L̃₀⟩/(i sin πζ).
fn n2_kernel(z: Complex64, c: f64, l0: Complex64) -> Complex64 {
    let inv = inv_sin_pi(z);
    let cot = cot_pi(z);
    I * (c / 24.0) * (inv * inv * inv + cot * cot * inv) + l0 * inv / I
}

fn weyl4_slashes(kin: &Kinematics) -> Result<(MatrixVal, MatrixVal)> {
    let (u1, u2) = kin.frame_vectors();
    let fv = moving_frame(&u1, &u2)?;
    Ok((MatrixVal::slash_plus(&fv.v)?, MatrixVal::slash_plus(&fv.vbar)?))
}

/// Vacuum two-point function of `model` at the given kinematics.
pub fn vacuum_2pt(model: &ModelId, kin: &Kinematics) -> Result<CorrVal> {
    if model.needs_angle() {
        kin.check_angle()?;
    }
    let z = kin.zeta12();
    let zp = kin.zeta_plus();
    let zm = kin.zeta_minus();
    match model {
        ModelId::ChiralWeyl | ModelId::IsingNs => {
            check_poles(&[z])?;
            Ok(CorrVal::Scalar(inv_sin_pi(z) / (2.0 * I)))
        }
        ModelId::ChiralU1Restriction => {
            check_poles(&[z])?;
            let inv = inv_sin_pi(z);
            Ok(CorrVal::Scalar(-0.25 * inv * inv))
        }
        ModelId::N2Super { c, l0_mean } => {
            check_poles(&[z])?;
            Ok(CorrVal::Scalar(n2_kernel(z, *c, *l0_mean)))
        }
        ModelId::Scalar { dim } => {
            check_poles(&[zp, zm])?;
            let d0 = (dim - 2) / 2;
            let inv2 = inv_sin_pi(zp) * inv_sin_pi(zm);
            let val = match dim {
                // Canonical field normalization in D = 4.
                4 => -inv2 / (8.0 * PI),
                // Canonical normalization in D = 6.
                6 => 0.25 * inv2 * inv2,
                // Mode normalization (the Gegenbauer generating function).
                _ => (inv2 / -4.0).powu(d0),
            };
            Ok(CorrVal::Scalar(val))
        }
        ModelId::Weyl4Canonical => {
            check_poles(&[zp, zm])?;
            let (vs, vbs) = weyl4_slashes(kin)?;
            let pref = inv_sin_pi(zm) * inv_sin_pi(zp) / (2.0 * I);
            let m = vs
                .scale(pref * inv_sin_pi(zm))
                .add(&vbs.scale(pref * inv_sin_pi(zp)));
            Ok(CorrVal::Matrix(m))
        }
        ModelId::Weyl4Subcanonical => {
            check_poles(&[zp, zm])?;
            let (vs, vbs) = weyl4_slashes(kin)?;
            let m = vs
                .scale(inv_sin_pi(zm) / (2.0 * I))
                .add(&vbs.scale(inv_sin_pi(zp) / (2.0 * I)));
            Ok(CorrVal::Matrix(m))
        }
        ModelId::Maxwell => {
            check_poles(&[zp, zm])?;
            Ok(CorrVal::Maxwell {
                w_plus: maxwell_w0(z, kin.alpha),
                w_minus: maxwell_w0(z, -kin.alpha),
                f33: maxwell_f33_vac(zp, zm, kin.alpha),
            })
        }
        ModelId::IsingR | ModelId::GaugeLongitudinal => {
            Err(Error::UnknownModel(format!("{model:?} has no two-point closed form")))
        }
    }
}

// ---------------------------------------------------------------------------
// Thermal two-point functions
// ---------------------------------------------------------------------------

fn p(k: u32, kappa: u8, lambda: u8, mu: Complex64, z: Complex64, tau: Complex64, tol: f64) -> Result<Complex64> {
    p_eval(&PIndex::new(k, kappa, lambda).with_mu(mu), z, tau, tol)
}

fn require_neutral(mu: Complex64) -> Result<()> {
    if mu.norm() > 0.0 {
        return Err(Error::InvalidInput(
            "chemical potential requires a charged model".into(),
        ));
    }
    Ok(())
}

/// Thermal (Gibbs, or grand canonical when μ ≠ 0) two-point function at
/// modulus τ.  Evaluated through the lattice functions p_k^{κλ}; the image
/// sum `image_sum_2pt` provides an independent oracle.
pub fn thermal_2pt(
    model: &ModelId,
    kin: &Kinematics,
    tau: Complex64,
    mu: Complex64,
    tol: f64,
) -> Result<CorrVal> {
    if model.needs_angle() {
        kin.check_angle()?;
    }
    let z = kin.zeta12();
    let zp = kin.zeta_plus();
    let zm = kin.zeta_minus();
    let alpha = kin.alpha;
    let s2a = (2.0 * PI * alpha).sin();
    let c2a = (2.0 * PI * alpha).cos();
    match model {
        ModelId::ChiralWeyl => {
            Ok(CorrVal::Scalar(p(1, 1, 1, mu, z, tau, tol)? / (2.0 * PI * I)))
        }
        ModelId::IsingNs => {
            require_neutral(mu)?;
            Ok(CorrVal::Scalar(p(1, 1, 1, C_ZERO, z, tau, tol)? / (2.0 * PI * I)))
        }
        ModelId::ChiralU1Restriction => {
            require_neutral(mu)?;
            Ok(CorrVal::Scalar(
                -p(2, 0, 0, C_ZERO, z, tau, tol)? / (4.0 * PI * PI),
            ))
        }
        ModelId::N2Super { c, l0_mean } => {
            let p3 = p(3, 1, 1, mu, z, tau, tol)?;
            let p1 = p(1, 1, 1, mu, z, tau, tol)?;
            Ok(CorrVal::Scalar(
                I * (c / (12.0 * PI.powi(3))) * p3 - (I / PI) * l0_mean * p1,
            ))
        }
        ModelId::Scalar { dim } => {
            require_neutral(mu)?;
            match dim {
                4 => {
                    let v = (p(1, 0, 0, C_ZERO, zp, tau, tol)?
                        - p(1, 0, 0, C_ZERO, zm, tau, tol)?)
                        / (4.0 * PI * s2a);
                    Ok(CorrVal::Scalar(v))
                }
                6 => {
                    // 1/(2 sin πζ₊ sin πζ₋)² decomposes into
                    // [sin⁻²ζ₊ + sin⁻²ζ₋ − 2 cot 2πα (cot ζ₋ − cot ζ₊)]
                    // over 4 sin²2πα; imaging each piece gives the p-forms.
                    let p2p = p(2, 0, 0, C_ZERO, zp, tau, tol)?;
                    let p2m = p(2, 0, 0, C_ZERO, zm, tau, tol)?;
                    let p1p = p(1, 0, 0, C_ZERO, zp, tau, tol)?;
                    let p1m = p(1, 0, 0, C_ZERO, zm, tau, tol)?;
                    let v = ((p2p + p2m) / (PI * PI)
                        + 2.0 * (c2a / s2a) * (p1p - p1m) / PI)
                        / (4.0 * s2a * s2a);
                    Ok(CorrVal::Scalar(v))
                }
                _ => {
                    // Fourier representation: vacuum part plus the
                    // Gegenbauer-weighted q-series (mode normalization).
                    check_poles(&[zp, zm])?;
                    let d0 = ((dim - 2) / 2) as i64;
                    let q = (2.0 * PI * I * tau).exp();
                    let x = c64(c2a);
                    let mut sum =
                        (inv_sin_pi(zp) * inv_sin_pi(zm) / -4.0).powu(d0 as u32);
                    let mut n = d0;
                    loop {
                        let qn = q.powi(n as i32);
                        let geg = gegenbauer((n - d0) as u32, d0 as f64, x);
                        let term = 2.0 * qn / (1.0 - qn)
                            * (2.0 * PI * (n as f64) * z).cos()
                            * geg;
                        sum += term;
                        if term.norm() < tol * 1e-3 && n > d0 + 8 {
                            break;
                        }
                        n += 1;
                        if n > 40_000 {
                            return Err(Error::NonconvergentTolerance(tol));
                        }
                    }
                    Ok(CorrVal::Scalar(sum))
                }
            }
        }
        ModelId::Weyl4Canonical => {
            let (vs, vbs) = weyl4_slashes(kin)?;
            let p2m = p(2, 1, 1, mu, zm, tau, tol)?;
            let p2p = p(2, 1, 1, mu, zp, tau, tol)?;
            let p1m = p(1, 1, 1, mu, zm, tau, tol)?;
            let p1p = p(1, 1, 1, mu, zp, tau, tol)?;
            let pref = -I / (2.0 * s2a);
            let coef_v = p2m / (PI * PI) - (c2a / s2a) * p1m / PI + p1p / (PI * s2a);
            let coef_vb = p2p / (PI * PI) + (c2a / s2a) * p1p / PI - p1m / (PI * s2a);
            let m = vs.scale(pref * coef_v).add(&vbs.scale(-pref * coef_vb));
            Ok(CorrVal::Matrix(m))
        }
        ModelId::Weyl4Subcanonical => {
            let (vs, vbs) = weyl4_slashes(kin)?;
            let p1m = p(1, 1, 1, mu, zm, tau, tol)?;
            let p1p = p(1, 1, 1, mu, zp, tau, tol)?;
            let pref = 1.0 / (2.0 * PI * I);
            let m = vs.scale(pref * p1m).add(&vbs.scale(pref * p1p));
            Ok(CorrVal::Matrix(m))
        }
        ModelId::Maxwell => {
            require_neutral(mu)?;
            let wq = |sgn: f64| -> Result<Complex64> {
                let a = sgn * alpha;
                let zpl = z + a;
                let zmi = z - a;
                let s = (2.0 * PI * a).sin();
                let c = (2.0 * PI * a).cos();
                let p1m = p(1, 0, 0, C_ZERO, zmi, tau, tol)?;
                let p1p = p(1, 0, 0, C_ZERO, zpl, tau, tol)?;
                let p3p = p(3, 0, 0, C_ZERO, zpl, tau, tol)?;
                let p2p = p(2, 0, 0, C_ZERO, zpl, tau, tol)?;
                Ok((p1m - p1p) / (4.0 * PI * s.powi(3))
                    - (p3p / PI.powi(3) - (c / s) * p2p / (PI * PI)) / (4.0 * s))
            };
            let p2p = p(2, 0, 0, C_ZERO, zp, tau, tol)?;
            let p2m = p(2, 0, 0, C_ZERO, zm, tau, tol)?;
            let p1p = p(1, 0, 0, C_ZERO, zp, tau, tol)?;
            let p1m = p(1, 0, 0, C_ZERO, zm, tau, tol)?;
            let f33 = ((p2p + p2m) / (PI * PI)
                + 2.0 * (c2a / s2a) * (p1p - p1m) / PI)
                / (4.0 * s2a * s2a);
            Ok(CorrVal::Maxwell { w_plus: wq(1.0)?, w_minus: wq(-1.0)?, f33 })
        }
        ModelId::IsingR | ModelId::GaugeLongitudinal => {
            Err(Error::UnknownModel(format!("{model:?} has no two-point closed form")))
        }
    }
}

/// Truncated image sum Σ_{k=−cutoff}^{cutoff} (−1)^{2dk} W(ζ₁₂ + kτ) of the
/// vacuum two-point function.  With cutoff 0 this is the vacuum correlator;
/// as cutoff → ∞ it converges to the thermal one (for the models whose
/// printed vacuum and thermal normalizations agree — see the tests for the
/// D = 4 scalar, where the two conventions differ by a factor 2π).
pub fn image_sum_2pt(
    model: &ModelId,
    kin: &Kinematics,
    tau: Complex64,
    cutoff: u32,
) -> Result<CorrVal> {
    let mut acc = vacuum_2pt(model, kin)?;
    let odd = model.two_d() % 2 != 0;
    for k in 1..=(cutoff as i64) {
        let phase = if odd && k % 2 != 0 { -C_ONE } else { C_ONE };
        let up = vacuum_2pt(model, &kin.shifted(c64(k as f64) * tau))?;
        let dn = vacuum_2pt(model, &kin.shifted(-c64(k as f64) * tau))?;
        acc = acc.add(&up.add(&dn).scale(phase));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Degeneracies and energy means
// ---------------------------------------------------------------------------

/// Dimension d_b(n) of the one-particle level n of the even-D scalar, as an
/// exact rational polynomial value: 2n²/(2d₀)! · Π_{k=1}^{d₀−1} (n² − k²).
fn scalar_db(dim: u32, n: i64) -> i64 {
    let d0 = ((dim - 2) / 2) as i64;
    let mut num: i128 = 2 * (n as i128) * (n as i128);
    for k in 1..d0 {
        num *= (n * n - k * k) as i128;
    }
    let mut fact: i128 = 1;
    for j in 1..=(2 * d0) {
        fact *= j as i128;
    }
    (num / fact) as i64
}

/// (d_b, d_f) at energy `level_x2`/2 for the given model.
pub fn degeneracy(model: &ModelId, level_x2: i64) -> Result<(i64, i64)> {
    if level_x2 <= 0 {
        return Err(Error::OutOfSpectrum(format!(
            "energy {}/2 is not in the spectrum",
            level_x2
        )));
    }
    let half_odd = level_x2 % 2 == 1;
    let n = level_x2 / 2;
    match model {
        ModelId::ChiralWeyl => {
            if !half_odd {
                return Err(Error::OutOfSpectrum("integer level in a NS spectrum".into()));
            }
            Ok((0, 2))
        }
        ModelId::IsingNs => {
            if !half_odd {
                return Err(Error::OutOfSpectrum("integer level in a NS spectrum".into()));
            }
            Ok((0, 1))
        }
        ModelId::IsingR => {
            if half_odd {
                return Err(Error::OutOfSpectrum("half-odd level in a Ramond spectrum".into()));
            }
            Ok((0, 1))
        }
        ModelId::Scalar { dim } => {
            let d0 = ((dim - 2) / 2) as i64;
            if half_odd || n < d0 {
                return Err(Error::OutOfSpectrum(format!(
                    "scalar levels are integers ≥ {d0}"
                )));
            }
            Ok((scalar_db(*dim, n), 0))
        }
        ModelId::Weyl4Canonical => {
            // levels n + 3/2, degeneracy 2(n+1)(n+2)
            if !half_odd || level_x2 < 3 {
                return Err(Error::OutOfSpectrum("levels are n + 3/2, n ≥ 0".into()));
            }
            let m = (level_x2 - 3) / 2;
            Ok((0, 2 * (m + 1) * (m + 2)))
        }
        ModelId::Weyl4Subcanonical => {
            if !half_odd {
                return Err(Error::OutOfSpectrum("levels are n + 1/2, n ≥ 0".into()));
            }
            let m = (level_x2 - 1) / 2;
            Ok((0, 2 * (3 * m * (m + 1) + 2)))
        }
        ModelId::Maxwell => {
            if half_odd || n < 2 {
                return Err(Error::OutOfSpectrum("Maxwell levels are integers ≥ 2".into()));
            }
            Ok((2 * (n * n - 1), 0))
        }
        ModelId::GaugeLongitudinal => {
            if half_odd {
                return Err(Error::OutOfSpectrum("gauge levels are integers ≥ 1".into()));
            }
            Ok((2 * (n * n + 1), 0))
        }
        ModelId::ChiralU1Restriction => {
            if half_odd {
                return Err(Error::OutOfSpectrum("current levels are integers ≥ 1".into()));
            }
            Ok((1, 0))
        }
        ModelId::N2Super { .. } => Err(Error::UnknownModel(
            "n2_super degeneracies come from representation theory".into(),
        )),
    }
}

/// Result of an energy-mean computation: the numeric mode sum, the
/// closed-form modular expression, and their difference.
#[derive(Clone, Debug)]
pub struct EnergyMean {
    pub numeric: Complex64,
    pub closed_form: Complex64,
    pub residual: Complex64,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Bernoulli numbers B₂, B₄, …, B₁₂.
fn bernoulli_2k(k: u32) -> Result<BigRational> {
    Ok(match k {
        1 => rat(1, 6),
        2 => rat(-1, 30),
        3 => rat(1, 42),
        4 => rat(-1, 30),
        5 => rat(5, 66),
        6 => rat(-691, 2730),
        _ => return Err(Error::InvalidInput(format!("Bernoulli B_{} not tabled", 2 * k))),
    })
}

fn rat_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// Coefficients c_k of d_b(n) = Σ_k c_k n^{2k} for the even-D scalar.
fn scalar_poly(dim: u32) -> Vec<BigRational> {
    let d0 = ((dim - 2) / 2) as i64;
    // Π_{k=1}^{d₀−1} (x − k²) with x = n², then multiply by 2x/(2d₀)!.
    let mut poly: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..d0 {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, coef) in poly.iter().enumerate() {
            next[i + 1] += coef;
            next[i] -= coef * rat(k * k, 1);
        }
        poly = next;
    }
    let mut fact = BigRational::one();
    for j in 1..=(2 * d0) {
        fact *= rat(j, 1);
    }
    let scale = rat(2, 1) / fact;
    let mut out = vec![BigRational::zero()];
    out.extend(poly.into_iter().map(|c| c * &scale));
    out
}

/// The spectra feeding the numeric side of `energy_mean`:
/// (level_x2, degeneracy, fermi) triples and the vacuum constant.
fn spectrum(model: &ModelId, max_level_x2: i64) -> Result<(Vec<(i64, i64, bool)>, f64)> {
    let mut modes = Vec::new();
    let e0 = match model {
        ModelId::ChiralWeyl => {
            let mut k = 1;
            while k <= max_level_x2 {
                modes.push((k, 2, true));
                k += 2;
            }
            -1.0 / 24.0
        }
        ModelId::IsingNs => {
            let mut k = 1;
            while k <= max_level_x2 {
                modes.push((k, 1, true));
                k += 2;
            }
            -1.0 / 48.0
        }
        ModelId::IsingR => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                modes.push((2 * n, 1, true));
                n += 1;
            }
            1.0 / 24.0
        }
        ModelId::Scalar { dim } => {
            let d0 = ((dim - 2) / 2) as i64;
            let mut n = d0;
            while 2 * n <= max_level_x2 {
                modes.push((2 * n, scalar_db(*dim, n), false));
                n += 1;
            }
            // Zeta-regularized vacuum energy ½ Σ n d_b(n) = −Σ_k c_{k−1} B_{2k}/(4k);
            // it cancels the Bernoulli constants of Σ n^{2k−1}qⁿ/(1−qⁿ), so the
            // closed form is the pure Eisenstein combination Σ_k c_{k−1} G_{2k}.
            let mut e0 = BigRational::zero();
            for (idx, c) in scalar_poly(*dim).iter().enumerate() {
                let k = (idx + 1) as u32;
                e0 -= c * bernoulli_2k(k)? / rat(4 * k as i64, 1);
            }
            rat_f64(&e0)
        }
        ModelId::Weyl4Canonical => {
            let mut m = 0;
            while 2 * m + 3 <= max_level_x2 {
                modes.push((2 * m + 3, 2 * (m + 1) * (m + 2), true));
                m += 1;
            }
            -17.0 / 960.0
        }
        ModelId::Weyl4Subcanonical => {
            let mut m = 0;
            while 2 * m + 1 <= max_level_x2 {
                modes.push((2 * m + 1, 2 * (3 * m * (m + 1) + 2), true));
                m += 1;
            }
            29.0 / 960.0
        }
        ModelId::Maxwell => {
            let mut n = 2;
            while 2 * n <= max_level_x2 {
                modes.push((2 * n, 2 * (n * n - 1), false));
                n += 1;
            }
            11.0 / 120.0
        }
        ModelId::GaugeLongitudinal => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                modes.push((2 * n, 2 * (n * n + 1), false));
                n += 1;
            }
            -3.0 / 40.0
        }
        ModelId::ChiralU1Restriction => {
            let mut n = 1;
            while 2 * n <= max_level_x2 {
                modes.push((2 * n, 1, false));
                n += 1;
            }
            -1.0 / 24.0
        }
        ModelId::N2Super { .. } => {
            return Err(Error::UnknownModel(
                "n2_super energy mean is an input, not a mode sum".into(),
            ))
        }
    };
    Ok((modes, e0))
}

/// Closed-form modular expression of the energy mean.
fn energy_closed_form(model: &ModelId, tau: Complex64) -> Result<Complex64> {
    let g2 = eisenstein_num(2, tau);
    let g4 = eisenstein_num(4, tau);
    let half = (tau + 1.0) / 2.0;
    Ok(match model {
        // F₂ = 2G₂(τ) − G₂((τ+1)/2)
        ModelId::ChiralWeyl => 2.0 * g2 - eisenstein_num(2, half),
        ModelId::IsingNs => (2.0 * g2 - eisenstein_num(2, half)) / 2.0,
        ModelId::IsingR => g2 - 2.0 * eisenstein_num(2, 2.0 * tau),
        ModelId::Scalar { dim } => {
            let mut sum = C_ZERO;
            for (idx, c) in scalar_poly(*dim).iter().enumerate() {
                let k = (idx + 1) as u32;
                sum += rat_f64(c) * eisenstein_num(2 * k, tau);
            }
            sum
        }
        // With G^h := G((τ+1)/2), the Gibbs sums over half-odd fermionic
        // levels are (2^{2k−1}G_{2k} − G^h_{2k}) combinations; the rational
        // constants place the vacuum energies at −17/960 and 29/960.
        ModelId::Weyl4Canonical => {
            (8.0 * g4 - eisenstein_num(4, half)) / 4.0
                - (2.0 * g2 - eisenstein_num(2, half)) / 4.0
                - c64(17.0 / 480.0)
        }
        ModelId::Weyl4Subcanonical => {
            3.0 * (8.0 * g4 - eisenstein_num(4, half)) / 4.0
                + 5.0 * (2.0 * g2 - eisenstein_num(2, half)) / 4.0
                + c64(29.0 / 480.0)
        }
        ModelId::Maxwell => 2.0 * g4 - 2.0 * g2,
        ModelId::GaugeLongitudinal => 2.0 * g4 + 2.0 * g2,
        ModelId::ChiralU1Restriction => g2,
        ModelId::N2Super { .. } => {
            return Err(Error::UnknownModel(
                "n2_super energy mean is an input, not a mode sum".into(),
            ))
        }
    })
}

/// Thermal energy mean ⟨H⟩_q: the degeneracy-weighted mode sum (numeric)
/// against its closed modular form, with their residual.
pub fn energy_mean(model: &ModelId, tau: Complex64) -> Result<EnergyMean> {
    if tau.im <= 0.0 {
        return Err(Error::InvalidInput("need Im τ > 0".into()));
    }
    // Truncation: level ℓ/2 contributes ~ ℓ³ e^{−π ℓ Im τ}.
    let cut = ((120.0 / tau.im).ceil() as i64).clamp(60, 20_000);
    let (modes, e0) = spectrum(model, cut)?;
    let qh = (PI * I * tau).exp(); // q^{1/2}
    let mut numeric = c64(e0);
    for (lx2, deg, fermi) in modes {
        let qe = qh.powi(lx2 as i32);
        let denom = if fermi { 1.0 + qe } else { 1.0 - qe };
        numeric += c64(lx2 as f64 / 2.0 * deg as f64) * qe / denom;
    }
    let closed_form = energy_closed_form(model, tau)?;
    Ok(EnergyMean { numeric, closed_form, residual: numeric - closed_form })
}

// ---------------------------------------------------------------------------
// Laurent coefficients
// ---------------------------------------------------------------------------

/// Extract the ζ₁₂-Laurent coefficients a_{−depth}, …, a_{depth} of the
/// thermal two-point function of a chiral model (32-point circular sampling
/// at two radius pairs with Richardson elimination of the aliasing order).
/// The disagreement between the two pairs is the stability estimate.
pub fn laurent_coeffs(
    model: &ModelId,
    tau: Complex64,
    depth: u32,
    tol: f64,
) -> Result<Vec<Complex64>> {
    if depth == 0 || depth > 4 {
        return Err(Error::InvalidInput("depth must be between 1 and 4".into()));
    }
    match model {
        ModelId::ChiralWeyl
        | ModelId::IsingNs
        | ModelId::N2Super { .. }
        | ModelId::ChiralU1Restriction => {}
        _ => {
            return Err(Error::InvalidInput(
                "Laurent extraction needs a model depending on ζ₁₂ alone".into(),
            ))
        }
    }
    const M: usize = 32;
    let r0 = 0.25;
    // raw[r][k] ≈ a_k + a_{k+M} r^M + …
    let raw = |r: f64| -> Result<Vec<Complex64>> {
        let mut vals = Vec::with_capacity(M);
        for j in 0..M {
            let theta = 2.0 * PI * (j as f64) / (M as f64);
            let zeta = c64(r) * (I * theta).exp();
            let kin = Kinematics::chiral(zeta, C_ZERO);
            let f = thermal_2pt(model, &kin, tau, C_ZERO, tol)?
                .scalar()
                .expect("chiral models are scalar-valued");
            vals.push((f, zeta));
        }
        let mut out = Vec::new();
        for k in -(depth as i64)..=(depth as i64) {
            let mut acc = C_ZERO;
            for (f, zeta) in &vals {
                acc += f * zeta.powi(-(k as i32));
            }
            out.push(acc / (M as f64));
        }
        Ok(out)
    };
    let a1 = raw(r0)?;
    let a2 = raw(r0 / 2.0)?;
    let a3 = raw(r0 / 4.0)?;
    let pow = 2f64.powi(M as i32);
    let mut best = Vec::new();
    let mut worst = 0f64;
    for i in 0..a1.len() {
        // Eliminate the a_{k+M} contamination between consecutive radii.
        let est1 = (pow * a2[i] - a1[i]) / (pow - 1.0);
        let est2 = (pow * a3[i] - a2[i]) / (pow - 1.0);
        let scale = est2.norm().max(1.0);
        worst = worst.max((est1 - est2).norm() / scale);
        best.push(est2);
    }
    if worst > 1e-6 {
        return Err(Error::ExtractionUnstable(worst));
    }
    Ok(best)
}
