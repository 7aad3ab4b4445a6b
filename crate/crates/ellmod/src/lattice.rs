//! Integral lattices: discriminant groups, vertex-algebra characters and
//! their modular transformation laws, 2-cocycle construction and
//! verification, and the N=2 superconformal characters built from the
//! one-dimensional theta kernels `K_m`.

use crate::error::Error;
use crate::modforms::{form_eval, FormId};
use crate::qseries::{eta_series, rat, BiSeries, FracSeries, Rat, UnitPoly};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rat_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn rat_i64(r: &Rat) -> crate::Result<(i64, i64)> {
    let n = r
        .numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("rational numerator overflow".into()))?;
    let d = r
        .denom()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("rational denominator overflow".into()))?;
    Ok((n, d))
}

/// Basic shape checks: square and symmetric.
fn check_square_symmetric(gram: &[Vec<i64>]) -> crate::Result<usize> {
    let r = gram.len();
    if r == 0 {
        return Err(Error::InvalidInput("empty Gram matrix".into()));
    }
    for row in gram {
        if row.len() != r {
            return Err(Error::InvalidInput("Gram matrix is not square".into()));
        }
    }
    for i in 0..r {
        for j in 0..r {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
            }
        }
    }
    Ok(r)
}

fn check_even(gram: &[Vec<i64>]) -> crate::Result<()> {
    for (i, row) in gram.iter().enumerate() {
        if row[i] % 2 != 0 {
            return Err(Error::NotEven);
        }
    }
    Ok(())
}

/// Leading principal minors by fraction-free (Bareiss) elimination.
fn leading_minors(gram: &[Vec<i64>]) -> Vec<i128> {
    let r = gram.len();
    let mut a: Vec<Vec<i128>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let mut minors = Vec::with_capacity(r);
    let mut prev: i128 = 1;
    for t in 0..r {
        if a[t][t] == 0 {
            // Bareiss needs a nonzero pivot; fall back to rational elimination
            // for this (rare, indefinite) case.
            return leading_minors_rational(gram);
        }
        for i in t + 1..r {
            for j in t + 1..r {
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) / prev;
            }
        }
        prev = a[t][t];
        minors.push(prev);
    }
    minors
}

fn leading_minors_rational(gram: &[Vec<i64>]) -> Vec<i128> {
    let r = gram.len();
    (1..=r)
        .map(|k| {
            let sub: Vec<Vec<i64>> = gram[..k].iter().map(|row| row[..k].to_vec()).collect();
            det_rational(&sub)
        })
        .collect()
}

fn det_rational(m: &[Vec<i64>]) -> i128 {
    let r = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&v| rat(v, 1)).collect())
        .collect();
    let mut det = Rat::one();
    for t in 0..r {
        let pivot = match (t..r).find(|&i| !a[i][t].is_zero()) {
            Some(p) => p,
            None => return 0,
        };
        if pivot != t {
            a.swap(t, pivot);
            det = -det;
        }
        let p = a[t][t].clone();
        det *= &p;
        for i in t + 1..r {
            if !a[i][t].is_zero() {
                let f = &a[i][t] / &p;
                for j in t..r {
                    let sub = &f * &a[t][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
    }
    det.to_integer().to_i128().expect("determinant overflow")
}

fn check_positive_definite(gram: &[Vec<i64>]) -> crate::Result<()> {
    for m in leading_minors(gram) {
        if m <= 0 {
            return Err(Error::NotPositiveDefinite);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Discriminant group
// ---------------------------------------------------------------------------

/// Diagonalize an integer matrix by unimodular row and column operations,
/// returning the diagonal and the accumulated column-operation matrix `Q`
/// (so that `P·A·Q` is diagonal for some unimodular `P`).
fn diagonalize(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>) {
    let r = a.len();
    let mut q: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| i128::from(i == j)).collect())
        .collect();
    for t in 0..r {
        loop {
            // Smallest nonzero entry of the trailing submatrix as pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..r {
                    if a[i][j] != 0
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = match best {
                Some(p) => p,
                None => return (a.iter().enumerate().map(|(i, row)| row[i]).collect(), q),
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in q.iter_mut() {
                    row.swap(t, bj);
                }
            }
            let mut clean = true;
            let p = a[t][t];
            for i in t + 1..r {
                if a[i][t] != 0 {
                    let f = a[i][t].div_euclid(p);
                    for j in t..r {
                        a[i][j] -= f * a[t][j];
                    }
                    if a[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..r {
                if a[t][j] != 0 {
                    let f = a[t][j].div_euclid(p);
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    if a[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
    }
    (a.iter().enumerate().map(|(i, row)| row[i]).collect(), q)
}

/// The finite abelian group `Q*/Q` of a nondegenerate integral lattice:
/// its order `|det|` and coset representatives in basis coordinates,
/// reduced to `[0,1)` componentwise.
pub fn discriminant_group(gram: &[Vec<i64>]) -> crate::Result<(u64, Vec<Vec<Rat>>)> {
    let r = check_square_symmetric(gram)?;
    let a: Vec<Vec<i128>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let (diag, q) = diagonalize(a);
    let mut order: i128 = 1;
    for d in &diag {
        if *d == 0 {
            return Err(Error::DegenerateGram);
        }
        order *= d.abs();
    }
    if order > 100_000 {
        return Err(Error::InvalidInput("discriminant group too large".into()));
    }
    // Representatives x = Q·(c_1/d_1, …, c_r/d_r) mod ℤ^r.
    let mut reps = Vec::with_capacity(order as usize);
    let mut counters = vec![0i128; r];
    loop {
        let mut x = vec![Rat::zero(); r];
        for i in 0..r {
            for j in 0..r {
                if counters[j] != 0 {
                    x[i] += rat(q[i][j] as i64, 1) * rat(counters[j] as i64, diag[j].abs() as i64);
                }
            }
        }
        for xi in x.iter_mut() {
            let fl = xi.floor();
            *xi -= fl;
        }
        reps.push(x);
        // Mixed-radix increment.
        let mut pos = 0;
        loop {
            if pos == r {
                let zero = vec![Rat::zero(); r];
                reps.sort_by(|a, b| a.cmp(b));
                reps.dedup();
                debug_assert_eq!(reps.len(), order as usize);
                if let Some(k) = reps.iter().position(|v| *v == zero) {
                    reps.swap(0, k);
                }
                return Ok((order as u64, reps));
            }
            counters[pos] += 1;
            if counters[pos] < diag[pos].abs() {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Lattice enumeration
// ---------------------------------------------------------------------------

/// Float Cholesky data of a positive Gram matrix: `xᵀGx = Σ c_i (x_i + Σ_{j>i} u_ij x_j)²`.
fn cholesky(gram: &[Vec<i64>]) -> crate::Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let r = gram.len();
    let mut a: Vec<Vec<f64>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| v as f64).collect())
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
    Ok((coef, u))
}

/// Enumerate all `y ∈ s·ℤ^r + p` with `yᵀGy ≤ bound` (float bound with a
/// small safety margin; callers certify exactly).
fn enumerate_coset(
    coef: &[f64],
    u: &[Vec<f64>],
    s: i64,
    p: &[i64],
    bound: f64,
    visit: &mut impl FnMut(&[i64]),
) {
    let r = coef.len();
    let mut y = vec![0i64; r];
    rec_enum(coef, u, s, p, r, bound + 1e-6, &mut y, visit);
}

fn rec_enum(
    coef: &[f64],
    u: &[Vec<f64>],
    s: i64,
    p: &[i64],
    level: usize,
    remaining: f64,
    y: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]),
) {
    if level == 0 {
        visit(y);
        return;
    }
    let i = level - 1;
    let center: f64 = (i + 1..y.len()).map(|j| u[i][j] * y[j] as f64).sum();
    let halfwidth = (remaining / coef[i]).max(0.0).sqrt();
    // y_i ≡ p_i (mod s) in [−center − hw, −center + hw].
    let lo = (-center - halfwidth - 1e-9).ceil() as i64;
    let hi = (-center + halfwidth + 1e-9).floor() as i64;
    let mut yi = p[i] + ((lo - p[i]).div_euclid(s)) * s;
    if yi < lo {
        yi += s;
    }
    while yi <= hi {
        y[i] = yi;
        let t = yi as f64 + center;
        let contrib = coef[i] * t * t;
        if contrib <= remaining + 1e-9 {
            rec_enum(coef, u, s, p, i, remaining - contrib, y, visit);
        }
        yi += s;
    }
    y[i] = p[i].rem_euclid(s);
}

fn exact_quad(gram: &[Vec<i64>], y: &[i64]) -> i128 {
    let r = gram.len();
    let mut acc: i128 = 0;
    for i in 0..r {
        let mut row: i128 = 0;
        for j in 0..r {
            row += gram[i][j] as i128 * y[j] as i128;
        }
        acc += y[i] as i128 * row;
    }
    acc
}

// ---------------------------------------------------------------------------
// Vertex-algebra characters
// ---------------------------------------------------------------------------

/// Exact lattice character `χ_λ = η^{−r} Σ_{γ∈λ+Q} q^{(γ|γ)/2} y^{(γ|μ)}`.
///
/// The chemical potential enters through a fixed rational direction
/// `mu_dir`; the stored `y`-exponent is `y_den·(γ|mu_dir)`, so that the
/// numeric value at `μ = t·mu_dir` is `eval(τ, t)`.
pub struct VoaCharacter {
    pub series: BiSeries,
    pub y_den: i64,
}

impl VoaCharacter {
    /// Numeric value at `τ` and chemical-potential scale `t` along the
    /// direction declared at construction.
    pub fn eval(&self, tau: Complex64, t: Complex64) -> Complex64 {
        self.series.eval_tau_mu(tau, t / c64(self.y_den as f64))
    }
}

pub fn voa_character(
    gram: &[Vec<i64>],
    lambda: &[Rat],
    mu_dir: &[Rat],
    order: &Rat,
) -> crate::Result<VoaCharacter> {
    let r = check_square_symmetric(gram)?;
    check_even(gram)?;
    check_positive_definite(gram)?;
    if lambda.len() != r || mu_dir.len() != r {
        return Err(Error::InvalidInput("vector length mismatch".into()));
    }
    // λ must pair integrally with the lattice (λ ∈ Q*).
    let mut s: i64 = 1;
    for li in lambda {
        let (_, d) = rat_i64(li)?;
        s = s.lcm(&d);
    }
    for i in 0..r {
        let mut pair = Rat::zero();
        for j in 0..r {
            pair += rat(gram[i][j], 1) * &lambda[j];
        }
        if !pair.is_integer() {
            return Err(Error::InvalidInput(
                "weight vector is not in the dual lattice".into(),
            ));
        }
    }
    let p: Vec<i64> = lambda
        .iter()
        .map(|li| rat_i64(&(li * rat(s, 1))).map(|(n, _)| n))
        .collect::<crate::Result<_>>()?;
    // w = G·mu_dir; y_den·(γ|μ_dir) = (y_den/s)·yᵀw must be integral.
    let w: Vec<Rat> = (0..r)
        .map(|i| {
            let mut acc = Rat::zero();
            for j in 0..r {
                acc += rat(gram[i][j], 1) * &mu_dir[j];
            }
            acc
        })
        .collect();
    let mut w_den: i64 = 1;
    for wi in &w {
        let (_, d) = rat_i64(wi)?;
        w_den = w_den.lcm(&d);
    }
    let y_den = s * w_den;
    let w_scaled: Vec<i64> = w
        .iter()
        .map(|wi| rat_i64(&(wi * rat(w_den, 1))).map(|(n, _)| n))
        .collect::<crate::Result<_>>()?;

    let den = (2 * s * s).lcm(&24);
    let ord_hi = rat_f64(order) + r as f64 / 24.0 + 1.0;
    let (coef, u) = cholesky(gram)?;
    // yᵀGy ≤ 2s²·ord_hi for exponents (γ|γ)/2 ≤ ord_hi with γ = y/s.
    let nbound: i128 = (2.0 * (s * s) as f64 * ord_hi).ceil() as i128;
    let order_num_theta = (rat_f64(order) * den as f64).ceil() as i64 + den * 2;
    let mut terms: Vec<(i64, UnitPoly)> = Vec::new();
    enumerate_coset(&coef, &u, s, &p, nbound as f64, &mut |y| {
        let n = exact_quad(gram, y);
        if n <= nbound {
            // exponent = n/(2s²) on the grid ℤ/den; y-exponent
            // y_den·(γ|μ_dir) = Σ y_i·(w_den·w_i) with γ = y/s.
            let k = n as i64 * (den / (2 * s * s));
            let t: i64 = y
                .iter()
                .zip(&w_scaled)
                .map(|(yi, wi)| yi * wi)
                .sum::<i64>();
            terms.push((k, UnitPoly::monomial(t, Rat::one())));
        }
    });
    let theta = BiSeries::from_terms(den, terms, order_num_theta);
    let eta_ord = order + rat(3 * r as i64 + 24, 24);
    let eta_inv_r = eta_series(&eta_ord).int_pow(-(r as i64))?;
    let chi = theta.mul(&BiSeries::from_frac(&eta_inv_r));
    let final_den = chi.exp_den();
    let cut = (rat_f64(order) * final_den as f64).floor() as i64;
    Ok(VoaCharacter {
        series: chi.truncated(cut),
        y_den,
    })
}

/// Direct numeric evaluation of `χ_λ(τ, μ)` with a complex chemical-potential
/// vector `μ` (basis coordinates).
pub fn voa_character_num(
    gram: &[Vec<i64>],
    lambda: &[Rat],
    tau: Complex64,
    mu: &[Complex64],
    tol: f64,
) -> crate::Result<Complex64> {
    let r = check_square_symmetric(gram)?;
    check_even(gram)?;
    check_positive_definite(gram)?;
    if lambda.len() != r || mu.len() != r {
        return Err(Error::InvalidInput("vector length mismatch".into()));
    }
    let mut s: i64 = 1;
    for li in lambda {
        let (_, d) = rat_i64(li)?;
        s = s.lcm(&d);
    }
    let p: Vec<i64> = lambda
        .iter()
        .map(|li| rat_i64(&(li * rat(s, 1))).map(|(n, _)| n))
        .collect::<crate::Result<_>>()?;
    // w = G·μ (complex); |exp(2πi γ·w)| grows like exp(2π‖γ‖·‖Im w‖).
    let w: Vec<Complex64> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| c64(gram[i][j] as f64) * mu[j])
                .sum::<Complex64>()
        })
        .collect();
    let (coef, u) = cholesky(gram)?;
    let lam_min = coef.iter().cloned().fold(f64::INFINITY, f64::min);
    let w_im: f64 = w.iter().map(|wi| wi.im.abs()).sum();
    let im_tau = tau.im;
    if im_tau <= 0.0 {
        return Err(Error::InvalidInput("tau must be in the upper half plane".into()));
    }
    // Solve π·Imτ·(y/s)² ≥ 2π w_im·(y/s)/√λmin + ln(1/tol) for the radius.
    let mut bound: f64 = (-(tol.ln()) / (PI * im_tau)).max(4.0);
    for _ in 0..30 {
        let growth = 2.0 * w_im * (2.0 * bound / lam_min.max(1e-12)).sqrt();
        bound = (-(tol.ln()) + 2.0 * PI * growth) / (PI * im_tau) + 4.0;
    }
    let nbound = 2.0 * (s * s) as f64 * bound;
    let q_exp = I * PI * tau / c64((s * s) as f64);
    let y_fac = 2.0 * PI * I / c64(s as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    enumerate_coset(&coef, &u, s, &p, nbound, &mut |y| {
        let n = exact_quad(gram, y) as f64;
        let pair: Complex64 = y
            .iter()
            .zip(&w)
            .map(|(yi, wi)| c64(*yi as f64) * wi)
            .sum();
        acc += (q_exp * c64(n) + y_fac * pair).exp();
    });
    let eta = form_eval(&FormId::Eta, tau, tol.min(1e-12))?;
    Ok(acc / eta.powi(r as i32))
}

/// Residuals of the two modular transformation laws of the character vector
/// `{χ_λ}` at a given point, each side evaluated independently.
pub struct ModularReport {
    pub t_residual: f64,
    pub s_residual: f64,
}

pub fn char_modular_check(
    gram: &[Vec<i64>],
    tau: Complex64,
    mu: &[f64],
    tol: f64,
) -> crate::Result<ModularReport> {
    let r = check_square_symmetric(gram)?;
    check_even(gram)?;
    check_positive_definite(gram)?;
    let (order, reps) = discriminant_group(gram)?;
    let mu_c: Vec<Complex64> = mu.iter().map(|&x| c64(x)).collect();
    let mu_over_tau: Vec<Complex64> = mu.iter().map(|&x| c64(x) / tau).collect();
    // |μ|² = μᵀGμ.
    let mut mu2 = 0.0;
    for i in 0..r {
        for j in 0..r {
            mu2 += mu[i] * gram[i][j] as f64 * mu[j];
        }
    }
    let chi_tau: Vec<Complex64> = reps
        .iter()
        .map(|lam| voa_character_num(gram, lam, tau, &mu_c, tol))
        .collect::<crate::Result<_>>()?;
    let mut t_residual: f64 = 0.0;
    let mut s_residual: f64 = 0.0;
    for (idx, lam) in reps.iter().enumerate() {
        // |λ|²/2.
        let mut norm2 = Rat::zero();
        for i in 0..r {
            for j in 0..r {
                norm2 += &lam[i] * rat(gram[i][j], 1) * &lam[j];
            }
        }
        let half_norm = rat_f64(&norm2) / 2.0;
        let t_lhs = voa_character_num(gram, lam, tau + 1.0, &mu_c, tol)?;
        let t_phase = (2.0 * PI * I * c64(half_norm - r as f64 / 24.0)).exp();
        t_residual = t_residual.max((t_lhs - t_phase * chi_tau[idx]).norm());

        let s_lhs = (-I * PI * c64(mu2) / tau).exp()
            * voa_character_num(gram, lam, -1.0 / tau, &mu_over_tau, tol)?;
        let mut s_rhs = Complex64::new(0.0, 0.0);
        for (jdx, lam2) in reps.iter().enumerate() {
            let mut pair = Rat::zero();
            for i in 0..r {
                for j in 0..r {
                    pair += &lam[i] * rat(gram[i][j], 1) * &lam2[j];
                }
            }
            s_rhs += (-2.0 * PI * I * c64(rat_f64(&pair))).exp() * chi_tau[jdx];
        }
        s_rhs /= c64((order as f64).sqrt());
        s_residual = s_residual.max((s_lhs - s_rhs).norm());
    }
    Ok(ModularReport {
        t_residual,
        s_residual,
    })
}

// ---------------------------------------------------------------------------
// 2-cocycle
// ---------------------------------------------------------------------------

/// Unit-modulus 2-cocycle on a window of lattice vectors, built
/// bimultiplicatively on the ordered basis and gauged so that `ε(α,−α) = 1`.
/// Values are fourth roots of unity, stored as exponents of `i`.
pub struct CocycleTable {
    gram: Vec<Vec<i64>>,
    window: i64,
}

/// Build the cocycle for an even lattice on coordinate window `[−w, w]^r`.
pub fn cocycle_build(gram: &[Vec<i64>], window: i64) -> crate::Result<CocycleTable> {
    check_square_symmetric(gram)?;
    check_even(gram)?;
    if window < 1 {
        return Err(Error::WindowTooSmall);
    }
    Ok(CocycleTable {
        gram: gram.to_vec(),
        window,
    })
}

impl CocycleTable {
    pub fn window(&self) -> i64 {
        self.window
    }

    fn in_window(&self, a: &[i64]) -> bool {
        a.len() == self.gram.len() && a.iter().all(|&x| x.abs() <= self.window)
    }

    /// Basis pairing used both bimultiplicatively and in the gauge:
    /// `Σ_{i<j} (g_ij + g_ii g_jj) a_i b_j mod 2`.
    fn upper_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.gram.len();
        let mut acc: i64 = 0;
        for i in 0..r {
            for j in i + 1..r {
                acc += (self.gram[i][j] + self.gram[i][i] * self.gram[j][j]) * a[i] * b[j];
            }
        }
        acc.rem_euclid(2)
    }

    /// Exponent `e ∈ ℤ/4` with `ε(α,β) = i^e`.
    pub fn eps_exponent(&self, a: &[i64], b: &[i64]) -> crate::Result<i64> {
        if !self.in_window(a) || !self.in_window(b) {
            return Err(Error::WindowTooSmall);
        }
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let sa = self.upper_pairing(a, a);
        let sb = self.upper_pairing(b, b);
        let sab = self.upper_pairing(&sum, &sum);
        let bil = self.upper_pairing(a, b);
        Ok((sa + sb - sab + 2 * bil).rem_euclid(4))
    }

    pub fn eps(&self, a: &[i64], b: &[i64]) -> crate::Result<Complex64> {
        Ok(match self.eps_exponent(a, b)? {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        })
    }

    fn bilinear(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.gram.len();
        let mut acc: i64 = 0;
        for i in 0..r {
            for j in 0..r {
                acc += self.gram[i][j] * a[i] * b[j];
            }
        }
        acc
    }

    /// Exhaustively check, on the supplied vectors, the five defining
    /// conditions: unit modulus, normalization `ε(α,0)=ε(0,α)=ε(α,−α)=1`,
    /// the 2-cocycle relation (on triples whose partial sums stay in the
    /// window), the symmetry factor `ε(α,β)/ε(β,α) = (−1)^{(α|β)+|α|²|β|²}`,
    /// and the conjugation law `ε(−β,−α) = conj ε(α,β)`.
    /// Returns `(pair_checks, triple_checks)`.
    pub fn verify(&self, vectors: &[Vec<i64>]) -> crate::Result<(usize, usize)> {
        let zero = vec![0i64; self.gram.len()];
        let mut pairs = 0usize;
        for a in vectors {
            let neg_a: Vec<i64> = a.iter().map(|x| -x).collect();
            if self.eps_exponent(a, &zero)? != 0 || self.eps_exponent(&zero, a)? != 0 {
                return Err(Error::InvalidInput("cocycle normalization failed".into()));
            }
            if self.eps_exponent(a, &neg_a)? != 0 {
                return Err(Error::InvalidInput("cocycle inverse condition failed".into()));
            }
        }
        for a in vectors {
            for b in vectors {
                let e_ab = self.eps_exponent(a, b)?;
                let e_ba = self.eps_exponent(b, a)?;
                // Unit modulus is exact by construction (fourth roots of 1).
                let stat = (self.bilinear(a, b) + self.bilinear(a, a) * self.bilinear(b, b))
                    .rem_euclid(2);
                if (e_ab - e_ba).rem_euclid(4) != 2 * stat {
                    return Err(Error::InvalidInput("cocycle symmetry factor failed".into()));
                }
                let neg_a: Vec<i64> = a.iter().map(|x| -x).collect();
                let neg_b: Vec<i64> = b.iter().map(|x| -x).collect();
                if self.eps_exponent(&neg_b, &neg_a)? != (-e_ab).rem_euclid(4) {
                    return Err(Error::InvalidInput("cocycle conjugation failed".into()));
                }
                pairs += 1;
            }
        }
        let mut triples = 0usize;
        for a in vectors {
            for b in vectors {
                let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !self.in_window(&ab) {
                    continue;
                }
                for c in vectors {
                    let bc: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                    if !self.in_window(&bc) {
                        continue;
                    }
                    let lhs = (self.eps_exponent(a, b)? + self.eps_exponent(&ab, c)?)
                        .rem_euclid(4);
                    let rhs = (self.eps_exponent(a, &bc)? + self.eps_exponent(b, c)?)
                        .rem_euclid(4);
                    if lhs != rhs {
                        return Err(Error::InvalidInput("cocycle relation failed".into()));
                    }
                    triples += 1;
                }
            }
        }
        if triples == 0 {
            return Err(Error::WindowTooSmall);
        }
        Ok((pairs, triples))
    }
}

// ---------------------------------------------------------------------------
// N=2 superconformal characters
// ---------------------------------------------------------------------------

/// Theta kernel `K_m(τ,μ;l)`: `η(τ)·K_m = Σ_n q^{(l/2)(n+m/l)²} y^{n+m/l}`,
/// with the `y`-exponent stored as the integer `y_den·(n+m/l)`.
pub fn k_function(l: i64, m: &Rat, y_den: i64, order: &Rat) -> crate::Result<BiSeries> {
    if l < 1 {
        return Err(Error::InvalidInput("theta kernel level must be positive".into()));
    }
    let (p, s) = rat_i64(m)?;
    // exponent(n) = (lsn + p)² / (2ls²); y-power (lsn+p)/(ls).
    let theta_den = 2 * l * s * s;
    let den = theta_den.lcm(&24);
    let ord_hi = order + rat(2, 1);
    let lim = (rat_f64(&ord_hi) * (2 * l) as f64).sqrt() * (s as f64) + 2.0;
    let n_max = lim.ceil() as i64;
    let order_num = (rat_f64(&ord_hi) * den as f64).ceil() as i64;
    let mut theta = BiSeries::zero(den, order_num);
    for n in -n_max..=n_max {
        let t = l * s * n + p;
        let num = t * t; // exponent numerator over 2ls²
        let k = num * (den / theta_den);
        if k >= order_num {
            continue;
        }
        let y_num = y_den * t;
        if y_num % (l * s) != 0 {
            return Err(Error::InvalidInput(
                "y-denominator does not resolve the theta-kernel charges".into(),
            ));
        }
        theta = theta.add(&BiSeries::monomial(
            den,
            k,
            UnitPoly::monomial(y_num / (l * s), Rat::one()),
            order_num,
        ));
    }
    let eta_inv = eta_series(&(order + rat(2, 1))).invert()?;
    let full = theta.mul(&BiSeries::from_frac(&eta_inv));
    let cut = (rat_f64(order) * full.exp_den() as f64).floor() as i64;
    Ok(full.truncated(cut))
}

/// Multiply every term by `(−1)^{w}` where `w` is the physical `y`-power
/// (the shift `μ → μ + 1/2`); requires all `y`-powers integral.
fn y_half_twist(series: &BiSeries, y_den: i64) -> crate::Result<BiSeries> {
    let den = series.exp_den();
    let mut out = BiSeries::zero(den, series.order_num());
    for (k, poly) in series.iter_raw() {
        let mut twisted = UnitPoly::zero();
        for (t, c) in poly.iter() {
            if t % y_den != 0 {
                return Err(Error::InvalidInput("non-integral charge under half shift".into()));
            }
            let sign = if (t / y_den) % 2 == 0 { c.clone() } else { -c };
            twisted = twisted.add(&UnitPoly::monomial(t, sign));
        }
        out = out.add(&BiSeries::monomial(den, k, twisted, series.order_num()));
    }
    Ok(out)
}

/// `Π_{n≥1}(1 + sign·q^{n−1/2})` through the given order.
fn half_odd_product(sign: i64, order: &Rat) -> FracSeries {
    let order_num = (rat_f64(order) * 2.0).ceil() as i64 + 2;
    let mut acc = FracSeries::one(2, order_num);
    let mut n = 1i64;
    while 2 * n - 1 < order_num {
        let f = FracSeries::one(2, order_num).add(&FracSeries::monomial(
            2,
            2 * n - 1,
            rat(sign, 1),
            order_num,
        ));
        acc = acc.mul(&f);
        n += 1;
    }
    acc
}

/// `Π_{n≥1}(1 + qⁿ)` through the given order.
fn integer_product(order: &Rat) -> FracSeries {
    let order_num = rat_f64(order).ceil() as i64 + 1;
    let mut acc = FracSeries::one(1, order_num);
    let mut n = 1i64;
    while n < order_num {
        let f = FracSeries::one(1, order_num).add(&FracSeries::monomial(
            1,
            n,
            Rat::one(),
            order_num,
        ));
        acc = acc.mul(&f);
        n += 1;
    }
    acc
}

/// Central charge `c_k = 3 − 6/(k+2)` of the N=2 unitary series.
pub fn n2_central_charge(k: i64) -> crate::Result<Rat> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidInput("level k must be 1 or 2".into()));
    }
    Ok(rat(3, 1) - rat(6, k + 2))
}

/// Allowed Neveu–Schwarz labels `(l,m)`: `0 ≤ l ≤ k`, `(l−m)/2 ∈ {0,…,l}`.
pub fn n2_labels(k: i64) -> crate::Result<Vec<(i64, i64)>> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidInput("level k must be 1 or 2".into()));
    }
    let mut out = Vec::new();
    for l in 0..=k {
        let mut m = -l;
        while m <= l {
            out.push((l, m));
            m += 2;
        }
    }
    Ok(out)
}

/// Exact N=2 superconformal character with its quantum numbers.
pub struct N2Character {
    pub series: BiSeries,
    pub y_den: i64,
    pub delta: Rat,
    pub charge: Rat,
    /// Eigenvalue of `τ → τ+2`.
    pub t2_phase: Complex64,
}

impl N2Character {
    pub fn eval(&self, tau: Complex64, mu: Complex64) -> Complex64 {
        self.series.eval_tau_mu(tau, mu / c64(self.y_den as f64))
    }
}

pub fn n2_character(k: i64, l: i64, m: i64, order: &Rat) -> crate::Result<N2Character> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidInput("level k must be 1 or 2".into()));
    }
    if !(0..=k).contains(&l) || (l - m) % 2 != 0 || m.abs() > l {
        return Err(Error::InvalidLabels(l, m));
    }
    let c = n2_central_charge(k)?;
    let delta = rat(l * (l + 2) - m * m, 4 * (k + 2));
    let charge = rat(m, k + 2);
    let t2_phase = (2.0 * PI * I * c64(2.0 * (rat_f64(&delta) - rat_f64(&c) / 24.0))).exp();
    let series;
    let y_den;
    match k {
        1 => {
            y_den = 3;
            series = k_function(3, &rat(m, 1), y_den, order)?;
        }
        2 => {
            y_den = 4;
            let ord = order + rat(1, 1);
            match (l, m.abs()) {
                (0, 0) | (2, 0) => {
                    let k0 = k_function(2, &Rat::zero(), y_den, &ord)?;
                    let k0_shift = y_half_twist(&k0, y_den)?;
                    let plus = BiSeries::from_frac(&half_odd_product(1, &ord));
                    let minus = BiSeries::from_frac(&half_odd_product(-1, &ord));
                    let combo = if l == 0 {
                        k0.mul(&plus).add(&k0_shift.mul(&minus))
                    } else {
                        k0.mul(&plus).sub(&k0_shift.mul(&minus))
                    };
                    let den = combo.exp_den().lcm(&48);
                    let pref = BiSeries::monomial(
                        den,
                        -den / 48,
                        UnitPoly::constant(rat(1, 2)),
                        combo.order_num() * (den / combo.exp_den()),
                    );
                    series = combo.mul(&pref);
                }
                (1, 1) => {
                    let kf = k_function(2, &rat(m, 2), y_den, &ord)?;
                    let prod = BiSeries::from_frac(&integer_product(&ord));
                    let combo = kf.mul(&prod);
                    let den = combo.exp_den().lcm(&24);
                    // The q^{1/24} offset is forced by Δ = 1/8 and the T²
                    // eigenvalue (the product equals η(2τ)/η(τ)).
                    let pref = BiSeries::monomial(
                        den,
                        den / 24,
                        UnitPoly::constant(Rat::one()),
                        combo.order_num() * (den / combo.exp_den()),
                    );
                    series = combo.mul(&pref);
                }
                (2, 2) => {
                    let kf = k_function(2, &rat(m / 2, 1), y_den, &ord)?;
                    let prod = BiSeries::from_frac(&half_odd_product(1, &ord));
                    let combo = kf.mul(&prod);
                    let den = combo.exp_den().lcm(&48);
                    let pref = BiSeries::monomial(
                        den,
                        -den / 48,
                        UnitPoly::constant(Rat::one()),
                        combo.order_num() * (den / combo.exp_den()),
                    );
                    series = combo.mul(&pref);
                }
                _ => return Err(Error::InvalidLabels(l, m)),
            }
        }
        _ => unreachable!(),
    }
    let cut = (rat_f64(order) * series.exp_den() as f64).floor() as i64;
    Ok(N2Character {
        series: series.truncated(cut),
        y_den,
        delta,
        charge,
        t2_phase,
    })
}

/// Modular inversion matrix on the allowed `(l,m)` labels:
/// `S = (2/(k+2))·sin(π(l+1)(l'+1)/(k+2))·e^{iπ m m'/(k+2)}`.
pub fn n2_smatrix(k: i64) -> crate::Result<Vec<Vec<Complex64>>> {
    let labels = n2_labels(k)?;
    let kk = (k + 2) as f64;
    Ok(labels
        .iter()
        .map(|&(l, m)| {
            labels
                .iter()
                .map(|&(l2, m2)| {
                    c64(2.0 / kk * (PI * ((l + 1) * (l2 + 1)) as f64 / kk).sin())
                        * (I * PI * c64((m * m2) as f64 / kk)).exp()
                })
                .collect()
        })
        .collect())
}
