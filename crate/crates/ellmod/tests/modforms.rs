//! Modular-form numerics: evaluation oracles, weight covariance under random
//! words in S and T, the G₂ anomaly, and theta characters.

use ellmod::elliptic::eisenstein_num;
use ellmod::modforms::{
    covariance_residual, form_eval, kronecker, lattice_level, quad_character, FormId,
};
use ellmod::modgroup::UnimodularMatrix;
use ellmod::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PI: f64 = std::f64::consts::PI;
const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e8_gram() -> Vec<Vec<i64>> {
    vec![
        vec![2, -1, 0, 0, 0, 0, 0, 0],
        vec![-1, 2, -1, 0, 0, 0, 0, 0],
        vec![0, -1, 2, -1, 0, 0, 0, 0],
        vec![0, 0, -1, 2, -1, 0, 0, 0],
        vec![0, 0, 0, -1, 2, -1, 0, -1],
        vec![0, 0, 0, 0, -1, 2, -1, 0],
        vec![0, 0, 0, 0, 0, -1, 2, 0],
        vec![0, 0, 0, 0, -1, 0, 0, 2],
    ]
}

fn two_squares_gram() -> Vec<Vec<i64>> {
    vec![vec![2, 0], vec![0, 2]]
}

/// Random word of length ≤ 10 in S and T^{±1}, filtered so that γτ keeps a
/// workable imaginary part for the q-expansions.
fn random_gamma(rng: &mut ChaCha8Rng, tau: Complex64) -> UnimodularMatrix {
    loop {
        let mut g = UnimodularMatrix::identity();
        let len = rng.gen_range(1..=10);
        for _ in 0..len {
            let step = match rng.gen_range(0..3) {
                0 => UnimodularMatrix::s(),
                1 => UnimodularMatrix::t(),
                _ => UnimodularMatrix::t_pow(-1),
            };
            g = g.mul(&step);
        }
        if g.act(tau).im > 0.35 {
            return g;
        }
    }
}

#[test]
fn evaluation_oracles() {
    // Δ(i) is nonzero (no zeros in the upper half plane: product form).
    let delta_i = form_eval(&FormId::Delta, c(0.0, 1.0), TOL).unwrap();
    assert!(delta_i.norm() > 1e-4);
    // j vanishes at the order-3 fixed point ρ = e^{2πi/3}.
    let rho = c(-0.5, 3f64.sqrt() / 2.0);
    let j_rho = form_eval(&FormId::J, rho, TOL).unwrap();
    assert!(j_rho.norm() < 1e-6, "j(ρ) = {j_rho}");
    // j(i) = 1728.
    let j_i = form_eval(&FormId::J, c(0.0, 1.0), TOL).unwrap();
    assert!((j_i - 1728.0).norm() < 1e-6, "j(i) = {j_i}");
    // G₄(10i) ≈ 1/240 up to e^{−20π} ≈ 5·10⁻²⁸.
    let g4 = form_eval(&FormId::Eisenstein(4), c(0.0, 10.0), TOL).unwrap();
    assert!((g4 - 1.0 / 240.0).norm() < 1e-18);
    // G₂* = G₂ + 1/(8π Im τ).
    let tau = c(0.3, 0.9);
    let star = form_eval(&FormId::G2Star, tau, TOL).unwrap();
    let plain = form_eval(&FormId::Eisenstein(2), tau, TOL).unwrap();
    assert!((star - plain - 1.0 / (8.0 * PI * 0.9)).norm() < 1e-14);
    assert_eq!(
        form_eval(&FormId::Delta, tau, 1e-30),
        Err(Error::NonconvergentTolerance(1e-30))
    );
}

#[test]
fn weight_covariance_under_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let forms: [(FormId, i32); 4] = [
        (FormId::Delta, 12),
        (FormId::Eisenstein(4), 4),
        (FormId::Eisenstein(6), 6),
        (FormId::J, 0),
    ];
    let tau = c(0.13, 1.05);
    for _ in 0..50 {
        let gamma = random_gamma(&mut rng, tau);
        for (f, w) in &forms {
            let resid = covariance_residual(f, *w, &gamma, tau, TOL).unwrap();
            let scale = form_eval(f, tau, TOL).unwrap().norm().max(1.0);
            assert!(
                resid.norm() < 1e-8 * scale,
                "{f:?} weight {w} residual {resid} under {gamma:?}"
            );
        }
    }
}

#[test]
fn g2_anomaly() {
    // (cτ+d)^{−2} G₂(γτ) − G₂(τ) = i·c/(4π(cτ+d)); the completion G₂* is clean.
    let tau = c(0.2, 1.0);
    let s = UnimodularMatrix::s();
    let resid = covariance_residual(&FormId::Eisenstein(2), 2, &s, tau, TOL).unwrap();
    let anomaly = Complex64::new(0.0, 1.0) / (4.0 * PI * s.cocycle(tau));
    assert!(
        (resid - anomaly).norm() < 1e-9,
        "residual {resid} vs anomaly {anomaly}"
    );
    assert!(resid.norm() > 1e-3, "the G₂ residual must not vanish");
    let star = covariance_residual(&FormId::G2Star, 2, &s, tau, TOL).unwrap();
    assert!(star.norm() < 1e-9, "G₂* residual {star}");
}

#[test]
fn eta_t_shift() {
    // η(τ+1) = e^{iπ/12} η(τ), branch fixed by the product form.
    for tau in [c(0.0, 1.0), c(0.3, 0.7)] {
        let lhs = form_eval(&FormId::Eta, tau + 1.0, TOL).unwrap();
        let rhs = (Complex64::new(0.0, PI / 12.0)).exp() * form_eval(&FormId::Eta, tau, TOL).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn f2_theta_group_covariance() {
    let tau = c(0.21, 1.1);
    let s = UnimodularMatrix::s();
    let t2 = UnimodularMatrix::t_pow(2);
    for gamma in [&s, &t2, &s.mul(&t2).mul(&s)] {
        let resid = covariance_residual(&FormId::F2, 2, gamma, tau, TOL).unwrap();
        assert!(resid.norm() < 1e-8, "F₂ residual {resid} under {gamma:?}");
    }
    // T is outside Γ_θ: rejected, not silently accepted.
    assert_eq!(
        covariance_residual(&FormId::F2, 2, &UnimodularMatrix::t(), tau, TOL),
        Err(Error::WrongSubgroup("Gamma_theta".into()))
    );
}

#[test]
fn two_squares_theta() {
    // Θ_{diag(2,2)} = Σ r₂(n) qⁿ = 1 + 4q + 4q² + 4q⁴ + 8q⁵ + … .
    let gram = two_squares_gram();
    let f = FormId::LatticeTheta(gram.clone());
    let tau = c(0.0, 2.0);
    let q = (-4.0 * PI).exp();
    let r2 = [1.0, 4.0, 4.0, 0.0, 4.0, 8.0, 0.0, 0.0, 4.0, 4.0, 8.0];
    let expect: f64 = r2
        .iter()
        .enumerate()
        .map(|(n, &cnt)| cnt * q.powi(n as i32))
        .sum();
    let val = form_eval(&f, tau, TOL).unwrap();
    assert!((val - expect).norm() < 1e-13, "{val} vs {expect}");
    // Level 4 and the character χ(d) = (−1)^{(d−1)/2}.
    assert_eq!(lattice_level(&gram).unwrap(), 4);
    for d in [1i64, 3, 5, 7, 9, 11] {
        let chi = quad_character(&gram, d).unwrap();
        let expect = if (d - 1) % 4 == 0 { 1.0 } else { -1.0 };
        assert_eq!(chi, expect, "χ({d})");
    }
    // Covariance with character under γ = (1,0;4,1) ∈ Γ₀(4), weight r/2 = 1.
    let gamma = UnimodularMatrix::new(1, 0, 4, 1).unwrap();
    let resid = covariance_residual(&f, 1, &gamma, c(0.1, 0.8), 1e-10).unwrap();
    assert!(resid.norm() < 1e-7, "Θ residual {resid}");
    // S is outside Γ₀(4).
    assert_eq!(
        covariance_residual(&f, 1, &UnimodularMatrix::s(), tau, TOL),
        Err(Error::WrongSubgroup("Gamma_0(4)".into()))
    );
    // Odd-diagonal Gram matrices are rejected.
    assert_eq!(
        form_eval(&FormId::LatticeTheta(vec![vec![1]]), tau, TOL),
        Err(Error::NotEven)
    );
}

#[test]
fn e8_theta_is_the_weight_four_eisenstein_series() {
    let gram = e8_gram();
    assert_eq!(lattice_level(&gram).unwrap(), 1);
    let f = FormId::LatticeTheta(gram);
    for tau in [c(0.0, 1.0), c(0.3, 1.2)] {
        let theta = form_eval(&f, tau, 1e-10).unwrap();
        let e4 = 240.0 * eisenstein_num(4, tau);
        assert!(
            (theta - e4).norm() < 1e-9 * e4.norm(),
            "Θ_E8({tau}) = {theta} vs 240G₄ = {e4}"
        );
    }
}

#[test]
fn kronecker_symbol_values() {
    // (−4/d) for odd d is the nontrivial character mod 4.
    for (d, expect) in [(1, 1), (3, -1), (5, 1), (7, -1), (2, 0)] {
        assert_eq!(kronecker(-4, d), expect, "(−4/{d})");
    }
    // (12/n) = (3/n) for odd n.
    assert_eq!(kronecker(12, 5), -1);
    assert_eq!(kronecker(12, 7), -1);
    assert_eq!(kronecker(12, 11), 1);
    assert_eq!(kronecker(12, 13), 1);
    assert_eq!(kronecker(12, 35), 1);
    assert_eq!(kronecker(12, 9), 0);
}
