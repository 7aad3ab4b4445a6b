//! Two-point-function numerics: closed-form oracles, the image-sum
//! representation of thermal correlators, Fourier/commutator data, energy
//! means against their modular closed forms, and Laurent extraction.

use ellmod::cft::{
    degeneracy, energy_mean, gegenbauer, image_sum_2pt, laurent_coeffs, moving_frame, thermal_2pt,
    vacuum_2pt, CorrVal, Kinematics, MatrixVal, ModelId,
};
use ellmod::elliptic::{eisenstein_num, p_eval, PIndex};
use ellmod::qseries::{energy_mean_series, EnergyModel};
use ellmod::Error;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);
const TOL: f64 = 1e-11;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn kin4(zeta12: Complex64, alpha: f64) -> Kinematics {
    Kinematics::from_angle(zeta12, Complex64::new(0.0, 0.0), alpha, 4).unwrap()
}

fn p(k: u32, kappa: u8, lambda: u8, z: Complex64, tau: Complex64) -> Complex64 {
    p_eval(&PIndex::new(k, kappa, lambda), z, tau, TOL).unwrap()
}

#[test]
fn gegenbauer_polynomials() {
    let x = c(0.37, 0.0);
    assert_eq!(gegenbauer(0, 1.5, x), Complex64::new(1.0, 0.0));
    // C₂¹(x) = 4x² − 1.
    let c21 = gegenbauer(2, 1.0, x);
    assert!((c21 - (4.0 * x * x - 1.0)).norm() < 1e-14);
    // C_n^λ(1) = binom(2λ+n−1, n).
    assert!((gegenbauer(3, 1.0, c(1.0, 0.0)) - 4.0).norm() < 1e-12);
    assert!((gegenbauer(4, 2.0, c(1.0, 0.0)) - 35.0).norm() < 1e-10);
    // Generating function (1−2xt+t²)^{−λ} for |t| ≤ 0.3.
    for lambda in [1.0, 1.5, 2.0] {
        let t = c(0.22, 0.17);
        let direct = (1.0 - 2.0 * x * t + t * t).powf(-lambda);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut tn = Complex64::new(1.0, 0.0);
        for n in 0..=90u32 {
            sum += tn * gegenbauer(n, lambda, x);
            tn *= t;
        }
        assert!(
            (sum - direct).norm() < 1e-10,
            "generating function λ={lambda}: {sum} vs {direct}"
        );
    }
}

#[test]
fn vacuum_closed_forms() {
    // Scalar D=4 at ζ₁₂ = 0.2, α = 0.1.
    let v = vacuum_2pt(&ModelId::Scalar { dim: 4 }, &kin4(c(0.2, 0.0), 0.1))
        .unwrap()
        .scalar()
        .unwrap();
    let expect = -1.0 / (8.0 * PI * (PI * 0.3).sin() * (PI * 0.1).sin());
    assert!((v - expect).norm() < 1e-12, "{v} vs {expect}");
    // Chiral Weyl at ζ₁₂ = 1/2 is 1/(2i).
    let w = vacuum_2pt(
        &ModelId::ChiralWeyl,
        &Kinematics::chiral(c(0.5, 0.0), c(0.0, 0.0)),
    )
    .unwrap()
    .scalar()
    .unwrap();
    assert!((w - 1.0 / (2.0 * I)).norm() < 1e-14);
    // Scalar D=6: the cotangent decomposition equals the direct product form.
    let kin = kin4(c(0.2, 0.0), 0.1);
    let v6 = vacuum_2pt(&ModelId::Scalar { dim: 6 }, &kin)
        .unwrap()
        .scalar()
        .unwrap();
    let (zp, zm) = (PI * 0.3, PI * 0.1);
    let direct = 1.0 / (2.0 * zp.sin() * zm.sin()).powi(2);
    let s2a = (2.0 * PI * 0.1).sin();
    let c2a = (2.0 * PI * 0.1).cos();
    let decomp = (zm.sin().powi(-2) + zp.sin().powi(-2)
        - 2.0 * (c2a / s2a) * (zm.cos() / zm.sin() - zp.cos() / zp.sin()))
        / (4.0 * s2a * s2a);
    assert!((direct - decomp).abs() < 1e-10 * direct.abs());
    assert!((v6 - direct).norm() < 1e-10 * direct.abs());
    // Kinematics on the light-cone pole set are rejected.
    assert_eq!(
        vacuum_2pt(&ModelId::Scalar { dim: 4 }, &kin4(c(0.1, 0.0), 0.1)),
        Err(Error::PoleKinematics)
    );
}

#[test]
fn moving_frame_oracle() {
    // Canonical frame with α = 0.2: 2v = (0, 0, −i, 1).
    let a = 0.2f64;
    let u1 = vec![0.0, 0.0, (PI * a).sin(), (PI * a).cos()];
    let u2 = vec![0.0, 0.0, -(PI * a).sin(), (PI * a).cos()];
    let fv = moving_frame(&u1, &u2).unwrap();
    let two_v: Vec<Complex64> = fv.v.iter().map(|z| 2.0 * z).collect();
    let expect = [c(0.0, 0.0), c(0.0, 0.0), -I, c(1.0, 0.0)];
    for (got, want) in two_v.iter().zip(&expect) {
        assert!((got - want).norm() < 1e-12, "2v = {two_v:?}");
    }
    // Collinear vectors are rejected.
    assert!(matches!(
        moving_frame(&u1, &u1),
        Err(Error::CollinearVectors)
    ));
    // Reconstruction residual for a non-axis pair.
    let n1 = [0.3f64, -0.5, 0.6, 0.55];
    let len1: f64 = n1.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u1b: Vec<f64> = n1.iter().map(|x| x / len1).collect();
    let n2 = [-0.1f64, 0.7, 0.2, 0.68];
    let len2: f64 = n2.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u2b: Vec<f64> = n2.iter().map(|x| x / len2).collect();
    let fv = moving_frame(&u1b, &u2b).unwrap();
    let dot: f64 = u1b.iter().zip(&u2b).map(|(x, y)| x * y).sum();
    let alpha = dot.acos() / (2.0 * PI);
    let e = (I * PI * alpha).exp();
    for j in 0..4 {
        let r1 = e * fv.v[j] + fv.vbar[j] / e - u1b[j];
        let r2 = fv.v[j] / e + e * fv.vbar[j] - u2b[j];
        assert!(r1.norm() < 1e-10 && r2.norm() < 1e-10);
    }
    // Quaternionic anticommutation: v̸⁺ v̸ = v² (v is a null vector here).
    let vs = MatrixVal::slash(&fv.v).unwrap();
    let vsp = MatrixVal::slash_plus(&fv.v).unwrap();
    let v2: Complex64 = fv.v.iter().map(|z| z * z).sum();
    let prod = vsp.mul(&vs);
    for i in 0..2 {
        for j in 0..2 {
            let want = if i == j { v2 } else { c(0.0, 0.0) };
            assert!((prod.0[i][j] - want).norm() < 1e-12);
        }
    }
}

#[test]
fn weyl4_vacuum_forms_agree() {
    // The compact product form versus the partial-fraction expansion in
    // cot 2πα and 1/sin 2πα.
    let kin = kin4(c(0.21, 0.04), 0.17);
    let got = match vacuum_2pt(&ModelId::Weyl4Canonical, &kin).unwrap() {
        CorrVal::Matrix(m) => m,
        _ => unreachable!(),
    };
    let (u1, u2) = (kin.u1.clone().unwrap(), kin.u2.clone().unwrap());
    let fv = moving_frame(&u1, &u2).unwrap();
    let vs = MatrixVal::slash_plus(&fv.v).unwrap();
    let vbs = MatrixVal::slash_plus(&fv.vbar).unwrap();
    let zp = PI * kin.zeta_plus();
    let zm = PI * kin.zeta_minus();
    let s2a = (2.0 * PI * 0.17).sin();
    let c2a = (2.0 * PI * 0.17).cos();
    let coef_v = zm.cos() / (zm.sin() * zm.sin()) - (c2a / s2a) / zm.sin()
        + 1.0 / (s2a * zp.sin());
    let coef_vb = zp.cos() / (zp.sin() * zp.sin()) + (c2a / s2a) / zp.sin()
        - 1.0 / (s2a * zm.sin());
    let expanded = vs
        .scale(-I / (2.0 * s2a) * coef_v)
        .add(&vbs.scale(I / (2.0 * s2a) * coef_vb));
    for i in 0..2 {
        for j in 0..2 {
            assert!(
                (got.0[i][j] - expanded.0[i][j]).norm() < 1e-10 * got.norm(),
                "entry ({i},{j}): {:?} vs {:?}",
                got.0[i][j],
                expanded.0[i][j]
            );
        }
    }
}

/// Models whose printed vacuum and thermal normalizations agree, so the
/// image sum reproduces the thermal correlator directly.
fn image_consistent_models() -> Vec<ModelId> {
    vec![
        ModelId::ChiralWeyl,
        ModelId::IsingNs,
        ModelId::ChiralU1Restriction,
        ModelId::Scalar { dim: 6 },
        ModelId::Scalar { dim: 8 },
        ModelId::N2Super { c: 2.5, l0_mean: c(0.3, 0.1) },
        ModelId::Weyl4Canonical,
        ModelId::Weyl4Subcanonical,
        ModelId::Maxwell,
    ]
}

#[test]
fn thermal_matches_image_sum() {
    let tau = c(0.2, 1.05);
    let zeta = c(0.17, 0.03);
    let mu = c(0.0, 0.0);
    for model in image_consistent_models() {
        let kin = if matches!(
            model,
            ModelId::ChiralWeyl
                | ModelId::IsingNs
                | ModelId::N2Super { .. }
                | ModelId::ChiralU1Restriction
        ) {
            Kinematics::chiral(zeta, c(0.0, 0.0))
        } else {
            kin4(zeta, 0.13)
        };
        let thermal = thermal_2pt(&model, &kin, tau, mu, TOL).unwrap();
        let image = image_sum_2pt(&model, &kin, tau, 200).unwrap();
        let scale = thermal.norm().max(1.0);
        let diff = thermal.add(&image.scale(-Complex64::new(1.0, 0.0)));
        assert!(
            diff.norm() < 1e-8 * scale,
            "{model:?}: thermal {thermal:?} vs image {image:?}"
        );
    }
    // D = 4 scalar: the printed vacuum carries the canonical normalization,
    // which differs from the Fourier normalization of the thermal form by
    // 2π; the image sum reproduces the thermal correlator up to that factor.
    let model = ModelId::Scalar { dim: 4 };
    let kin = kin4(zeta, 0.13);
    let thermal = thermal_2pt(&model, &kin, tau, mu, TOL)
        .unwrap()
        .scalar()
        .unwrap();
    let image = image_sum_2pt(&model, &kin, tau, 200)
        .unwrap()
        .scalar()
        .unwrap();
    assert!(
        (thermal - 2.0 * PI * image).norm() < 1e-8,
        "{thermal} vs 2π·{image}"
    );
    // Cutoff 0 is exactly the vacuum function.
    let vac = vacuum_2pt(&model, &kin).unwrap().scalar().unwrap();
    let k0 = image_sum_2pt(&model, &kin, tau, 0).unwrap().scalar().unwrap();
    assert_eq!(vac, k0);
}

#[test]
fn scalar_thermal_matches_fourier_sum() {
    // The p-function forms against the Gegenbauer-weighted q-series,
    // an independent (Fourier) representation of the same correlator.
    let tau = c(0.0, 1.2);
    let q: Complex64 = (2.0 * PI * I * tau).exp();
    let zeta = c(0.21, 0.0);
    let alpha = 0.13;
    let kin = kin4(zeta, alpha);
    let fourier = |d0: u32| -> Complex64 {
        let zp = PI * (zeta + alpha);
        let zm = PI * (zeta - alpha);
        let mut sum = (-4.0 * zp.sin() * zm.sin()).powi(-(d0 as i32));
        for n in d0 as i32..200 {
            let qn = q.powi(n);
            sum += 2.0 * qn / (1.0 - qn)
                * (2.0 * PI * n as f64 * zeta).cos()
                * gegenbauer(n as u32 - d0, d0 as f64, c((2.0 * PI * alpha).cos(), 0.0));
        }
        sum
    };
    // D = 4: the thermal p-form carries the Fourier normalization.
    let t4 = thermal_2pt(&ModelId::Scalar { dim: 4 }, &kin, tau, c(0.0, 0.0), TOL)
        .unwrap()
        .scalar()
        .unwrap();
    assert!((t4 - fourier(1)).norm() < 1e-10, "{t4} vs {}", fourier(1));
    // D = 6: the canonical normalization is 4 × the Fourier one.
    let t6 = thermal_2pt(&ModelId::Scalar { dim: 6 }, &kin, tau, c(0.0, 0.0), TOL)
        .unwrap()
        .scalar()
        .unwrap();
    assert!((t6 - 4.0 * fourier(2)).norm() < 1e-10);
    // D = 8 is evaluated through the Fourier series itself; cross-check a
    // coarser truncation.
    let t8 = thermal_2pt(&ModelId::Scalar { dim: 8 }, &kin, tau, c(0.0, 0.0), TOL)
        .unwrap()
        .scalar()
        .unwrap();
    assert!((t8 - fourier(3)).norm() < 1e-10);
}

#[test]
fn ellipticity_and_antiperiodicity() {
    let tau = c(0.1, 0.9);
    let zeta = c(0.23, 0.05);
    let mu = c(0.0, 0.0);
    // Bosonic thermal correlators are elliptic in ζ₁₂.
    for model in [
        ModelId::Scalar { dim: 4 },
        ModelId::Scalar { dim: 6 },
        ModelId::ChiralU1Restriction,
    ] {
        let kin = if model == ModelId::ChiralU1Restriction {
            Kinematics::chiral(zeta, c(0.0, 0.0))
        } else {
            kin4(zeta, 0.13)
        };
        let base = thermal_2pt(&model, &kin, tau, mu, TOL).unwrap();
        for shift in [c(1.0, 0.0), tau] {
            let kin_s = if model == ModelId::ChiralU1Restriction {
                Kinematics::chiral(zeta + shift, c(0.0, 0.0))
            } else {
                kin4(zeta + shift, 0.13)
            };
            let moved = thermal_2pt(&model, &kin_s, tau, mu, TOL).unwrap();
            let diff = moved.add(&base.scale(-Complex64::new(1.0, 0.0)));
            assert!(
                diff.norm() < 1e-9 * base.norm().max(1.0),
                "{model:?} under {shift}: {diff:?}"
            );
        }
    }
    // Maxwell F₃F₃ is elliptic as well.
    let kin = kin4(zeta, 0.13);
    let f33 = |z: Complex64| -> Complex64 {
        match thermal_2pt(&ModelId::Maxwell, &kin4(z, 0.13), tau, mu, TOL).unwrap() {
            CorrVal::Maxwell { f33, .. } => f33,
            _ => unreachable!(),
        }
    };
    let base = f33(zeta);
    assert!((f33(zeta + 1.0) - base).norm() < 1e-9 * base.norm().max(1.0));
    assert!((f33(zeta + tau) - base).norm() < 1e-9 * base.norm().max(1.0));
    drop(kin);
    // The chiral Weyl correlator is antiperiodic in both directions.
    let weyl = |z: Complex64| -> Complex64 {
        thermal_2pt(
            &ModelId::ChiralWeyl,
            &Kinematics::chiral(z, c(0.0, 0.0)),
            tau,
            mu,
            TOL,
        )
        .unwrap()
        .scalar()
        .unwrap()
    };
    let base = weyl(zeta);
    assert!((weyl(zeta + 1.0) + base).norm() < 1e-9);
    assert!((weyl(zeta + tau) + base).norm() < 1e-9);
}

#[test]
fn commutator_fourier_coefficients() {
    // Fourier coefficients of the D = 4 scalar thermal function on the line
    // Im ζ = −Im τ/2 are C¹_{n−1}(cos 2πα)/(1−qⁿ) for n > 0 and the
    // anti-ordered q-weighted values for n < 0; their difference is the
    // commutator C¹_{n−1}(cos 2πα) = sin 2πnα / sin 2πα.
    let tau = c(0.0, 1.3);
    let alpha = 0.13;
    let y0 = -0.65;
    let coeff = |n: i32| -> Complex64 {
        let m = 96;
        let mut acc = c(0.0, 0.0);
        for j in 0..m {
            let x = j as f64 / m as f64;
            let zeta = c(x, y0);
            let f = thermal_2pt(
                &ModelId::Scalar { dim: 4 },
                &kin4(zeta, alpha),
                tau,
                c(0.0, 0.0),
                TOL,
            )
            .unwrap()
            .scalar()
            .unwrap();
            acc += f * (2.0 * PI * I * n as f64 * zeta).exp();
        }
        acc / m as f64
    };
    let s2a = (2.0 * PI * alpha).sin();
    for n in 1..=4i32 {
        let commutator = coeff(n) - coeff(-n);
        let expect = (2.0 * PI * n as f64 * alpha).sin() / s2a;
        assert!(
            (commutator - expect).norm() < 1e-9,
            "n={n}: {commutator} vs {expect}"
        );
        // And each coefficient separately matches the mode Gibbs value.
        let q: Complex64 = (2.0 * PI * I * tau).exp();
        let qn = q.powi(n);
        let geg = gegenbauer(n as u32 - 1, 1.0, c((2.0 * PI * alpha).cos(), 0.0));
        assert!((coeff(n) - geg / (1.0 - qn)).norm() < 1e-9);
        assert!((coeff(-n) - geg * qn / (1.0 - qn)).norm() < 1e-9);
    }
}

#[test]
fn chiral_restriction_of_the_scalar() {
    // α → 0 of the D = 4 scalar reproduces the chiral U(1) current value
    // −(2π)⁻² p₂(ζ₁₂, τ).
    let tau = c(0.0, 1.1);
    let zeta = c(0.27, 0.02);
    let got = thermal_2pt(
        &ModelId::Scalar { dim: 4 },
        &kin4(zeta, 1e-4),
        tau,
        c(0.0, 0.0),
        TOL,
    )
    .unwrap()
    .scalar()
    .unwrap();
    let expect = -p(2, 0, 0, zeta, tau) / (4.0 * PI * PI);
    assert!((got - expect).norm() < 1e-6, "{got} vs {expect}");
    // The same limit through the dedicated model, exactly.
    let u1 = thermal_2pt(
        &ModelId::ChiralU1Restriction,
        &Kinematics::chiral(zeta, c(0.0, 0.0)),
        tau,
        c(0.0, 0.0),
        TOL,
    )
    .unwrap()
    .scalar()
    .unwrap();
    assert!((u1 - expect).norm() < 1e-12);
}

#[test]
fn weyl_thermal_reduces_to_chiral_on_the_diagonal() {
    // As α → 0 the subcanonical matrix correlator tends to the chiral Weyl
    // scalar times the unit matrix (v̸⁺ + v̸̄⁺ = u̸⁺ = 1 in the frame
    // u = (0, 0, 0, 1)).
    let tau = c(0.0, 1.2);
    let zeta = c(0.31, 0.0);
    let m = match thermal_2pt(
        &ModelId::Weyl4Subcanonical,
        &kin4(zeta, 1e-5),
        tau,
        c(0.0, 0.0),
        TOL,
    )
    .unwrap()
    {
        CorrVal::Matrix(m) => m,
        _ => unreachable!(),
    };
    let scalar = p(1, 1, 1, zeta, tau) / (2.0 * PI * I);
    for i in 0..2 {
        for j in 0..2 {
            let want = if i == j { scalar } else { c(0.0, 0.0) };
            assert!(
                (m.0[i][j] - want).norm() < 1e-3,
                "entry ({i},{j}): {:?} vs {want}",
                m.0[i][j]
            );
        }
    }
}

#[test]
fn n2_thermal_closed_form() {
    // With ⟨L̃₀⟩ = 0 the correlator is the pure weight-three term.
    let tau = c(0.0, 1.4);
    let zeta = c(0.19, 0.05);
    let model = ModelId::N2Super { c: 1.0, l0_mean: c(0.0, 0.0) };
    let got = thermal_2pt(
        &model,
        &Kinematics::chiral(zeta, c(0.0, 0.0)),
        tau,
        c(0.0, 0.0),
        TOL,
    )
    .unwrap()
    .scalar()
    .unwrap();
    let expect = I / (12.0 * PI.powi(3)) * p(3, 1, 1, zeta, tau);
    assert!((got - expect).norm() < 1e-12);
    // The general form adds −(i/π)⟨L̃₀⟩ p₁¹¹.
    let l0 = c(0.4, -0.2);
    let model = ModelId::N2Super { c: 2.0, l0_mean: l0 };
    let got = thermal_2pt(
        &model,
        &Kinematics::chiral(zeta, c(0.0, 0.0)),
        tau,
        c(0.0, 0.0),
        TOL,
    )
    .unwrap()
    .scalar()
    .unwrap();
    let expect =
        2.0 * I / (12.0 * PI.powi(3)) * p(3, 1, 1, zeta, tau) - I / PI * l0 * p(1, 1, 1, zeta, tau);
    assert!((got - expect).norm() < 1e-12);
}

#[test]
fn energy_means_match_closed_forms() {
    let tau = c(0.0, 2.0);
    for model in [
        ModelId::ChiralWeyl,
        ModelId::IsingNs,
        ModelId::IsingR,
        ModelId::Scalar { dim: 4 },
        ModelId::Scalar { dim: 6 },
        ModelId::Scalar { dim: 8 },
        ModelId::Weyl4Subcanonical,
        ModelId::Maxwell,
        ModelId::GaugeLongitudinal,
        ModelId::ChiralU1Restriction,
    ] {
        let em = energy_mean(&model, tau).unwrap();
        assert!(
            em.residual.norm() < 1e-10,
            "{model:?}: numeric {} vs closed {}",
            em.numeric,
            em.closed_form
        );
    }
    // The canonical Weyl field at τ = 3i, against the explicit combination
    // (the constant −17/480 reconciles the E₀ = −17/960 convention with the
    // positive excitation sum; see the exact series version in the q-series
    // tests).
    let tau3 = c(0.0, 3.0);
    let em = energy_mean(&ModelId::Weyl4Canonical, tau3).unwrap();
    let half = (tau3 + 1.0) / 2.0;
    let expect = (8.0 * eisenstein_num(4, tau3) - eisenstein_num(4, half)) / 4.0
        - (2.0 * eisenstein_num(2, tau3) - eisenstein_num(2, half)) / 4.0
        - 17.0 / 480.0;
    assert!((em.numeric - expect).norm() < 1e-10);
    let em = energy_mean(&ModelId::Weyl4Canonical, tau).unwrap();
    assert!(em.residual.norm() < 1e-10, "canonical residual {}", em.residual);
    // Maxwell plus gauge modes sum to the weight-four form 4G₄.
    let f = energy_mean(&ModelId::Maxwell, tau).unwrap().numeric;
    let l = energy_mean(&ModelId::GaugeLongitudinal, tau).unwrap().numeric;
    let total = 4.0 * eisenstein_num(4, tau);
    assert!((f + l - total).norm() < 1e-10);
    // The N=2 mean is an input, not derivable here.
    assert!(matches!(
        energy_mean(&ModelId::N2Super { c: 3.0, l0_mean: c(0.0, 0.0) }, tau),
        Err(Error::UnknownModel(_))
    ));
}

#[test]
fn energy_mean_agrees_with_the_exact_series() {
    // The numeric mode sum against the exact q-series of the qseries module.
    let tau = c(0.0, 1.5);
    let q2: Complex64 = (PI * I * tau).exp(); // series exponent grid is ℤ/2
    let pairs = [
        (ModelId::ChiralWeyl, EnergyModel::ChiralWeyl),
        (ModelId::IsingR, EnergyModel::IsingR),
        (ModelId::Scalar { dim: 4 }, EnergyModel::Scalar4),
        (ModelId::Weyl4Canonical, EnergyModel::Weyl4Canonical),
        (ModelId::Maxwell, EnergyModel::Maxwell),
    ];
    for (model, series_model) in pairs {
        let em = energy_mean(&model, tau).unwrap();
        let series = energy_mean_series(series_model, 60);
        let mut val = c(0.0, 0.0);
        for (k, coef) in series.iter_raw() {
            let cf: f64 = {
                use num_traits::ToPrimitive;
                coef.numer().to_f64().unwrap() / coef.denom().to_f64().unwrap()
            };
            val += q2.powi(k as i32) * cf;
        }
        // Tail bound: coefficients grow polynomially, |q|^{30} ≈ 4e−62.
        assert!(
            (em.numeric - val).norm() < 1e-10,
            "{model:?}: {} vs series {}",
            em.numeric,
            val
        );
    }
}

#[test]
fn degeneracy_tables() {
    assert_eq!(degeneracy(&ModelId::Scalar { dim: 4 }, 6).unwrap(), (9, 0));
    assert_eq!(degeneracy(&ModelId::Maxwell, 4).unwrap(), (6, 0));
    assert_eq!(degeneracy(&ModelId::GaugeLongitudinal, 2).unwrap(), (4, 0));
    // Canonical Weyl at energy 3/2 + 1: 2·2·3 = 12.
    assert_eq!(degeneracy(&ModelId::Weyl4Canonical, 5).unwrap(), (0, 12));
    assert_eq!(degeneracy(&ModelId::Weyl4Subcanonical, 1).unwrap(), (0, 4));
    assert_eq!(degeneracy(&ModelId::ChiralWeyl, 3).unwrap(), (0, 2));
    // D = 6 scalar: d_b(n) = 2n²(n²−1)/4! = n²(n²−1)/12.
    assert_eq!(degeneracy(&ModelId::Scalar { dim: 6 }, 6).unwrap(), (6, 0));
    // Out-of-spectrum requests are rejected.
    assert!(matches!(
        degeneracy(&ModelId::Maxwell, 2),
        Err(Error::OutOfSpectrum(_))
    ));
    assert!(matches!(
        degeneracy(&ModelId::ChiralWeyl, 4),
        Err(Error::OutOfSpectrum(_))
    ));
    assert!(matches!(
        degeneracy(&ModelId::Scalar { dim: 4 }, -2),
        Err(Error::OutOfSpectrum(_))
    ));
}

#[test]
fn laurent_extraction() {
    let tau = c(0.0, 2.0);
    // Chiral Weyl: simple pole of residue 1/(2πi); the ζ¹ coefficient is
    // 2πi⟨L̃₀⟩ = 2πi F₂(τ).
    let coeffs = laurent_coeffs(&ModelId::ChiralWeyl, tau, 2, TOL).unwrap();
    // layout: [a₋₂, a₋₁, a₀, a₁, a₂]
    let residue = 1.0 / (2.0 * PI * I);
    assert!((coeffs[1] - residue).norm() < 1e-8, "a₋₁ = {}", coeffs[1]);
    assert!(coeffs[0].norm() < 1e-10 && coeffs[2].norm() < 1e-10);
    let f2 = 2.0 * eisenstein_num(2, tau) - eisenstein_num(2, (tau + 1.0) / 2.0);
    let expect = 2.0 * PI * I * f2;
    assert!(
        (coeffs[3] - expect).norm() < 1e-8,
        "a₁ = {} vs 2πi F₂ = {expect}",
        coeffs[3]
    );
    // N = 2 with c = 9/2: the ζ⁻³ coefficient is ic/(12π³) and the ζ⁻¹
    // coefficient is −(i/π)⟨L̃₀⟩.
    let l0 = c(0.27, 0.0);
    let model = ModelId::N2Super { c: 4.5, l0_mean: l0 };
    let coeffs = laurent_coeffs(&model, tau, 3, TOL).unwrap();
    let lead = I * 4.5 / (12.0 * PI.powi(3));
    assert!((coeffs[0] - lead).norm() < 1e-7, "a₋₃ = {}", coeffs[0]);
    assert!((coeffs[2] - (-I / PI * l0)).norm() < 1e-7);
    // A pole inside the outer sampling circle (|τ| = 0.2 < 0.25) makes the
    // radii disagree about which annulus they expand in.
    assert!(matches!(
        laurent_coeffs(&model, c(0.0, 0.2), 4, TOL),
        Err(Error::ExtractionUnstable(_))
    ));
    // Depth is capped.
    assert!(matches!(
        laurent_coeffs(&ModelId::ChiralWeyl, tau, 5, TOL),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn grand_canonical_weyl() {
    // The μ-twisted chiral Weyl correlator matches p₁¹¹(ζ, τ, μ)/(2πi) and
    // stays finite for a generic chemical potential.
    let tau = c(0.0, 1.3);
    let zeta = c(0.22, 0.04);
    let mu = c(0.13, 0.07);
    let got = thermal_2pt(
        &ModelId::ChiralWeyl,
        &Kinematics::chiral(zeta, c(0.0, 0.0)),
        tau,
        mu,
        TOL,
    )
    .unwrap()
    .scalar()
    .unwrap();
    let expect = p_eval(&PIndex::new(1, 1, 1).with_mu(mu), zeta, tau, TOL).unwrap()
        / (2.0 * PI * I);
    assert!((got - expect).norm() < 1e-12);
    // Uncharged models reject a chemical potential.
    assert!(matches!(
        thermal_2pt(
            &ModelId::IsingNs,
            &Kinematics::chiral(zeta, c(0.0, 0.0)),
            tau,
            mu,
            TOL
        ),
        Err(Error::InvalidInput(_))
    ));
}
