//! Verification suite: each check pins one end-to-end identity of the
//! library — exact q-series identities, elliptic-function laws, curve
//! arithmetic, lattice characters and thermodynamics — with fixed inputs and
//! tolerances.  Shared between `ellmod verify` and the acceptance test.

use std::f64::consts::PI;
use std::time::Instant;

use ellmod::cft::{
    energy_mean, image_sum_2pt, thermal_2pt, Kinematics, ModelId,
};
use ellmod::elliptic::{
    curve_add, eisenstein_num, lattice_distance, p_eval, uniformize, weierstrass_invariants,
    weierstrass_p, weierstrass_p_prime, CurveForm, CurvePoint, PIndex,
};
use ellmod::lattice::{cocycle_build, k_function, n2_character, n2_labels, n2_smatrix};
use ellmod::modforms::{covariance_residual, FormId};
use ellmod::modgroup::UnimodularMatrix;
use ellmod::qseries::{
    delta_series, eisenstein_series, eta_series, g4_240_series, j_series, partition_series,
    rat, rat_int, theta_null_series, BiSeries, PartitionModel, Rat, SeriesCmp,
};
use ellmod::thermo::{
    density_asymptotics, energy_density, minkowski_thermal_2pt, sb_constant, BoxState,
    MinkowskiPair, Model, TwoPtMode,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-11;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub struct CheckResult {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    pub runtime_ms: u128,
}

/// All check ids in canonical (sorted) order.
pub const ALL_CHECKS: &[&str] = &[
    "c01_discriminant_from_eisenstein",
    "c02_eta_product_and_j",
    "c03_jacobi_triple_product",
    "c04_theta_eighth_powers",
    "c05_e8_character",
    "c06_curve_group_law",
    "c07_p_function_suite",
    "c08_weierstrass_ode_addition",
    "c09_modular_covariance",
    "c10_thermal_image_sum",
    "c11_energy_means",
    "c12_stefan_boltzmann",
    "c13_infinite_volume_2pt",
    "c14_n2_characters",
    "c15_lattice_cocycle",
];

/// Check ids belonging to a named suite, or `None` for an unknown name.
pub fn suite_checks(suite: &str) -> Option<Vec<&'static str>> {
    let ids: Vec<&'static str> = match suite {
        "all" => ALL_CHECKS.to_vec(),
        "exact" => ALL_CHECKS[0..4].to_vec(),
        "curve" => vec!["c06_curve_group_law"],
        "elliptic" => vec![
            "c07_p_function_suite",
            "c08_weierstrass_ode_addition",
            "c09_modular_covariance",
        ],
        "lattice" => vec![
            "c05_e8_character",
            "c14_n2_characters",
            "c15_lattice_cocycle",
        ],
        "cft" => vec!["c10_thermal_image_sum", "c11_energy_means"],
        "thermo" => vec!["c12_stefan_boltzmann", "c13_infinite_volume_2pt"],
        _ => return None,
    };
    Some(ids)
}

/// Run one suite; results come back sorted by check id.
pub fn run_suite(suite: &str, seed: u64) -> Option<Vec<CheckResult>> {
    let mut ids = suite_checks(suite)?;
    ids.sort_unstable();
    Some(ids.into_iter().map(|id| run_check(id, seed)).collect())
}

pub fn run_check(id: &'static str, seed: u64) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match id {
        "c01_discriminant_from_eisenstein" => c01(),
        "c02_eta_product_and_j" => c02(),
        "c03_jacobi_triple_product" => c03(),
        "c04_theta_eighth_powers" => c04(),
        "c05_e8_character" => c05(),
        "c06_curve_group_law" => c06(seed),
        "c07_p_function_suite" => c07(),
        "c08_weierstrass_ode_addition" => c08(seed),
        "c09_modular_covariance" => c09(),
        "c10_thermal_image_sum" => c10(),
        "c11_energy_means" => c11(),
        "c12_stefan_boltzmann" => c12(),
        "c13_infinite_volume_2pt" => c13(),
        "c14_n2_characters" => c14(),
        "c15_lattice_cocycle" => c15(),
        other => (false, format!("unknown check id {other:?}")),
    };
    CheckResult {
        id,
        passed,
        detail,
        runtime_ms: start.elapsed().as_millis(),
    }
}

fn cmp_detail(tag: &str, cmp: &SeriesCmp<Rat>) -> Option<String> {
    match cmp {
        SeriesCmp::Equal => None,
        SeriesCmp::Mismatch { exponent, lhs, rhs } => Some(format!(
            "{tag}: coefficient mismatch at q^{exponent}: {lhs} vs {rhs}"
        )),
    }
}

fn bicmp_detail(tag: &str, cmp: &SeriesCmp<ellmod::qseries::UnitPoly>) -> Option<String> {
    match cmp {
        SeriesCmp::Equal => None,
        SeriesCmp::Mismatch { exponent, .. } => {
            Some(format!("{tag}: coefficient mismatch at q^{exponent}"))
        }
    }
}

fn c01() -> (bool, String) {
    let ord = rat(31, 1);
    let g4 = eisenstein_series(4, 0, 0, &ord).unwrap();
    let g6 = eisenstein_series(6, 0, 0, &ord).unwrap();
    let lhs = g4
        .scale(&rat_int(20))
        .int_pow(3)
        .unwrap()
        .sub(&g6.scale(&rat_int(7)).int_pow(2).unwrap().scale(&rat_int(3)));
    let cmp = lhs
        .series_equal(&delta_series(&ord), &rat(30, 1))
        .unwrap();
    match cmp_detail("(20G4)^3 - 3(7G6)^2 vs Delta", &cmp) {
        None => (true, "exact through q^30".into()),
        Some(d) => (false, d),
    }
}

fn c02() -> (bool, String) {
    let ord = rat(31, 1);
    let eta24 = eta_series(&ord).int_pow(24).unwrap();
    let cmp = eta24
        .series_equal(&delta_series(&ord), &rat(30, 1))
        .unwrap();
    if let Some(d) = cmp_detail("eta^24 vs Delta", &cmp) {
        return (false, d);
    }
    let j = j_series(&rat(3, 1));
    let expected = [
        (rat(-1, 1), rat_int(1)),
        (rat(0, 1), rat_int(744)),
        (rat(1, 1), rat_int(196884)),
        (rat(2, 1), rat_int(21493760)),
    ];
    for (e, want) in expected {
        let got = j.coeff(&e);
        if got.as_ref() != Some(&want) {
            return (false, format!("j coefficient at q^{e}: {got:?}, wanted {want}"));
        }
    }
    (true, "eta^24 = Delta through q^30; j coefficients 1, 744, 196884, 21493760".into())
}

fn c03() -> (bool, String) {
    let ord = rat(11, 1);
    let prod: BiSeries = partition_series(PartitionModel::parse("weyl_NS_product").unwrap(), &ord);
    let theta: BiSeries = partition_series(PartitionModel::parse("weyl_NS_theta").unwrap(), &ord);
    let cmp = prod.series_equal(&theta, &rat(10, 1)).unwrap();
    match bicmp_detail("triple product", &cmp) {
        None => (true, "product and theta forms agree exactly through q^10, all y powers".into()),
        Some(d) => (false, d),
    }
}

fn c04() -> (bool, String) {
    let ord = rat(11, 1);
    let mut sum = theta_null_series(0, 0, &ord).int_pow(8).unwrap();
    for (m, n) in [(1u8, 0u8), (0, 1)] {
        sum = sum.add(&theta_null_series(m, n, &ord).int_pow(8).unwrap());
    }
    let lhs = sum.scale(&rat(1, 2));
    let cmp = lhs
        .series_equal(&g4_240_series(&ord), &rat(10, 1))
        .unwrap();
    match cmp_detail("theta^8 mean vs 240G4", &cmp) {
        None => (true, "exact through q^10".into()),
        Some(d) => (false, d),
    }
}

fn c05() -> (bool, String) {
    let gram = vec![
        vec![2, -1, 0, 0, 0, 0, 0, 0],
        vec![-1, 2, -1, 0, 0, 0, 0, 0],
        vec![0, -1, 2, -1, 0, 0, 0, 0],
        vec![0, 0, -1, 2, -1, 0, 0, 0],
        vec![0, 0, 0, -1, 2, -1, 0, -1],
        vec![0, 0, 0, 0, -1, 2, -1, 0],
        vec![0, 0, 0, 0, 0, -1, 2, 0],
        vec![0, 0, 0, 0, -1, 0, 0, 2],
    ];
    let zeros = vec![Rat::from_integer(0.into()); 8];
    let chi = ellmod::lattice::voa_character(&gram, &zeros, &zeros, &rat(11, 1)).unwrap();
    let chi_q = chi.series.at_y_one();
    let eta8 = eta_series(&rat(12, 1)).int_pow(8).unwrap();
    let theta = chi_q.mul(&eta8);
    let cmp = theta
        .series_equal(&g4_240_series(&rat(11, 1)), &rat(10, 1))
        .unwrap();
    if let Some(d) = cmp_detail("E8 theta vs 240G4", &cmp) {
        return (false, d);
    }
    let cube = chi_q.int_pow(3).unwrap();
    let cmp = cube
        .series_equal(&j_series(&rat(7, 1)), &rat(6, 1))
        .unwrap();
    if let Some(d) = cmp_detail("E8 character cubed vs j", &cmp) {
        return (false, d);
    }
    (true, "theta = 240G4 through q^10; character cubed = j through q^6".into())
}

fn c06(seed: u64) -> (bool, String) {
    let curve: CurveForm<Rat> = CurveForm::Short {
        a: rat_int(-1),
        b: rat_int(1),
    };
    let p = CurvePoint::finite(rat(-11, 9), rat(17, 27));
    let q = CurvePoint::finite(rat_int(0), rat_int(1));
    let sum = curve_add(&p, &q, &curve).unwrap();
    let want = CurvePoint::finite(rat(159, 121), rat(-1861, 1331));
    if sum != want {
        return (false, format!("P+Q oracle mismatch: {sum:?}"));
    }
    // 100 random triples from a pool of rational points and their sums.
    let mut pool: Vec<CurvePoint<Rat>> = vec![
        CurvePoint::Infinity,
        CurvePoint::finite(rat_int(0), rat_int(1)),
        CurvePoint::finite(rat_int(1), rat_int(1)),
        CurvePoint::finite(rat_int(-1), rat_int(-1)),
        CurvePoint::finite(rat_int(3), rat_int(5)),
        CurvePoint::finite(rat(1, 4), rat(7, 8)),
        CurvePoint::finite(rat_int(5), rat_int(-11)),
    ];
    for i in 0..5 {
        let s = curve_add(&pool[i], &pool[i + 1], &curve).unwrap();
        pool.push(s);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..100 {
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let b = pool[rng.gen_range(0..pool.len())].clone();
        let d = pool[rng.gen_range(0..pool.len())].clone();
        let ab = curve_add(&a, &b, &curve).unwrap();
        if ab != curve_add(&b, &a, &curve).unwrap() {
            return (false, format!("commutativity failed on trial {trial}"));
        }
        let left = curve_add(&ab, &d, &curve).unwrap();
        let right = curve_add(&a, &curve_add(&b, &d, &curve).unwrap(), &curve).unwrap();
        if left != right {
            return (false, format!("associativity failed on trial {trial}"));
        }
    }
    (true, "oracle (159/121, -1861/1331) exact; 100 random triples commutative and associative".into())
}

fn c07() -> (bool, String) {
    let taus = [c(0.0, 1.0), c(0.5, 1.0), c(0.0, 2.0)];
    let mut max_res: f64 = 0.0;
    // Periodicity/antiperiodicity and parity on a 3x3 grid.
    let zetas = [c(-0.43, -0.31), c(0.13, 0.05), c(0.27, 0.19)];
    for tau in taus {
        for z in zetas {
            for k in 1..=3u32 {
                for kappa in 0..2u8 {
                    for lambda in 0..2u8 {
                        if k + kappa as u32 + lambda as u32 <= 1 {
                            continue;
                        }
                        let idx = PIndex::new(k, kappa, lambda);
                        let v = p_eval(&idx, z, tau, TOL).unwrap();
                        let scale = v.norm().max(1.0);
                        let s1 = if lambda == 1 { -1.0 } else { 1.0 };
                        let v1 = p_eval(&idx, z + 1.0, tau, TOL).unwrap();
                        max_res = max_res.max((v1 - s1 * v).norm() / scale);
                        let st = if kappa == 1 { -1.0 } else { 1.0 };
                        let vt = p_eval(&idx, z + tau, tau, TOL).unwrap();
                        max_res = max_res.max((vt - st * v).norm() / scale);
                        let sp = if k % 2 == 1 { -1.0 } else { 1.0 };
                        let vm = p_eval(&idx, -z, tau, TOL).unwrap();
                        max_res = max_res.max((vm - sp * v).norm() / scale);
                    }
                }
            }
        }
    }
    if max_res >= 1e-8 {
        return (false, format!("periodicity/parity residual {max_res:.3e}"));
    }
    // Differentiation ladder (central difference, 1e-6 envelope).
    let mut max_fd: f64 = 0.0;
    let h = 1e-5;
    for tau in [c(0.0, 1.0), c(0.5, 1.0)] {
        for (kappa, lambda) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            for k in 1..=3u32 {
                let z = c(0.27, 0.13);
                let idx = PIndex::new(k, kappa, lambda);
                let fp = p_eval(&idx, z + h, tau, TOL).unwrap();
                let fm = p_eval(&idx, z - h, tau, TOL).unwrap();
                let deriv = (fp - fm) / (2.0 * h);
                let next = p_eval(&PIndex::new(k + 1, kappa, lambda), z, tau, TOL).unwrap();
                max_fd = max_fd.max((deriv + k as f64 * next).norm() / next.norm().max(1.0));
            }
        }
    }
    if max_fd >= 1e-6 {
        return (false, format!("differentiation ladder residual {max_fd:.3e}"));
    }
    // Modular covariance for the twisted sectors.
    let s = UnimodularMatrix::s();
    let t = UnimodularMatrix::t();
    let ts = t.mul(&s);
    let tau = c(0.1, 1.3);
    let z = c(0.23, 0.11);
    let mut max_cov: f64 = 0.0;
    for gamma in [&s, &t, &ts] {
        for (kappa, lambda) in [(1, 0), (0, 1), (1, 1)] {
            for k in 1..=2u32 {
                let rhs = p_eval(&PIndex::new(k, kappa, lambda), z, tau, TOL).unwrap();
                let (kp, lp) = gamma.index_act(kappa, lambda);
                let j = gamma.cocycle(tau);
                let lhs = p_eval(&PIndex::new(k, kp, lp), z / j, gamma.act(tau), TOL).unwrap()
                    / j.powi(k as i32);
                max_cov = max_cov.max((lhs - rhs).norm() / rhs.norm().max(1.0));
            }
        }
    }
    if max_cov >= 1e-8 {
        return (false, format!("modular covariance residual {max_cov:.3e}"));
    }
    // Theta-ratio representation: mu -> 0 limit matches the row sums.
    let tau = c(0.1, 1.2);
    let mut max_ratio: f64 = 0.0;
    for z in [c(0.23, 0.11), c(-0.37, 0.29)] {
        for (kappa, lambda) in [(0u8, 0u8), (1, 0), (0, 1), (1, 1)] {
            let row = p_eval(&PIndex::new(1, kappa, lambda), z, tau, TOL).unwrap();
            let mu = c(1e-7, 0.0);
            let ratio = p_eval(&PIndex::new(1, kappa, lambda).with_mu(mu), z, tau, TOL).unwrap();
            max_ratio = max_ratio.max((ratio - row).norm() / row.norm().max(1.0));
        }
    }
    if max_ratio >= 1e-5 {
        return (false, format!("theta-ratio limit residual {max_ratio:.3e}"));
    }
    (
        true,
        format!(
            "residuals: periodicity/parity {max_res:.2e}, ladder {max_fd:.2e}, covariance {max_cov:.2e}, theta-ratio {max_ratio:.2e}"
        ),
    )
}

fn c08(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let taus = [c(0.0, 1.0), c(0.0, 2.0), c(0.5, 1.0)];
    let mut max_ode: f64 = 0.0;
    let mut max_add: f64 = 0.0;
    let draw = |rng: &mut ChaCha8Rng, tau: Complex64| -> Complex64 {
        loop {
            let z = c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
            if lattice_distance(z, tau) > 0.05 {
                return z;
            }
        }
    };
    for i in 0..20 {
        let tau = taus[i % 3];
        let (g2, g3) = weierstrass_invariants(tau);
        let z = draw(&mut rng, tau);
        let p = weierstrass_p(z, tau, TOL).unwrap();
        let pp = weierstrass_p_prime(z, tau, TOL).unwrap();
        let resid = pp * pp - (4.0 * p * p * p - g2 * p - g3);
        max_ode = max_ode.max(resid.norm() / (p * p * p).norm().max(1.0));
        // Addition theorem through the curve group law.
        let z2 = draw(&mut rng, tau);
        if lattice_distance(z + z2, tau) < 0.05 {
            continue;
        }
        let curve = CurveForm::FourXCubed { g2, g3 };
        let a = uniformize(z, tau, TOL);
        let b = uniformize(z2, tau, TOL);
        let sum = curve_add(&a, &b, &curve).unwrap();
        match (uniformize(z + z2, tau, TOL), sum) {
            (CurvePoint::Finite { x: xa, y: ya }, CurvePoint::Finite { x: xb, y: yb }) => {
                max_add = max_add.max((xa - xb).norm() / xa.norm().max(1.0));
                max_add = max_add.max((ya - yb).norm() / ya.norm().max(1.0));
            }
            _ => return (false, format!("unexpected infinite point on trial {i}")),
        }
    }
    if max_ode >= 1e-6 || max_add >= 1e-6 {
        return (false, format!("ODE residual {max_ode:.3e}, addition residual {max_add:.3e}"));
    }
    (true, format!("ODE residual {max_ode:.2e}, addition residual {max_add:.2e} over 20 points"))
}

fn c09() -> (bool, String) {
    let tau = c(0.3, 1.1);
    let s = UnimodularMatrix::s();
    // Weight-2 anomaly under S: residual is i/(4*pi*tau) (c=1, d=0).
    let res = covariance_residual(&FormId::Eisenstein(2), 2, &s, tau, TOL).unwrap();
    let anomaly = Complex64::i() / (4.0 * PI * tau);
    let g2_gap = (res - anomaly).norm();
    if g2_gap >= 1e-9 {
        return (false, format!("weight-2 anomaly gap {g2_gap:.3e}"));
    }
    let t = UnimodularMatrix::t();
    let mut max_res: f64 = 0.0;
    for gamma in [&s, &t] {
        for (form, weight) in [
            (FormId::Delta, 12),
            (FormId::Eisenstein(4), 4),
            (FormId::Eisenstein(6), 6),
            (FormId::J, 0),
        ] {
            let r = covariance_residual(&form, weight, gamma, tau, TOL).unwrap();
            let base = ellmod::modforms::form_eval(&form, tau, TOL).unwrap();
            max_res = max_res.max(r.norm() / base.norm().max(1.0));
        }
    }
    if max_res >= 1e-8 {
        return (false, format!("covariance residual {max_res:.3e}"));
    }
    (true, format!("anomaly gap {g2_gap:.2e}; Delta/G4/G6/j residual {max_res:.2e}"))
}

fn c10() -> (bool, String) {
    let tau = c(0.2, 1.05);
    let zeta = c(0.17, 0.03);
    let mu = c(0.0, 0.0);
    let mut max_res: f64 = 0.0;
    // Chiral Weyl: 2d kinematics; scalar D=6 and Maxwell: 4d kinematics.
    let cases: Vec<(ModelId, Kinematics)> = vec![
        (ModelId::ChiralWeyl, Kinematics::chiral(zeta, c(0.0, 0.0))),
        (
            ModelId::Scalar { dim: 6 },
            Kinematics::from_angle(zeta, c(0.0, 0.0), 0.13, 6).unwrap(),
        ),
        (
            ModelId::Maxwell,
            Kinematics::from_angle(zeta, c(0.0, 0.0), 0.13, 4).unwrap(),
        ),
    ];
    for (model, kin) in &cases {
        let thermal = thermal_2pt(model, kin, tau, mu, TOL).unwrap();
        let image = image_sum_2pt(model, kin, tau, 200).unwrap();
        let diff = thermal.add(&image.scale(c(-1.0, 0.0)));
        max_res = max_res.max(diff.norm() / thermal.norm().max(1.0));
    }
    // D=4 scalar carries the canonical vacuum normalization: factor 2*pi.
    let model = ModelId::Scalar { dim: 4 };
    let kin = Kinematics::from_angle(zeta, c(0.0, 0.0), 0.13, 4).unwrap();
    let thermal = thermal_2pt(&model, &kin, tau, mu, TOL)
        .unwrap()
        .scalar()
        .unwrap();
    let image = image_sum_2pt(&model, &kin, tau, 200)
        .unwrap()
        .scalar()
        .unwrap();
    max_res = max_res.max((thermal - 2.0 * PI * image).norm() / thermal.norm().max(1.0));
    if max_res >= 1e-8 {
        return (false, format!("image-sum residual {max_res:.3e}"));
    }
    (true, format!("image sum (cutoff 200) matches closed forms, residual {max_res:.2e}"))
}

fn c11() -> (bool, String) {
    let mut max_res: f64 = 0.0;
    for tau in [c(0.0, 1.0), c(0.0, 2.0)] {
        for model in [
            ModelId::ChiralWeyl,
            ModelId::Scalar { dim: 4 },
            ModelId::Weyl4Canonical,
            ModelId::Weyl4Subcanonical,
            ModelId::Maxwell,
            ModelId::GaugeLongitudinal,
        ] {
            let em = energy_mean(&model, tau).unwrap();
            max_res = max_res.max(em.residual.norm());
        }
        // Maxwell plus longitudinal gauge modes sum to 4*G4.
        let f = energy_mean(&ModelId::Maxwell, tau).unwrap().numeric;
        let l = energy_mean(&ModelId::GaugeLongitudinal, tau).unwrap().numeric;
        let total = 4.0 * eisenstein_num(4, tau);
        max_res = max_res.max((f + l - total).norm());
    }
    if max_res >= 1e-10 {
        return (false, format!("energy-mean residual {max_res:.3e}"));
    }
    (true, format!("closed modular forms matched, residual {max_res:.2e}"))
}

fn c12() -> (bool, String) {
    // Stefan-Boltzmann limits.
    let scalar = BoxState::new(1.0, 100.0).unwrap();
    let direct = energy_density(Model::Scalar4, &scalar);
    let sb_gap = (direct - PI * PI / 30.0).abs();
    if sb_gap >= 1e-10 {
        return (false, format!("scalar density gap {sb_gap:.3e} at R/beta = 100"));
    }
    let mx_gap = (sb_constant(Model::Maxwell) - PI * PI / 15.0).abs();
    if mx_gap >= 1e-6 {
        return (false, format!("maxwell extrapolation gap {mx_gap:.3e}"));
    }
    // Exponentially small remainder at R/beta = 3 against the pinned
    // envelope 10*exp(-4*pi^2*R/beta).  The true remainder has prefactor
    // 8*pi^2 (scalar) and 16*pi^2 (maxwell), so this clause cannot pass;
    // it is reported honestly.
    let state = BoxState::new(1.0, 3.0).unwrap();
    let envelope = 10.0 * (-4.0 * PI * PI * 3.0).exp();
    let mut lines = vec![format!(
        "scalar density gap {sb_gap:.2e}; maxwell extrapolation gap {mx_gap:.2e}"
    )];
    let mut ok = true;
    for model in [Model::Scalar4, Model::Maxwell] {
        // The analytically resolved remainder: a direct f64 subtraction of
        // the polynomial from the density is pure cancellation at this size.
        let a = density_asymptotics(model, &state);
        let remainder = a.residual.abs();
        if remainder >= envelope {
            ok = false;
            lines.push(format!(
                "{model:?} remainder {remainder:.3e} exceeds envelope {envelope:.3e} (ratio {:.1}); the remainder's true prefactor is {} rather than 10",
                remainder / (-4.0 * PI * PI * 3.0).exp(),
                if matches!(model, Model::Scalar4) { "8*pi^2 ~ 79" } else { "16*pi^2 ~ 158" },
            ));
        }
    }
    (ok, lines.join("; "))
}

fn c13() -> (bool, String) {
    let beta = 1.0;
    let mut max_res: f64 = 0.0;
    for (t, r) in [(0.0, 0.3), (0.0, 0.7), (0.1, 0.5)] {
        let pair = MinkowskiPair::from_difference([t, r, 0.0, 0.0]);
        let limit = minkowski_thermal_2pt(&pair, beta, TwoPtMode::Limit)
            .unwrap()
            .value;
        let fourier = minkowski_thermal_2pt(&pair, beta, TwoPtMode::Fourier)
            .unwrap()
            .value;
        max_res = max_res.max((limit - fourier).norm() / limit.norm().max(1.0));
    }
    if max_res >= 1e-8 {
        return (false, format!("fourier vs closed form residual {max_res:.3e}"));
    }
    // Finite-radius correction -1/(4*pi^2*beta*R) at R = 100*beta.
    let radius = 100.0;
    let pair = MinkowskiPair::from_difference([0.0, 0.3, 0.0, 0.0]);
    let limit = minkowski_thermal_2pt(&pair, beta, TwoPtMode::Limit)
        .unwrap()
        .value;
    let finite = minkowski_thermal_2pt(&pair, beta, TwoPtMode::FiniteR(radius))
        .unwrap()
        .value;
    let predicted = -1.0 / (4.0 * PI * PI * beta * radius);
    let ratio = (finite - limit).re / predicted;
    if (ratio - 1.0).abs() >= 0.10 {
        return (false, format!("finite-R correction off: ratio {ratio:.4}"));
    }
    (
        true,
        format!("fourier residual {max_res:.2e}; finite-R correction ratio {ratio:.4}"),
    )
}

fn c14() -> (bool, String) {
    // Kernel splitting, exact through q^5.
    for m in [0i64, 1, -1] {
        let lhs = k_function(3, &rat(m, 1), 6, &rat(6, 1)).unwrap();
        let a = k_function(12, &rat(2 * m, 1), 12, &rat(6, 1)).unwrap();
        let b = k_function(12, &rat(2 * m + 6, 1), 12, &rat(6, 1)).unwrap();
        if lhs.series_equal(&a.add(&b), &rat(5, 1)).unwrap() != SeriesCmp::Equal {
            return (false, format!("kernel splitting failed at charge {m}"));
        }
    }
    // T^2 eigenvalues for every label at both levels.
    let tau = c(0.13, 1.1);
    let mut max_t2: f64 = 0.0;
    for k in [1i64, 2] {
        for &(l, m) in &n2_labels(k).unwrap() {
            let chi = n2_character(k, l, m, &rat(30, 1)).unwrap();
            let lhs = chi.eval(tau + 2.0, c(0.0, 0.0));
            let rhs = chi.t2_phase * chi.eval(tau, c(0.0, 0.0));
            max_t2 = max_t2.max((lhs - rhs).norm());
        }
    }
    if max_t2 >= 1e-8 {
        return (false, format!("T^2 eigenvalue residual {max_t2:.3e}"));
    }
    // S-law closure at tau = 1.1i: level-1 characters under the S-matrix,
    // and the kernel inversion law at levels 2 and 3.
    let tau = c(0.0, 1.1);
    let s1 = n2_smatrix(1).unwrap();
    let labels = n2_labels(1).unwrap();
    let chars: Vec<_> = labels
        .iter()
        .map(|&(l, m)| n2_character(1, l, m, &rat(30, 1)).unwrap())
        .collect();
    let mut max_s: f64 = 0.0;
    for (a, chi) in chars.iter().enumerate() {
        let lhs = chi.eval(-1.0 / tau, c(0.0, 0.0));
        let rhs: Complex64 = (0..labels.len())
            .map(|b| s1[a][b] * chars[b].eval(tau, c(0.0, 0.0)))
            .sum();
        max_s = max_s.max((lhs - rhs).norm());
    }
    let mu = c(0.2, 0.0);
    let i = Complex64::i();
    for l in [2i64, 3] {
        let kernels: Vec<_> = (0..l)
            .map(|m| k_function(l, &rat(m, 1), l, &rat(30, 1)).unwrap())
            .collect();
        let eval = |s: &BiSeries, t: Complex64, m: Complex64| {
            s.eval_tau_mu(t, m / c(l as f64, 0.0))
        };
        for m in 0..l {
            let lhs = (-i * PI * mu * mu / (c(l as f64, 0.0) * tau)).exp()
                * eval(&kernels[m as usize], -1.0 / tau, mu / tau);
            let mut rhs = c(0.0, 0.0);
            for mp in 0..l {
                rhs += (-2.0 * PI * i * c((m * mp) as f64 / l as f64, 0.0)).exp()
                    * eval(&kernels[mp as usize], tau, mu);
            }
            rhs /= c((l as f64).sqrt(), 0.0);
            max_s = max_s.max((lhs - rhs).norm());
        }
    }
    if max_s >= 1e-6 {
        return (false, format!("S-law residual {max_s:.3e}"));
    }
    (
        true,
        format!("splitting exact through q^5; T^2 residual {max_t2:.2e}; S-law residual {max_s:.2e}"),
    )
}

/// All vectors in [-w, w]^r with at most `max_support` nonzero entries.
fn window_vectors(r: usize, w: i64, max_support: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; r]];
    let grow = |base: &[Vec<i64>]| {
        let mut next = Vec::new();
        for v in base {
            let support = v.iter().filter(|&&x| x != 0).count();
            if support >= max_support {
                continue;
            }
            let first_free = v.iter().rposition(|&x| x != 0).map(|p| p + 1).unwrap_or(0);
            for i in first_free..r {
                for val in -w..=w {
                    if val == 0 {
                        continue;
                    }
                    let mut nv = v.clone();
                    nv[i] = val;
                    next.push(nv);
                }
            }
        }
        next
    };
    let mut layer = out.clone();
    for _ in 0..max_support {
        layer = grow(&layer);
        out.extend(layer.clone());
    }
    out
}

fn c15() -> (bool, String) {
    let cases: Vec<(&str, Vec<Vec<i64>>, i64, Vec<Vec<i64>>)> = vec![
        ("rank-1 (2)", vec![vec![2]], 3, window_vectors(1, 3, 1)),
        (
            "A2",
            vec![vec![2, -1], vec![-1, 2]],
            2,
            window_vectors(2, 2, 2),
        ),
        (
            "E8 restricted",
            vec![
                vec![2, -1, 0, 0, 0, 0, 0, 0],
                vec![-1, 2, -1, 0, 0, 0, 0, 0],
                vec![0, -1, 2, -1, 0, 0, 0, 0],
                vec![0, 0, -1, 2, -1, 0, 0, 0],
                vec![0, 0, 0, -1, 2, -1, 0, -1],
                vec![0, 0, 0, 0, -1, 2, -1, 0],
                vec![0, 0, 0, 0, 0, -1, 2, 0],
                vec![0, 0, 0, 0, -1, 0, 0, 2],
            ],
            2,
            window_vectors(8, 1, 1),
        ),
    ];
    let mut total_pairs = 0usize;
    let mut detail = Vec::new();
    for (name, gram, window, vectors) in &cases {
        let table = match cocycle_build(gram, *window) {
            Ok(t) => t,
            Err(e) => return (false, format!("{name}: build failed: {e}")),
        };
        match table.verify(vectors) {
            Ok((pairs, triples)) => {
                total_pairs += pairs;
                detail.push(format!("{name}: {pairs} pairs, {triples} triples"));
            }
            Err(e) => return (false, format!("{name}: {e}")),
        }
    }
    if total_pairs < 200 {
        return (false, format!("only {total_pairs} pairs checked"));
    }
    (true, detail.join("; "))
}
