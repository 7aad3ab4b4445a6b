//! Command-line front end: every library operation is reachable from one of
//! the subcommands `eval`, `series`, `verify`, `reduce`, `curve`, `chars`,
//! `thermal2pt`, `energymean` and `thermo`.  All output is JSON with a
//! top-level `schema` key (or CSV for tabular data), rendered
//! deterministically for fixed flags and seed.

pub mod checks;
pub mod fmt;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use ellmod::cft::{
    degeneracy, energy_mean, gegenbauer, image_sum_2pt, laurent_coeffs, moving_frame,
    thermal_2pt, vacuum_2pt, CorrVal, Kinematics, ModelId,
};
use ellmod::elliptic::{
    curve_add, eisenstein_num, half_period_roots, lattice_distance, p_double_sum, p_eval,
    quartic_reduce, sn_from_tau, theta11_prime0, theta_eval, uniformize, weierstrass_invariants,
    weierstrass_p, weierstrass_p_prime, weierstrass_zeta, CurveForm, CurvePoint, PIndex,
    ThetaMethod,
};
use ellmod::lattice::{
    char_modular_check, cocycle_build, discriminant_group, k_function, n2_central_charge,
    n2_character, n2_labels, n2_smatrix, voa_character, voa_character_num,
};
use ellmod::modforms::{covariance_residual, form_eval, lattice_level, quad_character, FormId};
use ellmod::modgroup::{
    dim_forms, gamma_n_data, reduce_fundamental, reduce_fundamental_exact, subgroup_member,
    SubgroupId, UnimodularMatrix,
};
use ellmod::qseries::{
    eisenstein_series, energy_mean_series, g2_series, mode_spectrum, named_form_series,
    partition_series, rat, theta_null_series, BiSeries, EnergyModel, FracSeries, NamedForm,
    PartitionModel, Rat,
};
use ellmod::thermo::{
    asymptotic_polynomial, density_asymptotics, energy_density, energy_density_inverted,
    minkowski_thermal_2pt, planck_spectrum, sb_constant, BoxState, MinkowskiPair, Model,
    TwoPtMode,
};

use fmt::{cnum, csv_table, fnum, parse_complex, parse_f64_list, parse_gram, parse_i64_list,
    parse_rat, parse_rat_list, parse_tau, rnum};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(name = "ellmod", version, about = "Elliptic functions, modular forms and thermal correlators", disable_help_subcommand = true)]
struct Cli {
    /// Truncation order for exact series.
    #[arg(long, global = true, default_value_t = 50)]
    order: i64,
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Seed for all randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format: json or csv (csv only for tabular results).
    #[arg(long, global = true, default_value = "json", allow_hyphen_values = true)]
    format: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pointwise numeric evaluation of the elliptic/modular functions.
    Eval(EvalArgs),
    /// Exact q-series with big-rational coefficients.
    Series(SeriesArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Fundamental-domain reduction and modular-group data.
    Reduce(ReduceArgs),
    /// Elliptic-curve arithmetic over the rationals and uniformization.
    Curve(CurveArgs),
    /// Lattice vertex-algebra and N=2 superconformal characters.
    Chars(CharsArgs),
    /// Thermal two-point functions on the torus and sphere.
    #[command(name = "thermal2pt")]
    Thermal2pt(T2Args),
    /// Thermal energy means against their closed modular forms.
    Energymean(EmArgs),
    /// Black-body thermodynamics in a finite box.
    Thermo(ThermoArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[command(subcommand)]
    which: EvalCmd,
}

#[derive(Subcommand)]
enum EvalCmd {
    /// Twisted elliptic function p_k^{kappa,lambda}(zeta, tau), row summation.
    P {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        kappa: u8,
        #[arg(long, default_value_t = 0)]
        lambda: u8,
        /// Chemical-potential twist mu as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Eisenstein-summed double sum over the lattice (slow reference).
    #[command(name = "p-double-sum")]
    PDoubleSum {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        kappa: u8,
        #[arg(long, default_value_t = 0)]
        lambda: u8,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 40)]
        m_max: i64,
        #[arg(long, default_value_t = 40)]
        n_max: i64,
    },
    /// Jacobi theta function theta_{mu,nu}(z, tau).
    Theta {
        #[arg(long, default_value_t = 0)]
        mu: u8,
        #[arg(long, default_value_t = 0)]
        nu: u8,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Evaluation method: series or product.
        #[arg(long, default_value = "series", allow_hyphen_values = true)]
        method: String,
    },
    /// Derivative of theta_11 at z = 0.
    #[command(name = "theta11-prime")]
    Theta11Prime {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Numeric Eisenstein series G_{2k}(tau).
    Eisenstein {
        #[arg(long)]
        two_k: u32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Numeric modular form: eta, delta, j, g2star, f2, eisenstein or a
    /// lattice theta series.
    Form {
        /// One of eta | delta | j | g2star | f2.
        #[arg(long, allow_hyphen_values = true)]
        name: Option<String>,
        /// Eisenstein weight 2k (with optional --kappa/--lambda twist).
        #[arg(long)]
        eisenstein: Option<u32>,
        #[arg(long, default_value_t = 0)]
        kappa: u8,
        #[arg(long, default_value_t = 0)]
        lambda: u8,
        /// Gram matrix (a1 | a2 | e8 | JSON) for a lattice theta series.
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Covariance residual (c tau + d)^{-w} f(gamma tau) - f(tau).
    Covariance {
        #[arg(long, allow_hyphen_values = true)]
        name: Option<String>,
        #[arg(long)]
        eisenstein: Option<u32>,
        #[arg(long, default_value_t = 0)]
        kappa: u8,
        #[arg(long, default_value_t = 0)]
        lambda: u8,
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
        #[arg(long)]
        weight: i32,
        /// Matrix "a,b,c,d".
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Weierstrass functions: p, pprime, zeta, invariants, roots or sn.
    Weierstrass {
        #[arg(long, allow_hyphen_values = true)]
        what: String,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Gegenbauer polynomial C_n^lambda(x).
    Gegenbauer {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lam: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Distance from zeta to the period lattice of tau.
    #[command(name = "lattice-distance")]
    LatticeDistance {
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
}

#[derive(Args)]
struct SeriesArgs {
    /// Named form: eta | delta | j | g4_240 | f2.
    #[arg(long, allow_hyphen_values = true)]
    name: Option<String>,
    /// Eisenstein weight 2k (with optional --kappa/--lambda twist).
    #[arg(long)]
    eisenstein: Option<i64>,
    #[arg(long, default_value_t = 0)]
    kappa: u8,
    #[arg(long, default_value_t = 0)]
    lambda: u8,
    /// Weight-2 G_2 series.
    #[arg(long)]
    g2: bool,
    /// Theta null value "mu,nu".
    #[arg(long, allow_hyphen_values = true)]
    theta_null: Option<String>,
    /// Two-variable partition function (weyl_NS_product | weyl_NS_theta |
    /// weyl_R | ising_NS | ising_R).
    #[arg(long, allow_hyphen_values = true)]
    partition: Option<String>,
    /// Exact thermal energy mean of the named mode system.
    #[arg(long, allow_hyphen_values = true)]
    energy: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// all | exact | elliptic | curve | lattice | cft | thermo.
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    suite: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// Point to reduce (or to act on with --act), as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Exact reduction of "re" and "im" given as rationals.
    #[arg(long, allow_hyphen_values = true)]
    exact_re: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    exact_im: Option<String>,
    /// Apply the matrix "a,b,c,d" to --tau instead of reducing.
    #[arg(long, allow_hyphen_values = true)]
    act: Option<String>,
    /// Index action on the twist sector (needs --act): "kappa,lambda".
    #[arg(long, allow_hyphen_values = true)]
    index: Option<String>,
    /// Topological data of the principal congruence subgroup Gamma(N).
    #[arg(long)]
    gamma_data: Option<u64>,
    /// Dimension of the modular-form space: "2k,g,nu_inf,nu2,nu3".
    #[arg(long, allow_hyphen_values = true)]
    dim_forms: Option<String>,
    /// Membership test of "a,b,c,d" in --subgroup.
    #[arg(long, allow_hyphen_values = true)]
    member: Option<String>,
    /// full | gamma:<N> | gamma0:<N> | theta.
    #[arg(long, allow_hyphen_values = true)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(subcommand)]
    which: CurveCmd,
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Group law P + Q on a rational curve "y2=x3+a*x+b".
    Add {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// Point "x,y" with rational coordinates, or "inf".
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Membership and discriminant of a rational point.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Uniformization zeta -> (P(zeta), P'(zeta)) on y^2 = 4x^3 - g2 x - g3.
    Uniformize {
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Reduce the quartic with roots e0..e3 to Weierstrass form data.
    Quartic {
        /// Four rational roots "e0,e1,e2,e3".
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
}

#[derive(Args)]
struct CharsArgs {
    /// Gram matrix (a1 | a2 | e8 | JSON) of an even positive lattice.
    #[arg(long, allow_hyphen_values = true)]
    lattice: Option<String>,
    /// Weight vector lambda (rationals, comma separated; default 0).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Chemical-potential direction (rationals; default 0).
    #[arg(long, allow_hyphen_values = true)]
    mu_dir: Option<String>,
    /// Numeric evaluation instead of a series (needs --tau and --mu).
    #[arg(long)]
    num: bool,
    /// Discriminant group of the lattice.
    #[arg(long)]
    discriminant: bool,
    /// Level of the lattice quadratic form.
    #[arg(long)]
    level: bool,
    /// Value of the quadratic character at d.
    #[arg(long, allow_hyphen_values = true)]
    quad_char: Option<i64>,
    /// Residuals of the T and S transformation laws (needs --tau).
    #[arg(long)]
    modular_check: bool,
    /// Build the 2-cocycle on the window [-w, w]^r.
    #[arg(long)]
    cocycle_window: Option<i64>,
    /// Cocycle argument vectors "a1,..;b1,.." (with --cocycle-window).
    #[arg(long, allow_hyphen_values = true)]
    vectors: Option<String>,
    /// Exhaustively verify the cocycle conditions on the window.
    #[arg(long)]
    cocycle_verify: bool,
    /// N=2 superconformal character chi_{l,m} at level k.
    #[arg(long)]
    n2: bool,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Modular S-matrix of the level-k characters (with --n2).
    #[arg(long)]
    smatrix: bool,
    /// Theta kernel K_m(tau, mu; l): needs --kernel-level, --kernel-m.
    #[arg(long)]
    kernel: bool,
    #[arg(long)]
    kernel_level: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    kernel_m: Option<String>,
    #[arg(long)]
    y_den: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Chemical potential: complex scale (series eval) or a real vector
    /// "x1,..,xr" (numeric character / modular check).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

#[derive(Args)]
struct T2Args {
    /// chiral_weyl | ising_NS | ising_R | n2_super | scalarD | maxwell |
    /// weyl4_canonical | weyl4_subcanonical | gauge_longitudinal |
    /// chiral_u1_restriction.
    #[arg(long, allow_hyphen_values = true)]
    model: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    zeta1: String,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    zeta2: String,
    /// Sphere angle parameter alpha (u1.u2 = cos 2 pi alpha).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Explicit unit vectors on the sphere.
    #[arg(long, allow_hyphen_values = true)]
    u1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u2: Option<String>,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    mu: String,
    /// Vacuum two-point function instead of the thermal one.
    #[arg(long)]
    vacuum: bool,
    /// Method-of-images partial sum with this cutoff.
    #[arg(long)]
    image_cutoff: Option<u32>,
    /// Laurent coefficients of the chiral correlator to this depth.
    #[arg(long)]
    laurent: Option<u32>,
    /// Moving-frame vectors for --u1/--u2 (no model needed).
    #[arg(long)]
    frame: bool,
}

#[derive(Args)]
struct EmArgs {
    /// Field content; closed-form models for the default numeric mode,
    /// mode-system names for --exact/--modes.
    #[arg(long, allow_hyphen_values = true)]
    model: String,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Exact q-series of the energy mean.
    #[arg(long)]
    exact: bool,
    /// Bose/Fermi degeneracies at twice-energy level L.
    #[arg(long)]
    degeneracy: Option<i64>,
    /// Mode spectrum up to twice-energy level L.
    #[arg(long)]
    modes: Option<i64>,
}

#[derive(Args)]
struct ThermoArgs {
    #[command(subcommand)]
    which: ThermoCmd,
}

#[derive(Subcommand)]
enum ThermoCmd {
    /// Energy density in the box, exact in beta/R.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[arg(long)]
        beta: f64,
        #[arg(long = "R")]
        radius: f64,
        /// Evaluate through the inverted (large-box) representation.
        #[arg(long)]
        inverted: bool,
    },
    /// Polynomial part of beta^4 density in x = beta/R plus remainder.
    Asymptotics {
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[arg(long)]
        beta: f64,
        #[arg(long = "R")]
        radius: f64,
    },
    /// Stefan-Boltzmann constant by large-box extrapolation.
    Sb {
        #[arg(long, allow_hyphen_values = true)]
        model: String,
    },
    /// Thermal scalar 2-point function at separation x12.
    #[command(name = "limit2pt")]
    Limit2pt {
        /// Separation "t,x,y,z".
        #[arg(long, allow_hyphen_values = true)]
        x12: String,
        #[arg(long)]
        beta: f64,
        /// limit | fourier | finiteR.
        #[arg(long, default_value = "limit", allow_hyphen_values = true)]
        mode: String,
        #[arg(long = "R")]
        radius: Option<f64>,
    },
    /// Planck occupation spectrum of the box modes.
    Planck {
        #[arg(long)]
        beta: f64,
        #[arg(long = "R")]
        radius: f64,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
}

// ---------------------------------------------------------------------------
// Dispatch plumbing
// ---------------------------------------------------------------------------

/// Rendered result of a subcommand: JSON plus an optional tabular form.
struct Output {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    exit: i32,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, table: None, exit: 0 }
    }
}

enum Failure {
    /// Malformed request: exit 2.
    Usage(String),
    /// Well-formed request on which the computation fails: exit 1.
    Compute(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ellmod::Error> for Failure {
    fn from(e: ellmod::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

type CmdResult = Result<Output, Failure>;

/// Write to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(s.as_bytes());
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.format != "json" && cli.format != "csv" {
        eprintln!("error: --format must be json or csv");
        return 2;
    }
    match dispatch(&cli) {
        Ok(out) => {
            if cli.format == "csv" {
                match &out.table {
                    Some((cols, rows)) => emit(&csv_table(cols, rows)),
                    None => {
                        eprintln!("error: this subcommand has no tabular form; use --format json");
                        return 2;
                    }
                }
            } else {
                emit(&format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap()));
            }
            out.exit
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "schema": "error/1",
                    "error": msg,
                }))
                .unwrap()
            );
            1
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::Eval(a) => cmd_eval(cli, a),
        Cmd::Series(a) => cmd_series(cli, a),
        Cmd::Verify(a) => cmd_verify(cli, a),
        Cmd::Reduce(a) => cmd_reduce(cli, a),
        Cmd::Curve(a) => cmd_curve(cli, a),
        Cmd::Chars(a) => cmd_chars(cli, a),
        Cmd::Thermal2pt(a) => cmd_thermal2pt(cli, a),
        Cmd::Energymean(a) => cmd_energymean(cli, a),
        Cmd::Thermo(a) => cmd_thermo(cli, a),
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn form_id(
    name: &Option<String>,
    eisenstein: &Option<u32>,
    kappa: u8,
    lambda: u8,
    gram: &Option<String>,
) -> Result<FormId, Failure> {
    match (name, eisenstein, gram) {
        (Some(n), None, None) => match n.as_str() {
            "eta" => Ok(FormId::Eta),
            "delta" => Ok(FormId::Delta),
            "j" => Ok(FormId::J),
            "g2star" => Ok(FormId::G2Star),
            "f2" => Ok(FormId::F2),
            other => Err(usage(format!(
                "unknown form {other:?} (eta | delta | j | g2star | f2)"
            ))),
        },
        (None, Some(two_k), None) => {
            if kappa > 0 || lambda > 0 {
                Ok(FormId::EisensteinTwisted(*two_k, kappa, lambda))
            } else {
                Ok(FormId::Eisenstein(*two_k))
            }
        }
        (None, None, Some(g)) => Ok(FormId::LatticeTheta(parse_gram(g)?)),
        _ => Err(usage(
            "select exactly one of --name, --eisenstein, --gram",
        )),
    }
}

fn value_output(schema: &str, value: Complex64) -> Output {
    Output::json(json!({ "schema": schema, "value": cnum(value) }))
}

fn cmd_eval(cli: &Cli, a: &EvalArgs) -> CmdResult {
    let tol = cli.tol;
    match &a.which {
        EvalCmd::P { k, kappa, lambda, mu, zeta, tau } => {
            let mut idx = PIndex::new(*k, *kappa, *lambda);
            if let Some(m) = mu {
                idx = idx.with_mu(parse_complex(m)?);
            }
            let v = p_eval(&idx, parse_complex(zeta)?, parse_tau(tau)?, tol)?;
            Ok(value_output("eval.p/1", v))
        }
        EvalCmd::PDoubleSum { k, kappa, lambda, zeta, tau, m_max, n_max } => {
            let v = p_double_sum(
                *k,
                *kappa,
                *lambda,
                parse_complex(zeta)?,
                parse_tau(tau)?,
                *m_max,
                *n_max,
            );
            Ok(value_output("eval.p_double_sum/1", v))
        }
        EvalCmd::Theta { mu, nu, z, tau, method } => {
            let method = match method.as_str() {
                "series" => ThetaMethod::Series,
                "product" => ThetaMethod::Product,
                other => return Err(usage(format!("unknown theta method {other:?}"))),
            };
            if *mu > 1 || *nu > 1 {
                return Err(usage("theta indices must be 0 or 1"));
            }
            let v = theta_eval(*mu, *nu, parse_complex(z)?, parse_tau(tau)?, method, tol);
            Ok(value_output("eval.theta/1", v))
        }
        EvalCmd::Theta11Prime { tau } => {
            let v = theta11_prime0(parse_tau(tau)?, tol);
            Ok(value_output("eval.theta11_prime/1", v))
        }
        EvalCmd::Eisenstein { two_k, tau } => {
            let v = eisenstein_num(*two_k, parse_tau(tau)?);
            Ok(value_output("eval.eisenstein/1", v))
        }
        EvalCmd::Form { name, eisenstein, kappa, lambda, gram, tau } => {
            let id = form_id(name, eisenstein, *kappa, *lambda, gram)?;
            let v = form_eval(&id, parse_tau(tau)?, tol)?;
            Ok(value_output("eval.form/1", v))
        }
        EvalCmd::Covariance { name, eisenstein, kappa, lambda, gram, weight, gamma, tau } => {
            let id = form_id(name, eisenstein, *kappa, *lambda, gram)?;
            let g = parse_matrix(gamma)?;
            let v = covariance_residual(&id, *weight, &g, parse_tau(tau)?, tol)?;
            Ok(Output::json(json!({
                "schema": "eval.covariance/1",
                "residual": cnum(v),
            })))
        }
        EvalCmd::Weierstrass { what, zeta, tau } => {
            let tau = parse_tau(tau)?;
            let need_z = || -> Result<Complex64, Failure> {
                zeta.as_deref()
                    .ok_or_else(|| usage("--zeta required"))
                    .and_then(|z| Ok(parse_complex(z)?))
            };
            match what.as_str() {
                "p" => Ok(value_output("eval.weierstrass/1", weierstrass_p(need_z()?, tau, tol)?)),
                "pprime" => Ok(value_output(
                    "eval.weierstrass/1",
                    weierstrass_p_prime(need_z()?, tau, tol)?,
                )),
                "zeta" => Ok(value_output(
                    "eval.weierstrass/1",
                    weierstrass_zeta(need_z()?, tau, tol)?,
                )),
                "invariants" => {
                    let (g2, g3) = weierstrass_invariants(tau);
                    Ok(Output::json(json!({
                        "schema": "eval.invariants/1",
                        "g2": cnum(g2),
                        "g3": cnum(g3),
                    })))
                }
                "roots" => {
                    let r = half_period_roots(tau, tol)?;
                    Ok(Output::json(json!({
                        "schema": "eval.roots/1",
                        "e1": cnum(r.e1),
                        "e2": cnum(r.e2),
                        "e3": cnum(r.e3),
                    })))
                }
                "sn" => {
                    let (sn, k2) = sn_from_tau(need_z()?, tau, tol)?;
                    Ok(Output::json(json!({
                        "schema": "eval.sn/1",
                        "sn": cnum(sn),
                        "k2": cnum(k2),
                    })))
                }
                other => Err(usage(format!(
                    "unknown weierstrass selector {other:?} (p | pprime | zeta | invariants | roots | sn)"
                ))),
            }
        }
        EvalCmd::Gegenbauer { n, lam, x } => {
            let v = gegenbauer(*n, *lam, parse_complex(x)?);
            Ok(value_output("eval.gegenbauer/1", v))
        }
        EvalCmd::LatticeDistance { zeta, tau } => {
            let d = lattice_distance(parse_complex(zeta)?, parse_tau(tau)?);
            Ok(Output::json(json!({
                "schema": "eval.lattice_distance/1",
                "distance": fnum(d),
            })))
        }
    }
}

fn parse_matrix(s: &str) -> Result<UnimodularMatrix, Failure> {
    let v = parse_i64_list(s)?;
    if v.len() != 4 {
        return Err(usage("matrix must be \"a,b,c,d\""));
    }
    Ok(UnimodularMatrix::new(v[0], v[1], v[2], v[3])?)
}

// ---------------------------------------------------------------------------
// series
// ---------------------------------------------------------------------------

fn frac_series_output(schema: &str, s: &FracSeries) -> Output {
    let rows = s
        .iter()
        .map(|(e, c)| vec![rnum(&e), rnum(c)])
        .collect::<Vec<_>>();
    Output {
        json: json!({ "schema": schema, "series": s.to_json() }),
        table: Some((vec!["exponent", "coefficient"], rows)),
        exit: 0,
    }
}

fn bi_series_output(schema: &str, extra: Value, s: &BiSeries) -> Output {
    let mut rows = Vec::new();
    for (e, poly) in s.iter() {
        for (k, c) in poly.iter() {
            rows.push(vec![rnum(&e), k.to_string(), rnum(c)]);
        }
    }
    let mut json = json!({ "schema": schema, "series": s.to_json() });
    if let Value::Object(extra) = extra {
        json.as_object_mut().unwrap().extend(extra);
    }
    Output {
        json,
        table: Some((vec!["q_exponent", "y_exponent", "coefficient"], rows)),
        exit: 0,
    }
}

fn cmd_series(cli: &Cli, a: &SeriesArgs) -> CmdResult {
    if cli.order < 1 {
        return Err(usage("--order must be at least 1"));
    }
    let ord = rat(cli.order, 1);
    let selected = [
        a.name.is_some(),
        a.eisenstein.is_some(),
        a.g2,
        a.theta_null.is_some(),
        a.partition.is_some(),
        a.energy.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if selected != 1 {
        return Err(usage(
            "select exactly one of --name, --eisenstein, --g2, --theta-null, --partition, --energy",
        ));
    }
    if let Some(name) = &a.name {
        let form = NamedForm::parse(name)?;
        return Ok(frac_series_output("series/1", &named_form_series(form, &ord)));
    }
    if let Some(two_k) = a.eisenstein {
        let s = eisenstein_series(two_k, a.kappa, a.lambda, &ord)?;
        return Ok(frac_series_output("series/1", &s));
    }
    if a.g2 {
        return Ok(frac_series_output("series/1", &g2_series(cli.order)));
    }
    if let Some(tn) = &a.theta_null {
        let v = parse_i64_list(tn)?;
        if v.len() != 2 || v.iter().any(|&x| !(0..=1).contains(&x)) {
            return Err(usage("--theta-null must be \"mu,nu\" with indices 0 or 1"));
        }
        let s = theta_null_series(v[0] as u8, v[1] as u8, &ord);
        return Ok(frac_series_output("series/1", &s));
    }
    if let Some(model) = &a.partition {
        let m = PartitionModel::parse(model)?;
        return Ok(bi_series_output("series.partition/1", json!({}), &partition_series(m, &ord)));
    }
    let model = a.energy.as_ref().unwrap();
    let m = EnergyModel::parse(model)?;
    let mut out = frac_series_output("series.energy/1", &energy_mean_series(m, cli.order));
    out.json.as_object_mut().unwrap().insert(
        "vacuum_energy".into(),
        Value::String(rnum(&m.vacuum_energy())),
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let results = checks::run_suite(&a.suite, cli.seed)
        .ok_or_else(|| usage(format!("unknown suite {:?}", a.suite)))?;
    let failed = results.iter().filter(|r| !r.passed).count();
    let rows = results
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                if r.passed { "pass" } else { "fail" }.to_string(),
                r.runtime_ms.to_string(),
            ]
        })
        .collect::<Vec<_>>();
    let checks_json: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "status": if r.passed { "pass" } else { "fail" },
                "detail": r.detail,
                "runtime_ms": r.runtime_ms,
            })
        })
        .collect();
    Ok(Output {
        json: json!({
            "schema": "verify/1",
            "suite": a.suite,
            "seed": cli.seed,
            "order": cli.order,
            "tol": cli.tol,
            "passed": results.len() - failed,
            "failed": failed,
            "checks": checks_json,
        }),
        table: Some((vec!["id", "status", "runtime_ms"], rows)),
        exit: if failed == 0 { 0 } else { 1 },
    })
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

fn matrix_json(g: &UnimodularMatrix) -> Value {
    json!({
        "a": g.a.to_string(),
        "b": g.b.to_string(),
        "c": g.c.to_string(),
        "d": g.d.to_string(),
    })
}

fn parse_subgroup(s: &str) -> Result<SubgroupId, Failure> {
    if s == "full" {
        return Ok(SubgroupId::Full);
    }
    if s == "theta" {
        return Ok(SubgroupId::Theta);
    }
    if let Some(n) = s.strip_prefix("gamma0:") {
        let n: u64 = n.parse().map_err(|_| usage("bad level in gamma0:<N>"))?;
        return Ok(SubgroupId::Gamma0N(n));
    }
    if let Some(n) = s.strip_prefix("gamma:") {
        let n: u64 = n.parse().map_err(|_| usage("bad level in gamma:<N>"))?;
        return Ok(SubgroupId::PrincipalN(n));
    }
    Err(usage(format!(
        "unknown subgroup {s:?} (full | gamma:<N> | gamma0:<N> | theta)"
    )))
}

fn cmd_reduce(_cli: &Cli, a: &ReduceArgs) -> CmdResult {
    if let Some(n) = a.gamma_data {
        let d = gamma_n_data(n);
        return Ok(Output::json(json!({
            "schema": "reduce.gamma_data/1",
            "level": n,
            "index": d.index,
            "nu2": d.nu2,
            "nu3": d.nu3,
            "nu_inf": d.nu_inf,
            "genus": d.genus,
        })));
    }
    if let Some(arg) = &a.dim_forms {
        let v = parse_i64_list(arg)?;
        if v.len() != 5 {
            return Err(usage("--dim-forms must be \"2k,g,nu_inf,nu2,nu3\""));
        }
        let d = dim_forms(v[0], v[1], v[2], v[3], v[4]);
        return Ok(Output::json(json!({
            "schema": "reduce.dim_forms/1",
            "dimension": d,
        })));
    }
    if let Some(member) = &a.member {
        let g = parse_matrix(member)?;
        let id = parse_subgroup(
            a.subgroup
                .as_deref()
                .ok_or_else(|| usage("--member needs --subgroup"))?,
        )?;
        return Ok(Output::json(json!({
            "schema": "reduce.member/1",
            "member": subgroup_member(&g, id),
        })));
    }
    if let Some(act) = &a.act {
        let g = parse_matrix(act)?;
        let tau = parse_tau(a.tau.as_deref().ok_or_else(|| usage("--act needs --tau"))?)?;
        let mut json = json!({
            "schema": "reduce.act/1",
            "gamma": matrix_json(&g),
            "image": cnum(g.act(tau)),
            "cocycle": cnum(g.cocycle(tau)),
            "inverse": matrix_json(&g.inverse()),
        });
        if let Some(index) = &a.index {
            let v = parse_i64_list(index)?;
            if v.len() != 2 || v.iter().any(|&x| !(0..=1).contains(&x)) {
                return Err(usage("--index must be \"kappa,lambda\" with entries 0 or 1"));
            }
            let (kp, lp) = g.index_act(v[0] as u8, v[1] as u8);
            json.as_object_mut()
                .unwrap()
                .insert("index_image".into(), json!([kp, lp]));
        }
        return Ok(Output::json(json));
    }
    if let (Some(re), Some(im)) = (&a.exact_re, &a.exact_im) {
        let re = parse_rat(re)?;
        let im = parse_rat(im)?;
        if im <= Rat::zero() {
            return Err(usage("the imaginary part must be positive"));
        }
        let (rs, is, gamma, word) = reduce_fundamental_exact(&re, &im);
        return Ok(Output::json(json!({
            "schema": "reduce.exact/1",
            "tau_star": { "re": rnum(&rs), "im": rnum(&is) },
            "gamma": matrix_json(&gamma),
            "word": word.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })));
    }
    if let Some(tau) = &a.tau {
        let r = reduce_fundamental(parse_tau(tau)?);
        return Ok(Output::json(json!({
            "schema": "reduce/1",
            "tau_star": cnum(r.tau_star),
            "gamma": matrix_json(&r.gamma),
            "word": r.word.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })));
    }
    Err(usage(
        "nothing to do: give --tau, --exact-re/--exact-im, --act, --gamma-data, --dim-forms or --member",
    ))
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

/// Parse "y2=x3+a*x+b" (with rational a, b; '*' optional) into a short
/// Weierstrass form.
fn parse_curve(s: &str) -> Result<CurveForm<Rat>, Failure> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = compact
        .strip_prefix("y2=x3")
        .ok_or_else(|| usage(format!("curve must look like \"y2=x3+a*x+b\", got {s:?}")))?;
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    // Split the remainder into signed terms.
    let mut terms: Vec<String> = Vec::new();
    for ch in rest.chars() {
        if (ch == '+' || ch == '-') && !terms.last().map_or(false, |t| t.ends_with('/')) {
            terms.push(ch.to_string());
        } else {
            match terms.last_mut() {
                Some(t) => t.push(ch),
                None if rest.starts_with(ch) => {
                    return Err(usage(format!("expected a sign before {ch:?} in {s:?}")))
                }
                None => unreachable!(),
            }
        }
    }
    for term in terms {
        let body = &term[1..];
        let sign = if term.starts_with('-') { -1i64 } else { 1 };
        let signed = |r: Rat| r * Rat::from_integer(sign.into());
        if let Some(coeff) = body.strip_suffix('x') {
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
            let c = if coeff.is_empty() {
                Rat::from_integer(1.into())
            } else {
                parse_rat(coeff)?
            };
            a = a + signed(c);
        } else {
            b = b + signed(parse_rat(body)?);
        }
    }
    Ok(CurveForm::Short { a, b })
}

fn parse_point(s: &str) -> Result<CurvePoint<Rat>, Failure> {
    if s.trim() == "inf" {
        return Ok(CurvePoint::Infinity);
    }
    let v = parse_rat_list(s)?;
    if v.len() != 2 {
        return Err(usage("point must be \"x,y\" or \"inf\""));
    }
    Ok(CurvePoint::finite(v[0].clone(), v[1].clone()))
}

fn point_json(p: &CurvePoint<Rat>) -> Value {
    match p {
        CurvePoint::Infinity => json!({ "infinity": true }),
        CurvePoint::Finite { x, y } => json!({ "x": rnum(x), "y": rnum(y) }),
    }
}

fn cmd_curve(cli: &Cli, a: &CurveArgs) -> CmdResult {
    match &a.which {
        CurveCmd::Add { curve, p, q } => {
            let curve = parse_curve(curve)?;
            let sum = curve_add(&parse_point(p)?, &parse_point(q)?, &curve)?;
            let mut json = json!({ "schema": "curve.add/1" });
            if let Value::Object(pt) = point_json(&sum) {
                json.as_object_mut().unwrap().extend(pt);
            }
            Ok(Output::json(json))
        }
        CurveCmd::Check { curve, p } => {
            let curve = parse_curve(curve)?;
            let p = parse_point(p)?;
            Ok(Output::json(json!({
                "schema": "curve.check/1",
                "on_curve": p.on_curve(&curve),
                "discriminant": rnum(&curve.discriminant()),
            })))
        }
        CurveCmd::Uniformize { zeta, tau } => {
            let tau = parse_tau(tau)?;
            let (g2, g3) = weierstrass_invariants(tau);
            match uniformize(parse_complex(zeta)?, tau, cli.tol) {
                CurvePoint::Infinity => Ok(Output::json(json!({
                    "schema": "curve.uniformize/1",
                    "infinity": true,
                    "g2": cnum(g2),
                    "g3": cnum(g3),
                }))),
                CurvePoint::Finite { x, y } => Ok(Output::json(json!({
                    "schema": "curve.uniformize/1",
                    "x": cnum(x),
                    "y": cnum(y),
                    "g2": cnum(g2),
                    "g3": cnum(g3),
                }))),
            }
        }
        CurveCmd::Quartic { roots } => {
            let v = parse_rat_list(roots)?;
            if v.len() != 4 {
                return Err(usage("--roots must be \"e0,e1,e2,e3\""));
            }
            let (a, asq, es) = quartic_reduce(&v[0], &v[1], &v[2], &v[3])?;
            Ok(Output::json(json!({
                "schema": "curve.quartic/1",
                "a": rnum(&a),
                "a_squared": rnum(&asq),
                "roots": es.iter().map(rnum).collect::<Vec<_>>(),
            })))
        }
    }
}

// ---------------------------------------------------------------------------
// chars
// ---------------------------------------------------------------------------

fn cmd_chars(cli: &Cli, a: &CharsArgs) -> CmdResult {
    if cli.order < 1 {
        return Err(usage("--order must be at least 1"));
    }
    let ord = rat(cli.order, 1);
    if a.kernel {
        let l = a
            .kernel_level
            .ok_or_else(|| usage("--kernel needs --kernel-level"))?;
        let m = parse_rat(
            a.kernel_m
                .as_deref()
                .ok_or_else(|| usage("--kernel needs --kernel-m"))?,
        )?;
        let y_den = a.y_den.unwrap_or(l);
        let s = k_function(l, &m, y_den, &ord)?;
        return Ok(bi_series_output(
            "chars.kernel/1",
            json!({ "y_den": y_den }),
            &s,
        ));
    }
    if a.n2 {
        let k = a.k.ok_or_else(|| usage("--n2 needs --k"))?;
        if a.smatrix {
            let s = n2_smatrix(k)?;
            let labels = n2_labels(k)?;
            return Ok(Output::json(json!({
                "schema": "chars.smatrix/1",
                "central_charge": rnum(&n2_central_charge(k)?),
                "labels": labels.iter().map(|&(l, m)| json!([l, m])).collect::<Vec<_>>(),
                "matrix": s
                    .iter()
                    .map(|row| row.iter().map(|v| cnum(*v)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })));
        }
        let l = a.l.ok_or_else(|| usage("--n2 needs --l"))?;
        let m = a.m.ok_or_else(|| usage("--n2 needs --m"))?;
        let chi = n2_character(k, l, m, &ord)?;
        let mut extra = json!({
            "y_den": chi.y_den,
            "delta": rnum(&chi.delta),
            "charge": rnum(&chi.charge),
            "t2_phase": cnum(chi.t2_phase),
        });
        if let Some(tau) = &a.tau {
            let tau = parse_tau(tau)?;
            let mu = match &a.mu {
                Some(m) => parse_complex(m)?,
                None => Complex64::zero(),
            };
            extra.as_object_mut().unwrap().insert(
                "value".into(),
                Value::String(cnum(chi.eval(tau, mu))),
            );
        }
        return Ok(bi_series_output("chars.n2/1", extra, &chi.series));
    }
    let gram_s = a
        .lattice
        .as_deref()
        .ok_or_else(|| usage("give --lattice, --n2 or --kernel"))?;
    let gram = parse_gram(gram_s)?;
    let r = gram.len();
    if a.discriminant {
        let (order, reps) = discriminant_group(&gram)?;
        return Ok(Output::json(json!({
            "schema": "chars.discriminant/1",
            "order": order,
            "representatives": reps
                .iter()
                .map(|v| v.iter().map(rnum).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })));
    }
    if a.level || a.quad_char.is_some() {
        let level = lattice_level(&gram)?;
        let mut json = json!({ "schema": "chars.level/1", "level": level });
        if let Some(d) = a.quad_char {
            json.as_object_mut()
                .unwrap()
                .insert("quad_character".into(), json!(quad_character(&gram, d)?));
        }
        return Ok(Output::json(json));
    }
    if a.modular_check {
        let tau = parse_tau(a.tau.as_deref().ok_or_else(|| usage("--modular-check needs --tau"))?)?;
        let mu = match &a.mu {
            Some(m) => parse_f64_list(m)?,
            None => vec![0.0; r],
        };
        let rep = char_modular_check(&gram, tau, &mu, cli.tol)?;
        return Ok(Output::json(json!({
            "schema": "chars.modular/1",
            "t_residual": fnum(rep.t_residual),
            "s_residual": fnum(rep.s_residual),
        })));
    }
    if let Some(window) = a.cocycle_window {
        let table = cocycle_build(&gram, window)?;
        if a.cocycle_verify {
            let mut vectors = vec![vec![0i64; r]];
            // Vectors of support <= 2 within a small sub-window keep the
            // exhaustive triple check affordable at every rank.
            let w = window.min(2);
            for i in 0..r {
                for vi in -w..=w {
                    if vi == 0 {
                        continue;
                    }
                    let mut v = vec![0i64; r];
                    v[i] = vi;
                    vectors.push(v.clone());
                    for j in (i + 1)..r {
                        for vj in -w..=w {
                            if vj == 0 {
                                continue;
                            }
                            let mut vv = v.clone();
                            vv[j] = vj;
                            vectors.push(vv);
                        }
                    }
                }
            }
            let (pairs, triples) = table.verify(&vectors)?;
            return Ok(Output::json(json!({
                "schema": "chars.cocycle_verify/1",
                "window": table.window(),
                "vectors": vectors.len(),
                "pairs": pairs,
                "triples": triples,
            })));
        }
        let (va, vb) = match a.vectors.as_deref().and_then(|s| s.split_once(';')) {
            Some((x, y)) => (parse_i64_list(x)?, parse_i64_list(y)?),
            None => return Err(usage("--cocycle-window needs --vectors \"a1,..;b1,..\" or --cocycle-verify")),
        };
        return Ok(Output::json(json!({
            "schema": "chars.cocycle/1",
            "exponent": table.eps_exponent(&va, &vb)?,
            "value": cnum(table.eps(&va, &vb)?),
        })));
    }
    let zeros = vec![Rat::zero(); r];
    let lambda = match &a.lambda {
        Some(s) => parse_rat_list(s)?,
        None => zeros.clone(),
    };
    if a.num {
        let tau = parse_tau(a.tau.as_deref().ok_or_else(|| usage("--num needs --tau"))?)?;
        let mu: Vec<Complex64> = match &a.mu {
            Some(m) => m
                .split(';')
                .map(parse_complex)
                .collect::<Result<_, _>>()?,
            None => vec![Complex64::zero(); r],
        };
        let v = voa_character_num(&gram, &lambda, tau, &mu, cli.tol)?;
        return Ok(value_output("chars.num/1", v));
    }
    let mu_dir = match &a.mu_dir {
        Some(s) => parse_rat_list(s)?,
        None => zeros,
    };
    let chi = voa_character(&gram, &lambda, &mu_dir, &ord)?;
    let mut extra = json!({ "y_den": chi.y_den });
    if let Some(tau) = &a.tau {
        let tau = parse_tau(tau)?;
        let t = match &a.mu {
            Some(m) => parse_complex(m)?,
            None => Complex64::zero(),
        };
        extra.as_object_mut().unwrap().insert(
            "value".into(),
            Value::String(cnum(chi.eval(tau, t))),
        );
    }
    Ok(bi_series_output("chars/1", extra, &chi.series))
}

// ---------------------------------------------------------------------------
// thermal2pt
// ---------------------------------------------------------------------------

fn corr_json(v: &CorrVal) -> Value {
    match v {
        CorrVal::Scalar(z) => json!({ "kind": "scalar", "value": cnum(*z) }),
        CorrVal::Matrix(m) => json!({
            "kind": "matrix",
            "value": m.0
                .iter()
                .map(|row| row.iter().map(|z| cnum(*z)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        CorrVal::Maxwell { w_plus, w_minus, f33 } => json!({
            "kind": "maxwell",
            "w_plus": cnum(*w_plus),
            "w_minus": cnum(*w_minus),
            "f33": cnum(*f33),
        }),
    }
}

fn cmd_thermal2pt(cli: &Cli, a: &T2Args) -> CmdResult {
    if a.frame {
        let u1 = parse_f64_list(a.u1.as_deref().ok_or_else(|| usage("--frame needs --u1"))?)?;
        let u2 = parse_f64_list(a.u2.as_deref().ok_or_else(|| usage("--frame needs --u2"))?)?;
        let f = moving_frame(&u1, &u2)?;
        return Ok(Output::json(json!({
            "schema": "thermal2pt.frame/1",
            "v": f.v.iter().map(|z| cnum(*z)).collect::<Vec<_>>(),
            "vbar": f.vbar.iter().map(|z| cnum(*z)).collect::<Vec<_>>(),
        })));
    }
    let model = ModelId::parse(
        a.model
            .as_deref()
            .ok_or_else(|| usage("--model is required"))?,
    )?;
    let zeta1 = parse_complex(&a.zeta1)?;
    let zeta2 = parse_complex(&a.zeta2)?;
    let kin = match (&a.u1, &a.u2, a.alpha) {
        (Some(u1), Some(u2), _) => {
            Kinematics::from_vectors(zeta1, zeta2, parse_f64_list(u1)?, parse_f64_list(u2)?)?
        }
        (None, None, Some(alpha)) => Kinematics::from_angle(zeta1, zeta2, alpha, a.dim)?,
        (None, None, None) => Kinematics::chiral(zeta1, zeta2),
        _ => return Err(usage("give both --u1 and --u2, or --alpha, or neither")),
    };
    if let Some(depth) = a.laurent {
        let tau = parse_tau(a.tau.as_deref().ok_or_else(|| usage("--laurent needs --tau"))?)?;
        let coeffs = laurent_coeffs(&model, tau, depth, cli.tol)?;
        return Ok(Output::json(json!({
            "schema": "thermal2pt.laurent/1",
            "coefficients": coeffs.iter().map(|z| cnum(*z)).collect::<Vec<_>>(),
        })));
    }
    if a.vacuum {
        let v = vacuum_2pt(&model, &kin)?;
        let mut json = json!({ "schema": "thermal2pt.vacuum/1" });
        json.as_object_mut().unwrap().insert("correlator".into(), corr_json(&v));
        return Ok(Output::json(json));
    }
    let tau = parse_tau(a.tau.as_deref().ok_or_else(|| usage("--tau is required"))?)?;
    let v = if let Some(cutoff) = a.image_cutoff {
        image_sum_2pt(&model, &kin, tau, cutoff)?
    } else {
        thermal_2pt(&model, &kin, tau, parse_complex(&a.mu)?, cli.tol)?
    };
    let mut json = json!({ "schema": "thermal2pt/1" });
    json.as_object_mut().unwrap().insert("correlator".into(), corr_json(&v));
    Ok(Output::json(json))
}

// ---------------------------------------------------------------------------
// energymean
// ---------------------------------------------------------------------------

fn cmd_energymean(cli: &Cli, a: &EmArgs) -> CmdResult {
    if let Some(max_level) = a.modes {
        let model = EnergyModel::parse(&a.model)?;
        let modes = mode_spectrum(model, max_level);
        let rows = modes
            .iter()
            .map(|m| {
                vec![
                    m.level_x2.to_string(),
                    m.degeneracy.to_string(),
                    if m.fermi { "fermi" } else { "bose" }.to_string(),
                ]
            })
            .collect::<Vec<_>>();
        return Ok(Output {
            json: json!({
                "schema": "energymean.modes/1",
                "modes": modes
                    .iter()
                    .map(|m| json!({
                        "level_x2": m.level_x2,
                        "degeneracy": m.degeneracy,
                        "fermi": m.fermi,
                    }))
                    .collect::<Vec<_>>(),
            }),
            table: Some((vec!["level_x2", "degeneracy", "statistics"], rows)),
            exit: 0,
        });
    }
    if a.exact {
        let model = EnergyModel::parse(&a.model)?;
        let mut out = frac_series_output("energymean.exact/1", &energy_mean_series(model, cli.order));
        out.json.as_object_mut().unwrap().insert(
            "vacuum_energy".into(),
            Value::String(rnum(&model.vacuum_energy())),
        );
        return Ok(out);
    }
    let model = ModelId::parse(&a.model)?;
    if let Some(level) = a.degeneracy {
        let (d_b, d_f) = degeneracy(&model, level)?;
        return Ok(Output::json(json!({
            "schema": "energymean.degeneracy/1",
            "level_x2": level,
            "bose": d_b,
            "fermi": d_f,
        })));
    }
    let tau = parse_tau(a.tau.as_deref().ok_or_else(|| usage("--tau is required"))?)?;
    let em = energy_mean(&model, tau)?;
    Ok(Output::json(json!({
        "schema": "energymean/1",
        "numeric": cnum(em.numeric),
        "closed_form": cnum(em.closed_form),
        "residual": cnum(em.residual),
    })))
}

// ---------------------------------------------------------------------------
// thermo
// ---------------------------------------------------------------------------

fn parse_model(s: &str) -> Result<Model, Failure> {
    s.parse::<Model>().map_err(Failure::from)
}

fn cmd_thermo(_cli: &Cli, a: &ThermoArgs) -> CmdResult {
    match &a.which {
        ThermoCmd::Density { model, beta, radius, inverted } => {
            let model = parse_model(model)?;
            let state = BoxState::new(*beta, *radius)?;
            let d = if *inverted {
                energy_density_inverted(model, &state)
            } else {
                energy_density(model, &state)
            };
            Ok(Output::json(json!({
                "schema": "thermo.density/1",
                "density": fnum(d),
                "beta4_density": fnum(d * beta.powi(4)),
            })))
        }
        ThermoCmd::Asymptotics { model, beta, radius } => {
            let model = parse_model(model)?;
            let state = BoxState::new(*beta, *radius)?;
            let asy = density_asymptotics(model, &state);
            let x = beta / radius;
            Ok(Output::json(json!({
                "schema": "thermo.asymptotics/1",
                "coefficients": asy.coefficients.iter().map(|&c| fnum(c)).collect::<Vec<_>>(),
                "polynomial": fnum(asymptotic_polynomial(&asy, x)),
                "remainder": fnum(asy.residual),
            })))
        }
        ThermoCmd::Sb { model } => {
            let model = parse_model(model)?;
            Ok(Output::json(json!({
                "schema": "thermo.sb/1",
                "constant": fnum(sb_constant(model)),
            })))
        }
        ThermoCmd::Limit2pt { x12, beta, mode, radius } => {
            let v = parse_f64_list(x12)?;
            if v.len() != 4 {
                return Err(usage("--x12 must be \"t,x,y,z\""));
            }
            let pair = MinkowskiPair::from_difference([v[0], v[1], v[2], v[3]]);
            let mode = match mode.as_str() {
                "limit" => TwoPtMode::Limit,
                "fourier" => TwoPtMode::Fourier,
                "finiteR" => TwoPtMode::FiniteR(
                    radius.ok_or_else(|| usage("--mode finiteR needs --R"))?,
                ),
                other => return Err(usage(format!("unknown mode {other:?}"))),
            };
            let out = minkowski_thermal_2pt(&pair, *beta, mode)?;
            Ok(Output::json(json!({
                "schema": "thermo.limit2pt/1",
                "value": cnum(out.value),
                "epsilon": out.epsilon.map(fnum),
                "timelike": pair.is_timelike(),
            })))
        }
        ThermoCmd::Planck { beta, radius, n_max } => {
            let spectrum = planck_spectrum(*beta, *radius, *n_max)?;
            let rows = spectrum
                .iter()
                .map(|(nu, occ)| vec![fnum(*nu), fnum(*occ)])
                .collect::<Vec<_>>();
            Ok(Output {
                json: json!({
                    "schema": "thermo.planck/1",
                    "modes": spectrum
                        .iter()
                        .map(|(nu, occ)| json!([fnum(*nu), fnum(*occ)]))
                        .collect::<Vec<_>>(),
                }),
                table: Some((vec!["frequency", "occupancy"], rows)),
                exit: 0,
            })
        }
    }
}
