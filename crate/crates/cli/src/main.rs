//! Command-line frontend: polytope, period, Mahler, special-value,
//! Eisenstein and modular computations with JSON output.
//!
//! Exit codes: 0 success; 1 usage error; 2 computation error (with a
//! structured error object on stdout); 3 golden-case mismatch.

use clap::{Parser, Subcommand};
use rug::Rational;
use serde_json::json;
use toric_regulator::eisenstein as eis;
use toric_regulator::laurent::{parse_laurent, Laurent};
use toric_regulator::modular;
use toric_regulator::nt;
use toric_regulator::num::{CBall, RBall};
use toric_regulator::periods;
use toric_regulator::polytope;
use toric_regulator::recurrence::fit_recurrence;

#[derive(Parser)]
#[command(name = "toricreg", version, about = "Invariants of toric hypersurface pencils and their Eisenstein counterparts")]
struct Cli {
    /// Working precision in bits (>= 53). Overridden by TORIC_REG_PREC.
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Series truncation order.
    #[arg(long, global = true, default_value_t = 32)]
    order: usize,
    /// Seed for quasi-Monte-Carlo rules.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lattice-polytope operations on the Newton polytope of phi.
    Polytope {
        #[command(subcommand)]
        op: PolytopeOp,
    },
    /// Period computations for the pencil 1 - t phi.
    Period {
        #[command(subcommand)]
        op: PeriodOp,
    },
    /// Logarithmic Mahler measure of t^{-1} - phi.
    Mahler {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
        /// t as an exact rational p/q.
        #[arg(long)]
        t: String,
        /// Gauss-Legendre nodes per circle (n <= 2), or QMC points (n = 3).
        #[arg(long, default_value_t = 256)]
        nodes: usize,
    },
    /// Special values: L-functions, Bloch-Wigner, identity table.
    Special {
        #[command(subcommand)]
        op: SpecialOp,
    },
    /// Eisenstein-side computations on torsion functions.
    Eis {
        #[command(subcommand)]
        op: EisOp,
    },
    /// Modular comparison and local mirror symmetry.
    Modular {
        #[command(subcommand)]
        op: ModularOp,
    },
    /// Golden-case suites.
    Cases {
        #[command(subcommand)]
        op: CasesOp,
    },
}

#[derive(Subcommand)]
enum PolytopeOp {
    /// Newton polytope vertices and facets.
    Newton {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
    /// Polar dual vertices.
    Dual {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
    /// Reflexivity of the Newton polytope.
    Reflexive {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
    /// Faces of a given codimension.
    Faces {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
        #[arg(long)]
        codim: usize,
    },
    /// The tempered sufficient-condition report.
    Tempered {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
}

#[derive(Subcommand)]
enum PeriodOp {
    /// Constant terms a_m = [phi^m]_0.
    Terms {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// The regulator period log t + sum a_m t^m / m as a series.
    Psi {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
    /// Numeric boundary/interior value of the regulator period.
    PsiValue {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
        /// t0 as an exact rational.
        #[arg(long)]
        t0: String,
        #[arg(long, default_value_t = 100000)]
        terms: usize,
        #[arg(long, default_value = "richardson")]
        accel: String,
    },
    /// Mirror map q(t) and its reversion from the Frobenius basis.
    MirrorMap {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
    /// Fit the Picard-Fuchs operator of the constant-term sequence.
    PfFit {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
    },
    /// Yukawa coupling from the fitted operator.
    Yukawa {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
        /// Normalization Y(0).
        #[arg(long, default_value = "1")]
        y0: String,
    },
}

#[derive(Subcommand)]
enum SpecialOp {
    /// Dirichlet L-value L(chi, s) for a built-in character.
    L {
        /// one of m3, m4, m8, p5i, m5i
        #[arg(long)]
        chi: String,
        #[arg(long, default_value_t = 2)]
        s: u32,
    },
    /// Bloch-Wigner dilogarithm at a complex point.
    D2 {
        #[arg(long)]
        re: f64,
        #[arg(long)]
        im: f64,
    },
    /// The boundary identity table (D5, E6, E7, E8, A5).
    Identity {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 200000)]
        terms: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum EisOp {
    /// Finite Fourier transform of a torsion function (JSON file or inline).
    Ft {
        #[arg(long)]
        f: String,
    },
    /// Cusp list of Gamma(N).
    Cusps {
        #[arg(long = "N", visible_alias = "n")]
        n: i64,
    },
    /// Fundamental vector phi_N^[l].
    Fundvec {
        #[arg(long = "N", visible_alias = "n")]
        n: i64,
        #[arg(long)]
        ell: u32,
    },
    /// q0-expansion of the Eisenstein series of a torsion function.
    Qexp {
        #[arg(long)]
        f: String,
        #[arg(long)]
        ell: u32,
    },
    /// Lattice-sum evaluation at tau.
    Lattice {
        #[arg(long)]
        f: String,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        tau_re: f64,
        #[arg(long)]
        tau_im: f64,
        #[arg(long, default_value_t = 40)]
        cutoff: usize,
    },
    /// Regulator-period q0-expansion Psi_{f,0}.
    Psi0 {
        #[arg(long)]
        f: String,
        #[arg(long)]
        ell: u32,
    },
    /// Cusp limit of the regulator period at [r/s].
    Limit {
        #[arg(long)]
        f: String,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
}

#[derive(Subcommand)]
enum ModularOp {
    /// Run one named golden case.
    Check {
        #[arg(long)]
        name: String,
    },
    /// Local instanton numbers for a reflexive polygon pipeline.
    Instantons {
        /// one of p1xp1, p2
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 8)]
        dmax: usize,
    },
    /// Exponential growth rate exp(-Im Psi(t0)/2 pi).
    Growth {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_file: Option<String>,
        #[arg(long)]
        t0: String,
        #[arg(long, default_value_t = 200000)]
        terms: usize,
    },
}

#[derive(Subcommand)]
enum CasesOp {
    /// Run all embedded golden cases.
    RunAll {
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

fn load_phi(inline: &Option<String>, file: &Option<String>) -> toric_regulator::Result<Laurent> {
    match (inline, file) {
        (Some(s), _) => parse_laurent(s),
        (None, Some(f)) => {
            let txt = std::fs::read_to_string(f)
                .map_err(|e| toric_regulator::Error::Io(e.to_string()))?;
            let v: serde_json::Value = serde_json::from_str(&txt)
                .map_err(|e| toric_regulator::Error::Parse(e.to_string()))?;
            Laurent::from_json(&v)
        }
        (None, None) => Err(toric_regulator::Error::InvalidArgument(
            "provide --phi or --phi-file".into(),
        )),
    }
}

fn load_torsion(f: &str) -> toric_regulator::Result<eis::TorsionFunction> {
    let txt = if f.trim_start().starts_with('{') {
        f.to_string()
    } else {
        std::fs::read_to_string(f).map_err(|e| toric_regulator::Error::Io(e.to_string()))?
    };
    let v: serde_json::Value =
        serde_json::from_str(&txt).map_err(|e| toric_regulator::Error::Parse(e.to_string()))?;
    eis::TorsionFunction::from_json(&v)
}

fn parse_rat(s: &str) -> toric_regulator::Result<Rational> {
    s.parse().map_err(|_| toric_regulator::Error::Parse(format!("bad rational: {}", s)))
}

fn ball_json(b: &RBall) -> serde_json::Value {
    json!({ "mid": b.mid.to_string_radix(10, Some(40)), "radius": format!("{:.3e}", b.rad_f64()) })
}

fn cball_json(b: &CBall) -> serde_json::Value {
    json!({
        "re": b.re.to_string_radix(10, Some(40)),
        "im": b.im.to_string_radix(10, Some(40)),
        "radius": format!("{:.3e}", b.rad_f64()),
    })
}

fn run(cli: Cli, prec: u32) -> toric_regulator::Result<(serde_json::Value, i32)> {
    let order = cli.order;
    let out = match cli.cmd {
        Cmd::Polytope { op } => match op {
            PolytopeOp::Newton { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let np = polytope::newton_polytope(&p)?;
                json!({ "dim": np.dim, "vertices": np.vertices,
                        "facets": np.facets.iter().map(|(a, c)| json!({"normal": a, "offset": c})).collect::<Vec<_>>() })
            }
            PolytopeOp::Dual { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let np = polytope::newton_polytope(&p)?;
                let d = np.polar_dual()?;
                json!({ "dim": d.dim,
                        "vertices": d.vertices.iter().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "integral": d.is_integral() })
            }
            PolytopeOp::Reflexive { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let np = polytope::newton_polytope(&p)?;
                json!({ "reflexive": np.is_reflexive()? })
            }
            PolytopeOp::Faces { phi, phi_file, codim } => {
                let p = load_phi(&phi, &phi_file)?;
                let np = polytope::newton_polytope(&p)?;
                let fs = np.faces(codim)?;
                json!({ "codim": codim, "count": fs.len(),
                        "faces": fs.iter().map(|f| json!({"vertices": f.vertices, "origin": f.origin, "basis": f.basis})).collect::<Vec<_>>() })
            }
            PolytopeOp::Tempered { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let rep = polytope::tempered_report(&p)?;
                serde_json::to_value(&rep).unwrap_or_else(|_| json!({}))
            }
        },
        Cmd::Period { op } => match op {
            PeriodOp::Terms { phi, phi_file, terms } => {
                let p = load_phi(&phi, &phi_file)?;
                let a = periods::constant_term_sequence(&p, terms.saturating_sub(1))?;
                json!({ "coeffs": a.iter().map(|x| x.to_string()).collect::<Vec<_>>() })
            }
            PeriodOp::Psi { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let psi = periods::regulator_period(&p, order)?;
                psi.to_json("t")
            }
            PeriodOp::PsiValue { phi, phi_file, t0, terms, accel } => {
                let p = load_phi(&phi, &phi_file)?;
                let t = parse_rat(&t0)?;
                let accel = if accel == "none" { periods::Accel::None } else { periods::Accel::Richardson };
                let tb = RBall::from_rational(prec, &t);
                let pv = periods::psi_value_real(&p, &tb, terms, accel, prec)?;
                json!({ "psi": ball_json(&pv.value), "boundary": pv.boundary,
                        "heuristic_error": format!("{:.3e}", pv.heuristic_error) })
            }
            PeriodOp::MirrorMap { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let a = periods::constant_term_sequence(&p, order.max(36))?;
                let op2 = fit_recurrence(&a, 4, 4)
                    .ok_or_else(|| toric_regulator::Error::Numeric("no recurrence".into()))?;
                let pair = periods::frobenius_solutions(&op2, order)?;
                let (qt, tq) = periods::mirror_map(&pair, order)?;
                json!({ "q_of_t": qt.to_json("t"), "t_of_q": tq.to_json("q") })
            }
            PeriodOp::PfFit { phi, phi_file } => {
                let p = load_phi(&phi, &phi_file)?;
                let a = periods::constant_term_sequence(&p, order.max(36))?;
                let op2 = fit_recurrence(&a, 4, 4)
                    .ok_or_else(|| toric_regulator::Error::Numeric("no recurrence".into()))?;
                json!({
                    "shift_coeffs": op2.shift.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    "delta_coeffs": op2.delta.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    "order": op2.order(),
                    "mum_at_zero": op2.is_mum_at_zero(),
                    "verified_depth": op2.verified_depth,
                })
            }
            PeriodOp::Yukawa { phi, phi_file, y0 } => {
                let p = load_phi(&phi, &phi_file)?;
                let a = periods::constant_term_sequence(&p, order.max(36))?;
                let op2 = fit_recurrence(&a, 4, 4)
                    .ok_or_else(|| toric_regulator::Error::Numeric("no recurrence".into()))?;
                let y = periods::yukawa(&op2, parse_rat(&y0)?)?;
                json!({
                    "y0": y.y0.to_string(),
                    "factors": y.factors.iter().map(|(p, e)| json!({"poly": p.to_string(), "exponent": e})).collect::<Vec<_>>(),
                    "series": y.series(order).to_json("t"),
                })
            }
        },
        Cmd::Mahler { phi, phi_file, t, nodes } => {
            let p = load_phi(&phi, &phi_file)?;
            let tq = parse_rat(&t)?;
            let method = if p.nvars <= 2 {
                nt::MahlerMethod::GaussLegendre(nodes)
            } else {
                nt::MahlerMethod::Qmc(nodes * nodes, cli.seed)
            };
            let m = nt::mahler_measure(&p, &tq, method)?;
            json!({ "mahler": format!("{:.15}", m), "t": tq.to_string() })
        }
        Cmd::Special { op } => match op {
            SpecialOp::L { chi, s } => {
                let ch = match chi.as_str() {
                    "m3" => nt::DirichletCharacter::chi_m3(),
                    "m4" => nt::DirichletCharacter::chi_m4(),
                    "m8" => nt::DirichletCharacter::chi_m8(),
                    "p5i" => nt::DirichletCharacter::chi_5i_plus(),
                    "m5i" => nt::DirichletCharacter::chi_5i_minus(),
                    other => {
                        return Err(toric_regulator::Error::InvalidArgument(format!(
                            "unknown character {}",
                            other
                        )))
                    }
                };
                let v = nt::dirichlet_l(&ch, s, prec);
                json!({ "L": cball_json(&v), "chi": ch.to_json(), "s": s })
            }
            SpecialOp::D2 { re, im } => {
                let z = CBall::new(prec, re, im);
                let d = nt::bloch_wigner(&z, prec)?;
                json!({ "D2": ball_json(&d) })
            }
            SpecialOp::Identity { case, terms, tol } => {
                let c = nt::IdentityCase::parse(&case).ok_or_else(|| {
                    toric_regulator::Error::InvalidArgument(format!("unknown case {}", case))
                })?;
                let rep = nt::verify_identity(c, terms, tol, prec)?;
                json!({
                    "case": format!("{:?}", rep.case),
                    "lhs": ball_json(&rep.lhs),
                    "rhs": ball_json(&rep.rhs),
                    "discrepancy": format!("{:.3e}", rep.discrepancy),
                    "lhs_error_estimate": format!("{:.3e}", rep.lhs_error_estimate),
                    "agree": rep.agree,
                    "conjectural": rep.conjectural,
                })
            }
        },
        Cmd::Eis { op } => match op {
            EisOp::Ft { f } => {
                let t = load_torsion(&f)?;
                t.ft().to_json()
            }
            EisOp::Cusps { n } => {
                let cs = eis::cusps(n)?;
                json!({
                    "N": n,
                    "count": cs.len(),
                    "cusps": cs.iter().map(|c| json!({
                        "key": c.key(), "r": c.r, "s": c.s, "p": c.p, "q": c.q
                    })).collect::<Vec<_>>(),
                })
            }
            EisOp::Fundvec { n, ell } => {
                let fv = eis::fundamental_vector(n, ell)?;
                json!({ "N": n, "ell": ell,
                        "values": fv.rational_values().unwrap_or_default().iter().map(|x| x.to_string()).collect::<Vec<_>>() })
            }
            EisOp::Qexp { f, ell } => {
                let t = load_torsion(&f)?;
                let e = eis::eisenstein_q(&t, ell, order)?;
                e.to_json()
            }
            EisOp::Lattice { f, ell, tau_re, tau_im, cutoff } => {
                let t = load_torsion(&f)?;
                let tau = CBall::new(prec, tau_re, tau_im);
                let v = eis::eisenstein_lattice(&t, ell, &tau, cutoff, prec)?;
                json!({ "value": cball_json(&v) })
            }
            EisOp::Psi0 { f, ell } => {
                let t = load_torsion(&f)?;
                let ls = eis::psi_f0_q(&t, ell, order)?;
                json!({
                    "log_coeff": ls.log_coeff.to_string(),
                    "coeffs": ls.tail.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "var": "q0",
                    "normalization": format!("coefficient of (2 pi i)^{}", ell),
                })
            }
            EisOp::Limit { f, ell, r, s } => {
                let t = load_torsion(&f)?;
                let c = eis::cusp_for(t.modulus, r, s)?;
                let cl = eis::cusp_limit(&t, &c, ell, prec)?;
                json!({
                    "cusp": c.key(),
                    "value": cball_json(&cl.value),
                    "zeta_multiple": cl.zeta_multiple.map(|z| z.to_string()),
                    "ambiguity": format!("Q({})", cl.ambiguity_weight),
                })
            }
        },
        Cmd::Modular { op } => match op {
            ModularOp::Check { name } => {
                let cs = modular::builtin_cases()?;
                let case = cs
                    .into_iter()
                    .find(|c| c.name == name)
                    .ok_or_else(|| toric_regulator::Error::InvalidArgument(format!("unknown case {}", name)))?;
                let rep = modular::theorem83_check(&case, order.min(12))?;
                let pass = rep.passes();
                let v = json!({
                    "name": rep.name,
                    "passes": pass,
                    "F": rep.f_series.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "messages": rep.messages,
                });
                if !pass {
                    return Ok((v, 3));
                }
                v
            }
            ModularOp::Instantons { family, dmax } => {
                let delta = match family.as_str() {
                    "p1xp1" => polytope::LatticePolytope::from_points(
                        2,
                        &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
                    )?,
                    "p2" => polytope::LatticePolytope::from_points(
                        2,
                        &[vec![1, 0], vec![0, 1], vec![-1, -1]],
                    )?,
                    other => {
                        return Err(toric_regulator::Error::InvalidArgument(format!(
                            "unknown family {}",
                            other
                        )))
                    }
                };
                let pipe = modular::local_mirror_pipeline(&delta, dmax)?;
                json!({
                    "family": family,
                    "kappa": pipe.kappa,
                    "n0": pipe.mori.n0,
                    "relations": pipe.mori.relations,
                    "instantons": pipe.instantons.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })
            }
            ModularOp::Growth { phi, phi_file, t0, terms } => {
                let p = load_phi(&phi, &phi_file)?;
                let seed = periods::constant_term_sequence(&p, 40)?;
                let op2 = fit_recurrence(&seed, 4, 6)
                    .ok_or_else(|| toric_regulator::Error::Numeric("no recurrence".into()))?;
                let t = RBall::from_rational(prec, &parse_rat(&t0)?);
                let (rate, pv) = modular::growth_rate(&seed, &op2, &t, terms, prec)?;
                json!({
                    "rate": ball_json(&rate),
                    "psi": ball_json(&pv.value),
                    "heuristic_error": format!("{:.3e}", pv.heuristic_error),
                })
            }
        },
        Cmd::Cases { op } => match op {
            CasesOp::RunAll { order } => {
                let outcomes = modular::run_all_cases(order)?;
                let all_pass = outcomes.iter().all(|o| o.report.passes());
                let v = json!({
                    "cases": outcomes.iter().map(|o| json!({
                        "name": o.name,
                        "passes": o.report.passes(),
                        "messages": o.report.messages,
                    })).collect::<Vec<_>>(),
                    "all_pass": all_pass,
                });
                if !all_pass {
                    return Ok((v, 3));
                }
                v
            }
        },
    };
    Ok((out, 0))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // usage errors exit with code 1; --help/--version with 0
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let prec = std::env::var("TORIC_REG_PREC")
        .ok()
        .and_then(|s| s.parse().ok())
        .or(cli.prec)
        .unwrap_or(toric_regulator::DEFAULT_PREC)
        .max(53);
    match run(cli, prec) {
        Ok((v, code)) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            std::process::exit(code);
        }
        Err(e) => {
            let v = json!({ "error": { "message": e.to_string() } });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            std::process::exit(2);
        }
    }
}
