//! Command-line dispatcher. Every operation of the library is reachable
//! through one subcommand; all randomness flows from `--seed`, the arithmetic
//! mode from `--precision`, and each run writes its outputs plus a manifest
//! that replays to byte-identical files.
//!
//! Exit codes are a contract: 0 success, 2 domain or solver failure,
//! 64 usage error.

use crate::bc::{self, BCConfig};
use crate::dynamics::{self, MapParam};
use crate::experiments::{self, DriverConfig};
use crate::measures;
use crate::param::{self, ParamWindow};
use crate::real::Precision;
use crate::report::{self, RunManifest};
use crate::rng::SplitMix64;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Precision {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "quadfam",
    version,
    about = "Numerical laboratory for the quadratic family 1 - a*x^2",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    /// Seed for all randomness in the run.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Arithmetic mode for the parameter-space solvers.
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    /// Worker threads for parallelizable drivers.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output directory (default: runs/<command>).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct BCArgs {
    /// Half-width of the critical neighborhood I*.
    #[arg(long, default_value_t = (-7.0f64).exp())]
    delta: f64,
    /// Growth-exponent target.
    #[arg(long, default_value_t = 0.4)]
    lambda: f64,
    /// Recurrence exponent (defaults to lambda/300).
    #[arg(long)]
    alpha: Option<f64>,
}

impl BCArgs {
    fn config(&self) -> BCConfig {
        BCConfig {
            delta: self.delta,
            lambda: self.lambda,
            alpha: self.alpha.unwrap_or(self.lambda / 300.0),
            lambda0: None,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate an orbit and record the trace.
    Orbit {
        #[arg(long)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long)]
        n: usize,
    },
    /// Time-averaged log-derivative along an orbit.
    Lyapunov {
        #[arg(long)]
        a: f64,
        /// Initial point (seeded random when omitted).
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 1_000)]
        burn: usize,
    },
    /// Super-stable parameter of the given period inside a window.
    Superstable {
        /// Window as LO:HI.
        #[arg(long, value_parser = parse_window)]
        window: (f64, f64),
        #[arg(long)]
        period: usize,
    },
    /// Parameter whose critical orbit lands on a continued repeller point.
    Misiurewicz {
        #[arg(long, value_parser = parse_window)]
        window: (f64, f64),
        /// Landing time N.
        #[arg(long)]
        steps: usize,
        /// Newton seed for the repeller at the window's upper endpoint.
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        repeller_seed: f64,
        #[arg(long, default_value_t = 1)]
        repeller_period: usize,
    },
    /// Continue a periodic orbit in the parameter.
    #[command(name = "continue")]
    Continue {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        period: usize,
        /// Newton seed for the orbit at a.
        #[arg(long, allow_hyphen_values = true)]
        orbit_seed: f64,
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Detect the attractor of the critical orbit.
    Attractor {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 100_000)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        p_max: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Empirical (Birkhoff) measure of an orbit, with histogram.
    Measure {
        #[arg(long)]
        a: f64,
        /// Initial point (seeded random when omitted).
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 1_000)]
        burn: usize,
        #[arg(long, default_value_t = 512)]
        bins: usize,
    },
    /// Wasserstein-1 distance between two stored measures, or against the
    /// closed-form arcsine law.
    Wasserstein {
        /// JSON file with [position, weight] pairs.
        #[arg(long)]
        mu: PathBuf,
        /// Second measure file (omit with --arcsine).
        #[arg(long)]
        nu: Option<PathBuf>,
        /// Compare against the arcsine law instead of a second file.
        #[arg(long, default_value_t = false)]
        arcsine: bool,
    },
    /// Growth and recurrence check along the critical orbit.
    BcCheck {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 10_000)]
        depth: usize,
        #[command(flatten)]
        bc: BCArgs,
    },
    /// Bound period after a return into I_mu.
    BoundPeriod {
        #[arg(long)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
        #[command(flatten)]
        bc: BCArgs,
    },
    /// Return itinerary of a parameter window.
    Itinerary {
        #[arg(long, value_parser = parse_window)]
        window: (f64, f64),
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        #[command(flatten)]
        bc: BCArgs,
    },
    /// Sum of critical-orbit deviations between two parameters.
    DeviationSum {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        n: usize,
    },
    /// Super-stable approximation of the natural measure.
    ThmA {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        /// Periods, as a comma list (8,10,12) or range (8:18).
        #[arg(long, value_parser = parse_range, default_value = "10:18")]
        periods: std::vec::Vec<usize>,
    },
    /// Landing parameters for a continued repeller.
    ThmB {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, value_parser = parse_range, default_value = "3:15")]
        n_range: std::vec::Vec<usize>,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        repeller_seed: f64,
        #[arg(long, default_value_t = 1)]
        repeller_period: usize,
    },
    /// Chained diagonal toward the singular measure of a repeller.
    ThmC {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        repeller_seed: f64,
        #[arg(long, default_value_t = 1)]
        repeller_period: usize,
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
    },
    /// Shadow-then-hit-zero sequence toward the singular measure.
    ThmD {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        /// Shadow depths (defaults to 8:18 in double, 8:36 in extended).
        #[arg(long, value_parser = parse_range)]
        n_range: Option<std::vec::Vec<usize>>,
    },
    /// Two super-stable sequences with different measure limits.
    Discontinuity {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, value_parser = parse_range, default_value = "8:18")]
        n_range: std::vec::Vec<usize>,
    },
    /// Classify a parameter range: attractors or Lyapunov estimates.
    Scan {
        #[arg(long, value_parser = parse_window)]
        range: (f64, f64),
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    if let Some((lo, hi)) = s.split_once(':') {
        let lo: usize = lo.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
        let hi: usize = hi.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
        if lo > hi {
            return Err(format!("empty range {lo}:{hi}"));
        }
        Ok((lo..=hi).collect())
    } else {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad list entry '{part}': {e}"))
            })
            .collect()
    }
}

/// Run the CLI on `args` (everything after the binary name); returns the
/// process exit code.
pub fn dispatch(args: &[String]) -> i32 {
    let mut argv: Vec<String> = Vec::with_capacity(args.len() + 1);
    argv.push("quadfam".to_string());
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match run(cli, args) {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

struct RunContext {
    outdir: PathBuf,
    manifest: RunManifest,
}

impl RunContext {
    fn new(command: &str, args: &[String], seed: u64, precision: Precision, out: Option<PathBuf>) -> Self {
        let outdir = out.unwrap_or_else(|| Path::new("runs").join(command));
        RunContext {
            outdir,
            manifest: RunManifest::new(command, args, seed, precision.label()),
        }
    }

    fn write(&mut self, name: &str, content: &str) -> Result<(), String> {
        let (path, bytes) = report::write_output(&self.outdir, name, content)
            .map_err(|e| format!("writing {name}: {e}"))?;
        println!("wrote {} ({bytes} bytes)", path.display());
        self.manifest.outputs.push(path.display().to_string());
        Ok(())
    }

    fn finish(mut self) -> Result<(), String> {
        let json = {
            self.manifest.outputs.push(
                self.outdir.join("manifest.json").display().to_string(),
            );
            self.manifest.to_json()
        };
        report::write_output(&self.outdir, "manifest.json", &json)
            .map_err(|e| format!("writing manifest: {e}"))?;
        Ok(())
    }
}

fn run(cli: Cli, raw_args: &[String]) -> Result<(), String> {
    let precision: Precision = cli.precision.into();
    println!(
        "precision: {} (super-stable period cap n <= {})",
        precision.label(),
        precision.superstable_period_cap()
    );
    let driver_cfg = DriverConfig {
        seed: cli.seed,
        precision,
        jobs: cli.jobs.max(1),
        ..DriverConfig::default()
    };
    let name = command_name(&cli.command);
    let mut ctx = RunContext::new(name, raw_args, cli.seed, precision, cli.out.clone());
    let e = |err: &dyn std::fmt::Display| err.to_string();
    match cli.command {
        Command::Orbit { a, x0, n } => {
            let trace = dynamics::iterate_orbit(mp(a)?, x0, n).map_err(|er| e(&er))?;
            let points: Vec<String> = trace.points.iter().map(|&x| report::fmt_float(x)).collect();
            let logs: Vec<String> = trace
                .log_deriv_partial
                .iter()
                .map(|&x| report::fmt_float(x))
                .collect();
            let json = format!(
                "{{\"a\":{},\"points\":[{}],\"log_deriv_partial\":[{}]}}",
                report::fmt_float(a),
                points.join(","),
                logs.join(",")
            );
            ctx.write("result.json", &json)?;
            println!("orbit of {} for {} steps: final point {}", x0, n, trace.points[n]);
        }
        Command::Lyapunov { a, x0, n, burn } => {
            let x0 = x0.unwrap_or_else(|| SplitMix64::stream(cli.seed, 0).next_phase_point());
            let lyap = dynamics::lyapunov_exponent(mp(a)?, x0, n, burn).map_err(|er| e(&er))?;
            let json = format!(
                "{{\"a\":{},\"x0\":{},\"n\":{},\"burn\":{},\"exponent\":{}}}",
                report::fmt_float(a),
                report::fmt_float(x0),
                n,
                burn,
                report::fmt_float(lyap)
            );
            ctx.write("result.json", &json)?;
            println!("lyapunov exponent at a = {a}: {lyap}");
        }
        Command::Superstable { window, period } => {
            let w = win(window)?;
            let root = param::find_superstable_prec(w, period, precision).map_err(|er| e(&er))?;
            let json = report::solver_record_json(
                "superstable",
                root.a.get(),
                &root.a_decimal,
                root.period,
                root.residual,
                0.0,
            );
            ctx.write("result.json", &json)?;
            println!("a* = {} (period {}, residual {:e})", root.a_decimal, root.period, root.residual);
        }
        Command::Misiurewicz {
            window,
            steps,
            repeller_seed,
            repeller_period,
        } => {
            let w = win(window)?;
            let base = param::find_periodic_orbit(mp(w.hi())?, repeller_period, repeller_seed)
                .map_err(|er| e(&er))?;
            let path =
                param::continue_orbit(&base, mp(w.lo())?, 64).map_err(|er| e(&er))?;
            let a_hat = param::find_misiurewicz(w, steps, &path).map_err(|er| e(&er))?;
            let z = path.z_at(a_hat).map_err(|er| e(&er))?;
            let residual = (dynamics::xi_n(&a_hat.get(), steps) - z).abs();
            let orbit = path.solve_at(a_hat).map_err(|er| e(&er))?;
            let json = report::solver_record_json(
                "misiurewicz",
                a_hat.get(),
                &format!("{:.16e}", a_hat.get()),
                steps,
                residual,
                orbit.multiplier,
            );
            ctx.write("result.json", &json)?;
            println!("a^ = {} (landing time {}, residual {:e})", a_hat.get(), steps, residual);
        }
        Command::Continue {
            a,
            period,
            orbit_seed,
            target,
            max_steps,
        } => {
            let orbit = param::find_periodic_orbit(mp(a)?, period, orbit_seed).map_err(|er| e(&er))?;
            let path = param::continue_orbit(&orbit, mp(target)?, max_steps).map_err(|er| e(&er))?;
            ctx.write("result.json", &report::path_to_json(&path))?;
            let end = path.nodes.last().expect("nonempty path");
            println!(
                "continued period-{} orbit from a = {} to a = {} ({} nodes, endpoint x = {})",
                period,
                a,
                end.0,
                path.nodes.len(),
                end.1.points[0]
            );
        }
        Command::Attractor { a, n_max, p_max, tol } => {
            match param::find_attractor(mp(a)?, n_max, p_max, tol) {
                Some(orbit) => {
                    ctx.write("result.json", &report::orbit_to_json(&orbit))?;
                    println!(
                        "attractor at a = {a}: period {} (multiplier {:e})",
                        orbit.period, orbit.multiplier
                    );
                }
                None => {
                    ctx.write("result.json", "{\"absent\":true}")?;
                    println!("no attracting cycle of period <= {p_max} detected at a = {a}");
                }
            }
        }
        Command::Measure { a, x0, n, burn, bins } => {
            let x0 = x0.unwrap_or_else(|| SplitMix64::stream(cli.seed, 0).next_phase_point());
            let mu = measures::birkhoff_measure(mp(a)?, x0, n, burn).map_err(|er| e(&er))?;
            ctx.write("measure.json", &report::measure_to_json(&mu))?;
            let hist = measures::histogram(&mu, bins);
            ctx.write("histogram.csv", &report::histogram_to_csv(&hist))?;
            println!("measure of {n} iterates at a = {a}: {} atoms", mu.len());
        }
        Command::Wasserstein { mu, nu, arcsine } => {
            let mu_text = std::fs::read_to_string(&mu).map_err(|er| e(&er))?;
            let mu_m = report::measure_from_json(&mu_text)?;
            let w1 = match (nu, arcsine) {
                (Some(nu_path), false) => {
                    let nu_text = std::fs::read_to_string(&nu_path).map_err(|er| e(&er))?;
                    let nu_m = report::measure_from_json(&nu_text)?;
                    measures::wasserstein1(&mu_m, &nu_m)
                }
                (None, true) => measures::wasserstein1_to_cdf(&mu_m, &measures::ArcsineCdf),
                _ => return Err("pass exactly one of --nu FILE or --arcsine".to_string()),
            };
            let json = format!("{{\"w1\":{}}}", report::fmt_float(w1));
            ctx.write("result.json", &json)?;
            println!("W1 = {w1}");
        }
        Command::BcCheck { a, depth, bc } => {
            let cfg = bc.config();
            cfg.validate().map_err(|er| e(&er))?;
            let rep = bc::check_ce(mp(a)?, depth, &cfg);
            ctx.write("result.json", &report::ce_report_to_json(&rep))?;
            println!(
                "depth {}: min exponent {}, growth {}, recurrence violations {}",
                rep.depth,
                rep.min_exponent,
                if rep.first_violation.is_none() { "ok" } else { "violated" },
                rep.recurrence_violations.len()
            );
        }
        Command::BoundPeriod { a, mu, bc } => {
            let cfg = bc.config();
            cfg.validate().map_err(|er| e(&er))?;
            let p = bc::bound_period(mp(a)?, mu, &cfg).map_err(|er| e(&er))?;
            let json = format!("{{\"a\":{},\"mu\":{},\"p\":{}}}", report::fmt_float(a), mu, p);
            ctx.write("result.json", &json)?;
            println!("bound period p({mu}) = {p} at a = {a}");
        }
        Command::Itinerary { window, n_max, bc } => {
            let cfg = bc.config();
            let it = bc::itinerary(win(window)?, n_max, &cfg).map_err(|er| e(&er))?;
            ctx.write("result.json", &report::itinerary_to_json(&it))?;
            println!(
                "itinerary to depth {}: {} events, {} bound periods",
                n_max,
                it.events.len(),
                it.bound_periods.len()
            );
        }
        Command::DeviationSum { a, b, n } => {
            let s = bc::deviation_sum(mp(a)?, mp(b)?, n);
            let json = format!(
                "{{\"a\":{},\"b\":{},\"n\":{},\"s\":{}}}",
                report::fmt_float(a),
                report::fmt_float(b),
                n,
                report::fmt_float(s)
            );
            ctx.write("result.json", &json)?;
            println!("deviation sum over {n} steps: {s}");
        }
        Command::ThmA { a, periods } => {
            let table = experiments::natural_measure_approximation(mp(a)?, &periods, &driver_cfg).map_err(|er| e(&er))?;
            ctx.write("table.csv", &report::table_to_csv(&table))?;
            ctx.write("table.json", &report::table_to_json(&table))?;
            print_table_summary(&table);
        }
        Command::ThmB {
            a,
            n_range,
            repeller_seed,
            repeller_period,
        } => {
            let base = param::find_periodic_orbit(mp(a)?, repeller_period, repeller_seed)
                .map_err(|er| e(&er))?;
            let target = mp((a - 0.6).max(0.8))?;
            let path = param::continue_orbit(&base, target, 64).map_err(|er| e(&er))?;
            let table =
                experiments::repeller_landing_table(mp(a)?, &path, &n_range, &driver_cfg).map_err(|er| e(&er))?;
            ctx.write("table.csv", &report::landing_table_to_csv(&table))?;
            ctx.write("table.json", &report::landing_table_to_json(&table))?;
            for r in &table.rows {
                println!(
                    "N = {:2}: a^ = {:.17}  distance {:.3e}  residual {:.3e}",
                    r.n_steps, r.a_hat, r.distance, r.residual
                );
            }
            for nn in &table.notes {
                println!("note: {nn}");
            }
        }
        Command::ThmC {
            a,
            depth,
            repeller_seed,
            repeller_period,
            gamma,
        } => {
            let repeller = param::find_periodic_orbit(mp(a)?, repeller_period, repeller_seed)
                .map_err(|er| e(&er))?;
            let cfg = DriverConfig {
                gamma,
                ..driver_cfg
            };
            let table =
                experiments::chained_shadow_diagonal(mp(a)?, &repeller, depth, &cfg).map_err(|er| e(&er))?;
            ctx.write("table.csv", &report::table_to_csv(&table))?;
            ctx.write("table.json", &report::table_to_json(&table))?;
            print_table_summary(&table);
        }
        Command::ThmD { a, gamma, n_range } => {
            let default_range: Vec<usize> = match precision {
                Precision::Double => (8..=18).collect(),
                Precision::Extended => (8..=36).collect(),
            };
            let n_range = n_range.unwrap_or(default_range);
            let cfg = DriverConfig {
                gamma,
                ..driver_cfg
            };
            let out = experiments::shadow_to_singular(mp(a)?, gamma, &n_range, &cfg).map_err(|er| e(&er))?;
            ctx.write("table.csv", &report::table_to_csv(&out.table))?;
            ctx.write("table.json", &report::table_to_json(&out.table))?;
            println!(
                "landing time N = {}, repeller period {}, max extra steps {}",
                out.landing_time, out.repeller.period, out.n_hat
            );
            print_table_summary(&out.table);
        }
        Command::Discontinuity { a, n_range } => {
            let demo =
                experiments::run_discontinuity_demo(mp(a)?, &n_range, &driver_cfg).map_err(|er| e(&er))?;
            ctx.write("demo.json", &report::demo_to_json(&demo))?;
            ctx.write("acip_table.csv", &report::table_to_csv(&demo.acip_table))?;
            ctx.write(
                "singular_table.csv",
                &report::table_to_csv(&demo.singular_table),
            )?;
            let best_acip = demo
                .acip_table
                .rows
                .iter()
                .map(|r| r.w1)
                .fold(f64::INFINITY, f64::min);
            let last_sing = demo.singular_table.rows.last().map(|r| r.w1);
            println!(
                "acip-side best W1 {best_acip:.4}; singular-side final W1 {:?}",
                last_sing
            );
            println!(
                "window check at a = {}: probe {} stays W1 = {:.4} from the super-stable measure",
                demo.window_check.a_superstable, demo.window_check.a_probe, demo.window_check.w1
            );
        }
        Command::Scan { range, grid, n, tol } => {
            let rows = experiments::window_scan(win(range)?, grid, n, tol, &driver_cfg);
            ctx.write("scan.csv", &report::scan_to_csv(&rows))?;
            ctx.write("scan.json", &report::scan_to_json(&rows))?;
            let attracting = rows.iter().filter(|r| r.period.is_some()).count();
            println!(
                "scanned {} parameters: {} attracting, {} chaotic candidates",
                rows.len(),
                attracting,
                rows.len() - attracting
            );
        }
    }
    ctx.finish()
}

fn print_table_summary(table: &experiments::ConvergenceTable) {
    for r in &table.rows {
        println!(
            "n = {:2}: a_n = {:.17}  period {:3}  w1 {:.5}  residual {:.3e}",
            r.n, r.a_n, r.period, r.w1, r.residual
        );
    }
    for n in &table.notes {
        println!("note: {n}");
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Orbit { .. } => "orbit",
        Command::Lyapunov { .. } => "lyapunov",
        Command::Superstable { .. } => "superstable",
        Command::Misiurewicz { .. } => "misiurewicz",
        Command::Continue { .. } => "continue",
        Command::Attractor { .. } => "attractor",
        Command::Measure { .. } => "measure",
        Command::Wasserstein { .. } => "wasserstein",
        Command::BcCheck { .. } => "bc-check",
        Command::BoundPeriod { .. } => "bound-period",
        Command::Itinerary { .. } => "itinerary",
        Command::DeviationSum { .. } => "deviation-sum",
        Command::ThmA { .. } => "thm-a",
        Command::ThmB { .. } => "thm-b",
        Command::ThmC { .. } => "thm-c",
        Command::ThmD { .. } => "thm-d",
        Command::Discontinuity { .. } => "discontinuity",
        Command::Scan { .. } => "scan",
    }
}

fn mp(a: f64) -> Result<MapParam, String> {
    MapParam::new(a).map_err(|e| e.to_string())
}

fn win(w: (f64, f64)) -> Result<ParamWindow, String> {
    ParamWindow::new(w.0, w.1).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn no_arguments_is_usage_error() {
        assert_eq!(dispatch(&[]), EXIT_USAGE);
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        assert_eq!(dispatch(&args(&["frobnicate"])), EXIT_USAGE);
    }

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_window("0.9:1.1").unwrap(), (0.9, 1.1));
        assert!(parse_window("nope").is_err());
        assert_eq!(parse_range("3:5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("8,10,12").unwrap(), vec![8, 10, 12]);
        assert!(parse_range("5:3").is_err());
    }
}
