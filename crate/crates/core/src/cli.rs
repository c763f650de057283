//! The `prcode` command-line front end.
//!
//! Every subcommand writes its CSV into the output directory (`--out-dir`,
//! else `$PRCODE_OUT_DIR`, else the working directory). The first line of each
//! CSV is a `#` manifest comment naming the tool version, the command and all
//! parameters, which is enough to regenerate the file byte for byte.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    bound_curve_csv, dmin_bound, dmin_bound_exact, dmin_growth, dmin_growth_csv, ebno_db_to_gamma,
    gv_distance, union_bound, verify_existence, UnionBoundMode,
};
use crate::code::build_code;
use crate::error::Error;
use crate::gf2poly::{enumerate_primitives, BitPoly};
use crate::numfmt::format_significant;
use crate::sim::{simulate_wer, wer_curve_csv, SimConfig, DEFAULT_MAX_TRIALS, DEFAULT_TARGET_WORD_ERRORS};
use crate::weights::{
    avg_dual_approx, avg_primal_approx, ensemble_average_exact, kld, macwilliams,
    weight_enumerator_exact, PrimalApprox, RealDistribution,
};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PRCODE_OUT_DIR";

const TOOL: &str = "prcode";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "prcode", version, about = "Primitive rateless codes: weight distributions, bounds and AWGN simulation")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Directory for CSV outputs [default: $PRCODE_OUT_DIR or .]
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Permit long-running jobs (k >= 15 ensembles, k >= 12 simulations)
    #[arg(long, global = true)]
    allow_slow: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the primitive polynomials of degree k
    Primitives {
        #[arg(long)]
        k: u32,
    },
    /// Exact weight enumerator of one PR code (or of its dual)
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        dual: bool,
    },
    /// Ensemble-average weight distribution, exact or approximated
    AvgWeights {
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long, value_enum, default_value_t = AvgMode::Exact)]
        mode: AvgMode,
        /// With --mode exact, also write the average dual distribution
        #[arg(long)]
        dual: bool,
    },
    /// KLD between the exact ensemble distribution and its approximation
    Kld {
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Ensemble minimum-distance bound, GV distance and optional witness scan
    Dmin {
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long)]
        scan: bool,
    },
    /// Union bound on word error rate over a list of Eb/N0 values
    UnionBound {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        ebno: EbnoArgs,
        #[arg(long, value_enum, default_value_t = BoundMode::Literal)]
        mode: BoundMode,
        #[arg(long, value_enum, default_value_t = BoundSource::Code)]
        source: BoundSource,
    },
    /// Monte Carlo ML word error rate over AWGN
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        ebno: EbnoArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_TRIALS)]
        max_trials: u64,
        #[arg(long, default_value_t = DEFAULT_TARGET_WORD_ERRORS)]
        target_errors: u64,
    },
    /// Regenerate a named reference dataset
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Connection polynomial, hex (0x13) or symbolic (1+x+x^4)
    #[arg(long, value_parser = parse_poly)]
    poly: BitPoly,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct DimArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct EbnoArgs {
    /// Comma-separated Eb/N0 values in dB
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    ebno_list: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AvgMode {
    Exact,
    Approx8,
    Approx9,
    Literal9,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Dual,
    Primal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundMode {
    Literal,
    Unweighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundSource {
    /// The given code's exact enumerator from its true minimum distance
    Code,
    /// Exact ensemble average of all primitives of the same degree
    Ensemble,
    /// Closed-form ensemble approximation
    Approx9,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Table1,
    Table2,
    Table3,
    Fig1,
    Fig2,
    Fig3,
    #[value(name = "fig4-pr")]
    Fig4Pr,
    #[value(name = "fig5-pr")]
    Fig5Pr,
}

fn parse_poly(s: &str) -> Result<BitPoly, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs the CLI on `args` (including the program name), writing progress to
/// `stdout` and diagnostics to stderr. Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let mut ctx = Context {
        out_dir,
        allow_slow: cli.allow_slow,
        stdout,
    };
    match ctx.dispatch(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Context<'a> {
    out_dir: PathBuf,
    allow_slow: bool,
    stdout: &'a mut dyn Write,
}

impl Context<'_> {
    fn say(&mut self, line: &str) -> CliResult<()> {
        writeln!(self.stdout, "{line}").map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    }

    /// Writes `body` under a manifest comment and reports the path.
    fn write_csv(&mut self, name: &str, manifest: &str, body: &str) -> CliResult<()> {
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CliError::Io { path, source }
        };
        std::fs::create_dir_all(&self.out_dir).map_err(io_err(&self.out_dir))?;
        let path = self.out_dir.join(name);
        let contents = format!("# {TOOL} {VERSION} {manifest} output={name}\n{body}");
        std::fs::write(&path, contents).map_err(io_err(&path))?;
        self.say(&format!("wrote {}", path.display()))
    }

    fn require_slow(&self, what: &str) -> CliResult<()> {
        if self.allow_slow {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{what} is long-running; pass --allow-slow")))
        }
    }

    fn check_ensemble(&self, k: u32) -> CliResult<()> {
        if k >= 15 {
            self.require_slow(&format!("a k = {k} ensemble"))?;
        }
        Ok(())
    }

    fn check_simulation(&self, k: u32) -> CliResult<()> {
        if k >= 12 {
            self.require_slow(&format!("a k = {k} simulation"))?;
        }
        Ok(())
    }

    fn dispatch(&mut self, command: &Command) -> CliResult<()> {
        match command {
            Command::Primitives { k } => {
                for p in enumerate_primitives(*k)? {
                    self.say(&p.to_hex())?;
                }
                Ok(())
            }
            Command::Weights { code, dual } => self.weights(code.poly, code.n, *dual),
            Command::AvgWeights { dims, mode, dual } => self.avg_weights(dims.k, dims.n, *mode, *dual),
            Command::Kld { dims, which } => self.kld(dims.k, dims.n, *which),
            Command::Dmin { dims, scan } => self.dmin(dims.k, dims.n, *scan),
            Command::UnionBound { code, ebno, mode, source } => {
                self.union_bound(code.poly, code.n, &ebno.ebno_list, *mode, *source)
            }
            Command::Simulate { code, ebno, seed, max_trials, target_errors } => {
                self.simulate(code.poly, code.n, &ebno.ebno_list, *seed, *max_trials, *target_errors)
            }
            Command::Reproduce { target } => self.reproduce(*target),
        }
    }

    fn weights(&mut self, poly: BitPoly, n: usize, dual: bool) -> CliResult<()> {
        let code = build_code(poly, n)?;
        let mut a = weight_enumerator_exact(&code)?;
        if dual {
            a = macwilliams(&a)?;
        }
        let suffix = if dual { "_dual" } else { "" };
        self.write_csv(
            &format!("weights_{}_n{n}{suffix}.csv", poly.to_hex()),
            &format!("weights poly={} n={n} dual={dual}", poly.to_hex()),
            &a.to_csv(),
        )
    }

    fn avg_weights(&mut self, k: u32, n: usize, mode: AvgMode, dual: bool) -> CliResult<()> {
        let mode_name = mode.to_possible_value().unwrap().get_name().to_string();
        let manifest = |what: &str| format!("avg-weights k={k} n={n} mode={mode_name} {what}");
        match mode {
            AvgMode::Exact => {
                self.check_ensemble(k)?;
                let e = ensemble_average_exact(k, n)?;
                self.write_csv(
                    &format!("avg_weights_k{k}_n{n}_exact.csv"),
                    &manifest("dist=primal"),
                    &e.primal_distribution().to_csv(),
                )?;
                if dual {
                    self.write_csv(
                        &format!("avg_weights_k{k}_n{n}_exact_dual.csv"),
                        &manifest("dist=dual"),
                        &e.dual_distribution().to_csv(),
                    )?;
                }
                Ok(())
            }
            AvgMode::Approx8 | AvgMode::Approx9 | AvgMode::Literal9 => {
                let dist = match mode {
                    AvgMode::Approx8 => avg_dual_approx(k, n)?,
                    AvgMode::Approx9 => avg_primal_approx(k, n, PrimalApprox::Primary)?,
                    _ => avg_primal_approx(k, n, PrimalApprox::Literal)?,
                };
                self.write_csv(
                    &format!("avg_weights_k{k}_n{n}_{mode_name}.csv"),
                    &manifest(&format!("dist={}", dist.kind.label())),
                    &dist.to_csv(),
                )
            }
        }
    }

    fn compute_kld(&self, k: u32, n: usize, which: Which) -> CliResult<f64> {
        self.check_ensemble(k)?;
        let e = ensemble_average_exact(k, n)?;
        Ok(match which {
            Which::Dual => kld(&e.dual_distribution(), &avg_dual_approx(k, n)?)?,
            Which::Primal => kld(&e.primal_distribution(), &avg_primal_approx(k, n, PrimalApprox::Primary)?)?,
        })
    }

    fn kld(&mut self, k: u32, n: usize, which: Which) -> CliResult<()> {
        let value = self.compute_kld(k, n, which)?;
        let which_name = match which {
            Which::Dual => "dual",
            Which::Primal => "primal",
        };
        self.say(&format!("kld={}", format_significant(value, 6)))?;
        self.write_csv(
            &format!("kld_k{k}_n{n}_{which_name}.csv"),
            &format!("kld k={k} n={n} which={which_name}"),
            &format!("k,n,which,kld\n{k},{n},{which_name},{}\n", format_significant(value, 12)),
        )
    }

    fn dmin(&mut self, k: u32, n: usize, scan: bool) -> CliResult<()> {
        let (bound, witness) = if scan {
            let r = verify_existence(k, n)?;
            let poly = r.witness_poly.expect("scan always reports a witness");
            (r.d_min_bound, Some((poly, r.witness_d.unwrap())))
        } else {
            self.check_ensemble(k)?;
            (dmin_bound_exact(&ensemble_average_exact(k, n)?.primal), None)
        };
        let gv = gv_distance(n, k as usize);
        let mut line = format!("k={k} n={n} dmin_bound={bound} gv_d={gv}");
        if let Some((p, d)) = witness {
            write!(line, " witness_poly={} witness_d={d}", p.to_hex()).unwrap();
        }
        self.say(&line)?;
        let rows = [crate::bounds::DminGrowthRow {
            n,
            dmin_bound: bound,
            witness_d: witness.map(|(_, d)| d),
        }];
        self.write_csv(
            &format!("dmin_k{k}_n{n}.csv"),
            &format!("dmin k={k} n={n} scan={scan}"),
            &dmin_growth_csv(&rows),
        )
    }

    fn union_bound(
        &mut self,
        poly: BitPoly,
        n: usize,
        ebno: &[f64],
        mode: BoundMode,
        source: BoundSource,
    ) -> CliResult<()> {
        let code = build_code(poly, n)?;
        let k = code.k();
        let (dist, d_min) = match source {
            BoundSource::Code => {
                let a = weight_enumerator_exact(&code)?;
                let d = a.min_distance().unwrap_or(n);
                (RealDistribution::from_enumerator(&a), d)
            }
            BoundSource::Ensemble => {
                self.check_ensemble(k)?;
                let e = ensemble_average_exact(k, n)?;
                (e.primal_distribution(), dmin_bound_exact(&e.primal))
            }
            BoundSource::Approx9 => {
                let a = avg_primal_approx(k, n, PrimalApprox::Primary)?;
                let d = dmin_bound(&a);
                (a, d)
            }
        };
        let ub_mode = match mode {
            BoundMode::Literal => UnionBoundMode::Literal,
            BoundMode::Unweighted => UnionBoundMode::Unweighted,
        };
        let points: Vec<(f64, f64)> = ebno
            .iter()
            .map(|&eb| (eb, union_bound(&dist, d_min, ebno_db_to_gamma(eb, code.rate()), ub_mode)))
            .collect();
        let mode_name = mode.to_possible_value().unwrap().get_name().to_string();
        let source_name = source.to_possible_value().unwrap().get_name().to_string();
        self.write_csv(
            &format!("union_bound_{}_n{n}_{source_name}_{mode_name}.csv", poly.to_hex()),
            &format!(
                "union-bound poly={} n={n} ebno={} mode={mode_name} source={source_name} d_min={d_min}",
                poly.to_hex(),
                join(ebno)
            ),
            &bound_curve_csv(&points),
        )
    }

    fn simulate(
        &mut self,
        poly: BitPoly,
        n: usize,
        ebno: &[f64],
        seed: u64,
        max_trials: u64,
        target_errors: u64,
    ) -> CliResult<()> {
        let code = build_code(poly, n)?;
        self.check_simulation(code.k())?;
        let mut cfg = SimConfig::new(code, ebno.to_vec(), seed);
        cfg.max_trials = max_trials;
        cfg.target_word_errors = target_errors;
        let results = simulate_wer(&cfg)?;
        self.write_csv(
            &format!("wer_{}_n{n}_seed{seed}.csv", poly.to_hex()),
            &format!(
                "simulate poly={} n={n} ebno={} seed={seed} max_trials={max_trials} target_errors={target_errors}",
                poly.to_hex(),
                join(ebno)
            ),
            &wer_curve_csv(&results),
        )
    }

    fn reproduce(&mut self, target: Target) -> CliResult<()> {
        match target {
            Target::Table1 => self.kld_table("table1", Which::Dual, TABLE1, TABLE1_SLOW),
            Target::Table2 => self.kld_table("table2", Which::Primal, TABLE2, TABLE2_SLOW),
            Target::Table3 => {
                for &(poly, n) in TABLE3 {
                    let p: BitPoly = poly.parse()?;
                    let a = weight_enumerator_exact(&build_code(p, n)?)?;
                    let k = p.degree().unwrap();
                    self.say(&format!("k={k} n={n} PR: {}", a.to_polynomial_string()))?;
                    self.write_csv(
                        &format!("table3_k{k}_n{n}.csv"),
                        &format!("reproduce table3 poly={} n={n}", p.to_hex()),
                        &a.to_csv(),
                    )?;
                }
                Ok(())
            }
            Target::Fig1 => self.distribution_figure("fig1", Which::Dual, TABLE1, TABLE1_SLOW),
            Target::Fig2 => self.distribution_figure("fig2", Which::Primal, TABLE2, TABLE2_SLOW),
            Target::Fig3 => self.fig3(),
            Target::Fig4Pr => self.wer_figure("fig4", 20, FIG4_POLYS),
            Target::Fig5Pr => self.wer_figure("fig5", 32, FIG5_POLYS),
        }
    }

    fn parameter_sets(&mut self, fast: &[(u32, usize, f64)], slow: &[(u32, usize, f64)]) -> CliResult<Vec<(u32, usize, f64)>> {
        let mut sets = fast.to_vec();
        if self.allow_slow {
            sets.extend_from_slice(slow);
        } else {
            for &(k, n, _) in slow {
                self.say(&format!("skipping k={k} n={n} (slow; pass --allow-slow)"))?;
            }
        }
        Ok(sets)
    }

    fn kld_table(&mut self, name: &str, which: Which, fast: &[(u32, usize, f64)], slow: &[(u32, usize, f64)]) -> CliResult<()> {
        let mut body = String::from("k,n,reference_kld,computed_kld\n");
        for (k, n, reference) in self.parameter_sets(fast, slow)? {
            let value = self.compute_kld(k, n, which)?;
            self.say(&format!(
                "k={k} n={n} reference={reference:e} computed={}",
                format_significant(value, 3)
            ))?;
            writeln!(body, "{k},{n},{reference:e},{}", format_significant(value, 12)).unwrap();
        }
        self.write_csv(
            &format!("{name}.csv"),
            &format!("reproduce {name} allow_slow={}", self.allow_slow),
            &body,
        )
    }

    fn distribution_figure(&mut self, name: &str, which: Which, fast: &[(u32, usize, f64)], slow: &[(u32, usize, f64)]) -> CliResult<()> {
        for (k, n, _) in self.parameter_sets(fast, slow)? {
            let e = ensemble_average_exact(k, n)?;
            let (exact, approx) = match which {
                Which::Dual => (e.dual_distribution(), avg_dual_approx(k, n)?),
                Which::Primal => (e.primal_distribution(), avg_primal_approx(k, n, PrimalApprox::Primary)?),
            };
            for (tag, dist) in [("exact", exact), ("approx", approx)] {
                self.write_csv(
                    &format!("{name}_k{k}_n{n}_{tag}.csv"),
                    &format!("reproduce {name} k={k} n={n} curve={}", dist.kind.label()),
                    &dist.to_csv(),
                )?;
            }
        }
        Ok(())
    }

    fn fig3(&mut self) -> CliResult<()> {
        for &poly in FIG3_POLYS {
            let p: BitPoly = poly.parse()?;
            let k = p.degree().unwrap();
            let lengths = std::iter::once(2 * k as usize)
                .chain((1..=16).map(|i| 8 * i).filter(|&n| n > 2 * k as usize));
            let mut bounds = Vec::new();
            for n in lengths {
                let bound = if k <= 12 {
                    dmin_bound_exact(&ensemble_average_exact(k, n)?.primal)
                } else {
                    dmin_bound(&avg_primal_approx(k, n, PrimalApprox::Primary)?)
                };
                bounds.push((n, bound));
            }
            let rows = dmin_growth(p, &bounds)?;
            self.write_csv(
                &format!("fig3_k{k}.csv"),
                &format!(
                    "reproduce fig3 poly={} bound={}",
                    p.to_hex(),
                    if k <= 12 { "exact-ensemble" } else { "approx9" }
                ),
                &dmin_growth_csv(&rows),
            )?;
        }
        Ok(())
    }

    fn wer_figure(&mut self, name: &str, n: usize, polys: &[&str]) -> CliResult<()> {
        let ebno: Vec<f64> = (0..=7).map(f64::from).collect();
        let max_trials = if self.allow_slow { DEFAULT_MAX_TRIALS } else { REPRODUCE_MAX_TRIALS };
        for &poly in polys {
            let p: BitPoly = poly.parse()?;
            let code = build_code(p, n)?;
            let k = code.k();
            let e = ensemble_average_exact(k, n)?;
            let d_min = dmin_bound_exact(&e.primal);
            let dist = e.primal_distribution();
            for (tag, mode) in [("ub", UnionBoundMode::Literal), ("ub_unweighted", UnionBoundMode::Unweighted)] {
                let points: Vec<(f64, f64)> = ebno
                    .iter()
                    .map(|&eb| (eb, union_bound(&dist, d_min, ebno_db_to_gamma(eb, code.rate()), mode)))
                    .collect();
                self.write_csv(
                    &format!("{name}_k{k}_n{n}_{tag}.csv"),
                    &format!("reproduce {name}-pr poly={} n={n} curve={tag} source=ensemble d_min={d_min}", p.to_hex()),
                    &bound_curve_csv(&points),
                )?;
            }
            let mut cfg = SimConfig::new(code, ebno.clone(), REPRODUCE_SEED);
            cfg.max_trials = max_trials;
            let results = simulate_wer(&cfg)?;
            self.write_csv(
                &format!("{name}_k{k}_n{n}_wer.csv"),
                &format!(
                    "reproduce {name}-pr poly={} n={n} seed={REPRODUCE_SEED} max_trials={max_trials} target_errors={}",
                    p.to_hex(),
                    cfg.target_word_errors
                ),
                &wer_curve_csv(&results),
            )?;
        }
        Ok(())
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// `(k, n, reference KLD)` for the dual-approximation table.
pub const TABLE1: &[(u32, usize, f64)] = &[(5, 12, 8.3e-3), (8, 20, 6.17e-4), (10, 25, 3.09e-5)];
pub const TABLE1_SLOW: &[(u32, usize, f64)] = &[(15, 31, 1.93e-6)];
/// `(k, n, reference KLD)` for the primal-approximation table.
pub const TABLE2: &[(u32, usize, f64)] = &[(10, 25, 1.8e-3), (10, 45, 3.8e-3)];
pub const TABLE2_SLOW: &[(u32, usize, f64)] = &[(15, 60, 5.41e-5), (15, 100, 9.47e-5)];

pub const TABLE3: &[(&str, usize)] = &[
    ("1+x+x^4", 20),
    ("1+x+x^4", 32),
    ("1+x^2+x^3+x^4+x^5+x^8+x^11", 20),
    ("1+x^2+x^3+x^4+x^5+x^8+x^11", 32),
];

pub const FIG3_POLYS: &[&str] = &[
    "1+x+x^4",
    "1+x^2+x^3+x^5+x^8",
    "1+x+x^4+x^6+x^8+x^9+x^11+x^13+x^16",
];

pub const FIG4_POLYS: &[&str] = &[
    "1+x+x^4",
    "1+x+x^4+x^5+x^6",
    "1+x^2+x^3+x^5+x^8",
    "1+x+x^2+x^3+x^5+x^6+x^10",
];

pub const FIG5_POLYS: &[&str] = &[
    "1+x+x^3",
    "1+x^2+x^5",
    "1+x+x^3+x^6+x^7",
    "1+x+x^3+x^4+x^9",
    "1+x^2+x^3+x^4+x^5+x^8+x^11",
];

const REPRODUCE_SEED: u64 = 1;
const REPRODUCE_MAX_TRIALS: u64 = 200_000;
