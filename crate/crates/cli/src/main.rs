use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qortho::bounds::{linspace, BoundMode};
use qortho::codefile::to_code_file;
use qortho::noise::DEFAULT_DECODER_BUDGET;
use qortho::quasi::{effective_distance, OverlapSpec, DEFAULT_EPSILON, DEFAULT_PHI};
use qortho::{min_weight_logical, MinWeight, SearchBudget};
use qortho_cli::pipeline::{self, DecoderOptions};
use qortho_cli::report::{self, write_csv};
use qortho_cli::{exit_code, load_code, parse_p_grid, CodeSelector, SelectOptions};

#[derive(Parser, Debug)]
#[command(
    name = "qortho",
    version,
    about = "Stabilizer codes under quasi-orthogonal encodings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and verify a code, writing it as a code file.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a code's invariants and report its parameters.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Also report the effective distance at this threshold (qubit codes, n <= 13).
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_PHI)]
        phi: f64,
    },
    /// Search for a minimum-weight logical operator.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Monte Carlo logical error rates under depolarizing noise.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "0.01:0.3:log:8")]
        p_grid: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads (results do not depend on this).
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        decoder: DecoderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact logical error rates by enumerating error patterns.
    Exact {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "1e-3:1e-1:log:21")]
        p_grid: String,
        /// Truncate the enumeration at this weight.
        #[arg(long)]
        w_cut: Option<usize>,
        #[command(flatten)]
        decoder: DecoderArgs,
        /// Write harmful-pattern counts per weight here.
        #[arg(long)]
        harmful_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rate bounds over the relative distance.
    Bounds {
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        /// Alphabet parameter of the quasi curve.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// `lo:hi:steps` grid of q values for the surface.
        #[arg(long, default_value = "1.5:4:64")]
        q_grid: String,
        #[arg(long, default_value_t = qortho::bounds::DEFAULT_DELTA_MAX)]
        delta_max: f64,
        #[arg(long, default_value_t = qortho::bounds::DEFAULT_DELTA_STEPS)]
        delta_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Leading-order error models with fidelity and distance bounds.
    Metrics {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "1e-3:1e-1:log:21")]
        p_grid: String,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_PHI)]
        phi: f64,
        #[arg(long)]
        c_lead: Option<f64>,
        #[arg(long)]
        c_leak: Option<f64>,
        /// Skip the exact-enumeration rows.
        #[arg(long)]
        no_exact: bool,
        #[command(flatten)]
        decoder: DecoderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the catalogued mappings and diff them against reference values.
    Table1 {
        /// Distance search weight for the 29-qubit code.
        #[arg(long, default_value_t = 5)]
        large_w_max: usize,
        #[arg(long)]
        force_budget: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// five | eight-three | ten-four | ten-four-literal | qr:<p> | mpc:<fixture> | file:<code file>
    #[arg(long)]
    code: CodeSelector,
    /// Prime for a bare `--code qr`.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = qortho::builder::DEFAULT_MAX_QR_PRIME)]
    max_prime: u64,
    /// Distance search weight.
    #[arg(long)]
    search_w_max: Option<usize>,
    /// Ignore pattern budgets.
    #[arg(long)]
    force_budget: bool,
}

impl CodeArgs {
    fn options(&self) -> SelectOptions {
        SelectOptions {
            prime: self.prime,
            max_prime: self.max_prime,
            w_max: self.search_w_max,
            budget: SearchBudget {
                force: self.force_budget,
                ..SearchBudget::default()
            },
        }
    }

    fn pattern_budget(&self) -> u128 {
        if self.force_budget {
            u128::MAX
        } else {
            SearchBudget::default().max_patterns
        }
    }
}

#[derive(Args, Debug)]
struct DecoderArgs {
    /// Largest coset-leader weight in the lookup decoder.
    #[arg(long)]
    w_max: Option<usize>,
}

impl DecoderArgs {
    fn options(&self, force: bool) -> DecoderOptions {
        DecoderOptions {
            w_max: self.w_max,
            budget: if force { u128::MAX } else { DEFAULT_DECODER_BUDGET },
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Orthogonal,
    Quasi,
    Surface,
    All,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn q_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        bail!("q grid must be lo:hi:steps, got {spec:?}");
    };
    Ok(linspace(lo.parse()?, hi.parse()?, steps.parse()?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct { code, out } => {
            let c = load_code(&code.code, &code.options())?;
            eprintln!("{} {}", c.name(), c.parameters());
            output(out.as_deref())?.write_all(to_code_file(&c).as_bytes())?;
        }
        Command::Verify {
            code,
            tau,
            epsilon,
            phi,
        } => {
            let c = load_code(&code.code, &code.options())?;
            c.verify()?;
            println!(
                "{} {} verified ({} generators, rank {})",
                c.name(),
                c.parameters(),
                c.generators().len(),
                c.rank()
            );
            if let Some(tau) = tau {
                let d_eff = effective_distance(&c, tau, OverlapSpec::new(epsilon, phi)?)?;
                println!("d_eff(tau={tau}, epsilon={epsilon}, phi={phi}) = {d_eff}");
            }
        }
        Command::Distance { code } => {
            let opts = code.options();
            let c = load_code(
                &code.code,
                &SelectOptions {
                    w_max: Some(1),
                    ..opts.clone()
                },
            )?;
            let w_max = opts.w_max.unwrap_or_else(|| c.n().min(opts.budget.max_weight(&c)));
            match min_weight_logical(&c, w_max, opts.budget)? {
                MinWeight::Exact { d, witness } => println!("{}: d = {d}, witness {witness}", c.name()),
                MinWeight::NoLogicalBelow(b) => println!("{}: no logical operator of weight below {b}", c.name()),
            }
        }
        Command::Simulate {
            code,
            p_grid,
            trials,
            seed,
            workers,
            decoder,
            out,
        } => {
            let c = load_code(&code.code, &code.options())?;
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rows = pipeline::simulate(
                &c,
                &pipeline::SimulateOptions {
                    p_grid: parse_p_grid(&p_grid)?,
                    trials,
                    seed,
                    workers,
                    decoder: decoder.options(code.force_budget),
                    verbose: true,
                },
            )?;
            write_csv(output(out.as_deref())?, &report::SIMULATE_HEADER, &rows)?;
        }
        Command::Exact {
            code,
            p_grid,
            w_cut,
            decoder,
            harmful_out,
            out,
        } => {
            let c = load_code(&code.code, &code.options())?;
            let (rows, profile) = pipeline::exact(
                &c,
                &pipeline::ExactOptions {
                    p_grid: parse_p_grid(&p_grid)?,
                    w_cut,
                    decoder: decoder.options(code.force_budget),
                    budget: code.pattern_budget(),
                },
            )?;
            write_csv(output(out.as_deref())?, &report::EXACT_HEADER, &rows)?;
            if let Some(path) = harmful_out {
                write_csv(
                    output(Some(&path))?,
                    &report::HARMFUL_HEADER,
                    &pipeline::harmful_rows(&c, &profile),
                )?;
            }
        }
        Command::Bounds {
            mode,
            q,
            q_grid: qg,
            delta_max,
            delta_steps,
            out,
        } => {
            let modes = match mode {
                ModeArg::Orthogonal => vec![BoundMode::Orthogonal],
                ModeArg::Quasi => vec![BoundMode::Quasi],
                ModeArg::Surface => vec![BoundMode::Surface],
                ModeArg::All => vec![BoundMode::Orthogonal, BoundMode::Quasi, BoundMode::Surface],
            };
            let rows = pipeline::bounds(&pipeline::BoundsOptions {
                modes,
                q,
                q_grid: q_grid(&qg)?,
                delta_max,
                delta_steps,
            })?;
            write_csv(output(out.as_deref())?, &report::BOUNDS_HEADER, &rows)?;
        }
        Command::Metrics {
            code,
            p_grid,
            epsilon,
            phi,
            c_lead,
            c_leak,
            no_exact,
            decoder,
            out,
        } => {
            let c = load_code(&code.code, &code.options())?;
            let rows = pipeline::metrics(
                &c,
                &pipeline::MetricsOptions {
                    p_grid: parse_p_grid(&p_grid)?,
                    overlap: OverlapSpec::new(epsilon, phi)?,
                    c_lead,
                    c_leak,
                    decoder: decoder.options(code.force_budget),
                    budget: code.pattern_budget(),
                    exact: !no_exact,
                },
            )?;
            write_csv(output(out.as_deref())?, &report::METRICS_HEADER, &rows)?;
        }
        Command::Table1 {
            large_w_max,
            force_budget,
            out,
        } => {
            let rows = pipeline::table1(&pipeline::Table1Options {
                select: SelectOptions {
                    budget: SearchBudget {
                        force: force_budget,
                        ..SearchBudget::default()
                    },
                    ..SelectOptions::default()
                },
                large_w_max,
            })?;
            write_csv(output(out.as_deref())?, &report::TABLE1_HEADER, &rows)?;
            pipeline::check_table1(&rows)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
