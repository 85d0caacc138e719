use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use e3sov::classical_phase::OrbitParams;
use e3sov::numeric_lab::{integrate_flow, FlowSystem, Hamiltonian, QuadratureSpec};
use e3sov::reports::{self, RunOptions, SimulateConfig, Task};
use e3sov::Scalar;

#[derive(Parser, Debug)]
#[command(name = "e3sov", version, about = "Exact and numerical checks for the separated e(3) top")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for independent checks.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Record wall-clock durations (otherwise duration_ms is 0).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    /// `p/q` or `re+im i`; both of --c0/--c1 or neither (then the built-in samples).
    #[arg(long, requires = "c1")]
    c0: Option<Scalar>,
    #[arg(long, requires = "c0")]
    c1: Option<Scalar>,
}

impl OrbitArgs {
    fn orbits(&self) -> Vec<OrbitParams> {
        match (&self.c0, &self.c1) {
            (Some(c0), Some(c1)) => vec![OrbitParams::new(c0.clone(), c1.clone())],
            _ => OrbitParams::samples(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poisson brackets, orbit identities, trace, spectral curve, round trip.
    VerifyClassical {
        #[command(flatten)]
        orbit: OrbitArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The e(3) relations among the differential operators.
    VerifyCommutators {
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Lowering from the highest vector against the closed form.
    GenVerma {
        #[arg(long = "J")]
        j: u32,
        #[arg(long, default_value = "0")]
        a: Scalar,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// sl(2) and p tables on the basis, and the Shapovalov check.
    VerifyActions {
        #[arg(long = "J")]
        j: u32,
        #[arg(long, default_value = "0")]
        a: Scalar,
    },
    /// Laguerre product formula and Whittaker residuals.
    VerifyIdentities {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Solve c1/(2 sqrt c0) = J + 1.
    Quantize {
        #[arg(long)]
        c0: Scalar,
        #[arg(long)]
        c1: Scalar,
    },
    /// RK4 flows of h2 and h3 with conservation, order and commutativity checks.
    Simulate {
        #[arg(long)]
        c0: Scalar,
        #[arg(long)]
        c1: Scalar,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 10)]
        states: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory for one CSV trajectory per flow and state.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Quadrature of the inner-product integral down an epsilon ladder.
    ProbeInnerProduct {
        #[arg(long = "J")]
        j: u32,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "0")]
        a: Scalar,
        /// Comma-separated decreasing cutoffs.
        #[arg(long, value_delimiter = ',', default_values_t = reports::default_ladder())]
        eps_ladder: Vec<f64>,
        #[arg(long, default_value_t = 60.0)]
        r: f64,
        #[arg(long, default_value_t = 401)]
        nodes: usize,
    },
    /// Every suite at its default parameters.
    All {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write_csv(cfg: &SimulateConfig, dir: &PathBuf) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let sys = FlowSystem::new(&cfg.orbit);
    for (i, s) in reports::random_initial_states(cfg.seed, cfg.states).iter().enumerate() {
        for h in [Hamiltonian::H2, Hamiltonian::H3] {
            let keep = ((cfg.t_end / cfg.dt).round() as u64 / 100).max(1);
            let path = dir.join(format!("{}_state{i:02}.csv", h.name()));
            match integrate_flow(&sys, h, s, cfg.t_end, cfg.dt, Some(keep)) {
                Ok(tr) => {
                    let file = std::fs::File::create(&path).map_err(|e| e.to_string())?;
                    tr.write_csv(file).map_err(|e| e.to_string())?;
                }
                Err(e) => eprintln!("skipping {}: {e}", path.display()),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.global.jobs == 0 {
        return usage_error("--jobs must be at least 1");
    }
    let opts = RunOptions { jobs: cli.global.jobs, timing: cli.global.timing };

    let tasks: Vec<Task> = match cli.command {
        Command::VerifyClassical { orbit, seed } => reports::classical_tasks(&orbit.orbits(), seed),
        Command::VerifyCommutators { orbit } => reports::commutator_tasks(&orbit.orbits()),
        Command::GenVerma { j, a, depth } => {
            let depth = depth.unwrap_or(2 * j + 2);
            vec![Box::new(move || reports::verma_checks(j, &a, depth))]
        }
        Command::VerifyActions { j, a } => vec![Box::new(move || reports::action_checks(j, &a))],
        Command::VerifyIdentities { seed } => reports::identity_tasks(seed),
        Command::Quantize { c0, c1 } => vec![Box::new(move || vec![reports::quantize_check(&c0, &c1)])],
        Command::Simulate { c0, c1, t_end, dt, states, seed, csv } => {
            if !(dt > 0.0 && t_end > 0.0 && dt <= t_end) {
                return usage_error("need 0 < dt <= t-end");
            }
            let cfg = SimulateConfig { orbit: OrbitParams::new(c0, c1), t_end, dt, states, seed };
            if let Some(dir) = &csv {
                if let Err(e) = write_csv(&cfg, dir) {
                    return usage_error(&format!("cannot write CSV: {e}"));
                }
            }
            reports::simulate_tasks(&cfg)
        }
        Command::ProbeInnerProduct { j, m, n, a, eps_ladder, r, nodes } => {
            let spec = QuadratureSpec { epsilon: eps_ladder.first().copied().unwrap_or(1e-3), r, nodes, j, m, n, a };
            if let Err(e) = spec.validate() {
                return usage_error(&e.to_string());
            }
            if eps_ladder.len() < 2 || eps_ladder.windows(2).any(|w| w[1] >= w[0]) || eps_ladder.iter().any(|e| *e <= 0.0)
            {
                return usage_error("--eps-ladder needs at least two strictly decreasing positive cutoffs");
            }
            reports::probe_tasks(&spec, &eps_ladder)
        }
        Command::All { seed } => reports::full_suite_tasks(seed),
    };

    let out = reports::run_tasks(tasks, opts);
    let text = match cli.global.format {
        Format::Json => reports::render_json_lines(&out),
        Format::Table => reports::render_table(&out),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    if reports::any_failed(&out) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
