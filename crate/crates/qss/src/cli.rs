//! `qss` command line.
//!
//! Exit codes: 0 success, 1 malformed input or I/O failure, 2 a bound
//! violation or an oracle/closed-form mismatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qss_core::analysis::{analyze, FigureKind, Theorem, TheoremReport};
use qss_core::bell::bell_summary;
use qss_core::correlations::ChannelRole;
use qss_core::fidelity::{csr_fidelity, fidelity_summary, tele_fidelity};
use qss_core::oracle::{csr_oracle, mc_teleport_fidelity, McConfig};
use qss_core::states::{from_msr, MsrParams};
use qss_core::tol::VIOL_TOL;

use crate::format::{self, human};
use crate::sweep::{self, SweepSpec};
use crate::{figure, statefile, Error, Result};

/// Agreement required between the exact reconstruction oracle and the formula.
pub const CSR_ORACLE_TOL: f64 = 1e-6;
/// Floor on the Monte Carlo teleportation tolerance (next to 3 standard errors).
pub const MC_ABS_TOL: f64 = 2e-3;
/// Largest closed-form deviation accepted by `msr`.
pub const MSR_DELTA_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "qss", version, about = "Three-qubit states as quantum secret-sharing resources")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct SweepArgs {
    /// Number of sampled Acin states.
    #[arg(long)]
    pub n: u64,
    /// Base seed of the per-record sample streams.
    #[arg(long)]
    pub seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, env = "QSS_WORKERS", default_value_t = NonZeroUsize::MIN)]
    pub workers: NonZeroUsize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyse one state file.
    Analyze {
        statefile: PathBuf,
        /// Print a single key=value line instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Sample Acin states and write one CSV row per state.
    Sweep {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Sample the phase on |100> as well.
        #[arg(long)]
        phase: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit a figure dataset: PREFIX.csv, PREFIX.boundary.csv, PREFIX.gp.
    Figure {
        kind: FigureArg,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the three bounds over a sweep.
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        phase: bool,
        /// Violation threshold on the slacks.
        #[arg(long, default_value_t = VIOL_TOL)]
        tol: f64,
    },
    /// Compare numerics with the closed forms along the MSR family.
    Msr {
        /// Number of uniformly spaced angles in [0, pi/2].
        #[arg(long)]
        grid: usize,
    },
    /// Check a formula against its brute-force oracle.
    Oracle {
        kind: OracleArg,
        statefile: PathBuf,
        /// Monte Carlo samples (teleport only).
        #[arg(long, default_value_t = 1_000_000)]
        mc: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureArg {
    RfVsTf,
    RfVsBell,
}

impl From<FigureArg> for FigureKind {
    fn from(a: FigureArg) -> Self {
        match a {
            FigureArg::RfVsTf => FigureKind::RfVsTf,
            FigureArg::RfVsBell => FigureKind::RfVsBell,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleArg {
    Teleport,
    Csr,
}

/// Parses `args` (program name first) and executes; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn spec(a: &SweepArgs, include_phase: bool, tol: f64) -> SweepSpec {
    SweepSpec { n: a.n, seed: a.seed, include_phase, tol, workers: a.workers }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

/// `Ok(false)` means a check failed (exit 2).
pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Analyze { statefile, json } => {
            let s = statefile::load(statefile)?;
            let r = analyze(&s.state(), s.params())?;
            if *json {
                writeln!(out, "{}", format::kv_record(0, &r))?;
            } else {
                write!(out, "{}", format::table(&r))?;
            }
            Ok(true)
        }
        Command::Sweep { sweep: a, phase, out: path } => {
            let mut w = create(path)?;
            writeln!(w, "{}", format::CSV_HEADER)?;
            let report = sweep::run(&spec(a, *phase, VIOL_TOL), |i, r| Ok(writeln!(w, "{}", format::csv_row(i, r))?))?;
            w.flush().map_err(|e| Error::io(path, e))?;
            writeln!(out, "wrote {} records to {}", report.samples, path.display())?;
            Ok(true)
        }
        Command::Figure { kind, sweep: a, out: prefix } => {
            let data = figure::compute((*kind).into(), &spec(a, true, VIOL_TOL))?;
            for p in figure::write(&data, prefix)? {
                writeln!(out, "wrote {}", p.display())?;
            }
            Ok(true)
        }
        Command::Verify { sweep: a, phase, tol } => {
            if !(tol.is_finite() && *tol >= 0.0) {
                return Err(qss_core::Error::Config(format!("tolerance {tol} must be finite and non-negative")).into());
            }
            let report = sweep::run(&spec(a, *phase, *tol), |_, _| Ok(()))?;
            write_report(&report, out)?;
            if !report.is_clean() {
                writeln!(err, "counterexamples:")?;
                for t in Theorem::ALL {
                    for v in &report.tally(t).violations {
                        writeln!(
                            err,
                            "[{}] slack={} {}",
                            t.label(),
                            format::sig12(v.slack),
                            format::kv_record(v.offset, &v.record)
                        )?;
                    }
                }
            }
            Ok(report.is_clean())
        }
        Command::Msr { grid } => msr_table(*grid, out),
        Command::Oracle { kind, statefile, mc, seed } => {
            let s = statefile::load(statefile)?;
            let psi = s.state();
            match kind {
                OracleArg::Teleport => {
                    let cfg = McConfig::new(*mc, *seed)?;
                    let mut ok = true;
                    for ch in [ChannelRole::DealerAssistant, ChannelRole::DealerReconstructor] {
                        let rho = psi.reduced_pair(ch);
                        let formula = tele_fidelity(&rho)?;
                        let est = mc_teleport_fidelity(&rho, &cfg)?;
                        let tol = (3.0 * est.stderr).max(MC_ABS_TOL);
                        let pass = (est.mean - formula).abs() <= tol;
                        ok &= pass;
                        writeln!(
                            out,
                            "{:<3} formula={} mc={} stderr={} tuned={} tol={} {}",
                            ch.label(),
                            human(formula),
                            human(est.mean),
                            format::sig12(est.stderr),
                            human(est.tuned),
                            format::sig12(tol),
                            if pass { "agree" } else { "MISMATCH" }
                        )?;
                    }
                    Ok(ok)
                }
                OracleArg::Csr => {
                    let formula = csr_fidelity(&psi.density())?;
                    let o = csr_oracle(&psi)?;
                    let pass = (o.fidelity - formula).abs() <= CSR_ORACLE_TOL;
                    writeln!(
                        out,
                        "formula={} oracle={} axis={} tol={} {}",
                        human(formula),
                        human(o.fidelity),
                        o.axis.map(human).join(" "),
                        format::sig12(CSR_ORACLE_TOL),
                        if pass { "agree" } else { "MISMATCH" }
                    )?;
                    Ok(pass)
                }
            }
        }
    }
}

pub fn write_report(report: &TheoremReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "samples: {}  tol: {}", report.samples, format::sig12(report.tol))?;
    for t in Theorem::ALL {
        let tally = report.tally(t);
        let min = if tally.premise_hits == 0 { "n/a".into() } else { format::sig12(tally.min_slack) };
        writeln!(
            out,
            "{}: premise hits: {}  min slack: {}  violations: {}",
            t.label(),
            tally.premise_hits,
            min,
            tally.violations.len()
        )?;
    }
    Ok(())
}

fn msr_table(grid: usize, out: &mut dyn Write) -> Result<bool> {
    if grid == 0 {
        return Err(qss_core::Error::Config("--grid must be at least 1".into()).into());
    }
    writeln!(out, "theta_deg\ttheta2\ttheta3\tf_max\tf_csr\ts_max\td_theta2\td_theta3\td_m")?;
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        let theta = if grid == 1 { 0.0 } else { std::f64::consts::FRAC_PI_2 * i as f64 / (grid - 1) as f64 };
        let psi = from_msr(&MsrParams::new(theta)?);
        let f = fidelity_summary(&psi)?;
        let b = bell_summary(&psi)?;
        let m = b.m_max();
        let c = theta.cos();
        let deltas = [(f.theta2() - c).abs(), (f.theta3 - (2.0 * c + 1.0)).abs(), (m - c * c).abs()];
        worst = deltas.iter().fold(worst, |a, &d| a.max(d));
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            human(theta.to_degrees()),
            human(f.theta2()),
            human(f.theta3),
            human(f.f_max),
            human(f.f_csr),
            human(b.s_max),
            format::sig12(deltas[0]),
            format::sig12(deltas[1]),
            format::sig12(deltas[2])
        )?;
    }
    writeln!(out, "max delta: {} (tolerance {})", format::sig12(worst), format::sig12(MSR_DELTA_TOL))?;
    Ok(worst <= MSR_DELTA_TOL)
}
