//! Executes a validated [`Plan`] and writes its outputs.

use std::io::Write;
use std::path::{Path, PathBuf};

use djsim_core::djrunner::run_dj;
use djsim_core::experiments::{
    fock_sweep, format_sig, pulse_error_sweep, rabi_report, stark_sweep, thermal_dj, FidelityRecord, Report,
};
use djsim_core::gates::{cnot_schedule, controlled_phase_schedule, ExecMode};
use djsim_core::model::pm_diagonal;
use djsim_core::qcore::{Mat4, C64};
use djsim_core::verify;
use djsim_core::Error;

use crate::config::{Experiment, Plan, RunConfig};
use crate::error::CliError;

/// Command-line values that take precedence over the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub schedule: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Overrides {
    fn apply(self, mut cfg: RunConfig) -> RunConfig {
        cfg.out = self.out.or(cfg.out);
        cfg.json = self.json.or(cfg.json);
        cfg.plot = self.plot.or(cfg.plot);
        cfg.schedule = self.schedule.or(cfg.schedule);
        cfg.jobs = self.jobs.or(cfg.jobs);
        cfg
    }
}

pub fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::config("--config", format!("cannot read {}: {e}", p.display())))?;
            RunConfig::parse(&text)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        context: format!("cannot write {}", path.display()),
        source,
    })
}

fn io(source: std::io::Error) -> CliError {
    CliError::Io {
        context: "cannot write to stdout".into(),
        source,
    }
}

/// Runs `experiment`; CSV goes to `--out`, or to `stdout` when no file is set.
pub fn run(
    experiment: Experiment,
    cfg: RunConfig,
    overrides: Overrides,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = overrides.apply(cfg);
    let plan = cfg.plan(experiment)?;
    let jobs = cfg.jobs.unwrap_or(1);

    let report = match plan {
        Plan::Stark(c) => stark_sweep(&c, jobs)?,
        Plan::Pulse(c) => pulse_error_sweep(&c, jobs)?,
        Plan::Fock(c) => fock_sweep(&c, jobs)?,
        Plan::Rabi(c) => rabi_report(&c)?,
        Plan::Thermal(c) => thermal_dj(&c, jobs)?,
        Plan::Dj {
            oracle,
            mode,
            constraints,
        } => {
            let r = run_dj(oracle, &mode, &constraints).map_err(|e| Error::AtPoint {
                experiment: "dj".into(),
                param_name: "oracle".into(),
                param_value: oracle.index() as f64,
                source: Box::new(e),
            })?;
            writeln!(
                stdout,
                "classification={} p0={} p1={} p_correct={} state_fidelity={}",
                r.classification,
                format_sig(r.p0, 12),
                format_sig(r.p1, 12),
                format_sig(r.p_correct(), 12),
                format_sig(r.state_fidelity, 12)
            )
            .map_err(io)?;
            if let Some(p) = &cfg.json {
                write_file(p, &serde_json::to_string_pretty(&r).expect("plain data"))?;
            }
            let fock_cutoff = match mode {
                ExecMode::Physical(s) => s.fock_cutoff,
                ExecMode::Analytic => 1,
            };
            let record = FidelityRecord {
                experiment: "dj".into(),
                param_name: "oracle".into(),
                param_value: oracle.index() as f64,
                fidelity: r.p_correct(),
                fock_cutoff,
                steps: r.stats.steps,
                norm_drift: r.stats.norm_drift,
                leakage: r.stats.leakage,
            };
            let report = Report {
                experiment: "dj".into(),
                param_name: "oracle".into(),
                records: vec![record],
                summary: Default::default(),
            };
            if let Some(p) = &cfg.out {
                write_file(p, &report.to_csv())?;
            }
            if let Some(p) = &cfg.plot {
                write_file(p, &report.to_svg())?;
            }
            return Ok(());
        }
        Plan::GatesCheck { schedule, constraints } => {
            let text = gates_check(schedule, &constraints)?;
            match &cfg.out {
                Some(p) => write_file(p, &text)?,
                None => stdout.write_all(text.as_bytes()).map_err(io)?,
            }
            return Ok(());
        }
    };

    for (k, v) in &report.summary {
        writeln!(stderr, "{k}={}", format_sig(*v, 12)).map_err(io)?;
    }
    match &cfg.out {
        Some(p) => write_file(p, &report.to_csv())?,
        None => stdout.write_all(report.to_csv().as_bytes()).map_err(io)?,
    }
    if let Some(p) = &cfg.json {
        write_file(p, &report.to_json())?;
    }
    if let Some(p) = &cfg.plot {
        write_file(p, &report.to_svg())?;
    }
    Ok(())
}

fn matrix_text(u: &Mat4) -> String {
    let cell = |z: C64| format!("{:>9.6}{:+.6}i", z.re, z.im);
    u.0.iter()
        .map(|row| row.iter().map(|&z| cell(z)).collect::<Vec<_>>().join("  ") + "\n")
        .collect()
}

fn gates_check(
    schedule: Option<djsim_core::gates::Schedule>,
    constraints: &djsim_core::model::GateConstraints,
) -> Result<String, CliError> {
    let mut cnot = Mat4::zeros();
    for (from, to) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        cnot.0[to][from] = C64::new(1.0, 0.0);
    }
    let one = C64::new(1.0, 0.0);
    let cp = pm_diagonal([-one, one, one, one]);
    let mut out = String::new();
    let mut describe = |name: &str, u: &Mat4| {
        out.push_str(&format!("{name} (rows/columns gg, ge, eg, ee):\n{}", matrix_text(u)));
        out.push_str(&format!(
            "unitarity_deviation={:.3e} distance_to_cnot={:.3e} distance_to_controlled_phase={:.3e}\n",
            u.unitarity_deviation(),
            u.distance_up_to_phase(&cnot),
            u.distance_up_to_phase(&cp)
        ));
    };
    match schedule {
        Some(s) => describe("schedule", &s.analytic_matrix()?),
        None => {
            describe(
                "controlled_phase",
                &controlled_phase_schedule(constraints)?.analytic_matrix()?,
            );
            describe("cnot", &cnot_schedule(constraints)?.analytic_matrix()?);
        }
    }
    Ok(out)
}

/// Prints the verification table; true iff every check passed.
pub fn verify(stdout: &mut dyn Write) -> Result<bool, CliError> {
    let checks = verify::run_all();
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        writeln!(
            stdout,
            "{}  {:width$}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .map_err(io)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(stdout, "{} of {} checks passed", checks.len() - failed, checks.len()).map_err(io)?;
    Ok(failed == 0)
}

pub const ABOUT: &str = "\
djsim simulates two classically driven two-level atoms crossing a detuned
single-mode cavity, and the Deutsch-Jozsa algorithm built on their effective
interaction.

Units: every frequency is given in units of the atom-cavity coupling g and
every time in units of 1/g. For the Rydberg-atom microwave cavity setting,
g = 2*pi x 25 kHz, so 1/g = 6.366 microseconds; delta = 20 g corresponds to
2*pi x 500 kHz and Omega = 400 g to 2*pi x 10 MHz.

Experiments: stark, pulse, fock, rabi, thermal, dj, gates-check.
";
