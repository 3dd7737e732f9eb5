//! Run configuration: flat `key = value` lines, `#` starts a comment.
//!
//! Lists are comma separated. Every key is optional; unset keys take the
//! experiment defaults. Keys that do not apply to the chosen experiment are
//! rejected, as are unknown and repeated keys.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use djsim_core::experiments::{
    experiment_integrator, EprChannel, EprInput, FockConfig, PulseConfig, RabiConfig, StarkConfig, ThermalConfig,
};
use djsim_core::gates::{CavityInit, ExecMode, Oracle, PhysicalSettings, Schedule};
use djsim_core::model::GateConstraints;
use djsim_core::propagator::IntegratorSettings;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Stark,
    Pulse,
    Fock,
    Rabi,
    Thermal,
    Dj,
    GatesCheck,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Stark => "stark",
            Experiment::Pulse => "pulse",
            Experiment::Fock => "fock",
            Experiment::Rabi => "rabi",
            Experiment::Thermal => "thermal",
            Experiment::Dj => "dj",
            Experiment::GatesCheck => "gates-check",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Experiment::Stark => &["delta_over_g", "omega_over_delta", "fock_cutoff"],
            Experiment::Pulse => &[
                "delta_over_g",
                "omega_over_g",
                "omega_over_delta",
                "fock_cutoff",
                "fock_n",
                "eps_list",
                "epr_input",
            ],
            Experiment::Fock => &[
                "delta_over_g",
                "omega_over_g",
                "omega_over_delta",
                "fock_cutoff",
                "fock_n",
                "epr_input",
            ],
            Experiment::Rabi => &["delta_over_g", "omega_over_delta", "fock_cutoff", "delta_omega_ratio"],
            Experiment::Thermal => &[
                "nbar",
                "oracle",
                "mode",
                "delta_over_g",
                "omega_over_g",
                "omega_over_delta",
                "fock_cutoff",
            ],
            Experiment::Dj => &[
                "oracle",
                "mode",
                "nbar",
                "fock_n",
                "fock_cutoff",
                "delta_over_g",
                "omega_over_g",
                "omega_over_delta",
            ],
            Experiment::GatesCheck => &["schedule", "delta_over_g", "omega_over_delta"],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Experiment, String> {
        <Experiment as ValueEnum>::from_str(s, false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Analytic,
    Physical,
}

/// Keys accepted by every experiment.
const COMMON_KEYS: &[&str] = &[
    "experiment",
    "steps_per_radian",
    "unitarity_tol",
    "leakage_tol",
    "jobs",
    "out",
    "json",
    "plot",
];

/// All keys, in serialization order.
pub const KEYS: &[&str] = &[
    "experiment",
    "delta_over_g",
    "omega_over_g",
    "omega_over_delta",
    "fock_cutoff",
    "nbar",
    "fock_n",
    "eps_list",
    "oracle",
    "mode",
    "epr_input",
    "delta_omega_ratio",
    "steps_per_radian",
    "unitarity_tol",
    "leakage_tol",
    "jobs",
    "out",
    "json",
    "plot",
    "schedule",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub experiment: Option<Experiment>,
    pub delta_over_g: Option<Vec<f64>>,
    pub omega_over_g: Option<f64>,
    pub omega_over_delta: Option<f64>,
    pub fock_cutoff: Option<usize>,
    pub nbar: Option<f64>,
    pub fock_n: Option<Vec<usize>>,
    pub eps_list: Option<Vec<f64>>,
    pub oracle: Option<Vec<Oracle>>,
    pub mode: Option<Mode>,
    pub epr_input: Option<EprInput>,
    pub delta_omega_ratio: Option<f64>,
    pub steps_per_radian: Option<f64>,
    pub unitarity_tol: Option<f64>,
    pub leakage_tol: Option<f64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub schedule: Option<PathBuf>,
}

fn bad(key: &str, message: impl Into<String>) -> CliError {
    CliError::config(key, message)
}

fn real(key: &str, v: &str) -> Result<f64, CliError> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| bad(key, format!("'{v}' is not a finite number")))
}

fn count(key: &str, v: &str) -> Result<usize, CliError> {
    v.parse::<usize>()
        .map_err(|_| bad(key, format!("'{v}' is not a non-negative integer")))
}

fn list<T>(key: &str, v: &str, item: impl Fn(&str, &str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    let items = v
        .split(',')
        .map(str::trim)
        .map(|s| item(key, s))
        .collect::<Result<Vec<T>, _>>()?;
    if items.is_empty() {
        return Err(bad(key, "empty list"));
    }
    Ok(items)
}

fn path(key: &str, v: &str) -> Result<PathBuf, CliError> {
    if v.is_empty() {
        Err(bad(key, "empty path"))
    } else {
        Ok(PathBuf::from(v))
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        let mut seen = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(
                    format!("line {}", k + 1),
                    format!("expected 'key = value', got '{line}'"),
                )
            })?;
            let (key, value) = (key.trim(), value.trim());
            if seen.contains(&key.to_string()) {
                return Err(bad(key, "given more than once"));
            }
            seen.push(key.to_string());
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<(), CliError> {
        match key {
            "experiment" => {
                self.experiment = Some(v.parse().map_err(|_| bad(key, format!("unknown experiment '{v}'")))?)
            }
            "delta_over_g" => self.delta_over_g = Some(list(key, v, real)?),
            "omega_over_g" => self.omega_over_g = Some(real(key, v)?),
            "omega_over_delta" => self.omega_over_delta = Some(real(key, v)?),
            "fock_cutoff" => self.fock_cutoff = Some(count(key, v)?),
            "nbar" => self.nbar = Some(real(key, v)?),
            "fock_n" => self.fock_n = Some(list(key, v, count)?),
            "eps_list" => self.eps_list = Some(list(key, v, real)?),
            "oracle" => {
                self.oracle = Some(list(key, v, |k, s| {
                    s.parse::<Oracle>().map_err(|_| bad(k, format!("unknown oracle '{s}'")))
                })?)
            }
            "mode" => {
                self.mode = Some(match v {
                    "analytic" => Mode::Analytic,
                    "physical" => Mode::Physical,
                    _ => return Err(bad(key, format!("expected analytic or physical, got '{v}'"))),
                })
            }
            "epr_input" => {
                self.epr_input = Some(match v {
                    "gg" => EprInput::Gg,
                    "eg" => EprInput::Eg,
                    _ => return Err(bad(key, format!("expected gg or eg, got '{v}'"))),
                })
            }
            "delta_omega_ratio" => self.delta_omega_ratio = Some(real(key, v)?),
            "steps_per_radian" => self.steps_per_radian = Some(real(key, v)?),
            "unitarity_tol" => self.unitarity_tol = Some(real(key, v)?),
            "leakage_tol" => self.leakage_tol = Some(real(key, v)?),
            "jobs" => self.jobs = Some(count(key, v)?),
            "out" => self.out = Some(path(key, v)?),
            "json" => self.json = Some(path(key, v)?),
            "plot" => self.plot = Some(path(key, v)?),
            "schedule" => self.schedule = Some(path(key, v)?),
            _ => return Err(bad(key, "unknown key")),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<String> {
        let p = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        match key {
            "experiment" => self.experiment.map(|e| e.name().to_string()),
            "delta_over_g" => self.delta_over_g.as_deref().map(join),
            "omega_over_g" => self.omega_over_g.map(|x| x.to_string()),
            "omega_over_delta" => self.omega_over_delta.map(|x| x.to_string()),
            "fock_cutoff" => self.fock_cutoff.map(|x| x.to_string()),
            "nbar" => self.nbar.map(|x| x.to_string()),
            "fock_n" => self.fock_n.as_deref().map(join),
            "eps_list" => self.eps_list.as_deref().map(join),
            "oracle" => self.oracle.as_deref().map(join),
            "mode" => self.mode.map(|m| {
                match m {
                    Mode::Analytic => "analytic",
                    Mode::Physical => "physical",
                }
                .to_string()
            }),
            "epr_input" => self.epr_input.map(|e| {
                match e {
                    EprInput::Gg => "gg",
                    EprInput::Eg => "eg",
                }
                .to_string()
            }),
            "delta_omega_ratio" => self.delta_omega_ratio.map(|x| x.to_string()),
            "steps_per_radian" => self.steps_per_radian.map(|x| x.to_string()),
            "unitarity_tol" => self.unitarity_tol.map(|x| x.to_string()),
            "leakage_tol" => self.leakage_tol.map(|x| x.to_string()),
            "jobs" => self.jobs.map(|x| x.to_string()),
            "out" => p(&self.out),
            "json" => p(&self.json),
            "plot" => p(&self.plot),
            "schedule" => p(&self.schedule),
            _ => None,
        }
    }

    /// Canonical text form; parses back to an equal config.
    pub fn to_text(&self) -> String {
        KEYS.iter()
            .filter_map(|k| self.get(k).map(|v| format!("{k} = {v}\n")))
            .collect()
    }

    fn present_keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        KEYS.iter().copied().filter(|k| self.get(k).is_some())
    }

    /// Checks every key against `experiment` and builds the run, before any
    /// computation starts.
    pub fn plan(&self, experiment: Experiment) -> Result<Plan, CliError> {
        if let Some(e) = self.experiment {
            if e != experiment {
                return Err(bad(
                    "experiment",
                    format!("config is for '{e}' but '{experiment}' was requested"),
                ));
            }
        }
        for key in self.present_keys() {
            if !COMMON_KEYS.contains(&key) && !experiment.keys().contains(&key) {
                return Err(bad(key, format!("does not apply to experiment '{experiment}'")));
            }
        }
        if self.jobs == Some(0) {
            return Err(bad("jobs", "must be at least 1"));
        }
        let integrator = self.integrator()?;
        Ok(match experiment {
            Experiment::Stark => {
                let mut c = StarkConfig {
                    integrator,
                    ..StarkConfig::default()
                };
                if let Some(d) = &self.delta_over_g {
                    for &x in d {
                        positive("delta_over_g", x)?;
                    }
                    c.delta_over_g = d.clone();
                }
                if let Some(r) = self.omega_over_delta {
                    c.omega_ratio = positive("omega_over_delta", r)?;
                }
                if let Some(f) = self.fock_cutoff {
                    c.fock_cutoff = f;
                }
                c.validate().map_err(|e| attribute(e, "fock_cutoff"))?;
                Plan::Stark(c)
            }
            Experiment::Pulse => {
                let mut c = PulseConfig {
                    integrator,
                    channel: self.channel()?,
                    ..PulseConfig::default()
                };
                if let Some(eps) = &self.eps_list {
                    if let Some(e) = eps.iter().find(|e| !(0.0..=0.2).contains(*e)) {
                        return Err(bad("eps_list", format!("{e} is outside [0, 0.2]")));
                    }
                    c.eps = eps.clone();
                }
                if let Some(n) = self.single_fock_n()? {
                    c.fock_n = n;
                }
                c.fock_cutoff = self.fock_cutoff.unwrap_or(c.fock_cutoff.max(c.fock_n + 10));
                c.validate().map_err(|e| attribute(e, "fock_cutoff"))?;
                Plan::Pulse(c)
            }
            Experiment::Fock => {
                let mut c = FockConfig {
                    integrator,
                    channel: self.channel()?,
                    ..FockConfig::default()
                };
                if let Some(n) = &self.fock_n {
                    c.n_values = n.clone();
                }
                let top = c.n_values.iter().copied().max().unwrap_or(0);
                c.fock_cutoff = self.fock_cutoff.unwrap_or(c.fock_cutoff.max(top + 10));
                c.validate().map_err(|e| attribute(e, "fock_cutoff"))?;
                Plan::Fock(c)
            }
            Experiment::Rabi => {
                let mut c = RabiConfig {
                    integrator,
                    ..RabiConfig::default()
                };
                if let Some(r) = self.delta_omega_ratio {
                    if !(0.0..=0.1).contains(&r) {
                        return Err(bad("delta_omega_ratio", format!("{r} is outside [0, 0.1]")));
                    }
                    c.ratio = r;
                }
                if let Some(d) = self.single_delta()? {
                    c.delta = d;
                }
                if let Some(r) = self.omega_over_delta {
                    c.omega_ratio = positive("omega_over_delta", r)?;
                }
                if let Some(f) = self.fock_cutoff {
                    c.fock_cutoff = f;
                }
                c.validate().map_err(|e| attribute(e, "fock_cutoff"))?;
                Plan::Rabi(c)
            }
            Experiment::Thermal => {
                let channel = self.channel()?;
                let mut c = ThermalConfig {
                    integrator,
                    delta: channel.delta,
                    omega_ratio: channel.omega_ratio,
                    fock_cutoff: self.fock_cutoff,
                    analytic: self.mode == Some(Mode::Analytic),
                    ..ThermalConfig::default()
                };
                if let Some(nbar) = self.nbar {
                    c.nbar = non_negative("nbar", nbar)?;
                }
                if let Some(o) = &self.oracle {
                    c.oracles = o.clone();
                }
                c.validate().map_err(|e| attribute(e, "fock_cutoff"))?;
                Plan::Thermal(c)
            }
            Experiment::Dj => {
                let oracle = match self.oracle.as_deref() {
                    None => Oracle::F1,
                    Some([o]) => *o,
                    Some(_) => return Err(bad("oracle", "dj runs a single oracle")),
                };
                let channel = self.channel()?;
                let constraints = GateConstraints::with_delta(channel.delta, channel.omega_ratio);
                let cavity = match (self.nbar, self.single_fock_n()?) {
                    (Some(_), Some(_)) => return Err(bad("fock_n", "conflicts with nbar")),
                    (Some(nbar), None) => CavityInit::Thermal(non_negative("nbar", nbar)?),
                    (None, n) => CavityInit::Fock(n.unwrap_or(0)),
                };
                let cutoff = self
                    .fock_cutoff
                    .unwrap_or_else(|| PhysicalSettings::minimum_cutoff(cavity));
                let settings =
                    PhysicalSettings::new(cavity, cutoff, integrator).map_err(|e| attribute(e, "fock_cutoff"))?;
                let mode = match self.mode {
                    Some(Mode::Analytic) => ExecMode::Analytic,
                    _ => ExecMode::Physical(settings),
                };
                djsim_core::gates::oracle_schedule(oracle, &constraints).map_err(|e| attribute(e, "delta_over_g"))?;
                Plan::Dj {
                    oracle,
                    mode,
                    constraints,
                }
            }
            Experiment::GatesCheck => {
                let constraints = match self.single_delta()? {
                    Some(d) => GateConstraints::with_delta(d, self.omega_over_delta.unwrap_or(20.0)),
                    None => GateConstraints {
                        omega_over_delta_min: self.omega_over_delta.unwrap_or(20.0),
                        ..GateConstraints::default()
                    },
                };
                positive("omega_over_delta", constraints.omega_over_delta_min)?;
                djsim_core::gates::cnot_schedule(&constraints).map_err(|e| attribute(e, "delta_over_g"))?;
                let schedule = match &self.schedule {
                    None => None,
                    Some(p) => {
                        let text = std::fs::read_to_string(p)
                            .map_err(|e| bad("schedule", format!("cannot read {}: {e}", p.display())))?;
                        Some(Schedule::parse_text(&text).map_err(|e| bad("schedule", e.to_string()))?)
                    }
                };
                Plan::GatesCheck { schedule, constraints }
            }
        })
    }

    fn integrator(&self) -> Result<IntegratorSettings, CliError> {
        let mut s = experiment_integrator();
        if let Some(x) = self.steps_per_radian {
            if !(x >= 5.0) {
                return Err(bad("steps_per_radian", format!("must be at least 5, got {x}")));
            }
            s.steps_per_radian = x;
        }
        for (key, value, slot) in [
            ("unitarity_tol", self.unitarity_tol, &mut s.unitarity_tol),
            ("leakage_tol", self.leakage_tol, &mut s.leakage_tol),
        ] {
            if let Some(x) = value {
                if !(x > 0.0 && x <= 1e-2) {
                    return Err(bad(key, format!("must lie in (0, 1e-2], got {x}")));
                }
                *slot = x;
            }
        }
        Ok(s)
    }

    fn single_delta(&self) -> Result<Option<f64>, CliError> {
        match self.delta_over_g.as_deref() {
            None => Ok(None),
            Some([d]) => Ok(Some(positive("delta_over_g", *d)?)),
            Some(_) => Err(bad("delta_over_g", "this experiment takes a single detuning")),
        }
    }

    fn single_fock_n(&self) -> Result<Option<usize>, CliError> {
        match self.fock_n.as_deref() {
            None => Ok(None),
            Some([n]) => Ok(Some(*n)),
            Some(_) => Err(bad("fock_n", "this experiment takes a single Fock number")),
        }
    }

    fn channel(&self) -> Result<EprChannel, CliError> {
        let mut c = EprChannel::default();
        if let Some(d) = self.single_delta()? {
            c.delta = d;
        }
        match (self.omega_over_g, self.omega_over_delta) {
            (Some(_), Some(_)) => return Err(bad("omega_over_g", "conflicts with omega_over_delta")),
            (Some(w), None) => c.omega_ratio = positive("omega_over_g", w)? / c.delta,
            (None, Some(r)) => c.omega_ratio = positive("omega_over_delta", r)?,
            (None, None) => {}
        }
        if let Some(input) = self.epr_input {
            c.input = input;
        }
        Ok(c)
    }
}

fn positive(key: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 {
        Ok(x)
    } else {
        Err(bad(key, format!("must be positive, got {x}")))
    }
}

fn non_negative(key: &str, x: f64) -> Result<f64, CliError> {
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(bad(key, format!("must be non-negative, got {x}")))
    }
}

/// Names the config key a library validation error refers to.
fn attribute(e: djsim_core::Error, fallback: &str) -> CliError {
    let message = e.to_string();
    let key = KEYS.iter().find(|k| message.contains(*k)).copied().unwrap_or(fallback);
    CliError::config(key, message)
}

/// A validated run, ready to execute.
#[derive(Clone, Debug)]
pub enum Plan {
    Stark(StarkConfig),
    Pulse(PulseConfig),
    Fock(FockConfig),
    Rabi(RabiConfig),
    Thermal(ThermalConfig),
    Dj {
        oracle: Oracle,
        mode: ExecMode,
        constraints: GateConstraints,
    },
    GatesCheck {
        schedule: Option<Schedule>,
        constraints: GateConstraints,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# photon-number sweep
experiment = fock
fock_n = 0, 1, 2   # three points
delta_over_g = 20
omega_over_g = 400
fock_cutoff = 25
steps_per_radian = 60
out = fock.csv
";

    #[test]
    fn parse_serialize_parse_is_identity() {
        let cfg = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.fock_n, Some(vec![0, 1, 2]));
        assert_eq!(cfg.experiment, Some(Experiment::Fock));
        let text = cfg.to_text();
        assert_eq!(RunConfig::parse(&text).unwrap(), cfg);
        assert_eq!(RunConfig::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn full_config_round_trips() {
        let cfg = RunConfig {
            experiment: Some(Experiment::Thermal),
            delta_over_g: Some(vec![1.0, std::f64::consts::SQRT_2]),
            omega_over_g: Some(400.0),
            omega_over_delta: Some(20.0),
            fock_cutoff: Some(23),
            nbar: Some(0.5),
            fock_n: Some(vec![3]),
            eps_list: Some(vec![0.0, 0.1]),
            oracle: Some(vec![Oracle::F2, Oracle::F4]),
            mode: Some(Mode::Analytic),
            epr_input: Some(EprInput::Eg),
            delta_omega_ratio: Some(0.01),
            steps_per_radian: Some(40.0),
            unitarity_tol: Some(1e-7),
            leakage_tol: Some(1e-6),
            jobs: Some(4),
            out: Some("a.csv".into()),
            json: Some("a.json".into()),
            plot: Some("a.svg".into()),
            schedule: Some("s.txt".into()),
        };
        assert_eq!(RunConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    fn key_of(e: CliError) -> String {
        match e {
            CliError::Config { key, .. } => key,
            other => panic!("expected config error, got {other}"),
        }
    }

    #[test]
    fn errors_name_the_key() {
        assert_eq!(key_of(RunConfig::parse("bogus = 1").unwrap_err()), "bogus");
        assert_eq!(key_of(RunConfig::parse("nbar = x").unwrap_err()), "nbar");
        assert_eq!(key_of(RunConfig::parse("nbar = 1\nnbar = 2").unwrap_err()), "nbar");
        assert_eq!(key_of(RunConfig::parse("no equals sign").unwrap_err()), "line 1");
        let plan = |text: &str, e| RunConfig::parse(text).unwrap().plan(e).unwrap_err();
        assert_eq!(key_of(plan("eps_list = 0.3", Experiment::Pulse)), "eps_list");
        assert_eq!(key_of(plan("eps_list = 0.1", Experiment::Fock)), "eps_list");
        assert_eq!(
            key_of(plan("fock_cutoff = 12\nfock_n = 5", Experiment::Fock)),
            "fock_cutoff"
        );
        assert_eq!(key_of(plan("nbar = -1", Experiment::Thermal)), "nbar");
        assert_eq!(key_of(plan("fock_cutoff = 20", Experiment::Thermal)), "fock_cutoff");
        assert_eq!(
            key_of(plan("oracle = F3\ndelta_over_g = 1.4142", Experiment::Dj)),
            "delta_over_g"
        );
        assert_eq!(
            key_of(plan("steps_per_radian = 2", Experiment::Stark)),
            "steps_per_radian"
        );
        assert_eq!(key_of(plan("experiment = fock", Experiment::Stark)), "experiment");
        assert_eq!(
            key_of(plan("delta_omega_ratio = 0.5", Experiment::Rabi)),
            "delta_omega_ratio"
        );
        assert_eq!(key_of(plan("jobs = 0", Experiment::Rabi)), "jobs");
        assert_eq!(key_of(plan("oracle = F1, F2", Experiment::Dj)), "oracle");
    }

    #[test]
    fn defaults_follow_experiment() {
        match RunConfig::default().plan(Experiment::Fock).unwrap() {
            Plan::Fock(c) => {
                assert_eq!(c.n_values.len(), 11);
                assert_eq!(c.fock_cutoff, 25);
            }
            other => panic!("{other:?}"),
        }
        match RunConfig::parse("omega_over_g = 400\ndelta_over_g = 20")
            .unwrap()
            .plan(Experiment::Pulse)
            .unwrap()
        {
            Plan::Pulse(c) => assert_eq!(c.channel.omega_ratio, 20.0),
            other => panic!("{other:?}"),
        }
        match RunConfig::parse("nbar = 0.5\noracle = F3")
            .unwrap()
            .plan(Experiment::Dj)
            .unwrap()
        {
            Plan::Dj {
                oracle,
                mode: ExecMode::Physical(s),
                ..
            } => {
                assert_eq!(oracle, Oracle::F3);
                assert_eq!(s.fock_cutoff, 23);
            }
            other => panic!("{other:?}"),
        }
    }
}
