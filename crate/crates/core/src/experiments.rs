//! Fidelity sweeps: Stark-shift error, pulse imperfection, initial Fock
//! number, Rabi-frequency fluctuation and thermal-field Deutsch-Jozsa.
//!
//! Every point is an independent job. Points run on an optional worker pool
//! and are reported in ascending parameter order, so output never depends on
//! scheduling.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::djrunner::{initial_atomic, run_dj_on, DJResult};
use crate::error::{Error, Result};
use crate::gates::{epr_schedule, execute, CavityInit, ExecMode, Oracle, PhysicalSettings, PulseStep, Schedule};
use crate::model::{u_interaction_analytic, GateConstraints, GateTarget, GateTiming, Params};
use crate::propagator::{EvolutionStats, IntegratorSettings};
use crate::qcore::{fidelity_pure, MixtureState, Space, StateVector};

/// Step density used by the sweeps. Norm drift falls as the fifth power of
/// this; 60 keeps the Ω = 400g runs near 1e-7.
pub const EXPERIMENT_STEPS_PER_RADIAN: f64 = 60.0;

pub fn experiment_integrator() -> IntegratorSettings {
    IntegratorSettings {
        steps_per_radian: EXPERIMENT_STEPS_PER_RADIAN,
        ..IntegratorSettings::default()
    }
}

/// One sweep point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityRecord {
    pub experiment: String,
    pub param_name: String,
    pub param_value: f64,
    pub fidelity: f64,
    pub fock_cutoff: usize,
    pub steps: usize,
    pub norm_drift: f64,
    pub leakage: f64,
}

impl FidelityRecord {
    fn new(
        experiment: &str,
        param_name: &str,
        param_value: f64,
        fidelity: f64,
        fock_cutoff: usize,
        stats: EvolutionStats,
    ) -> Self {
        FidelityRecord {
            experiment: experiment.to_string(),
            param_name: param_name.to_string(),
            param_value,
            fidelity: fidelity.clamp(0.0, 1.0),
            fock_cutoff,
            steps: stats.steps,
            norm_drift: stats.norm_drift,
            leakage: stats.leakage,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub param_name: String,
    pub records: Vec<FidelityRecord>,
    /// Scalar results that are not sweep points.
    pub summary: BTreeMap<String, f64>,
}

pub const CSV_HEADER: &str = "experiment,param_name,param_value,fidelity,fock_cutoff,steps,norm_drift";

impl Report {
    fn new(experiment: &str, param_name: &str, mut records: Vec<FidelityRecord>) -> Report {
        records.sort_by(|a, b| a.param_value.total_cmp(&b.param_value));
        Report {
            experiment: experiment.to_string(),
            param_name: param_name.to_string(),
            records,
            summary: BTreeMap::new(),
        }
    }

    pub fn fidelity_at(&self, param_value: f64) -> Option<f64> {
        self.records
            .iter()
            .find(|r| (r.param_value - param_value).abs() <= 1e-12 * param_value.abs().max(1.0))
            .map(|r| r.fidelity)
    }

    pub fn max_norm_drift(&self) -> f64 {
        self.records.iter().map(|r| r.norm_drift).fold(0.0, f64::max)
    }

    pub fn max_leakage(&self) -> f64 {
        self.records.iter().map(|r| r.leakage).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.experiment,
                r.param_name,
                format_sig(r.param_value, 12),
                format_sig(r.fidelity, 12),
                r.fock_cutoff,
                r.steps,
                format_sig(r.norm_drift, 12)
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are plain data")
    }

    /// Fidelity against the swept parameter as a standalone SVG document.
    pub fn to_svg(&self) -> String {
        let (w, h, m) = (640.0, 400.0, 60.0);
        let xs: Vec<f64> = self.records.iter().map(|r| r.param_value).collect();
        let ys: Vec<f64> = self.records.iter().map(|r| r.fidelity).collect();
        let (x0, x1) = span(&xs);
        let (y0, y1) = span(&ys);
        let px = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
        let py = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            w / 2.0,
            escape(&self.experiment)
        );
        let _ = writeln!(
            s,
            r#"<path d="M{m} {m} V{b} H{r}" fill="none" stroke="black"/>"#,
            b = h - m,
            r = w - m
        );
        for (x, anchor) in [(x0, "start"), (x1, "end")] {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
                px(x),
                h - m + 16.0,
                format_sig(x, 4)
            );
        }
        for y in [y0, y1] {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
                m - 6.0,
                py(y) + 4.0,
                format_sig(y, 6)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            w / 2.0,
            h - 18.0,
            escape(&self.param_name)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">fidelity</text>"#,
            h / 2.0,
            h / 2.0
        );
        let points: Vec<String> = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
            points.join(" ")
        );
        for (&x, &y) in xs.iter().zip(&ys) {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#,
                px(x),
                py(y)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn span(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Plain decimal notation with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).clamp(0, 40) as usize;
    let text = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.99.. -> 10.0).
    let rounded: f64 = text.parse().unwrap_or(x);
    if rounded != 0.0 && rounded.abs().log10().floor() as i64 > magnitude && decimals > 0 {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    text
}

/// Runs `f` over `points` on `jobs` workers, keeping input order.
fn run_points<P, T, F>(points: &[P], jobs: usize, f: F) -> Result<Vec<T>>
where
    P: Sync,
    T: Send,
    F: Fn(&P) -> Result<T> + Sync,
{
    if jobs <= 1 {
        return points.iter().map(&f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| points.par_iter().map(&f).collect())
}

fn at_point(experiment: &str, param_name: &str, param_value: f64) -> impl Fn(Error) -> Error {
    let (experiment, param_name) = (experiment.to_string(), param_name.to_string());
    move |source| Error::AtPoint {
        experiment: experiment.clone(),
        param_name: param_name.clone(),
        param_value,
        source: Box::new(source),
    }
}

/// Atomic input of the EPR channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EprInput {
    /// `|gg⟩ → (|gg⟩ − i|ee⟩)/√2`.
    Gg,
    /// `|eg⟩ → (|eg⟩ − i|ge⟩)/√2`.
    Eg,
}

impl EprInput {
    pub fn atomic(self) -> [C64; 4] {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[match self {
            EprInput::Gg => 0,
            EprInput::Eg => 2,
        }] = C64::new(1.0, 0.0);
        v
    }
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {x}")))
    }
}

/// Runs one interaction physically from `atomic ⊗ |n⟩` and compares with
/// `target_atomic ⊗ |n⟩`.
fn propagate_and_compare(
    schedule: &Schedule,
    atomic: &[C64; 4],
    target_atomic: &[C64; 4],
    settings: &PhysicalSettings,
) -> Result<(f64, EvolutionStats)> {
    let n = match settings.cavity_init {
        CavityInit::Fock(n) => n,
        CavityInit::Thermal(_) => {
            return Err(Error::InvalidArgument(
                "fidelity sweeps take a Fock cavity input".into(),
            ))
        }
    };
    let space = Space::new(settings.fock_cutoff)?;
    let input = StateVector::with_fock(space, atomic, n)?;
    let target = StateVector::with_fock(space, target_atomic, n)?;
    let run = execute(schedule, &input, &ExecMode::Physical(*settings))?;
    Ok((fidelity_pure(&target, &run.output)?, run.stats))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StarkConfig {
    pub delta_over_g: Vec<f64>,
    pub omega_ratio: f64,
    pub fock_cutoff: usize,
    pub integrator: IntegratorSettings,
}

impl Default for StarkConfig {
    fn default() -> Self {
        let mut grid: Vec<f64> = (0..=10).map(|k| 1.0 + 0.2 * k as f64).collect();
        grid.push(SQRT_2);
        StarkConfig {
            delta_over_g: grid,
            omega_ratio: 20.0,
            fock_cutoff: 30,
            integrator: experiment_integrator(),
        }
    }
}

impl StarkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.delta_over_g.is_empty() {
            return Err(Error::InvalidArgument("delta_over_g is empty".into()));
        }
        for &d in &self.delta_over_g {
            check_positive("delta_over_g", d)?;
        }
        check_positive("omega_ratio", self.omega_ratio)?;
        PhysicalSettings::new(CavityInit::Fock(0), self.fock_cutoff, self.integrator)?;
        Ok(())
    }
}

/// Error of the effective model at one detuning: a single period of the full
/// Hamiltonian from `|e,g⟩|0⟩`, compared with the effective-model prediction.
pub fn stark_point(
    delta: f64,
    omega_ratio: f64,
    fock_cutoff: usize,
    integrator: &IntegratorSettings,
) -> Result<FidelityRecord> {
    let params = Params::unit_coupling(delta, omega_ratio * delta)?;
    let timing = GateTiming::from_periods(&params, 1)?;
    let schedule = Schedule::new(vec![PulseStep::Interaction { params, timing }]);
    let settings = PhysicalSettings::new(CavityInit::Fock(0), fock_cutoff, *integrator)?;
    let input = EprInput::Eg.atomic();
    let target = u_interaction_analytic(&params, timing.t)?.apply(&input);
    let (f, stats) = propagate_and_compare(&schedule, &input, &target, &settings)?;
    Ok(FidelityRecord::new(
        "stark",
        "delta_over_g",
        delta,
        f,
        fock_cutoff,
        stats,
    ))
}

pub fn stark_sweep(cfg: &StarkConfig, jobs: usize) -> Result<Report> {
    cfg.validate()?;
    let records = run_points(&cfg.delta_over_g, jobs, |&d| {
        stark_point(d, cfg.omega_ratio, cfg.fock_cutoff, &cfg.integrator).map_err(at_point("stark", "delta_over_g", d))
    })?;
    Ok(Report::new("stark", "delta_over_g", records))
}

/// Shared settings of the EPR-generation sweeps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EprChannel {
    pub delta: f64,
    pub omega_ratio: f64,
    pub input: EprInput,
}

impl Default for EprChannel {
    fn default() -> Self {
        EprChannel {
            delta: 20.0,
            omega_ratio: 20.0,
            input: EprInput::Gg,
        }
    }
}

impl EprChannel {
    fn validate(&self) -> Result<()> {
        check_positive("delta_over_g", self.delta)?;
        check_positive("omega_ratio", self.omega_ratio)
    }

    pub fn schedule(&self) -> Result<Schedule> {
        epr_schedule(&GateConstraints::with_delta(self.delta, self.omega_ratio))
    }

    fn target(&self) -> [C64; 4] {
        GateTarget::EprQuarter.target_matrix().apply(&self.input.atomic())
    }

    fn fidelity(&self, settings: &PhysicalSettings) -> Result<(f64, EvolutionStats)> {
        propagate_and_compare(&self.schedule()?, &self.input.atomic(), &self.target(), settings)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PulseConfig {
    pub eps: Vec<f64>,
    pub fock_n: usize,
    pub fock_cutoff: usize,
    pub channel: EprChannel,
    pub integrator: IntegratorSettings,
}

impl Default for PulseConfig {
    fn default() -> Self {
        PulseConfig {
            eps: vec![0.0, 0.03, 0.05, 0.1, 0.15, 0.2],
            fock_n: 5,
            fock_cutoff: 20,
            channel: EprChannel::default(),
            integrator: experiment_integrator(),
        }
    }
}

impl PulseConfig {
    pub fn validate(&self) -> Result<()> {
        if self.eps.is_empty() {
            return Err(Error::InvalidArgument("eps_list is empty".into()));
        }
        if let Some(e) = self.eps.iter().find(|e| !(0.0..=0.2).contains(*e)) {
            return Err(Error::InvalidArgument(format!("pulse error {e} outside [0, 0.2]")));
        }
        self.channel.validate()?;
        PhysicalSettings::new(CavityInit::Fock(self.fock_n), self.fock_cutoff, self.integrator)?;
        Ok(())
    }
}

/// EPR generation with every interaction lasting `t(1 + ε)`.
pub fn pulse_error_sweep(cfg: &PulseConfig, jobs: usize) -> Result<Report> {
    cfg.validate()?;
    let records = run_points(&cfg.eps, jobs, |&eps| {
        (|| {
            let settings = PhysicalSettings::new(CavityInit::Fock(cfg.fock_n), cfg.fock_cutoff, cfg.integrator)?
                .with_pulse_error(eps)?;
            let (f, stats) = cfg.channel.fidelity(&settings)?;
            Ok(FidelityRecord::new("pulse", "eps", eps, f, cfg.fock_cutoff, stats))
        })()
        .map_err(at_point("pulse", "eps", eps))
    })?;
    Ok(Report::new("pulse", "eps", records))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockConfig {
    pub n_values: Vec<usize>,
    pub fock_cutoff: usize,
    pub channel: EprChannel,
    pub integrator: IntegratorSettings,
}

impl Default for FockConfig {
    fn default() -> Self {
        FockConfig {
            n_values: (0..=10).collect(),
            fock_cutoff: 25,
            channel: EprChannel::default(),
            integrator: experiment_integrator(),
        }
    }
}

impl FockConfig {
    pub fn validate(&self) -> Result<()> {
        let top = self
            .n_values
            .iter()
            .copied()
            .max()
            .ok_or_else(|| Error::InvalidArgument("fock_n list is empty".into()))?;
        self.channel.validate()?;
        PhysicalSettings::new(CavityInit::Fock(top), self.fock_cutoff, self.integrator)?;
        Ok(())
    }
}

/// EPR generation with the cavity initially in `|n⟩`.
pub fn fock_sweep(cfg: &FockConfig, jobs: usize) -> Result<Report> {
    cfg.validate()?;
    let records = run_points(&cfg.n_values, jobs, |&n| {
        (|| {
            let settings = PhysicalSettings::new(CavityInit::Fock(n), cfg.fock_cutoff, cfg.integrator)?;
            let (f, stats) = cfg.channel.fidelity(&settings)?;
            Ok(FidelityRecord::new("fock", "n", n as f64, f, cfg.fock_cutoff, stats))
        })()
        .map_err(at_point("fock", "n", n as f64))
    })?;
    Ok(Report::new("fock", "n", records))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RabiConfig {
    /// ΔΩ/Ω.
    pub ratio: f64,
    pub delta: f64,
    pub omega_ratio: f64,
    pub fock_cutoff: usize,
    pub integrator: IntegratorSettings,
}

impl Default for RabiConfig {
    fn default() -> Self {
        RabiConfig {
            ratio: 0.01,
            delta: SQRT_2,
            omega_ratio: 20.0,
            fock_cutoff: 30,
            integrator: experiment_integrator(),
        }
    }
}

impl RabiConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=0.1).contains(&self.ratio) {
            return Err(Error::InvalidArgument(format!(
                "delta_omega_ratio must lie in [0, 0.1], got {}",
                self.ratio
            )));
        }
        check_positive("delta_over_g", self.delta)?;
        check_positive("omega_ratio", self.omega_ratio)?;
        PhysicalSettings::new(CavityInit::Fock(0), self.fock_cutoff, self.integrator)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RabiOutcome {
    /// Fidelity with the nominal effective-model prediction at Ω.
    pub f_nominal: f64,
    /// Same target, drive at Ω(1 + ratio).
    pub f_perturbed: f64,
    pub drop: f64,
    /// Perturbed run against the effective-model prediction at Ω(1 + ratio).
    pub f_perturbed_own_target: f64,
    pub stats: EvolutionStats,
}

/// Sensitivity to a miscalibrated Rabi frequency at the Stark-sweep settings.
pub fn rabi_fluctuation(cfg: &RabiConfig) -> Result<RabiOutcome> {
    cfg.validate()?;
    let params = Params::unit_coupling(cfg.delta, cfg.omega_ratio * cfg.delta)?;
    let timing = GateTiming::from_periods(&params, 1)?;
    let schedule = Schedule::new(vec![PulseStep::Interaction { params, timing }]);
    let input = EprInput::Eg.atomic();
    let nominal_target = u_interaction_analytic(&params, timing.t)?.apply(&input);
    let base = PhysicalSettings::new(CavityInit::Fock(0), cfg.fock_cutoff, cfg.integrator)?;

    let (f_nominal, s0) = propagate_and_compare(&schedule, &input, &nominal_target, &base)?;
    let jittered = base.with_omega_jitter(cfg.ratio)?;
    let (f_perturbed, s1) = propagate_and_compare(&schedule, &input, &nominal_target, &jittered)?;
    let own = u_interaction_analytic(&params.with_omega(params.omega() * (1.0 + cfg.ratio))?, timing.t)?.apply(&input);
    let (f_own, _) = propagate_and_compare(&schedule, &input, &own, &jittered)?;
    Ok(RabiOutcome {
        f_nominal,
        f_perturbed,
        drop: f_nominal - f_perturbed,
        f_perturbed_own_target: f_own,
        stats: s0.then(s1),
    })
}

/// [`rabi_fluctuation`] as a two-point report (ratio 0 and the configured ratio).
pub fn rabi_report(cfg: &RabiConfig) -> Result<Report> {
    let out = rabi_fluctuation(cfg).map_err(at_point("rabi", "delta_omega_ratio", cfg.ratio))?;
    let half = EvolutionStats {
        steps: out.stats.steps / 2,
        norm_drift: out.stats.norm_drift,
        leakage: out.stats.leakage,
    };
    let mut records = vec![FidelityRecord::new(
        "rabi",
        "delta_omega_ratio",
        0.0,
        out.f_nominal,
        cfg.fock_cutoff,
        half,
    )];
    if cfg.ratio > 0.0 {
        records.push(FidelityRecord::new(
            "rabi",
            "delta_omega_ratio",
            cfg.ratio,
            out.f_perturbed,
            cfg.fock_cutoff,
            half,
        ));
    }
    let mut report = Report::new("rabi", "delta_omega_ratio", records);
    report.summary.insert("drop".into(), out.drop);
    report
        .summary
        .insert("f_perturbed_own_target".into(), out.f_perturbed_own_target);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThermalConfig {
    pub nbar: f64,
    pub oracles: Vec<Oracle>,
    pub delta: f64,
    pub omega_ratio: f64,
    /// `None` picks the smallest admissible cutoff for `nbar`.
    pub fock_cutoff: Option<usize>,
    pub analytic: bool,
    pub integrator: IntegratorSettings,
}

impl Default for ThermalConfig {
    fn default() -> Self {
        ThermalConfig {
            nbar: 0.5,
            oracles: Oracle::ALL.to_vec(),
            delta: 20.0,
            omega_ratio: 20.0,
            fock_cutoff: None,
            analytic: false,
            integrator: experiment_integrator(),
        }
    }
}

impl ThermalConfig {
    pub fn cutoff(&self) -> usize {
        self.fock_cutoff
            .unwrap_or_else(|| PhysicalSettings::minimum_cutoff(CavityInit::Thermal(self.nbar)))
    }

    pub fn constraints(&self) -> GateConstraints {
        GateConstraints::with_delta(self.delta, self.omega_ratio)
    }

    pub fn settings(&self) -> Result<PhysicalSettings> {
        PhysicalSettings::new(CavityInit::Thermal(self.nbar), self.cutoff(), self.integrator)
    }

    pub fn validate(&self) -> Result<()> {
        if self.oracles.is_empty() {
            return Err(Error::InvalidArgument("oracle list is empty".into()));
        }
        check_positive("delta_over_g", self.delta)?;
        check_positive("omega_ratio", self.omega_ratio)?;
        self.settings()?;
        Ok(())
    }
}

/// Deutsch-Jozsa on a thermal cavity, one result per oracle.
pub fn thermal_dj_runs(cfg: &ThermalConfig, jobs: usize) -> Result<Vec<DJResult>> {
    cfg.validate()?;
    let settings = cfg.settings()?;
    let constraints = cfg.constraints();
    let mode = if cfg.analytic {
        ExecMode::Analytic
    } else {
        ExecMode::Physical(settings)
    };
    let input = MixtureState::thermal(
        Space::new(settings.fock_cutoff)?,
        &initial_atomic(),
        cfg.nbar,
        settings.thermal_levels(),
    )?;
    run_points(&cfg.oracles, jobs, |&oracle| {
        run_dj_on(oracle, &input, &mode, &constraints).map_err(at_point("thermal", "oracle", oracle.index() as f64))
    })
}

/// Classification-correct probability per oracle (parameter 1..4).
pub fn thermal_dj(cfg: &ThermalConfig, jobs: usize) -> Result<Report> {
    let runs = thermal_dj_runs(cfg, jobs)?;
    let records = runs
        .iter()
        .map(|r| {
            FidelityRecord::new(
                "thermal",
                "oracle",
                r.oracle.index() as f64,
                r.p_correct(),
                cfg.cutoff(),
                r.stats,
            )
        })
        .collect();
    let mut report = Report::new("thermal", "oracle", records);
    report.summary.insert("nbar".into(), cfg.nbar);
    Ok(report)
}
