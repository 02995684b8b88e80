//! Flat key-value run configuration with dotted section names.
//!
//! The format is deliberately dependency-free and diff-friendly: one
//! `section.key = value` per line, `#` comments, unknown keys rejected.
//! Command-line overrides use the same `key=value` spelling.

use std::fmt::Write as _;

use rnds_core::diagnostics::HypersurfaceSpec;
use rnds_core::error::{Error, Result};
use rnds_core::fields::Profile;
use rnds_core::{Boundary, EvolutionConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Wave,
    Maxwell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialKind {
    Gaussian,
    Bump,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnapshotPolicy {
    None,
    Final,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    Parabola,
    Cone,
    Slice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    Time,
    Conformal,
}

#[derive(Debug, Clone)]
pub struct ScanRanges {
    pub m_min: f64,
    pub m_max: f64,
    pub m_steps: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub q_steps: usize,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mass: f64,
    pub charge: f64,
    pub lambda: f64,
    pub half_width: f64,
    pub n_points: usize,
    pub mode_l: u32,
    pub mode_n: i32,
    pub solver: Solver,
    pub dt_factor: f64,
    pub t_end: f64,
    pub record_every: usize,
    pub constraint_ceiling: f64,
    pub initial_kind: InitialKind,
    pub initial_center: f64,
    pub initial_width: f64,
    pub initial_amplitude: f64,
    pub output_path: Option<String>,
    pub snapshots: SnapshotPolicy,
    pub probes: Vec<f64>,
    pub scan: Option<ScanRanges>,
    pub flux_surface: SurfaceKind,
    pub flux_vector: FluxKind,
    pub flux_t0: Vec<f64>,
    /// Diagnostic knob: constant shift applied to the trapping term before
    /// the identity checks; nonzero values must make them fail.
    pub trap_offset: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            charge: 0.5,
            lambda: 0.01,
            half_width: 100.0,
            n_points: 4001,
            mode_l: 1,
            mode_n: 0,
            solver: Solver::Wave,
            dt_factor: 0.9,
            t_end: 50.0,
            record_every: 10,
            constraint_ceiling: 1e6,
            initial_kind: InitialKind::Gaussian,
            initial_center: 0.0,
            initial_width: 1.0,
            initial_amplitude: 1.0,
            output_path: None,
            snapshots: SnapshotPolicy::Final,
            probes: Vec::new(),
            scan: None,
            flux_surface: SurfaceKind::Parabola,
            flux_vector: FluxKind::Time,
            flux_t0: vec![5.0, 10.0, 20.0, 40.0],
            trap_offset: 0.0,
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: expected a number, got `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got `{value}`")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|item| {
            item.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: bad list entry `{item}`")))
        })
        .collect()
}

impl RunConfig {
    /// Applies one `section.key = value` assignment; unknown keys are
    /// rejected so typos never silently fall back to defaults.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        fn scan(this: &mut RunConfig) -> &mut ScanRanges {
            let (m, q) = (this.mass, this.charge);
            this.scan.get_or_insert_with(|| ScanRanges {
                m_min: m,
                m_max: m,
                m_steps: 1,
                q_min: q,
                q_max: q,
                q_steps: 1,
            })
        }
        match key {
            "params.m" => self.mass = parse_f64(key, value)?,
            "params.q" => self.charge = parse_f64(key, value)?,
            "params.lambda" => self.lambda = parse_f64(key, value)?,
            "grid.half_width" => self.half_width = parse_f64(key, value)?,
            "grid.n_points" => self.n_points = parse_usize(key, value)?,
            "mode.l" => {
                self.mode_l = value.parse::<u32>().map_err(|_| {
                    Error::Config(format!("{key}: expected an integer >= 0, got `{value}`"))
                })?
            }
            "mode.n" => {
                self.mode_n = value.parse::<i32>().map_err(|_| {
                    Error::Config(format!("{key}: expected an integer, got `{value}`"))
                })?
            }
            "evolution.solver" => {
                self.solver = match value {
                    "wave" => Solver::Wave,
                    "maxwell" => Solver::Maxwell,
                    _ => return Err(Error::Config(format!("{key}: `{value}` is not wave|maxwell"))),
                }
            }
            "evolution.dt_factor" => self.dt_factor = parse_f64(key, value)?,
            "evolution.t_end" => self.t_end = parse_f64(key, value)?,
            "evolution.record_every" => self.record_every = parse_usize(key, value)?,
            "evolution.boundary" => {
                if value != "outflow" {
                    return Err(Error::Config(format!(
                        "{key}: `{value}` is not a boundary treatment (only `outflow`)"
                    )));
                }
            }
            "evolution.constraint_ceiling" => self.constraint_ceiling = parse_f64(key, value)?,
            "initial.type" => {
                self.initial_kind = match value {
                    "gaussian" => InitialKind::Gaussian,
                    "bump" => InitialKind::Bump,
                    "zero" => InitialKind::Zero,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: `{value}` is not gaussian|bump|zero"
                        )))
                    }
                }
            }
            "initial.center" => self.initial_center = parse_f64(key, value)?,
            "initial.width" => self.initial_width = parse_f64(key, value)?,
            "initial.amplitude" => self.initial_amplitude = parse_f64(key, value)?,
            "output.path" => {
                self.output_path = if value.is_empty() { None } else { Some(value.to_string()) }
            }
            "output.format" => {
                if value != "csv" {
                    return Err(Error::Config(format!("{key}: only `csv` is supported")));
                }
            }
            "output.snapshots" => {
                self.snapshots = match value {
                    "none" => SnapshotPolicy::None,
                    "final" => SnapshotPolicy::Final,
                    "all" => SnapshotPolicy::All,
                    _ => {
                        return Err(Error::Config(format!("{key}: `{value}` is not none|final|all")))
                    }
                }
            }
            "probes.r_star" => self.probes = parse_list(key, value)?,
            "scan.m_min" => scan(self).m_min = parse_f64(key, value)?,
            "scan.m_max" => scan(self).m_max = parse_f64(key, value)?,
            "scan.m_steps" => scan(self).m_steps = parse_usize(key, value)?,
            "scan.q_min" => scan(self).q_min = parse_f64(key, value)?,
            "scan.q_max" => scan(self).q_max = parse_f64(key, value)?,
            "scan.q_steps" => scan(self).q_steps = parse_usize(key, value)?,
            "flux.surface" => {
                self.flux_surface = match value {
                    "parabola" => SurfaceKind::Parabola,
                    "cone" => SurfaceKind::Cone,
                    "slice" => SurfaceKind::Slice,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: `{value}` is not parabola|cone|slice"
                        )))
                    }
                }
            }
            "flux.vector" => {
                self.flux_vector = match value {
                    "t" => FluxKind::Time,
                    "k" => FluxKind::Conformal,
                    _ => return Err(Error::Config(format!("{key}: `{value}` is not t|k"))),
                }
            }
            "flux.t0_list" => self.flux_t0 = parse_list(key, value)?,
            "check.trap_offset" => self.trap_offset = parse_f64(key, value)?,
            _ => return Err(Error::Config(format!("unknown configuration key `{key}`"))),
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &str) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| Error::Config(format!("cannot read config `{path}`: {err}")))?;
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "{path}:{}: expected `key = value`, got `{line}`",
                    line_no + 1
                )));
            };
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn initial_profile(&self) -> Profile {
        match self.initial_kind {
            InitialKind::Zero => Profile::Zero,
            InitialKind::Gaussian => Profile::Gaussian {
                center: self.initial_center,
                width: self.initial_width,
                amplitude: self.initial_amplitude,
            },
            InitialKind::Bump => Profile::Bump {
                center: self.initial_center,
                half_width: self.initial_width,
                amplitude: self.initial_amplitude,
            },
        }
    }

    pub fn evolution_config(&self) -> EvolutionConfig {
        EvolutionConfig {
            dt_factor: self.dt_factor,
            t_end: self.t_end,
            record_every: self.record_every,
            boundary: Boundary::Outflow,
            constraint_ceiling: self.constraint_ceiling,
            probes: self.probes.clone(),
        }
    }

    pub fn surfaces(&self) -> Vec<HypersurfaceSpec> {
        self.flux_t0
            .iter()
            .map(|&t0| match self.flux_surface {
                SurfaceKind::Parabola => HypersurfaceSpec::Parabola { t0 },
                SurfaceKind::Cone => HypersurfaceSpec::Cone { t0 },
                SurfaceKind::Slice => HypersurfaceSpec::Slice { t0 },
            })
            .collect()
    }

    /// Canonical rendering of the effective configuration, for reports.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "params.m = {}", self.mass);
        let _ = writeln!(out, "params.q = {}", self.charge);
        let _ = writeln!(out, "params.lambda = {}", self.lambda);
        let _ = writeln!(out, "grid.half_width = {}", self.half_width);
        let _ = writeln!(out, "grid.n_points = {}", self.n_points);
        let _ = writeln!(out, "mode.l = {}", self.mode_l);
        let _ = writeln!(out, "mode.n = {}", self.mode_n);
        out
    }
}
