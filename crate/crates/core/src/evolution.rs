//! Time evolution of the per-mode states on the r* grid.
//!
//! The scalar wave mode advances by leapfrog in kick-drift-kick form, the
//! first-order Maxwell system by method-of-lines RK4 with centered spatial
//! derivatives. Both use Sommerfeld outflow at the grid edges: the potential
//! vanishes exponentially towards the horizons, so free waves there are
//! exactly characteristic and the outflow closure is non-reflecting to
//! scheme order. Runs whose identities must hold to quadrature accuracy
//! should instead size the grid so the support stays causally separated
//! from the edges.
//!
//! The middle Maxwell component is advanced with the average of its two
//! transport equations; the residual half-difference
//!
//! ```text
//! C = ∂_{r*}Ψ₀ - ½(c_minus Ψ₁ + c_prime Ψ₋₁)
//! ```
//!
//! vanishes for exact solutions and is monitored at every record as the
//! constraint norm.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::diagnostics;
use crate::error::{Error, Result};
use crate::fields::{Grid, MaxwellModeState, WaveModeState};
use crate::harmonics::{coupling_constants, ModeIndex};

/// Boundary treatment. Outflow is the only implemented option; causal
/// separation is achieved by grid sizing, not by a boundary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Outflow,
}

#[derive(Debug, Clone)]
pub struct EvolutionConfig {
    /// Courant fraction in (0, 1]; dt = dt_factor * h.
    pub dt_factor: f64,
    pub t_end: f64,
    /// Steps between recorded snapshots; the run length is rounded up to a
    /// whole number of record intervals.
    pub record_every: usize,
    pub boundary: Boundary,
    /// Abort threshold for the grid-L² constraint norm (Maxwell only).
    pub constraint_ceiling: f64,
    /// r* positions sampled every step (snapped to the nearest node).
    pub probes: Vec<f64>,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            dt_factor: 0.9,
            t_end: 10.0,
            record_every: 10,
            boundary: Boundary::Outflow,
            constraint_ceiling: 1e6,
            probes: Vec::new(),
        }
    }
}

impl EvolutionConfig {
    fn validate(&self, grid: &Grid) -> Result<f64> {
        let dt = cfl_dt(grid, self.dt_factor)?;
        if !(self.t_end > 0.0) {
            return Err(Error::Config(format!("t_end = {} must be positive", self.t_end)));
        }
        if self.record_every == 0 {
            return Err(Error::Config("record_every must be at least 1".into()));
        }
        if !(self.constraint_ceiling > 0.0) {
            return Err(Error::Config("constraint ceiling must be positive".into()));
        }
        for &p in &self.probes {
            if p.abs() > grid.half_width() {
                return Err(Error::Config(format!("probe at r* = {p} outside the grid")));
            }
        }
        Ok(dt)
    }

    fn step_count(&self, dt: f64) -> usize {
        let intervals = (self.t_end / (dt * self.record_every as f64) - 1e-9).ceil().max(1.0);
        intervals as usize * self.record_every
    }
}

/// dt = dt_factor * h with the Courant fraction restricted to (0, 1].
pub fn cfl_dt(grid: &Grid, dt_factor: f64) -> Result<f64> {
    if !(dt_factor > 0.0 && dt_factor <= 1.0) {
        return Err(Error::Config(format!(
            "dt_factor = {dt_factor} outside (0, 1]; the explicit schemes need dt <= h"
        )));
    }
    Ok(dt_factor * grid.spacing())
}

/// One diagnostic row: every functional the identity checks consume.
/// Fields that do not apply to a run type are zero (wave runs have no
/// Maxwell energies; Maxwell runs report the wave functionals of Ψ₀ with
/// ∂ₜΨ₀ reconstructed from the transport equations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRecord {
    pub time: f64,
    pub energy: f64,
    pub conformal_charge: f64,
    pub local_energy: f64,
    pub maxwell_energy: f64,
    pub conformal_energy: f64,
    /// Instantaneous trapping density integral ∫ 2tV𝒯 * (angular weight) dr*.
    pub trapping_density: f64,
    pub constraint_norm: f64,
}

/// Per-step samples of the pointwise amplitude at fixed r* positions.
#[derive(Debug, Clone, Default)]
pub struct ProbeSeries {
    pub positions: Vec<f64>,
    pub times: Vec<f64>,
    /// values[p][k] is the amplitude at probe p and step k.
    pub values: Vec<Vec<f64>>,
}

impl ProbeSeries {
    fn new(grid: &Grid, positions: &[f64]) -> (Self, Vec<usize>) {
        let nodes: Vec<usize> = positions.iter().map(|&p| grid.nearest_node(p)).collect();
        let snapped: Vec<f64> = nodes.iter().map(|&i| grid.r_star()[i]).collect();
        (
            Self {
                positions: snapped,
                times: Vec::new(),
                values: vec![Vec::new(); nodes.len()],
            },
            nodes,
        )
    }

    /// Series of (t, value) pairs for one probe.
    pub fn series(&self, probe: usize) -> Vec<(f64, f64)> {
        self.times
            .iter()
            .copied()
            .zip(self.values[probe].iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct WaveTrajectory {
    pub mode: ModeIndex,
    pub grid: Grid,
    pub states: Vec<WaveModeState>,
    pub records: Vec<EnergyRecord>,
    /// Trapezoid-in-time quadrature of the trapping density over the records.
    pub trapping_integral: f64,
    pub probes: ProbeSeries,
}

#[derive(Debug, Clone)]
pub struct MaxwellTrajectory {
    pub mode: ModeIndex,
    pub grid: Grid,
    pub states: Vec<MaxwellModeState>,
    pub records: Vec<EnergyRecord>,
    pub trapping_integral: f64,
    pub probes: ProbeSeries,
}

fn trapezoid_over_records(records: &[EnergyRecord]) -> f64 {
    records
        .windows(2)
        .map(|w| 0.5 * (w[0].trapping_density + w[1].trapping_density) * (w[1].time - w[0].time))
        .sum()
}

fn wave_record(state: &WaveModeState, grid: &Grid) -> EnergyRecord {
    EnergyRecord {
        time: state.time,
        energy: diagnostics::wave_energy(state, grid),
        conformal_charge: diagnostics::conformal_charge(state, grid),
        local_energy: if state.time > 0.0 {
            diagnostics::local_energy(state, grid).expect("t > 0")
        } else {
            0.0
        },
        maxwell_energy: 0.0,
        conformal_energy: 0.0,
        trapping_density: diagnostics::wave_trapping_density(state, grid),
        constraint_norm: 0.0,
    }
}

fn maxwell_record(state: &MaxwellModeState, grid: &Grid) -> EnergyRecord {
    let middle = diagnostics::middle_component_wave_state(state);
    EnergyRecord {
        time: state.time,
        energy: diagnostics::wave_energy(&middle, grid),
        conformal_charge: diagnostics::conformal_charge(&middle, grid),
        local_energy: if state.time > 0.0 {
            diagnostics::local_energy(&middle, grid).expect("t > 0")
        } else {
            0.0
        },
        maxwell_energy: diagnostics::maxwell_energy(state, grid),
        conformal_energy: diagnostics::conformal_energy(state, grid),
        trapping_density: diagnostics::maxwell_trapping_density(state, grid),
        constraint_norm: diagnostics::constraint_norm(state, grid).expect("valid mode"),
    }
}

impl WaveTrajectory {
    /// Rebuilds the diagnostic records from externally assembled states,
    /// e.g. synthetic data or Lie-derived fields.
    pub fn from_states(grid: Grid, states: Vec<WaveModeState>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InsufficientData("no states supplied".into()));
        }
        for s in &states {
            if s.u.len() != grid.n_points() || s.u_t.len() != grid.n_points() {
                return Err(Error::Config("state length does not match the grid".into()));
            }
        }
        if states.windows(2).any(|w| w[1].time <= w[0].time) {
            return Err(Error::Config("state times must increase strictly".into()));
        }
        let mode = states[0].mode;
        let records: Vec<EnergyRecord> = states.iter().map(|s| wave_record(s, &grid)).collect();
        let trapping_integral = trapezoid_over_records(&records);
        Ok(Self {
            mode,
            grid,
            states,
            records,
            trapping_integral,
            probes: ProbeSeries::default(),
        })
    }
}

impl MaxwellTrajectory {
    pub fn from_states(grid: Grid, states: Vec<MaxwellModeState>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InsufficientData("no states supplied".into()));
        }
        for s in &states {
            if s.psi_plus.len() != grid.n_points()
                || s.psi_zero.len() != grid.n_points()
                || s.psi_minus.len() != grid.n_points()
            {
                return Err(Error::Config("state length does not match the grid".into()));
            }
        }
        if states.windows(2).any(|w| w[1].time <= w[0].time) {
            return Err(Error::Config("state times must increase strictly".into()));
        }
        let mode = states[0].mode;
        let records: Vec<EnergyRecord> = states.iter().map(|s| maxwell_record(s, &grid)).collect();
        let trapping_integral = trapezoid_over_records(&records);
        Ok(Self {
            mode,
            grid,
            states,
            records,
            trapping_integral,
            probes: ProbeSeries::default(),
        })
    }
}

fn check_support_separation(arrays: &[&[Complex64]], n: usize) -> Result<()> {
    let margin = n / 10;
    for values in arrays {
        for (i, z) in values.iter().enumerate() {
            if (i < margin || i >= n - margin) && z.norm() > 1e-12 {
                return Err(Error::Config(format!(
                    "initial support reaches the outer 10% of the grid (node {i}); \
                     enlarge the window or narrow the data"
                )));
            }
        }
    }
    Ok(())
}

fn scan_finite(values: &[Complex64], step: usize, time: f64) -> Result<()> {
    for z in values {
        // norm_sqr catches both non-finite components and magnitudes whose
        // energies overflow.
        if !z.norm_sqr().is_finite() {
            return Err(Error::Instability { step, time });
        }
    }
    Ok(())
}

/// Leapfrog (kick-drift-kick) evolution of one wave mode.
pub fn evolve_wave(
    state: &WaveModeState,
    grid: &Grid,
    config: &EvolutionConfig,
) -> Result<WaveTrajectory> {
    let dt = config.validate(grid)?;
    let n = grid.n_points();
    if state.u.len() != n || state.u_t.len() != n {
        return Err(Error::Config("initial state does not match the grid".into()));
    }
    check_support_separation(&[&state.u, &state.u_t], n)?;
    let weight = crate::harmonics::angular_gradient_weight(state.mode.l());
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let steps = config.step_count(dt);
    let (mut probes, probe_nodes) = ProbeSeries::new(grid, &config.probes);

    let mut u = state.u.clone();
    let mut v = state.u_t.clone();
    let mut acc = vec![Complex64::default(); n];
    let mut acc_next = vec![Complex64::default(); n];
    let potential = grid.potential();

    let accel = |u: &[Complex64], acc: &mut [Complex64]| {
        for i in 1..n - 1 {
            acc[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 - weight * potential[i] * u[i];
        }
        acc[0] = Complex64::default();
        acc[n - 1] = Complex64::default();
    };
    accel(&u, &mut acc);

    let mut states = Vec::new();
    let mut records = Vec::new();
    let record = |u: &[Complex64], v: &[Complex64], time: f64,
                      states: &mut Vec<WaveModeState>,
                      records: &mut Vec<EnergyRecord>| {
        let snapshot = WaveModeState {
            mode: state.mode,
            time,
            u: u.to_vec(),
            u_t: v.to_vec(),
        };
        records.push(wave_record(&snapshot, grid));
        states.push(snapshot);
    };
    record(&u, &v, 0.0, &mut states, &mut records);
    let sample_probes = |u: &[Complex64], time: f64, probes: &mut ProbeSeries| {
        if !probe_nodes.is_empty() {
            probes.times.push(time);
            for (p, &node) in probe_nodes.iter().enumerate() {
                probes.values[p].push(u[node].norm());
            }
        }
    };
    sample_probes(&u, 0.0, &mut probes);

    // Mur-style discrete Sommerfeld closure, second-order accurate for the
    // outgoing characteristic.
    let mur = (dt - h) / (dt + h);

    let mut u_next = vec![Complex64::default(); n];
    for step in 1..=steps {
        let time = step as f64 * dt;
        for i in 1..n - 1 {
            u_next[i] = u[i] + dt * v[i] + 0.5 * dt * dt * acc[i];
        }
        u_next[0] = u[1] + mur * (u_next[1] - u[0]);
        u_next[n - 1] = u[n - 2] + mur * (u_next[n - 2] - u[n - 1]);
        accel(&u_next, &mut acc_next);
        for i in 1..n - 1 {
            v[i] += 0.5 * dt * (acc[i] + acc_next[i]);
        }
        // Outgoing edges: ∂ₜu = ±∂_{r*}u with one-sided stencils.
        v[0] = (-3.0 * u_next[0] + 4.0 * u_next[1] - u_next[2]) / (2.0 * h);
        v[n - 1] = -(3.0 * u_next[n - 1] - 4.0 * u_next[n - 2] + u_next[n - 3]) / (2.0 * h);
        std::mem::swap(&mut u, &mut u_next);
        std::mem::swap(&mut acc, &mut acc_next);

        scan_finite(&u, step, time)?;
        sample_probes(&u, time, &mut probes);
        if step % config.record_every == 0 {
            record(&u, &v, time, &mut states, &mut records);
        }
    }
    let trapping_integral = trapezoid_over_records(&records);
    Ok(WaveTrajectory {
        mode: state.mode,
        grid: grid.clone(),
        states,
        records,
        trapping_integral,
        probes,
    })
}

/// Method-of-lines RK4 evolution of one Maxwell mode.
pub fn evolve_maxwell(
    state: &MaxwellModeState,
    grid: &Grid,
    config: &EvolutionConfig,
) -> Result<MaxwellTrajectory> {
    let dt = config.validate(grid)?;
    let n = grid.n_points();
    if state.psi_plus.len() != n || state.psi_zero.len() != n || state.psi_minus.len() != n {
        return Err(Error::Config("initial state does not match the grid".into()));
    }
    check_support_separation(&[&state.psi_plus, &state.psi_zero, &state.psi_minus], n)?;
    let coupling = coupling_constants(state.mode.l())?;
    let h = grid.spacing();
    let inv_2h = 1.0 / (2.0 * h);
    let steps = config.step_count(dt);
    let (mut probes, probe_nodes) = ProbeSeries::new(grid, &config.probes);
    let potential = grid.potential();

    #[derive(Clone)]
    struct Fields {
        plus: Vec<Complex64>,
        zero: Vec<Complex64>,
        minus: Vec<Complex64>,
    }
    let mut y = Fields {
        plus: state.psi_plus.clone(),
        zero: state.psi_zero.clone(),
        minus: state.psi_minus.clone(),
    };

    let rhs = |y: &Fields, out: &mut Fields| {
        // Ψ₁ rides the left-moving characteristic, Ψ₋₁ the right-moving one.
        // Outflow edges take one-sided interior stencils; the inflow side
        // drops the advection term (no incoming radiation).
        for i in 1..n - 1 {
            let dplus = (y.plus[i + 1] - y.plus[i - 1]) * inv_2h;
            let dminus = (y.minus[i + 1] - y.minus[i - 1]) * inv_2h;
            out.plus[i] = dplus + potential[i] * coupling.c_plus * y.zero[i];
            out.minus[i] = -dminus - potential[i] * coupling.c_dprime * y.zero[i];
        }
        let dplus_left = (-3.0 * y.plus[0] + 4.0 * y.plus[1] - y.plus[2]) * inv_2h;
        out.plus[0] = dplus_left + potential[0] * coupling.c_plus * y.zero[0];
        out.minus[0] = -potential[0] * coupling.c_dprime * y.zero[0];
        let dminus_right = (3.0 * y.minus[n - 1] - 4.0 * y.minus[n - 2] + y.minus[n - 3]) * inv_2h;
        out.minus[n - 1] = -dminus_right - potential[n - 1] * coupling.c_dprime * y.zero[n - 1];
        out.plus[n - 1] = potential[n - 1] * coupling.c_plus * y.zero[n - 1];
        for i in 0..n {
            out.zero[i] = 0.5 * (coupling.c_minus * y.plus[i] - coupling.c_prime * y.minus[i]);
        }
    };

    let zero_fields = Fields {
        plus: vec![Complex64::default(); n],
        zero: vec![Complex64::default(); n],
        minus: vec![Complex64::default(); n],
    };
    let mut k1 = zero_fields.clone();
    let mut k2 = zero_fields.clone();
    let mut k3 = zero_fields.clone();
    let mut k4 = zero_fields.clone();
    let mut stage = zero_fields;

    let mut states = Vec::new();
    let mut records = Vec::new();
    let snapshot = |y: &Fields, time: f64| MaxwellModeState {
        mode: state.mode,
        time,
        psi_plus: y.plus.clone(),
        psi_zero: y.zero.clone(),
        psi_minus: y.minus.clone(),
    };
    let first = snapshot(&y, 0.0);
    records.push(maxwell_record(&first, grid));
    states.push(first);
    let sample_probes = |y: &Fields, time: f64, probes: &mut ProbeSeries| {
        if !probe_nodes.is_empty() {
            probes.times.push(time);
            for (p, &node) in probe_nodes.iter().enumerate() {
                probes.values[p]
                    .push(y.plus[node].norm() + y.zero[node].norm() + y.minus[node].norm());
            }
        }
    };
    sample_probes(&y, 0.0, &mut probes);

    let combine = |y: &Fields, k: &Fields, factor: f64, out: &mut Fields| {
        for i in 0..n {
            out.plus[i] = y.plus[i] + factor * k.plus[i];
            out.zero[i] = y.zero[i] + factor * k.zero[i];
            out.minus[i] = y.minus[i] + factor * k.minus[i];
        }
    };

    for step in 1..=steps {
        let time = step as f64 * dt;
        rhs(&y, &mut k1);
        combine(&y, &k1, 0.5 * dt, &mut stage);
        rhs(&stage, &mut k2);
        combine(&y, &k2, 0.5 * dt, &mut stage);
        rhs(&stage, &mut k3);
        combine(&y, &k3, dt, &mut stage);
        rhs(&stage, &mut k4);
        let sixth = dt / 6.0;
        for i in 0..n {
            y.plus[i] += sixth * (k1.plus[i] + 2.0 * (k2.plus[i] + k3.plus[i]) + k4.plus[i]);
            y.zero[i] += sixth * (k1.zero[i] + 2.0 * (k2.zero[i] + k3.zero[i]) + k4.zero[i]);
            y.minus[i] += sixth * (k1.minus[i] + 2.0 * (k2.minus[i] + k3.minus[i]) + k4.minus[i]);
        }

        scan_finite(&y.zero, step, time)?;
        sample_probes(&y, time, &mut probes);
        if step % config.record_every == 0 {
            let snap = snapshot(&y, time);
            let record = maxwell_record(&snap, grid);
            if record.constraint_norm > config.constraint_ceiling {
                return Err(Error::ConstraintBlowup {
                    step,
                    norm: record.constraint_norm,
                    ceiling: config.constraint_ceiling,
                });
            }
            records.push(record);
            states.push(snap);
        }
    }
    let trapping_integral = trapezoid_over_records(&records);
    Ok(MaxwellTrajectory {
        mode: state.mode,
        grid: grid.clone(),
        states,
        records,
        trapping_integral,
        probes,
    })
}

fn uniform_record_spacing(times: &[f64]) -> Result<f64> {
    if times.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "Lie derivative needs at least 3 records, got {}",
            times.len()
        )));
    }
    let dt = times[1] - times[0];
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.abs() {
            return Err(Error::Config("records are not uniformly spaced".into()));
        }
    }
    Ok(dt)
}

/// Centered time differences of the stored states: the trajectory of the
/// time-translation Lie derivative of the field, itself a solution. Angular
/// Lie derivatives need no new data; they act as the algebraic mode weights.
pub fn lie_t_derivative_wave(traj: &WaveTrajectory) -> Result<WaveTrajectory> {
    let times: Vec<f64> = traj.states.iter().map(|s| s.time).collect();
    let dt = uniform_record_spacing(&times)?;
    let mut derived = Vec::with_capacity(traj.states.len() - 2);
    for k in 1..traj.states.len() - 1 {
        let prev = &traj.states[k - 1];
        let next = &traj.states[k + 1];
        let inv = 1.0 / (2.0 * dt);
        derived.push(WaveModeState {
            mode: traj.mode,
            time: traj.states[k].time,
            u: next.u.iter().zip(&prev.u).map(|(a, b)| (a - b) * inv).collect(),
            u_t: next.u_t.iter().zip(&prev.u_t).map(|(a, b)| (a - b) * inv).collect(),
        });
    }
    WaveTrajectory::from_states(traj.grid.clone(), derived)
}

pub fn lie_t_derivative_maxwell(traj: &MaxwellTrajectory) -> Result<MaxwellTrajectory> {
    let times: Vec<f64> = traj.states.iter().map(|s| s.time).collect();
    let dt = uniform_record_spacing(&times)?;
    let diff = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        a.iter().zip(b).map(|(x, y)| (x - y) / (2.0 * dt)).collect()
    };
    let mut derived = Vec::with_capacity(traj.states.len() - 2);
    for k in 1..traj.states.len() - 1 {
        let prev = &traj.states[k - 1];
        let next = &traj.states[k + 1];
        derived.push(MaxwellModeState {
            mode: traj.mode,
            time: traj.states[k].time,
            psi_plus: diff(&next.psi_plus, &prev.psi_plus),
            psi_zero: diff(&next.psi_zero, &prev.psi_zero),
            psi_minus: diff(&next.psi_minus, &prev.psi_minus),
        });
    }
    MaxwellTrajectory::from_states(traj.grid.clone(), derived)
}

/// Writes the record table in the exported CSV schema.
pub fn write_trajectory_csv<W: Write>(out: &mut W, records: &[EnergyRecord]) -> io::Result<()> {
    writeln!(out, "t,E,E_C,E_ell,E_T,E_K,trap_density_integral,constraint_norm")?;
    for r in records {
        writeln!(
            out,
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            r.time,
            r.energy,
            r.conformal_charge,
            r.local_energy,
            r.maxwell_energy,
            r.conformal_energy,
            r.trapping_density,
            r.constraint_norm
        )?;
    }
    Ok(())
}
