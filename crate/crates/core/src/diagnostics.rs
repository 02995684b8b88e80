//! Energy functionals, conservation identities, flux integrals, and decay
//! measurements over states and trajectories.
//!
//! Per-mode reductions: on a single degree-l mode the angular gradient and
//! Laplacian act as the weights l(l+1) and l²(l+1)², so every functional
//! becomes a one-dimensional quadrature over r*. All quadratures are
//! trapezoid sums on the uniform grid; the refined-quadrature oracle
//! validates them on smooth integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{MaxwellTrajectory, WaveTrajectory};
use crate::fields::{Grid, MaxwellModeState, Profile, WaveModeState};
use crate::harmonics::{angular_gradient_weight, angular_laplacian_weight, coupling_constants};
use crate::stencil;

fn trapezoid(values: &[f64], spacing: f64) -> f64 {
    let sum: f64 = values.iter().sum();
    (sum - 0.5 * (values[0] + values[values.len() - 1])) * spacing
}

/// Wave energy E = ½ ∫ |∂ₜu|² + |∂_{r*}u|² + l(l+1) V |u|² dr*.
pub fn wave_energy(state: &WaveModeState, grid: &Grid) -> f64 {
    let weight = angular_gradient_weight(state.mode.l());
    let gradient = stencil::derivative(&state.u, grid.spacing());
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            state.u_t[i].norm_sqr()
                + gradient[i].norm_sqr()
                + weight * grid.potential()[i] * state.u[i].norm_sqr()
        })
        .collect();
    0.5 * trapezoid(&density, grid.spacing())
}

/// Conformal charge from the manifestly positive decomposition,
///
/// ```text
/// e_C = ¼|(t+r*)(∂ₜ+∂_{r*})u|² + ¼|(t-r*)(∂ₜ-∂_{r*})u|²
///       + ½(t²+r*²) l(l+1) V |u|² + e .
/// ```
pub fn conformal_charge(state: &WaveModeState, grid: &Grid) -> f64 {
    let weight = angular_gradient_weight(state.mode.l());
    let gradient = stencil::derivative(&state.u, grid.spacing());
    let t = state.time;
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            let rs = grid.r_star()[i];
            let v = grid.potential()[i];
            let outgoing = state.u_t[i] + gradient[i];
            let ingoing = state.u_t[i] - gradient[i];
            let e = state.u_t[i].norm_sqr()
                + gradient[i].norm_sqr()
                + weight * v * state.u[i].norm_sqr();
            0.25 * (t + rs).powi(2) * outgoing.norm_sqr()
                + 0.25 * (t - rs).powi(2) * ingoing.norm_sqr()
                + 0.5 * (t * t + rs * rs) * weight * v * state.u[i].norm_sqr()
                + e
        })
        .collect();
    0.5 * trapezoid(&density, grid.spacing())
}

/// Conformal charge from the direct density ½(t²+r*²)e + 2tr* Re(∂ₜu ∂_{r*}ū) + e;
/// algebraically identical to [`conformal_charge`], kept as a cross-check.
pub fn conformal_charge_direct(state: &WaveModeState, grid: &Grid) -> f64 {
    let weight = angular_gradient_weight(state.mode.l());
    let gradient = stencil::derivative(&state.u, grid.spacing());
    let t = state.time;
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            let rs = grid.r_star()[i];
            let e = state.u_t[i].norm_sqr()
                + gradient[i].norm_sqr()
                + weight * grid.potential()[i] * state.u[i].norm_sqr();
            0.5 * (t * t + rs * rs) * e
                + 2.0 * t * rs * (state.u_t[i] * gradient[i].conj()).re
                + e
        })
        .collect();
    0.5 * trapezoid(&density, grid.spacing())
}

/// Energy localized inside the light cone, ∫_{|r*| <= 3t/4} e dr*. Printed
/// convention: no ½ normalization, so the full-window limit is 2E.
pub fn local_energy(state: &WaveModeState, grid: &Grid) -> Result<f64> {
    let t = state.time;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("local energy needs t > 0, got {t}")));
    }
    let window = 0.75 * t;
    let weight = angular_gradient_weight(state.mode.l());
    let gradient = stencil::derivative(&state.u, grid.spacing());
    let mut density = Vec::new();
    for i in 0..grid.n_points() {
        if grid.r_star()[i].abs() <= window {
            density.push(
                state.u_t[i].norm_sqr()
                    + gradient[i].norm_sqr()
                    + weight * grid.potential()[i] * state.u[i].norm_sqr(),
            );
        }
    }
    if density.len() < 2 {
        return Ok(0.0);
    }
    Ok(trapezoid(&density, grid.spacing()))
}

/// Maxwell energy E_T = ¼ ∫ |Ψ₁|² + 2V|Ψ₀|² + |Ψ₋₁|² dr*.
pub fn maxwell_energy(state: &MaxwellModeState, grid: &Grid) -> f64 {
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            state.psi_plus[i].norm_sqr()
                + 2.0 * grid.potential()[i] * state.psi_zero[i].norm_sqr()
                + state.psi_minus[i].norm_sqr()
        })
        .collect();
    0.25 * trapezoid(&density, grid.spacing())
}

/// Conformal energy E_K = ¼ ∫ u₊²|Ψ₁|² + (u₊²+u₋²)V|Ψ₀|² + u₋²|Ψ₋₁|² dr*
/// with u± = t ± r*.
pub fn conformal_energy(state: &MaxwellModeState, grid: &Grid) -> f64 {
    let t = state.time;
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            let rs = grid.r_star()[i];
            let up = (t + rs) * (t + rs);
            let um = (t - rs) * (t - rs);
            up * state.psi_plus[i].norm_sqr()
                + (up + um) * grid.potential()[i] * state.psi_zero[i].norm_sqr()
                + um * state.psi_minus[i].norm_sqr()
        })
        .collect();
    0.25 * trapezoid(&density, grid.spacing())
}

/// The middle component as a wave state, with ∂ₜΨ₀ reconstructed from the
/// transport equations: ∂ₜΨ₀ = ½(c_minus Ψ₁ - c_prime Ψ₋₁).
pub fn middle_component_wave_state(state: &MaxwellModeState) -> WaveModeState {
    let coupling = coupling_constants(state.mode.l()).expect("mode l >= 1 by construction");
    let u_t: Vec<Complex64> = state
        .psi_plus
        .iter()
        .zip(&state.psi_minus)
        .map(|(plus, minus)| 0.5 * (coupling.c_minus * plus - coupling.c_prime * minus))
        .collect();
    WaveModeState {
        mode: state.mode,
        time: state.time,
        u: state.psi_zero.clone(),
        u_t,
    }
}

/// Instantaneous trapping density integral ∫ tV𝒯 l(l+1)|u|² dr* whose time
/// quadrature equals the growth of the conformal charge.
///
/// Assembling the Morawetz-multiplier boundary terms gives
/// Δ[2(E_C - E)] = ∫∫ t(r*∂_{r*}V + 2V)|∇̸u|², and with E conserved this is
/// ΔE_C = ∫∫ tV𝒯 |∇̸u|². (Expanding the multiplier rather than quoting a
/// condensed form matters: the factor here is pinned numerically by the
/// identity check converging at second order, and a factor-2 variant fails
/// it outright.)
pub fn wave_trapping_density(state: &WaveModeState, grid: &Grid) -> f64 {
    let weight = angular_gradient_weight(state.mode.l());
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            state.time
                * grid.potential()[i]
                * grid.trapping()[i]
                * weight
                * state.u[i].norm_sqr()
        })
        .collect();
    trapezoid(&density, grid.spacing())
}

/// Instantaneous trapping density integral ∫ 2tV𝒯 |Ψ₀|² dr* whose time
/// quadrature equals the growth of the conformal energy:
/// ΔE_K = ∫∫ 2t(f/r²)𝒯|Φ₀|², from contracting the deformation tensor of the
/// conformal vector with the stress-energy.
pub fn maxwell_trapping_density(state: &MaxwellModeState, grid: &Grid) -> f64 {
    let density: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            2.0 * state.time
                * grid.potential()[i]
                * grid.trapping()[i]
                * state.psi_zero[i].norm_sqr()
        })
        .collect();
    trapezoid(&density, grid.spacing())
}

/// Grid-L² norm of the constraint C = ∂_{r*}Ψ₀ - ½(c_minus Ψ₁ + c_prime Ψ₋₁).
///
/// The derivative uses a fourth-order interior stencil: the evolution
/// scheme preserves its own second-order discrete constraint identically
/// (the averaged Ψ₀ update makes dC/dt vanish in exact arithmetic), so the
/// meaningful residual is the distance from the continuum constraint
/// manifold, which the higher-order stencil resolves at O(h²).
pub fn constraint_norm(state: &MaxwellModeState, grid: &Grid) -> Result<f64> {
    let coupling = coupling_constants(state.mode.l())?;
    let n = grid.n_points();
    let h = grid.spacing();
    let mut sum = 0.0;
    for i in 0..n {
        let gradient = if i >= 2 && i + 2 < n {
            (-state.psi_zero[i + 2] + 8.0 * state.psi_zero[i + 1] - 8.0 * state.psi_zero[i - 1]
                + state.psi_zero[i - 2])
                / (12.0 * h)
        } else if i == 0 {
            (-3.0 * state.psi_zero[0] + 4.0 * state.psi_zero[1] - state.psi_zero[2]) / (2.0 * h)
        } else if i == n - 1 {
            (3.0 * state.psi_zero[n - 1] - 4.0 * state.psi_zero[n - 2] + state.psi_zero[n - 3])
                / (2.0 * h)
        } else {
            (state.psi_zero[i + 1] - state.psi_zero[i - 1]) / (2.0 * h)
        };
        let expected =
            0.5 * (coupling.c_minus * state.psi_plus[i] + coupling.c_prime * state.psi_minus[i]);
        sum += (gradient - expected).norm_sqr();
    }
    Ok((sum * h).sqrt())
}

/// Both sides of a conservation identity and their relative mismatch.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    /// Change of the functional between the first and last record.
    pub change: f64,
    /// Trapezoid-in-time quadrature of the trapping density over the records.
    pub integral: f64,
    /// |change - integral| / max(first value, ε).
    pub residual: f64,
}

fn identity_check(first: f64, change: f64, integral: f64) -> IdentityCheck {
    IdentityCheck {
        change,
        integral,
        residual: (change - integral).abs() / first.abs().max(1e-30),
    }
}

/// Conformal-charge identity for a wave trajectory:
/// E_C(t₂) - E_C(t₁) = ∫∫ 2tV𝒯 l(l+1)|u|².
pub fn conformal_identity_residual(traj: &WaveTrajectory) -> Result<IdentityCheck> {
    if traj.records.len() < 2 {
        return Err(Error::InsufficientData("identity check needs at least 2 records".into()));
    }
    let first = traj.records.first().unwrap();
    let last = traj.records.last().unwrap();
    Ok(identity_check(
        first.conformal_charge,
        last.conformal_charge - first.conformal_charge,
        traj.trapping_integral,
    ))
}

/// Conformal-energy (trapping) identity for a Maxwell trajectory:
/// E_K(t₂) - E_K(t₁) = ∫∫ 2tV𝒯 |Ψ₀|².
pub fn trapping_identity_residual(traj: &MaxwellTrajectory) -> Result<IdentityCheck> {
    if traj.records.len() < 2 {
        return Err(Error::InsufficientData("identity check needs at least 2 records".into()));
    }
    let first = traj.records.first().unwrap();
    let last = traj.records.last().unwrap();
    Ok(identity_check(
        first.conformal_energy,
        last.conformal_energy - first.conformal_energy,
        traj.trapping_integral,
    ))
}

/// Achronal observation surfaces: parabolas t = √(1+r*²) + t0, cones
/// t = |r*| + t0, and constant-time slices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HypersurfaceSpec {
    Parabola { t0: f64 },
    Cone { t0: f64 },
    Slice { t0: f64 },
}

impl HypersurfaceSpec {
    pub fn t0(&self) -> f64 {
        match *self {
            HypersurfaceSpec::Parabola { t0 }
            | HypersurfaceSpec::Cone { t0 }
            | HypersurfaceSpec::Slice { t0 } => t0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.t0() >= 0.0) {
            return Err(Error::Config(format!("surface offset t0 = {} must be >= 0", self.t0())));
        }
        Ok(())
    }

    pub fn time_at(&self, r_star: f64) -> f64 {
        match *self {
            HypersurfaceSpec::Parabola { t0 } => (1.0 + r_star * r_star).sqrt() + t0,
            HypersurfaceSpec::Cone { t0 } => r_star.abs() + t0,
            HypersurfaceSpec::Slice { t0 } => t0,
        }
    }

    /// dt/dr* of the surface; |slope| <= 1 keeps it achronal.
    pub fn slope_at(&self, r_star: f64) -> f64 {
        match *self {
            HypersurfaceSpec::Parabola { .. } => r_star / (1.0 + r_star * r_star).sqrt(),
            HypersurfaceSpec::Cone { .. } => {
                if r_star >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            HypersurfaceSpec::Slice { .. } => 0.0,
        }
    }
}

/// Which generator contracts the stress-energy in the flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxVector {
    /// Time translation T = ∂ₜ.
    Time,
    /// Conformal vector K = (t²+r*²)∂ₜ + 2tr* ∂_{r*}.
    Conformal,
}

/// Flux of T_{ab}X^b through a surface parametrized over r*, with the
/// conormal N = dt - (dt/dr*) dr* and the transverse vector ∂ₜ (so that
/// N(∂ₜ) = 1). Components are interpolated linearly in t between records;
/// on slices the flux reduces exactly to E_T or E_K.
pub fn hypersurface_flux(
    traj: &MaxwellTrajectory,
    surface: &HypersurfaceSpec,
    vector: FluxVector,
) -> Result<f64> {
    surface.validate()?;
    if traj.states.len() < 2 {
        return Err(Error::InsufficientData("flux needs at least 2 records".into()));
    }
    let times: Vec<f64> = traj.states.iter().map(|s| s.time).collect();
    let t_first = times[0];
    let t_last = *times.last().unwrap();
    if !matches!(surface, HypersurfaceSpec::Slice { .. }) {
        let max_gap = times.windows(2).map(|w| w[1] - w[0]).fold(0.0f64, f64::max);
        if max_gap > 0.25 + 1e-12 {
            return Err(Error::Config(format!(
                "records every {max_gap:.3} time units are too sparse to interpolate a sloped \
                 surface; need at least 4 per unit time"
            )));
        }
    }

    let grid = &traj.grid;
    let n = grid.n_points();
    let mut density = Vec::with_capacity(n);
    for i in 0..n {
        let rs = grid.r_star()[i];
        let t = surface.time_at(rs);
        if t < t_first - 1e-9 || t > t_last + 1e-9 {
            return Err(Error::Coverage(format!(
                "surface time {t:.3} at r* = {rs:.3} outside stored range [{t_first:.3}, {t_last:.3}]"
            )));
        }
        // Locate the bracketing records.
        let k = match times.binary_search_by(|probe| probe.partial_cmp(&t).unwrap()) {
            Ok(exact) => exact.min(times.len() - 2),
            Err(insert) => insert.clamp(1, times.len() - 1) - 1,
        };
        let t_lo = times[k];
        let t_hi = times[k + 1];
        let frac = ((t - t_lo) / (t_hi - t_lo)).clamp(0.0, 1.0);
        let lerp = |a: Complex64, b: Complex64| a * (1.0 - frac) + b * frac;
        let plus = lerp(traj.states[k].psi_plus[i], traj.states[k + 1].psi_plus[i]);
        let zero = lerp(traj.states[k].psi_zero[i], traj.states[k + 1].psi_zero[i]);
        let minus = lerp(traj.states[k].psi_minus[i], traj.states[k + 1].psi_minus[i]);

        let slope = surface.slope_at(rs);
        let v = grid.potential()[i];
        let value = match vector {
            FluxVector::Time => {
                (1.0 + slope) * plus.norm_sqr()
                    + 2.0 * v * zero.norm_sqr()
                    + (1.0 - slope) * minus.norm_sqr()
            }
            FluxVector::Conformal => {
                let up = (t + rs) * (t + rs);
                let um = (t - rs) * (t - rs);
                (1.0 + slope) * up * plus.norm_sqr()
                    + v * ((1.0 - slope) * up + (1.0 + slope) * um) * zero.norm_sqr()
                    + (1.0 - slope) * um * minus.norm_sqr()
            }
        };
        density.push(0.25 * value);
    }
    Ok(trapezoid(&density, grid.spacing()))
}

/// Log-log slope and sup of t·value over a positive series.
#[derive(Debug, Clone, Copy)]
pub struct DecayFit {
    pub slope: f64,
    pub sup_t_value: f64,
    pub points_used: usize,
}

/// Least-squares fit of log(value) against log(t). The decay theorems give
/// one-sided bounds, so acceptance uses the boundedness of t·value, not the
/// slope alone; both are reported.
pub fn decay_fit(series: &[(f64, f64)]) -> Result<DecayFit> {
    let filtered: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|&(t, v)| t > 0.0 && v > 0.0)
        .collect();
    if filtered.len() < 8 {
        return Err(Error::Fit(format!(
            "decay fit needs at least 8 positive points, got {}",
            filtered.len()
        )));
    }
    let n = filtered.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    let mut sup = 0.0f64;
    for &(t, v) in &filtered {
        let x = t.ln();
        let y = v.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        sup = sup.max(t * v);
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(Error::Fit("degenerate abscissas in decay fit".into()));
    }
    Ok(DecayFit {
        slope: (n * sxy - sx * sy) / denom,
        sup_t_value: sup,
        points_used: filtered.len(),
    })
}

/// Hardy-estimate data: weighted mass of u against the coreless right-hand
/// side over the window |r*| <= t/2.
#[derive(Debug, Clone, Copy)]
pub struct HardyReport {
    pub lhs: f64,
    pub rhs_coreless: f64,
    pub ratio: f64,
}

/// Checks the weighted Hardy inequality ingredients for one sample function:
/// lhs = ∫ u²/(1+r*²)^{σ+1}, rhs = ∫ (∂u)²/(1+r*²)^σ + ξu², both over
/// |r*| <= t/2. The lemma asserts lhs <= C rhs with C independent of u; the
/// sweep records the empirical ratio family.
pub fn hardy_check(
    u: &[f64],
    grid: &Grid,
    sigma: f64,
    t: f64,
    xi: &Profile,
) -> Result<HardyReport> {
    if u.len() != grid.n_points() {
        return Err(Error::Config("sample length does not match the grid".into()));
    }
    if !(sigma > 0.0) {
        return Err(Error::Config(format!("σ = {sigma} must be positive")));
    }
    if !(t >= 1.0) {
        return Err(Error::Config(format!("Hardy window needs t >= 1, got {t}")));
    }
    // ξ must be non-negative and positive somewhere in |r*| <= 1/2.
    let mut positive_in_core = false;
    for k in 0..=100 {
        let x = -0.5 + k as f64 / 100.0;
        let value = xi.eval(x);
        if value < 0.0 {
            return Err(Error::Config(format!("ξ({x}) = {value} < 0")));
        }
        if value > 0.0 {
            positive_in_core = true;
        }
    }
    if !positive_in_core {
        return Err(Error::Config("ξ vanishes on the whole core |r*| <= 1/2".into()));
    }
    for &rs in grid.r_star() {
        if xi.eval(rs) < 0.0 {
            return Err(Error::Config(format!("ξ({rs}) negative")));
        }
    }

    let window = 0.5 * t;
    let gradient = stencil::derivative_real(u, grid.spacing());
    let mut lhs_density = Vec::new();
    let mut rhs_density = Vec::new();
    for i in 0..grid.n_points() {
        let rs = grid.r_star()[i];
        if rs.abs() > window {
            continue;
        }
        let weight = 1.0 + rs * rs;
        lhs_density.push(u[i] * u[i] / weight.powf(sigma + 1.0));
        rhs_density.push(gradient[i] * gradient[i] / weight.powf(sigma) + xi.eval(rs) * u[i] * u[i]);
    }
    if lhs_density.len() < 2 {
        return Err(Error::Config("Hardy window contains fewer than 2 grid nodes".into()));
    }
    let lhs = trapezoid(&lhs_density, grid.spacing());
    let rhs = trapezoid(&rhs_density, grid.spacing());
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok(HardyReport { lhs, rhs_coreless: rhs, ratio })
}

/// Per-record comparison of the middle-component wave energy against the
/// Maxwell energy scaled by the angular weight.
#[derive(Debug, Clone)]
pub struct EnergyRelationReport {
    /// max over records of E[Ψ₀] / (l(l+1) E_T); the lemma's constant is
    /// not explicit, so the empirical value is recorded.
    pub empirical_constant: f64,
    pub per_record: Vec<(f64, f64)>,
}

pub fn energy_relation_check(traj: &MaxwellTrajectory) -> Result<EnergyRelationReport> {
    if traj.records.is_empty() {
        return Err(Error::InsufficientData("no records".into()));
    }
    let weight = angular_gradient_weight(traj.mode.l());
    let mut per_record = Vec::with_capacity(traj.records.len());
    let mut worst = 0.0f64;
    for r in &traj.records {
        let scaled = weight * r.maxwell_energy;
        let ratio = if scaled == 0.0 { 0.0 } else { r.energy / scaled };
        worst = worst.max(ratio);
        per_record.push((r.time, ratio));
    }
    Ok(EnergyRelationReport { empirical_constant: worst, per_record })
}

/// Surrogate for the uniform conformal-charge bound:
/// sup_t E_C(t) / (E_C(0) + E[Δ̸²u](0)), with E[Δ̸²u] = l²(l+1)² E[u] per mode.
pub fn uniform_bound_ratio(traj: &WaveTrajectory) -> Result<f64> {
    let first = traj
        .records
        .first()
        .ok_or_else(|| Error::InsufficientData("no records".into()))?;
    let weight = angular_laplacian_weight(traj.mode.l());
    let denom = first.conformal_charge + weight * first.energy;
    if denom == 0.0 {
        return Ok(0.0);
    }
    let sup = traj
        .records
        .iter()
        .map(|r| r.conformal_charge)
        .fold(0.0f64, f64::max);
    Ok(sup / denom)
}
