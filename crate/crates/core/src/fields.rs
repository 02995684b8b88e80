//! Per-mode field states on the tortoise grid, initial data construction,
//! and the pointwise stress-energy algebra.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{BlackHoleParams, GeometryMap};
use crate::harmonics::{coupling_constants, ModeIndex};
use crate::stencil;

/// Uniform r* grid with the geometry sampled at the nodes.
#[derive(Debug, Clone)]
pub struct Grid {
    half_width: f64,
    spacing: f64,
    r_star: Vec<f64>,
    r: Vec<f64>,
    /// Bare potential V = f/r².
    potential: Vec<f64>,
    /// ∂_{r*} V, closed form.
    potential_gradient: Vec<f64>,
    /// Trapping term 𝒯.
    trapping: Vec<f64>,
}

impl Grid {
    pub fn from_geometry(map: &GeometryMap, half_width: f64, n_points: usize) -> Result<Self> {
        if n_points < 16 {
            return Err(Error::Config(format!("grid needs at least 16 points, got {n_points}")));
        }
        if !(half_width > 0.0) {
            return Err(Error::Config(format!("grid half-width {half_width} must be positive")));
        }
        let spacing = 2.0 * half_width / (n_points - 1) as f64;
        let mut r_star = Vec::with_capacity(n_points);
        let mut r = Vec::with_capacity(n_points);
        let mut potential = Vec::with_capacity(n_points);
        let mut potential_gradient = Vec::with_capacity(n_points);
        let mut trapping = Vec::with_capacity(n_points);
        for i in 0..n_points {
            let rs = -half_width + spacing * i as f64;
            let radius = map.r_of_r_star(rs)?;
            let (f, fp, _) = map.params().horizon_function(radius)?;
            r_star.push(rs);
            r.push(radius);
            let v = f / (radius * radius);
            potential.push(v);
            potential_gradient.push(v * (fp - 2.0 * f / radius));
            trapping.push(1.0 + rs * (0.5 * fp - f / radius));
        }
        Ok(Self { half_width, spacing, r_star, r, potential, potential_gradient, trapping })
    }

    /// Flat test grid with V ≡ 0; the free-wave solver on it is compared
    /// against the method-of-characteristics reference.
    pub fn flat(half_width: f64, n_points: usize) -> Result<Self> {
        if n_points < 16 || !(half_width > 0.0) {
            return Err(Error::Config(format!(
                "grid needs L > 0 and at least 16 points, got L = {half_width}, n = {n_points}"
            )));
        }
        let spacing = 2.0 * half_width / (n_points - 1) as f64;
        let r_star: Vec<f64> = (0..n_points).map(|i| -half_width + spacing * i as f64).collect();
        Ok(Self {
            half_width,
            spacing,
            r: r_star.clone(),
            r_star,
            potential: vec![0.0; n_points],
            potential_gradient: vec![0.0; n_points],
            trapping: vec![0.0; n_points],
        })
    }

    pub fn n_points(&self) -> usize {
        self.r_star.len()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn r_star(&self) -> &[f64] {
        &self.r_star
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn potential_gradient(&self) -> &[f64] {
        &self.potential_gradient
    }

    pub fn trapping(&self) -> &[f64] {
        &self.trapping
    }

    /// Shifts the stored trapping term by a constant. Diagnostic knob: the
    /// validation suite uses it to demonstrate that the conformal identity
    /// checks actually pin the trapping formula.
    pub fn perturb_trapping(&mut self, offset: f64) {
        for value in &mut self.trapping {
            *value += offset;
        }
    }

    /// Node index nearest to the given r*.
    pub fn nearest_node(&self, r_star: f64) -> usize {
        let idx = ((r_star + self.half_width) / self.spacing).round();
        (idx.max(0.0) as usize).min(self.r_star.len() - 1)
    }
}

/// Initial-data profiles. Built-ins are compactly supported or
/// Gaussian-with-cutoff: Gaussians are truncated where they fall below
/// 1e-300, and their support radius, measured at the 1e-12 amplitude level,
/// must stay inside (-L/2, L/2).
#[derive(Debug, Clone)]
pub enum Profile {
    Zero,
    Gaussian { center: f64, width: f64, amplitude: f64 },
    Bump { center: f64, half_width: f64, amplitude: f64 },
    Samples(Vec<Complex64>),
}

impl Profile {
    /// Pointwise value of a built-in profile.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::Gaussian { center, width, amplitude } => {
                let u = (x - center) / width;
                let value = amplitude * (-0.5 * u * u).exp();
                if value.abs() < 1e-300 {
                    0.0
                } else {
                    value
                }
            }
            Profile::Bump { center, half_width, amplitude } => {
                let u = (x - center) / half_width;
                if u.abs() >= 1.0 {
                    0.0
                } else {
                    amplitude * (1.0 - 1.0 / (1.0 - u * u)).exp()
                }
            }
            Profile::Samples(_) => f64::NAN,
        }
    }

    fn support_radius(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Zero => Some((0.0, 0.0)),
            Profile::Gaussian { center, width, amplitude } => {
                let level = amplitude.abs() * 1e12;
                let radius = if level <= 1.0 { 0.0 } else { width * (2.0 * level.ln()).sqrt() };
                Some((*center, radius))
            }
            Profile::Bump { center, half_width, .. } => Some((*center, half_width.abs())),
            Profile::Samples(_) => None,
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<Vec<Complex64>> {
        match self {
            Profile::Samples(values) => {
                if values.len() != grid.n_points() {
                    return Err(Error::Config(format!(
                        "custom profile has {} samples for a grid of {} points",
                        values.len(),
                        grid.n_points()
                    )));
                }
                if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidInput("non-finite profile samples".into()));
                }
                Ok(values.clone())
            }
            _ => {
                if let Profile::Gaussian { width, .. } = self {
                    if !(*width > 0.0) {
                        return Err(Error::Config(format!("gaussian width {width} must be positive")));
                    }
                }
                if let Profile::Bump { half_width, .. } = self {
                    if !(*half_width > 0.0) {
                        return Err(Error::Config(format!(
                            "bump half-width {half_width} must be positive"
                        )));
                    }
                }
                if let Some((center, radius)) = self.support_radius() {
                    let bound = grid.half_width() / 2.0;
                    if radius > 0.0 && (center - radius <= -bound || center + radius >= bound) {
                        return Err(Error::Config(format!(
                            "profile support [{}, {}] exceeds (-L/2, L/2) = (-{bound}, {bound})",
                            center - radius,
                            center + radius
                        )));
                    }
                }
                Ok(grid.r_star().iter().map(|&x| Complex64::new(self.eval(x), 0.0)).collect())
            }
        }
    }
}

/// One scalar mode of the wave-like equation: u and ∂ₜu on the grid at a
/// fixed time. Snapshots are value-like; evolution copies rather than
/// mutates so diagnostics always see frozen data.
#[derive(Debug, Clone)]
pub struct WaveModeState {
    pub mode: ModeIndex,
    pub time: f64,
    pub u: Vec<Complex64>,
    pub u_t: Vec<Complex64>,
}

/// One Maxwell mode (l, n): the three spin components on the grid.
#[derive(Debug, Clone)]
pub struct MaxwellModeState {
    pub mode: ModeIndex,
    pub time: f64,
    pub psi_plus: Vec<Complex64>,
    pub psi_zero: Vec<Complex64>,
    pub psi_minus: Vec<Complex64>,
}

impl MaxwellModeState {
    /// Pointwise spin norm |Ψ₁| + |Ψ₀| + |Ψ₋₁| at a node, the per-mode
    /// surrogate for the pointwise field norm.
    pub fn amplitude(&self, node: usize) -> Result<f64> {
        if node >= self.psi_zero.len() {
            return Err(Error::Domain(format!(
                "node {node} out of range for a {}-point state",
                self.psi_zero.len()
            )));
        }
        Ok(self.psi_plus[node].norm() + self.psi_zero[node].norm() + self.psi_minus[node].norm())
    }
}

fn check_outer_decay(values: &[Complex64], label: &str) -> Result<()> {
    let n = values.len();
    let margin = n / 10;
    for (i, z) in values.iter().enumerate() {
        if (i < margin || i >= n - margin) && z.norm() > 1e-12 {
            return Err(Error::Config(format!(
                "{label} does not decay below 1e-12 in the outer 10% of the grid (node {i})"
            )));
        }
    }
    Ok(())
}

/// Builds a wave state at t = 0 from profiles for u and ∂ₜu.
pub fn make_wave_state(
    mode: ModeIndex,
    grid: &Grid,
    profile: &Profile,
    velocity_profile: &Profile,
) -> Result<WaveModeState> {
    let u = profile.sample(grid)?;
    let u_t = velocity_profile.sample(grid)?;
    if !matches!(profile, Profile::Samples(_)) {
        check_outer_decay(&u, "initial profile")?;
    }
    if !matches!(velocity_profile, Profile::Samples(_)) {
        check_outer_decay(&u_t, "initial velocity profile")?;
    }
    Ok(WaveModeState { mode, time: 0.0, u, u_t })
}

/// Builds a Maxwell state at t = 0 that is constraint-compatible to
/// discretization order: Ψ₀ and ∂ₜΨ₀ come from the profiles and the
/// transverse components are reconstructed through the transport equations,
///
/// ```text
/// Ψ₁ = (∂ₜΨ₀ + ∂_{r*}Ψ₀)/c_minus,    Ψ₋₁ = -(∂ₜΨ₀ - ∂_{r*}Ψ₀)/c_prime,
/// ```
///
/// with a centered spatial derivative.
pub fn make_maxwell_state(
    mode: ModeIndex,
    grid: &Grid,
    psi_zero_profile: &Profile,
    psi_zero_dt_profile: &Profile,
) -> Result<MaxwellModeState> {
    let psi_zero = psi_zero_profile.sample(grid)?;
    let psi_zero_dt = psi_zero_dt_profile.sample(grid)?;
    if !matches!(psi_zero_profile, Profile::Samples(_)) {
        check_outer_decay(&psi_zero, "Ψ₀ profile")?;
    }
    let coupling = coupling_constants(mode.l())?;
    let gradient = stencil::derivative(&psi_zero, grid.spacing());
    let n = grid.n_points();
    let mut psi_plus = Vec::with_capacity(n);
    let mut psi_minus = Vec::with_capacity(n);
    for i in 0..n {
        psi_plus.push((psi_zero_dt[i] + gradient[i]) / coupling.c_minus);
        psi_minus.push(-(psi_zero_dt[i] - gradient[i]) / coupling.c_prime);
    }
    Ok(MaxwellModeState { mode, time: 0.0, psi_plus, psi_zero, psi_minus })
}

/// Coordinate components (T00, T01, T11) of the Maxwell stress-energy in
/// terms of the spin components at one point.
pub fn stress_energy_components(
    phi_plus: Complex64,
    phi_zero: Complex64,
    phi_minus: Complex64,
    r: f64,
    f: f64,
) -> Result<(f64, f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("stress-energy at r = {r} <= 0")));
    }
    let p1 = phi_plus.norm_sqr();
    let p0 = phi_zero.norm_sqr();
    let pm1 = phi_minus.norm_sqr();
    let quarter_r2 = 0.25 / (r * r);
    let middle = 2.0 * f / (r * r) * p0;
    Ok((
        quarter_r2 * (p1 + middle + pm1),
        quarter_r2 * (p1 - pm1),
        quarter_r2 * (p1 - middle + pm1),
    ))
}

/// Null-tetrad contractions (T_LL, T_LN, T_NN) of the stress-energy; all
/// three are non-negative in the exterior where f > 0 (dominant energy
/// condition on L, N).
pub fn stress_energy_null(
    phi_plus: Complex64,
    phi_zero: Complex64,
    phi_minus: Complex64,
    r: f64,
    f: f64,
) -> Result<(f64, f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("stress-energy at r = {r} <= 0")));
    }
    let r2 = r * r;
    Ok((
        phi_plus.norm_sqr() / r2,
        f * phi_zero.norm_sqr() / (r2 * r2),
        phi_minus.norm_sqr() / r2,
    ))
}

fn write_snapshot_header<W: Write>(
    out: &mut W,
    params: &BlackHoleParams,
    grid: &Grid,
    mode: ModeIndex,
    time: f64,
) -> io::Result<()> {
    writeln!(
        out,
        "# m={:.17e} q={:.17e} lambda={:.17e} l={} n={} t={:.17e} half_width={:.17e} n_points={}",
        params.mass,
        params.charge,
        params.lambda,
        mode.l(),
        mode.n(),
        time,
        grid.half_width(),
        grid.n_points()
    )
}

/// Columnar text snapshot: header, column names, one row per node.
pub fn write_wave_snapshot<W: Write>(
    out: &mut W,
    params: &BlackHoleParams,
    grid: &Grid,
    state: &WaveModeState,
) -> io::Result<()> {
    write_snapshot_header(out, params, grid, state.mode, state.time)?;
    writeln!(out, "r_star re_u im_u re_u_t im_u_t")?;
    for i in 0..grid.n_points() {
        writeln!(
            out,
            "{:.17e} {:.17e} {:.17e} {:.17e} {:.17e}",
            grid.r_star()[i],
            state.u[i].re,
            state.u[i].im,
            state.u_t[i].re,
            state.u_t[i].im
        )?;
    }
    Ok(())
}

pub fn write_maxwell_snapshot<W: Write>(
    out: &mut W,
    params: &BlackHoleParams,
    grid: &Grid,
    state: &MaxwellModeState,
) -> io::Result<()> {
    write_snapshot_header(out, params, grid, state.mode, state.time)?;
    writeln!(out, "r_star re_psi_plus im_psi_plus re_psi_zero im_psi_zero re_psi_minus im_psi_minus")?;
    for i in 0..grid.n_points() {
        writeln!(
            out,
            "{:.17e} {:.17e} {:.17e} {:.17e} {:.17e} {:.17e} {:.17e}",
            grid.r_star()[i],
            state.psi_plus[i].re,
            state.psi_plus[i].im,
            state.psi_zero[i].re,
            state.psi_zero[i].im,
            state.psi_minus[i].re,
            state.psi_minus[i].im
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::wave_energy;
    use crate::geometry::BlackHoleParams;
    use proptest::prelude::*;

    fn reference_grid(half_width: f64, n_points: usize) -> Grid {
        let params = BlackHoleParams::new(1.0, 0.5, 0.01).unwrap();
        let map = GeometryMap::new(params).unwrap();
        Grid::from_geometry(&map, half_width, n_points).unwrap()
    }

    #[test]
    fn grid_matches_geometry() {
        let params = BlackHoleParams::new(1.0, 0.5, 0.01).unwrap();
        let map = GeometryMap::new(params).unwrap();
        let grid = Grid::from_geometry(&map, 20.0, 401).unwrap();
        assert_eq!(grid.n_points(), 401);
        assert!((grid.spacing() - 0.1).abs() < 1e-14);
        // r strictly increasing and consistent with the map.
        for i in 1..grid.n_points() {
            assert!(grid.r()[i] > grid.r()[i - 1]);
        }
        let mid = grid.nearest_node(0.0);
        assert!((grid.r()[mid] - map.horizons().photon_sphere).abs() < 1e-10);
        assert!((grid.trapping()[mid] - 1.0).abs() < 1e-12);
        assert!(Grid::from_geometry(&map, 20.0, 8).is_err());
    }

    #[test]
    fn zero_profile_zero_energy() {
        let grid = reference_grid(20.0, 401);
        let mode = ModeIndex::new(1, 0).unwrap();
        let state = make_wave_state(mode, &grid, &Profile::Zero, &Profile::Zero).unwrap();
        assert_eq!(wave_energy(&state, &grid), 0.0);
    }

    #[test]
    fn gaussian_profile_peaks_at_center() {
        let grid = reference_grid(20.0, 401);
        let mode = ModeIndex::new(1, 0).unwrap();
        let profile = Profile::Gaussian { center: 0.0, width: 1.0, amplitude: 1.0 };
        let state = make_wave_state(mode, &grid, &profile, &Profile::Zero).unwrap();
        let peak = state.u.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!((peak - 1.0).abs() < 1e-14);
        let center = grid.nearest_node(0.0);
        assert!((state.u[center].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn excluded_mode_is_rejected() {
        assert!(ModeIndex::new(0, 0).is_err());
    }

    #[test]
    fn support_check_rejects_wide_profiles() {
        let grid = reference_grid(20.0, 401);
        let mode = ModeIndex::new(1, 0).unwrap();
        // 1e-12 support radius of a width-3 gaussian is ~22, beyond L/2 = 10.
        let wide = Profile::Gaussian { center: 0.0, width: 3.0, amplitude: 1.0 };
        assert!(matches!(
            make_wave_state(mode, &grid, &wide, &Profile::Zero),
            Err(Error::Config(_))
        ));
        let off_center = Profile::Bump { center: 8.0, half_width: 3.0, amplitude: 1.0 };
        assert!(make_wave_state(mode, &grid, &off_center, &Profile::Zero).is_err());
        let ok = Profile::Bump { center: 0.0, half_width: 5.0, amplitude: 1.0 };
        assert!(make_wave_state(mode, &grid, &ok, &Profile::Zero).is_ok());
    }

    #[test]
    fn maxwell_construction_zero_is_zero() {
        let grid = reference_grid(20.0, 401);
        let mode = ModeIndex::new(1, 0).unwrap();
        let state = make_maxwell_state(mode, &grid, &Profile::Zero, &Profile::Zero).unwrap();
        assert!(state.psi_plus.iter().all(|z| z.norm() == 0.0));
        assert!(state.psi_minus.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn maxwell_construction_symmetry() {
        // With ∂ₜΨ₀ = 0 both transverse components are proportional to
        // ∂_{r*}Ψ₀: c_minus Ψ₁ = c_prime Ψ₋₁ pointwise.
        let grid = reference_grid(20.0, 401);
        let mode = ModeIndex::new(1, 0).unwrap();
        let profile = Profile::Gaussian { center: 0.0, width: 1.0, amplitude: 1.0 };
        let state = make_maxwell_state(mode, &grid, &profile, &Profile::Zero).unwrap();
        let c = coupling_constants(1).unwrap();
        for i in 0..grid.n_points() {
            let lhs = c.c_minus * state.psi_plus[i];
            let rhs = c.c_prime * state.psi_minus[i];
            assert!((lhs - rhs).norm() <= 1e-14 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn maxwell_initial_constraint_converges() {
        // Constraint of the constructed data measured against a 4th-order
        // derivative reference; the 2nd-order construction leaves an O(h²)
        // residual.
        let params = BlackHoleParams::new(1.0, 0.5, 0.01).unwrap();
        let map = GeometryMap::new(params).unwrap();
        let mode = ModeIndex::new(1, 0).unwrap();
        let c = coupling_constants(1).unwrap();
        let mut errors = Vec::new();
        let mut resolutions = Vec::new();
        for n in [301usize, 601, 1201] {
            let grid = Grid::from_geometry(&map, 15.0, n).unwrap();
            let profile = Profile::Gaussian { center: 0.0, width: 1.0, amplitude: 1.0 };
            let state = make_maxwell_state(mode, &grid, &profile, &Profile::Zero).unwrap();
            let h = grid.spacing();
            // 4th-order centered first derivative as the reference.
            let mut norm_sq = 0.0;
            for i in 2..n - 2 {
                let d4 = (-state.psi_zero[i + 2] + 8.0 * state.psi_zero[i + 1]
                    - 8.0 * state.psi_zero[i - 1]
                    + state.psi_zero[i - 2])
                    / (12.0 * h);
                let expected = 0.5 * (c.c_minus * state.psi_plus[i] + c.c_prime * state.psi_minus[i]);
                norm_sq += (d4 - expected).norm_sqr() * h;
            }
            errors.push(norm_sq.sqrt());
            resolutions.push(h);
        }
        let study = crate::oracles::ConvergenceStudy::new(resolutions, errors).unwrap();
        assert!(study.errors_decreasing());
        assert!(study.mean_order() >= 1.8, "order {}", study.mean_order());
    }

    #[test]
    fn stress_energy_point_values() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        // Pure Φ₁ at r = 2: all three coordinate components are 1/16.
        let (t00, t01, t11) = stress_energy_components(one, zero, zero, 2.0, 0.3).unwrap();
        assert_eq!((t00, t01, t11), (1.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0));
        // Pure middle component: T00 = -T11 = (f/r⁴)|c|²/2, T01 = 0.
        let c = Complex64::new(0.3, -0.4);
        let (t00, t01, t11) = stress_energy_components(zero, c, zero, 1.5, 0.7).unwrap();
        let want = 0.7 / 1.5f64.powi(4) * c.norm_sqr() / 2.0;
        assert!((t00 - want).abs() < 1e-15);
        assert_eq!(t01, 0.0);
        assert!((t11 + want).abs() < 1e-15);
        // All zero.
        assert_eq!(
            stress_energy_components(zero, zero, zero, 3.0, 0.5).unwrap(),
            (0.0, 0.0, 0.0)
        );
        // T_LL for Φ₁ = 2 at r = 1.
        let (tll, _, _) =
            stress_energy_null(Complex64::new(2.0, 0.0), zero, zero, 1.0, 0.5).unwrap();
        assert_eq!(tll, 4.0);
        assert!(stress_energy_components(one, zero, zero, 0.0, 0.5).is_err());
        assert!(stress_energy_null(one, zero, zero, -2.0, 0.5).is_err());
    }

    #[test]
    fn amplitude_values() {
        let grid = reference_grid(20.0, 401);
        let mode = ModeIndex::new(1, 0).unwrap();
        let mut state = make_maxwell_state(mode, &grid, &Profile::Zero, &Profile::Zero).unwrap();
        assert_eq!(state.amplitude(5).unwrap(), 0.0);
        state.psi_plus[5] = Complex64::new(3.0, 4.0);
        assert!((state.amplitude(5).unwrap() - 5.0).abs() < 1e-15);
        assert!(state.amplitude(grid.n_points()).is_err());
    }

    proptest! {
        #[test]
        fn stress_energy_algebra(
            re1 in -10.0f64..10.0, im1 in -10.0f64..10.0,
            re0 in -10.0f64..10.0, im0 in -10.0f64..10.0,
            rem in -10.0f64..10.0, imm in -10.0f64..10.0,
            r in 0.1f64..20.0, f in -0.5f64..1.0,
        ) {
            let p1 = Complex64::new(re1, im1);
            let p0 = Complex64::new(re0, im0);
            let pm = Complex64::new(rem, imm);
            let (t00, t01, t11) = stress_energy_components(p1, p0, pm, r, f).unwrap();
            let (tll, tln, tnn) = stress_energy_null(p1, p0, pm, r, f).unwrap();
            let scale = t00.abs().max(1.0);
            // Null contractions against the coordinate components.
            prop_assert!((tll - (t00 + 2.0 * t01 + t11)).abs() <= 1e-14 * scale.max(tll.abs()));
            prop_assert!((tnn - (t00 - 2.0 * t01 + t11)).abs() <= 1e-14 * scale.max(tnn.abs()));
            prop_assert!((tln - (t00 - t11)).abs() <= 1e-14 * scale.max(tln.abs()));
            // Trace-freeness in the component form actually used.
            let trace = t00 - t11 - f / r.powi(4) * p0.norm_sqr();
            prop_assert!(trace.abs() <= 1e-14 * scale);
            // Null-component nonnegativity; the mixed one needs f >= 0.
            prop_assert!(tll >= 0.0 && tnn >= 0.0);
            if f >= 0.0 {
                prop_assert!(tln >= 0.0);
            }
        }
    }
}
