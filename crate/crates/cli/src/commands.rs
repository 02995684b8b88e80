//! The five subcommands: geometry, scan, evolve, flux, check.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rnds_core::diagnostics::{
    conformal_identity_residual, hypersurface_flux, trapping_identity_residual, FluxVector,
};
use rnds_core::error::{Error, Result};
use rnds_core::fields::{
    make_maxwell_state, make_wave_state, stress_energy_components, stress_energy_null,
    write_maxwell_snapshot, write_wave_snapshot, Grid, Profile,
};
use rnds_core::geometry::{
    generic_f_validate, photon_sphere, validate_params, BlackHoleParams, GeometryMap,
    HorizonFnSpec,
};
use rnds_core::oracles::{
    deformation_identity_check, quartic_roots_companion, refined_quadrature, DalembertReference,
    SpacetimePoint,
};
use rnds_core::{
    evolution, evolve_maxwell, evolve_wave, EvolutionConfig, ModeIndex,
};

use crate::config::{FluxKind, RunConfig, SnapshotPolicy, Solver};

fn write_output(path: Option<&str>, text: &str) -> Result<()> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let file = File::create(path)
                .map_err(|err| Error::Config(format!("cannot write `{path}`: {err}")))?;
            let mut out = BufWriter::new(file);
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|err| Error::Config(format!("cannot write `{path}`: {err}")))
        }
    }
}

/// `geometry`: admissibility, horizon radii, photon sphere, tortoise
/// coefficients, and the trapping interval. Inadmissible parameters exit
/// with code 2 and the failing clause named.
pub fn cmd_geometry(config: &RunConfig, out_path: Option<&str>) -> Result<u8> {
    let report = validate_params(config.mass, config.charge, config.lambda)?;
    let mut text = String::new();
    let _ = writeln!(text, "admissible: {}", report.admissible);
    let _ = writeln!(text, "delta: {:.16e}", report.delta);
    let _ = writeln!(text, "length_scale: {:.16e}", report.length_scale);
    let _ = writeln!(text, "m1: {:.16e}", report.m1);
    let _ = writeln!(text, "m2: {:.16e}", report.m2);
    let _ = writeln!(text, "mass_lower: {:.16e}", report.mass_lower);
    let _ = writeln!(text, "mass_upper: {:.16e}", report.mass_upper);
    if !report.admissible {
        write_output(out_path, &text)?;
        return Err(Error::Inadmissible {
            clause: report.failing_clause().unwrap_or("admissibility"),
        });
    }
    let params = BlackHoleParams::new(config.mass, config.charge, config.lambda)?;
    let map = GeometryMap::new(params)?;
    let horizons = map.horizons();
    let roots = horizons.roots.as_array();
    let _ = writeln!(text, "r0: {:.16e}", roots[0]);
    let _ = writeln!(text, "r1: {:.16e}", roots[1]);
    let _ = writeln!(text, "r2: {:.16e}", roots[2]);
    let _ = writeln!(text, "r3: {:.16e}", roots[3]);
    let _ = writeln!(text, "photon_sphere: {:.16e}", horizons.photon_sphere);
    for (i, a) in horizons.rw.log_coeffs.iter().enumerate() {
        let _ = writeln!(text, "rw.a{i}: {:.16e}", a);
    }
    let _ = writeln!(text, "rw.offset: {:.16e}", horizons.rw.offset);
    let _ = writeln!(text, "default_half_width: {:.16e}", map.half_width());
    let region = map.trapping_region()?;
    let _ = writeln!(text, "trapping.left: {:.16e}", region.left);
    let _ = writeln!(text, "trapping.right: {:.16e}", region.right);
    write_output(out_path, &text)?;
    Ok(0)
}

/// `scan`: admissibility and photon sphere over an (M, Q) grid at fixed Λ.
pub fn cmd_scan(config: &RunConfig, out_path: Option<&str>) -> Result<u8> {
    let scan = config.scan.clone().unwrap_or(crate::config::ScanRanges {
        m_min: config.mass,
        m_max: config.mass,
        m_steps: 1,
        q_min: config.charge,
        q_max: config.charge,
        q_steps: 1,
    });
    for (label, min, max, steps) in [
        ("m", scan.m_min, scan.m_max, scan.m_steps),
        ("q", scan.q_min, scan.q_max, scan.q_steps),
    ] {
        if steps == 0 {
            return Err(Error::Config(format!("scan.{label}_steps must be at least 1")));
        }
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(Error::Config(format!(
                "scan.{label} range [{min}, {max}] is not finite and ordered"
            )));
        }
        if steps == 1 && min != max {
            return Err(Error::Config(format!(
                "scan.{label}: a single step needs {label}_min = {label}_max"
            )));
        }
    }
    let grid_value = |min: f64, max: f64, steps: usize, k: usize| {
        if steps == 1 {
            min
        } else {
            min + (max - min) * k as f64 / (steps - 1) as f64
        }
    };
    let mut text = String::from("m,q,admissible,m1,m2,p2\n");
    for i in 0..scan.m_steps {
        let m = grid_value(scan.m_min, scan.m_max, scan.m_steps, i);
        for j in 0..scan.q_steps {
            let q = grid_value(scan.q_min, scan.q_max, scan.q_steps, j);
            let report = validate_params(m, q, config.lambda)?;
            let p2 = if 9.0 * m * m >= 8.0 * q * q {
                format!("{:.16e}", (3.0 * m + (9.0 * m * m - 8.0 * q * q).sqrt()) / 2.0)
            } else {
                String::new()
            };
            let _ = writeln!(
                text,
                "{m:.16e},{q:.16e},{},{:.16e},{:.16e},{p2}",
                u8::from(report.admissible),
                report.mass_lower,
                report.mass_upper
            );
        }
    }
    write_output(out_path, &text)?;
    Ok(0)
}

enum RunOutput {
    Wave(evolution::WaveTrajectory),
    Maxwell(evolution::MaxwellTrajectory),
}

fn run_evolution(config: &RunConfig) -> Result<(BlackHoleParams, Grid, RunOutput)> {
    let report = validate_params(config.mass, config.charge, config.lambda)?;
    if !report.admissible {
        return Err(Error::Inadmissible {
            clause: report.failing_clause().unwrap_or("admissibility"),
        });
    }
    let params = BlackHoleParams::new(config.mass, config.charge, config.lambda)?;
    let map = GeometryMap::new(params)?;
    let mut grid = Grid::from_geometry(&map, config.half_width, config.n_points)?;
    if config.trap_offset != 0.0 {
        grid.perturb_trapping(config.trap_offset);
    }
    let mode = ModeIndex::new(config.mode_l, config.mode_n)?;
    let profile = config.initial_profile();
    let evolution_config: EvolutionConfig = config.evolution_config();
    let output = match config.solver {
        Solver::Wave => {
            let state = make_wave_state(mode, &grid, &profile, &Profile::Zero)?;
            RunOutput::Wave(evolve_wave(&state, &grid, &evolution_config)?)
        }
        Solver::Maxwell => {
            let state = make_maxwell_state(mode, &grid, &profile, &Profile::Zero)?;
            RunOutput::Maxwell(evolve_maxwell(&state, &grid, &evolution_config)?)
        }
    };
    Ok((params, grid, output))
}

/// `evolve`: one mode evolution; the record table as CSV plus state
/// snapshots in the columnar format.
pub fn cmd_evolve(config: &RunConfig, out_path: Option<&str>) -> Result<u8> {
    let (params, grid, output) = run_evolution(config)?;
    let records = match &output {
        RunOutput::Wave(t) => &t.records,
        RunOutput::Maxwell(t) => &t.records,
    };
    let mut csv = Vec::new();
    evolution::write_trajectory_csv(&mut csv, records)
        .map_err(|err| Error::Config(format!("csv rendering failed: {err}")))?;
    write_output(out_path, std::str::from_utf8(&csv).expect("csv is utf-8"))?;

    if let Some(path) = out_path {
        let snapshot_indices: Vec<usize> = match (config.snapshots, &output) {
            (SnapshotPolicy::None, _) => Vec::new(),
            (SnapshotPolicy::Final, RunOutput::Wave(t)) => vec![t.states.len() - 1],
            (SnapshotPolicy::Final, RunOutput::Maxwell(t)) => vec![t.states.len() - 1],
            (SnapshotPolicy::All, RunOutput::Wave(t)) => (0..t.states.len()).collect(),
            (SnapshotPolicy::All, RunOutput::Maxwell(t)) => (0..t.states.len()).collect(),
        };
        for index in snapshot_indices {
            let snap_path = format!("{path}.r{index}.snap");
            let file = File::create(&snap_path)
                .map_err(|err| Error::Config(format!("cannot write `{snap_path}`: {err}")))?;
            let mut out = BufWriter::new(file);
            match &output {
                RunOutput::Wave(t) => {
                    write_wave_snapshot(&mut out, &params, &grid, &t.states[index])
                }
                RunOutput::Maxwell(t) => {
                    write_maxwell_snapshot(&mut out, &params, &grid, &t.states[index])
                }
            }
            .map_err(|err| Error::Config(format!("cannot write `{snap_path}`: {err}")))?;
        }
    }
    Ok(0)
}

/// `flux`: inline Maxwell evolution, then the energy flux through the
/// configured surface family as `t0,flux,t0_sq_flux` rows.
pub fn cmd_flux(config: &RunConfig, out_path: Option<&str>) -> Result<u8> {
    let mut maxwell_config = config.clone();
    maxwell_config.solver = Solver::Maxwell;
    let (_, _, output) = run_evolution(&maxwell_config)?;
    let RunOutput::Maxwell(traj) = output else { unreachable!() };
    let vector = match config.flux_vector {
        FluxKind::Time => FluxVector::Time,
        FluxKind::Conformal => FluxVector::Conformal,
    };
    let mut text = String::from("t0,flux,t0_sq_flux\n");
    for surface in config.surfaces() {
        let flux = hypersurface_flux(&traj, &surface, vector)?;
        let t0 = surface.t0();
        let _ = writeln!(text, "{t0:.16e},{flux:.16e},{:.16e}", t0 * t0 * flux);
    }
    write_output(out_path, &text)?;
    Ok(0)
}

struct CheckSuite {
    lines: Vec<String>,
    failed: Option<String>,
}

impl CheckSuite {
    fn new() -> Self {
        Self { lines: Vec::new(), failed: None }
    }

    fn check(&mut self, name: &str, passed: bool, value: f64, tolerance: f64) {
        let status = if passed { "PASS" } else { "FAIL" };
        self.lines.push(format!("{status} {name} value={value:.6e} tol={tolerance:.1e}"));
        if !passed && self.failed.is_none() {
            self.failed = Some(name.to_string());
        }
    }

    /// Residual-style check: passes when value <= tolerance.
    fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        self.check(name, value.is_finite() && value <= tolerance, value, tolerance);
    }

    /// Range-style check: passes when lo <= value <= hi.
    fn range(&mut self, name: &str, value: f64, lo: f64, hi: f64) {
        let passed = value.is_finite() && (lo..=hi).contains(&value);
        let status = if passed { "PASS" } else { "FAIL" };
        self.lines.push(format!("{status} {name} value={value:.6e} range=[{lo},{hi}]"));
        if !passed && self.failed.is_none() {
            self.failed = Some(name.to_string());
        }
    }
}

/// `check`: the full invariant suite on the configured parameters (defaults
/// to the reference set). Exit 0 when everything passes, 3 with the failing
/// invariant named, 2 when the parameters are inadmissible.
pub fn cmd_check(config: &RunConfig) -> Result<u8> {
    let report = validate_params(config.mass, config.charge, config.lambda)?;
    if !report.admissible {
        return Err(Error::Inadmissible {
            clause: report.failing_clause().unwrap_or("admissibility"),
        });
    }
    let params = BlackHoleParams::new(config.mass, config.charge, config.lambda)?;
    let map = GeometryMap::new(params)?;
    let mut suite = CheckSuite::new();
    print!("{}", config.summary());

    // Geometry invariants.
    let roots = map.horizons().roots.as_array();
    let span = roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let vieta_sum = roots.iter().sum::<f64>().abs() / span;
    let mut pair_sum = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            pair_sum += roots[i] * roots[j];
        }
    }
    let vieta = vieta_sum
        .max((pair_sum + 1.0 / params.lambda).abs() * params.lambda)
        .max(
            (roots.iter().product::<f64>() + params.charge * params.charge / params.lambda).abs()
                * params.lambda
                / (params.charge * params.charge),
        );
    suite.residual("vieta_relations", vieta, 1e-10);

    let a = map.horizons().rw.log_coeffs;
    let mut partial_fraction: f64 = 0.0;
    for k in 0..50 {
        let r = roots[2] + (roots[3] - roots[2]) * (k as f64 + 0.5) / 50.0;
        let sum: f64 = (0..4).map(|i| a[i] / (r - roots[i])).sum();
        partial_fraction = partial_fraction.max((sum - 1.0 / params.f(r)) * params.f(r));
    }
    suite.residual("partial_fractions", partial_fraction.abs(), 1e-9);

    let mut round_trip: f64 = 0.0;
    for k in 0..20 {
        let r = roots[2] + (roots[3] - roots[2]) * (k as f64 + 0.5) / 20.0;
        let back = map.r_of_r_star(map.r_star_of_r(r)?)?;
        round_trip = round_trip.max((back - r).abs() / r);
    }
    suite.residual("tortoise_round_trip", round_trip, 1e-10);

    let mut derivative_orders = Vec::new();
    for &r in &[2.2f64, 3.0, 5.0, 8.0] {
        let mut errors = Vec::new();
        for &h in &[1e-2, 5e-3] {
            let d = (map.r_star_of_r(r + h)? - map.r_star_of_r(r - h)?) / (2.0 * h);
            errors.push(((d - 1.0 / params.f(r)) * params.f(r)).abs());
        }
        derivative_orders.push((errors[0] / errors[1]).log2());
    }
    let mean_order = derivative_orders.iter().sum::<f64>() / derivative_orders.len() as f64;
    suite.range("tortoise_derivative_order", mean_order, 1.8, 2.2);

    let p2 = photon_sphere(&params)?;
    let (f_p2, fp_p2, _) = params.horizon_function(p2)?;
    suite.residual(
        "photon_sphere_orbit",
        (p2 * fp_p2 - 2.0 * f_p2).abs() / (p2 * fp_p2).abs(),
        1e-10,
    );

    let region = map.trapping_region()?;
    let mut sign_ok = region.left < 0.0 && region.right > 0.0;
    for k in 0..200 {
        let rs = -30.0 + 60.0 * k as f64 / 199.0;
        let t = map.trapping_term(rs)?;
        let inside = rs > region.left + 1e-6 && rs < region.right - 1e-6;
        let outside = rs < region.left - 1e-6 || rs > region.right + 1e-6;
        if (inside && t <= 0.0) || (outside && t >= 0.0) {
            sign_ok = false;
        }
    }
    suite.check("trapping_sign_structure", sign_ok, region.right - region.left, f64::INFINITY);

    let chi = map.chi_trap(0.05)?;
    let mut chi_ok = true;
    for k in 0..=1000 {
        let rs = region.left - 1.0 + (region.right - region.left + 2.0) * k as f64 / 1000.0;
        let t = map.trapping_term(rs)?;
        let value = chi.eval(rs);
        if value < 0.0 || (t > 0.0 && value < 2.0 * map.potential(rs, 0)? * t) {
            chi_ok = false;
        }
    }
    suite.check("chi_trap_dominates", chi_ok, 1.0, 1.0);

    let f_closure = |r: f64| params.f(r);
    let fp_closure = |r: f64| params.f_prime(r);
    let generic = generic_f_validate(
        &HorizonFnSpec {
            f: &f_closure,
            f_prime: &fp_closure,
            inner_root: Some(roots[1]),
            event_root: roots[2],
            cosmological_root: Some(roots[3]),
        },
        256,
    );
    suite.check("generic_horizon_conditions", generic.all_passed(), 1.0, 1.0);

    // Stress-energy algebra on seeded random samples.
    let mut rng = StdRng::seed_from_u64(7);
    let mut algebra: f64 = 0.0;
    let mut positivity = true;
    for _ in 0..1000 {
        let phi = [
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ];
        let r = rng.gen_range(0.5..15.0);
        let f = rng.gen_range(-0.5..1.0);
        let (t00, t01, t11) = stress_energy_components(phi[0], phi[1], phi[2], r, f)?;
        let (tll, tln, tnn) = stress_energy_null(phi[0], phi[1], phi[2], r, f)?;
        let scale = t00.abs().max(tll.abs()).max(1e-30);
        algebra = algebra.max((tll - (t00 + 2.0 * t01 + t11)).abs() / scale);
        algebra = algebra.max((tnn - (t00 - 2.0 * t01 + t11)).abs() / scale);
        algebra = algebra.max((tln - (t00 - t11)).abs() / scale);
        algebra = algebra.max((t00 - t11 - f / r.powi(4) * phi[1].norm_sqr()).abs() / scale);
        positivity &= tll >= 0.0 && tnn >= 0.0 && (f < 0.0 || tln >= 0.0);
    }
    suite.residual("stress_energy_algebra", algebra, 1e-14);
    suite.check("dominant_energy_condition", positivity, 1.0, 1.0);

    // Oracle self-tests.
    let factored = quartic_roots_companion([1.0, 0.0, -25.0, 60.0, -36.0])?;
    let oracle_roots = factored
        .iter()
        .zip([-6.0, 1.0, 2.0, 3.0])
        .map(|(z, want)| (z.re - want).abs().max(z.im.abs()))
        .fold(0.0f64, f64::max);
    suite.residual("oracle_quartic_factored", oracle_roots, 1e-10);

    let companion = quartic_roots_companion([
        -params.lambda,
        0.0,
        1.0,
        -2.0 * params.mass,
        params.charge * params.charge,
    ])?;
    let companion_match = companion
        .iter()
        .zip(roots)
        .map(|(z, r)| (z.re - r).abs() / r.abs().max(1.0))
        .fold(0.0f64, f64::max);
    suite.residual("oracle_quartic_matches_geometry", companion_match, 1e-9);

    let h = 0.01;
    let samples: Vec<f64> =
        (0..4001).map(|i| (-(-20.0 + h * i as f64).powi(2) / 2.0).exp()).collect();
    let dalembert = DalembertReference::new(-20.0, h, samples)?;
    suite.residual(
        "oracle_dalembert_initial",
        (dalembert.value(0.0, 1.3) - (-1.3f64 * 1.3 / 2.0).exp()).abs(),
        1e-9,
    );

    let quad = refined_quadrature(|x: f64| (-x * x).exp(), -20.0, 20.0, 512)?;
    suite.residual(
        "oracle_quadrature_gaussian",
        (quad.value - std::f64::consts::PI.sqrt()).abs(),
        1e-10,
    );

    // Deformation-tensor identities.
    let mut points = Vec::new();
    for _ in 0..60 {
        points.push(SpacetimePoint {
            t: rng.gen_range(0.5..10.0),
            r_star: rng.gen_range(-15.0..15.0),
            theta: rng.gen_range(0.4..std::f64::consts::PI - 0.4),
        });
    }
    let deformation = deformation_identity_check(&map, &points, 1e-3, 11)?;
    suite.residual("deformation_killing_time", deformation.max_killing_residual_time, 1e-8);
    suite.residual("deformation_identity_conformal", deformation.max_identity_residual, 1e-6);

    // Short evolution runs: conservation laws and trapping identities. The
    // configured trap offset perturbs the stored trapping term; the
    // identities must then fail, which is the point of the knob.
    let mut grid = Grid::from_geometry(&map, 50.0, 1001)?;
    if config.trap_offset != 0.0 {
        grid.perturb_trapping(config.trap_offset);
    }
    let mode = ModeIndex::new(1, 0)?;
    let profile = Profile::Gaussian { center: 0.0, width: 1.0, amplitude: 1.0 };
    let run_config = EvolutionConfig {
        dt_factor: 0.9,
        t_end: 15.0,
        record_every: 2,
        ..Default::default()
    };

    let wave_state = make_wave_state(mode, &grid, &profile, &Profile::Zero)?;
    let wave = evolve_wave(&wave_state, &grid, &run_config)?;
    let e0 = wave.records[0].energy;
    let wave_drift =
        wave.records.iter().map(|r| (r.energy - e0).abs() / e0).fold(0.0, f64::max);
    // h = 0.1 here; the conservation budget scales as 5(h/0.05)² 1e-4.
    suite.residual("wave_energy_conservation", wave_drift, 2e-3);
    suite.residual(
        "conformal_charge_identity",
        conformal_identity_residual(&wave)?.residual,
        1e-2,
    );
    let ec_dominates = wave
        .records
        .iter()
        .all(|r| r.conformal_charge >= r.energy * (1.0 - 1e-12));
    suite.check("conformal_charge_dominates_energy", ec_dominates, 1.0, 1.0);

    let maxwell_state = make_maxwell_state(mode, &grid, &profile, &Profile::Zero)?;
    let maxwell = evolve_maxwell(&maxwell_state, &grid, &run_config)?;
    let et0 = maxwell.records[0].maxwell_energy;
    let maxwell_drift = maxwell
        .records
        .iter()
        .map(|r| (r.maxwell_energy - et0).abs() / et0)
        .fold(0.0, f64::max);
    suite.residual("maxwell_energy_conservation", maxwell_drift, 2e-3);
    suite.residual(
        "trapping_lemma_identity",
        trapping_identity_residual(&maxwell)?.residual,
        4e-2,
    );
    let max_constraint = maxwell
        .records
        .iter()
        .map(|r| r.constraint_norm)
        .fold(0.0f64, f64::max);
    suite.residual("constraint_norm", max_constraint, 1e-2);

    // Cross-solver agreement of the middle component.
    let mut diff_sq = 0.0;
    let wave_final = wave.states.last().expect("records exist");
    let maxwell_final = maxwell.states.last().expect("records exist");
    for i in 0..grid.n_points() {
        diff_sq += (wave_final.u[i] - maxwell_final.psi_zero[i]).norm_sqr() * grid.spacing();
    }
    suite.residual("cross_solver_consistency", diff_sq.sqrt(), 5e-2);

    // Flat-space transport against the d'Alembert reference.
    let flat = Grid::flat(30.0, 601)?;
    let flat_state = make_wave_state(mode, &flat, &profile, &Profile::Zero)?;
    let flat_config = EvolutionConfig {
        dt_factor: 0.9,
        t_end: 20.0,
        record_every: 100,
        ..Default::default()
    };
    let flat_run = evolve_wave(&flat_state, &flat, &flat_config)?;
    let flat_samples: Vec<f64> = flat.r_star().iter().map(|&x| profile.eval(x)).collect();
    let oracle = DalembertReference::new(-30.0, flat.spacing(), flat_samples)?;
    let last = flat_run.states.last().expect("records exist");
    let mut err_sq = 0.0;
    for (i, &rs) in flat.r_star().iter().enumerate() {
        err_sq += (last.u[i].re - oracle.value(last.time, rs)).powi(2) * flat.spacing();
    }
    suite.residual("flat_space_oracle", err_sq.sqrt(), 5e-3);

    for line in &suite.lines {
        println!("{line}");
    }
    match suite.failed {
        None => {
            println!("check: all {} invariants passed", suite.lines.len());
            Ok(0)
        }
        Some(name) => {
            println!("check: FAILED at invariant `{name}`");
            Ok(3)
        }
    }
}
