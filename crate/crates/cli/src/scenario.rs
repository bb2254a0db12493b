//! One function per scenario, each turning validated parameters into a
//! [`Report`].

use matrixwell_core::fock::number_operator;
use matrixwell_core::{
    build_momentum, build_position, canonical_commutator_report, check_algebra, condensate_state,
    density_expectation, dispersion, ehrenfest_report, evolve, expectation, fock,
    gaussian_packet, position_element, momentum_element, revival_time, spread_report,
    Complex64, FockState, InteriorBlockSpec, ReportRow, RunReport, StateVector, TimeGrid,
    WellConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ParticleKind, Params, Scenario, StateSpec};
use crate::report::Report;

pub fn execute(params: &Params) -> matrixwell_core::Result<Report> {
    match params.scenario {
        Scenario::Elements => elements(params),
        Scenario::Commutator => commutator(params),
        Scenario::Evolve => evolve_matrices(params),
        Scenario::Spread | Scenario::Ehrenfest => trajectory(params),
        Scenario::Revival => revival(params),
        Scenario::FockDensity => fock_density(params),
        Scenario::FockAlgebra => fock_algebra(params),
    }
}

pub fn build_state(spec: &StateSpec, cfg: &WellConfig) -> matrixwell_core::Result<StateVector> {
    let n = cfg.dim();
    match spec {
        StateSpec::Eigen { n: k } => StateVector::eigenstate(cfg, *k),
        StateSpec::Superpose { modes } => {
            let mut c = vec![Complex64::new(0.0, 0.0); n];
            for &k in modes {
                c[k - 1] += 1.0;
            }
            StateVector::from_coeffs(c)
        }
        StateSpec::Packet {
            center,
            width,
            momentum,
        } => gaussian_packet(cfg, *center, *width, *momentum),
        StateSpec::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut c = vec![Complex64::new(0.0, 0.0); n];
            for z in c.iter_mut().take(*count) {
                *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            StateVector::from_coeffs(c)
        }
    }
}

fn grid(params: &Params) -> matrixwell_core::Result<TimeGrid> {
    TimeGrid::new(params.t_start, params.t_end, params.steps)
}

fn elements(params: &Params) -> matrixwell_core::Result<Report> {
    let cfg = params.well();
    let mut r = Report::new(params.clone(), &["k", "l", "x", "p_imag"]);
    for k in 1..=cfg.dim() {
        for l in 1..=cfg.dim() {
            let (mk, ml) = (cfg.mode(k)?, cfg.mode(l)?);
            r.push_row(vec![
                k as f64,
                l as f64,
                position_element(&cfg, mk, ml),
                momentum_element(&cfg, mk, ml).im,
            ]);
        }
    }
    Ok(r)
}

fn commutator(params: &Params) -> matrixwell_core::Result<Report> {
    let cfg = params.well();
    let block = match params.block {
        Some(b) => InteriorBlockSpec::new(b)?,
        None => InteriorBlockSpec::quarter(&cfg)?,
    };
    let c = canonical_commutator_report(&cfg, block)?;
    let mut r = Report::new(params.clone(), &["k", "diag_re", "diag_im"]);
    for (i, z) in c.diagonal.iter().enumerate() {
        r.push_row(vec![(i + 1) as f64, z.re, z.im]);
    }
    r.diagnose("block", block.max_index());
    r.diagnose("interior_deviation", c.interior_deviation);
    r.diagnose("edge_deviation", c.edge_deviation);
    r.diagnose("trace_re", c.trace.re);
    r.diagnose("trace_im", c.trace.im);
    Ok(r)
}

fn evolve_matrices(params: &Params) -> matrixwell_core::Result<Report> {
    let cfg = params.well();
    let t = params.t_end;
    let x = evolve(&build_position(&cfg), &cfg, t)?;
    let p = evolve(&build_momentum(&cfg), &cfg, t)?;
    let b = params.block.unwrap_or(cfg.dim());
    let mut r = Report::new(params.clone(), &["k", "l", "x_re", "x_im", "p_re", "p_im"]);
    for k in 1..=b {
        for l in 1..=b {
            let (xe, pe) = (x.entry(k, l), p.entry(k, l));
            r.push_row(vec![k as f64, l as f64, xe.re, xe.im, pe.re, pe.im]);
        }
    }
    r.diagnose("t", t);
    r.diagnose("x_hermiticity_defect", x.hermiticity_defect());
    r.diagnose("p_hermiticity_defect", p.hermiticity_defect());
    r.diagnose("x_frobenius", x.frobenius_norm());
    Ok(r)
}

fn trajectory(params: &Params) -> matrixwell_core::Result<Report> {
    let cfg = params.well();
    let state = build_state(params.state.as_ref().expect("validated"), &cfg)?;
    let grid = grid(params)?;
    let run: RunReport = match params.scenario {
        Scenario::Spread => spread_report(&state, &cfg, &grid)?,
        _ => ehrenfest_report(&state, &cfg, &grid)?,
    };
    let mut r = Report::new(params.clone(), &ReportRow::COLUMNS);
    for row in &run.rows {
        r.push_row(row.values().to_vec());
    }
    r.diagnose("dx0", run.dx0);
    r.diagnose("spacing", grid.spacing());
    r.diagnose("max_residual_x", run.max_residual_x());
    r.diagnose("max_residual_p", run.max_residual_p());
    let margin = run
        .rows
        .iter()
        .map(|row| row.dx * run.dx0 - row.robertson_bound)
        .fold(f64::INFINITY, f64::min);
    r.diagnose("min_robertson_margin", margin);
    let product = run
        .rows
        .iter()
        .map(|row| row.dx * row.dp)
        .fold(f64::INFINITY, f64::min);
    r.diagnose("min_uncertainty_product", product);
    Ok(r)
}

fn revival(params: &Params) -> matrixwell_core::Result<Report> {
    let cfg = params.well();
    let state = build_state(params.state.as_ref().expect("validated"), &cfg)?;
    let tr = revival_time(&cfg);
    let x0 = build_position(&cfg);
    let p0 = build_momentum(&cfg);
    let xt = evolve(&x0, &cfg, tr)?;
    let pt = evolve(&p0, &cfg, tr)?;
    let dx0 = dispersion(&state, &x0)?;
    let dxt = dispersion(&state, &xt)?;
    let mut r = Report::new(
        params.clone(),
        &["t", "mean_x", "mean_p", "dx", "dp"],
    );
    for (t, x, p) in [(0.0, &x0, &p0), (tr, &xt, &pt)] {
        r.push_row(vec![
            t,
            expectation(&state, x)?.re,
            expectation(&state, p)?.re,
            dispersion(&state, x)?,
            dispersion(&state, p)?,
        ]);
    }
    r.diagnose("t_r", tr);
    r.diagnose("dx0", dx0);
    r.diagnose("dx_tr", dxt);
    r.diagnose("max_x_deviation", xt.max_abs_diff(&x0)?);
    r.diagnose("max_p_deviation", pt.max_abs_diff(&p0)?);
    Ok(r)
}

fn fock_state(params: &Params) -> matrixwell_core::Result<FockState> {
    let basis = params.fock_basis();
    match params.statistics {
        ParticleKind::Boson => condensate_state(&basis, params.particles),
        ParticleKind::Fermion => {
            let occ: Vec<u8> = (0..params.modes)
                .map(|i| u8::from(i < params.particles))
                .collect();
            FockState::basis_state(&basis, &occ)
        }
    }
}

fn fock_density(params: &Params) -> matrixwell_core::Result<Report> {
    let cfg = params.well();
    let basis = params.fock_basis();
    let state = fock_state(params)?;
    let grid = grid(params)?;
    let mut r = Report::new(params.clone(), &["t", "x", "density"]);
    for t in grid.times() {
        for x in params.positions.points(params.width) {
            r.push_row(vec![t, x, density_expectation(&state, &cfg, &basis, x, t)?]);
        }
    }
    let number = (1..=basis.modes())
        .map(|n| number_operator(&basis, n))
        .collect::<matrixwell_core::Result<Vec<_>>>()?
        .iter()
        .map(|op| op.expectation(&state).map(|z| z.re))
        .sum::<matrixwell_core::Result<f64>>()?;
    r.diagnose("particles", number);
    r.diagnose(
        "integrated_density_start",
        fock::integrated_density(&state, &cfg, &basis, grid.t_start())?,
    );
    r.diagnose(
        "integrated_density_end",
        fock::integrated_density(&state, &cfg, &basis, grid.t_end())?,
    );
    Ok(r)
}

fn fock_algebra(params: &Params) -> matrixwell_core::Result<Report> {
    let basis = params.fock_basis();
    let a = check_algebra(&basis)?;
    let mut r = Report::new(
        params.clone(),
        &["n", "m", "annihilator_defect", "mixed_defect"],
    );
    for pair in &a.pairs {
        r.push_row(vec![
            pair.n as f64,
            pair.m as f64,
            pair.annihilator_defect,
            pair.mixed_defect,
        ]);
    }
    r.diagnose("dim", basis.dim());
    r.diagnose("max_defect", a.max_defect);
    r.diagnose("cross_mode_defect", a.cross_mode_defect);
    if let Some(b) = a.boundary_defect {
        r.diagnose("boundary_defect", b);
    }
    r.diagnose("boundary_confined", a.boundary_confined);
    r.diagnose("rounding_floor", a.rounding_floor);
    r.diagnose("holds", a.holds());
    Ok(r)
}
