mod common;

use common::{cabs, gauss_legendre, psi};
use matrixwell_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn velocity_is_momentum_over_mass() {
    let cfg = WellConfig::new(1.2, 1.7, 0.9, 40).unwrap();
    let x = build_position(&cfg);
    let p = build_momentum(&cfg);
    // exact time derivative of the evolved entries at t = 0
    let v = OperatorMatrix::from_fn(40, |k, l| {
        Complex64::new(0.0, cfg.frequency_gap(k, l)) * x.entry(k, l)
    });
    let pm = p.scale(Complex64::new(1.0 / cfg.mass(), 0.0));
    assert!(v.max_abs_diff(&pm).unwrap() < 1e-12 * pm.max_abs());
}

#[test]
fn hamiltonian_derivative_recovers_velocity() {
    let cfg = WellConfig::natural(30).unwrap();
    let p = build_momentum(&cfg);
    let m = cfg.mass();
    let h_of = |q: &OperatorMatrix| q.mul(q).map(|q2| q2.scale(Complex64::new(0.5 / m, 0.0)));
    let eps = [1e-1, 5e-2, 2.5e-2, 1.25e-2];
    let d = hamilton_derivative(h_of, &p, &eps).unwrap();
    let want = p.scale(Complex64::new(1.0 / m, 0.0));
    assert!(d.max_abs_diff(&want).unwrap() < 1e-10 * want.max_abs());
}

#[test]
fn second_order_coefficient_is_half_the_acceleration() {
    let cfg = WellConfig::natural(40).unwrap();
    let x = build_position(&cfg);
    let f = force_matrix(&cfg, 0.0).unwrap();
    let w = |k: usize, l: usize| cfg.frequency_gap(k, l);
    // d²x_kl/dt² at 0 is −(ω_k − ω_l)² x_kl, and the force matrix holds dV/dx
    for k in 1..=10 {
        for l in 1..=10 {
            let acc = -w(k, l).powi(2) * x.entry(k, l);
            let want = -f.entry(k, l) / cfg.mass();
            assert!(cabs(acc - want) < 1e-9 * cabs(want).max(1.0));
        }
    }
}

#[test]
fn short_time_residual_orders() {
    let cfg = WellConfig::natural(200).unwrap();
    let block = InteriorBlockSpec::new(10).unwrap();
    let a = short_time_expansion_check(&cfg, 1e-3, block).unwrap();
    let b = short_time_expansion_check(&cfg, 5e-4, block).unwrap();
    let r1 = b.first_order / a.first_order;
    let r2 = b.second_order / a.second_order;
    assert!((r1 - 0.25).abs() < 0.05, "{r1}");
    assert!((r2 - 0.125).abs() < 0.03, "{r2}");
}

#[test]
fn ehrenfest_residuals_are_second_order() {
    let cfg = WellConfig::natural(40).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = common::random_state(&mut rng, 40, 5);
    let coarse = ehrenfest_report(&s, &cfg, &TimeGrid::new(0.0, 0.2, 21).unwrap()).unwrap();
    let fine = ehrenfest_report(&s, &cfg, &TimeGrid::new(0.0, 0.2, 41).unwrap()).unwrap();
    for (c, f) in coarse.rows.iter().zip(fine.rows.iter().step_by(2)) {
        assert_eq!(c.t, f.t);
        if c.ehrenfest_residual_x > 1e-9 {
            let r = f.ehrenfest_residual_x / c.ehrenfest_residual_x;
            assert!((0.2..0.3).contains(&r), "t={} ratio {r}", c.t);
        }
    }
}

#[test]
fn spread_returns_after_revival() {
    let cfg = WellConfig::natural(100).unwrap();
    let s = gaussian_packet(&cfg, 0.5, 0.05, 0.0).unwrap();
    let tr = revival_time(&cfg);
    assert!((tr - 4.0 / PI).abs() < 1e-15);
    let r = spread_report(&s, &cfg, &TimeGrid::new(0.0, tr, 8).unwrap()).unwrap();
    let last = r.rows.last().unwrap();
    assert!((last.dx - r.dx0).abs() < 1e-10);
    assert!((last.mean_x - r.rows[0].mean_x).abs() < 1e-10);
    let x = evolve(&build_position(&cfg), &cfg, tr).unwrap();
    assert!(x.max_abs_diff(&build_position(&cfg)).unwrap() < 1e-12);
}

#[test]
fn packet_spreads_like_a_free_particle_at_first() {
    let cfg = WellConfig::natural(200).unwrap();
    let s = gaussian_packet(&cfg, 0.5, 0.05, 0.0).unwrap();
    let dp = dispersion(&s, &build_momentum(&cfg)).unwrap();
    // ⟨|p|⟩ ≤ Δp for a zero-mean packet, so this keeps the travel below 1% of L
    let dt = 0.01 * cfg.width() * cfg.mass() / dp;
    let r = spread_report(&s, &cfg, &TimeGrid::new(0.0, dt, 10).unwrap()).unwrap();
    for row in &r.rows {
        assert!(row.dx >= row.robertson_bound - 1e-9);
        let free = (r.dx0.powi(2) + (row.t * dp / cfg.mass()).powi(2)).sqrt();
        assert!((row.dx - free).abs() < 1e-3 * free, "t={}", row.t);
    }
}

#[test]
fn x_commutator_at_short_times() {
    let cfg = WellConfig::natural(200).unwrap();
    let c = xt_x0_commutator(&cfg, 1e-4).unwrap();
    let target = Complex64::new(0.0, -1e-4);
    for k in 1..=10 {
        for l in 1..=10 {
            let want = if k == l { target } else { Complex64::new(0.0, 0.0) };
            assert!(cabs(c.entry(k, l) - want) < 1e-4 * 1e-4 * 100.0, "({k},{l})");
        }
    }
}

#[test]
fn stationary_state_mean_position() {
    let cfg = WellConfig::new(2.0, 1.0, 1.0, 10).unwrap();
    for n in 1..=10 {
        let s = StateVector::eigenstate(&cfg, n).unwrap();
        let quad = gauss_legendre(|y| y * psi(2.0, n, y).powi(2), 0.0, 2.0, 100);
        let mean = expectation(&s, &build_position(&cfg)).unwrap();
        assert!((mean.re - quad).abs() < 1e-12 && mean.im == 0.0);
    }
}
