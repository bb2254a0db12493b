//! States, expectation values and the time-series reports built on the
//! Heisenberg-picture operators.
//!
//! States never evolve here. Every time dependence comes from evolving the
//! operator with [`evolve`].

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::operator::{build_momentum, build_position, evolve, phase_factor, OperatorMatrix};
use crate::quadrature::{integrate, integrate_complex, Tolerance};
use crate::well::{mode_function, WellConfig};
use crate::{Complex64, Error, InteriorBlockSpec, Result};

/// Fraction of the packet norm the truncated basis must capture.
pub const NORM_CAPTURE: f64 = 0.999;

/// Slack allowed on uncertainty bounds in reports.
pub const BOUND_SLACK: f64 = 1e-9;

/// Coefficients `a_n` of `Ψ = Σ a_n Ψ_n`, normalized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    coeffs: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `coeffs`. Fails on a zero or non-finite vector.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter {
                name: "state",
                reason: "non-finite coefficient".into(),
            });
        }
        let norm = libm::sqrt(coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm == 0.0 {
            return Err(Error::InvalidParameter {
                name: "state",
                reason: "zero vector cannot be normalized".into(),
            });
        }
        Ok(StateVector {
            coeffs: coeffs.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// The stationary state `Ψ_n`.
    pub fn eigenstate(cfg: &WellConfig, n: usize) -> Result<Self> {
        let n = cfg.mode(n)?.get();
        let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); cfg.dim()];
        coeffs[n - 1] = Complex64::new(1.0, 0.0);
        Ok(StateVector { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Raw overlaps `∫₀^L Ψ_n(x) f(x) dx` for `n = 1..=N`, integrated over
/// `[lo, hi]` (the caller guarantees `f` vanishes outside it).
pub fn project_function<F: Fn(f64) -> Complex64>(
    cfg: &WellConfig,
    f: F,
    lo: f64,
    hi: f64,
) -> Result<Vec<Complex64>> {
    let tol = Tolerance {
        abs: 1e-14,
        rel: 1e-12,
        ..Tolerance::default()
    };
    (1..=cfg.dim())
        .map(|n| integrate_complex(|x| f(x) * mode_function(cfg, n, x), lo, hi, tol))
        .collect()
}

/// Gaussian wave packet `exp(−(x−c)²/(4σ²))·exp(i p₀ x/ħ)` projected onto the
/// retained modes, where `σ = width` is the position spread of `|ψ|²`.
///
/// Fails with [`Error::InsufficientModes`] when the modes keep less than
/// [`NORM_CAPTURE`] of the envelope norm.
pub fn gaussian_packet(
    cfg: &WellConfig,
    center: f64,
    width: f64,
    mean_momentum: f64,
) -> Result<StateVector> {
    let l = cfg.width();
    if !(center > 0.0 && center < l) {
        return Err(Error::InvalidParameter {
            name: "center",
            reason: format!("must lie strictly inside (0, {l})"),
        });
    }
    if !(width > 0.0 && width < l / 4.0) {
        return Err(Error::InvalidParameter {
            name: "width",
            reason: format!("must lie in (0, {})", l / 4.0),
        });
    }
    if !mean_momentum.is_finite() {
        return Err(Error::InvalidParameter {
            name: "mean_momentum",
            reason: "must be finite".into(),
        });
    }
    let k0 = mean_momentum / cfg.hbar();
    let envelope = |x: f64| libm::exp(-(x - center) * (x - center) / (4.0 * width * width));
    let packet = |x: f64| {
        let theta = k0 * x;
        Complex64::new(libm::cos(theta), libm::sin(theta)) * envelope(x)
    };
    // the envelope is below 1e-30 beyond 12 widths
    let lo = (center - 12.0 * width).max(0.0);
    let hi = (center + 12.0 * width).min(l);
    let coeffs = project_function(cfg, packet, lo, hi)?;
    let total = integrate(|x| envelope(x) * envelope(x), lo, hi, Tolerance::default())?.value;
    let captured = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>() / total;
    if captured < NORM_CAPTURE {
        return Err(Error::InsufficientModes {
            captured,
            required: NORM_CAPTURE,
        });
    }
    StateVector::from_coeffs(coeffs)
}

fn check_state(state: &StateVector, dim: usize) -> Result<()> {
    if state.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: dim,
        });
    }
    Ok(())
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨O⟩ = Σ_kl a_k* a_l O_kl`.
pub fn expectation(state: &StateVector, op: &OperatorMatrix) -> Result<Complex64> {
    check_state(state, op.dim())?;
    Ok(dot(&state.coeffs, &op.apply(&state.coeffs)?))
}

/// Mean and variance of a Hermitian operator from `v = O a`.
///
/// The variance is `‖v − ⟨O⟩a‖²`, which equals `⟨O²⟩ − ⟨O⟩²` with the
/// truncated matrix square; the uncentred form is kept as a consistency check.
fn moments(state: &StateVector, op: &OperatorMatrix) -> Result<(f64, f64, Vec<Complex64>)> {
    let v = op.apply(&state.coeffs)?;
    let mean = dot(&state.coeffs, &v).re;
    let second: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let raw = second - mean * mean;
    if raw < -1e-12 * second.max(1.0) {
        return Err(Error::NegativeVariance(raw));
    }
    let var = v
        .iter()
        .zip(&state.coeffs)
        .map(|(&vi, &ai)| (vi - ai * mean).norm_sqr())
        .sum();
    Ok((mean, var, v))
}

/// `ΔO = √(⟨O²⟩ − ⟨O⟩²)` for Hermitian `O`.
pub fn dispersion(state: &StateVector, op: &OperatorMatrix) -> Result<f64> {
    check_state(state, op.dim())?;
    if !op.is_hermitian(1e-10) {
        return Err(Error::InvalidParameter {
            name: "op",
            reason: "dispersion needs a Hermitian operator".into(),
        });
    }
    Ok(libm::sqrt(moments(state, op)?.1))
}

/// Force matrix `(dV/dx)_kl(t) = −dp_kl(t)/dt = −i(ω_k−ω_l)·p_kl·e^{i(ω_k−ω_l)t}`.
pub fn force_matrix(cfg: &WellConfig, t: f64) -> Result<OperatorMatrix> {
    let p = build_momentum(cfg);
    let static_force = OperatorMatrix::from_fn(cfg.dim(), |k, l| {
        p.entry(k, l) * Complex64::new(0.0, -cfg.frequency_gap(k, l))
    });
    evolve(&static_force, cfg, t)
}

/// `t_r = 4mL²/(ħπ)`, after which every phase `(ω_k−ω_l)t_r` is a multiple of `2π`.
pub fn revival_time(cfg: &WellConfig) -> f64 {
    4.0 * cfg.mass() * cfg.width() * cfg.width() / (cfg.hbar() * PI)
}

/// `[x(t), x(0)]`.
pub fn xt_x0_commutator(cfg: &WellConfig, t: f64) -> Result<OperatorMatrix> {
    let x = build_position(cfg);
    let xt = evolve(&x, cfg, t)?;
    let out = xt.mul(&x)?.sub(&x.mul(&xt)?)?;
    Ok(out)
}

/// Uniform grid of `steps` points from `t_start` to `t_end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite() && t_start < t_end) {
            return Err(Error::InvalidParameter {
                name: "time grid",
                reason: format!("need finite t_start < t_end, got {t_start}..{t_end}"),
            });
        }
        if steps < 2 {
            return Err(Error::InvalidParameter {
                name: "steps",
                reason: "need at least two grid points".into(),
            });
        }
        Ok(TimeGrid {
            t_start,
            t_end,
            steps,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.steps - 1) as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (0..self.steps).map(move |i| {
            if i + 1 == self.steps {
                self.t_end
            } else {
                self.t_start + i as f64 * h
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Spread,
    Ehrenfest,
}

/// One time sample. Field order is the CSV column order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub t: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub dx: f64,
    pub dp: f64,
    /// `|⟨[x(t), x(0)]⟩| / 2`.
    pub robertson_bound: f64,
    /// `|d⟨x⟩/dt − ⟨p⟩/m|` with a central difference of the grid spacing.
    pub ehrenfest_residual_x: f64,
    /// `|d⟨p⟩/dt + ⟨dV/dx⟩|`.
    pub ehrenfest_residual_p: f64,
    /// Free-particle value `ħ|t|/(2m)`.
    pub free_particle_bound: f64,
}

impl ReportRow {
    pub const COLUMNS: [&'static str; 9] = [
        "t",
        "mean_x",
        "mean_p",
        "dx",
        "dp",
        "robertson_bound",
        "ehrenfest_residual_x",
        "ehrenfest_residual_p",
        "free_particle_bound",
    ];

    pub fn values(&self) -> [f64; 9] {
        [
            self.t,
            self.mean_x,
            self.mean_p,
            self.dx,
            self.dp,
            self.robertson_bound,
            self.ehrenfest_residual_x,
            self.ehrenfest_residual_p,
            self.free_particle_bound,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub kind: ReportKind,
    /// `Δx(0)`.
    pub dx0: f64,
    pub rows: Vec<ReportRow>,
}

impl RunReport {
    pub fn max_residual_x(&self) -> f64 {
        self.rows.iter().map(|r| r.ehrenfest_residual_x).fold(0.0, f64::max)
    }

    pub fn max_residual_p(&self) -> f64 {
        self.rows.iter().map(|r| r.ehrenfest_residual_p).fold(0.0, f64::max)
    }
}

/// Fixed operators and state-dependent vectors shared by every row.
struct Sampler<'a> {
    cfg: &'a WellConfig,
    state: &'a StateVector,
    x: OperatorMatrix,
    p: OperatorMatrix,
    force: OperatorMatrix,
    x0_state: Vec<Complex64>,
}

impl<'a> Sampler<'a> {
    fn new(cfg: &'a WellConfig, state: &'a StateVector) -> Result<Self> {
        check_state(state, cfg.dim())?;
        let x = build_position(cfg);
        let x0_state = x.apply(state.coeffs())?;
        Ok(Sampler {
            cfg,
            state,
            p: build_momentum(cfg),
            force: force_matrix(cfg, 0.0)?,
            x,
            x0_state,
        })
    }

    fn mean(&self, op: &OperatorMatrix, t: f64) -> Result<f64> {
        Ok(expectation(self.state, &evolve(op, self.cfg, t)?)?.re)
    }

    fn row(&self, t: f64, h: f64) -> Result<ReportRow> {
        let m = self.cfg.mass();
        let xt = evolve(&self.x, self.cfg, t)?;
        let pt = evolve(&self.p, self.cfg, t)?;
        let (mean_x, var_x, xt_state) = moments(self.state, &xt)?;
        let (mean_p, var_p, _) = moments(self.state, &pt)?;
        // ⟨[x(t), x(0)]⟩ = 2i·Im⟨x(t)a, x(0)a⟩
        let robertson_bound = libm::fabs(dot(&xt_state, &self.x0_state).im);

        let dxdt = (self.mean(&self.x, t + h)? - self.mean(&self.x, t - h)?) / (2.0 * h);
        let dpdt = (self.mean(&self.p, t + h)? - self.mean(&self.p, t - h)?) / (2.0 * h);
        let mean_force = self.mean(&self.force, t)?;

        Ok(ReportRow {
            t,
            mean_x,
            mean_p,
            dx: libm::sqrt(var_x),
            dp: libm::sqrt(var_p),
            robertson_bound,
            ehrenfest_residual_x: libm::fabs(dxdt - mean_p / m),
            ehrenfest_residual_p: libm::fabs(dpdt + mean_force),
            free_particle_bound: self.cfg.hbar() * libm::fabs(t) / (2.0 * m),
        })
    }

    fn report(&self, grid: &TimeGrid, kind: ReportKind) -> Result<RunReport> {
        let dx0 = libm::sqrt(moments(self.state, &self.x)?.1);
        let h = grid.spacing();
        let hbar = self.cfg.hbar();
        let mut rows = Vec::with_capacity(grid.steps());
        for t in grid.times() {
            let row = self.row(t, h)?;
            if row.dx * row.dp < 0.5 * hbar - BOUND_SLACK {
                return Err(Error::InvariantViolation(format!(
                    "dx*dp = {:e} below hbar/2 at t = {t}; increase N",
                    row.dx * row.dp
                )));
            }
            if row.dx * dx0 < row.robertson_bound - BOUND_SLACK {
                return Err(Error::InvariantViolation(format!(
                    "dx(t)*dx(0) = {:e} below |<[x(t),x(0)]>|/2 = {:e} at t = {t}",
                    row.dx * dx0,
                    row.robertson_bound
                )));
            }
            rows.push(row);
        }
        Ok(RunReport { kind, dx0, rows })
    }
}

/// Position spread over `grid`: `Δx(t)`, `Δx(0)`, the Robertson bound
/// `|⟨[x(t),x(0)]⟩|/2` and the free-particle value `ħt/2m`.
///
/// Fails if `Δx(t)·Δx(0)` drops below the Robertson bound, or `Δx·Δp`
/// below `ħ/2`, by more than [`BOUND_SLACK`] at any sample.
pub fn spread_report(state: &StateVector, cfg: &WellConfig, grid: &TimeGrid) -> Result<RunReport> {
    Sampler::new(cfg, state)?.report(grid, ReportKind::Spread)
}

/// Ehrenfest residuals `|d⟨x⟩/dt − ⟨p⟩/m|` and `|d⟨p⟩/dt + ⟨dV/dx⟩|`, with
/// derivatives taken by central differences of width equal to the grid
/// spacing, so the residuals are `O(h²)`.
pub fn ehrenfest_report(
    state: &StateVector,
    cfg: &WellConfig,
    grid: &TimeGrid,
) -> Result<RunReport> {
    Sampler::new(cfg, state)?.report(grid, ReportKind::Ehrenfest)
}

/// Frobenius norms on the interior block of the first- and second-order
/// Taylor remainders of `x(δt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeResiduals {
    pub dt: f64,
    /// `‖x(δt) − x(0) − (p/m)δt‖`, `O(δt²)`.
    pub first_order: f64,
    /// `‖x(δt) − x(0) − (p/m)δt + (1/2m)(dV/dx)δt²‖`, `O(δt³)`.
    pub second_order: f64,
}

pub fn short_time_expansion_check(
    cfg: &WellConfig,
    dt: f64,
    block: InteriorBlockSpec,
) -> Result<ShortTimeResiduals> {
    if !(dt.is_finite() && dt >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: "must be finite and non-negative".into(),
        });
    }
    block.validate(cfg.dim())?;
    let b = block.max_index();
    let m = cfg.mass();
    let w1 = cfg.base_frequency();
    let mut first = 0.0;
    let mut second = 0.0;
    for k in 1..=b {
        for l in 1..=b {
            let x = crate::well::position_value(cfg, k, l);
            let p = crate::well::momentum_value(cfg, k, l);
            let gap = crate::well::square_gap(k, l) as f64 * w1;
            let force = p * Complex64::new(0.0, -gap);
            let xt = if k == l {
                Complex64::new(x, 0.0)
            } else {
                Complex64::new(x, 0.0) * phase_factor(cfg.phase(k, l, dt))
            };
            let r1 = xt - x - p * (dt / m);
            let r2 = r1 + force * (dt * dt / (2.0 * m));
            first += r1.norm_sqr();
            second += r2.norm_sqr();
        }
    }
    Ok(ShortTimeResiduals {
        dt,
        first_order: libm::sqrt(first),
        second_order: libm::sqrt(second),
    })
}
