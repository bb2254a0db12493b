//! Dense complex operator matrices in the energy eigenbasis.
//!
//! Storage is row-major and 0-based internally; every public accessor takes
//! 1-based mode indices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use crate::well::{self, WellConfig};
use crate::{Complex64, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    EnergyEigenbasis,
}

/// An `N x N` complex matrix, optionally stamped with the Heisenberg time it
/// represents (`None` means the static, `t = 0` operator).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    basis: Basis,
    time: Option<f64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            entries: vec![ZERO; dim * dim],
            basis: Basis::EnergyEigenbasis,
            time: None,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |k, l| if k == l { ONE } else { ZERO })
    }

    /// Builds a matrix from `f(k, l)` with 1-based indices.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(dim: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for k in 1..=dim {
            for l in 1..=dim {
                entries.push(f(k, l));
            }
        }
        OperatorMatrix {
            dim,
            entries,
            basis: Basis::EnergyEigenbasis,
            time: None,
        }
    }

    /// Wraps row-major entries, rejecting wrong lengths and non-finite values.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter {
                name: "entries",
                reason: "non-finite matrix entry".into(),
            });
        }
        Ok(OperatorMatrix {
            dim,
            entries,
            basis: Basis::EnergyEigenbasis,
            time: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn time(&self) -> Option<f64> {
        self.time
    }

    pub(crate) fn with_time(mut self, time: Option<f64>) -> Self {
        self.time = time;
        self
    }

    /// Entry `(k, l)` with 1-based indices.
    ///
    /// Panics if an index is outside `1..=dim`.
    pub fn entry(&self, k: usize, l: usize) -> Complex64 {
        assert!(
            (1..=self.dim).contains(&k) && (1..=self.dim).contains(&l),
            "index ({k}, {l}) outside 1..={}",
            self.dim
        );
        self.entries[(k - 1) * self.dim + (l - 1)]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(OperatorMatrix {
            dim: self.dim,
            entries,
            basis: self.basis,
            time: merged_time(self.time, other.time),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        OperatorMatrix {
            entries: self.entries.iter().map(|&z| z * factor).collect(),
            ..self.clone()
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.at(i, k);
                if a == ZERO {
                    continue;
                }
                let other_row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        Ok(OperatorMatrix {
            dim: n,
            entries: out,
            basis: self.basis,
            time: merged_time(self.time, other.time),
        })
    }

    /// Single entry `(self · other)_kl`, 1-based.
    pub fn product_entry(&self, other: &Self, k: usize, l: usize) -> Result<Complex64> {
        self.check_dim(other)?;
        let (i, j) = (k - 1, l - 1);
        Ok((0..self.dim).map(|m| self.at(i, m) * other.at(m, j)).sum())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                self.entries[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.at(j, i).conj());
            }
        }
        OperatorMatrix {
            entries,
            ..self.clone()
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| libm::hypot(z.re, z.im)).fold(0.0, f64::max)
    }

    /// `max |a_kl − b_kl|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                let d = a - b;
                libm::hypot(d.re, d.im)
            })
            .fold(0.0, f64::max))
    }

    /// `max |A − A†| / max |A|` (zero for the zero matrix).
    pub fn hermiticity_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = self.at(i, j) - self.at(j, i).conj();
                worst = worst.max(libm::hypot(d.re, d.im));
            }
        }
        worst / scale
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermiticity_defect() <= rel_tol
    }

    /// Leading `size x size` block as a new matrix.
    pub fn leading_block(&self, size: usize) -> Self {
        let size = size.min(self.dim);
        OperatorMatrix::from_fn(size, |k, l| self.entry(k, l)).with_time(self.time)
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    /// Panics on mismatched dimensions; use [`OperatorMatrix::add`] for a `Result`.
    fn add(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix::add(self, rhs).expect("dimension mismatch")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix::sub(self, rhs).expect("dimension mismatch")
    }
}

fn merged_time(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    if a == b {
        a
    } else {
        None
    }
}

/// `x_kl`, real symmetric with `L/2` on the diagonal.
pub fn build_position(cfg: &WellConfig) -> OperatorMatrix {
    OperatorMatrix::from_fn(cfg.dim(), |k, l| Complex64::new(well::position_value(cfg, k, l), 0.0))
}

/// `p_kl`, Hermitian and purely imaginary with a zero diagonal.
pub fn build_momentum(cfg: &WellConfig) -> OperatorMatrix {
    OperatorMatrix::from_fn(cfg.dim(), |k, l| well::momentum_value(cfg, k, l))
}

/// `diag(E_1, …, E_N)`.
pub fn build_hamiltonian(cfg: &WellConfig) -> OperatorMatrix {
    let w1 = cfg.base_frequency();
    OperatorMatrix::from_fn(cfg.dim(), |k, l| {
        if k == l {
            Complex64::new(cfg.hbar() * (k * k) as f64 * w1, 0.0)
        } else {
            ZERO
        }
    })
}

/// `e^{iθ}`.
pub(crate) fn phase_factor(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// Heisenberg evolution `O(t) = e^{iHt/ħ} O e^{−iHt/ħ}`, i.e.
/// `O_kl(t) = O_kl·e^{i(ω_k−ω_l)t}`.
///
/// The phase is `(k² − l²)` in integer arithmetic times `ω_1 t`, so at the
/// revival time every phase is an integer multiple of `2π` up to one rounding.
/// Evolving an already time-stamped operator composes the times.
pub fn evolve(op: &OperatorMatrix, cfg: &WellConfig, t: f64) -> Result<OperatorMatrix> {
    if op.dim != cfg.dim() {
        return Err(Error::DimensionMismatch {
            left: op.dim,
            right: cfg.dim(),
        });
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "time must be finite".into(),
        });
    }
    let n = op.dim;
    let mut entries = op.entries.clone();
    for k in 0..n {
        for l in 0..n {
            if k != l {
                entries[k * n + l] *= phase_factor(cfg.phase(k + 1, l + 1, t));
            }
        }
    }
    Ok(OperatorMatrix {
        dim: n,
        entries,
        basis: op.basis,
        time: Some(op.time.unwrap_or(0.0) + t),
    })
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// `tr([a, b])`, accumulating `tr(ab)` and `tr(ba)` over identical products
/// in identical order so the cancellation is exact.
pub fn commutator_trace(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<Complex64> {
    a.check_dim(b)?;
    let n = a.dim;
    let mut ab = ZERO;
    let mut ba = ZERO;
    for k in 0..n {
        for j in 0..n {
            ab += a.at(k, j) * b.at(j, k);
            ba += b.at(j, k) * a.at(k, j);
        }
    }
    Ok(ab - ba)
}

/// Restricts canonical-commutator checks to indices `k, l <= max_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InteriorBlockSpec {
    max_index: usize,
}

impl InteriorBlockSpec {
    pub fn new(max_index: usize) -> Result<Self> {
        if max_index == 0 {
            return Err(Error::InvalidParameter {
                name: "block",
                reason: "interior block must contain at least one mode".into(),
            });
        }
        Ok(InteriorBlockSpec { max_index })
    }

    /// The largest block allowed for `cfg`, `N/4`.
    pub fn quarter(cfg: &WellConfig) -> Result<Self> {
        Self::new(cfg.dim() / 4)
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// The block must sit in the first quarter of the retained modes.
    pub fn validate(&self, dim: usize) -> Result<()> {
        if 4 * self.max_index > dim {
            return Err(Error::BlockTooLarge {
                max_index: self.max_index,
                dim,
            });
        }
        Ok(())
    }
}

/// How far the truncated `[x, p]/(iħ)` is from the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorReport {
    pub dim: usize,
    pub block: usize,
    /// `max |([x,p]/(iħ))_kl − δ_kl|` over `k, l <= block`.
    pub interior_deviation: f64,
    /// `tr([x, p])`; zero for every finite `N`.
    pub trace: Complex64,
    /// Diagonal of `[x, p]/(iħ)`, entry `k − 1` for mode `k`.
    pub diagonal: Vec<Complex64>,
    /// `max |([x,p]/(iħ))_kk − 1|` over `k > block`; dominated by the last mode.
    pub edge_deviation: f64,
}

pub fn canonical_commutator_report(
    cfg: &WellConfig,
    block: InteriorBlockSpec,
) -> Result<CommutatorReport> {
    block.validate(cfg.dim())?;
    let x = build_position(cfg);
    let p = build_momentum(cfg);
    let n = cfg.dim();
    let ihbar = Complex64::new(0.0, cfg.hbar());
    let scaled = |k: usize, l: usize| -> Complex64 {
        let c: Complex64 = (0..n)
            .map(|j| x.at(k, j) * p.at(j, l) - p.at(k, j) * x.at(j, l))
            .sum();
        c / ihbar
    };

    let mut interior_deviation: f64 = 0.0;
    for k in 0..block.max_index {
        for l in 0..block.max_index {
            let target = if k == l { ONE } else { ZERO };
            let d = scaled(k, l) - target;
            interior_deviation = interior_deviation.max(libm::hypot(d.re, d.im));
        }
    }
    let diagonal: Vec<Complex64> = (0..n).map(|k| scaled(k, k)).collect();
    let edge_deviation = diagonal[block.max_index..]
        .iter()
        .map(|&d| {
            let d = d - ONE;
            libm::hypot(d.re, d.im)
        })
        .fold(0.0, f64::max);
    Ok(CommutatorReport {
        dim: n,
        block: block.max_index,
        interior_deviation,
        trace: commutator_trace(&x, &p)?,
        diagonal,
        edge_deviation,
    })
}

/// Derivative of an operator-valued function along the identity,
/// `lim_{ε→0} [H(A + εI) − H(A)]/ε`.
///
/// Forward differences at each `ε` in `epsilons` (strictly decreasing,
/// positive, at least two values) are extrapolated to `ε = 0` with a Neville
/// tableau. Fails with [`Error::NonConvergent`] when the change between
/// successive extrapolants grows above the rounding floor.
pub fn hamilton_derivative<F>(
    h_of: F,
    at: &OperatorMatrix,
    epsilons: &[f64],
) -> Result<OperatorMatrix>
where
    F: Fn(&OperatorMatrix) -> Result<OperatorMatrix>,
{
    if epsilons.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "epsilon_sequence",
            reason: "need at least two step sizes".into(),
        });
    }
    let valid = epsilons.iter().all(|&e| e.is_finite() && e > 0.0)
        && epsilons.windows(2).all(|w| w[1] < w[0]);
    if !valid {
        return Err(Error::InvalidParameter {
            name: "epsilon_sequence",
            reason: "step sizes must be positive and strictly decreasing".into(),
        });
    }

    let base = h_of(at)?;
    let identity = OperatorMatrix::identity(at.dim);
    let scale = base.max_abs().max(1.0);
    let mut previous_row: Vec<OperatorMatrix> = Vec::new();
    let mut estimates: Vec<OperatorMatrix> = Vec::new();
    for (i, &eps) in epsilons.iter().enumerate() {
        let shifted = at.add(&identity.scale(Complex64::new(eps, 0.0)))?;
        let quotient = h_of(&shifted)?
            .sub(&base)?
            .scale(Complex64::new(1.0 / eps, 0.0));
        let mut row = Vec::with_capacity(i + 1);
        row.push(quotient);
        for j in 1..=i {
            let far = epsilons[i - j];
            let near = eps;
            let hi = row[j - 1].scale(Complex64::new(far, 0.0));
            let lo = previous_row[j - 1].scale(Complex64::new(near, 0.0));
            row.push(hi.sub(&lo)?.scale(Complex64::new(1.0 / (far - near), 0.0)));
        }
        estimates.push(row[i].clone());
        previous_row = row;
    }

    let floor = 1e3 * f64::EPSILON * scale / epsilons[epsilons.len() - 1];
    let mut previous_change = f64::INFINITY;
    for w in estimates.windows(2) {
        let change = w[1].max_abs_diff(&w[0])?;
        if change > previous_change && change > floor {
            return Err(Error::NonConvergent {
                last_change: change,
                previous_change,
            });
        }
        previous_change = change;
    }
    let result = estimates.pop().expect("at least two estimates");
    Ok(result.with_time(at.time))
}
