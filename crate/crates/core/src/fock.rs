//! Second quantization over the well's modes.
//!
//! Occupation vectors `(n_1, …, n_M)` are enumerated lexicographically with
//! mode 1 slowest, so the index of a state is its occupation read as a
//! base-`(cutoff + 1)` number. Fermionic annihilators carry the sign
//! `(−1)^(n_1 + … + n_{j−1})` (mode 1 first).
//!
//! Operators are stored sparsely by rows; ladder operators have at most one
//! entry per column, so Fock spaces up to ~5·10⁴ states stay cheap.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::quadrature::{integrate, Tolerance};
use crate::well::{mode_function, WellConfig};
use crate::{Complex64, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub const MAX_BOSON_MODES: usize = 6;
pub const MAX_BOSON_CUTOFF: usize = 5;
pub const MAX_FERMION_MODES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Boson,
    Fermion,
}

/// Occupation-number basis over modes `1..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    modes: usize,
    statistics: Statistics,
    cutoff: usize,
    states: Vec<Vec<u8>>,
}

impl FockBasis {
    /// `cutoff` is the largest occupation per mode; it is forced to 1 for fermions.
    pub fn new(modes: usize, statistics: Statistics, cutoff: usize) -> Result<Self> {
        let cutoff = match statistics {
            Statistics::Fermion => 1,
            Statistics::Boson => cutoff,
        };
        if modes == 0 {
            return Err(Error::InvalidParameter {
                name: "modes",
                reason: "need at least one mode".into(),
            });
        }
        match statistics {
            Statistics::Boson => {
                if cutoff == 0 {
                    return Err(Error::InvalidParameter {
                        name: "cutoff",
                        reason: "boson cutoff must be at least 1".into(),
                    });
                }
                if modes > MAX_BOSON_MODES || cutoff > MAX_BOSON_CUTOFF {
                    return Err(Error::FockTooLarge {
                        reason: format!(
                            "bosons need modes <= {MAX_BOSON_MODES} and cutoff <= {MAX_BOSON_CUTOFF}, got {modes} and {cutoff}"
                        ),
                    });
                }
            }
            Statistics::Fermion => {
                if modes > MAX_FERMION_MODES {
                    return Err(Error::FockTooLarge {
                        reason: format!("fermions need modes <= {MAX_FERMION_MODES}, got {modes}"),
                    });
                }
            }
        }
        let radix = cutoff + 1;
        let dim = radix.pow(modes as u32);
        let states = (0..dim)
            .map(|mut index| {
                let mut occ = vec![0u8; modes];
                for slot in occ.iter_mut().rev() {
                    *slot = (index % radix) as u8;
                    index /= radix;
                }
                occ
            })
            .collect();
        Ok(FockBasis {
            modes,
            statistics,
            cutoff,
            states,
        })
    }

    pub fn bosons(modes: usize, cutoff: usize) -> Result<Self> {
        Self::new(modes, Statistics::Boson, cutoff)
    }

    pub fn fermions(modes: usize) -> Result<Self> {
        Self::new(modes, Statistics::Fermion, 1)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Vec<u8>] {
        &self.states
    }

    /// Occupations of state `index`, mode 1 first.
    pub fn occupations(&self, index: usize) -> &[u8] {
        &self.states[index]
    }

    /// Index of an occupation vector.
    pub fn index_of(&self, occ: &[u8]) -> Result<usize> {
        if occ.len() != self.modes {
            return Err(Error::DimensionMismatch {
                left: occ.len(),
                right: self.modes,
            });
        }
        let radix = self.cutoff + 1;
        occ.iter().try_fold(0usize, |acc, &o| {
            if o as usize > self.cutoff {
                Err(Error::InvalidParameter {
                    name: "occupation",
                    reason: format!("occupation {o} exceeds cutoff {}", self.cutoff),
                })
            } else {
                Ok(acc * radix + o as usize)
            }
        })
    }

    fn check_mode(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.modes {
            return Err(Error::InvalidMode {
                index: n,
                max: self.modes,
            });
        }
        Ok(())
    }

    fn shape(&self) -> Shape {
        Shape {
            modes: self.modes,
            statistics: self.statistics,
            cutoff: self.cutoff,
        }
    }

    /// Integer `Σ_j n_j·j²`, so that the energy is `ħω_1` times it.
    fn quadratic_weight(&self, index: usize) -> i64 {
        self.states[index]
            .iter()
            .enumerate()
            .map(|(j, &o)| o as i64 * ((j + 1) * (j + 1)) as i64)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shape {
    modes: usize,
    statistics: Statistics,
    cutoff: usize,
}

/// Sparse `D x D` operator on a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    shape: Shape,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl FockOperator {
    pub fn zero(basis: &FockBasis) -> Self {
        FockOperator {
            shape: basis.shape(),
            rows: vec![Vec::new(); basis.dim()],
        }
    }

    pub fn identity(basis: &FockBasis) -> Self {
        Self::diagonal(basis, |_| Complex64::new(1.0, 0.0))
    }

    fn diagonal(basis: &FockBasis, f: impl Fn(usize) -> Complex64) -> Self {
        let rows = (0..basis.dim())
            .map(|i| {
                let v = f(i);
                if v == ZERO {
                    Vec::new()
                } else {
                    vec![(i, v)]
                }
            })
            .collect();
        FockOperator {
            shape: basis.shape(),
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(i, j)` with 0-based basis-state indices.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map_or(ZERO, |&(_, v)| v)
    }

    /// Stored entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Complex64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    fn from_triplets(shape: Shape, dim: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by_key(|&(i, j, _)| (i, j));
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for (i, j, v) in triplets {
            let row = &mut rows[i];
            match row.last_mut() {
                Some((c, acc)) if *c == j => *acc += v,
                _ => row.push((j, v)),
            }
        }
        for row in &mut rows {
            row.retain(|&(_, v)| v != ZERO);
        }
        FockOperator { shape, rows }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.dim();
        let mut acc = vec![ZERO; d];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(d);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    if acc[j] == ZERO && !touched.contains(&j) {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                if acc[j] != ZERO {
                    out.push((j, acc[j]));
                }
                acc[j] = ZERO;
            }
            touched.clear();
            rows.push(out);
        }
        Ok(FockOperator {
            shape: self.shape,
            rows,
        })
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        self.check(other)?;
        let mut triplets = Vec::with_capacity(self.nnz() + other.nnz());
        for (i, row) in self.rows.iter().enumerate() {
            triplets.extend(row.iter().map(|&(j, v)| (i, j, v)));
        }
        for (i, row) in other.rows.iter().enumerate() {
            triplets.extend(row.iter().map(|&(j, v)| (i, j, v * sign)));
        }
        Ok(Self::from_triplets(self.shape, self.dim(), triplets))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(j, v)| (j, v * factor))
                    .filter(|&(_, v)| v != ZERO)
                    .collect()
            })
            .collect();
        FockOperator {
            shape: self.shape,
            rows,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut triplets = Vec::with_capacity(self.nnz());
        for (i, row) in self.rows.iter().enumerate() {
            triplets.extend(row.iter().map(|&(j, v)| (j, i, v.conj())));
        }
        Self::from_triplets(self.shape, self.dim(), triplets)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(j, a)| a * v[j]).sum())
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|(_, v)| libm::hypot(v.re, v.im))
            .fold(0.0, f64::max)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn expectation(&self, state: &FockState) -> Result<Complex64> {
        if state.shape != self.shape {
            return Err(Error::DimensionMismatch {
                left: state.coeffs.len(),
                right: self.dim(),
            });
        }
        let v = self.apply(&state.coeffs)?;
        Ok(state.coeffs.iter().zip(&v).map(|(a, b)| a.conj() * b).sum())
    }
}

/// Normalized vector in a Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    shape: Shape,
    coeffs: Vec<Complex64>,
}

impl FockState {
    pub fn from_coeffs(basis: &FockBasis, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                left: coeffs.len(),
                right: basis.dim(),
            });
        }
        let norm = libm::sqrt(coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter {
                name: "state",
                reason: "Fock state must have finite, non-zero norm".into(),
            });
        }
        Ok(FockState {
            shape: basis.shape(),
            coeffs: coeffs.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// The occupation-number state `|n_1, …, n_M⟩`.
    pub fn basis_state(basis: &FockBasis, occ: &[u8]) -> Result<Self> {
        let index = basis.index_of(occ)?;
        let mut coeffs = vec![ZERO; basis.dim()];
        coeffs[index] = Complex64::new(1.0, 0.0);
        Ok(FockState {
            shape: basis.shape(),
            coeffs,
        })
    }

    pub fn vacuum(basis: &FockBasis) -> Self {
        let mut coeffs = vec![ZERO; basis.dim()];
        coeffs[0] = Complex64::new(1.0, 0.0);
        FockState {
            shape: basis.shape(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `â_n`.
pub fn annihilator(basis: &FockBasis, n: usize) -> Result<FockOperator> {
    basis.check_mode(n)?;
    let slot = n - 1;
    let radix = basis.cutoff + 1;
    let stride = radix.pow((basis.modes - n) as u32);
    let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); basis.dim()];
    for (col, occ) in basis.states.iter().enumerate() {
        let count = occ[slot];
        if count == 0 {
            continue;
        }
        let value = match basis.statistics {
            Statistics::Boson => libm::sqrt(count as f64),
            Statistics::Fermion => {
                let before: usize = occ[..slot].iter().map(|&o| o as usize).sum();
                if before.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        rows[col - stride].push((col, Complex64::new(value, 0.0)));
    }
    Ok(FockOperator {
        shape: basis.shape(),
        rows,
    })
}

/// `â†_n`.
pub fn creator(basis: &FockBasis, n: usize) -> Result<FockOperator> {
    Ok(annihilator(basis, n)?.adjoint())
}

/// `â†_n â_n`, diagonal with the occupation of mode `n`.
pub fn number_operator(basis: &FockBasis, n: usize) -> Result<FockOperator> {
    basis.check_mode(n)?;
    Ok(FockOperator::diagonal(basis, |i| {
        Complex64::new(basis.states[i][n - 1] as f64, 0.0)
    }))
}

/// Defects of the (anti)commutation relations for one mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDefect {
    pub n: usize,
    pub m: usize,
    /// `max |[â_n, â_m]_±|`.
    pub annihilator_defect: f64,
    /// `max |[â_n, â†_m]_± − δ_nm·I|`, restricted to `occ_n < cutoff` when
    /// `n = m` for bosons.
    pub mixed_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub statistics: Statistics,
    pub modes: usize,
    pub cutoff: usize,
    pub pairs: Vec<PairDefect>,
    /// Largest defect over all pairs and both relations, excluding the
    /// boson cutoff boundary.
    pub max_defect: f64,
    /// Largest defect among pairs with `n ≠ m`.
    pub cross_mode_defect: f64,
    /// Bosons: the entry of `[â_n, â†_n] − I` on saturated states
    /// (`occ_n = cutoff`) farthest from `−(cutoff + 1)`. `None` for fermions.
    pub boundary_defect: Option<f64>,
    /// True when no entry of `[â_n, â†_n] − I` off the saturated diagonal
    /// exceeds [`AlgebraReport::rounding_floor`].
    pub boundary_confined: bool,
    /// Tolerance for entries that are zero up to the rounding of `√k·√k`.
    /// Zero for fermions, whose ladder entries are `±1`.
    pub rounding_floor: f64,
}

impl AlgebraReport {
    /// Whether the relations hold: exactly for fermions; for bosons up to the
    /// rounding floor below the cutoff, with the boundary value `−(cutoff+1)`.
    pub fn holds(&self) -> bool {
        let boundary_ok = match (self.statistics, self.boundary_defect) {
            (Statistics::Fermion, _) => true,
            (Statistics::Boson, Some(b)) => {
                libm::fabs(b + (self.cutoff + 1) as f64) <= self.rounding_floor
            }
            (Statistics::Boson, None) => false,
        };
        self.max_defect <= self.rounding_floor
            && self.cross_mode_defect == 0.0
            && self.boundary_confined
            && boundary_ok
    }
}

/// Checks `[â_n, â†_m]_± = δ_nm` and `[â_n, â_m]_± = 0` for every mode pair,
/// with `+` (anticommutator) for fermions and `−` for bosons.
pub fn check_algebra(basis: &FockBasis) -> Result<AlgebraReport> {
    let annihilators: Vec<FockOperator> =
        (1..=basis.modes).map(|n| annihilator(basis, n)).collect::<Result<_>>()?;
    let creators: Vec<FockOperator> = annihilators.iter().map(FockOperator::adjoint).collect();
    let identity = FockOperator::identity(basis);
    let bracket = |a: &FockOperator, b: &FockOperator| match basis.statistics {
        Statistics::Fermion => a.anticommutator(b),
        Statistics::Boson => a.commutator(b),
    };
    let rounding_floor = match basis.statistics {
        Statistics::Fermion => 0.0,
        Statistics::Boson => 16.0 * f64::EPSILON * (basis.cutoff + 1) as f64,
    };
    let target = -((basis.cutoff + 1) as f64);

    let mut pairs = Vec::with_capacity(basis.modes * basis.modes);
    let mut boundary: Option<f64> = None;
    let mut confined = true;
    for n in 1..=basis.modes {
        for m in 1..=basis.modes {
            let annihilator_defect = bracket(&annihilators[n - 1], &annihilators[m - 1])?.max_abs();
            let mut mixed = bracket(&annihilators[n - 1], &creators[m - 1])?;
            if n == m {
                mixed = mixed.sub(&identity)?;
            }
            let mixed_defect = if n == m && basis.statistics == Statistics::Boson {
                let mut interior: f64 = 0.0;
                for (i, row) in mixed.rows.iter().enumerate() {
                    let saturated = basis.states[i][n - 1] as usize == basis.cutoff;
                    for &(j, v) in row {
                        if saturated && i == j {
                            let worse = boundary.is_none_or(|b| {
                                libm::fabs(v.re - target) > libm::fabs(b - target)
                            });
                            if worse || v.im != 0.0 {
                                boundary = Some(if v.im != 0.0 { f64::NAN } else { v.re });
                            }
                        } else {
                            interior = interior.max(libm::hypot(v.re, v.im));
                        }
                    }
                }
                interior
            } else {
                mixed.max_abs()
            };
            confined &= mixed_defect <= rounding_floor;
            pairs.push(PairDefect {
                n,
                m,
                annihilator_defect,
                mixed_defect,
            });
        }
    }
    let max_defect = pairs
        .iter()
        .map(|p| p.annihilator_defect.max(p.mixed_defect))
        .fold(0.0, f64::max);
    let cross_mode_defect = pairs
        .iter()
        .filter(|p| p.n != p.m)
        .map(|p| p.annihilator_defect.max(p.mixed_defect))
        .fold(0.0, f64::max);
    Ok(AlgebraReport {
        statistics: basis.statistics,
        modes: basis.modes,
        cutoff: basis.cutoff,
        pairs,
        max_defect,
        cross_mode_defect,
        boundary_defect: boundary,
        boundary_confined: confined,
        rounding_floor,
    })
}

fn check_modes_fit(cfg: &WellConfig, basis: &FockBasis) -> Result<()> {
    if basis.modes > cfg.dim() {
        return Err(Error::InvalidParameter {
            name: "modes",
            reason: format!("{} Fock modes exceed N = {}", basis.modes, cfg.dim()),
        });
    }
    Ok(())
}

/// `Ψ̂(x) = Σ_{n≤M} √(2/L)·sin(k_n x)·â_n`.
pub fn field_operator(cfg: &WellConfig, basis: &FockBasis, x: f64) -> Result<FockOperator> {
    heisenberg_field(cfg, basis, x, 0.0)
}

/// `Ψ̂(x, t) = e^{iĤt/ħ} Ψ̂(x) e^{−iĤt/ħ}`, computed by conjugating with the
/// exact diagonal phases of `Ĥ`.
pub fn heisenberg_field(cfg: &WellConfig, basis: &FockBasis, x: f64, t: f64) -> Result<FockOperator> {
    cfg.check_position(x)?;
    check_modes_fit(cfg, basis)?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "time must be finite".into(),
        });
    }
    let mut field = FockOperator::zero(basis);
    for n in 1..=basis.modes {
        let amplitude = mode_function(cfg, n, x);
        if amplitude != 0.0 {
            field = field.add(&annihilator(basis, n)?.scale(Complex64::new(amplitude, 0.0)))?;
        }
    }
    if t == 0.0 {
        return Ok(field);
    }
    let w1t = cfg.base_frequency() * t;
    for (i, row) in field.rows.iter_mut().enumerate() {
        let wi = basis.quadratic_weight(i);
        for (j, v) in row.iter_mut() {
            let gap = (wi - basis.quadratic_weight(*j)) as f64;
            let theta = gap * w1t;
            *v *= Complex64::new(libm::cos(theta), libm::sin(theta));
        }
    }
    Ok(field)
}

/// `Ĥ = Σ_n ħω_n â†_n â_n`, diagonal with eigenvalue `Σ_n occ_n·ħω_n`.
pub fn many_body_hamiltonian(cfg: &WellConfig, basis: &FockBasis) -> Result<FockOperator> {
    check_modes_fit(cfg, basis)?;
    let quanta: Vec<f64> = (1..=basis.modes)
        .map(|n| cfg.hbar() * (n * n) as f64 * cfg.base_frequency())
        .collect();
    Ok(FockOperator::diagonal(basis, |i| {
        let e = basis.states[i]
            .iter()
            .zip(&quanta)
            .fold(0.0, |acc, (&o, &q)| acc + o as f64 * q);
        Complex64::new(e, 0.0)
    }))
}

/// `(â†_1)^N / √(N!) |0⟩`: all `N` particles in the ground mode.
pub fn condensate_state(basis: &FockBasis, particles: usize) -> Result<FockState> {
    if particles > basis.cutoff {
        return Err(Error::InvalidParameter {
            name: "particles",
            reason: match basis.statistics {
                Statistics::Fermion => {
                    "fermions admit at most one particle per mode".into()
                }
                Statistics::Boson => format!(
                    "{particles} particles exceed the occupation cutoff {}",
                    basis.cutoff
                ),
            },
        });
    }
    let raise = creator(basis, 1)?;
    let mut coeffs = FockState::vacuum(basis).coeffs;
    let mut factorial = 1.0;
    for k in 1..=particles {
        coeffs = raise.apply(&coeffs)?;
        factorial *= k as f64;
    }
    let norm = libm::sqrt(factorial);
    FockState::from_coeffs(basis, coeffs.into_iter().map(|z| z / norm).collect())
}

/// `⟨Ψ| Ψ̂†(x,t) Ψ̂(x,t) |Ψ⟩ = ‖Ψ̂(x,t)|Ψ⟩‖²`.
pub fn density_expectation(
    state: &FockState,
    cfg: &WellConfig,
    basis: &FockBasis,
    x: f64,
    t: f64,
) -> Result<f64> {
    if state.shape != basis.shape() {
        return Err(Error::DimensionMismatch {
            left: state.coeffs.len(),
            right: basis.dim(),
        });
    }
    let field = heisenberg_field(cfg, basis, x, t)?;
    let v = field.apply(&state.coeffs)?;
    Ok(v.iter().map(|z| z.norm_sqr()).sum())
}

/// `∫₀^L ⟨Ψ̂†(x,t)Ψ̂(x,t)⟩ dx`, the particle number carried by the density.
pub fn integrated_density(
    state: &FockState,
    cfg: &WellConfig,
    basis: &FockBasis,
    t: f64,
) -> Result<f64> {
    let tol = Tolerance {
        abs: 1e-11,
        rel: 1e-11,
        ..Tolerance::default()
    };
    let mut failure = None;
    let est = integrate(
        |x| match density_expectation(state, cfg, basis, x, t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        cfg.width(),
        tol,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(est.value),
    }
}

/// Weak-form completeness of the first `modes` mode functions:
/// returns `(Σ_{n≤M} (∫f Ψ_n)², ∫ f²)`, i.e. `∫∫ f K_M f` and its `M → ∞` limit.
pub fn mode_sum_overlap<F: Fn(f64) -> f64>(
    cfg: &WellConfig,
    modes: usize,
    f: F,
) -> Result<(f64, f64)> {
    let tol = Tolerance::default();
    let l = cfg.width();
    let mut projected = 0.0;
    for n in 1..=modes {
        let c = integrate(|x| f(x) * mode_function(cfg, n, x), 0.0, l, tol)?.value;
        projected += c * c;
    }
    let total = integrate(|x| f(x) * f(x), 0.0, l, tol)?.value;
    Ok((projected, total))
}
