//! The well itself: units, spectrum, eigenfunctions and the closed-form
//! matrix elements of position and momentum in the energy eigenbasis.
//!
//! Mode indices are 1-based throughout (`n = 1` is the ground state).

use alloc::string::ToString;
use core::f64::consts::PI;

use crate::{Complex64, Error, Result};

/// Physical parameters of the well plus the truncation dimension `N`.
///
/// Every matrix built from one `WellConfig` is `N x N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellConfig {
    width: f64,
    mass: f64,
    hbar: f64,
    dim: usize,
}

impl WellConfig {
    pub fn new(width: f64, mass: f64, hbar: f64, dim: usize) -> Result<Self> {
        positive("L", width)?;
        positive("m", mass)?;
        positive("hbar", hbar)?;
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "N",
                reason: "truncation dimension must be at least 2".to_string(),
            });
        }
        Ok(WellConfig {
            width,
            mass,
            hbar,
            dim,
        })
    }

    /// `hbar = m = L = 1` with `dim` retained modes.
    pub fn natural(dim: usize) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, dim)
    }

    pub fn with_dim(self, dim: usize) -> Result<Self> {
        Self::new(self.width, self.mass, self.hbar, dim)
    }

    /// Well width `L`.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Truncation dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Validated index in `1..=N`.
    pub fn mode(&self, n: usize) -> Result<ModeIndex> {
        if n == 0 || n > self.dim {
            return Err(Error::InvalidMode {
                index: n,
                max: self.dim,
            });
        }
        Ok(ModeIndex(n))
    }

    /// Ground-state angular frequency `ω_1 = ħπ²/(2mL²)`.
    pub fn base_frequency(&self) -> f64 {
        self.hbar * PI * PI / (2.0 * self.mass * self.width * self.width)
    }

    /// `ω_k − ω_l`, formed as the exact integer `k² − l²` times `ω_1`.
    pub fn frequency_gap(&self, k: usize, l: usize) -> f64 {
        square_gap(k, l) as f64 * self.base_frequency()
    }

    /// Phase `(ω_k − ω_l)·t`.
    pub(crate) fn phase(&self, k: usize, l: usize, t: f64) -> f64 {
        square_gap(k, l) as f64 * (self.base_frequency() * t)
    }

    pub(crate) fn check_position(&self, x: f64) -> Result<()> {
        if !(0.0..=self.width).contains(&x) {
            return Err(Error::OutOfWell {
                x,
                width: self.width,
            });
        }
        Ok(())
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidParameter {
            name,
            reason: alloc::format!("must be positive and finite, got {value}"),
        });
    }
    Ok(())
}

pub(crate) fn square_gap(k: usize, l: usize) -> i64 {
    let (k, l) = (k as i64, l as i64);
    k * k - l * l
}

/// A 1-based mode index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeIndex(usize);

impl ModeIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMode {
                index: 0,
                max: usize::MAX,
            });
        }
        Ok(ModeIndex(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `k_n = nπ/L`.
pub fn wavenumber(cfg: &WellConfig, n: ModeIndex) -> f64 {
    n.0 as f64 * PI / cfg.width
}

/// `Ψ_n(x) = √(2/L)·sin(k_n x)` for `x` in `[0, L]`.
pub fn eigenfunction(cfg: &WellConfig, n: ModeIndex, x: f64) -> Result<f64> {
    cfg.check_position(x)?;
    Ok(mode_function(cfg, n.0, x))
}

pub(crate) fn mode_function(cfg: &WellConfig, n: usize, x: f64) -> f64 {
    libm::sqrt(2.0 / cfg.width) * sin_pi(n as f64 * x / cfg.width)
}

/// `sin(πu)` with exact zeros at integer `u`.
pub(crate) fn sin_pi(u: f64) -> f64 {
    let r = u - 2.0 * libm::round(0.5 * u);
    let (a, sign) = if r < 0.0 { (-r, -1.0) } else { (r, 1.0) };
    if a == 0.0 || a == 1.0 {
        return 0.0;
    }
    let a = if a > 0.5 { 1.0 - a } else { a };
    sign * libm::sin(PI * a)
}

/// `E_n = ħ²π²n²/(2mL²)`.
pub fn eigen_energy(cfg: &WellConfig, n: ModeIndex) -> f64 {
    cfg.hbar * mode_frequency(cfg, n)
}

/// `ω_n = E_n/ħ = ħπ²n²/(2mL²)`.
pub fn mode_frequency(cfg: &WellConfig, n: ModeIndex) -> f64 {
    let n = n.0 as f64;
    n * n * cfg.base_frequency()
}

/// `x_kl = ∫ x Ψ_k Ψ_l dx`.
///
/// `L/2` on the diagonal, zero when `k + l` is even, and
/// `−8Lkl / (π²(k² − l²)²)` when `k + l` is odd.
pub fn position_element(cfg: &WellConfig, k: ModeIndex, l: ModeIndex) -> f64 {
    position_value(cfg, k.0, l.0)
}

pub(crate) fn position_value(cfg: &WellConfig, k: usize, l: usize) -> f64 {
    if k == l {
        return 0.5 * cfg.width;
    }
    if (k + l).is_multiple_of(2) {
        return 0.0;
    }
    let gap = square_gap(k, l) as f64;
    -8.0 * cfg.width * (k * l) as f64 / (PI * PI * gap * gap)
}

/// `p_kl = ⟨Ψ_k| −iħ ∂x |Ψ_l⟩`: zero on the diagonal and for even `k + l`,
/// otherwise `4iħkl / (L(l² − k²))`. The matrix is Hermitian and purely
/// imaginary, and `p_kl = i·m·(ω_k − ω_l)·x_kl`.
pub fn momentum_element(cfg: &WellConfig, k: ModeIndex, l: ModeIndex) -> Complex64 {
    momentum_value(cfg, k.0, l.0)
}

pub(crate) fn momentum_value(cfg: &WellConfig, k: usize, l: usize) -> Complex64 {
    if k == l || (k + l).is_multiple_of(2) {
        return Complex64::new(0.0, 0.0);
    }
    let gap = square_gap(l, k) as f64;
    Complex64::new(0.0, 4.0 * cfg.hbar * (k * l) as f64 / (cfg.width * gap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(l: f64, m: f64, hbar: f64) -> WellConfig {
        WellConfig::new(l, m, hbar, 8).unwrap()
    }

    fn n(i: usize) -> ModeIndex {
        ModeIndex::new(i).unwrap()
    }

    #[test]
    fn wavenumber_examples() {
        assert_eq!(wavenumber(&cfg(1.0, 1.0, 1.0), n(1)), PI);
        assert!((wavenumber(&cfg(2.0, 1.0, 1.0), n(4)) - 2.0 * PI).abs() < 1e-15);
        assert!((wavenumber(&cfg(0.5, 1.0, 1.0), n(3)) - 6.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn eigenfunction_examples() {
        let c = cfg(1.0, 1.0, 1.0);
        assert_eq!(eigenfunction(&c, n(1), 0.0).unwrap(), 0.0);
        assert!((eigenfunction(&c, n(1), 0.5).unwrap() - libm::sqrt(2.0)).abs() < 1e-15);
        assert_eq!(eigenfunction(&c, n(2), 0.5).unwrap(), 0.0);
        assert_eq!(eigenfunction(&c, n(7), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn eigenfunction_rejects_outside() {
        let c = cfg(1.0, 1.0, 1.0);
        assert!(matches!(eigenfunction(&c, n(1), -1e-9), Err(Error::OutOfWell { .. })));
        assert!(matches!(eigenfunction(&c, n(1), 1.0 + 1e-9), Err(Error::OutOfWell { .. })));
        assert!(eigenfunction(&c, n(1), f64::NAN).is_err());
    }

    #[test]
    fn energy_examples() {
        let c = cfg(1.0, 1.0, 1.0);
        assert!((eigen_energy(&c, n(1)) - PI * PI / 2.0).abs() < 1e-14);
        assert!((eigen_energy(&c, n(3)) - 9.0 * PI * PI / 2.0).abs() < 1e-13);
        let c = cfg(2.0, 2.0, 1.0);
        assert!((eigen_energy(&c, n(1)) - PI * PI / 16.0).abs() < 1e-15);
    }

    #[test]
    fn frequency_examples() {
        let c = cfg(1.0, 1.0, 1.0);
        assert!((mode_frequency(&c, n(1)) - PI * PI / 2.0).abs() < 1e-14);
        assert!((mode_frequency(&c, n(2)) - 2.0 * PI * PI).abs() < 1e-14);
        let c = cfg(1.7, 0.3, 2.2);
        let w1 = mode_frequency(&c, n(1));
        for (a, b) in [(5, 2), (7, 1), (3, 6)] {
            let gap = mode_frequency(&c, n(a)) - mode_frequency(&c, n(b));
            let expected = ((a * a) as f64 - (b * b) as f64) * w1;
            assert!((gap - expected).abs() < 1e-12 * expected.abs());
            assert!((c.frequency_gap(a, b) - expected).abs() < 1e-12 * expected.abs());
        }
        assert!((eigen_energy(&c, n(4)) / c.hbar() - mode_frequency(&c, n(4))).abs() < 1e-12);
    }

    #[test]
    fn position_examples() {
        let c = cfg(1.0, 1.0, 1.0);
        assert_eq!(position_element(&c, n(1), n(1)), 0.5);
        assert_eq!(position_element(&c, n(1), n(3)), 0.0);
        let expected = -16.0 / (9.0 * PI * PI);
        assert!((position_element(&c, n(1), n(2)) - expected).abs() < 1e-15);
        assert!((expected + 0.180_126).abs() < 1e-6);
    }

    #[test]
    fn momentum_examples() {
        let c = cfg(1.0, 1.0, 1.0);
        assert_eq!(momentum_element(&c, n(4), n(4)), Complex64::new(0.0, 0.0));
        let p12 = momentum_element(&c, n(1), n(2));
        assert_eq!(p12.re, 0.0);
        // −iħ ∫ Ψ_1 Ψ_2' dx = +8i/3
        assert!((p12.im - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(momentum_element(&c, n(2), n(1)), p12.conj());
    }

    #[test]
    fn mode_validation() {
        let c = cfg(1.0, 1.0, 1.0);
        assert!(c.mode(0).is_err());
        assert!(c.mode(9).is_err());
        assert_eq!(c.mode(8).unwrap().get(), 8);
        assert!(ModeIndex::new(0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(WellConfig::new(0.0, 1.0, 1.0, 4).is_err());
        assert!(WellConfig::new(1.0, -1.0, 1.0, 4).is_err());
        assert!(WellConfig::new(1.0, 1.0, f64::INFINITY, 4).is_err());
        assert!(WellConfig::new(1.0, 1.0, 1.0, 1).is_err());
        assert!(WellConfig::natural(2).is_ok());
    }

    #[test]
    fn sin_pi_exact_zeros() {
        for u in [-3.0, -1.0, 0.0, 1.0, 2.0, 17.0, 1e6] {
            assert_eq!(sin_pi(u), 0.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert!((sin_pi(2.25) - libm::sin(PI * 0.25)).abs() < 1e-16);
        assert!((sin_pi(1.25) + libm::sin(PI * 0.25)).abs() < 1e-16);
    }
}
