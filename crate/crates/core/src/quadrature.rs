//! Globally adaptive Gauss-Kronrod (7/15 point) integration.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below `max(abs_tol, rel_tol * |integral|)`.

use alloc::vec::Vec;

use crate::{Complex64, Error, Result};

// Published QUADPACK values, kept at full length.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and subdivision limit for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-13,
            rel: 1e-13,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: libm::fabs((kronrod - gauss) * half),
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    panels.push(kronrod(&mut f, a, b));
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let target = tol.abs.max(tol.rel * libm::fabs(value));
        if error <= target {
            return Ok(Estimate { value, error });
        }
        if panels.len() >= tol.max_intervals {
            return Err(Error::Quadrature {
                error_estimate: error,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval cannot be split further in double precision
            return Err(Error::Quadrature {
                error_estimate: error,
            });
        }
        panels.push(kronrod(&mut f, p.a, mid));
        panels.push(kronrod(&mut f, mid, p.b));
    }
}

/// Integrates a complex-valued `f` by treating real and imaginary parts separately.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Complex64> {
    let re = integrate(|x| f(x).re, a, b, tol)?;
    let im = integrate(|x| f(x).im, a, b, tol)?;
    Ok(Complex64::new(re.value, im.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // K15 integrates degree <= 22 exactly
        let est = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, Tolerance::default()).unwrap();
        assert!((est.value - 16.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        let k = 40.0 * core::f64::consts::PI;
        let est = integrate(|x| libm::sin(k * x) * libm::sin(k * x), 0.0, 1.0, Tolerance::default())
            .unwrap();
        assert!((est.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn peaked_gaussian() {
        let s = 0.01;
        let est = integrate(
            |x| libm::exp(-(x - 0.3) * (x - 0.3) / (2.0 * s * s)),
            0.0,
            1.0,
            Tolerance::default(),
        )
        .unwrap();
        let exact = s * libm::sqrt(2.0 * core::f64::consts::PI);
        assert!((est.value - exact).abs() < 1e-13);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(integrate(|_| 1.0, 2.0, 2.0, Tolerance::default()).unwrap().value, 0.0);
    }

    #[test]
    fn subdivision_limit_is_reported() {
        let tol = Tolerance {
            abs: 1e-300,
            rel: 0.0,
            max_intervals: 3,
        };
        let res = integrate(libm::sqrt, 0.0, 1.0, tol);
        assert!(matches!(res, Err(Error::Quadrature { .. })));
    }
}
