mod common;

use common::cabs;
use matrixwell_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config() -> impl Strategy<Value = WellConfig> {
    (0.3f64..4.0, 0.2f64..5.0, 0.1f64..3.0, 2usize..24)
        .prop_map(|(l, m, h, n)| WellConfig::new(l, m, h, n).unwrap())
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> OperatorMatrix {
    use rand::Rng;
    let a = OperatorMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    a.add(&a.adjoint()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elements_have_parity_and_symmetry(cfg in config()) {
        let n = cfg.dim();
        for k in 1..=n {
            for l in 1..=n {
                let (mk, ml) = (cfg.mode(k).unwrap(), cfg.mode(l).unwrap());
                let x = position_element(&cfg, mk, ml);
                let p = momentum_element(&cfg, mk, ml);
                prop_assert_eq!(x, position_element(&cfg, ml, mk));
                prop_assert_eq!(p, momentum_element(&cfg, ml, mk).conj());
                prop_assert_eq!(p, -momentum_element(&cfg, ml, mk));
                if k != l && (k + l) % 2 == 0 {
                    prop_assert_eq!(x, 0.0);
                    prop_assert_eq!(p, Complex64::new(0.0, 0.0));
                }
            }
        }
        prop_assert!(build_position(&cfg).is_hermitian(1e-14));
        prop_assert!(build_momentum(&cfg).is_hermitian(1e-14));
    }

    #[test]
    fn evolution_is_a_group(cfg in config(), t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
        let x = build_position(&cfg);
        let step = evolve(&evolve(&x, &cfg, t1).unwrap(), &cfg, t2).unwrap();
        let once = evolve(&x, &cfg, t1 + t2).unwrap();
        let scale = x.max_abs();
        prop_assert!(step.max_abs_diff(&once).unwrap() <= 1e-10 * scale * (1.0 + (t1.abs() + t2.abs()) * cfg.base_frequency() * (cfg.dim() * cfg.dim()) as f64 * 1e-4));
        let back = evolve(&evolve(&x, &cfg, t1).unwrap(), &cfg, -t1).unwrap();
        prop_assert!(back.max_abs_diff(&x).unwrap() <= 1e-12 * scale.max(1.0) * (1.0 + t1.abs() * cfg.base_frequency()));
    }

    #[test]
    fn evolution_preserves_norm_and_hermiticity(cfg in config(), t in -10.0f64..10.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(&mut rng, cfg.dim());
        let at = evolve(&a, &cfg, t).unwrap();
        prop_assert!((at.frobenius_norm() - a.frobenius_norm()).abs() <= 1e-12 * a.frobenius_norm());
        prop_assert!(at.is_hermitian(1e-13));
        let h = build_hamiltonian(&cfg);
        prop_assert!(evolve(&h, &cfg, t).unwrap().max_abs_diff(&h).unwrap() == 0.0);
    }

    #[test]
    fn commutator_is_antisymmetric(cfg in config(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(&mut rng, cfg.dim());
        let b = random_hermitian(&mut rng, cfg.dim());
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).unwrap().max_abs() <= 1e-13 * ab.max_abs().max(1.0));
        // [A, B] is anti-Hermitian for Hermitian A, B
        let s = ab.add(&ab.adjoint()).unwrap();
        prop_assert!(s.max_abs() <= 1e-13 * ab.max_abs().max(1.0));
    }

    #[test]
    fn pictures_agree(cfg in config(), t in -5.0f64..5.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = cfg.dim();
        let a = common::random_state(&mut rng, n, n);
        let b = StateVector::from_coeffs(
            a.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let th = -mode_frequency(&cfg, cfg.mode(i + 1).unwrap()) * t;
                    c * Complex64::new(th.cos(), th.sin())
                })
                .collect(),
        )
        .unwrap();
        for op in [build_position(&cfg), build_momentum(&cfg)] {
            let heis = expectation(&a, &evolve(&op, &cfg, t).unwrap()).unwrap();
            let schr = expectation(&b, &op).unwrap();
            prop_assert!(cabs(heis - schr) <= 1e-11 * op.max_abs().max(1.0) * (1.0 + t.abs() * mode_frequency(&cfg, cfg.mode(n).unwrap()) * 1e-3));
        }
    }

    #[test]
    fn revival_restores_operators(cfg in config(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(&mut rng, cfg.dim());
        let tr = revival_time(&cfg);
        let back = evolve(&a, &cfg, tr).unwrap();
        prop_assert!(back.max_abs_diff(&a).unwrap() <= 1e-12 * (cfg.dim() * cfg.dim()) as f64 * a.max_abs());
    }

    #[test]
    fn uncertainty_holds_for_random_states(seed in any::<u64>(), occupied in 1usize..12) {
        let cfg = WellConfig::natural(60).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_state(&mut rng, 60, occupied);
        let dx = dispersion(&s, &build_position(&cfg)).unwrap();
        let dp = dispersion(&s, &build_momentum(&cfg)).unwrap();
        prop_assert!(dx * dp >= cfg.hbar() / 2.0 - 1e-9, "{}", dx * dp);
    }

    #[test]
    fn force_is_minus_momentum_rate(cfg in config(), t in -2.0f64..2.0) {
        let f = force_matrix(&cfg, t).unwrap();
        let h = 1e-5 / cfg.base_frequency() / (cfg.dim() * cfg.dim()) as f64;
        let p = build_momentum(&cfg);
        let plus = evolve(&p, &cfg, t + h).unwrap();
        let minus = evolve(&p, &cfg, t - h).unwrap();
        let fd = minus.sub(&plus).unwrap().scale(Complex64::new(0.5 / h, 0.0));
        prop_assert!(fd.max_abs_diff(&f).unwrap() <= 1e-5 * f.max_abs());
    }
}
