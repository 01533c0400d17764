use proptest::prelude::*;

use uinorm::calculus::{apply_spectral, g1_certify, herglotz_eval, spectral_gap, HerglotzMeasure};
use uinorm::inequalities::{check_thm1, check_thm_hs, check_thm_sum, Sign};
use uinorm::linalg::{
    absolute_value, direct_sum, hermitian_eigen, operator_norm, singular_values, ComplexMatrix, NormalMatrix,
    SpectralDecomposition,
};
use uinorm::norms::{ky_fan_dominates, norm, norm_suite};
use uinorm::samplers::{
    random_general, random_herglotz, random_normal_in_disk, random_unitary, uniform_in_disk, SamplerConfig, TrialRng,
};
use uinorm::tolerance::within_slack;
use uinorm::{Complex64, NormKind};

fn setup(seed: u64, dim: usize) -> (SamplerConfig, TrialRng) {
    let cfg = SamplerConfig::new(seed, dim).unwrap();
    let rng = cfg.stream(0);
    (cfg, rng)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn conjugated(w: &ComplexMatrix, a: &NormalMatrix) -> NormalMatrix {
    let d = SpectralDecomposition::new(a.eigenvalues().to_vec(), w * &a.decomposition.eigenvectors).unwrap();
    NormalMatrix::from_decomposition(d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn singular_values_of_adjoint(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_general(&cfg, &mut rng);
        let s = singular_values(&a).unwrap();
        let t = singular_values(&a.adjoint()).unwrap();
        for j in 0..dim {
            prop_assert!((s.get(j + 1) - t.get(j + 1)).abs() <= 1e-10);
        }
    }

    #[test]
    fn norms_are_unitarily_invariant(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_general(&cfg, &mut rng);
        let u = random_unitary(&cfg, &mut rng);
        let v = random_unitary(&cfg, &mut rng);
        let uav = &(&u * &a) * &v;
        let (s, t) = (singular_values(&a).unwrap(), singular_values(&uav).unwrap());
        for j in 1..=dim {
            prop_assert!((s.get(j) - t.get(j)).abs() <= 1e-9);
        }
        for k in norm_suite(dim) {
            prop_assert!(rel_close(s.norm(&k), t.norm(&k), 1e-9), "{k}");
        }
    }

    #[test]
    fn absolute_value_is_psd_with_same_norms(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let x = random_general(&cfg, &mut rng);
        let abs = absolute_value(&x).unwrap();
        let min = hermitian_eigen(&abs).unwrap().values.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!(min >= -1e-10);
        for k in norm_suite(dim) {
            let (nx, na) = (norm(&x, &k).unwrap(), norm(&abs, &k).unwrap());
            prop_assert!((nx - na).abs() <= 1e-9 * nx.max(1e-300), "{k}: {nx} vs {na}");
        }
    }

    #[test]
    fn products_obey_operator_bounds(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_general(&cfg, &mut rng);
        let x = random_general(&cfg, &mut rng);
        let b = random_general(&cfg, &mut rng);
        let axb = &(&a * &x) * &b;
        let scale = operator_norm(&a).unwrap() * operator_norm(&b).unwrap();
        for k in norm_suite(dim) {
            prop_assert!(within_slack(norm(&axb, &k).unwrap(), scale * norm(&x, &k).unwrap()), "{k}");
        }
    }

    #[test]
    fn rank_one_norms_coincide(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let g = random_general(&cfg, &mut rng);
        let x = ComplexMatrix::outer(&g.column(0), &g.column(dim - 1));
        let op = operator_norm(&x).unwrap();
        for k in norm_suite(dim) {
            prop_assert!(rel_close(norm(&x, &k).unwrap(), op, 1e-9), "{k}");
        }
    }

    #[test]
    fn direct_sum_merges_spectra(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=6) {
        let (cfg, mut rng) = setup(seed, n.max(m));
        let a = random_general(&cfg, &mut rng).sub_block(0, 0, n, n);
        let b = random_general(&cfg, &mut rng).sub_block(0, 0, m, m);
        let s = direct_sum(&a, &b).unwrap();
        let merged = singular_values(&a).unwrap().merge(&singular_values(&b).unwrap());
        let direct = singular_values(&s).unwrap();
        for j in 1..=n + m {
            prop_assert!((merged.get(j) - direct.get(j)).abs() <= 1e-10);
        }
        let (oa, ob) = (operator_norm(&a).unwrap(), operator_norm(&b).unwrap());
        prop_assert!(rel_close(operator_norm(&s).unwrap(), oa.max(ob), 1e-9));
        for p in [1.0, 2.0, 3.0] {
            let k = NormKind::Schatten(p);
            let lhs = norm(&s, &k).unwrap().powf(p);
            let rhs = norm(&a, &k).unwrap().powf(p) + norm(&b, &k).unwrap().powf(p);
            prop_assert!(rel_close(lhs, rhs, 1e-9));
        }
    }

    #[test]
    fn ky_fan_dominance_controls_every_norm(seed in any::<u64>(), dim in 1usize..=8, c in 0.1f64..2.0) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_general(&cfg, &mut rng);
        let u = random_unitary(&cfg, &mut rng);
        let b = &(&u * &a.scale_real(c)) * &u.adjoint();
        let d = ky_fan_dominates(&a, &b).unwrap();
        prop_assert_eq!(d.holds, c >= 1.0 || d.max_violation <= 1e-12);
        if d.holds {
            for k in norm_suite(dim) {
                prop_assert!(within_slack(norm(&a, &k).unwrap(), norm(&b, &k).unwrap()), "{k}");
            }
        }
    }

    #[test]
    fn reconstruction_of_sampled_normals(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_normal_in_disk(&cfg, &mut rng);
        let again = NormalMatrix::from_matrix(&a.matrix).unwrap();
        let err = (&again.decomposition.reconstruct() - &a.matrix).frobenius_norm();
        prop_assert!(err <= 1e-10 * a.matrix.frobenius_norm().max(1.0));
        prop_assert!(spectral_gap(a.eigenvalues()).unwrap() >= cfg.min_gap - 1e-12);
        prop_assert!(g1_certify(&a.matrix, 8).unwrap().max_deviation <= 1e-7);
    }

    #[test]
    fn herglotz_real_part_is_positive(seed in any::<u64>(), r in 0.0f64..0.99) {
        let (_, mut rng) = setup(seed, 1);
        let f = random_herglotz(&mut rng);
        for _ in 0..200 {
            let z = uniform_in_disk(r, &mut rng);
            prop_assert!(herglotz_eval(&f, z).unwrap().re > 0.0);
        }
    }

    #[test]
    fn spectral_mapping(seed in any::<u64>(), dim in 1usize..=8) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_normal_in_disk(&cfg, &mut rng);
        let f = random_herglotz(&mut rng);
        let fa = apply_spectral(&f, &a.decomposition).unwrap();
        let mapped: Vec<Complex64> = a.eigenvalues().iter().map(|&l| herglotz_eval(&f, l).unwrap()).collect();
        let diag = ComplexMatrix::conjugate_diag(&a.decomposition.eigenvectors, &mapped);
        prop_assert!((&fa - &diag).max_abs() <= 1e-9 * fa.max_abs().max(1.0));
    }

    #[test]
    fn thm1_ratio_is_scale_invariant(seed in any::<u64>(), dim in 1usize..=6, c in 0.01f64..100.0) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_normal_in_disk(&cfg, &mut rng);
        let b = random_normal_in_disk(&cfg, &mut rng);
        let x = random_general(&cfg, &mut rng);
        let f = random_herglotz(&mut rng);
        let g = random_herglotz(&mut rng);
        let cx = x.scale_real(c);
        for sign in [Sign::Plus, Sign::Minus] {
            for check in [check_thm1, check_thm_sum] {
                let base = check(sign, &a, &b, &x, &f, &g).unwrap();
                let scaled = check(sign, &a, &b, &cx, &f, &g).unwrap();
                for k in norm_suite(dim) {
                    prop_assert!(rel_close(scaled.lhs.eval(&k), c * base.lhs.eval(&k), 1e-9));
                    prop_assert!(rel_close(scaled.rhs.eval(&k), c * base.rhs.eval(&k), 1e-9));
                    prop_assert!((scaled.ratio(&k) - base.ratio(&k)).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn thm1_is_unitarily_covariant(seed in any::<u64>(), dim in 1usize..=6) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_normal_in_disk(&cfg, &mut rng);
        let b = random_normal_in_disk(&cfg, &mut rng);
        let x = random_general(&cfg, &mut rng);
        let f = random_herglotz(&mut rng);
        let g = random_herglotz(&mut rng);
        let w = random_unitary(&cfg, &mut rng);
        let v = random_unitary(&cfg, &mut rng);
        let wxv = &(&w * &x) * &v.adjoint();
        for sign in [Sign::Plus, Sign::Minus] {
            let base = check_thm1(sign, &a, &b, &x, &f, &g).unwrap();
            let moved = check_thm1(sign, &conjugated(&w, &a), &conjugated(&v, &b), &wxv, &f, &g).unwrap();
            prop_assert_eq!(base.d_a, moved.d_a);
            prop_assert_eq!(base.d_b, moved.d_b);
            for k in norm_suite(dim) {
                prop_assert!(rel_close(base.lhs.eval(&k), moved.lhs.eval(&k), 1e-9));
                prop_assert!(rel_close(base.rhs.eval(&k), moved.rhs.eval(&k), 1e-9));
            }
        }
    }

    #[test]
    fn passing_ky_fan_implies_passing_everything(seed in any::<u64>(), dim in 1usize..=6) {
        let (cfg, mut rng) = setup(seed, dim);
        let a = random_normal_in_disk(&cfg, &mut rng);
        let b = random_normal_in_disk(&cfg, &mut rng);
        let x = random_general(&cfg, &mut rng);
        let f = random_herglotz(&mut rng);
        let g = random_herglotz(&mut rng);
        let bound = check_thm1(Sign::Plus, &a, &b, &x, &f, &g).unwrap();
        let suite = norm_suite(dim);
        let ky_fan_ok = suite.iter().filter(|k| k.is_ky_fan()).all(|k| bound.report(k, meta(dim)).pass);
        prop_assert!(ky_fan_ok);
        for k in &suite {
            prop_assert!(bound.report(k, meta(dim)).pass, "{k}");
        }
    }

    #[test]
    fn hs_equality_at_origin(seed in any::<u64>(), dim in 1usize..=6) {
        let (cfg, mut rng) = setup(seed, dim);
        let zero = NormalMatrix::from_decomposition(
            SpectralDecomposition::new(vec![Complex64::new(0.0, 0.0); dim], ComplexMatrix::identity(dim)).unwrap(),
        );
        let x = random_general(&cfg, &mut rng);
        let f = random_herglotz(&mut rng);
        let g = random_herglotz(&mut rng);
        let (first, _) = check_thm_hs(Sign::Plus, &zero, &zero, &x, &f, &g).unwrap();
        prop_assert!((first.ratio(&NormKind::Schatten(2.0)) - 1.0).abs() <= 1e-12);
    }
}

fn meta(dim: usize) -> uinorm::inequalities::TrialMeta {
    uinorm::inequalities::TrialMeta {
        theorem: uinorm::inequalities::TheoremId::Thm1Plus,
        dim,
        seed: 0,
        trial_index: 0,
    }
}

#[test]
fn uniform_measure_is_nearly_constant() {
    let m = HerglotzMeasure::uniform(64).unwrap();
    for k in 0..50 {
        let z = Complex64::from_polar(0.5 * k as f64 / 49.0, 0.37 * k as f64);
        assert!((herglotz_eval(&m, z).unwrap() - 1.0).norm() <= 1e-12);
    }
}
