mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use qubit_monotones::linalg::{
    binomial, combinations, determinant, rank_combination, unrank_combination, ComplexMatrix,
};
use qubit_monotones::monotones::{d_monotone, e_monotone};
use qubit_monotones::partition::{bilinear, epsilon_apply, reshape, unreshape, EpsilonForm, Partition};
use qubit_monotones::plucker::{gauge_transform, plucker_coordinates, plucker_relation_residual};
use qubit_monotones::state::{parse_state, random_state, serialize_state, PureState};
use qubit_monotones::transforms::{apply_local, random_local_unitaries, random_sl2, random_slocc};

fn seeded_state(n: usize, seed: u64) -> PureState {
    random_state(n, &mut rng(seed)).unwrap()
}

fn seeded_vec(len: usize, seed: u64) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..len).map(|_| gaussian(&mut r)).collect()
}

fn to_matrix(d: &Dense) -> ComplexMatrix {
    ComplexMatrix::from_rows(d).unwrap()
}

fn any_partition(n: usize, pick: usize) -> Partition {
    let all = Partition::enumerate(n);
    all[pick % all.len()].clone()
}

#[test]
fn rank_unrank_exhaustive() {
    for universe in 1..=16 {
        for size in 1..=4.min(universe) {
            let all: Vec<Vec<usize>> = combinations(universe, size).collect();
            assert_eq!(all.len(), binomial(universe, size));
            for (i, members) in all.iter().enumerate() {
                assert_eq!(rank_combination(universe, members).unwrap(), i);
                assert_eq!(&unrank_combination(i, universe, size).unwrap(), members);
            }
        }
    }
}

#[test]
fn partition_counts() {
    for (n, want) in [(2, 1), (3, 3), (4, 7), (5, 15), (6, 31)] {
        assert_eq!(Partition::enumerate(n).len(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_multiplicative(dim in 1usize..=8, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = gaussian_dense(dim, dim, &mut r);
        let b = gaussian_dense(dim, dim, &mut r);
        let ab = determinant(&to_matrix(&dense_matmul(&a, &b))).unwrap();
        let prod = determinant(&to_matrix(&a)).unwrap() * determinant(&to_matrix(&b)).unwrap();
        prop_assert!(crel(ab, prod) < 1e-10);
    }

    #[test]
    fn reshape_round_trips(n in 2usize..=7, pick in any::<usize>(), seed in any::<u64>()) {
        let s = seeded_state(n, seed);
        let p = any_partition(n, pick);
        let z = reshape(&s, &p).unwrap();
        prop_assert_eq!((z.rows(), z.cols()), (p.rows(), p.cols()));
        let mut before: Vec<(u64, u64)> = s.amplitudes().iter().map(|a| (a.re.to_bits(), a.im.to_bits())).collect();
        let mut after: Vec<(u64, u64)> = z.entries().iter().map(|a| (a.re.to_bits(), a.im.to_bits())).collect();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
        prop_assert_eq!(unreshape(&z, &p).unwrap(), s);
    }

    #[test]
    fn epsilon_squares_to_sign(m in 0usize..=8, seed in any::<u64>()) {
        let v = seeded_vec(1 << m, seed);
        let twice = epsilon_apply(m, &epsilon_apply(m, &v).unwrap()).unwrap();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for (x, y) in twice.iter().zip(&v) {
            prop_assert_eq!(*x, y * sign);
        }
    }

    #[test]
    fn bilinear_symmetry_is_exact(m in 0usize..=8, seed in any::<u64>()) {
        let a = seeded_vec(1 << m, seed);
        let b = seeded_vec(1 << m, seed.wrapping_add(1));
        let ab = bilinear(m, &a, &b).unwrap();
        let ba = bilinear(m, &b, &a).unwrap();
        if EpsilonForm::new(m).is_symmetric() {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, -ba);
            prop_assert_eq!(bilinear(m, &a, &a).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn bilinear_matches_dense_form(m in 0usize..=6, seed in any::<u64>()) {
        let a = seeded_vec(1 << m, seed);
        let b = seeded_vec(1 << m, seed ^ 0x5555);
        let gb = mat_vec(&dense_epsilon(m), &b);
        let want: Complex64 = a.iter().zip(&gb).map(|(x, y)| x * y).sum();
        prop_assert!(crel(bilinear(m, &a, &b).unwrap(), want) < 1e-12);
        prop_assert_eq!(EpsilonForm::new(m).materialize(), to_matrix(&dense_epsilon(m)));
    }

    #[test]
    fn spin_flip_form(m in 1usize..=6, seed in any::<u64>()) {
        // ε^{⊗m} = i^m σ_y^{⊗m}; for m = 2 this is -σ_y ⊗ σ_y
        let a = seeded_vec(1 << m, seed);
        let b = seeded_vec(1 << m, seed ^ 0xaaaa);
        let sb = mat_vec(&dense_sigma_y(m), &b);
        let flipped: Complex64 = a.iter().zip(&sb).map(|(x, y)| x * y).sum();
        let phase = Complex64::new(0.0, 1.0).powu(m as u32);
        prop_assert!(crel(bilinear(m, &a, &b).unwrap(), phase * flipped) < 1e-12);
    }

    #[test]
    fn bilinear_scales_by_det_under_one_slot(m in 1usize..=6, slot in 0usize..6, seed in any::<u64>()) {
        let slot = slot % m;
        let mut r = rng(seed);
        let s = random_sl2(&mut r);
        let a = seeded_vec(1 << m, seed ^ 1);
        let b = seeded_vec(1 << m, seed ^ 2);
        let apply = |v: &[Complex64]| {
            let state = PureState::new(m, v.to_vec()).unwrap();
            let op = qubit_monotones::transforms::LocalOperator::new(slot + 1, s.clone()).unwrap();
            apply_local(&state, &[op]).unwrap().into_amplitudes()
        };
        let det = determinant(&s).unwrap();
        let lhs = bilinear(m, &apply(&a), &apply(&b)).unwrap();
        prop_assert!(crel(lhs, det * bilinear(m, &a, &b).unwrap()) < 1e-10);
    }

    #[test]
    fn gauge_covariance(rows in 2usize..=8, seed in any::<u64>()) {
        let mut r = rng(seed);
        let z = gaussian_dense(rows, 2, &mut r);
        let s = gaussian_dense(2, 2, &mut r);
        let zs = gauge_transform(&to_matrix(&z), &to_matrix(&s)).unwrap();
        let det = cofactor_det(&s);
        let p = plucker_coordinates(&to_matrix(&z)).unwrap();
        let q = plucker_coordinates(&zs).unwrap();
        for (x, y) in p.coords().iter().zip(q.coords()) {
            prop_assert!((det * x - y).norm() <= 1e-10 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn plucker_relation_holds(seed in any::<u64>()) {
        let z = gaussian_dense(4, 2, &mut rng(seed));
        let p = plucker_coordinates(&to_matrix(&z)).unwrap();
        prop_assert!(plucker_relation_residual(&p).unwrap() <= 1e-12 * (1.0 + p.norm_sqr()));
    }

    #[test]
    fn serialization_round_trips(n in 1usize..=6, seed in any::<u64>()) {
        let s = seeded_state(n, seed);
        prop_assert_eq!(parse_state(&serialize_state(&s)).unwrap(), s);
    }

    #[test]
    fn monotones_are_homogeneous(n in 2usize..=5, pick in any::<usize>(), seed in any::<u64>(),
                                  re in -3.0f64..3.0, im in -3.0f64..3.0) {
        prop_assume!(re.hypot(im) > 0.05);
        let s = seeded_state(n, seed);
        let p = any_partition(n, pick);
        let c = Complex64::new(re, im);
        let scale = c.norm_sqr().powi(2);
        let scaled = s.scaled(c);
        prop_assert!(rel(e_monotone(&scaled, &p).unwrap(), scale * e_monotone(&s, &p).unwrap()) < 1e-10);
        prop_assert!(rel(d_monotone(&scaled, &p).unwrap(), scale * d_monotone(&s, &p).unwrap()) < 1e-10);
    }

    #[test]
    fn range_and_ordering(n in 2usize..=6, pick in any::<usize>(), seed in any::<u64>()) {
        let s = seeded_state(n, seed);
        let p = any_partition(n, pick);
        let d = d_monotone(&s, &p).unwrap();
        let e = e_monotone(&s, &p).unwrap();
        prop_assert!(e >= 0.0);
        prop_assert!(e <= d * (1.0 + 1e-12) + 1e-15);
        prop_assert!(d <= 1.0 + 1e-12);
    }

    #[test]
    fn local_unitaries_preserve_both(n in 2usize..=5, pick in any::<usize>(), seed in any::<u64>()) {
        let s = seeded_state(n, seed);
        let p = any_partition(n, pick);
        let u = apply_local(&s, &random_local_unitaries(n, &mut rng(seed ^ 7))).unwrap();
        prop_assert!(rel(d_monotone(&u, &p).unwrap(), d_monotone(&s, &p).unwrap()) < 1e-10);
        prop_assert!(rel(e_monotone(&u, &p).unwrap(), e_monotone(&s, &p).unwrap()) < 1e-10);
    }

    #[test]
    fn slocc_preserves_e(n in 2usize..=5, pick in any::<usize>(), seed in any::<u64>()) {
        let s = seeded_state(n, seed);
        let p = any_partition(n, pick);
        let t = apply_local(&s, &random_slocc(n, &mut rng(seed ^ 9))).unwrap();
        prop_assert!(rel(e_monotone(&t, &p).unwrap(), e_monotone(&s, &p).unwrap()) < 1e-8);
    }
}
