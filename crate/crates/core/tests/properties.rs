mod common;

use common::*;
use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};
use tsvf::{
    abl_amplitude, abl_probabilities, build_projector, detailed_probability, global_probability, inner, is_projector,
    is_resolution_of_identity, matrix_element, tensor, weak_value, Amplitude, Ket, MeasurementSet, Operator,
    PrePostSelection, ProjectorKind, ProjectorSpec, Relabel,
};

fn proj(kind: ProjectorKind, n: usize) -> Operator {
    build_projector(&ProjectorSpec::new(kind, n).unwrap())
}

fn ket_from_seed(seed: u64, n: usize) -> Ket {
    random_ket(&mut StdRng::seed_from_u64(seed), n)
}

fn sd_set() -> Vec<Operator> {
    vec![
        proj(ProjectorKind::sd(1, 2, 3), 3),
        proj(ProjectorKind::sd(2, 3, 1), 3),
        proj(ProjectorKind::sd(3, 1, 2), 3),
        proj(ProjectorKind::all_same(), 3),
    ]
}

fn random_operator(seed: u64, n: usize) -> Operator {
    let mut rng = StdRng::seed_from_u64(seed);
    Operator::from_entries(n, random_amplitudes(&mut rng, 1 << (2 * n))).unwrap()
}

#[test]
fn projector_laws_up_to_six_particles() {
    for n in 2..=6 {
        let kinds: Vec<ProjectorKind> = all_kinds(n).into_iter().filter(|k| k.validate(n).is_ok()).collect();
        for kind in kinds {
            let op = proj(kind.clone(), n);
            assert!(op.is_diagonal(0.0), "{kind:?}");
            assert!(is_projector(&op), "{kind:?}");
            assert!(op.diagonal().iter().all(|d| *d == c(0.0, 0.0) || *d == c(1.0, 0.0)));
            let oracle = diagonal(&[(c(1.0, 0.0), kind.clone())], n);
            assert_eq!(op.diagonal(), oracle, "{kind:?} n={n}");
        }
    }
}

#[test]
fn complement_law_up_to_six_particles() {
    for n in 2..=6 {
        let id = Operator::identity(n).unwrap();
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let same = proj(ProjectorKind::pair_same(i, j), n);
                let diff = proj(ProjectorKind::pair_diff(i, j), n);
                assert_eq!(&same + &diff, id, "n={n} ({i},{j})");
                assert!(is_resolution_of_identity(&[same, diff]).unwrap());
            }
        }
    }
}

#[test]
fn decomposition_law() {
    let same = proj(ProjectorKind::pair_same(1, 2), 3);
    let parts = &proj(ProjectorKind::sd(1, 2, 3), 3) + &proj(ProjectorKind::all_same(), 3);
    assert_eq!(same, parts);
    assert!(is_resolution_of_identity(&sd_set()).unwrap());
    let pairs: Vec<Operator> = [(1, 2), (2, 3), (3, 1)]
        .iter()
        .map(|&(i, j)| proj(ProjectorKind::pair_same(i, j), 3))
        .collect();
    for a in 0..3 {
        for b in (a + 1)..3 {
            assert!(!tsvf::are_orthogonal(&pairs[a], &pairs[b]).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry(a in any::<u64>(), b in any::<u64>(), n in 1usize..=4) {
        let (x, y) = (ket_from_seed(a, n), ket_from_seed(b, n));
        prop_assert!(close(inner(&x, &y).unwrap(), inner(&y, &x).unwrap().conj()));
    }

    #[test]
    fn tensor_norm_multiplies(a in any::<u64>(), b in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
        let (x, y) = (ket_from_seed(a, n), ket_from_seed(b, m));
        let t = tensor(&[x.clone(), y.clone()]).unwrap();
        let norm = |k: &Ket| k.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((norm(&t) - norm(&x) * norm(&y)).abs() <= TOL);
        prop_assert_eq!(t.n_particles(), n + m);
    }

    #[test]
    fn matrix_element_is_linear_in_operator(
        a in any::<u64>(), b in any::<u64>(), s in any::<u64>(),
        re in -2.0f64..2.0, im in -2.0f64..2.0,
    ) {
        let (x, y) = (ket_from_seed(a, 3), ket_from_seed(b, 3));
        let (p, q) = (random_operator(s, 3), random_operator(s.wrapping_add(1), 3));
        let w = c(re, im);
        let combined = &p.scaled(w) + &q;
        let lhs = matrix_element(&x, &combined, &y).unwrap();
        let rhs = w * matrix_element(&x, &p, &y).unwrap() + matrix_element(&x, &q, &y).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11);
    }

    #[test]
    fn matrix_element_matches_label_sum(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (ket_from_seed(a, 3), ket_from_seed(b, 3));
        for kind in all_kinds(3) {
            let diag = diagonal(&[(c(1.0, 0.0), kind.clone())], 3);
            let oracle = diagonal_element(x.amplitudes(), &diag, y.amplitudes());
            prop_assert!(close(matrix_element(&x, &proj(kind, 3), &y).unwrap(), oracle));
        }
    }

    #[test]
    fn weak_values_sum_to_one_over_resolution(a in any::<u64>(), b in any::<u64>()) {
        let sel = PrePostSelection::new(ket_from_seed(a, 3), ket_from_seed(b, 3)).unwrap();
        prop_assume!(sel.overlap().norm() > 1e-3);
        for set in [sd_set(), vec![proj(ProjectorKind::pair_same(2, 3), 3), proj(ProjectorKind::pair_diff(2, 3), 3)]] {
            let total: Amplitude = set.iter().map(|op| weak_value(&sel, op).unwrap()).sum();
            prop_assert!(close(total, c(1.0, 0.0)), "{}", total);
        }
    }

    #[test]
    fn weak_value_numerator_identity(a in any::<u64>(), b in any::<u64>(), s in any::<u64>()) {
        let sel = PrePostSelection::new(ket_from_seed(a, 3), ket_from_seed(b, 3)).unwrap();
        prop_assume!(sel.overlap().norm() > 1e-3);
        let op = random_operator(s, 3);
        let lhs = weak_value(&sel, &op).unwrap() * sel.overlap();
        prop_assert!((lhs - abl_amplitude(&sel, &op).unwrap()).norm() <= 1e-11);
    }

    #[test]
    fn abl_probabilities_form_a_distribution(a in any::<u64>(), b in any::<u64>()) {
        let sel = PrePostSelection::new(ket_from_seed(a, 3), ket_from_seed(b, 3)).unwrap();
        let set = MeasurementSet::new(sd_set().into_iter().enumerate().map(|(k, op)| (k.to_string(), op)).collect()).unwrap();
        let result = abl_probabilities(&sel, &set).unwrap();
        prop_assert!(result.probabilities.iter().all(|p| (0.0..=1.0).contains(p)));
        prop_assert!((result.probabilities.iter().sum::<f64>() - 1.0).abs() <= TOL);
    }

    #[test]
    fn singleton_detailed_equals_global(a in any::<u64>(), b in any::<u64>(), k in 0usize..4) {
        let sel = PrePostSelection::new(ket_from_seed(a, 3), ket_from_seed(b, 3)).unwrap();
        let single = [sd_set()[k].clone()];
        let d = detailed_probability(&sel, &single).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d, global_probability(&sel, &single).unwrap());
    }

    #[test]
    fn global_phases_do_not_matter(a in any::<u64>(), b in any::<u64>(), t1 in 0.0f64..6.3, t2 in 0.0f64..6.3) {
        let (pre, post) = (ket_from_seed(a, 3), ket_from_seed(b, 3));
        let sel = PrePostSelection::new(pre.clone(), post.clone()).unwrap();
        let shifted = PrePostSelection::new(pre.with_phase(t1), post.with_phase(t2)).unwrap();
        prop_assume!(sel.overlap().norm() > 1e-3);
        for op in sd_set() {
            prop_assert!((abl_amplitude(&sel, &op).unwrap().norm() - abl_amplitude(&shifted, &op).unwrap().norm()).abs() <= TOL);
            prop_assert!((weak_value(&sel, &op).unwrap() - weak_value(&shifted, &op).unwrap()).norm() <= 1e-10);
        }
        let pair = [proj(ProjectorKind::pair_same(1, 2), 3), proj(ProjectorKind::pair_diff(1, 2), 3)];
        prop_assert!((detailed_probability(&sel, &pair).unwrap() - detailed_probability(&shifted, &pair).unwrap()).abs() <= TOL);
        prop_assert!((global_probability(&sel, &pair).unwrap() - global_probability(&shifted, &pair).unwrap()).abs() <= TOL);
    }

    #[test]
    fn relabeling_is_numerically_inert(a in any::<u64>(), b in any::<u64>()) {
        let (pre, post) = (ket_from_seed(a, 3), ket_from_seed(b, 3));
        let sel = PrePostSelection::new(pre.clone(), post.clone()).unwrap();
        let spin = PrePostSelection::new(pre.relabel_to_spin(), post.relabel_to_spin()).unwrap();
        for op in sd_set() {
            let x = abl_amplitude(&sel, &op).unwrap();
            let y = abl_amplitude(&spin, &op.relabel_to_spin()).unwrap();
            prop_assert_eq!((x.re.to_bits(), x.im.to_bits()), (y.re.to_bits(), y.im.to_bits()));
        }
    }
}
