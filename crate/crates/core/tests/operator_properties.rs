use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqspace::acceptance::{random_blocks, random_phi, random_weight};
use seqspace::operators::{build_projection, operator_norm, orthogonal_projection, ProjectionSpec};
use seqspace::positivity::{prop_a_check, Verdict};
use seqspace::theorems::{
    build_averaging_projection, normalize_functional, orlicz_subspace_verdict, witness_params, witness_x,
    SubspaceVerdict, Variant,
};
use seqspace::{LorentzSpec, OrliczFlavor, OrliczSpec, SearchBudget, SpaceSpec};

fn space(seed: u64, dim: usize, kind: u8, p: f64) -> SpaceSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        0 => LorentzSpec::new(random_weight(&mut rng, dim), p).unwrap().into(),
        1 => OrliczSpec::new(random_phi(&mut rng), OrliczFlavor::Luxemburg, dim)
            .unwrap()
            .into(),
        _ => OrliczSpec::new(random_phi(&mut rng), OrliczFlavor::Orlicz, dim)
            .unwrap()
            .into(),
    }
}

/// Kernel functionals of rank `k < dim`, generic enough to be independent.
fn functionals(dim: usize, k: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dim), k)
}

fn same_verdict(a: &SubspaceVerdict, b: &SubspaceVerdict) -> bool {
    match (a, b) {
        (SubspaceVerdict::Compatible { gamma: Some(x) }, SubspaceVerdict::Compatible { gamma: Some(y) }) => {
            (x - y).abs() <= 1e-12 * x.abs()
        }
        _ => a == b,
    }
}

fn max_diff(a: &seqspace::operators::LinearOperator, b: &seqspace::operators::LinearOperator) -> f64 {
    a.max_abs_diff(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projections_are_idempotent((dim, fs) in (3usize..=6).prop_flat_map(|d| (Just(d), (1..d).prop_flat_map(move |k| functionals(d, k))))) {
        let Ok(ps) = orthogonal_projection(&fs) else { return Ok(()) };
        let p = build_projection(&ps, dim).unwrap();
        prop_assert!(max_diff(&p.compose(&p), &p) < 1e-9);
        for f in &fs {
            // P vanishes on nothing it should not: f(Px) = 0 for every x
            let pt = p.apply_transpose(f);
            prop_assert!(pt.iter().all(|v| v.abs() < 1e-9));
        }
        let q = p.complement();
        prop_assert!(max_diff(&q.compose(&q), &q) < 1e-9);
        prop_assert!(max_diff(&p.compose(&q), &seqspace::operators::LinearOperator::zeros(dim)) < 1e-9);
    }

    #[test]
    fn opnorm_dominates_every_basis_ratio(seed in any::<u64>(), dim in 2usize..=4, kind in 0u8..3, p in 1.0f64..3.0, rows in prop::collection::vec(-2.0f64..2.0, 16)) {
        let s = space(seed, dim, kind, p);
        let m: Vec<Vec<f64>> = (0..dim).map(|i| rows[i * dim..(i + 1) * dim].to_vec()).collect();
        let t = seqspace::operators::LinearOperator::from_rows(&m).unwrap();
        let est = operator_norm(&s, &t, SearchBudget::new(2, 20), seed).unwrap();
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            let ratio = s.norm(&t.apply(&e)).unwrap() / s.norm(&e).unwrap();
            prop_assert!(est.estimate >= ratio * (1.0 - 1e-12), "{} < {ratio}", est.estimate);
        }
        let x = est.maximizer.clone();
        prop_assert!((s.norm(&x).unwrap() - 1.0).abs() < 1e-9 || est.estimate == 0.0);
    }

    #[test]
    fn opnorm_is_deterministic_and_monotone_in_budget(seed in any::<u64>(), dim in 2usize..=4, p in 1.0f64..3.0, rows in prop::collection::vec(-2.0f64..2.0, 16)) {
        let s = space(seed, dim, 0, p);
        let m: Vec<Vec<f64>> = (0..dim).map(|i| rows[i * dim..(i + 1) * dim].to_vec()).collect();
        let t = seqspace::operators::LinearOperator::from_rows(&m).unwrap();
        let small = operator_norm(&s, &t, SearchBudget::new(2, 15), seed).unwrap();
        prop_assert_eq!(&small, &operator_norm(&s, &t, SearchBudget::new(2, 15), seed).unwrap());
        let more_restarts = operator_norm(&s, &t, SearchBudget::new(5, 15), seed).unwrap();
        let more_steps = operator_norm(&s, &t, SearchBudget::new(2, 40), seed).unwrap();
        prop_assert!(more_restarts.estimate >= small.estimate);
        prop_assert!(more_steps.estimate >= small.estimate);
    }

    #[test]
    fn witness_lies_in_the_kernel(f in prop::collection::vec(0.05f64..5.0, 3..7), a in 0.0f64..=1.0) {
        let mut f = f;
        f.sort_by(|x, y| y.total_cmp(x));
        let params = witness_params(&f, a, 0.0).unwrap();
        let x = witness_x(&f, &params, Variant::General).unwrap();
        let fx: f64 = f.iter().zip(&x).map(|(u, v)| u * v).sum();
        prop_assert!(fx.abs() < 1e-9 * f.iter().sum::<f64>());
    }

    #[test]
    fn normalization_round_trips(f in prop::collection::vec(-4.0f64..4.0, 3..7)) {
        prop_assume!(f.iter().filter(|v| v.abs() > 1e-6).count() >= 1);
        let nf = normalize_functional(&f);
        prop_assert!(nf.values.windows(2).all(|w| w[0] >= w[1]) && nf.values.iter().all(|v| *v > 0.0));
        // mapping the normalized functional back gives f up to a positive scale
        let back = nf.to_user(&nf.values, f.len());
        let scale = f.iter().zip(&back).find(|(a, _)| a.abs() > 1e-6).map(|(a, b)| b / a).unwrap();
        prop_assert!(scale > 0.0);
        for (a, b) in f.iter().zip(&back) {
            prop_assert!((a * scale - b).abs() < 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn orlicz_verdict_ignores_coordinate_order_and_scaling(seed in any::<u64>(), i in 0usize..5, j in 0usize..5, c in 0.2f64..5.0, g in 0.5f64..2.0, shift in 0usize..5) {
        prop_assume!(i != j);
        let phi = random_phi(&mut ChaCha8Rng::seed_from_u64(seed));
        let s = OrliczSpec::new(phi, OrliczFlavor::Luxemburg, 5).unwrap();
        let mut f = vec![0.0; 5];
        f[i] = c;
        f[j] = -c * g;
        let base = orlicz_subspace_verdict(&s, &[f.clone()], true).unwrap();
        let rotated: Vec<f64> = (0..5).map(|k| f[(k + shift) % 5]).collect();
        let scaled: Vec<f64> = f.iter().map(|v| -2.5 * v).collect();
        for other in [rotated, scaled] {
            let v = orlicz_subspace_verdict(&s, &[other], true).unwrap();
            prop_assert!(same_verdict(&v, &base), "{:?} vs {:?}", v, base);
        }
        // equal moduli are never ruled out
        f[j] = -c;
        let equal = orlicz_subspace_verdict(&s, &[f], true).unwrap();
        let ruled_out = matches!(equal, SubspaceVerdict::Incompatible { .. });
        prop_assert!(!ruled_out, "{:?}", equal);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn lorentz_averaging_projections_are_consistent(seed in any::<u64>(), dim in 3usize..=4, p in 1.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: SpaceSpec = LorentzSpec::new(random_weight(&mut rng, dim), p).unwrap().into();
        let b = random_blocks(&mut rng, dim);
        let ps: ProjectionSpec = build_averaging_projection(&s, &b).unwrap();
        let check = prop_a_check(&s, &ps, SearchBudget::new(8, 60), seed, 1e-9).unwrap();
        prop_assert!(check.consistent, "{check:?}");
        // a nonzero projection has norm at least 1
        prop_assert!(check.norm_p.estimate >= 1.0 - 1e-9);
        if check.norm_id_minus_p.estimate <= 1.0 + 1e-6 {
            prop_assert_ne!(check.positivity_of_p.verdict, Verdict::Refuted);
        }
    }
}
