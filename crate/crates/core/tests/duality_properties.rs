use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqspace::acceptance::{random_phi, random_weight};
use seqspace::duality::{dot, dual_norm, is_norming_pair, norming_extremes, norming_functional};
use seqspace::spaces::young_conjugate;
use seqspace::{LorentzSpec, OrliczFlavor, OrliczSpec, SpaceSpec};

fn space() -> impl Strategy<Value = SpaceSpec> {
    (any::<u64>(), 2usize..=5, 0u8..3, 1.0f64..4.0).prop_map(|(seed, dim, kind, p)| {
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
    })
}

fn space_and_x() -> impl Strategy<Value = (SpaceSpec, Vec<f64>)> {
    space()
        .prop_flat_map(|s| {
            let d = s.dim();
            (Just(s), prop::collection::vec(-5.0f64..5.0, d))
        })
        .prop_filter("nonzero", |(_, x)| x.iter().any(|v| v.abs() > 1e-3))
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).all(|(u, v)| (u - v).abs() <= tol * scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fenchel_young_with_equality_on_the_subdifferential(seed in any::<u64>(), t in 0.0f64..3.0, u in 0.0f64..6.0) {
        let phi = random_phi(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = young_conjugate(&phi);
        let star = c.eval(u);
        if star.is_finite() {
            prop_assert!(phi.value(t) + star >= t * u - 1e-10);
        }
        let slope = phi.deriv_right(t);
        let gap = phi.value(t) + c.eval(slope) - t * slope;
        prop_assert!(gap.abs() <= 1e-9 * (1.0 + phi.value(t)), "gap {gap}");
    }

    #[test]
    fn biconjugate_recovers_phi(seed in any::<u64>(), t in 0.0f64..3.0) {
        // φ(t) = sup_u (tu − φ*(u)); the sup is attained on [0, φ′(t)]
        let phi = random_phi(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = young_conjugate(&phi);
        let top = phi.deriv_right(t);
        let k = 4000;
        let h = top / k as f64;
        let sup = (0..=k)
            .map(|i| {
                let u = i as f64 * h;
                t * u - c.eval(u)
            })
            .fold(0.0f64, f64::max);
        prop_assert!(sup <= phi.value(t) + 1e-9);
        prop_assert!(sup >= phi.value(t) - t * h - 1e-9, "{sup} vs {}", phi.value(t));
    }

    #[test]
    fn canonical_functional_norms((s, x) in space_and_x()) {
        let g = norming_functional(&s, &x).unwrap();
        let n = s.norm(&x).unwrap();
        prop_assert!((dot(&g, &x) - n * n).abs() <= 1e-8 * n * n.max(1.0));
        prop_assert!((dual_norm(&s, &g).unwrap() - n).abs() <= 1e-7 * n.max(1.0));
    }

    #[test]
    fn canonical_functional_is_equivariant((s, x) in space_and_x(), lambda in 0.1f64..10.0, flip in 0usize..5) {
        let g = norming_functional(&s, &x).unwrap();
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        let gs: Vec<f64> = g.iter().map(|v| lambda * v).collect();
        prop_assert!(close(&norming_functional(&s, &scaled).unwrap(), &gs, 1e-8));
        let j = flip % x.len();
        let mut y = x.clone();
        y[j] = -y[j];
        let mut gy = g.clone();
        gy[j] = -gy[j];
        prop_assert!(close(&norming_functional(&s, &y).unwrap(), &gy, 1e-8));
    }

    #[test]
    fn extremes_are_norming((s, x) in space_and_x(), seed in any::<u64>()) {
        let ex = norming_extremes(&s, &x, 16, seed).unwrap();
        prop_assert!(!ex.is_empty());
        prop_assert!(close(&ex[0], &norming_functional(&s, &x).unwrap(), 1e-12));
        for g in &ex {
            prop_assert!(is_norming_pair(&s, &x, g, 1e-7).unwrap());
        }
    }
}

#[test]
fn tied_lorentz_vector_has_canonical_plus_permuted_extremes() {
    let s = SpaceSpec::from(LorentzSpec::new(seqspace::Weight::new(vec![1.0, 0.6, 0.3]).unwrap(), 1.0).unwrap());
    let x = [1.0, 1.0, 0.5];
    let n = s.norm(&x).unwrap();
    assert!((n - 1.75).abs() < 1e-12);
    // rescaled so that x*(x) = ‖x‖², i.e. by ‖x‖ when p = 1
    let ex = norming_extremes(&s, &x, 16, 0).unwrap();
    let want = [[0.8, 0.8, 0.3], [1.0, 0.6, 0.3], [0.6, 1.0, 0.3]];
    assert_eq!(ex.len(), want.len());
    for w in want {
        let w: Vec<f64> = w.iter().map(|v| v * n).collect();
        assert!(ex.iter().any(|g| close(g, &w, 1e-12)), "{w:?} missing from {ex:?}");
    }
}
