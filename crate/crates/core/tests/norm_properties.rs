use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqspace::acceptance::{random_phi, random_weight};
use seqspace::{LorentzSpec, OrliczFlavor, OrliczSpec, SpaceSpec, Weight};

const REL: f64 = 1e-8;

/// A Lorentz, Luxemburg or Orlicz-norm space of dimension 2..=5.
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

fn space_and_vectors(k: usize) -> impl Strategy<Value = (SpaceSpec, Vec<Vec<f64>>)> {
    space().prop_flat_map(move |s| {
        let d = s.dim();
        (
            Just(s),
            prop::collection::vec(prop::collection::vec(-5.0f64..5.0, d), k),
        )
    })
}

fn nonzero(x: &[f64]) -> bool {
    x.iter().any(|v| v.abs() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn positive_definite_and_homogeneous((s, xs) in space_and_vectors(1), lambda in -4.0f64..4.0) {
        let x = &xs[0];
        prop_assume!(nonzero(x));
        let n = s.norm(x).unwrap();
        prop_assert!(n > 0.0);
        prop_assert_eq!(s.norm(&vec![0.0; s.dim()]).unwrap(), 0.0);
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        let ns = s.norm(&scaled).unwrap();
        prop_assert!((ns - lambda.abs() * n).abs() <= REL * (1.0 + lambda.abs() * n), "{ns} vs {}", lambda.abs() * n);
    }

    #[test]
    fn triangle_inequality((s, xs) in space_and_vectors(2)) {
        let sum: Vec<f64> = xs[0].iter().zip(&xs[1]).map(|(a, b)| a + b).collect();
        let lhs = s.norm(&sum).unwrap();
        let rhs = s.norm(&xs[0]).unwrap() + s.norm(&xs[1]).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + REL) + 1e-12, "{lhs} > {rhs}");
    }

    #[test]
    fn symmetric_under_permutations_and_signs((s, xs) in space_and_vectors(1), shift in 0usize..5, signs in any::<u8>()) {
        let x = &xs[0];
        let d = x.len();
        let y: Vec<f64> = (0..d)
            .map(|i| {
                let v = x[(i + shift) % d];
                if signs >> i & 1 == 1 { -v } else { v }
            })
            .collect();
        let (nx, ny) = (s.norm(x).unwrap(), s.norm(&y).unwrap());
        prop_assert!((nx - ny).abs() <= REL * (1.0 + nx));
    }

    #[test]
    fn monotone_in_moduli((s, xs) in space_and_vectors(1), t in 0.0f64..1.0) {
        let x = &xs[0];
        let shrunk: Vec<f64> = x.iter().enumerate().map(|(i, v)| if i == 0 { t * v } else { *v }).collect();
        prop_assert!(s.norm(&shrunk).unwrap() <= s.norm(x).unwrap() * (1.0 + REL) + 1e-12);
    }

    #[test]
    fn luxemburg_below_orlicz_below_twice((seed, dim) in (any::<u64>(), 2usize..=5), x in prop::collection::vec(-5.0f64..5.0, 5)) {
        let phi = random_phi(&mut ChaCha8Rng::seed_from_u64(seed));
        let x = &x[..dim];
        let lux = OrliczSpec::new(phi.clone(), OrliczFlavor::Luxemburg, dim).unwrap();
        let orl = OrliczSpec::new(phi, OrliczFlavor::Orlicz, dim).unwrap();
        let (a, b) = (SpaceSpec::from(lux).norm(x).unwrap(), SpaceSpec::from(orl).norm(x).unwrap());
        prop_assert!(a <= b * (1.0 + REL) + 1e-12 && b <= 2.0 * a * (1.0 + REL) + 1e-12, "{a} {b}");
    }

    #[test]
    fn flat_weight_is_lp(x in prop::collection::vec(-5.0f64..5.0, 1..6), p in 1.0f64..5.0) {
        let s = SpaceSpec::from(LorentzSpec::new(Weight::ones(x.len()), p).unwrap());
        let lp = x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
        assert_relative_eq!(s.norm(&x).unwrap(), lp, max_relative = 1e-12, epsilon = 1e-300);
    }
}

#[test]
fn power_orlicz_is_lp() {
    for p in [1.0, 1.5, 2.0, 3.0] {
        let phi = seqspace::OrliczFunction::power(p).unwrap();
        let s = SpaceSpec::from(OrliczSpec::new(phi, OrliczFlavor::Luxemburg, 3).unwrap());
        let x = [1.0, -2.0, 0.5];
        let lp = x.iter().map(|v: &f64| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
        assert_relative_eq!(s.norm(&x).unwrap(), lp, max_relative = 1e-10);
    }
}
