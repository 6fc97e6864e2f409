//! Property-based invariants spanning the whole crate: construction-order
//! insensitivity, algebraic laws on random inputs, and the scan/structure
//! equivalence fuzz.

use num_complex::Complex64;
use proptest::prelude::*;
use rand_chacha::rand_core::RngCore;

use dgpd_core::compact::{weak_compat_check, FiniteFn};
use dgpd_core::convolution::{compatibility_scan, convolve, AlgebraElement, ScanMode};
use dgpd_core::fixtures;
use dgpd_core::groupoid::FiniteGroupoidTable;
use dgpd_core::haar::HaarSystem;
use dgpd_core::nctorus::{
    nct_conv_bullet, nct_conv_circ, nct_generic_conv, NctMode, TorusFunction,
};
use dgpd_core::scalar::{Rational, Scalar};

/// Deterministically shuffles `items` using a seeded generator.
fn shuffle<T>(items: &mut Vec<T>, seed: u64) {
    let mut rng = fixtures::seeded_rng(seed);
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// The pair groupoid on `n` points assembled as raw name lists, so tests can
/// permute the input order freely.
fn pair_parts(
    n: u32,
) -> (
    Vec<String>,
    Vec<(String, String, String)>,
    Vec<(String, String)>,
    Vec<(String, String, String)>,
    Vec<(String, String)>,
) {
    let point = |i: u32| format!("{i}");
    let arrow = |i: u32, j: u32| format!("({i},{j})");
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut units = Vec::new();
    let mut compose = Vec::new();
    let mut inverse = Vec::new();
    for i in 1..=n {
        objects.push(point(i));
        units.push((point(i), arrow(i, i)));
        for j in 1..=n {
            arrows.push((arrow(i, j), point(j), point(i)));
            inverse.push((arrow(i, j), arrow(j, i)));
            for l in 1..=n {
                compose.push((arrow(i, j), arrow(j, l), arrow(i, l)));
            }
        }
    }
    (objects, arrows, units, compose, inverse)
}

proptest! {
    #[test]
    fn table_construction_ignores_input_order(seed in any::<u64>(), n in 1u32..=4) {
        let (objects, arrows, units, compose, inverse) = pair_parts(n);
        let reference = FiniteGroupoidTable::from_parts(
            objects.clone(), arrows.clone(), units.clone(), compose.clone(), inverse.clone(),
        ).expect("well formed");

        let (mut o, mut a, mut u, mut c, mut i) = (objects, arrows, units, compose, inverse);
        shuffle(&mut o, seed);
        shuffle(&mut a, seed.wrapping_add(1));
        shuffle(&mut u, seed.wrapping_add(2));
        shuffle(&mut c, seed.wrapping_add(3));
        shuffle(&mut i, seed.wrapping_add(4));
        let shuffled = FiniteGroupoidTable::from_parts(o, a, u, c, i).expect("well formed");

        prop_assert_eq!(reference.context_id(), shuffled.context_id());
        prop_assert_eq!(reference.compose_table(), shuffled.compose_table());
        for x in reference.arrows() {
            prop_assert_eq!(reference.arrow_name(x), shuffled.arrow_name(x));
            prop_assert_eq!(reference.inverse(x), shuffled.inverse(x));
        }
    }

    #[test]
    fn left_translation_permutes_each_target_fiber(seed in any::<u64>()) {
        let mut rng = fixtures::seeded_rng(seed);
        let (g, _) = fixtures::random_group(&mut rng);
        let table = g.table();
        for a in table.arrows() {
            let fiber = table.target_fiber(table.source(a)).to_vec();
            let mut images: Vec<_> = fiber
                .iter()
                .map(|&b| table.compose_opt(a, b).expect("endpoint match"))
                .collect();
            images.sort_unstable();
            images.dedup();
            // Injective with values in the target's fiber, hence a bijection.
            prop_assert_eq!(images.len(), fiber.len());
            for &im in &images {
                prop_assert_eq!(table.target(im), table.target(a));
            }
        }
    }

    #[test]
    fn convolution_is_associative_on_random_exact_elements(
        seed in any::<u64>(),
        coeffs in proptest::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 3),
    ) {
        let mut rng = fixtures::seeded_rng(seed);
        let g = fixtures::pair_groupoid(3);
        let haar = HaarSystem::counting(&g);
        let arrows: Vec<_> = g.arrows().collect();
        let mut pick = |nums: &(i64, i64, i64)| {
            let mut e = AlgebraElement::zero(&g);
            for &c in [nums.0, nums.1, nums.2].iter() {
                let a = arrows[(rng.next_u64() % arrows.len() as u64) as usize];
                e.add_to(a, Scalar::from_rational(Rational::from_integer(c)));
            }
            e
        };
        let (u, v, w) = (pick(&coeffs[0]), pick(&coeffs[1]), pick(&coeffs[2]));
        let left = convolve(&g, &haar, &convolve(&g, &haar, &u, &v).unwrap(), &w).unwrap();
        let right = convolve(&g, &haar, &u, &convolve(&g, &haar, &v, &w).unwrap()).unwrap();
        prop_assert!(left.equal_within(&right, 0.0));
    }

    #[test]
    fn torus_closed_forms_match_the_oracle_on_random_elements(
        r in 0.0f64..6.3,
        entries_u in proptest::collection::vec(((-3i64..=3), (-3i64..=3), -2.0f64..2.0, -2.0f64..2.0), 1..4),
        entries_v in proptest::collection::vec(((-3i64..=3), (-3i64..=3), -2.0f64..2.0, -2.0f64..2.0), 1..4),
    ) {
        let build = |entries: &[(i64, i64, f64, f64)]| {
            let coeffs: Vec<(i64, i64, Complex64)> = entries
                .iter()
                .map(|&(j, k, re, im)| (j, k, Complex64::new(re, im)))
                .collect();
            TorusFunction::from_coeffs(&coeffs)
        };
        let u = build(&entries_u);
        let v = build(&entries_v);
        let circ = nct_conv_circ(&u, &v, r);
        prop_assert!(circ.equal_within(&nct_generic_conv(&u, &v, r, NctMode::Circ), 1e-9));
        let bullet = nct_conv_bullet(&u, &v);
        prop_assert!(bullet.equal_within(&nct_generic_conv(&u, &v, r, NctMode::Bullet), 1e-9));
    }

    #[test]
    fn exact_scalar_arithmetic_never_drifts(
        a in -20i64..=20, b in 1i64..=9, c in -20i64..=20, d in 1i64..=9,
    ) {
        let x = Scalar::from_rational(Rational::new(a, b));
        let y = Scalar::from_rational(Rational::new(c, d));
        let sum = x + y;
        let product = x * y;
        prop_assert!(sum.is_exact() && product.is_exact());
        // Distance through the float embedding agrees with exact equality.
        prop_assert_eq!(sum.distance(&sum), 0.0);
        let theta = a as f64 / 7.0;
        let phase = Scalar::phase(theta);
        prop_assert!((phase.abs() - 1.0).abs() < 1e-12);
        prop_assert!(!(phase * x).is_exact() || x.is_exact_zero());
    }
}

proptest! {
    // Heavier cases: keep the count low so the whole suite stays fast.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exchange_scan_verdict_always_matches_structure(seed in any::<u64>()) {
        let mut rng = fixtures::seeded_rng(seed);
        let (dg, label) = fixtures::random_double(&mut rng);
        // The scan errors out internally if its verdict ever disagrees with
        // the direct table comparison, so Ok(_) is the property.
        let report = compatibility_scan(&dg, ScanMode::Indexed, 1e-9);
        prop_assert!(report.is_ok(), "scan failed on {}: {:?}", label, report.err());
    }

    #[test]
    fn averaged_exchange_never_fails_on_valid_representations(seed in any::<u64>()) {
        let mut rng = fixtures::seeded_rng(seed);
        let pick = rng.next_u64() % 3;
        let (g, reps) = match pick {
            0 => {
                let g = fixtures::cyclic_group(5);
                let reps = fixtures::cyclic_characters(&g);
                (g, reps)
            }
            1 => {
                let g = fixtures::symmetric_group(3);
                let reps = fixtures::s3_irreps(&g);
                (g, reps)
            }
            _ => {
                let g = fixtures::quaternion_group();
                let reps = fixtures::q8_irreps(&g);
                (g, reps)
            }
        };
        let rep = &reps[(rng.next_u64() % reps.len() as u64) as usize];
        let u = fixtures::random_finite_fn(&g, &mut rng);
        let v = fixtures::random_finite_fn(&g, &mut rng);
        for i in 0..rep.dim() {
            for k in 0..rep.dim() {
                let out = weak_compat_check(&g, rep, &u, &v, i, k, 1e-9).unwrap();
                prop_assert!(out.equal, "{} gap {} at ({i},{k})", rep.name(), out.gap);
            }
        }
        // Degenerate inputs stay inside the law as well.
        let zero = FiniteFn::zero(&g);
        let out = weak_compat_check(&g, rep, &zero, &u, 0, 0, 1e-9).unwrap();
        prop_assert!(out.equal && out.lhs.sup_norm() <= 1e-12);
    }
}
