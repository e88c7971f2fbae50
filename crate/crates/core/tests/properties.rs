mod common;

use nalgebra::{DMatrix, Matrix3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sublorentz::classifier::structure_functions_for;
use sublorentz::frame::{boost, flip_orientation, AdaptedStructure, Flip, StructureFunctions};
use sublorentz::invariants::{h_tensor, kappa, normalize_h, so11_conjugate};
use sublorentz::num::{fmt12, round12};
use sublorentz::prolongation::{prolongation_dim, GradedSymbol};
use sublorentz::{
    canonical_model, classify, recognize, same_class, HClass, HTensor, LieAlgebraClass, SolutionId,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn class_strategy() -> impl Strategy<Value = LieAlgebraClass> {
    prop_oneof![
        Just(LieAlgebraClass::L30),
        Just(LieAlgebraClass::L31),
        Just(LieAlgebraClass::L3Minus1),
        (-1.0..=1.0f64)
            .prop_filter("nonzero", |e| e.abs() > 1e-3)
            .prop_map(|eta| LieAlgebraClass::L32 { eta }),
        Just(LieAlgebraClass::L33),
        (0.0..5.0f64).prop_map(|eta| LieAlgebraClass::L34 { eta }),
        Just(LieAlgebraClass::L35),
        Just(LieAlgebraClass::L36),
    ]
}

fn constructed(seed: u64) -> AdaptedStructure {
    let (h, k, aux, sol) = common::random_parameters(&mut rng(seed));
    AdaptedStructure::from_structure_functions(&structure_functions_for(h, k, aux, sol).unwrap(), 1e-9).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn killing_form_is_congruent(class in class_strategy(), seed in any::<u64>()) {
        let model = canonical_model(&class).unwrap();
        let p = common::random_basis_change(&mut rng(seed), 1e3);
        let moved = model.change_basis(&p).unwrap();
        let want = model.killing_form().congruent(&p);
        let scale = want.matrix().amax().max(1.0);
        prop_assert!((moved.killing_form().matrix() - want.matrix()).amax() <= 1e-9 * scale);
    }

    #[test]
    fn derived_dimension_is_invariant(class in class_strategy(), seed in any::<u64>()) {
        let model = canonical_model(&class).unwrap();
        let p = common::random_basis_change(&mut rng(seed), 1e3);
        prop_assert_eq!(model.derived_algebra().dim(), model.change_basis(&p).unwrap().derived_algebra().dim());
    }

    #[test]
    fn recognition_is_basis_independent(class in class_strategy(), seed in any::<u64>()) {
        let p = common::random_basis_change(&mut rng(seed), 1e2);
        let got = recognize(&canonical_model(&class).unwrap().change_basis(&p).unwrap()).unwrap().class;
        prop_assert!(same_class(&got, &class, 1e-6), "{} recognized as {}", class, got);
    }

    #[test]
    fn kappa_is_boost_invariant_and_h_equivariant(seed in any::<u64>(), t in -3.0..3.0f64) {
        let s = constructed(seed);
        let b = boost(&s, t).unwrap();
        prop_assert!((kappa(&b) - kappa(&s)).abs() <= 1e-8 * kappa(&s).abs().max(1.0));
        let want = so11_conjugate(&h_tensor(&s), t);
        let got = h_tensor(&b);
        let scale = want.a.abs().max(want.b.abs()).max(1.0);
        prop_assert!((got.a - want.a).abs().max((got.b - want.b).abs()) <= 1e-8 * scale);
    }

    #[test]
    fn conjugation_is_a_group_action(a in -3.0..3.0f64, b in -3.0..3.0f64, s in -2.0..2.0f64, t in -2.0..2.0f64) {
        let h = HTensor::new(a, b);
        let twice = so11_conjugate(&so11_conjugate(&h, s), t);
        let once = so11_conjugate(&h, s + t);
        prop_assert!((twice.a - once.a).abs() + (twice.b - once.b).abs() <= 1e-9 * (1.0 + once.a.abs() + once.b.abs()));
        prop_assert!((twice.det() - h.det()).abs() <= 1e-9 * (1.0 + twice.a.powi(2) + twice.b.powi(2)));
    }

    #[test]
    fn normal_form_reaches_its_representative(a in -3.0..3.0f64, b in -3.0..3.0f64, t in -2.0..2.0f64) {
        let h = so11_conjugate(&HTensor::new(a, b), t);
        let form = normalize_h(&h, 1e-9);
        prop_assume!(form.class != HClass::Zero);
        let reached = so11_conjugate(&h, form.t);
        let rep = form.representative();
        prop_assert!((reached.a - rep.a).abs() + (reached.b - rep.b).abs() <= 1e-6 * (1.0 + rep.a.abs() + rep.b.abs()));
        prop_assert_eq!(normalize_h(&HTensor::new(a, b), 1e-9).class, form.class);
    }

    #[test]
    fn classification_survives_disguise(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (h, k, aux, sol) = common::random_parameters(&mut r);
        let sf = structure_functions_for(h, k, aux, sol).unwrap();
        let plain = classify(&AdaptedStructure::from_structure_functions(&sf, 1e-9).unwrap()).unwrap();
        let disguised = classify(&common::disguise(&mut r, &sf, 1e2)).unwrap();
        prop_assert_eq!(plain.row.id, disguised.row.id);
        prop_assert!(same_class(&plain.realized_algebra, &disguised.realized_algebra, 1e-6));
        prop_assert_eq!(plain.status, disguised.status);
    }

    #[test]
    fn orientation_flips_preserve_the_row(seed in any::<u64>()) {
        let s = constructed(seed);
        let before = classify(&s).unwrap();
        for flip in [Flip::Time, Flip::Space, Flip::Both] {
            let after = classify(&flip_orientation(&s, flip).unwrap()).unwrap();
            prop_assert_eq!(before.row.id, after.row.id);
            prop_assert!((before.invariants.kappa - after.invariants.kappa).abs() < 1e-9 * before.invariants.kappa.abs().max(1.0));
        }
    }

    #[test]
    fn det_neg_forces_vanishing_horizontal_bracket(
        k in -3.0..3.0f64,
        chi in prop_oneof![-3.0..-0.1f64, 0.1..3.0f64],
        c112 in -1.0..1.0f64,
        c212 in -1.0..1.0f64,
    ) {
        prop_assume!(c112.abs() + c212.abs() > 1e-3);
        let sf = StructureFunctions { c: chi, c213: k, c123: k, c112, c212 };
        prop_assert!(sf.algebra().jacobi_defect() > 0.0);
    }

    #[test]
    fn prolongation_is_basis_independent(entries in proptest::collection::vec(-2.0..2.0f64, 5)) {
        let p = DMatrix::from_row_slice(3, 3, &[
            entries[0], entries[1], 0.0,
            entries[2], entries[3], 0.0,
            0.0, 0.0, entries[4],
        ]);
        let m1 = Matrix3::new(entries[0], entries[1], 0.0, entries[2], entries[3], 0.0, 0.0, 0.0, 1.0);
        prop_assume!((entries[0] * entries[3] - entries[1] * entries[2]).abs() > 0.1 && entries[4].abs() > 0.1);
        prop_assume!(sublorentz::algebra::condition_number(&m1) < 1e2);
        let moved = GradedSymbol::heisenberg_boost().change_basis(&p).unwrap();
        prop_assert_eq!(prolongation_dim(&moved), 0);
    }

    #[test]
    fn fixed_precision_round_trips(x in -1e6..1e6f64) {
        let printed: f64 = fmt12(x).parse().unwrap();
        prop_assert_eq!(printed, round12(x));
        prop_assert!((printed - x).abs() <= 1e-11 * x.abs().max(1e-300));
    }
}

#[test]
fn every_solution_appears_in_random_parameters() {
    let mut r = rng(7);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..500 {
        seen.insert(common::random_parameters(&mut r).3);
    }
    assert_eq!(seen.len(), SolutionId::ALL.len());
}
