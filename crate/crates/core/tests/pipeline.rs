use proptest::prelude::*;

use autoseq::automaton::digits_of;
use autoseq::group_structure::{analyze_dfao, verify_structure};
use autoseq::numbertheory::{predict_prime_frequencies, SieveTables};
use autoseq::{catalog, Dfao, Error, StructureConfig, Transducer};

/// Random complete automaton on `n` states over base `k`, every state
/// labelled by its own name.
fn random_dfao(k: u32, delta: Vec<u32>) -> Dfao {
    let n = delta.len() / k as usize;
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    Dfao::new(k, names.clone(), delta, 0, &names, None).unwrap()
}

fn automaton() -> impl Strategy<Value = Dfao> {
    (2u32..=3, 1usize..=5).prop_flat_map(|(k, n)| {
        proptest::collection::vec(0..n as u32, n * k as usize).prop_map(move |d| random_dfao(k, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_transducer_reconstructs_every_term(a in automaton()) {
        let t = match Transducer::induced(&a, 1 << 12) {
            Ok(t) => t,
            Err(Error::Hypothesis(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        for n in 0..2000u64 {
            prop_assert_eq!(t.reconstruct(&digits_of(n, a.k())) as usize, a.state_at(n));
        }
    }

    #[test]
    fn strongly_connected_structure_survives_brute_force(a in automaton()) {
        prop_assume!(a.is_strongly_connected());
        let an = analyze_dfao(&a, &StructureConfig::default()).unwrap();
        let check = verify_structure(&an, 8);
        prop_assert!(check.failures.is_empty(), "{:?}", check.failures);
    }
}

#[test]
fn transient_initial_state_is_refused() {
    let a = catalog::load("base3-intro");
    assert!(matches!(Transducer::induced(&a, 1 << 10), Err(Error::Hypothesis(_))));
}

#[test]
fn predicted_frequencies_sum_to_one() {
    for name in ["thue-morse", "rudin-shapiro", "five-state", "cyclic3", "base3-sym3"] {
        let Ok(p) = predict_prime_frequencies(&catalog::load(name), &StructureConfig::default()) else {
            continue;
        };
        let total: f64 = p.frequencies.values().sum();
        assert!((total - 1.0).abs() < 1e-9, "{name}: {total}");
    }
}

#[test]
fn rudin_shapiro_prediction_is_close_to_the_count() {
    let a = catalog::load("rudin-shapiro");
    let p = predict_prime_frequencies(&a, &StructureConfig::default()).unwrap();
    let sieve = SieveTables::new(1 << 21).unwrap();
    let emp = autoseq::numbertheory::empirical_prime_frequencies(&a, &sieve, 0, 1 << 21, None).unwrap();
    for (label, f) in &p.frequencies {
        assert!((f - emp.frequencies[label]).abs() < 0.01, "{label}");
    }
}
