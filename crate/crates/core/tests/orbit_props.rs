mod common;

use common::{all_trim_permutation_dfas, from_maps};
use dfa_decompose::algebra::{is_subset, verify_decomposition};
use dfa_decompose::generators::{gen_gridmod, gen_random, gridmod_state, RandomFlags};
use dfa_decompose::oracle::{brute_composite, OracleCaps};
use dfa_decompose::orbit::{
    extract_orbit_decomposition, is_composite_permutation, orbit_covers, orbit_dfa, orbit_of,
    StateSet, VerdictReason,
};
use dfa_decompose::Dfa;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PERM: RandomFlags = RandomFlags { permutation: true, commutative: false };

fn g3(c: &[usize]) -> usize {
    gridmod_state(3, c)
}

fn diagonal(n: usize) -> StateSet {
    StateSet::new(n * n, (0..n).map(|i| gridmod_state(n, &[i, i]))).unwrap()
}

#[test]
fn grid_orbits() {
    let a = gen_gridmod(3, 2).unwrap();
    let o = orbit_of(&a, &diagonal(3), 9);
    assert!(o.complete);
    assert_eq!(o.len(), 3);
    let full = orbit_of(&a, &StateSet::full(9), 9);
    assert_eq!(full.len(), 1);
    let single = orbit_of(&a, &StateSet::singleton(9, 0), 10);
    assert_eq!(single.len(), 9);
    assert!(!orbit_of(&a, &StateSet::singleton(9, 0), 9).complete);
}

#[test]
fn grid_orbit_dfas() {
    let a = gen_gridmod(5, 2).unwrap();
    let o = orbit_dfa(&a, &diagonal(5)).unwrap();
    assert_eq!(o.as_dfa.len(), 5);
    assert!(is_subset(&a, &o.as_dfa).unwrap());
    let full = orbit_dfa(&a, &StateSet::full(25)).unwrap();
    assert_eq!(full.as_dfa.len(), 1);
    assert!(full.as_dfa.is_accepting(0));
    assert!(orbit_dfa(&a, &StateSet::singleton(25, 3)).is_err());
}

#[test]
fn grid_orbit_covers() {
    let a = gen_gridmod(3, 2).unwrap();
    let d = diagonal(3);
    assert_eq!(orbit_covers(&a, &d, g3(&[0, 0])).unwrap(), Some(d.clone()));
    let s = StateSet::singleton(9, g3(&[1, 2]));
    assert_eq!(orbit_covers(&a, &s, g3(&[1, 2])).unwrap(), None);
    assert!(orbit_covers(&a, &d, g3(&[0, 1])).is_err());
}

#[test]
fn grid_verdicts_and_decompositions() {
    let a = gen_gridmod(3, 2).unwrap();
    let v = is_composite_permutation(&a).unwrap();
    assert!(v.composite);
    let dec = extract_orbit_decomposition(&a, &v).unwrap();
    assert!(dec.verified);
    assert_eq!(dec.width(), 2);

    let a = gen_gridmod(5, 2).unwrap();
    let v = is_composite_permutation(&a).unwrap();
    assert!(v.composite);
    assert_eq!(v.covers.len(), a.rejecting_states().count());
    let dec = extract_orbit_decomposition(&a, &v).unwrap();
    assert!(dec.verified);
    assert!(dec.factors.iter().all(|f| f.len() <= 5));
}

#[test]
fn non_minimal_permutation_dfa() {
    // states 0,2 and 1,3 are equivalent: a 4-cycle accepting even positions
    let d = from_maps(&[vec![1, 2, 3, 0], vec![2, 3, 0, 1]], [0, 2]);
    let v = is_composite_permutation(&d).unwrap();
    assert!(v.composite);
    assert!(brute_composite(&d, OracleCaps::default()).unwrap());
    assert!(extract_orbit_decomposition(&d, &v).unwrap().verified);
}

#[test]
fn degenerate_acceptance() {
    let d = from_maps(&[vec![1, 2, 0]], [0, 1, 2]);
    let v = is_composite_permutation(&d).unwrap();
    assert_eq!(v.reason, VerdictReason::TrivialLanguage);
    let dec = extract_orbit_decomposition(&d, &v).unwrap();
    assert!(dec.verified);
    let one = from_maps(&[vec![0]], [0]);
    assert!(!is_composite_permutation(&one).unwrap().composite);
}

#[test]
fn prime_size_is_prime_exhaustive() {
    for n in [2, 3] {
        for d in all_trim_permutation_dfas(n, 2) {
            if d.trivial_language().is_none() {
                assert!(!is_composite_permutation(&d).unwrap().composite, "{d:?}");
            }
        }
    }
}

#[test]
fn prime_size_orbits_are_multiples_of_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (i, n) in [3usize, 5, 7, 11].into_iter().cycle().take(40).enumerate() {
        let d = gen_random(n, 2, i as u64, PERM).unwrap();
        assert!(!is_composite_permutation(&d).unwrap().composite);
        for _ in 0..10 {
            let size = rng.gen_range(1..n);
            let mut states: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(&mut states[..], &mut rng);
            let seed = StateSet::new(n, states[..size].iter().copied()).unwrap();
            let o = orbit_of(&d, &seed, 1 << 16);
            assert!(o.complete);
            assert_eq!(o.len() % n, 0, "orbit size {} for n = {n}", o.len());
        }
    }
}

#[test]
fn orbit_members_share_cardinality_and_contain_host() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100u64 {
        let n = rng.gen_range(2..10);
        let d = gen_random(n, 2, i, PERM).unwrap();
        let size = rng.gen_range(1..=n);
        let mut states: Vec<usize> = (1..n).collect();
        rand::seq::SliceRandom::shuffle(&mut states[..], &mut rng);
        let seed = StateSet::new(n, std::iter::once(0).chain(states[..size - 1].iter().copied())).unwrap();
        let o = orbit_dfa(&d, &seed).unwrap();
        assert!(o.orbit.members.iter().all(|m| m.len() == seed.len()));
        assert!(is_subset(&d, &o.as_dfa).unwrap());
    }
}

#[test]
fn agrees_with_oracle_exhaustive_small() {
    let caps = OracleCaps::default();
    for n in 1..=3 {
        for d in all_trim_permutation_dfas(n, 2) {
            let fast = is_composite_permutation(&d).unwrap().composite;
            assert_eq!(fast, brute_composite(&d, caps).unwrap(), "{d:?}");
        }
    }
}

#[test]
fn agrees_with_oracle_sampled_five() {
    let caps = OracleCaps::default();
    for seed in 0..12u64 {
        let d = gen_random(if seed % 2 == 0 { 4 } else { 5 }, 2, seed, PERM).unwrap();
        let fast = is_composite_permutation(&d).unwrap().composite;
        assert_eq!(fast, brute_composite(&d, caps).unwrap(), "{d:?}");
    }
}

#[test]
fn extraction_always_verifies() {
    for seed in 0..200u64 {
        let n = [4, 6, 8, 9, 10, 12][seed as usize % 6];
        let d: Dfa = gen_random(n, 2, seed, PERM).unwrap();
        let v = is_composite_permutation(&d).unwrap();
        if v.composite {
            let dec = extract_orbit_decomposition(&d, &v).unwrap();
            assert!(dec.verified);
            let again = verify_decomposition(&d, dec.factors, 1_000_000).unwrap();
            assert!(again.verified);
        }
    }
}
