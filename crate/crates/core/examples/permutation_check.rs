// Composite/prime decision for permutation DFAs and the orbit-DFA witness.

use dfa_decompose::generators::{gen_random, RandomFlags};
use dfa_decompose::orbit::{extract_orbit_decomposition, is_composite_permutation, VerdictReason};
use dfa_decompose::Dfa;

pub fn run_example() {
    // words whose a-count is 0 mod 3 and whose b-count is even
    let dfa = Dfa::new(
        vec!["a".into(), "b".into()],
        0,
        [0],
        (0..6).map(|q| vec![(q + 2) % 6, (q + 3) % 6]).collect(),
    )
    .unwrap();
    let verdict = is_composite_permutation(&dfa).unwrap();
    println!("composite: {} ({:?})", verdict.composite, verdict.reason);
    assert!(verdict.composite);

    let dec = extract_orbit_decomposition(&dfa, &verdict).unwrap();
    for (i, f) in dec.factors.iter().enumerate() {
        println!("factor {}: {} states", i + 1, f.len());
    }
    assert!(dec.verified);

    let flags = RandomFlags { permutation: true, commutative: false };
    let seven = gen_random(7, 2, 42, flags).unwrap();
    let v = is_composite_permutation(&seven).unwrap();
    println!("random 7-state permutation DFA: composite = {}", v.composite);
    assert_eq!(v.reason, VerdictReason::PrimeStateCount);
}

fn main() {
    run_example();
}
