// Hitting-Set instances encoded as commutative permutation DFAs.

use dfa_decompose::commutative::width_commutative;
use dfa_decompose::generators::{gen_hitting_set, HittingSetInstance};

pub fn run_example() {
    let inst = HittingSetInstance::from_json(r#"{"n": 2, "sets": [[1],[1,2],[2]], "k": 2}"#).unwrap();
    let out = gen_hitting_set(&inst).unwrap();
    let h = inst.min_hitting_set();
    let w = width_commutative(&out.dfa).unwrap();
    println!(
        "mu={} tau={} states={} min hitting set {:?} width {}",
        out.mu,
        out.tau,
        out.dfa.len(),
        h,
        w.width
    );
    assert_eq!(w.width, h.len() + 1);
}

fn main() {
    run_example();
}
