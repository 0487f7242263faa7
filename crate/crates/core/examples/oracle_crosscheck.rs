// Compare the orbit decision with brute-force enumeration of smaller DFAs.

use dfa_decompose::oracle::{brute_composite, brute_k_factor, OracleCaps};
use dfa_decompose::orbit::is_composite_permutation;
use dfa_decompose::Dfa;

pub fn run_example() {
    let caps = OracleCaps::default();
    let mut agree = 0;
    // every acceptance pattern on the 4-state grid Z/2 x Z/2
    for mask in 1u32..15 {
        let dfa = Dfa::new(
            vec!["a".into(), "b".into()],
            0,
            (0..4).filter(|q| mask >> q & 1 == 1),
            (0..4).map(|q| vec![q ^ 1, q ^ 2]).collect(),
        )
        .unwrap();
        let fast = is_composite_permutation(&dfa).unwrap().composite;
        let slow = brute_composite(&dfa, caps).unwrap();
        assert_eq!(fast, slow, "mask {mask:04b}");
        agree += 1;
        if fast {
            println!("mask {mask:04b}: composite, 2 factors suffice: {}", brute_k_factor(&dfa, 2, caps).unwrap());
        }
    }
    println!("{agree} acceptance patterns agree");
}

fn main() {
    run_example();
}
