// Parse a DFA from JSON, report its class, and export it as DOT.

use dfa_decompose::{classify, parse_dfa};

const TWO_CYCLE_TIMES_THREE: &str = r#"{
  "alphabet": ["a"],
  "initial": 0,
  "accepting": [0],
  "transitions": [[1], [2], [3], [4], [5], [0]]
}"#;

pub fn run_example() {
    let dfa = parse_dfa(TWO_CYCLE_TIMES_THREE).expect("valid document");
    let class = classify(&dfa);
    println!("{} states over {:?}", dfa.len(), dfa.alphabet());
    println!("{class:?}");
    assert!(class.trim && class.permutation && class.commutative && class.unary && class.minimal);

    let dot = dfa.to_dot();
    println!("{dot}");
    let back = dfa_decompose::Dfa::from_dot(&dot).expect("round trip");
    assert_eq!(back, dfa);
}

fn main() {
    run_example();
}
