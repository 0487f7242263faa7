// Bounded decomposition of one-letter DFAs.

use dfa_decompose::unary::{unary_decision, unary_structure};
use dfa_decompose::Dfa;

fn lasso(chain: usize, cycle: usize, accepting: &[usize]) -> Dfa {
    let n = chain + cycle;
    let next = |q: usize| if q + 1 < n { q + 1 } else { chain };
    Dfa::new(vec!["a".into()], 0, accepting.iter().copied(), (0..n).map(|q| vec![next(q)]).collect())
        .unwrap()
}

pub fn run_example() {
    let cases = [
        ("multiples of 6", lasso(0, 6, &[0])),
        ("7-cycle", lasso(0, 7, &[0, 3])),
        ("chain into 4-cycle", lasso(2, 4, &[1, 3, 5])),
    ];
    for (name, dfa) in cases {
        let shape = unary_structure(&dfa).unwrap();
        print!("{name}: chain {} cycle {}", shape.chain_len, shape.cycle_len);
        for k in 1..=3 {
            let d = unary_decision(&dfa, k).unwrap();
            print!("  k={k}: {}", d.composite);
        }
        println!();
    }
    assert!(unary_decision(&lasso(0, 6, &[0]), 2).unwrap().composite);
    assert!(!unary_decision(&lasso(0, 6, &[0]), 1).unwrap().composite);
}

fn main() {
    run_example();
}
