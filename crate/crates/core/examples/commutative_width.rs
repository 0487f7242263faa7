// Exact width of the grid family and the decomposition built from the
// optimal covering words.

use dfa_decompose::commutative::{
    decomposition_from_words, is_k_factor_composite_commutative, width_commutative,
};
use dfa_decompose::generators::gen_gridmod;

pub fn run_example() {
    for (n, m) in [(3, 2), (5, 2), (3, 3)] {
        let dfa = gen_gridmod(n, m).unwrap();
        let w = width_commutative(&dfa).unwrap();
        let words: Vec<String> = w.words.iter().map(|p| p.render(dfa.alphabet())).collect();
        println!("n={n} m={m}: {} states, width {} via {words:?}", dfa.len(), w.width);
        assert_eq!(w.width, (n - 1).pow(m as u32 - 1));
        assert!(!is_k_factor_composite_commutative(&dfa, w.width - 1).unwrap());

        let dec = decomposition_from_words(&dfa, &w.words).unwrap();
        let sizes: Vec<usize> = dec.factors.iter().map(|f| f.len()).collect();
        println!("  factor sizes {sizes:?}, verified {}", dec.verified);
    }
}

fn main() {
    run_example();
}
