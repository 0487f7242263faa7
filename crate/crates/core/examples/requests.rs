// The open-requests monitor splits into one two-state DFA per client.

use dfa_decompose::generators::gen_requests;
use dfa_decompose::verify_decomposition;

pub fn run_example() {
    for clients in 1..=4 {
        let (monolith, factors) = gen_requests(clients).unwrap();
        let dec = verify_decomposition(&monolith, factors, 1_000_000).unwrap();
        println!(
            "{clients} clients: {} states, {} two-state factors, verified {} {:?}",
            monolith.len(),
            dec.width(),
            dec.verified,
            dec.issue
        );
        assert_eq!(dec.verified, clients > 1);
    }
}

fn main() {
    run_example();
}
