mod common;

use common::{lasso, mask_states};
use dfa_decompose::commutative::{covers, is_k_factor_composite_commutative, word_action, ParikhWord};
use dfa_decompose::oracle::{brute_k_factor, FactorPool, OracleCaps};
use dfa_decompose::setcover::set_cover_within;
use dfa_decompose::unary::{is_k_factor_composite_unary, unary_structure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unary_caps(n: usize) -> OracleCaps {
    OracleCaps { max_states: n, max_letters: 1, ..OracleCaps::default() }
}

#[test]
fn cycle_case_matches_commutative_module() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 2..=30 {
        for _ in 0..8 {
            let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let d = lasso(0, n, acc);
            for k in 1..=4 {
                assert_eq!(
                    is_k_factor_composite_unary(&d, k).unwrap(),
                    is_k_factor_composite_commutative(&d, k).unwrap(),
                    "n={n} k={k} {d:?}"
                );
            }
        }
    }
}

#[test]
fn divisor_words_suffice() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=24 {
        for _ in 0..8 {
            let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let d = lasso(0, n, acc);
            let rejecting: Vec<usize> = d.rejecting_states().collect();
            let sets: Vec<Vec<usize>> = (1..n)
                .map(|e| {
                    let act = word_action(&d, &ParikhWord::new(vec![e])).unwrap();
                    rejecting
                        .iter()
                        .enumerate()
                        .filter(|(_, &q)| covers(&d, &act, q).unwrap())
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect();
            for k in 1..=3 {
                let all = set_cover_within(rejecting.len(), &sets, k).is_some();
                let verdict = is_k_factor_composite_unary(&d, k).unwrap();
                if d.trivial_language().is_none() {
                    assert_eq!(all, verdict, "n={n} k={k}");
                }
            }
        }
    }
}

#[test]
fn chain_case_matches_brute_force() {
    for n in 2..=10 {
        for chain in 1..n {
            for mask in 0..(1u32 << n) {
                let d = lasso(chain, n - chain, mask_states(n, mask));
                let pool = FactorPool::new(&d, unary_caps(n)).unwrap();
                for k in 1..=3 {
                    assert_eq!(
                        is_k_factor_composite_unary(&d, k).unwrap(),
                        pool.k_factor_witness(k).unwrap().is_some(),
                        "chain={chain} cycle={} mask={mask:b} k={k}",
                        n - chain
                    );
                }
            }
        }
    }
}

#[test]
fn six_cycle_matches_brute_force() {
    let d = lasso(0, 6, [0]);
    assert_eq!(unary_structure(&d).unwrap().cycle_len, 6);
    for k in 1..=3 {
        assert_eq!(
            is_k_factor_composite_unary(&d, k).unwrap(),
            brute_k_factor(&d, k, unary_caps(6)).unwrap()
        );
    }
}
