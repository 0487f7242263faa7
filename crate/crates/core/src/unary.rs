//! Bounded decomposition for one-letter DFAs.
//!
//! A trim unary DFA is a chain of `c` states leading into a cycle of `ℓ`
//! states. Without a chain it is a commutative permutation DFA, and the only
//! words worth trying are `a^(ℓ/p)` for the prime divisors `p` of `ℓ`: every
//! other exponent covers a subset of what one of these covers.
//!
//! With a chain, a non-minimal automaton is always composite through its
//! minimal equivalent, and a minimal one is composite iff it is 2-factor
//! composite. When the chain's last state accepts and the cycle state leading
//! into the entry rejects, the answer is whether some word covers that cycle
//! state. Any other chain case is settled by the brute-force oracle.

use serde::Serialize;

use crate::algebra::minimize;
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::oracle::{brute_k_factor, OracleCaps};
use crate::setcover::set_cover_within;
use crate::util::prime_divisors;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnaryShape {
    pub chain_len: usize,
    pub cycle_len: usize,
    /// First cycle state reached from the initial state.
    pub entry: State,
}

fn require_unary_trim(dfa: &Dfa) -> Result<()> {
    if !dfa.is_unary() {
        return Err(Error::ClassMismatch("not a unary DFA".into()));
    }
    if !dfa.is_trim() {
        return Err(Error::ClassMismatch("not trim".into()));
    }
    Ok(())
}

/// The states visited from the initial state, in order, until the first
/// repeat, together with the shape.
fn walk(dfa: &Dfa) -> (Vec<State>, UnaryShape) {
    let mut pos = vec![usize::MAX; dfa.len()];
    let mut path = Vec::new();
    let mut q = dfa.initial();
    while pos[q] == usize::MAX {
        pos[q] = path.len();
        path.push(q);
        q = dfa.step(q, 0);
    }
    let shape = UnaryShape {
        chain_len: pos[q],
        cycle_len: path.len() - pos[q],
        entry: q,
    };
    (path, shape)
}

pub fn unary_structure(dfa: &Dfa) -> Result<UnaryShape> {
    require_unary_trim(dfa)?;
    Ok(walk(dfa).1)
}

/// Exponents `ℓ/p` for each prime `p` dividing `ℓ`, largest first.
pub fn candidate_divisor_words(cycle_len: usize) -> Result<Vec<usize>> {
    if cycle_len < 2 {
        return Err(Error::Precondition(format!(
            "cycle length must be at least 2, got {cycle_len}"
        )));
    }
    Ok(prime_divisors(cycle_len)
        .into_iter()
        .map(|p| cycle_len / p)
        .collect())
}

/// States of `cycle` (in order) covered by `a^exp`: moved, and with an
/// all-rejecting cycle under that power.
fn covered_on_cycle(dfa: &Dfa, cycle: &[State], exp: usize) -> Vec<usize> {
    let l = cycle.len();
    if exp % l == 0 {
        return Vec::new();
    }
    (0..l)
        .filter(|&i| {
            let mut j = i;
            loop {
                if dfa.is_accepting(cycle[j]) {
                    return false;
                }
                j = (j + exp) % l;
                if j == i {
                    return true;
                }
            }
        })
        .collect()
}

/// How a unary verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum UnaryRoute {
    SingleState,
    TrivialLanguage,
    /// Cycle only; the chosen exponents when composite.
    DivisorWords { exponents: Vec<usize> },
    NotMinimal,
    /// A minimal automaton is never its own smaller factor.
    MinimalSingleFactor,
    PreimageCriterion { state: State },
    BruteForce,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnaryDecision {
    pub composite: bool,
    pub shape: UnaryShape,
    #[serde(flatten)]
    pub route: UnaryRoute,
}

pub fn unary_decision(dfa: &Dfa, k: usize) -> Result<UnaryDecision> {
    require_unary_trim(dfa)?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let (path, shape) = walk(dfa);
    let decide = |composite, route| {
        Ok(UnaryDecision {
            composite,
            shape,
            route,
        })
    };
    if dfa.len() == 1 {
        return decide(false, UnaryRoute::SingleState);
    }
    if dfa.trivial_language().is_some() {
        return decide(true, UnaryRoute::TrivialLanguage);
    }
    let cycle = &path[shape.chain_len..];
    if shape.chain_len == 0 {
        let exps = candidate_divisor_words(shape.cycle_len)?;
        let sets: Vec<Vec<usize>> = exps
            .iter()
            .map(|&e| covered_on_cycle(dfa, cycle, e))
            .collect();
        let universe: Vec<usize> = (0..cycle.len())
            .filter(|&i| !dfa.is_accepting(cycle[i]))
            .collect();
        let index: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| s.iter().map(|i| universe.binary_search(i).unwrap()).collect())
            .collect();
        return match set_cover_within(universe.len(), &index, k) {
            Some(chosen) => decide(
                true,
                UnaryRoute::DivisorWords {
                    exponents: chosen.into_iter().map(|i| exps[i]).collect(),
                },
            ),
            None => decide(false, UnaryRoute::DivisorWords { exponents: vec![] }),
        };
    }
    if minimize(dfa).len() < dfa.len() {
        return decide(true, UnaryRoute::NotMinimal);
    }
    if k == 1 {
        return decide(false, UnaryRoute::MinimalSingleFactor);
    }
    let chain_pred = path[shape.chain_len - 1];
    let cycle_pred = *cycle.last().unwrap();
    if dfa.is_accepting(chain_pred) && !dfa.is_accepting(cycle_pred) {
        let last = cycle.len() - 1;
        let covered = (1..cycle.len()).any(|e| covered_on_cycle(dfa, cycle, e).contains(&last));
        return decide(covered, UnaryRoute::PreimageCriterion { state: cycle_pred });
    }
    let caps = OracleCaps {
        max_states: dfa.len(),
        max_letters: 1,
        ..OracleCaps::default()
    };
    decide(brute_k_factor(dfa, 2, caps)?, UnaryRoute::BruteForce)
}

/// Whether at most `k` smaller DFAs intersect to `L(dfa)`.
pub fn is_k_factor_composite_unary(dfa: &Dfa, k: usize) -> Result<bool> {
    Ok(unary_decision(dfa, k)?.composite)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn lasso(chain: usize, cycle: usize, accepting: &[usize]) -> Dfa {
        let n = chain + cycle;
        Dfa::new(
            vec!["a".into()],
            0,
            accepting.iter().copied(),
            (0..n)
                .map(|q| vec![if q + 1 < n { q + 1 } else { chain }])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn shapes() {
        let s = unary_structure(&lasso(0, 6, &[0])).unwrap();
        assert_eq!((s.chain_len, s.cycle_len), (0, 6));
        let s = unary_structure(&lasso(2, 3, &[0])).unwrap();
        assert_eq!((s.chain_len, s.cycle_len, s.entry), (2, 3, 2));
        let s = unary_structure(&lasso(0, 1, &[0])).unwrap();
        assert_eq!((s.chain_len, s.cycle_len), (0, 1));
    }

    #[test]
    fn divisor_words() {
        assert_eq!(candidate_divisor_words(12).unwrap(), vec![6, 4]);
        assert_eq!(candidate_divisor_words(7).unwrap(), vec![1]);
        assert_eq!(candidate_divisor_words(4).unwrap(), vec![2]);
        assert!(candidate_divisor_words(1).is_err());
    }

    #[test]
    fn six_cycle_multiples_of_six() {
        // a^2 covers {1,3,5}, a^3 covers {1,4} and {2,5}: together all rejecting states
        let d = lasso(0, 6, &[0]);
        assert!(!is_k_factor_composite_unary(&d, 1).unwrap());
        assert!(is_k_factor_composite_unary(&d, 2).unwrap());
    }

    #[test]
    fn prime_cycle_is_prime() {
        let d = lasso(0, 7, &[0, 3]);
        for k in 1..5 {
            assert!(!is_k_factor_composite_unary(&d, k).unwrap());
        }
    }

    #[test]
    fn non_minimal_chain() {
        // chain state 0 and cycle state 2 both reject with equal futures
        let d = lasso(1, 2, &[1]);
        assert!(minimize(&d).len() < d.len());
        assert!(is_k_factor_composite_unary(&d, 1).unwrap());
    }

    #[test]
    fn rejects_non_unary_and_zero_k() {
        let d = lasso(0, 4, &[0]);
        assert!(unary_decision(&d, 0).is_err());
        let two = Dfa::new(vec!["a".into(), "b".into()], 0, [0], vec![vec![0, 0]]).unwrap();
        assert!(matches!(unary_structure(&two), Err(Error::ClassMismatch(_))));
    }
}
