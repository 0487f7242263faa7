//! Language algebra over [`Dfa`]: product, inclusion, equivalence,
//! minimization and decomposition verification.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::dfa::{Dfa, State, Word};
use crate::error::{Error, Result};

/// Default number of joint-product states explored by [`verify_decomposition`].
pub const DEFAULT_VERIFY_CAP: usize = 1_000_000;

fn check_alphabets(a: &Dfa, b: &Dfa) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet().to_vec(),
            right: b.alphabet().to_vec(),
        });
    }
    Ok(())
}

/// Reachable product automaton; accepts `L(a) ∩ L(b)`.
pub fn product(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    check_alphabets(a, b)?;
    let k = a.letters();
    let mut index: HashMap<(State, State), State> = HashMap::new();
    let mut pairs = vec![(a.initial(), b.initial())];
    index.insert(pairs[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        i += 1;
        for l in 0..k {
            let next = (a.step(p, l), b.step(q, l));
            let id = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            delta.push(id);
        }
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| a.is_accepting(p) && b.is_accepting(q))
        .collect();
    Ok(Dfa::from_parts(a.alphabet().to_vec(), 0, accepting, delta))
}

/// Outcome of an inclusion test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Included,
    /// A shortest word accepted by the left automaton and rejected by the right.
    Counterexample(Word),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Included)
    }
}

/// Decides `L(a) ⊆ L(b)` by breadth-first search over the product; on failure
/// the returned witness is of minimal length.
pub fn language_inclusion(a: &Dfa, b: &Dfa) -> Result<Inclusion> {
    check_alphabets(a, b)?;
    Ok(
        match search_pairs(a, b, |p, q| a.is_accepting(p) && !b.is_accepting(q)) {
            Some(w) => Inclusion::Counterexample(w),
            None => Inclusion::Included,
        },
    )
}

pub fn is_subset(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(language_inclusion(a, b)?.holds())
}

/// A shortest word on which the two automata disagree, if any.
pub fn distinguishing_word(a: &Dfa, b: &Dfa) -> Result<Option<Word>> {
    check_alphabets(a, b)?;
    Ok(search_pairs(a, b, |p, q| a.is_accepting(p) != b.is_accepting(q)))
}

pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(distinguishing_word(a, b)?.is_none())
}

fn search_pairs(a: &Dfa, b: &Dfa, bad: impl Fn(State, State) -> bool) -> Option<Word> {
    let start = (a.initial(), b.initial());
    let mut parent: HashMap<(State, State), Option<((State, State), usize)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if bad(pair.0, pair.1) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, l)) = parent[&cur] {
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for l in 0..a.letters() {
            let next = (a.step(pair.0, l), b.step(pair.1, l));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((pair, l)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Trims, then merges indistinguishable states by iterated partition
/// refinement. The result is numbered in BFS order from the initial state, so
/// two minimal automata for the same language are identical values.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let t = dfa.trim();
    let n = t.len();
    let k = t.letters();
    let mut class: Vec<usize> = (0..n).map(|q| t.is_accepting(q) as usize).collect();
    let mut count = if class.iter().all(|&c| c == class[0]) { 1 } else { 2 };
    if count == 2 && class[0] == 1 {
        // keep ids dense and ordered by first occurrence
        class.iter_mut().for_each(|c| *c ^= 1);
    }
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend(t.row(q).iter().map(|&s| class[s]));
            let len = ids.len();
            next.push(*ids.entry(sig).or_insert(len));
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut accepting = vec![false; count];
    let mut delta = vec![0; count * k];
    for q in 0..n {
        accepting[class[q]] = t.is_accepting(q);
        for l in 0..k {
            delta[class[q] * k + l] = class[t.step(q, l)];
        }
    }
    Dfa::from_parts(t.alphabet().to_vec(), class[t.initial()], accepting, delta).trim()
}

/// Why a candidate decomposition was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecompositionIssue {
    NoFactors,
    FactorNotSmaller { index: usize, size: usize },
    /// A word of the target language rejected by a factor.
    FactorTooSmall { index: usize, word: Word },
    /// A word accepted by every factor but rejected by the target.
    IntersectionTooLarge { word: Word },
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<Dfa>,
    pub verified: bool,
    pub issue: Option<DecompositionIssue>,
}

impl Decomposition {
    pub fn width(&self) -> usize {
        self.factors.len()
    }
}

/// Checks that `factors` is a decomposition of `target`: every factor is
/// strictly smaller, contains `L(target)`, and no word outside `L(target)`
/// survives every factor. The last check explores the joint product lazily
/// and gives up with [`Error::Inconclusive`] after `cap` tuples.
pub fn verify_decomposition(target: &Dfa, factors: Vec<Dfa>, cap: usize) -> Result<Decomposition> {
    for f in &factors {
        check_alphabets(target, f)?;
    }
    let reject = |factors, issue| {
        Ok(Decomposition {
            factors,
            verified: false,
            issue: Some(issue),
        })
    };
    if factors.is_empty() {
        return reject(factors, DecompositionIssue::NoFactors);
    }
    for (index, f) in factors.iter().enumerate() {
        if f.len() >= target.len() {
            let size = f.len();
            return reject(factors, DecompositionIssue::FactorNotSmaller { index, size });
        }
    }
    for (index, f) in factors.iter().enumerate() {
        if let Inclusion::Counterexample(word) = language_inclusion(target, f)? {
            return reject(factors, DecompositionIssue::FactorTooSmall { index, word });
        }
    }
    if let Some(word) = joint_overshoot(target, &factors, cap)? {
        return reject(factors, DecompositionIssue::IntersectionTooLarge { word });
    }
    Ok(Decomposition {
        factors,
        verified: true,
        issue: None,
    })
}

/// Shortest word rejected by `target` but accepted by all `factors`.
pub(crate) fn joint_overshoot(target: &Dfa, factors: &[Dfa], cap: usize) -> Result<Option<Word>> {
    let start: Vec<State> = std::iter::once(target.initial())
        .chain(factors.iter().map(Dfa::initial))
        .collect();
    let bad = |t: &[State]| {
        !target.is_accepting(t[0]) && factors.iter().zip(&t[1..]).all(|(f, &q)| f.is_accepting(q))
    };
    let mut index: HashMap<Vec<State>, usize> = HashMap::new();
    let mut tuples = vec![start.clone()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    index.insert(start, 0);
    let mut i = 0;
    while i < tuples.len() {
        if bad(&tuples[i]) {
            let mut word = Vec::new();
            let mut cur = i;
            while let Some((p, l)) = parent[cur] {
                word.push(l);
                cur = p;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for l in 0..target.letters() {
            let next: Vec<State> = std::iter::once(target.step(tuples[i][0], l))
                .chain(factors.iter().zip(&tuples[i][1..]).map(|(f, &q)| f.step(q, l)))
                .collect();
            if !index.contains_key(&next) {
                if tuples.len() >= cap {
                    return Err(Error::Inconclusive {
                        what: "joint product states",
                        cap,
                    });
                }
                index.insert(next.clone(), tuples.len());
                tuples.push(next);
                parent.push(Some((i, l)));
            }
        }
        i += 1;
    }
    Ok(None)
}

/// Product of a non-empty list of automata.
pub fn product_all(dfas: &[Dfa]) -> Result<Dfa> {
    let (first, rest) = dfas
        .split_first()
        .ok_or_else(|| Error::Precondition("product of an empty list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, d| product(&acc, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary(accepting: &[usize], next: &[usize]) -> Dfa {
        Dfa::new(
            vec!["a".into()],
            0,
            accepting.iter().copied(),
            next.iter().map(|&t| vec![t]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn all_accepting_minimizes_to_one_state() {
        let d = unary(&[0, 1, 2], &[1, 2, 0]);
        assert_eq!(minimize(&d).len(), 1);
    }

    #[test]
    fn minimize_drops_unreachable() {
        let d = unary(&[0], &[1, 0, 0]);
        assert!(!d.is_trim());
        assert_eq!(minimize(&d).len(), 2);
    }

    #[test]
    fn empty_word_counterexample() {
        let all = unary(&[0], &[0]);
        let none = unary(&[], &[0]);
        assert_eq!(
            language_inclusion(&all, &none).unwrap(),
            Inclusion::Counterexample(vec![])
        );
        assert!(language_inclusion(&none, &all).unwrap().holds());
        assert!(language_inclusion(&all, &all).unwrap().holds());
    }

    #[test]
    fn counterexample_is_shortest() {
        // (aaa)* vs (aa)*: shortest word in the first and not the second is aaa
        let three = unary(&[0], &[1, 2, 0]);
        let two = unary(&[0], &[1, 0]);
        assert_eq!(
            language_inclusion(&three, &two).unwrap(),
            Inclusion::Counterexample(vec![0, 0, 0])
        );
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = unary(&[0], &[0]);
        let b = Dfa::new(vec!["b".into()], 0, [0], vec![vec![0]]).unwrap();
        assert!(matches!(product(&a, &b), Err(Error::AlphabetMismatch { .. })));
        assert!(language_inclusion(&a, &b).is_err());
    }

    #[test]
    fn product_with_self_is_equivalent() {
        let d = unary(&[0, 2], &[1, 2, 3, 0]);
        assert!(equivalent(&product(&d, &d).unwrap(), &d).unwrap());
    }

    #[test]
    fn decomposition_size_rule() {
        let d = unary(&[0], &[1, 2, 3, 4, 5, 0]);
        let dec = verify_decomposition(&d, vec![d.clone()], DEFAULT_VERIFY_CAP).unwrap();
        assert!(!dec.verified);
        assert_eq!(
            dec.issue,
            Some(DecompositionIssue::FactorNotSmaller { index: 0, size: 6 })
        );
        // (a^6)* = (a^2)* ∩ (a^3)*
        let two = unary(&[0], &[1, 0]);
        let three = unary(&[0], &[1, 2, 0]);
        let ok = verify_decomposition(&d, vec![two.clone(), three], DEFAULT_VERIFY_CAP).unwrap();
        assert!(ok.verified);
        let short = verify_decomposition(&d, vec![two], DEFAULT_VERIFY_CAP).unwrap();
        assert_eq!(
            short.issue,
            Some(DecompositionIssue::IntersectionTooLarge { word: vec![0, 0] })
        );
    }

    #[test]
    fn verification_cap_is_inconclusive() {
        let d = unary(&[0], &[1, 2, 3, 4, 5, 0]);
        let two = unary(&[0], &[1, 0]);
        let three = unary(&[0], &[1, 2, 0]);
        let err = verify_decomposition(&d, vec![two, three], 2).unwrap_err();
        assert!(err.is_inconclusive());
    }
}
