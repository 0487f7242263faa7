//! Brute-force ground truth at desk scale.
//!
//! Factor candidates come from enumerating every trim transition structure
//! with fewer states than the target, numbered breadth-first from the initial
//! state. For a structure `B` only one acceptance set matters: the states of
//! `B` that meet an accepting state of the target in the product. It is the
//! least acceptance set whose language contains the target's, so any
//! decomposition using `B` still works with it. Candidates are then merged by
//! language and only inclusion-minimal languages are kept. None of these
//! steps changes which intersections can equal the target language.

use std::collections::{HashSet, VecDeque};

use crate::algebra::{equivalent, is_subset, joint_overshoot, minimize, product};
use crate::commutative::ParikhWord;
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::util::combinations;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_states: usize,
    pub max_letters: usize,
    /// Cap on enumerated structures, and on factor combinations tried.
    pub max_factor_enum: usize,
    pub max_product_states: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_states: 5,
            max_letters: 2,
            max_factor_enum: 50_000,
            max_product_states: 1_000_000,
        }
    }
}

/// A transition table with one row per state, states numbered in
/// breadth-first order from state 0.
pub type Structure = Vec<Vec<State>>;

/// Every trim structure with `1..=max_states` states over `letters` letters,
/// one per isomorphism class. Fails once more than `cap` are produced.
pub fn enumerate_canonical_structures(
    letters: usize,
    max_states: usize,
    cap: usize,
) -> Result<Vec<Structure>> {
    let mut out = Vec::new();
    let mut slots = Vec::new();
    fill(letters, max_states, cap, &mut slots, 1, &mut out)?;
    Ok(out)
}

// Slot `i` is the transition of state `i / letters` on letter `i % letters`.
// A slot may target any existing state or open the next new one; states are
// opened in the order their first incoming slot is filled, which is exactly
// breadth-first numbering.
fn fill(
    letters: usize,
    max_states: usize,
    cap: usize,
    slots: &mut Vec<State>,
    opened: usize,
    out: &mut Vec<Structure>,
) -> Result<()> {
    if slots.len() == opened * letters {
        if out.len() >= cap {
            return Err(Error::Inconclusive {
                what: "enumerated factor structures",
                cap,
            });
        }
        out.push(slots.chunks(letters).map(<[State]>::to_vec).collect());
        return Ok(());
    }
    // the state owning this slot must already be open
    if slots.len() / letters >= opened {
        return Ok(());
    }
    for t in 0..=opened.min(max_states - 1) {
        let grow = usize::from(t == opened);
        slots.push(t);
        fill(letters, max_states, cap, slots, opened + grow, out)?;
        slots.pop();
    }
    Ok(())
}

fn check_caps(dfa: &Dfa, caps: &OracleCaps) -> Result<()> {
    if dfa.len() > caps.max_states {
        return Err(Error::Inconclusive {
            what: "target states",
            cap: caps.max_states,
        });
    }
    if dfa.letters() > caps.max_letters {
        return Err(Error::Inconclusive {
            what: "alphabet size",
            cap: caps.max_letters,
        });
    }
    Ok(())
}

/// The least acceptance set on `rows` whose language contains `L(target)`.
fn least_cover(target: &Dfa, rows: &Structure) -> Vec<bool> {
    let mut acc = vec![false; rows.len()];
    let mut seen = HashSet::from([(0, target.initial())]);
    let mut queue = VecDeque::from([(0, target.initial())]);
    while let Some((b, a)) = queue.pop_front() {
        if target.is_accepting(a) {
            acc[b] = true;
        }
        for l in 0..target.letters() {
            let next = (rows[b][l], target.step(a, l));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    acc
}

/// Membership of every word up to a fixed length, as a quick necessary test
/// for language inclusion.
fn fingerprint(dfa: &Dfa, depth: usize) -> Vec<u64> {
    let mut bits = Vec::new();
    let mut layer = vec![dfa.initial()];
    let mut count = 0usize;
    for d in 0..=depth {
        for &q in &layer {
            if count % 64 == 0 {
                bits.push(0);
            }
            if dfa.is_accepting(q) {
                *bits.last_mut().unwrap() |= 1 << (count % 64);
            }
            count += 1;
        }
        if d < depth {
            layer = layer
                .iter()
                .flat_map(|&q| (0..dfa.letters()).map(move |l| dfa.step(q, l)))
                .collect();
        }
    }
    bits
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Smallest-language factor candidates for a target.
#[derive(Clone, Debug)]
pub struct FactorPool {
    target: Dfa,
    // size every factor must stay below
    bound: usize,
    /// Minimal DFAs of the inclusion-minimal candidate languages.
    pub factors: Vec<Dfa>,
    caps: OracleCaps,
}

impl FactorPool {
    pub fn new(target: &Dfa, caps: OracleCaps) -> Result<Self> {
        check_caps(target, &caps)?;
        let bound = target.len();
        let target = target.trim();
        let mut by_language: HashSet<Dfa> = HashSet::new();
        let mut langs = Vec::new();
        if bound > 1 {
            let structures =
                enumerate_canonical_structures(target.letters(), bound - 1, caps.max_factor_enum)?;
            for rows in &structures {
                let acc = least_cover(&target, rows);
                if acc.iter().all(|&b| b) {
                    continue;
                }
                let cand = minimize(&Dfa::from_rows(target.alphabet().to_vec(), 0, acc, rows.clone()));
                if by_language.insert(cand.clone()) {
                    langs.push(cand);
                }
            }
        }
        let depth = match target.letters() {
            1 => 63,
            2 => 7,
            3 => 4,
            _ => 3,
        };
        let prints: Vec<Vec<u64>> = langs.iter().map(|d| fingerprint(d, depth)).collect();
        let mut keep = Vec::new();
        'cand: for i in 0..langs.len() {
            for j in 0..langs.len() {
                if i != j
                    && bits_subset(&prints[j], &prints[i])
                    && is_subset(&langs[j], &langs[i])?
                {
                    // j is strictly smaller (languages are distinct)
                    continue 'cand;
                }
            }
            keep.push(langs[i].clone());
        }
        Ok(FactorPool {
            target,
            bound,
            factors: keep,
            caps,
        })
    }

    /// Whether the intersection of every candidate is the target language.
    pub fn intersection_is_target(&self) -> Result<bool> {
        if self.bound == 1 {
            return Ok(false);
        }
        let mut cur = Dfa::from_rows(
            self.target.alphabet().to_vec(),
            0,
            vec![true],
            vec![vec![0; self.target.letters()]],
        );
        if equivalent(&cur, &self.target)? {
            return Ok(true);
        }
        for f in &self.factors {
            let p = product(&cur, f)?;
            if p.len() > self.caps.max_product_states {
                return Err(Error::Inconclusive {
                    what: "joint product states",
                    cap: self.caps.max_product_states,
                });
            }
            cur = minimize(&p);
            if equivalent(&cur, &self.target)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// At most `k` candidates whose intersection is the target language.
    pub fn k_factor_witness(&self, k: usize) -> Result<Option<Vec<Dfa>>> {
        if k == 0 {
            return Ok((self.target.trivial_language() == Some(true)).then(Vec::new));
        }
        if !self.intersection_is_target()? {
            return Ok(None);
        }
        let pool = self.factors.len();
        if pool == 0 {
            // only reachable when the target accepts everything
            let full = minimize(&self.target);
            return Ok((full.len() < self.bound).then(|| vec![full]));
        }
        let mut tried = 0usize;
        for size in 1..=k.min(pool) {
            for combo in combinations(pool, size) {
                tried += 1;
                if tried > self.caps.max_factor_enum {
                    return Err(Error::Inconclusive {
                        what: "factor combinations",
                        cap: self.caps.max_factor_enum,
                    });
                }
                let family: Vec<Dfa> = combo.iter().map(|&i| self.factors[i].clone()).collect();
                if joint_overshoot(&self.target, &family, self.caps.max_product_states)?.is_none() {
                    return Ok(Some(family));
                }
            }
        }
        Ok(None)
    }
}

/// Composite iff the intersection of all smaller superset languages is the
/// target language.
pub fn brute_composite(dfa: &Dfa, caps: OracleCaps) -> Result<bool> {
    FactorPool::new(dfa, caps)?.intersection_is_target()
}

/// Whether at most `k` strictly smaller DFAs intersect to `L(dfa)`. For
/// `k = 0` the empty intersection is read as all words.
pub fn brute_k_factor(dfa: &Dfa, k: usize, caps: OracleCaps) -> Result<bool> {
    Ok(brute_k_factor_witness(dfa, k, caps)?.is_some())
}

pub fn brute_k_factor_witness(dfa: &Dfa, k: usize, caps: OracleCaps) -> Result<Option<Vec<Dfa>>> {
    FactorPool::new(dfa, caps)?.k_factor_witness(k)
}

fn simulated_cover(dfa: &Dfa, q: State, word: &[usize]) -> bool {
    let first = dfa.run_from(q, word);
    if first == q {
        return false;
    }
    let mut s = first;
    loop {
        if dfa.is_accepting(s) {
            return false;
        }
        if s == q {
            return true;
        }
        s = dfa.run_from(s, word);
    }
}

fn vectors_with_total(letters: usize, total: usize) -> Vec<Vec<usize>> {
    if letters == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            vectors_with_total(letters - 1, total - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// The first Parikh vector, by total and then lexicographically, whose word
/// covers the rejecting state `q`; checked by running the word.
pub fn brute_cover_word(dfa: &Dfa, q: State, max_total: usize) -> Result<Option<ParikhWord>> {
    if !dfa.is_permutation() || !dfa.is_commutative() {
        return Err(Error::ClassMismatch("not a commutative permutation DFA".into()));
    }
    if q >= dfa.len() || dfa.is_accepting(q) {
        return Err(Error::Precondition(format!("state {q} is not rejecting")));
    }
    for total in 1..=max_total {
        for v in vectors_with_total(dfa.letters(), total) {
            let p = ParikhWord::new(v);
            if simulated_cover(dfa, q, &p.to_word()) {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

fn letter_order(dfa: &Dfa, a: usize) -> usize {
    let map = dfa.letter_map(a);
    let mut cur = map.clone();
    let mut order = 1;
    while cur.iter().enumerate().any(|(q, &t)| q != t) {
        cur = cur.iter().map(|&t| map[t]).collect();
        order += 1;
    }
    order
}

/// Exact width of a composite commutative permutation DFA: the fewest words
/// jointly covering every rejecting state, tried by increasing family size.
pub fn brute_width(dfa: &Dfa, cap: usize) -> Result<usize> {
    if !dfa.is_permutation() || !dfa.is_commutative() {
        return Err(Error::ClassMismatch("not a commutative permutation DFA".into()));
    }
    let rejecting: Vec<State> = dfa.rejecting_states().collect();
    if dfa.len() == 1 {
        return Err(Error::Precondition("automaton is prime".into()));
    }
    if rejecting.is_empty() {
        return Ok(1);
    }
    let orders: Vec<usize> = (0..dfa.letters()).map(|a| letter_order(dfa, a)).collect();
    let boxed = orders.iter().try_fold(1usize, |acc, &o| acc.checked_mul(o).filter(|&v| v <= cap));
    if boxed.is_none() {
        return Err(Error::Inconclusive {
            what: "Parikh vectors scanned",
            cap,
        });
    }
    let mut seen = HashSet::new();
    let mut sets: Vec<Vec<State>> = Vec::new();
    let mut v = vec![0usize; dfa.letters()];
    loop {
        let word = ParikhWord::new(v.clone()).to_word();
        let image: Vec<State> = (0..dfa.len()).map(|q| dfa.run_from(q, &word)).collect();
        if seen.insert(image) {
            let covered: Vec<State> = rejecting
                .iter()
                .copied()
                .filter(|&q| simulated_cover(dfa, q, &word))
                .collect();
            if !covered.is_empty() {
                sets.push(covered);
            }
        }
        // odometer over the box of letter orders
        let mut i = 0;
        while i < v.len() {
            v[i] += 1;
            if v[i] < orders[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == v.len() {
            break;
        }
    }
    for size in 1..=sets.len() {
        for combo in combinations(sets.len(), size) {
            let hit: HashSet<State> = combo.iter().flat_map(|&i| sets[i].iter().copied()).collect();
            if hit.len() == rejecting.len() {
                return Ok(size);
            }
        }
    }
    Err(Error::Precondition("automaton is prime".into()))
}
