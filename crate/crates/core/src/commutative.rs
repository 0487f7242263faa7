//! Covering words for commutative permutation DFAs.
//!
//! In a commutative permutation DFA a word acts on the states through its
//! Parikh vector alone, and the cycles of that action partition the states
//! into an orbit. A word covers a rejecting state `q` when it moves `q` and
//! the whole cycle of `q` is rejecting. The automaton is `k`-factor composite
//! iff `k` words cover every rejecting state, and each covering word yields a
//! factor: the orbit-DFA seeded by the cycle through the initial state.
//!
//! Candidate words are the elements of the transition group, found by a
//! breadth-first walk over actions. For a trim commutative permutation DFA the
//! group acts regularly, so there are exactly `n` actions and each
//! representative has total letter count below `n`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{verify_decomposition, Decomposition, DEFAULT_VERIFY_CAP};
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::orbit::{degenerate_verdict, orbit_dfa, CompositeVerdict, StateSet, VerdictReason};
use crate::setcover::{min_set_cover, set_cover_within};

/// Letter counts of a word, one entry per alphabet letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhWord {
    pub counts: Vec<usize>,
}

impl ParikhWord {
    pub fn new(counts: Vec<usize>) -> Self {
        ParikhWord { counts }
    }

    pub fn zero(letters: usize) -> Self {
        ParikhWord {
            counts: vec![0; letters],
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The word `σ1^c1 σ2^c2 …` as letter indices.
    pub fn to_word(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(a, &c)| std::iter::repeat_n(a, c))
            .collect()
    }

    /// Human-readable form such as `a1 a2^3`; `ε` for the empty word.
    pub fn render(&self, alphabet: &[String]) -> String {
        let parts: Vec<String> = self
            .counts
            .iter()
            .zip(alphabet)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, l)| if c == 1 { l.clone() } else { format!("{l}^{c}") })
            .collect();
        if parts.is_empty() {
            "ε".into()
        } else {
            parts.join(" ")
        }
    }
}

/// The permutation `q ↦ δ(q, w)` induced by a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAction {
    pub perm: Vec<State>,
    pub representative: ParikhWord,
}

impl WordAction {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(q, &p)| q == p)
    }

    /// The cycle of `q`, starting at `q`.
    pub fn cycle_of(&self, q: State) -> Vec<State> {
        let mut cycle = vec![q];
        let mut s = self.perm[q];
        while s != q {
            cycle.push(s);
            s = self.perm[s];
        }
        cycle
    }

    pub fn cycles(&self) -> Vec<Vec<State>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for q in 0..self.perm.len() {
            if !seen[q] {
                let c = self.cycle_of(q);
                c.iter().for_each(|&s| seen[s] = true);
                out.push(c);
            }
        }
        out
    }

    fn covers_unchecked(&self, dfa: &Dfa, q: State) -> bool {
        self.perm[q] != q && self.cycle_of(q).iter().all(|&s| !dfa.is_accepting(s))
    }
}

/// A non-identity action together with the rejecting states it covers.
#[derive(Clone, Debug)]
pub struct CoverSet {
    pub action: WordAction,
    pub covered: Vec<State>,
}

fn require_class(dfa: &Dfa) -> Result<()> {
    if !dfa.is_permutation() {
        return Err(Error::ClassMismatch("not a permutation DFA".into()));
    }
    if !dfa.is_commutative() {
        return Err(Error::ClassMismatch("not a commutative DFA".into()));
    }
    Ok(())
}

fn require_trim_class(dfa: &Dfa) -> Result<()> {
    require_class(dfa)?;
    if !dfa.is_trim() {
        return Err(Error::ClassMismatch("not trim".into()));
    }
    Ok(())
}

fn compose(first: &[State], then: &[State]) -> Vec<State> {
    first.iter().map(|&q| then[q]).collect()
}

fn power(map: &[State], mut exp: usize) -> Vec<State> {
    let mut result: Vec<State> = (0..map.len()).collect();
    let mut base = map.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = compose(&result, &base);
        }
        base = compose(&base, &base);
        exp >>= 1;
    }
    result
}

fn action_unchecked(dfa: &Dfa, word: &ParikhWord) -> WordAction {
    let mut perm: Vec<State> = (0..dfa.len()).collect();
    for (a, &c) in word.counts.iter().enumerate() {
        if c > 0 {
            perm = compose(&perm, &power(&dfa.letter_map(a), c));
        }
    }
    WordAction {
        perm,
        representative: word.clone(),
    }
}

/// Action of a Parikh vector, composing per-letter powers.
pub fn word_action(dfa: &Dfa, word: &ParikhWord) -> Result<WordAction> {
    require_class(dfa)?;
    if word.counts.len() != dfa.letters() {
        return Err(Error::Precondition(format!(
            "Parikh vector has {} entries for {} letters",
            word.counts.len(),
            dfa.letters()
        )));
    }
    Ok(action_unchecked(dfa, word))
}

/// Whether `action` covers the rejecting state `q`.
pub fn covers(dfa: &Dfa, action: &WordAction, q: State) -> Result<bool> {
    if q >= dfa.len() || dfa.is_accepting(q) {
        return Err(Error::Precondition(format!("state {q} is not rejecting")));
    }
    Ok(action.covers_unchecked(dfa, q))
}

/// Every element of the transition group, identity first, each with the
/// Parikh vector of the breadth-first path that reached it.
pub fn transition_actions(dfa: &Dfa) -> Result<Vec<WordAction>> {
    require_class(dfa)?;
    let k = dfa.letters();
    let letters: Vec<Vec<State>> = (0..k).map(|a| dfa.letter_map(a)).collect();
    let identity = WordAction {
        perm: (0..dfa.len()).collect(),
        representative: ParikhWord::zero(k),
    };
    let mut seen: HashMap<Vec<State>, usize> = HashMap::new();
    seen.insert(identity.perm.clone(), 0);
    let mut actions = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (a, map) in letters.iter().enumerate() {
            let perm = compose(&actions[i].perm, map);
            if !seen.contains_key(&perm) {
                let mut rep = actions[i].representative.clone();
                rep.counts[a] += 1;
                seen.insert(perm.clone(), actions.len());
                queue.push_back(actions.len());
                actions.push(WordAction {
                    perm,
                    representative: rep,
                });
            }
        }
    }
    Ok(actions)
}

/// Distinct non-identity actions that cover at least one rejecting state.
pub fn enumerate_cover_sets(dfa: &Dfa) -> Result<Vec<CoverSet>> {
    require_trim_class(dfa)?;
    Ok(transition_actions(dfa)?
        .into_iter()
        .filter(|a| !a.is_identity())
        .filter_map(|action| {
            let mut covered: Vec<State> = action
                .cycles()
                .into_iter()
                .filter(|c| c.len() > 1 && c.iter().all(|&s| !dfa.is_accepting(s)))
                .flatten()
                .collect();
            covered.sort_unstable();
            (!covered.is_empty()).then_some(CoverSet { action, covered })
        })
        .collect())
}

/// Cycle through the initial state; the seed of the factor built from a word.
pub fn initial_cycle(dfa: &Dfa, action: &WordAction) -> StateSet {
    StateSet::new(dfa.len(), action.cycle_of(dfa.initial())).expect("cycle states are in range")
}

/// Composite iff every rejecting state has a covering word.
pub fn is_composite_commutative(dfa: &Dfa) -> Result<CompositeVerdict> {
    require_trim_class(dfa)?;
    if let Some(v) = degenerate_verdict(dfa) {
        return Ok(v);
    }
    let sets = enumerate_cover_sets(dfa)?;
    let mut witness: BTreeMap<State, StateSet> = BTreeMap::new();
    for set in &sets {
        for &q in &set.covered {
            witness
                .entry(q)
                .or_insert_with(|| initial_cycle(dfa, &set.action));
        }
    }
    if let Some(q) = dfa.rejecting_states().find(|q| !witness.contains_key(q)) {
        return Ok(CompositeVerdict::prime(VerdictReason::Uncovered(q)));
    }
    Ok(CompositeVerdict {
        composite: true,
        reason: VerdictReason::AllCovered,
        covers: witness,
    })
}

/// Minimum number of factors together with covering words achieving it.
#[derive(Clone, Debug, Serialize)]
pub struct WidthWitness {
    pub width: usize,
    pub words: Vec<ParikhWord>,
}

enum Cover {
    Prime,
    /// Nothing to cover, but more than one state: one non-identity word
    /// gives a smaller factor accepting everything.
    NoRejecting(ParikhWord),
    Sets {
        universe: Vec<State>,
        sets: Vec<CoverSet>,
    },
}

fn cover_problem(dfa: &Dfa) -> Result<Cover> {
    require_trim_class(dfa)?;
    if dfa.len() == 1 {
        return Ok(Cover::Prime);
    }
    let universe: Vec<State> = dfa.rejecting_states().collect();
    if universe.is_empty() {
        let any = transition_actions(dfa)?
            .into_iter()
            .find(|a| !a.is_identity())
            .expect("a trim automaton with several states has a non-identity action");
        return Ok(Cover::NoRejecting(any.representative));
    }
    Ok(Cover::Sets {
        universe,
        sets: enumerate_cover_sets(dfa)?,
    })
}

fn index_sets(universe: &[State], sets: &[CoverSet]) -> Vec<Vec<usize>> {
    let pos: HashMap<State, usize> = universe.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    sets.iter()
        .map(|s| s.covered.iter().map(|q| pos[q]).collect())
        .collect()
}

/// Exact width by minimum set cover over the cover sets.
pub fn width_commutative(dfa: &Dfa) -> Result<WidthWitness> {
    match cover_problem(dfa)? {
        Cover::Prime => Err(Error::Precondition("automaton is prime".into())),
        Cover::NoRejecting(w) => Ok(WidthWitness {
            width: 1,
            words: vec![w],
        }),
        Cover::Sets { universe, sets } => {
            let chosen = min_set_cover(universe.len(), &index_sets(&universe, &sets))
                .ok_or_else(|| Error::Precondition("automaton is prime".into()))?;
            Ok(WidthWitness {
                width: chosen.len(),
                words: chosen
                    .into_iter()
                    .map(|i| sets[i].action.representative.clone())
                    .collect(),
            })
        }
    }
}

/// At most `k` words covering every rejecting state, if they exist.
pub fn k_factor_words(dfa: &Dfa, k: usize) -> Result<Option<Vec<ParikhWord>>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(match cover_problem(dfa)? {
        Cover::Prime => None,
        Cover::NoRejecting(w) => Some(vec![w]),
        Cover::Sets { universe, sets } => set_cover_within(
            universe.len(),
            &index_sets(&universe, &sets),
            k,
        )
        .map(|chosen| {
            chosen
                .into_iter()
                .map(|i| sets[i].action.representative.clone())
                .collect()
        }),
    })
}

pub fn is_k_factor_composite_commutative(dfa: &Dfa, k: usize) -> Result<bool> {
    Ok(k_factor_words(dfa, k)?.is_some())
}

/// Orbit-DFA factors seeded by the initial cycles of the given words.
pub fn decomposition_from_words(dfa: &Dfa, words: &[ParikhWord]) -> Result<Decomposition> {
    require_trim_class(dfa)?;
    let mut actions = Vec::with_capacity(words.len());
    for w in words {
        let action = word_action(dfa, w)?;
        if action.is_identity() {
            return Err(Error::Precondition(format!(
                "word {} acts as the identity",
                w.render(dfa.alphabet())
            )));
        }
        actions.push(action);
    }
    if let Some(q) = dfa
        .rejecting_states()
        .find(|&q| !actions.iter().any(|a| a.covers_unchecked(dfa, q)))
    {
        return Err(Error::Uncovered { state: q });
    }
    let seeds: BTreeSet<StateSet> = actions.iter().map(|a| initial_cycle(dfa, a)).collect();
    let factors = seeds
        .iter()
        .map(|s| orbit_dfa(dfa, s).map(|o| o.as_dfa))
        .collect::<Result<Vec<_>>>()?;
    let dec = verify_decomposition(dfa, factors, DEFAULT_VERIFY_CAP)?;
    if !dec.verified {
        return Err(Error::VerificationFailed(format!("{:?}", dec.issue)));
    }
    Ok(dec)
}
