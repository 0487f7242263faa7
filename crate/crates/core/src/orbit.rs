//! Orbits of state sets under the letter actions, orbit-DFAs, and the
//! composite/prime decision for permutation DFAs.
//!
//! A permutation DFA is composite iff every rejecting state `q` lies in a
//! member of some orbit that has fewer members than the DFA has states and
//! contains no accepting state. The decision enumerates seeds drawn from the
//! rejecting states (so the search is exponential only in their number), and
//! the decomposition takes, for each witness orbit, the orbit-DFAs seeded by
//! every member that contains the initial state.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{minimize, verify_decomposition, Decomposition, DEFAULT_VERIFY_CAP};
use crate::dfa::{Dfa, Letter, State};
use crate::error::{Error, Result};
use crate::util::{combinations, is_prime};

/// A set of host states, stored as a sorted list of indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    elems: Box<[u32]>,
    host_size: usize,
}

impl StateSet {
    pub fn new(host_size: usize, states: impl IntoIterator<Item = State>) -> Result<Self> {
        let mut elems: Vec<u32> = Vec::new();
        for q in states {
            if q >= host_size {
                return Err(Error::Precondition(format!(
                    "state {q} outside host of size {host_size}"
                )));
            }
            elems.push(q as u32);
        }
        Ok(Self::from_unsorted(host_size, elems))
    }

    fn from_unsorted(host_size: usize, mut elems: Vec<u32>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        StateSet {
            elems: elems.into_boxed_slice(),
            host_size,
        }
    }

    pub fn singleton(host_size: usize, q: State) -> Self {
        assert!(q < host_size);
        StateSet {
            elems: Box::new([q as u32]),
            host_size,
        }
    }

    pub fn full(host_size: usize) -> Self {
        StateSet {
            elems: (0..host_size as u32).collect(),
            host_size,
        }
    }

    pub fn host_size(&self) -> usize {
        self.host_size
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, q: State) -> bool {
        self.elems.binary_search(&(q as u32)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.elems.iter().map(|&q| q as State)
    }

    pub fn is_subset_of(&self, other: &StateSet) -> bool {
        self.iter().all(|q| other.contains(q))
    }

    /// Bitset view, 64 states per word.
    pub fn bits(&self) -> Vec<u64> {
        let mut bits = vec![0u64; self.host_size.div_ceil(64)];
        for q in self.iter() {
            bits[q / 64] |= 1 << (q % 64);
        }
        bits
    }

    pub fn meets_accepting(&self, dfa: &Dfa) -> bool {
        self.iter().any(|q| dfa.is_accepting(q))
    }

    fn image(&self, dfa: &Dfa, letter: Letter) -> StateSet {
        let elems = self.elems.iter().map(|&q| dfa.step(q as State, letter) as u32).collect();
        Self::from_unsorted(self.host_size, elems)
    }
}

impl Serialize for StateSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elems.iter())
    }
}

/// Image of `set` under one letter.
pub fn subset_step(dfa: &Dfa, set: &StateSet, letter: Letter) -> StateSet {
    set.image(dfa, letter)
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Members in breadth-first discovery order; `members[0]` is the seed.
    pub members: Vec<StateSet>,
    /// False when the exploration stopped at the cap.
    pub complete: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of members containing `q`.
    pub fn multiplicity(&self, q: State) -> usize {
        self.members.iter().filter(|m| m.contains(q)).count()
    }
}

struct Exploration {
    members: Vec<StateSet>,
    // members.len() * letters, only filled when complete
    delta: Vec<usize>,
    complete: bool,
}

fn explore(dfa: &Dfa, seed: &StateSet, cap: usize) -> Exploration {
    let k = dfa.letters();
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    index.insert(seed.clone(), 0);
    let mut members = vec![seed.clone()];
    let mut delta = Vec::new();
    if members.len() >= cap {
        return Exploration {
            members,
            delta,
            complete: false,
        };
    }
    let mut i = 0;
    while i < members.len() {
        for a in 0..k {
            let next = members[i].image(dfa, a);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = members.len();
                    index.insert(next.clone(), id);
                    members.push(next);
                    if members.len() >= cap {
                        return Exploration {
                            members,
                            delta,
                            complete: false,
                        };
                    }
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    Exploration {
        members,
        delta,
        complete: true,
    }
}

/// Closure of `seed` under all letters. Stops with `complete = false` as soon
/// as the orbit reaches `cap` members.
pub fn orbit_of(dfa: &Dfa, seed: &StateSet, cap: usize) -> Orbit {
    assert!(cap >= 1, "orbit cap must be positive");
    let e = explore(dfa, seed, cap);
    Orbit {
        members: e.members,
        complete: e.complete,
    }
}

/// The subset construction started from a seed containing the host's
/// initial state. A member accepts iff it meets the host's accepting set, so
/// the host language is always included in the orbit-DFA language.
#[derive(Clone, Debug)]
pub struct OrbitDfa<'a> {
    pub host: &'a Dfa,
    pub seed: StateSet,
    pub orbit: Orbit,
    pub as_dfa: Dfa,
}

const ORBIT_DFA_GUARD: usize = 1 << 22;

pub fn orbit_dfa<'a>(host: &'a Dfa, seed: &StateSet) -> Result<OrbitDfa<'a>> {
    if seed.host_size() != host.len() {
        return Err(Error::Precondition("seed belongs to a different host".into()));
    }
    if !seed.contains(host.initial()) {
        return Err(Error::Precondition(format!(
            "seed does not contain the initial state {}",
            host.initial()
        )));
    }
    let guard = if host.len() < 22 {
        (1usize << host.len()) + 1
    } else {
        ORBIT_DFA_GUARD
    };
    let e = explore(host, seed, guard);
    if !e.complete {
        return Err(Error::Inconclusive {
            what: "orbit members",
            cap: guard,
        });
    }
    let accepting = e.members.iter().map(|m| m.meets_accepting(host)).collect();
    let as_dfa = Dfa::from_parts(host.alphabet().to_vec(), 0, accepting, e.delta);
    Ok(OrbitDfa {
        host,
        seed: seed.clone(),
        orbit: Orbit {
            members: e.members,
            complete: true,
        },
        as_dfa,
    })
}

fn require_trim_permutation(dfa: &Dfa) -> Result<()> {
    if !dfa.is_permutation() {
        return Err(Error::ClassMismatch("not a permutation DFA".into()));
    }
    if !dfa.is_trim() {
        return Err(Error::ClassMismatch("not trim".into()));
    }
    Ok(())
}

/// If the orbit of `seed` (a set of rejecting states containing `q`) has
/// fewer members than the host has states, returns its member containing the
/// initial state; that orbit-DFA covers `q`.
pub fn orbit_covers(dfa: &Dfa, seed: &StateSet, q: State) -> Result<Option<StateSet>> {
    require_trim_permutation(dfa)?;
    if q >= dfa.len() || dfa.is_accepting(q) {
        return Err(Error::Precondition(format!("state {q} is not rejecting")));
    }
    if !seed.contains(q) {
        return Err(Error::Precondition(format!("seed does not contain {q}")));
    }
    if seed.meets_accepting(dfa) {
        return Err(Error::Precondition("seed contains accepting states".into()));
    }
    let orbit = orbit_of(dfa, seed, dfa.len());
    Ok(initial_member(dfa, &orbit))
}

fn initial_member(dfa: &Dfa, orbit: &Orbit) -> Option<StateSet> {
    if !orbit.complete {
        return None;
    }
    orbit
        .members
        .iter()
        .find(|m| m.contains(dfa.initial()))
        .cloned()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "state", rename_all = "kebab-case")]
pub enum VerdictReason {
    /// Prime number of states with mixed acceptance.
    PrimeStateCount,
    /// No smaller automaton exists.
    SingleState,
    /// Accepts everything or nothing with more than one state; the one-state
    /// minimal automaton is a factor.
    TrivialLanguage,
    AllCovered,
    Uncovered(State),
    /// Decided by a path that does not track covering witnesses.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositeVerdict {
    pub composite: bool,
    pub reason: VerdictReason,
    /// For each rejecting state, a seed containing the initial state whose
    /// orbit-DFA covers it. Populated when composite.
    pub covers: BTreeMap<State, StateSet>,
}

impl CompositeVerdict {
    pub(crate) fn prime(reason: VerdictReason) -> Self {
        CompositeVerdict {
            composite: false,
            reason,
            covers: BTreeMap::new(),
        }
    }
}

/// Verdicts that hold for any trim DFA before the orbit search: one state is
/// prime, a trivial language with more states is composite.
pub(crate) fn degenerate_verdict(dfa: &Dfa) -> Option<CompositeVerdict> {
    if dfa.len() == 1 {
        return Some(CompositeVerdict::prime(VerdictReason::SingleState));
    }
    dfa.trivial_language()?;
    let full = StateSet::full(dfa.len());
    Some(CompositeVerdict {
        composite: true,
        reason: VerdictReason::TrivialLanguage,
        covers: dfa.rejecting_states().map(|q| (q, full.clone())).collect(),
    })
}

/// Decides whether a trim permutation DFA is composite.
pub fn is_composite_permutation(dfa: &Dfa) -> Result<CompositeVerdict> {
    require_trim_permutation(dfa)?;
    if let Some(v) = degenerate_verdict(dfa) {
        return Ok(v);
    }
    let n = dfa.len();
    if is_prime(n) {
        return Ok(CompositeVerdict::prime(VerdictReason::PrimeStateCount));
    }
    let rejecting: Vec<State> = dfa.rejecting_states().collect();
    let mut covers: BTreeMap<State, StateSet> = BTreeMap::new();
    // every member of an explored orbit generates that same orbit
    let mut failed: std::collections::HashSet<StateSet> = Default::default();
    let mut succeeded: std::collections::HashSet<StateSet> = Default::default();
    for &p in &rejecting {
        if covers.contains_key(&p) {
            continue;
        }
        let others: Vec<State> = rejecting.iter().copied().filter(|&q| q != p).collect();
        'sizes: for size in 0..=others.len() {
            for combo in combinations(others.len(), size) {
                let seed = StateSet::from_unsorted(
                    n,
                    std::iter::once(p as u32)
                        .chain(combo.iter().map(|&i| others[i] as u32))
                        .collect(),
                );
                if failed.contains(&seed) || succeeded.contains(&seed) {
                    continue;
                }
                let orbit = orbit_of(dfa, &seed, n);
                match initial_member(dfa, &orbit) {
                    Some(witness) => {
                        for m in &orbit.members {
                            if !m.meets_accepting(dfa) {
                                for q in m.iter() {
                                    covers.entry(q).or_insert_with(|| witness.clone());
                                }
                            }
                        }
                        succeeded.extend(orbit.members);
                        break 'sizes;
                    }
                    None => failed.extend(orbit.members),
                }
            }
        }
        if !covers.contains_key(&p) {
            return Ok(CompositeVerdict::prime(VerdictReason::Uncovered(p)));
        }
    }
    Ok(CompositeVerdict {
        composite: true,
        reason: VerdictReason::AllCovered,
        covers,
    })
}

/// Builds the orbit-DFA decomposition witnessed by a composite verdict and
/// checks it.
pub fn extract_orbit_decomposition(dfa: &Dfa, verdict: &CompositeVerdict) -> Result<Decomposition> {
    if !verdict.composite {
        return Err(Error::Precondition("verdict is not composite".into()));
    }
    let factors = if verdict.reason == VerdictReason::TrivialLanguage {
        vec![minimize(dfa)]
    } else {
        let witnesses: BTreeSet<&StateSet> = verdict.covers.values().collect();
        let mut seeds: BTreeSet<StateSet> = BTreeSet::new();
        for w in witnesses {
            let orbit = orbit_of(dfa, w, dfa.len());
            if !orbit.complete {
                return Err(Error::VerificationFailed(
                    "witness orbit is not smaller than the automaton".into(),
                ));
            }
            seeds.extend(
                orbit
                    .members
                    .into_iter()
                    .filter(|m| m.contains(dfa.initial())),
            );
        }
        seeds
            .iter()
            .map(|s| orbit_dfa(dfa, s).map(|o| o.as_dfa))
            .collect::<Result<Vec<_>>>()?
    };
    let dec = verify_decomposition(dfa, factors, DEFAULT_VERIFY_CAP)?;
    if !dec.verified {
        return Err(Error::VerificationFailed(format!("{:?}", dec.issue)));
    }
    Ok(dec)
}
