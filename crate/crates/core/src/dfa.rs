//! The complete deterministic automaton model, its JSON and DOT formats,
//! and structural classification.
//!
//! States are dense indices `0..n` and letters are indices into the ordered
//! alphabet. The empty word is accepted iff the initial state is accepting.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type State = usize;
pub type Letter = usize;
/// A word as a sequence of letter indices.
pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<String>,
    initial: State,
    accepting: Vec<bool>,
    // row-major: delta[q * |alphabet| + a]
    delta: Vec<State>,
}

/// Structural properties reported by [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaClass {
    pub trim: bool,
    pub permutation: bool,
    pub commutative: bool,
    pub unary: bool,
    pub minimal: bool,
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    alphabet: Vec<String>,
    initial: usize,
    accepting: Vec<usize>,
    transitions: Vec<Vec<usize>>,
}

impl Dfa {
    /// Builds a DFA from a row-per-state transition table, validating every invariant.
    pub fn new(
        alphabet: Vec<String>,
        initial: State,
        accepting: impl IntoIterator<Item = State>,
        transitions: Vec<Vec<State>>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::parse("alphabet", "alphabet must be non-empty"));
        }
        for (i, letter) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(letter) {
                return Err(Error::parse(
                    format!("alphabet[{i}]"),
                    format!("duplicate letter {letter:?}"),
                ));
            }
        }
        let n = transitions.len();
        if n == 0 {
            return Err(Error::parse("transitions", "state count must be positive"));
        }
        if initial >= n {
            return Err(Error::parse(
                "initial",
                format!("state index out of range: {initial} (state count {n})"),
            ));
        }
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(n * k);
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != k {
                return Err(Error::parse(
                    format!("transitions[{q}]"),
                    format!("expected {k} entries, found {}", row.len()),
                ));
            }
            for (a, &t) in row.iter().enumerate() {
                if t >= n {
                    return Err(Error::parse(
                        format!("transitions[{q}][{a}]"),
                        format!("state index out of range: {t} (state count {n})"),
                    ));
                }
                delta.push(t);
            }
        }
        let mut acc = vec![false; n];
        for (i, q) in accepting.into_iter().enumerate() {
            if q >= n {
                return Err(Error::parse(
                    format!("accepting[{i}]"),
                    format!("state index out of range: {q} (state count {n})"),
                ));
            }
            acc[q] = true;
        }
        Ok(Dfa {
            alphabet,
            initial,
            accepting: acc,
            delta,
        })
    }

    /// Builds from already-validated parts. Used by internal constructions.
    pub(crate) fn from_parts(
        alphabet: Vec<String>,
        initial: State,
        accepting: Vec<bool>,
        delta: Vec<State>,
    ) -> Self {
        debug_assert!(!alphabet.is_empty());
        debug_assert_eq!(delta.len(), accepting.len() * alphabet.len());
        debug_assert!(initial < accepting.len());
        Dfa {
            alphabet,
            initial,
            accepting,
            delta,
        }
    }

    /// Like [`Dfa::from_parts`], with one transition row per state.
    pub(crate) fn from_rows(
        alphabet: Vec<String>,
        initial: State,
        accepting: Vec<bool>,
        rows: Vec<Vec<State>>,
    ) -> Self {
        Self::from_parts(alphabet, initial, accepting, rows.concat())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DfaJson = serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        Dfa::new(raw.alphabet, raw.initial, raw.accepting, raw.transitions)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("DFA serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = DfaJson {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            accepting: self.accepting_states().collect(),
            transitions: (0..self.len()).map(|q| self.row(q).to_vec()).collect(),
        };
        serde_json::to_value(raw).expect("DFA serializes")
    }

    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepting.is_empty()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letter_index(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|l| l == name)
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: State, a: Letter) -> State {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn row(&self, q: State) -> &[State] {
        let k = self.alphabet.len();
        &self.delta[q * k..(q + 1) * k]
    }

    #[inline]
    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn accepting_mask(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.len()).filter(|&q| self.accepting[q])
    }

    pub fn rejecting_states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.len()).filter(|&q| !self.accepting[q])
    }

    pub fn run_from(&self, q: State, word: &[Letter]) -> State {
        word.iter().fold(q, |s, &a| self.step(s, a))
    }

    pub fn run(&self, word: &[Letter]) -> State {
        self.run_from(self.initial, word)
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.accepting[self.run(word)]
    }

    /// The letter's transition map as a vector indexed by state.
    pub fn letter_map(&self, a: Letter) -> Vec<State> {
        (0..self.len()).map(|q| self.step(q, a)).collect()
    }

    pub fn with_accepting(&self, accepting: Vec<bool>) -> Dfa {
        assert_eq!(accepting.len(), self.len());
        Dfa {
            accepting,
            ..self.clone()
        }
    }

    pub fn complement(&self) -> Dfa {
        self.with_accepting(self.accepting.iter().map(|b| !b).collect())
    }

    /// States reachable from the initial state, in BFS order with letter-order tie-breaking.
    pub fn reachable_order(&self) -> Vec<State> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for &t in self.row(q) {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    pub fn is_trim(&self) -> bool {
        self.reachable_order().len() == self.len()
    }

    /// Restricts to reachable states, renumbered in BFS order.
    pub fn trim(&self) -> Dfa {
        let order = self.reachable_order();
        self.renumber(&order)
    }

    /// Keeps exactly the states in `order` (which must be closed under
    /// transitions and contain the initial state), renumbering `order[i]` to `i`.
    pub(crate) fn renumber(&self, order: &[State]) -> Dfa {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let k = self.letters();
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in order {
            delta.extend(self.row(q).iter().map(|&t| index[t]));
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: index[self.initial],
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            delta,
        }
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.len();
        let mut hit = vec![usize::MAX; n];
        for a in 0..self.letters() {
            for q in 0..n {
                let t = self.step(q, a);
                if hit[t] == a {
                    return false;
                }
                hit[t] = a;
            }
        }
        true
    }

    /// Letter-level commutation: `δ(q, σρ) = δ(q, ρσ)` for all states and letter pairs.
    pub fn is_commutative(&self) -> bool {
        let k = self.letters();
        (0..self.len()).all(|q| {
            (0..k).all(|a| {
                (a + 1..k).all(|b| self.step(self.step(q, a), b) == self.step(self.step(q, b), a))
            })
        })
    }

    pub fn is_unary(&self) -> bool {
        self.letters() == 1
    }

    /// Accepts everything (`Σ*`) or nothing, judged on reachable states.
    pub fn trivial_language(&self) -> Option<bool> {
        let order = self.reachable_order();
        let first = self.accepting[order[0]];
        order
            .iter()
            .all(|&q| self.accepting[q] == first)
            .then_some(first)
    }

    /// Graphviz rendering: doublecircle for accepting states, a point node
    /// pointing at the initial state, one labeled edge per transition.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for q in 0..self.len() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  __start -> q{};", self.initial);
        for q in 0..self.len() {
            for (a, name) in self.alphabet.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  q{q} -> q{} [label=\"{}\"];",
                    self.step(q, a),
                    escape_dot(name)
                );
            }
        }
        out.push_str("}\n");
        out
    }

    /// Parses the DOT dialect produced by [`Dfa::to_dot`]. The alphabet order
    /// is the order in which letters first appear on edges.
    pub fn from_dot(text: &str) -> Result<Self> {
        let node_re = regex::Regex::new(r#"^q(\d+)\s*\[shape=(\w+)\]\s*;?$"#).unwrap();
        let start_re = regex::Regex::new(r#"^__start\s*->\s*q(\d+)\s*;?$"#).unwrap();
        let edge_re = regex::Regex::new(
            r#"^q(\d+)\s*->\s*q(\d+)\s*\[label="((?:[^"\\]|\\.)*)"\]\s*;?$"#,
        )
        .unwrap();
        let mut shapes: HashMap<usize, bool> = HashMap::new();
        let mut initial = None;
        let mut alphabet: Vec<String> = Vec::new();
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            let path = || format!("line {}", lineno + 1);
            if let Some(c) = edge_re.captures(line) {
                let from = parse_index(&c[1], &path)?;
                let to = parse_index(&c[2], &path)?;
                let name = unescape_dot(&c[3]);
                let a = match alphabet.iter().position(|l| *l == name) {
                    Some(a) => a,
                    None => {
                        alphabet.push(name);
                        alphabet.len() - 1
                    }
                };
                edges.push((from, a, to));
            } else if let Some(c) = start_re.captures(line) {
                initial = Some(parse_index(&c[1], &path)?);
            } else if let Some(c) = node_re.captures(line) {
                let q = parse_index(&c[1], &path)?;
                let accepting = match &c[2] {
                    "doublecircle" => true,
                    "circle" => false,
                    other => return Err(Error::parse(path(), format!("unknown shape {other}"))),
                };
                shapes.insert(q, accepting);
            }
        }
        let n = shapes.len();
        if (0..n).any(|q| !shapes.contains_key(&q)) {
            return Err(Error::parse("nodes", "state names must be q0..q(n-1)"));
        }
        let initial = initial.ok_or_else(|| Error::parse("__start", "missing initial marker"))?;
        let mut table = vec![vec![None; alphabet.len()]; n];
        for (from, a, to) in edges {
            if from >= n || to >= n {
                return Err(Error::parse(
                    "edges",
                    format!("state index out of range: q{} (state count {n})", from.max(to)),
                ));
            }
            if table[from][a].replace(to).is_some() {
                return Err(Error::parse(
                    format!("q{from}"),
                    format!("duplicate transition on {:?}", alphabet[a]),
                ));
            }
        }
        let mut transitions = Vec::with_capacity(n);
        for (q, row) in table.into_iter().enumerate() {
            let row: Option<Vec<usize>> = row.into_iter().collect();
            transitions.push(row.ok_or_else(|| {
                Error::parse(format!("q{q}"), "transition table is not total")
            })?);
        }
        let accepting = (0..n).filter(|q| shapes[q]);
        Dfa::new(alphabet, initial, accepting, transitions)
    }
}

fn parse_index(s: &str, path: &dyn Fn() -> String) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(path(), format!("bad state index {s}")))
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn unescape_dot(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            if let Some(n) = chars.next() {
                out.push(n);
            }
        } else {
            out.push(c);
        }
    }
    out
}

/// Parses a DFA from its canonical JSON document.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    Dfa::from_json(text)
}

pub fn classify(dfa: &Dfa) -> DfaClass {
    let trim = dfa.is_trim();
    let minimal = trim && crate::algebra::minimize(dfa).len() == dfa.len();
    DfaClass {
        trim,
        permutation: dfa.is_permutation(),
        commutative: dfa.is_commutative(),
        unary: dfa.is_unary(),
        minimal,
    }
}

/// Shortest word from the initial state to each state (BFS, letter order).
pub fn access_words(dfa: &Dfa) -> Vec<Option<Word>> {
    let mut words: Vec<Option<Word>> = vec![None; dfa.len()];
    words[dfa.initial()] = Some(Vec::new());
    let mut queue = VecDeque::from([dfa.initial()]);
    while let Some(q) = queue.pop_front() {
        for a in 0..dfa.letters() {
            let t = dfa.step(q, a);
            if words[t].is_none() {
                let mut w = words[q].clone().unwrap();
                w.push(a);
                words[t] = Some(w);
                queue.push_back(t);
            }
        }
    }
    words
}

pub(crate) fn letter_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle2() -> Dfa {
        Dfa::from_json(
            r#"{"alphabet":["a"],"initial":0,"accepting":[0],"transitions":[[1],[0]]}"#,
        )
        .unwrap()
    }

    #[test]
    fn parses_smallest_cycle() {
        let d = cycle2();
        assert_eq!(d.len(), 2);
        assert!(d.accepts(&[]));
        assert!(!d.accepts(&[0]));
        assert!(d.accepts(&[0, 0]));
    }

    #[test]
    fn rejects_out_of_range_transition() {
        let err = Dfa::from_json(
            r#"{"alphabet":["a"],"initial":0,"accepting":[],"transitions":[[1],[5],[0]]}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("state index out of range"), "{msg}");
        assert!(msg.contains("transitions[1][0]"), "{msg}");
    }

    #[test]
    fn rejects_duplicate_and_empty_alphabet() {
        let dup = Dfa::from_json(
            r#"{"alphabet":["a","a"],"initial":0,"accepting":[],"transitions":[[0,0]]}"#,
        )
        .unwrap_err();
        assert!(dup.to_string().contains("alphabet[1]"));
        let empty =
            Dfa::from_json(r#"{"alphabet":[],"initial":0,"accepting":[],"transitions":[[]]}"#)
                .unwrap_err();
        assert!(empty.to_string().contains("non-empty"));
        let bad = Dfa::from_json(r#"{"alphabet":["a"],"initial":0"#).unwrap_err();
        assert!(matches!(bad, Error::Parse { .. }));
    }

    #[test]
    fn rejects_short_rows_and_bad_initial() {
        assert!(Dfa::from_json(
            r#"{"alphabet":["a","b"],"initial":0,"accepting":[],"transitions":[[0]]}"#
        )
        .is_err());
        assert!(Dfa::from_json(
            r#"{"alphabet":["a"],"initial":3,"accepting":[],"transitions":[[0]]}"#
        )
        .is_err());
    }

    #[test]
    fn single_state_classification() {
        let d = Dfa::new(vec!["a".into(), "b".into()], 0, [0], vec![vec![0, 0]]).unwrap();
        let c = classify(&d);
        assert!(c.trim && c.permutation && c.commutative && c.minimal);
        assert!(!c.unary);
    }

    #[test]
    fn dot_round_trip() {
        let d = Dfa::new(
            vec!["x".into(), "say \"hi\"".into()],
            1,
            [0, 2],
            vec![vec![1, 2], vec![2, 0], vec![0, 0]],
        )
        .unwrap();
        let dot = d.to_dot();
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("__start -> q1"));
        assert_eq!(Dfa::from_dot(&dot).unwrap(), d);
    }

    #[test]
    fn trim_drops_unreachable() {
        let d = Dfa::new(vec!["a".into()], 0, [0], vec![vec![0], vec![0]]).unwrap();
        assert!(!d.is_trim());
        assert_eq!(d.trim().len(), 1);
    }
}
