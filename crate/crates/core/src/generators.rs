//! Named DFA families and seeded random DFAs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dfa::{letter_names, Dfa, State};
use crate::error::{Error, Result};
use crate::util::{combinations, gcd, next_prime_above};

/// State index of a grid point; component 1 is least significant.
pub fn gridmod_state(n: usize, coords: &[usize]) -> State {
    coords.iter().rev().fold(0, |acc, &c| acc * n + c)
}

pub fn gridmod_coords(n: usize, m: usize, mut q: State) -> Vec<usize> {
    (0..m)
        .map(|_| {
            let c = q % n;
            q /= n;
            c
        })
        .collect()
}

/// The grid automaton over `(Z/nZ)^m`: letter `a_i` increments component `i`,
/// and a state accepts iff it has both a zero and a non-zero component.
pub fn gen_gridmod(n: usize, m: usize) -> Result<Dfa> {
    if n < 2 || m < 1 {
        return Err(Error::Precondition(format!(
            "gridmod needs n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    let size = n
        .checked_pow(m as u32)
        .filter(|&s| s <= 1 << 24)
        .ok_or_else(|| Error::Precondition(format!("{n}^{m} states is too many")))?;
    let mut accepting = Vec::with_capacity(size);
    let mut delta = Vec::with_capacity(size);
    for q in 0..size {
        let coords = gridmod_coords(n, m, q);
        accepting.push(coords.contains(&0) && coords.iter().any(|&c| c != 0));
        delta.push(
            (0..m)
                .map(|i| {
                    let mut c = coords.clone();
                    c[i] = (c[i] + 1) % n;
                    gridmod_state(n, &c)
                })
                .collect(),
        );
    }
    Ok(Dfa::from_rows(letter_names("a", m), 0, accepting, delta))
}

/// A Hitting-Set instance: universe `1..=n`, a family of subsets, a budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSetInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl HittingSetInstance {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Precondition("hitting set universe is empty".into()));
        }
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Precondition(format!("sets[{i}] is empty")));
            }
            if let Some(v) = s.iter().find(|&&v| v == 0 || v > self.n) {
                return Err(Error::Precondition(format!(
                    "sets[{i}] contains {v}, outside 1..={}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: HittingSetInstance =
            serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    /// A smallest subset of `1..=n` meeting every set, by exhaustive search.
    pub fn min_hitting_set(&self) -> Vec<usize> {
        (0..=self.n)
            .flat_map(|k| combinations(self.n, k))
            .map(|c| c.into_iter().map(|i| i + 1).collect::<Vec<_>>())
            .find(|h| self.sets.iter().all(|s| s.iter().any(|v| h.contains(v))))
            .expect("the full universe hits every non-empty set")
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub dfa: Dfa,
    pub mu: usize,
    pub tau: usize,
    /// `k + 1`: the factor budget matching the instance's budget `k`.
    pub factor_bound: usize,
}

impl ReductionOutput {
    pub fn state(&self, q: [usize; 4]) -> State {
        ((q[3] * self.tau + q[2]) * self.mu + q[1]) * self.mu + q[0]
    }

    pub fn coords(&self, mut s: State) -> [usize; 4] {
        let q1 = s % self.mu;
        s /= self.mu;
        let q2 = s % self.mu;
        s /= self.mu;
        [q1, q2, s % self.tau, s / self.tau]
    }
}

/// Encodes a Hitting-Set instance as a commutative permutation DFA over
/// `{a, b, c, d}` whose width is one more than the minimum hitting set.
pub fn gen_hitting_set(inst: &HittingSetInstance) -> Result<ReductionOutput> {
    inst.validate()?;
    let m = inst.sets.len();
    let mu = next_prime_above(inst.n.max(2));
    let tau = next_prime_above(m.max(mu));
    let mut out = ReductionOutput {
        dfa: Dfa::from_rows(vec!["a".into()], 0, vec![false], vec![vec![0]]),
        mu,
        tau,
        factor_bound: inst.k + 1,
    };
    let size = mu * mu * tau * 2;
    let mut accepting = vec![true; size];
    let mut delta = Vec::with_capacity(size);
    for s in 0..size {
        let q = out.coords(s);
        let bottom_rejecting = q[2] >= 1
            && q[2] <= m
            && inst.sets[q[2] - 1].iter().any(|&v| q[1] == v * q[0] % mu);
        let rejecting = match q[3] {
            0 => bottom_rejecting,
            _ => bottom_rejecting && q[0] != 0 && q[1] != 0,
        };
        accepting[s] = !rejecting;
        let moduli = [mu, mu, tau, 2];
        delta.push(
            (0..4)
                .map(|i| {
                    let mut r = q;
                    r[i] = (r[i] + 1) % moduli[i];
                    out.state(r)
                })
                .collect(),
        );
    }
    out.dfa = Dfa::from_rows(
        ["a", "b", "c", "d"].map(String::from).to_vec(),
        0,
        accepting,
        delta,
    );
    Ok(out)
}

/// The open-requests monitor for `clients` clients, and its per-client
/// two-state factors.
///
/// Letters are `r1..rn`, `g1..gn`, `i`. Monolith states are bitmasks of open
/// requests; the empty mask accepts.
pub fn gen_requests(clients: usize) -> Result<(Dfa, Vec<Dfa>)> {
    if !(1..=20).contains(&clients) {
        return Err(Error::Precondition(format!(
            "clients must be in 1..=20, got {clients}"
        )));
    }
    let mut alphabet = letter_names("r", clients);
    alphabet.extend(letter_names("g", clients));
    alphabet.push("i".into());
    let size = 1usize << clients;
    let delta = (0..size)
        .map(|mask| {
            let mut row: Vec<State> = (0..clients).map(|j| mask | 1 << j).collect();
            row.extend((0..clients).map(|j| mask & !(1 << j)));
            row.push(mask);
            row
        })
        .collect();
    let accepting = (0..size).map(|mask| mask == 0).collect();
    let monolith = Dfa::from_rows(alphabet.clone(), 0, accepting, delta);
    let factors = (0..clients)
        .map(|j| {
            let delta = (0..2)
                .map(|q| {
                    (0..alphabet.len())
                        .map(|a| match a {
                            a if a == j => 1,
                            a if a == clients + j => 0,
                            _ => q,
                        })
                        .collect()
                })
                .collect();
            Dfa::from_rows(alphabet.clone(), 0, vec![true, false], delta)
        })
        .collect();
    Ok((monolith, factors))
}

/// Class requested from [`gen_random`]. Commutativity is only offered
/// together with the permutation property.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomFlags {
    pub permutation: bool,
    pub commutative: bool,
}

fn random_accepting(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    loop {
        let acc: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if n == 1 || (acc.contains(&true) && acc.contains(&false)) {
            return acc;
        }
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<State> {
    let mut p: Vec<State> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn from_letter_maps(maps: &[Vec<State>], accepting: Vec<bool>) -> Dfa {
    let n = accepting.len();
    let delta = (0..n).map(|q| maps.iter().map(|m| m[q]).collect()).collect();
    Dfa::from_rows(letter_names("a", maps.len()), 0, accepting, delta)
}

/// A seeded random trim DFA. Accepting sets are mixed whenever the result has
/// more than one state.
pub fn gen_random(n: usize, letters: usize, seed: u64, flags: RandomFlags) -> Result<Dfa> {
    if n < 1 || letters < 1 {
        return Err(Error::Precondition("n and letters must be positive".into()));
    }
    if flags.commutative && !flags.permutation {
        return Err(Error::ContradictoryFlags(
            "commutative random DFAs are generated as permutation DFAs; add the permutation flag"
                .into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if flags.commutative {
        let cycle = random_permutation(&mut rng, n);
        let mut next = vec![0; n];
        for i in 0..n {
            next[cycle[i]] = cycle[(i + 1) % n];
        }
        let exps = loop {
            let e: Vec<usize> = (0..letters).map(|_| rng.gen_range(0..n)).collect();
            if e.iter().fold(n, |g, &x| gcd(g, x)) == 1 {
                break e;
            }
        };
        let maps: Vec<Vec<State>> = exps
            .iter()
            .map(|&e| {
                (0..n)
                    .map(|q| (0..e).fold(q, |s, _| next[s]))
                    .collect()
            })
            .collect();
        let acc = random_accepting(&mut rng, n);
        return Ok(from_letter_maps(&maps, acc));
    }
    if flags.permutation {
        loop {
            let maps: Vec<Vec<State>> = (0..letters).map(|_| random_permutation(&mut rng, n)).collect();
            let acc = random_accepting(&mut rng, n);
            let d = from_letter_maps(&maps, acc);
            if d.is_trim() {
                return Ok(d);
            }
        }
    }
    let maps: Vec<Vec<State>> = (0..letters)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let trimmed = from_letter_maps(&maps, vec![false; n]).trim();
    let acc = random_accepting(&mut rng, trimmed.len());
    Ok(trimmed.with_accepting(acc))
}
