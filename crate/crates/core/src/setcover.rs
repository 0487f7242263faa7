//! Exact minimum set cover: greedy upper bound, then branch and bound.
//!
//! Branching picks the uncovered element contained in the fewest sets and
//! tries those sets largest first. A branch is cut when the chosen count plus
//! `⌈uncovered / largest set⌉` cannot beat the incumbent.

struct Instance {
    words: usize,
    sets: Vec<Vec<u64>>,
    // element -> set indices containing it, largest sets first
    containing: Vec<Vec<usize>>,
    max_size: usize,
    universe: usize,
}

impl Instance {
    fn new(universe: usize, sets: &[Vec<usize>]) -> Self {
        let words = universe.div_ceil(64).max(1);
        let bitsets: Vec<Vec<u64>> = sets
            .iter()
            .map(|s| {
                let mut b = vec![0u64; words];
                for &e in s {
                    assert!(e < universe, "element {e} outside universe {universe}");
                    b[e / 64] |= 1 << (e % 64);
                }
                b
            })
            .collect();
        let sizes: Vec<usize> = bitsets.iter().map(|b| popcount(b)).collect();
        let mut containing = vec![Vec::new(); universe];
        for (i, b) in bitsets.iter().enumerate() {
            for (e, c) in containing.iter_mut().enumerate() {
                if b[e / 64] >> (e % 64) & 1 == 1 {
                    c.push(i);
                }
            }
        }
        for c in &mut containing {
            c.sort_by(|&x, &y| sizes[y].cmp(&sizes[x]).then(x.cmp(&y)));
        }
        Instance {
            words,
            max_size: sizes.iter().copied().max().unwrap_or(0),
            sets: bitsets,
            containing,
            universe,
        }
    }

    fn greedy(&self) -> Option<Vec<usize>> {
        let mut covered = vec![0u64; self.words];
        let mut chosen = Vec::new();
        while popcount(&covered) < self.universe {
            let (best, gain) = self
                .sets
                .iter()
                .enumerate()
                .map(|(i, s)| (i, gain(s, &covered)))
                .fold((usize::MAX, 0), |acc, (i, g)| if g > acc.1 { (i, g) } else { acc });
            if gain == 0 {
                return None;
            }
            or_into(&mut covered, &self.sets[best]);
            chosen.push(best);
        }
        chosen.sort_unstable();
        Some(chosen)
    }

    fn search(
        &self,
        covered: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
        best_len: &mut usize,
        stop_on_first: bool,
    ) -> bool {
        let uncovered = self.universe - popcount(covered);
        if uncovered == 0 {
            if chosen.len() < *best_len {
                *best_len = chosen.len();
                let mut sol = chosen.clone();
                sol.sort_unstable();
                *best = Some(sol);
                return stop_on_first;
            }
            return false;
        }
        if self.max_size == 0 || chosen.len() + uncovered.div_ceil(self.max_size) >= *best_len {
            return false;
        }
        let pivot = (0..self.universe)
            .filter(|&e| covered[e / 64] >> (e % 64) & 1 == 0)
            .min_by_key(|&e| (self.containing[e].len(), e))
            .unwrap();
        for &s in &self.containing[pivot] {
            let saved = covered.clone();
            or_into(covered, &self.sets[s]);
            chosen.push(s);
            let done = self.search(covered, chosen, best, best_len, stop_on_first);
            chosen.pop();
            *covered = saved;
            if done {
                return true;
            }
        }
        false
    }
}

fn popcount(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn gain(s: &[u64], covered: &[u64]) -> usize {
    s.iter().zip(covered).map(|(a, c)| (a & !c).count_ones() as usize).sum()
}

fn or_into(acc: &mut [u64], s: &[u64]) {
    for (a, b) in acc.iter_mut().zip(s) {
        *a |= b;
    }
}

/// Indices of a minimum-size family of `sets` covering `0..universe`, or
/// `None` when the union of all sets falls short.
pub fn min_set_cover(universe: usize, sets: &[Vec<usize>]) -> Option<Vec<usize>> {
    let inst = Instance::new(universe, sets);
    let greedy = inst.greedy()?;
    let mut best_len = greedy.len();
    let mut best = Some(greedy);
    let mut covered = vec![0u64; inst.words];
    inst.search(&mut covered, &mut Vec::new(), &mut best, &mut best_len, false);
    best
}

/// Some cover using at most `limit` sets, if one exists.
pub fn set_cover_within(universe: usize, sets: &[Vec<usize>], limit: usize) -> Option<Vec<usize>> {
    let inst = Instance::new(universe, sets);
    let greedy = inst.greedy()?;
    if greedy.len() <= limit {
        return Some(greedy);
    }
    let mut best = None;
    let mut best_len = limit + 1;
    let mut covered = vec![0u64; inst.words];
    inst.search(&mut covered, &mut Vec::new(), &mut best, &mut best_len, true);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::combinations;
    use proptest::prelude::*;

    fn brute(universe: usize, sets: &[Vec<usize>]) -> Option<usize> {
        (0..=sets.len()).find(|&k| {
            combinations(sets.len(), k).any(|c| {
                let mut seen = vec![false; universe];
                c.iter().for_each(|&i| sets[i].iter().for_each(|&e| seen[e] = true));
                seen.iter().all(|&b| b)
            })
        })
    }

    #[test]
    fn search_beats_greedy() {
        // greedy grabs the 4-element middle set first and then needs two more
        let sets = vec![vec![1, 2, 3, 4], vec![0, 1, 2], vec![3, 4, 5]];
        let best = min_set_cover(6, &sets).unwrap();
        assert_eq!(best, vec![1, 2]);
        assert!(set_cover_within(6, &sets, 1).is_none());
        assert_eq!(set_cover_within(6, &sets, 2).unwrap(), vec![1, 2]);
    }

    #[test]
    fn uncoverable() {
        assert!(min_set_cover(3, &[vec![0], vec![1]]).is_none());
        assert_eq!(min_set_cover(0, &[]), Some(vec![]));
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            universe in 1usize..9,
            raw in prop::collection::vec(prop::collection::vec(0usize..9, 0..5), 0..8),
        ) {
            let sets: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&e| e < universe).collect())
                .collect();
            let expected = brute(universe, &sets);
            let got = min_set_cover(universe, &sets);
            prop_assert_eq!(got.as_ref().map(Vec::len), expected);
            if let Some(k) = expected {
                prop_assert!(set_cover_within(universe, &sets, k).is_some());
                if k > 0 {
                    prop_assert!(set_cover_within(universe, &sets, k - 1).is_none());
                }
            }
        }
    }
}
