#![allow(dead_code)]

use dfa_decompose::Dfa;

pub fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn from_maps(maps: &[Vec<usize>], accepting: impl IntoIterator<Item = usize>) -> Dfa {
    let n = maps[0].len();
    Dfa::new(
        letters(maps.len()),
        0,
        accepting,
        (0..n).map(|q| maps.iter().map(|m| m[q]).collect()).collect(),
    )
    .unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn mask_states(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&q| mask >> q & 1 == 1).collect()
}

/// Every trim permutation DFA with `n` states over `k` letters, all acceptance
/// patterns included.
pub fn all_trim_permutation_dfas(n: usize, k: usize) -> Vec<Dfa> {
    let perms = permutations(n);
    let mut tables: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..k {
        tables = tables
            .into_iter()
            .flat_map(|t| {
                perms.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for maps in tables {
        let probe = from_maps(&maps, []);
        if !probe.is_trim() {
            continue;
        }
        for mask in 0..(1u32 << n) {
            out.push(from_maps(&maps, mask_states(n, mask)));
        }
    }
    out
}

/// A chain of `chain` states leading into a cycle of `cycle` states.
pub fn lasso(chain: usize, cycle: usize, accepting: impl IntoIterator<Item = usize>) -> Dfa {
    let n = chain + cycle;
    Dfa::new(
        vec!["a".into()],
        0,
        accepting,
        (0..n).map(|q| vec![if q + 1 < n { q + 1 } else { chain }]).collect(),
    )
    .unwrap()
}
