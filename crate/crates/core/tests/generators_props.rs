mod common;

use dfa_decompose::commutative::{
    enumerate_cover_sets, is_k_factor_composite_commutative, word_action, ParikhWord,
};
use dfa_decompose::generators::{gen_hitting_set, HittingSetInstance, ReductionOutput};
use dfa_decompose::util::combinations;

fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..(1u32 << n))
        .map(|m| (1..=n).filter(|&v| m >> (v - 1) & 1 == 1).collect())
        .collect()
}

/// Instances over `1..=n` with `m` sets, sets drawn with repetition.
fn instances(n: usize, m: usize) -> Vec<HittingSetInstance> {
    let subsets = nonempty_subsets(n);
    let s = subsets.len();
    // multisets of size m as increasing index sequences over s + m - 1 slots
    combinations(s + m - 1, m)
        .map(|c| {
            let sets = c.iter().enumerate().map(|(i, &x)| subsets[x - i].clone()).collect();
            HittingSetInstance { n, sets, k: 1 }
        })
        .collect()
}

fn small_corpus() -> Vec<(HittingSetInstance, ReductionOutput)> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for m in 1..=3 {
            for inst in instances(n, m) {
                let r = gen_hitting_set(&inst).unwrap();
                out.push((inst, r));
            }
        }
    }
    out
}

fn support(p: &ParikhWord) -> Vec<usize> {
    (0..4).filter(|&i| p.counts[i] > 0).collect()
}

/// Every concise vector: each count below its letter's cycle length.
fn concise_vectors(r: &ReductionOutput) -> Vec<ParikhWord> {
    let h = [r.mu, r.mu, r.tau, 2];
    let mut out = Vec::new();
    for a in 0..h[0] {
        for b in 0..h[1] {
            for c in 0..h[2] {
                for d in 0..h[3] {
                    out.push(ParikhWord::new(vec![a, b, c, d]));
                }
            }
        }
    }
    out
}

#[test]
fn instance_enumeration_counts() {
    assert_eq!(instances(2, 2).len(), 6);
    assert_eq!(instances(3, 3).len(), 84);
}

#[test]
fn claim_one_supports() {
    for (_, r) in small_corpus() {
        for set in enumerate_cover_sets(&r.dfa).unwrap() {
            let s = support(&set.action.representative);
            assert!(s == vec![3] || s == vec![0, 1], "support {s:?}");
        }
    }
}

#[test]
fn claim_two_top_layer() {
    for (inst, r) in small_corpus() {
        let d_action = word_action(&r.dfa, &ParikhWord::new(vec![0, 0, 0, 1])).unwrap();
        let in_o = |q: usize| {
            let c = r.coords(q);
            c[0] == 0 && c[1] == 0 && (1..=inst.sets.len()).contains(&c[2])
        };
        for q in r.dfa.rejecting_states().filter(|&q| !in_o(q)) {
            assert!(d_action.cycle_of(q).iter().all(|&s| !r.dfa.is_accepting(s)));
        }
        for set in enumerate_cover_sets(&r.dfa).unwrap() {
            let top = set.covered.iter().any(|&q| r.coords(q)[3] == 1);
            assert_eq!(top, set.action.perm == d_action.perm);
        }
    }
}

#[test]
fn claim_three_origins() {
    for (inst, r) in small_corpus().into_iter().filter(|(i, _)| i.sets.len() <= 2) {
        for p in concise_vectors(&r) {
            let act = word_action(&r.dfa, &p).unwrap();
            let covered: Vec<usize> = r
                .dfa
                .rejecting_states()
                .filter(|&q| act.perm[q] != q && act.cycle_of(q).iter().all(|&s| !r.dfa.is_accepting(s)))
                .collect();
            if covered.is_empty() {
                continue;
            }
            for i in 1..=inst.sets.len() {
                let origin = r.state([0, 0, i, 0]);
                let ab_only = p.counts[2] == 0 && p.counts[3] == 0;
                let on_line = inst.sets[i - 1]
                    .iter()
                    .any(|&v| p.counts[1] % r.mu == v * p.counts[0] % r.mu);
                assert_eq!(covered.contains(&origin), ab_only && on_line, "{p:?} origin {i}");
            }
        }
    }
}

#[test]
fn reduction_preserves_answers() {
    for n in 1..=3 {
        for m in 1..=3 {
            for inst in instances(n, m) {
                let h = inst.min_hitting_set().len();
                let r = gen_hitting_set(&inst).unwrap();
                for k in 1..=n {
                    assert_eq!(
                        h <= k,
                        is_k_factor_composite_commutative(&r.dfa, k + 1).unwrap(),
                        "{inst:?} k={k}"
                    );
                }
            }
        }
    }
}
