//! Brute-force oracles, written without the library's search machinery,
//! checked against the library on small cases.

use std::collections::HashMap;

use hurwitz_core::{
    decide, decide_with, enumerate_partitions, genus_of_certificate, verify, BranchTriplet, Budget,
    Partition, Permutation, SearchOptions, Verdict,
};
use itertools::Itertools;

/// 0-based image vectors of every permutation of `{0..d}`.
fn symmetric_group(d: usize) -> Vec<Vec<usize>> {
    (0..d).permutations(d).collect()
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

fn transitive(perms: &[&Vec<usize>], d: usize) -> bool {
    let mut reached = vec![false; d];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p[x];
            if !reached[y] {
                reached[y] = true;
                stack.push(y);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Realizability by trying every tuple with the prescribed cycle types, in
/// the triplet's partition order, with no symmetry reduction.
fn brute_force_realizable(t: &BranchTriplet) -> bool {
    let d = t.degree();
    let group = symmetric_group(d);
    let classes: Vec<Vec<&Vec<usize>>> = t
        .partitions()
        .iter()
        .map(|part| {
            group
                .iter()
                .filter(|p| cycle_type(p) == part.parts())
                .collect()
        })
        .collect();
    classes.iter().multi_cartesian_product().any(|tuple| {
        let mut acc: Vec<usize> = (0..d).collect();
        for p in &tuple {
            acc = acc.iter().map(|&x| p[x]).collect();
        }
        acc.iter().enumerate().all(|(i, &x)| i == x)
            && transitive(&tuple.iter().map(|p| **p).collect::<Vec<_>>(), d)
    })
}

fn partition_count(d: usize, max_part: usize) -> usize {
    if d == 0 {
        return 1;
    }
    (1..=max_part.min(d))
        .map(|k| partition_count(d - k, k))
        .sum()
}

#[test]
fn partition_counts_match_recursive_count() {
    let expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    for d in 1..=10 {
        let all: Vec<Partition> = enumerate_partitions(d).collect();
        assert_eq!(all.len(), partition_count(d, d), "d={d}");
        assert_eq!(all.len(), expected[d - 1], "d={d}");
        for p in &all {
            assert_eq!(p.sum(), d);
            assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
            assert!(p.parts().iter().all(|&x| x >= 1));
            assert!(!p.is_empty() && p.len() <= d);
            assert_eq!(p.is_trivial(), p.len() == p.sum());
        }
        // reverse-lexicographic and free of repeats
        assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
    }
}

#[test]
fn class_enumeration_matches_filtered_symmetric_group() {
    for d in 1..=6 {
        let group = symmetric_group(d);
        let mut by_type: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
        for p in group {
            by_type.entry(cycle_type(&p)).or_default().push(p);
        }
        for part in enumerate_partitions(d) {
            let expected: Vec<Vec<usize>> = by_type[part.parts()]
                .iter()
                .map(|p| p.iter().map(|x| x + 1).collect())
                .collect();
            let got: Vec<Vec<usize>> = Permutation::enumerate_of_type(&part)
                .iter()
                .map(Permutation::images)
                .collect();
            // itertools yields S_d lexicographically, so order must agree too
            assert_eq!(got, expected, "type {part}");
            assert_eq!(got.len() as u128, part.class_size(), "type {part}");
            let canonical = Permutation::canonical_of_type(&part);
            assert_eq!(canonical.cycle_type(), part);
        }
    }
}

#[test]
fn small_class_counts() {
    let count = |parts: &[usize]| {
        Permutation::enumerate_of_type(&Partition::new(parts.to_vec()).unwrap()).len()
    };
    assert_eq!(count(&[2]), 1);
    assert_eq!(count(&[3]), 2);
    assert_eq!(count(&[2, 1, 1]), 6);
}

#[test]
fn search_agrees_with_brute_force_on_small_triplets() {
    let budget = Budget::default();
    let mut realizable = 0;
    let mut not_realizable = 0;
    for d in 2..=4 {
        for n in 1..=4 {
            for t in BranchTriplet::enumerate(d, n) {
                let expected = brute_force_realizable(&t);
                let got = decide(&t, &budget);
                assert_eq!(got.verdict.is_realizable(), expected, "{t}");
                assert_ne!(got.verdict, Verdict::Undecided);
                if let Verdict::Realizable(c) = &got.verdict {
                    assert!(verify(c, &t));
                    assert_eq!(
                        genus_of_certificate(c).ok(),
                        t.compatible_genus().genus(),
                        "{t}"
                    );
                    realizable += 1;
                } else {
                    not_realizable += 1;
                }
            }
        }
    }
    assert!(realizable > 0 && not_realizable > 0);
}

#[test]
fn reductions_do_not_change_verdicts() {
    let budget = Budget::default();
    let variants = [
        SearchOptions {
            fix_first: true,
            prune_connectivity: true,
        },
        SearchOptions {
            fix_first: false,
            prune_connectivity: true,
        },
        SearchOptions {
            fix_first: true,
            prune_connectivity: false,
        },
        SearchOptions {
            fix_first: false,
            prune_connectivity: false,
        },
    ];
    for d in 2..=4 {
        for n in 1..=5 {
            for t in BranchTriplet::enumerate(d, n) {
                if t.compatible_genus().genus().is_none() {
                    continue;
                }
                let verdicts: Vec<bool> = variants
                    .iter()
                    .map(|opts| decide_with(&t, &budget, *opts).verdict.is_realizable())
                    .collect();
                assert!(
                    verdicts.iter().all(|&v| v == verdicts[0]),
                    "{t}: {verdicts:?}"
                );
            }
        }
    }
}

#[test]
fn klein_four_products_are_never_three_cycles() {
    // elements of type [2,2] in S_4, together with the identity, form the
    // Klein four-group, so a product of two of them is never of type [3,1]
    let doubles: Vec<Vec<usize>> = symmetric_group(4)
        .into_iter()
        .filter(|p| cycle_type(p) == [2, 2])
        .collect();
    assert_eq!(doubles.len(), 3);
    for a in &doubles {
        for b in &doubles {
            let ab: Vec<usize> = a.iter().map(|&x| b[x]).collect();
            assert_ne!(cycle_type(&ab), vec![3, 1]);
        }
    }
    let t: BranchTriplet = "4:3:3+1/2+2/2+2".parse().unwrap();
    assert!(!brute_force_realizable(&t));
    assert_eq!(
        decide(&t, &Budget::default()).verdict,
        Verdict::NotRealizable
    );
}

#[test]
fn published_style_certificates_verify() {
    let cert = |d: usize, cycles: &[&str]| {
        hurwitz_core::MonodromyCertificate::new(
            d,
            cycles
                .iter()
                .map(|c| Permutation::parse_cycles(c, d).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let t: BranchTriplet = "3:4:2+1/2+1/2+1/2+1".parse().unwrap();
    assert!(verify(&cert(3, &["(1 2)", "(1 2)", "(1 3)", "(1 3)"]), &t));

    let c = Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap();
    let c_inv_sq = c.compose(&c).unwrap().inverse();
    assert_eq!(c_inv_sq.cycle_type(), Partition::new(vec![5]).unwrap());
    let five = hurwitz_core::MonodromyCertificate::new(5, vec![c.clone(), c, c_inv_sq]).unwrap();
    assert!(verify(&five, &"5:3:5/5/5".parse().unwrap()));

    let t: BranchTriplet = "3:3:3/3/3".parse().unwrap();
    assert!(verify(&cert(3, &["(1 2 3)"; 3]), &t));
}

#[test]
fn decide_is_deterministic() {
    let budget = Budget::default();
    for text in ["5:3:5/5/5", "4:4:2+2/3+1/2+1+1/2+1+1", "6:3:6/4+2/3+2+1"] {
        let t: BranchTriplet = text.parse().unwrap();
        let a = decide(&t, &budget);
        let b = decide(&t, &budget);
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.stats.nodes, b.stats.nodes);
    }
}
