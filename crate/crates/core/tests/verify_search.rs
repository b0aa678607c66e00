//! Verification, exact search and lower bounds against brute force.

use std::collections::BTreeSet;

use indel_cover::{
    covering_radius, deletion_lower_bound_general, deletion_lower_bound_r1_closed, enumerate_words,
    generalized_weighted_bound_exact, greedy_cover, insertion_lower_bound, is_covering, is_covering_via,
    min_cover_exact, uncovered_set, Alphabet, Code, Direction, Error, Route, SearchOutcome, Word,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn space(q: u32, n: usize) -> Vec<Word> {
    enumerate_words(q, n).unwrap().collect()
}

/// Subsequence relation by dynamic programming over prefixes.
fn embeds(short: &Word, long: &Word) -> bool {
    let (s, l) = (short.symbols(), long.symbols());
    let mut best = vec![0usize; l.len() + 1];
    for (j, &c) in l.iter().enumerate() {
        let i = best[j];
        best[j + 1] = if i < s.len() && s[i] == c { i + 1 } else { i };
    }
    best[l.len()] == s.len()
}

fn covers(code: &Code, y: &Word, radius: usize, dir: Direction) -> bool {
    code.iter().any(|c| match dir {
        Direction::Insertion => y.len() == c.len() + radius && embeds(c, y),
        Direction::Deletion => c.len() == y.len() + radius && embeds(y, c),
    })
}

fn oracle_uncovered(code: &Code, radius: usize, dir: Direction) -> Vec<Word> {
    let m = dir.target_len(code.word_len(), radius).unwrap();
    space(code.q() as u32, m)
        .into_iter()
        .filter(|y| !covers(code, y, radius, dir))
        .collect()
}

/// Smallest covering subset, by trying all subsets in order of size.
fn brute_optimum(q: u32, n: usize, radius: usize, dir: Direction) -> usize {
    let words = space(q, n);
    let alphabet = Alphabet::new(q).unwrap();
    for k in 1..=words.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let code = Code::from_words(alphabet, n, idx.iter().map(|&i| words[i].clone())).unwrap();
            if oracle_uncovered(&code, radius, dir).is_empty() {
                return k;
            }
            // next k-combination
            let mut i = k;
            while i > 0 && idx[i - 1] == words.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the full space covers")
}

#[test]
fn small_verification_examples() {
    let code = Code::binary(&["00", "11"]).unwrap();
    assert!(is_covering(&code, 1, Direction::Insertion).unwrap().covered);
    let code = Code::binary(&["11"]).unwrap();
    let rep = is_covering(&code, 1, Direction::Insertion).unwrap();
    assert!(!rep.covered);
    assert_eq!(rep.witness_uncovered.unwrap().to_string(), "000");
    let code = Code::binary(&["000", "111"]).unwrap();
    assert_eq!(covering_radius(&code, Direction::Insertion).unwrap(), 2);
    let code = Code::binary(&["010"]).unwrap();
    assert_eq!(covering_radius(&code, Direction::Deletion).unwrap(), 2);
    let code = Code::binary(&["01"]).unwrap();
    assert_eq!(covering_radius(&code, Direction::Insertion), Err(Error::NoFiniteRadius(Direction::Insertion)));
}

#[test]
fn exact_search_matches_brute_force() {
    for (q, n, radius, dir) in [
        (2, 2, 1, Direction::Insertion),
        (2, 3, 1, Direction::Insertion),
        (2, 3, 2, Direction::Insertion),
        (2, 4, 1, Direction::Insertion),
        (3, 2, 1, Direction::Insertion),
        (2, 3, 1, Direction::Deletion),
        (2, 4, 1, Direction::Deletion),
        (2, 4, 2, Direction::Deletion),
        (3, 2, 1, Direction::Deletion),
        (3, 3, 1, Direction::Deletion),
    ] {
        let expect = brute_optimum(q, n, radius, dir);
        let SearchOutcome::Optimal(cert) = min_cover_exact(q, n, radius, dir, 1_000_000).unwrap() else {
            panic!("({q},{n},{radius},{dir}) not solved");
        };
        assert_eq!(cert.k, expect, "({q},{n},{radius},{dir})");
        assert!(oracle_uncovered(&cert.optimal_code, radius, dir).is_empty());
        assert!(cert.lower_bound_used.ceiling <= BigInt::from(expect));
    }
}

#[test]
fn greedy_is_valid_and_not_below_optimum() {
    for dir in [Direction::Insertion, Direction::Deletion] {
        for n in 2..=5usize {
            let g = greedy_cover(2, n, 1, dir).unwrap();
            assert!(oracle_uncovered(&g, 1, dir).is_empty());
            if let SearchOutcome::Optimal(c) = min_cover_exact(2, n, 1, dir, 1_000_000).unwrap() {
                assert!(c.k <= g.len());
            }
        }
    }
}

/// Weighted bound recomputed from explicit balls.
fn weighted_oracle(q: u32, n: usize, radius: usize) -> BigRational {
    let centers = space(q, n);
    let ball_size = |x: &Word| {
        let m = n - radius;
        space(q, m).into_iter().filter(|y| embeds(y, x)).count()
    };
    let sizes: Vec<usize> = centers.iter().map(ball_size).collect();
    space(q, n - radius)
        .into_iter()
        .map(|y| {
            let max = centers
                .iter()
                .zip(&sizes)
                .filter(|(x, _)| embeds(&y, x))
                .map(|(_, &s)| s)
                .max()
                .unwrap();
            BigRational::new(1.into(), BigInt::from(max))
        })
        .sum()
}

#[test]
fn weighted_bound_matches_explicit_balls() {
    for (q, n, radius) in [(2, 4, 1), (2, 5, 1), (2, 6, 2), (3, 4, 1), (3, 4, 2), (2, 7, 3)] {
        let got = generalized_weighted_bound_exact(q, n, radius, Direction::Deletion).unwrap();
        assert_eq!(got.value, weighted_oracle(q, n, radius), "({q},{n},{radius})");
    }
}

#[test]
fn bound_examples() {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    assert_eq!(insertion_lower_bound(2, 2, 1).unwrap().value, r(2, 1));
    assert_eq!(insertion_lower_bound(2, 4, 1).unwrap().value, r(16, 3));
    assert_eq!(deletion_lower_bound_general(2, 4, 1).unwrap().value, r(31, 15));
    assert_eq!(deletion_lower_bound_r1_closed(2, 4).unwrap().value, r(8, 5));
    let w = generalized_weighted_bound_exact(2, 2, 1, Direction::Insertion).unwrap();
    assert_eq!(w.value, r(2, 1));
}

fn code_strategy() -> impl Strategy<Value = (u32, usize, Vec<u64>)> {
    (2u32..=3, 1usize..=5).prop_flat_map(|(q, n)| {
        let size = (q as u64).pow(n as u32);
        (Just(q), Just(n), prop::collection::vec(0..size, 0..12))
    })
}

fn build(q: u32, n: usize, ranks: &[u64]) -> Code {
    let sp = space(q, n);
    Code::from_words(Alphabet::new(q).unwrap(), n, ranks.iter().map(|&r| sp[r as usize].clone())).unwrap()
}

proptest! {
    #[test]
    fn routes_agree_with_oracle((q, n, ranks) in code_strategy(), radius in 1usize..=2, del in any::<bool>()) {
        let dir = if del { Direction::Deletion } else { Direction::Insertion };
        prop_assume!(!del || radius <= n);
        let code = build(q, n, &ranks);
        let expect = oracle_uncovered(&code, radius, dir);
        let a = is_covering_via(&code, radius, dir, Route::MarkFromCodewords).unwrap();
        let b = is_covering_via(&code, radius, dir, Route::TestTargets).unwrap();
        prop_assert_eq!(a.covered, expect.is_empty());
        prop_assert_eq!(&a.witness_uncovered, &b.witness_uncovered);
        prop_assert_eq!(a.witness_uncovered.as_ref(), expect.first());
        prop_assert_eq!(uncovered_set(&code, radius, dir).unwrap(), expect);
    }

    #[test]
    fn covering_is_monotone_in_code((q, n, ranks) in code_strategy(), extra in any::<u64>()) {
        let code = build(q, n, &ranks);
        let mut bigger = code.clone();
        let sp = space(q, n);
        bigger.insert(sp[(extra % sp.len() as u64) as usize].clone()).unwrap();
        let small: BTreeSet<Word> = uncovered_set(&code, 1, Direction::Insertion).unwrap().into_iter().collect();
        let large: BTreeSet<Word> = uncovered_set(&bigger, 1, Direction::Insertion).unwrap().into_iter().collect();
        prop_assert!(large.is_subset(&small));
    }
}
