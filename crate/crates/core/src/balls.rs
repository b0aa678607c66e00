//! Insertion and deletion balls: exact enumeration and sizes.
//!
//! Insertion balls are generated through the leftmost embedding of the
//! center: every supersequence `y` of `x` factors uniquely as
//! `u_0 x_1 u_1 x_2 ... x_n u_n` where `u_{i-1}` avoids `x_i` and the tail
//! `u_n` is arbitrary. Enumerating these factorizations emits each element
//! of the ball exactly once, with no deduplication pass.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::limits;
use crate::math::{binomial, pow};
use crate::word::{rank_of, run_count, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Insertion,
    Deletion,
}

impl Direction {
    /// Length of the words covered at radius `r` by codewords of length `n`.
    pub fn target_len(self, n: usize, r: usize) -> Option<usize> {
        match self {
            Direction::Insertion => Some(n + r),
            Direction::Deletion => n.checked_sub(r),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Insertion => "insertion",
            Direction::Deletion => "deletion",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A ball of radius `radius` around `center` in one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSpec {
    center: Word,
    radius: usize,
    direction: Direction,
}

impl BallSpec {
    pub fn new(center: Word, radius: usize, direction: Direction) -> Result<Self> {
        if direction == Direction::Deletion && radius > center.len() {
            return Err(Error::RadiusTooLarge {
                radius,
                len: center.len(),
            });
        }
        Ok(BallSpec {
            center,
            radius,
            direction,
        })
    }

    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn size(&self) -> Result<BigUint> {
        match self.direction {
            Direction::Insertion => Ok(insertion_ball_size(
                self.center.q() as u32,
                self.center.len(),
                self.radius,
            )),
            Direction::Deletion => deletion_ball_size(&self.center, self.radius).map(BigUint::from),
        }
    }

    pub fn elements(&self) -> Result<BTreeSet<Word>> {
        match self.direction {
            Direction::Insertion => insertion_ball(&self.center, self.radius),
            Direction::Deletion => deletion_ball(&self.center, self.radius),
        }
    }
}

/// `V_I^q(n, t) = Σ_{i=0}^{t} C(n+t, i) (q-1)^i`, the same for every center.
pub fn insertion_ball_size(q: u32, n: usize, t: usize) -> BigUint {
    let (q, n, t) = (q as u64, n as u64, t as u64);
    (0..=t)
        .map(|i| binomial(n + t, i) * pow(q - 1, i))
        .sum()
}

pub(crate) fn insertion_ball_size_u64(q: u8, n: usize, t: usize) -> u64 {
    insertion_ball_size(q as u32, n, t)
        .to_u64()
        .unwrap_or(u64::MAX)
}

/// All words of length `|x| + t` containing `x` as a subsequence.
pub fn insertion_ball(x: &Word, t: usize) -> Result<BTreeSet<Word>> {
    let size = insertion_ball_size(x.q() as u32, x.len(), t);
    check_ball_budget(&size)?;
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(x.len() + t);
    insertion_words_rec(x.symbols(), x.q(), t, &mut buf, &mut |y| {
        out.insert(Word::from_raw(x.alphabet(), y.to_vec()));
    });
    Ok(out)
}

fn check_ball_budget(size: &BigUint) -> Result<()> {
    let cap = limits::ball_budget();
    if *size > BigUint::from(cap) {
        return Err(Error::BudgetExceeded {
            requested: size.to_u128().unwrap_or(u128::MAX),
            cap,
        });
    }
    Ok(())
}

fn insertion_words_rec(x: &[u8], q: u8, rem: usize, buf: &mut Vec<u8>, emit: &mut dyn FnMut(&[u8])) {
    match x.split_first() {
        None => fill_tail(q, rem, buf, emit),
        Some((&head, rest)) => {
            buf.push(head);
            insertion_words_rec(rest, q, rem, buf, emit);
            buf.pop();
            if rem > 0 {
                for s in (0..q).filter(|&s| s != head) {
                    buf.push(s);
                    insertion_words_rec(x, q, rem - 1, buf, emit);
                    buf.pop();
                }
            }
        }
    }
}

fn fill_tail(q: u8, rem: usize, buf: &mut Vec<u8>, emit: &mut dyn FnMut(&[u8])) {
    if rem == 0 {
        emit(buf);
        return;
    }
    for s in 0..q {
        buf.push(s);
        fill_tail(q, rem - 1, buf, emit);
        buf.pop();
    }
}

/// Calls `visit` with the rank (in `Σ_q^{|x|+t}`) of every element of the
/// insertion ball. Stops early and returns `false` once `visit` does.
pub(crate) fn for_each_insertion_rank(
    x: &[u8],
    q: u8,
    t: usize,
    visit: &mut dyn FnMut(u64) -> bool,
) -> bool {
    insertion_ranks_rec(x, q as u64, t, 0, visit)
}

fn insertion_ranks_rec(x: &[u8], q: u64, rem: usize, acc: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
    match x.split_first() {
        None => {
            let tail = q.pow(rem as u32);
            let base = acc * tail;
            (0..tail).all(|k| visit(base + k))
        }
        Some((&head, rest)) => {
            if !insertion_ranks_rec(rest, q, rem, acc * q + head as u64, visit) {
                return false;
            }
            if rem > 0 {
                for s in (0..q).filter(|&s| s != head as u64) {
                    if !insertion_ranks_rec(x, q, rem - 1, acc * q + s, visit) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// All distinct length-`|x| - t` subsequences of `x`.
pub fn deletion_ball(x: &Word, t: usize) -> Result<BTreeSet<Word>> {
    if t > x.len() {
        return Err(Error::RadiusTooLarge {
            radius: t,
            len: x.len(),
        });
    }
    Ok(deletion_level_sets(x.symbols(), t)
        .into_iter()
        .map(|s| Word::from_raw(x.alphabet(), s))
        .collect())
}

/// Radius-by-radius expansion with a dedup after each level. Deleting any
/// symbol of a run gives the same word, so one deletion per run suffices.
pub(crate) fn deletion_level_sets(x: &[u8], t: usize) -> Vec<Vec<u8>> {
    let mut level = vec![x.to_vec()];
    for _ in 0..t {
        let mut next = Vec::with_capacity(level.len() * 4);
        for w in &level {
            push_single_deletions(w, &mut next);
        }
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    level
}

/// Appends the `ρ(w)` distinct single-deletion results of `w`.
fn push_single_deletions(w: &[u8], out: &mut Vec<Vec<u8>>) {
    let mut i = 0;
    while i < w.len() {
        let mut y = Vec::with_capacity(w.len() - 1);
        y.extend_from_slice(&w[..i]);
        y.extend_from_slice(&w[i + 1..]);
        out.push(y);
        let s = w[i];
        while i < w.len() && w[i] == s {
            i += 1;
        }
    }
}

/// Ranks (in `Σ_q^{|x|-t}`) of the deletion ball, sorted and distinct.
pub(crate) fn deletion_ball_ranks(x: &[u8], q: u8, t: usize) -> Vec<u64> {
    if t == 1 {
        // single deletions from distinct runs are already distinct
        let mut out = Vec::with_capacity(run_count(x));
        let mut buf = Vec::with_capacity(x.len());
        let mut i = 0;
        while i < x.len() {
            buf.clear();
            buf.extend_from_slice(&x[..i]);
            buf.extend_from_slice(&x[i + 1..]);
            out.push(rank_of(&buf, q));
            let s = x[i];
            while i < x.len() && x[i] == s {
                i += 1;
            }
        }
        return out;
    }
    deletion_level_sets(x, t)
        .iter()
        .map(|w| rank_of(w, q))
        .collect()
}

/// `|Ball_D(x, t)|`; `t = 1` is answered by the run count directly.
pub fn deletion_ball_size(x: &Word, t: usize) -> Result<u64> {
    if t > x.len() {
        return Err(Error::RadiusTooLarge {
            radius: t,
            len: x.len(),
        });
    }
    Ok(match t {
        0 => 1,
        1 => run_count(x.symbols()) as u64,
        _ if t == x.len() => 1,
        _ => deletion_level_sets(x.symbols(), t).len() as u64,
    })
}

/// `C(ρ(x) + t - 1, t)`, an upper bound on `|Ball_D(x, t)|`.
pub fn deletion_ball_size_upper(x: &Word, t: usize) -> Result<BigUint> {
    check_positive_radius(x, t)?;
    let rho = run_count(x.symbols()) as u64;
    Ok(binomial(rho + t as u64 - 1, t as u64))
}

/// `max(1, C(ρ(x) - t, t))`, a lower bound on `|Ball_D(x, t)|`.
pub fn deletion_ball_size_lower(x: &Word, t: usize) -> Result<BigUint> {
    check_positive_radius(x, t)?;
    let rho = run_count(x.symbols()) as u64;
    let t = t as u64;
    let b = if rho >= t { binomial(rho - t, t) } else { BigUint::one() };
    Ok(b.max(BigUint::one()))
}

fn check_positive_radius(x: &Word, t: usize) -> Result<()> {
    if t == 0 || t > x.len() {
        return Err(Error::InvalidParameter(format!(
            "radius {t} outside 1..={}",
            x.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn strings(set: &BTreeSet<Word>) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn insertion_ball_examples() {
        assert_eq!(strings(&insertion_ball(&w("01"), 1).unwrap()), ["001", "010", "011", "101"]);
        assert_eq!(strings(&insertion_ball(&w("0"), 1).unwrap()), ["00", "01", "10"]);
        assert_eq!(strings(&insertion_ball(&w("0110"), 0).unwrap()), ["0110"]);
    }

    #[test]
    fn insertion_ball_size_examples() {
        assert_eq!(insertion_ball_size(2, 2, 1), BigUint::from(4u32));
        assert_eq!(insertion_ball_size(2, 3, 1), BigUint::from(5u32));
        assert_eq!(insertion_ball_size(3, 4, 2), BigUint::from(73u32));
    }

    #[test]
    fn deletion_ball_examples() {
        assert_eq!(strings(&deletion_ball(&w("0101"), 1).unwrap()), ["001", "010", "011", "101"]);
        assert_eq!(strings(&deletion_ball(&w("0110"), 0).unwrap()), ["0110"]);
        assert_eq!(strings(&deletion_ball(&w("000"), 2).unwrap()), ["0"]);
        assert!(deletion_ball(&w("01"), 3).is_err());
    }

    #[test]
    fn deletion_ball_size_examples() {
        assert_eq!(deletion_ball_size(&w("0101"), 1), Ok(4));
        // {00, 01, 11}: deleting two of 0011
        assert_eq!(deletion_ball_size(&w("0011"), 2), Ok(3));
        assert_eq!(deletion_ball_size(&w("0110"), 4), Ok(1));
        assert!(deletion_ball_size(&w("0110"), 5).is_err());
    }

    #[test]
    fn deletion_ball_upper_examples() {
        assert_eq!(deletion_ball_size_upper(&w("0101"), 1).unwrap(), BigUint::from(4u32));
        assert_eq!(deletion_ball_size_upper(&w("000"), 1).unwrap(), BigUint::from(1u32));
        assert_eq!(deletion_ball_size_upper(&w("0101"), 2).unwrap(), BigUint::from(10u32));
        assert!(deletion_ball_size(&w("0101"), 2).unwrap() <= 10);
        assert!(deletion_ball_size_upper(&w("0101"), 0).is_err());
    }

    #[test]
    fn rank_enumeration_matches_word_enumeration() {
        let q3 = Alphabet::new(3).unwrap();
        let x = Word::parse("201", q3).unwrap();
        let mut ranks = Vec::new();
        for_each_insertion_rank(x.symbols(), 3, 2, &mut |r| {
            ranks.push(r);
            true
        });
        ranks.sort_unstable();
        let expected: Vec<u64> = insertion_ball(&x, 2)
            .unwrap()
            .iter()
            .map(|y| y.rank().unwrap())
            .collect();
        assert_eq!(ranks, expected);

        let y = Word::parse("21100", q3).unwrap();
        let dr = deletion_ball_ranks(y.symbols(), 3, 1);
        let mut sorted = dr.clone();
        sorted.sort_unstable();
        let expected: Vec<u64> = deletion_ball(&y, 1)
            .unwrap()
            .iter()
            .map(|z| z.rank().unwrap())
            .collect();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn ball_spec_validates_deletion_radius() {
        assert!(BallSpec::new(w("0101"), 9, Direction::Deletion).is_err());
        let b = BallSpec::new(w("0101"), 1, Direction::Deletion).unwrap();
        assert_eq!(b.size().unwrap(), BigUint::from(4u32));
        assert_eq!(b.elements().unwrap().len(), 4);
    }
}
