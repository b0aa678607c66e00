use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balls::{deletion_ball_ranks, insertion_ball_size, Direction};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::par;
use crate::space::WordSpace;
use crate::verify::uncovered_set;
use crate::word::{run_count, Alphabet};

/// Deterministic stream of sub-seeds derived from one root seed.
#[derive(Debug, Clone)]
pub struct SeedStream {
    rng: ChaCha8Rng,
}

impl SeedStream {
    pub fn new(root: u64) -> Self {
        SeedStream {
            rng: ChaCha8Rng::seed_from_u64(root),
        }
    }

    pub fn next_seed(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// A fresh generator seeded from the next sub-seed.
    pub fn next_rng(&mut self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.next_seed())
    }
}

/// A set `S` together with the exact set `T` of target words it leaves
/// uncovered at the given radius.
///
/// For insertions `S ⊆ Σ^m` and `T ⊆ Σ^{m+R}`; for deletions `T ⊆ Σ^{m-R}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostCover {
    s: Code,
    t: Code,
    radius: usize,
    direction: Direction,
}

impl AlmostCover {
    /// Computes the residual set of `s` by full verification.
    pub fn new(s: Code, radius: usize, direction: Direction) -> Result<Self> {
        let m = direction
            .target_len(s.word_len(), radius)
            .ok_or(Error::RadiusTooLarge {
                radius,
                len: s.word_len(),
            })?;
        let t = Code::from_words(s.alphabet(), m, uncovered_set(&s, radius, direction)?)?;
        Ok(AlmostCover {
            s,
            t,
            radius,
            direction,
        })
    }

    pub fn s(&self) -> &Code {
        &self.s
    }

    pub fn t(&self) -> &Code {
        &self.t
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn into_parts(self) -> (Code, Code) {
        (self.s, self.t)
    }
}

fn check_intensity(c: &BigRational) -> Result<()> {
    if c <= &BigRational::zero() {
        return Err(Error::InvalidParameter("sampling intensity c must be positive".into()));
    }
    Ok(())
}

fn to_u64(v: &BigUint, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidParameter(format!("{what} does not fit in 64 bits")))
}

/// Includes each `x ∈ Σ_q^{n1}` independently with probability
/// `min(1, c/ρ(x))`; the residue is taken in `Σ_q^{n1+1}`.
pub fn sample_almost_cover_single_insertion<R: Rng + ?Sized>(
    q: u32,
    n1: usize,
    c: &BigRational,
    rng: &mut R,
) -> Result<AlmostCover> {
    check_intensity(c)?;
    let space = WordSpace::new(Alphabet::new(q)?, n1)?;
    let num = to_u64(&c.numer().to_biguint().expect("positive"), "intensity")?;
    let den = to_u64(&c.denom().to_biguint().expect("positive"), "intensity")?;
    let mut chosen = Vec::new();
    for (rank, w) in space.iter().enumerate() {
        let rho = run_count(w.symbols()).max(1) as u128;
        // P = num / (den·ρ), decided by one uniform integer draw
        let scale = den as u128 * rho;
        if num as u128 >= scale || (rng.random_range(0..scale) < num as u128) {
            chosen.push(rank as u64);
        }
    }
    AlmostCover::new(Code::from_ranks(&space, chosen), 1, Direction::Insertion)
}

/// Strata of `Σ_q^m` by exact deletion-ball size `V_D(x, R)`, ranks sorted.
pub(crate) fn deletion_strata(space: &WordSpace, radius: usize) -> BTreeMap<u64, Vec<u64>> {
    let q = space.q();
    let n = space.word_len();
    let parts = par::map_chunks(space.size(), |range| {
        let mut buf = vec![0u8; n];
        range
            .map(|r| {
                crate::word::unrank_into(r, q, &mut buf);
                (deletion_ball_ranks(&buf, q, radius).len() as u64, r)
            })
            .collect::<Vec<_>>()
    });
    let mut strata: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (size, rank) in parts.into_iter().flatten() {
        strata.entry(size).or_default().push(rank);
    }
    strata
}

/// Stratified sample of `Σ_q^{n-R}`: from the words with deletion-ball size
/// `i` a uniform subset of size `min(m_i, ⌈c·m_i/i⌉)` is taken, each
/// stratum with its own sub-seed. The residue lives in `Σ_q^n`.
pub fn sample_almost_cover_insertion_r<R: Rng + ?Sized>(
    q: u32,
    n: usize,
    radius: usize,
    c: &BigRational,
    rng: &mut R,
) -> Result<AlmostCover> {
    check_intensity(c)?;
    let m = n.checked_sub(radius).ok_or(Error::RadiusTooLarge { radius, len: n })?;
    let space = WordSpace::new(Alphabet::new(q)?, m)?;
    let mut chosen = Vec::new();
    for (i, members) in deletion_strata(&space, radius) {
        let mut sub = ChaCha8Rng::seed_from_u64(rng.next_u64());
        let mi = members.len() as u64;
        let want = (c * BigRational::from_integer(mi.into()) / BigRational::from_integer(i.into())).ceil();
        let k = want.to_integer().to_u64().map_or(mi, |k| k.min(mi));
        chosen.extend(index::sample(&mut sub, mi as usize, k as usize).into_iter().map(|j| members[j]));
    }
    AlmostCover::new(Code::from_ranks(&space, chosen), radius, Direction::Insertion)
}

/// Uniform subset of `Σ_q^{n+R}` of size `⌊c·q^{n+R}/V_I(n,R)⌋` (capped at
/// the space size), covering `Σ_q^n` up to the residue by `R` deletions.
pub fn sample_almost_cover_deletion_r<R: Rng + ?Sized>(
    q: u32,
    n: usize,
    radius: usize,
    c: &BigRational,
    rng: &mut R,
) -> Result<AlmostCover> {
    check_intensity(c)?;
    let space = WordSpace::new(Alphabet::new(q)?, n + radius)?;
    let total = space.size();
    let target = c * BigRational::from_integer(total.into())
        / BigRational::from_integer(insertion_ball_size(q, n, radius).into());
    let k = target.floor().to_integer().to_u64().map_or(total, |k| k.min(total));
    let chosen = index::sample(rng, total as usize, k as usize)
        .into_iter()
        .map(|j| j as u64);
    AlmostCover::new(Code::from_ranks(&space, chosen), radius, Direction::Deletion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn tiny_single_insertion_takes_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ac = sample_almost_cover_single_insertion(2, 1, &rat(1), &mut rng).unwrap();
        assert_eq!(ac.s().len(), 2);
        assert!(ac.t().is_empty());
        assert_eq!(ac.t().word_len(), 2);
    }

    #[test]
    fn huge_intensity_leaves_no_residue() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ac = sample_almost_cover_insertion_r(2, 6, 2, &rat(1000), &mut rng).unwrap();
        assert_eq!(ac.s().len(), 16);
        assert!(ac.t().is_empty());
        let ac = sample_almost_cover_deletion_r(2, 4, 1, &rat(1000), &mut rng).unwrap();
        assert_eq!(ac.s().len(), 32);
        assert!(ac.t().is_empty());
    }

    #[test]
    fn deletion_sample_has_exact_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ac = sample_almost_cover_deletion_r(2, 6, 1, &rat(3), &mut rng).unwrap();
        // ⌊3·128/8⌋
        assert_eq!(ac.s().len(), 48);
        assert_eq!(ac.s().word_len(), 7);
        assert_eq!(ac.t().word_len(), 6);
    }

    #[test]
    fn strata_partition_the_space() {
        let space = WordSpace::new(Alphabet::BINARY, 6).unwrap();
        let strata = deletion_strata(&space, 2);
        let total: usize = strata.values().map(Vec::len).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn seeds_reproduce() {
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample_almost_cover_single_insertion(2, 6, &rat(3), &mut rng).unwrap()
        };
        assert_eq!(run(9), run(9));
        let mut a = SeedStream::new(5);
        let mut b = SeedStream::new(5);
        assert_eq!(a.next_seed(), b.next_seed());
    }
}
