use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::balls::{insertion_ball_size, Direction};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::verify::ensure_covering;
use crate::word::Alphabet;

use super::sampling::{
    sample_almost_cover_deletion_r, sample_almost_cover_insertion_r, sample_almost_cover_single_insertion, AlmostCover,
    SeedStream,
};
use super::greedy::greedy_cover;
use super::tensor::glue;
use super::vt::nbvt_code;

/// Knobs shared by the randomized builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuilderParams {
    /// Sampling intensity.
    pub c: BigRational,
    /// Fraction of the length given to the sampled prefix (radius 1).
    pub beta: BigRational,
    /// Target density against `q^{n+1}/V_I(n,1)` (radius 1).
    pub mu_target: BigRational,
    pub max_retries: u32,
    pub seed: u64,
}

impl Default for BuilderParams {
    fn default() -> Self {
        BuilderParams {
            c: BigRational::from_integer(3.into()),
            beta: BigRational::new(3.into(), 4.into()),
            mu_target: BigRational::from_integer(7.into()),
            max_retries: 64,
            seed: 0,
        }
    }
}

impl BuilderParams {
    pub fn with_seed(seed: u64) -> Self {
        BuilderParams {
            seed,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if self.c <= zero {
            return Err(Error::InvalidParameter("c must be positive".into()));
        }
        if self.beta <= zero || self.beta >= one {
            return Err(Error::InvalidParameter("beta must lie strictly between 0 and 1".into()));
        }
        if self.mu_target <= one {
            return Err(Error::InvalidParameter("mu_target must exceed 1".into()));
        }
        if self.max_retries == 0 {
            return Err(Error::InvalidParameter("max_retries must be at least 1".into()));
        }
        Ok(())
    }

    fn child(&self, seed: u64) -> Self {
        BuilderParams { seed, ..self.clone() }
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn uint(v: BigUint) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Randomized recursive single-insertion cover of size at most
/// `mu_target·q^{n+1}/V_I(n,1)`.
///
/// Short lengths (`n(q-1) ≤ q·μ - q`) take the whole space. Otherwise the
/// first `⌊βn⌋` symbols come from a sampled almost-cover and its residue is
/// patched with a recursively built code of length `n - ⌊βn⌋ - 1`. Samples
/// are redrawn until the composed code meets the size target.
pub fn build_single_insertion_cover(q: u32, n: usize, params: &BuilderParams) -> Result<Code> {
    params.validate()?;
    let alphabet = Alphabet::new(q)?;
    let code = single_insertion(alphabet, n, params)?;
    ensure_covering(&code, 1, Direction::Insertion)?;
    Ok(code)
}

fn single_insertion(alphabet: Alphabet, n: usize, params: &BuilderParams) -> Result<Code> {
    let q = alphabet.size() as u32;
    let mu = &params.mu_target;
    if int(n as u64 * (q as u64 - 1)) <= mu * int(q) - int(q) {
        return Code::full_space(alphabet, n);
    }
    let n1 = (&params.beta * int(n as u64)).floor().to_integer().to_usize().expect("n1 < n");
    let n2 = n - n1 - 1;
    let mut seeds = SeedStream::new(params.seed);
    let c2 = single_insertion(alphabet, n2, &params.child(seeds.next_seed()))?;
    let limit = mu * uint(BigUint::from(q).pow(n as u32 + 1)) / uint(insertion_ball_size(q, n, 1));
    let tail = Code::full_space(alphabet, n2 + 1)?;
    for _ in 0..params.max_retries {
        let mut rng = seeds.next_rng();
        let ac = sample_almost_cover_single_insertion(q, n1, &params.c, &mut rng)?;
        let code = glue(&ac, &tail, &c2)?;
        if int(code.len() as u64) <= limit {
            return Ok(code);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: params.max_retries,
        n,
    })
}

/// Split of the radius-`R` builders: `n2 = ⌊n/R⌋`, `n1 = n - n2`; `None`
/// means the whole space is used instead.
fn split_r(n: usize, radius: usize, direction: Direction) -> Option<(usize, usize)> {
    if n <= radius + 4 {
        return None;
    }
    let n2 = n / radius;
    // the deletion branch needs a radius-1 code of length n2 - (R-1) >= 1
    if direction == Direction::Deletion && n2 < radius {
        return None;
    }
    Some((n - n2, n2))
}

/// Largest residue accepted: the expected size bound, rounded up.
fn residue_allowance(c: &BigRational, space: f64, correction: f64) -> usize {
    let c = c.to_f64().unwrap_or(f64::INFINITY);
    ((-c).exp() * correction * space).ceil() as usize
}

/// Randomized recursive `R`-insertion cover: a sampled `(R-1)`-radius
/// almost-cover on the first `n - ⌊n/R⌋` symbols, a single-insertion cover
/// for the tail and a recursively built radius-`R` code for the residue.
pub fn build_insertion_cover_r(q: u32, n: usize, radius: usize, params: &BuilderParams) -> Result<Code> {
    params.validate()?;
    let alphabet = Alphabet::new(q)?;
    if radius == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    if radius == 1 {
        return build_single_insertion_cover(q, n, params);
    }
    let code = insertion_r(alphabet, n, radius, params)?;
    ensure_covering(&code, radius, Direction::Insertion)?;
    Ok(code)
}

fn insertion_r(alphabet: Alphabet, n: usize, radius: usize, params: &BuilderParams) -> Result<Code> {
    let Some((n1, n2)) = split_r(n, radius, Direction::Insertion) else {
        return Code::full_space(alphabet, n);
    };
    let q = alphabet.size() as u32;
    let r1 = radius - 1;
    let mut seeds = SeedStream::new(params.seed);
    let c1 = tail_insertion_code(alphabet, n2 + r1, &params.child(seeds.next_seed()))?;
    let c2 = insertion_r(alphabet, n2, radius, &params.child(seeds.next_seed()))?;
    let allowance = residue_allowance(&params.c, (q as f64).powi(n1 as i32), 1.0);
    sample_until(params, &mut seeds, allowance, n, |rng| {
        sample_almost_cover_insertion_r(q, n1, r1, &params.c, rng)
    })
    .and_then(|ac| glue(&ac, &c1, &c2))
}

/// Largest candidate space for which the tail code is also tried greedily.
const GREEDY_TAIL_LIMIT: u64 = 1 << 14;

/// Single-insertion code for the tail of the radius-`R` construction: the
/// recursive builder, or the greedy cover when that is smaller.
fn tail_insertion_code(alphabet: Alphabet, n: usize, params: &BuilderParams) -> Result<Code> {
    let built = single_insertion(alphabet, n, params)?;
    let q = alphabet.size() as u32;
    let small = (q as u64).checked_pow(n as u32 + 1).is_some_and(|s| s <= GREEDY_TAIL_LIMIT);
    if small {
        let greedy = greedy_cover(q, n, 1, Direction::Insertion)?;
        if greedy.len() < built.len() {
            return Ok(greedy);
        }
    }
    Ok(built)
}

/// Randomized recursive `R`-deletion cover: a uniform `(R-1)`-radius
/// almost-cover, the smallest non-binary VT class for the tail and a
/// recursively built radius-`R` code for the residue.
pub fn build_deletion_cover_r(q: u32, n: usize, radius: usize, params: &BuilderParams) -> Result<Code> {
    params.validate()?;
    let alphabet = Alphabet::new(q)?;
    if radius == 0 || radius > n {
        return Err(Error::RadiusTooLarge { radius, len: n });
    }
    let code = if radius == 1 {
        smallest_nbvt(q, n)?
    } else {
        deletion_r(alphabet, n, radius, params)?
    };
    ensure_covering(&code, radius, Direction::Deletion)?;
    Ok(code)
}

fn smallest_nbvt(q: u32, n: usize) -> Result<Code> {
    let mut best: Option<Code> = None;
    for a in 0..=n as u64 {
        for b in 0..(q / 2) as u64 {
            let code = nbvt_code(q, n, a, b)?;
            if best.as_ref().is_none_or(|c| code.len() < c.len()) {
                best = Some(code);
            }
        }
    }
    Ok(best.expect("at least one residue class"))
}

fn deletion_r(alphabet: Alphabet, n: usize, radius: usize, params: &BuilderParams) -> Result<Code> {
    let Some((n1, n2)) = split_r(n, radius, Direction::Deletion) else {
        return Code::full_space(alphabet, n);
    };
    let q = alphabet.size() as u32;
    let r1 = radius - 1;
    let mut seeds = SeedStream::new(params.seed);
    let c1 = smallest_nbvt(q, n2 - r1)?;
    let c2 = deletion_r(alphabet, n2, radius, &params.child(seeds.next_seed()))?;
    let ball = insertion_ball_size(q, n1, r1).to_f64().unwrap_or(f64::INFINITY);
    let outer = (q as f64).powi((n1 + r1) as i32);
    let allowance = residue_allowance(&params.c, (q as f64).powi(n1 as i32), (ball / outer).exp());
    sample_until(params, &mut seeds, allowance, n, |rng| {
        sample_almost_cover_deletion_r(q, n1, r1, &params.c, rng)
    })
    .and_then(|ac| glue(&ac, &c1, &c2))
}

fn sample_until<F>(params: &BuilderParams, seeds: &mut SeedStream, allowance: usize, n: usize, mut draw: F) -> Result<AlmostCover>
where
    F: FnMut(&mut rand_chacha::ChaCha8Rng) -> Result<AlmostCover>,
{
    for _ in 0..params.max_retries {
        let ac = draw(&mut seeds.next_rng())?;
        if ac.t().len() <= allowance {
            return Ok(ac);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: params.max_retries,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_is_whole_space() {
        let p = BuilderParams::default();
        for n in 0..=12 {
            let code = build_single_insertion_cover(2, n, &p).unwrap();
            assert_eq!(code.len(), 1 << n);
        }
        let code = build_insertion_cover_r(2, 6, 2, &p).unwrap();
        assert_eq!(code.len(), 64);
    }

    #[test]
    fn n13_meets_size_target() {
        let code = build_single_insertion_cover(2, 13, &BuilderParams::with_seed(11)).unwrap();
        assert!(code.len() * 15 <= 7 * (1 << 14));
    }

    #[test]
    fn ternary_recursion_fires() {
        let code = build_single_insertion_cover(3, 10, &BuilderParams::with_seed(4)).unwrap();
        let limit = 7.0 * 3f64.powi(11) / (11.0 * 2.0 + 1.0);
        assert!((code.len() as f64) <= limit);
        assert!(code.len() < 3usize.pow(10));
    }

    #[test]
    fn radius_two_builders_verify() {
        let p = BuilderParams::with_seed(5);
        let ins = build_insertion_cover_r(2, 8, 2, &p).unwrap();
        assert_eq!(ins.word_len(), 8);
        let del = build_deletion_cover_r(2, 8, 2, &p).unwrap();
        assert_eq!(del.word_len(), 8);
    }

    #[test]
    fn deterministic_in_seed() {
        let p = BuilderParams::with_seed(21);
        assert_eq!(
            build_single_insertion_cover(2, 14, &p).unwrap(),
            build_single_insertion_cover(2, 14, &p).unwrap()
        );
        assert_eq!(
            build_deletion_cover_r(2, 9, 2, &p).unwrap(),
            build_deletion_cover_r(2, 9, 2, &p).unwrap()
        );
    }

    #[test]
    fn bad_params_rejected() {
        let p = BuilderParams {
            beta: BigRational::from_integer(1.into()),
            ..Default::default()
        };
        assert!(build_single_insertion_cover(2, 13, &p).is_err());
    }
}
