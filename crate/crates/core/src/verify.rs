//! Exact covering verification: verdicts, covering radius and the uncovered
//! residue of a code.

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::balls::{deletion_ball_ranks, for_each_insertion_rank, insertion_ball_size_u64, Direction};
use crate::bitmap::Bitmap;
use crate::bounds;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::math::binomial_u64;
use crate::par;
use crate::space::WordSpace;
use crate::word::{unrank_into, Word};

/// How coverage is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Enumerate each codeword's ball and mark the target bitmap.
    MarkFromCodewords,
    /// For each target word, enumerate the dual ball and look for a codeword.
    TestTargets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub covered: bool,
    /// Lexicographically smallest uncovered word when `covered` is false.
    pub witness_uncovered: Option<Word>,
    pub checked_space_size: u64,
    pub radius: usize,
    pub direction: Direction,
    pub code_size: usize,
    /// `None` for the empty code.
    pub density: Option<BigRational>,
}

struct Setup<'a> {
    code: &'a Code,
    radius: usize,
    direction: Direction,
    target: WordSpace,
}

impl<'a> Setup<'a> {
    fn new(code: &'a Code, radius: usize, direction: Direction) -> Result<Self> {
        let n = code.word_len();
        let target_len = direction
            .target_len(n, radius)
            .ok_or(Error::RadiusTooLarge { radius, len: n })?;
        let target = WordSpace::new(code.alphabet(), target_len)?;
        Ok(Setup {
            code,
            radius,
            direction,
            target,
        })
    }

    fn cheaper_route(&self) -> Route {
        let n = self.code.word_len();
        let q = self.code.q();
        let r = self.radius;
        let targets = self.target.size() as u128;
        let per_codeword = match self.direction {
            Direction::Insertion => insertion_ball_size_u64(q, n, r),
            Direction::Deletion => binomial_u64((n + r).saturating_sub(1) as u64, r as u64),
        } as u128;
        let per_target = match self.direction {
            Direction::Insertion => binomial_u64((n + r) as u64, r as u64),
            Direction::Deletion => insertion_ball_size_u64(q, n - r, r),
        } as u128;
        // the test route also needs the codeword space as a bitmap
        let codeword_space_ok = WordSpace::new(self.code.alphabet(), n).is_ok();
        if !codeword_space_ok || (self.code.len() as u128) * per_codeword <= targets * per_target {
            Route::MarkFromCodewords
        } else {
            Route::TestTargets
        }
    }

    /// Sorted ranks of uncovered targets; at most one if `first_only`.
    fn uncovered(&self, route: Route, first_only: bool) -> Result<Vec<u64>> {
        match route {
            Route::MarkFromCodewords => self.mark(first_only),
            Route::TestTargets => self.test(first_only),
        }
    }

    fn mark(&self, first_only: bool) -> Result<Vec<u64>> {
        let words: Vec<&[u8]> = self.code.iter().map(Word::symbols).collect();
        let marks = Bitmap::new(self.target.size());
        let q = self.code.q();
        let radius = self.radius;
        match self.direction {
            Direction::Insertion => par::for_each_slice(&words, |x| {
                for_each_insertion_rank(x, q, radius, &mut |y| {
                    marks.set(y);
                    true
                });
            }),
            Direction::Deletion => par::for_each_slice(&words, |x| {
                for y in deletion_ball_ranks(x, q, radius) {
                    marks.set(y);
                }
            }),
        }
        Ok(if first_only {
            marks.first_zero().into_iter().collect()
        } else {
            marks.zeros().collect()
        })
    }

    fn test(&self, first_only: bool) -> Result<Vec<u64>> {
        let (space, ranks) = self.code.ranks()?;
        let members = Bitmap::new(space.size());
        for &c in &ranks {
            members.set(c);
        }
        let q = self.code.q();
        let radius = self.radius;
        let ylen = self.target.word_len();
        let direction = self.direction;
        let per_chunk = par::map_chunks(self.target.size(), |range| {
            let mut y = vec![0u8; ylen];
            let mut out = Vec::new();
            for r in range {
                unrank_into(r, q, &mut y);
                let hit = match direction {
                    Direction::Insertion => deletion_ball_ranks(&y, q, radius)
                        .into_iter()
                        .any(|x| members.get(x)),
                    Direction::Deletion => {
                        !for_each_insertion_rank(&y, q, radius, &mut |x| !members.get(x))
                    }
                };
                if !hit {
                    out.push(r);
                    if first_only {
                        break;
                    }
                }
            }
            out
        });
        let mut all = per_chunk.into_iter().flatten();
        Ok(if first_only {
            all.next().into_iter().collect()
        } else {
            all.collect()
        })
    }
}

/// Decides whether `code` is an `radius`-covering code in `direction`,
/// picking the cheaper verification route.
pub fn is_covering(code: &Code, radius: usize, direction: Direction) -> Result<CoverReport> {
    let setup = Setup::new(code, radius, direction)?;
    let route = setup.cheaper_route();
    report(&setup, route)
}

/// Same as [`is_covering`] with an explicit route.
pub fn is_covering_via(code: &Code, radius: usize, direction: Direction, route: Route) -> Result<CoverReport> {
    let setup = Setup::new(code, radius, direction)?;
    report(&setup, route)
}

fn report(setup: &Setup<'_>, route: Route) -> Result<CoverReport> {
    let code = setup.code;
    let witness = setup
        .uncovered(route, true)?
        .first()
        .map(|&r| setup.target.word(r));
    let density = if code.is_empty() {
        None
    } else {
        Some(
            bounds::density(
                BigUint::from(code.len()),
                code.q() as u32,
                code.word_len(),
                setup.radius,
                setup.direction,
            )?
            .density,
        )
    };
    Ok(CoverReport {
        covered: witness.is_none(),
        witness_uncovered: witness,
        checked_space_size: setup.target.size(),
        radius: setup.radius,
        direction: setup.direction,
        code_size: code.len(),
        density,
    })
}

/// Words of the target space not covered by `code`, in lexicographic order.
pub fn uncovered_set(code: &Code, radius: usize, direction: Direction) -> Result<Vec<Word>> {
    let setup = Setup::new(code, radius, direction)?;
    let route = setup.cheaper_route();
    Ok(setup
        .uncovered(route, false)?
        .into_iter()
        .map(|r| setup.target.word(r))
        .collect())
}

/// Smallest `R` at which `code` covers its target space.
///
/// For insertions a finite radius exists only if every constant word
/// `a^n` is a codeword: `a^{n+R}` has no other length-`n` subsequence.
pub fn covering_radius(code: &Code, direction: Direction) -> Result<usize> {
    if code.is_empty() {
        return Err(Error::InvalidParameter("covering radius of an empty code".into()));
    }
    let n = code.word_len();
    let max_radius = match direction {
        Direction::Deletion => n,
        Direction::Insertion => {
            if n == 0 {
                0
            } else {
                let q = code.q();
                let all_constants = (0..q).all(|a| {
                    let w = Word::from_raw(code.alphabet(), vec![a; n]);
                    code.contains(&w)
                });
                if !all_constants {
                    return Err(Error::NoFiniteRadius(direction));
                }
                // pigeonhole: a word of length q(n-1)+1 repeats some symbol n times
                q as usize * (n - 1) + 1 - n
            }
        }
    };
    for r in 0..=max_radius {
        if is_covering(code, r, direction)?.covered {
            return Ok(r);
        }
    }
    unreachable!("radius {max_radius} always covers")
}

/// Fails with [`Error::NotCovering`] unless `code` covers at `radius`.
pub fn ensure_covering(code: &Code, radius: usize, direction: Direction) -> Result<()> {
    let report = is_covering(code, radius, direction)?;
    match report.witness_uncovered {
        None => Ok(()),
        Some(w) => Err(Error::NotCovering {
            radius,
            direction,
            witness: w.to_string(),
        }),
    }
}
