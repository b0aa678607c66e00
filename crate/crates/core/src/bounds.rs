//! Lower bounds on covering-code sizes and code densities, all in exact
//! rational arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::balls::{deletion_level_sets, for_each_insertion_rank, insertion_ball_size, Direction};
use crate::error::{Error, Result};
use crate::math::{binomial, factorial, pow};
use crate::par;
use crate::space::WordSpace;
use crate::word::{unrank_into, Alphabet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Union-bound style: total space over (an upper bound on) ball size.
    SphereCovering,
    /// Weighted covering with `w(y) = 1 / max |Ball(x)|` over centers `x` covering `y`.
    GeneralizedWeighted,
    /// `q^n (n-2) / ((q-1) n (n+1))` for one deletion.
    ClosedFormR1,
    /// Leading term of the large-`n` expansion; not a rigorous bound at finite `n`.
    AsymptoticApprox,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::SphereCovering => "sphere-covering",
            BoundKind::GeneralizedWeighted => "generalized-weighted",
            BoundKind::ClosedFormR1 => "closed-form-r1",
            BoundKind::AsymptoticApprox => "asymptotic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u32,
    pub n: usize,
    pub radius: usize,
    pub direction: Direction,
    pub kind: BoundKind,
    pub value: BigRational,
    /// `⌈value⌉`, the usable bound on an integer code size.
    pub ceiling: BigInt,
}

impl BoundReport {
    fn new(q: u32, n: usize, radius: usize, direction: Direction, kind: BoundKind, value: BigRational) -> Self {
        let ceiling = value.ceil().to_integer();
        BoundReport {
            q,
            n,
            radius,
            direction,
            kind,
            value,
            ceiling,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub q: u32,
    pub n: usize,
    pub radius: usize,
    pub direction: Direction,
    pub code_size: BigUint,
    pub density: BigRational,
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn check_q(q: u32) -> Result<u64> {
    Alphabet::new(q)?;
    Ok(q as u64)
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// `q^{n+R} / V_I^q(n, R)`.
pub fn insertion_lower_bound(q: u32, n: usize, radius: usize) -> Result<BoundReport> {
    let qq = check_q(q)?;
    if n < 1 || radius < 1 {
        return Err(invalid(format!("need n >= 1 and R >= 1, got n={n}, R={radius}")));
    }
    let value = ratio(
        pow(qq, (n + radius) as u64),
        insertion_ball_size(q, n, radius),
    );
    Ok(BoundReport::new(q, n, radius, Direction::Insertion, BoundKind::SphereCovering, value))
}

/// Deletion lower bound from grouping the covered space by run count. For
/// `R = 1` the exact ball size `ρ(x) ≤ ρ(y) + 2` is used (denominator `r+2`);
/// for `R ≥ 2` the ball-size bound `C(r + 3R - 1, R)`.
pub fn deletion_lower_bound_general(q: u32, n: usize, radius: usize) -> Result<BoundReport> {
    if radius == 1 {
        deletion_sum(q, n, radius, |r| BigUint::from(r + 2))
    } else {
        deletion_lower_bound_runs_sum(q, n, radius)
    }
}

/// `q Σ_{r=1}^{n-R} (q-1)^{r-1} C(n-R-1, r-1) / C(r+3R-1, R)` for any `R`.
pub fn deletion_lower_bound_runs_sum(q: u32, n: usize, radius: usize) -> Result<BoundReport> {
    let r64 = radius as u64;
    deletion_sum(q, n, radius, |r| binomial(r + 3 * r64 - 1, r64))
}

fn deletion_sum(q: u32, n: usize, radius: usize, denom: impl Fn(u64) -> BigUint) -> Result<BoundReport> {
    let qq = check_q(q)?;
    if radius == 0 || radius >= n {
        return Err(invalid(format!("need 0 < R < n, got n={n}, R={radius}")));
    }
    let m = (n - radius) as u64;
    let mut sum = BigRational::zero();
    for r in 1..=m {
        let count = pow(qq - 1, r - 1) * binomial(m - 1, r - 1);
        sum += ratio(count, denom(r));
    }
    let value = sum * BigRational::from_integer(BigInt::from(qq));
    Ok(BoundReport::new(q, n, radius, Direction::Deletion, BoundKind::SphereCovering, value))
}

/// `q^n (n-2) / ((q-1) n (n+1))`.
pub fn deletion_lower_bound_r1_closed(q: u32, n: usize) -> Result<BoundReport> {
    let qq = check_q(q)?;
    if n < 3 {
        return Err(invalid(format!("closed form needs n >= 3, got {n}")));
    }
    let n64 = n as u64;
    let value = ratio(
        pow(qq, n64) * (n64 - 2),
        BigUint::from((qq - 1) * n64 * (n64 + 1)),
    );
    Ok(BoundReport::new(q, n, 1, Direction::Deletion, BoundKind::ClosedFormR1, value))
}

/// Weighted covering bound with the weight `w(y) = 1 / max_x |Ball(x, R)|`,
/// the maximum taken over every center `x ∈ Σ_q^n` whose ball contains `y`,
/// summed over the whole covered space by enumeration.
///
/// Insertion balls all have size `V_I^q(n, R)`, so the insertion variant
/// reduces to the sphere-covering bound; the covered space is still checked
/// against the enumeration budget.
pub fn generalized_weighted_bound_exact(
    q: u32,
    n: usize,
    radius: usize,
    direction: Direction,
) -> Result<BoundReport> {
    let alphabet = Alphabet::new(q)?;
    let value = match direction {
        Direction::Insertion => {
            let target = WordSpace::new(alphabet, n + radius)?;
            ratio(BigUint::from(target.size()), insertion_ball_size(q, n, radius))
        }
        Direction::Deletion => {
            if radius > n {
                return Err(Error::RadiusTooLarge { radius, len: n });
            }
            let histogram = deletion_weight_histogram(alphabet, n, radius)?;
            histogram
                .iter()
                .enumerate()
                .filter(|(_, &count)| count > 0)
                .map(|(m, &count)| BigRational::new(BigInt::from(count), BigInt::from(m)))
                .sum()
        }
    };
    Ok(BoundReport::new(q, n, radius, direction, BoundKind::GeneralizedWeighted, value))
}

/// `hist[m]` = number of `y ∈ Σ_q^{n-R}` whose largest covering deletion ball has size `m`.
pub(crate) fn deletion_weight_histogram(alphabet: Alphabet, n: usize, radius: usize) -> Result<Vec<u64>> {
    let q = alphabet.size();
    let target = WordSpace::new(alphabet, n - radius)?;
    let ylen = n - radius;
    let partial: Vec<Vec<u64>> = if radius == 1 {
        // V_D(x, 1) = ρ(x); scan all single insertions into y
        par::map_chunks(target.size(), |range| {
            let mut hist = vec![0u64; n + 2];
            let mut y = vec![0u8; ylen];
            for r in range {
                unrank_into(r, q, &mut y);
                hist[max_runs_after_insertion(&y, q)] += 1;
            }
            hist
        })
    } else {
        let centers = WordSpace::new(alphabet, n)?;
        let sizes: Vec<u32> = par::map_chunks(centers.size(), |range| {
            let mut x = vec![0u8; n];
            range
                .map(|r| {
                    unrank_into(r, q, &mut x);
                    deletion_level_sets(&x, radius).len() as u32
                })
                .collect::<Vec<u32>>()
        })
        .concat();
        let top = *sizes.iter().max().unwrap_or(&1) as usize;
        par::map_chunks(target.size(), |range| {
            let mut hist = vec![0u64; top + 1];
            let mut y = vec![0u8; ylen];
            for r in range {
                unrank_into(r, q, &mut y);
                let mut best = 0u32;
                for_each_insertion_rank(&y, q, radius, &mut |x| {
                    best = best.max(sizes[x as usize]);
                    true
                });
                hist[best as usize] += 1;
            }
            hist
        })
    };
    let width = partial.iter().map(Vec::len).max().unwrap_or(0);
    let mut total = vec![0u64; width];
    for h in partial {
        for (slot, v) in total.iter_mut().zip(h) {
            *slot += v;
        }
    }
    Ok(total)
}

/// `max ρ(x)` over all `x` obtained from `y` by inserting one symbol.
fn max_runs_after_insertion(y: &[u8], q: u8) -> usize {
    if y.is_empty() {
        return 1;
    }
    let base = crate::word::run_count(y);
    let len = y.len();
    let mut best = 0;
    for pos in 0..=len {
        for s in 0..q {
            let gain = match (pos.checked_sub(1).map(|i| y[i]), y.get(pos).copied()) {
                (Some(l), Some(r)) if l == r => 2 * usize::from(s != l),
                (Some(l), Some(r)) => usize::from(s != l && s != r),
                (None, Some(r)) => usize::from(s != r),
                (Some(l), None) => usize::from(s != l),
                (None, None) => unreachable!(),
            };
            best = best.max(gain);
        }
        if best == 2 {
            break;
        }
    }
    base + best
}

fn asymptotic_common(q: u32, n: usize, radius: usize, exponent: u64) -> Result<BigRational> {
    let qq = check_q(q)?;
    if n <= radius * radius {
        return Err(invalid(format!("leading-term approximation needs n > R^2, got n={n}, R={radius}")));
    }
    let r = radius as u64;
    Ok(ratio(
        factorial(r) * pow(qq, exponent),
        pow(n as u64, r) * pow(qq - 1, r),
    ))
}

/// `R! q^{n+R} / (n^R (q-1)^R)`, the large-`n` leading term of the insertion bound.
pub fn asymptotic_insertion_lower(q: u32, n: usize, radius: usize) -> Result<BoundReport> {
    let value = asymptotic_common(q, n, radius, (n + radius) as u64)?;
    Ok(BoundReport::new(q, n, radius, Direction::Insertion, BoundKind::AsymptoticApprox, value))
}

/// `R! q^n / (n^R (q-1)^R)`, the large-`n` leading term of the deletion bound.
pub fn asymptotic_deletion_lower(q: u32, n: usize, radius: usize) -> Result<BoundReport> {
    let value = asymptotic_common(q, n, radius, n as u64)?;
    Ok(BoundReport::new(q, n, radius, Direction::Deletion, BoundKind::AsymptoticApprox, value))
}

fn check_size(code_size: &BigUint) -> Result<()> {
    if code_size.is_zero() {
        return Err(invalid("density needs a non-empty code".into()));
    }
    Ok(())
}

/// `K · V_I^q(n, R) / q^{n+R}`.
pub fn density_insertion(code_size: impl Into<BigUint>, q: u32, n: usize, radius: usize) -> Result<DensityReport> {
    let code_size = code_size.into();
    check_size(&code_size)?;
    let qq = check_q(q)?;
    let density = ratio(
        &code_size * insertion_ball_size(q, n, radius),
        pow(qq, (n + radius) as u64),
    );
    Ok(DensityReport {
        q,
        n,
        radius,
        direction: Direction::Insertion,
        code_size,
        density,
    })
}

/// `K · n^R (q-1)^R / (q^n R!)`.
pub fn density_deletion(code_size: impl Into<BigUint>, q: u32, n: usize, radius: usize) -> Result<DensityReport> {
    let code_size = code_size.into();
    check_size(&code_size)?;
    let qq = check_q(q)?;
    let r = radius as u64;
    let density = ratio(
        &code_size * pow(n as u64, r) * pow(qq - 1, r),
        pow(qq, n as u64) * factorial(r),
    );
    Ok(DensityReport {
        q,
        n,
        radius,
        direction: Direction::Deletion,
        code_size,
        density,
    })
}

pub fn density(code_size: impl Into<BigUint>, q: u32, n: usize, radius: usize, direction: Direction) -> Result<DensityReport> {
    match direction {
        Direction::Insertion => density_insertion(code_size, q, n, radius),
        Direction::Deletion => density_deletion(code_size, q, n, radius),
    }
}

/// Renders an exact rational as `p/q`, or `p` when integral.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
