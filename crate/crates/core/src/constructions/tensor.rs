use crate::balls::Direction;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::verify::ensure_covering;

use super::sampling::AlmostCover;

fn expect_shape(ac: &AlmostCover, direction: Direction) -> Result<()> {
    if ac.direction() != direction {
        return Err(Error::InvalidParameter(format!(
            "almost-cover is for {}, expected {direction}",
            ac.direction()
        )));
    }
    Ok(())
}

fn expect_len(code: &Code, len: usize, what: &str) -> Result<()> {
    if code.word_len() != len {
        return Err(Error::InvalidParameter(format!(
            "{what} has length {}, expected {len}",
            code.word_len()
        )));
    }
    Ok(())
}

/// `(S ⊗ C1) ∪ (T ⊗ C2)` without any checks.
pub(crate) fn glue(ac: &AlmostCover, c1: &Code, c2: &Code) -> Result<Code> {
    ac.s().tensor(c1)?.union(&ac.t().tensor(c2)?)
}

/// `(S ⊗ Σ^{n2+1}) ∪ (T ⊗ C2)`: a single-insertion cover of length
/// `n1 + n2 + 1`, where `S ⊆ Σ^{n1}` and `C2` covers `Σ^{n2+1}`.
pub fn compose_single_insertion(ac: &AlmostCover, c2: &Code) -> Result<Code> {
    expect_shape(ac, Direction::Insertion)?;
    if ac.radius() != 1 {
        return Err(Error::InvalidParameter("almost-cover radius must be 1".into()));
    }
    ensure_covering(c2, 1, Direction::Insertion)?;
    let full = Code::full_space(c2.alphabet(), c2.word_len() + 1)?;
    let code = glue(ac, &full, c2)?;
    ensure_covering(&code, 1, Direction::Insertion)?;
    Ok(code)
}

/// `(S ⊗ C1) ∪ (T ⊗ C2)` for insertions. With `S ⊆ Σ^{n1-R1}` covering
/// `Σ^{n1} \ T` by `R1` insertions, `C1` an `R2`-insertion cover of length
/// `n2 + R1` and `C2` an `(R1+R2)`-insertion cover of length `n2`, the
/// result covers at radius `R1 + R2`.
pub fn compose_insertion_r(ac: &AlmostCover, c1: &Code, r2: usize, c2: &Code) -> Result<Code> {
    expect_shape(ac, Direction::Insertion)?;
    let radius = ac.radius() + r2;
    expect_len(c1, c2.word_len() + ac.radius(), "C1")?;
    ensure_covering(c1, r2, Direction::Insertion)?;
    ensure_covering(c2, radius, Direction::Insertion)?;
    let code = glue(ac, c1, c2)?;
    ensure_covering(&code, radius, Direction::Insertion)?;
    Ok(code)
}

/// Deletion counterpart of [`compose_insertion_r`]: `S ⊆ Σ^{n1+R1}` covers
/// `Σ^{n1} \ T` by `R1` deletions, `C1` has length `n2 - R1` and covers at
/// radius `R2`, `C2` has length `n2` and covers at radius `R1 + R2`.
pub fn compose_deletion_r(ac: &AlmostCover, c1: &Code, r2: usize, c2: &Code) -> Result<Code> {
    expect_shape(ac, Direction::Deletion)?;
    let radius = ac.radius() + r2;
    let c1_len = c2.word_len().checked_sub(ac.radius()).ok_or(Error::RadiusTooLarge {
        radius: ac.radius(),
        len: c2.word_len(),
    })?;
    expect_len(c1, c1_len, "C1")?;
    ensure_covering(c1, r2, Direction::Deletion)?;
    ensure_covering(c2, radius, Direction::Deletion)?;
    let code = glue(ac, c1, c2)?;
    ensure_covering(&code, radius, Direction::Deletion)?;
    Ok(code)
}
