//! Process-wide enumeration caps.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 30;
pub const DEFAULT_BALL_BUDGET: u64 = 1 << 24;

static ENUMERATION_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_BUDGET);
static BALL_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_BALL_BUDGET);

/// Largest word space `q^n` any operation will enumerate.
pub fn enumeration_budget() -> u64 {
    ENUMERATION_BUDGET.load(Ordering::Relaxed)
}

pub fn set_enumeration_budget(cap: u64) {
    ENUMERATION_BUDGET.store(cap, Ordering::Relaxed);
}

/// Largest ball that will be materialized as a set.
pub fn ball_budget() -> u64 {
    BALL_BUDGET.load(Ordering::Relaxed)
}

pub fn set_ball_budget(cap: u64) {
    BALL_BUDGET.store(cap, Ordering::Relaxed);
}

/// `q^n` if it is at most `cap`.
pub(crate) fn space_size_within(q: u8, n: usize, cap: u64) -> Result<u64> {
    let mut size: u128 = 1;
    for _ in 0..n {
        size *= q as u128;
        if size > cap as u128 {
            // keep growing only far enough to report a meaningful number
            let exact = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            return Err(Error::BudgetExceeded {
                requested: exact,
                cap,
            });
        }
    }
    Ok(size as u64)
}
