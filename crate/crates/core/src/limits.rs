//! Process-wide size and search limits.
//!
//! The size cap bounds every constructed group (products, semidirect
//! products, pullbacks, automorphism groups). The fiber cap bounds the
//! ambient product sets `A x Y` walked by the commutator closure, and the
//! search budget bounds backtracking nodes in homomorphism enumeration.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::OnceLock;

pub const DEFAULT_SIZE_CAP: usize = 5040;
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;
pub const SIZE_CAP_ENV: &str = "XMOD_SIZE_CAP";

static SIZE_CAP: AtomicUsize = AtomicUsize::new(0);
static SEARCH_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_SEARCH_BUDGET);
static INIT: OnceLock<()> = OnceLock::new();

fn init() {
    INIT.get_or_init(|| {
        let from_env = std::env::var(SIZE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0);
        let _ = SIZE_CAP.compare_exchange(
            0,
            from_env.unwrap_or(DEFAULT_SIZE_CAP),
            Ordering::SeqCst,
            Ordering::SeqCst,
        );
    });
}

/// Current cap on the order of constructed groups.
pub fn size_cap() -> usize {
    init();
    SIZE_CAP.load(Ordering::Relaxed)
}

/// Overrides the size cap (and the environment value).
pub fn set_size_cap(cap: usize) {
    init();
    SIZE_CAP.store(cap.max(1), Ordering::SeqCst);
}

/// Cap on `|A|*|Y|` for fiber closures: the square of the size cap.
pub fn fiber_cap() -> usize {
    size_cap().saturating_mul(size_cap())
}

pub fn search_budget() -> u64 {
    SEARCH_BUDGET.load(Ordering::Relaxed)
}

pub fn set_search_budget(budget: u64) {
    SEARCH_BUDGET.store(budget.max(1), Ordering::SeqCst);
}

pub(crate) fn check_order(order: usize) -> crate::Result<()> {
    let cap = size_cap();
    if order > cap {
        Err(crate::Error::SizeCapExceeded { order, cap })
    } else {
        Ok(())
    }
}
