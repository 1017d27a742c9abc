//! Process-wide resource caps.
//!
//! Caps are read on every Gröbner computation and saturation loop. They are
//! stored in atomics so worker threads observe the same values without any
//! plumbing through the call graph.

use std::cell::Cell;
use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

static SATURATION_CAP: AtomicUsize = AtomicUsize::new(Limits::DEFAULT.saturation_cap);
static GB_PAIR_CAP: AtomicUsize = AtomicUsize::new(Limits::DEFAULT.gb_pair_cap);
static GB_DEGREE_CAP: AtomicU32 = AtomicU32::new(Limits::DEFAULT.gb_degree_cap);

thread_local! {
    static OVERRIDE: Cell<Option<Limits>> = const { Cell::new(None) };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest stabilization exponent a saturation may report.
    pub saturation_cap: usize,
    /// Maximum number of S-pairs reduced in one Gröbner computation.
    pub gb_pair_cap: usize,
    /// Maximum total degree of an intermediate basis element.
    pub gb_degree_cap: u32,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        saturation_cap: 64,
        gb_pair_cap: 200_000,
        gb_degree_cap: 64,
    };

    pub fn current() -> Limits {
        if let Some(l) = OVERRIDE.with(Cell::get) {
            return l;
        }
        Limits {
            saturation_cap: SATURATION_CAP.load(Ordering::Relaxed),
            gb_pair_cap: GB_PAIR_CAP.load(Ordering::Relaxed),
            gb_degree_cap: GB_DEGREE_CAP.load(Ordering::Relaxed),
        }
    }

    /// Installs these caps for the whole process.
    pub fn install(self) {
        SATURATION_CAP.store(self.saturation_cap.max(1), Ordering::Relaxed);
        GB_PAIR_CAP.store(self.gb_pair_cap.max(1), Ordering::Relaxed);
        GB_DEGREE_CAP.store(self.gb_degree_cap.max(1), Ordering::Relaxed);
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}

/// Runs `f` with `limits` in force on the current thread only. Work that `f`
/// hands to other threads still sees the process-wide caps.
pub fn with_limits<T>(limits: Limits, f: impl FnOnce() -> T) -> T {
    let previous = OVERRIDE.with(|o| o.replace(Some(limits)));
    struct Restore(Option<Limits>);
    impl Drop for Restore {
        fn drop(&mut self) {
            OVERRIDE.with(|o| o.set(self.0));
        }
    }
    let _restore = Restore(previous);
    f()
}
