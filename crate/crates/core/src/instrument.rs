//! Field-operation counters, auxiliary-space tracking and recursion depth.
//!
//! All state is thread-local. Counters only ever grow; [`measure`] reports the
//! difference over its scope, so scopes nest. Heap usage is observed through
//! [`TrackingAllocator`], which a binary installs as its global allocator;
//! without it [`AllocGuard::heap_tracked`] is `false` and the heap peak reads 0.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::ff::Elem;

thread_local! {
    static ADDS: Cell<u64> = const { Cell::new(0) };
    static MULS: Cell<u64> = const { Cell::new(0) };
    static DIVS: Cell<u64> = const { Cell::new(0) };
    static DEPTH: Cell<usize> = const { Cell::new(0) };
    static PEAK_DEPTH: Cell<usize> = const { Cell::new(0) };
    static HEAP_ACTIVE: Cell<bool> = const { Cell::new(false) };
    static HEAP_LIVE: Cell<isize> = const { Cell::new(0) };
    static HEAP_PEAK: Cell<isize> = const { Cell::new(0) };
}

static ALLOCATOR_INSTALLED: AtomicBool = AtomicBool::new(false);

#[inline]
pub(crate) fn count_add() {
    ADDS.with(|c| c.set(c.get() + 1));
}

#[inline]
pub(crate) fn count_mul() {
    MULS.with(|c| c.set(c.get() + 1));
}

#[inline]
pub(crate) fn count_div() {
    DIVS.with(|c| c.set(c.get() + 1));
}

/// Field-operation counts: one unit per add/sub/neg, per mul, per inv/div.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub adds: u64,
    pub muls: u64,
    pub divs: u64,
}

impl OpCounter {
    fn now() -> Self {
        OpCounter {
            adds: ADDS.with(Cell::get),
            muls: MULS.with(Cell::get),
            divs: DIVS.with(Cell::get),
        }
    }

    pub fn total(&self) -> u64 {
        self.adds + self.muls + self.divs
    }
}

impl std::ops::Sub for OpCounter {
    type Output = OpCounter;
    fn sub(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            adds: self.adds - rhs.adds,
            muls: self.muls - rhs.muls,
            divs: self.divs - rhs.divs,
        }
    }
}

/// Space report of a measured scope.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AllocGuard {
    /// Peak live heap growth over the scope, in field elements (rounded up).
    pub peak_aux_elems: usize,
    /// Peak nesting of instrumented frames entered inside the scope.
    pub peak_depth: usize,
    /// Whether a [`TrackingAllocator`] observed this process.
    pub heap_tracked: bool,
}

/// Ceilings a test places on a measured scope.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Ceiling {
    pub aux_elems: Option<usize>,
    pub depth: Option<usize>,
}

impl AllocGuard {
    pub fn enforce(&self, ceiling: &Ceiling) -> Result<()> {
        if let Some(max) = ceiling.aux_elems {
            if self.peak_aux_elems > max {
                return Err(Error::GuardViolation(format!(
                    "auxiliary space {} exceeds ceiling {max}",
                    self.peak_aux_elems
                )));
            }
        }
        if let Some(max) = ceiling.depth {
            if self.peak_depth > max {
                return Err(Error::GuardViolation(format!(
                    "recursion depth {} exceeds ceiling {max}",
                    self.peak_depth
                )));
            }
        }
        Ok(())
    }
}

/// RAII marker for one instrumented frame; see [`enter`].
pub struct DepthGuard(());

/// Marks entry into an instrumented (possibly recursive) frame.
#[inline]
pub fn enter() -> DepthGuard {
    let d = DEPTH.with(|c| {
        let d = c.get() + 1;
        c.set(d);
        d
    });
    PEAK_DEPTH.with(|c| {
        if d > c.get() {
            c.set(d)
        }
    });
    DepthGuard(())
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        DEPTH.with(|c| c.set(c.get() - 1));
    }
}

/// Current nesting of instrumented frames on this thread.
pub fn current_depth() -> usize {
    DEPTH.with(Cell::get)
}

/// Runs `op` and reports its operation counts and space peaks.
pub fn measure<R>(op: impl FnOnce() -> R) -> (R, OpCounter, AllocGuard) {
    let ops_before = OpCounter::now();
    let base_depth = DEPTH.with(Cell::get);
    let outer_peak_depth = PEAK_DEPTH.with(|c| c.replace(base_depth));
    let outer_active = HEAP_ACTIVE.with(|c| c.replace(true));
    let outer_live = HEAP_LIVE.with(|c| c.replace(0));
    let outer_peak = HEAP_PEAK.with(|c| c.replace(0));

    let out = op();

    let inner_live = HEAP_LIVE.with(Cell::get);
    let inner_peak = HEAP_PEAK.with(Cell::get);
    HEAP_ACTIVE.with(|c| c.set(outer_active));
    HEAP_LIVE.with(|c| c.set(outer_live + inner_live));
    HEAP_PEAK.with(|c| c.set(outer_peak.max(outer_live + inner_peak)));
    let inner_peak_depth = PEAK_DEPTH.with(Cell::get);
    PEAK_DEPTH.with(|c| c.set(outer_peak_depth.max(inner_peak_depth)));

    let ops = OpCounter::now() - ops_before;
    let elem = std::mem::size_of::<Elem>() as isize;
    let guard = AllocGuard {
        peak_aux_elems: ((inner_peak.max(0) + elem - 1) / elem) as usize,
        peak_depth: inner_peak_depth - base_depth,
        heap_tracked: ALLOCATOR_INSTALLED.load(Ordering::Relaxed),
    };
    (out, ops, guard)
}

/// [`measure`] followed by [`AllocGuard::enforce`].
pub fn measure_within<R>(ceiling: &Ceiling, op: impl FnOnce() -> R) -> Result<(R, OpCounter, AllocGuard)> {
    let (out, ops, guard) = measure(op);
    guard.enforce(ceiling)?;
    Ok((out, ops, guard))
}

/// Global allocator wrapper that feeds the per-thread heap peak used by
/// [`measure`].
///
/// ```ignore
/// #[global_allocator]
/// static ALLOC: inplace_poly::instrument::TrackingAllocator = inplace_poly::instrument::TrackingAllocator;
/// ```
pub struct TrackingAllocator;

#[inline]
fn record(delta: isize) {
    // try_with: TLS may already be torn down on thread exit
    let _ = HEAP_ACTIVE.try_with(|active| {
        if active.get() {
            let _ = HEAP_LIVE.try_with(|live| {
                let now = live.get() + delta;
                live.set(now);
                let _ = HEAP_PEAK.try_with(|peak| {
                    if now > peak.get() {
                        peak.set(now)
                    }
                });
            });
        }
    });
}

unsafe impl GlobalAlloc for TrackingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        ALLOCATOR_INSTALLED.store(true, Ordering::Relaxed);
        let p = System.alloc(layout);
        if !p.is_null() {
            record(layout.size() as isize);
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        ALLOCATOR_INSTALLED.store(true, Ordering::Relaxed);
        let p = System.alloc_zeroed(layout);
        if !p.is_null() {
            record(layout.size() as isize);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        record(-(layout.size() as isize));
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let p = System.realloc(ptr, layout, new_size);
        if !p.is_null() {
            record(new_size as isize - layout.size() as isize);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;

    #[test]
    fn counts_are_scoped_and_nest() {
        let f = Field::new(7).unwrap();
        let (inner, outer, _) = measure(|| {
            f.add(1, 2);
            let (_, inner, _) = measure(|| {
                f.mul(3, 4);
                f.inv(3).unwrap();
            });
            f.neg(5);
            inner
        });
        assert_eq!(inner, OpCounter { adds: 0, muls: 1, divs: 1 });
        assert_eq!(outer, OpCounter { adds: 2, muls: 1, divs: 1 });
    }

    #[test]
    fn depth_peaks() {
        fn rec(k: usize) {
            let _g = enter();
            if k > 0 {
                rec(k - 1)
            }
        }
        let (_, _, g) = measure(|| rec(4));
        assert_eq!(g.peak_depth, 5);
        assert_eq!(current_depth(), 0);
        let ceiling = Ceiling { depth: Some(4), aux_elems: None };
        assert!(matches!(g.enforce(&ceiling), Err(Error::GuardViolation(_))));
    }
}
