//! Per-thread operation counters.
//!
//! Every field multiplication, field inversion and symbolic division bumps a
//! thread-local tally. Callers that want to attribute work to a phase take a
//! [`measure`] around it; parallel sweeps measure inside each worker task and
//! sum the deltas.

use std::cell::Cell;
use std::ops::{Add, AddAssign, Sub};

/// A snapshot of operation tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    pub field_mults: u64,
    pub field_invs: u64,
    pub symbolic_divisions: u64,
}

impl OpCounts {
    pub const ZERO: OpCounts = OpCounts {
        field_mults: 0,
        field_invs: 0,
        symbolic_divisions: 0,
    };

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            field_mults: self.field_mults + rhs.field_mults,
            field_invs: self.field_invs + rhs.field_invs,
            symbolic_divisions: self.symbolic_divisions + rhs.symbolic_divisions,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        *self = *self + rhs;
    }
}

impl Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            field_mults: self.field_mults - rhs.field_mults,
            field_invs: self.field_invs - rhs.field_invs,
            symbolic_divisions: self.symbolic_divisions - rhs.symbolic_divisions,
        }
    }
}

impl std::iter::Sum for OpCounts {
    fn sum<I: Iterator<Item = OpCounts>>(iter: I) -> OpCounts {
        iter.fold(OpCounts::ZERO, |a, b| a + b)
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts::ZERO) };
}

#[inline]
pub(crate) fn count_mul() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.field_mults += 1;
        c.set(v);
    });
}

#[inline]
pub(crate) fn count_inv() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.field_invs += 1;
        c.set(v);
    });
}

#[inline]
pub(crate) fn count_division() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.symbolic_divisions += 1;
        c.set(v);
    });
}

/// Current totals on this thread.
pub fn snapshot() -> OpCounts {
    COUNTS.with(|c| c.get())
}

/// Runs `f` and returns its result with the operations it performed on the
/// calling thread.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    let before = snapshot();
    let out = f();
    (out, snapshot() - before)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_isolates_work() {
        let ((), outer) = measure(|| {
            count_mul();
            let ((), inner) = measure(|| {
                count_mul();
                count_division();
            });
            assert_eq!(inner.field_mults, 1);
            assert_eq!(inner.symbolic_divisions, 1);
        });
        assert_eq!(outer.field_mults, 2);
        assert_eq!(outer.field_invs, 0);
    }

    #[test]
    fn empty_measure_is_zero() {
        let ((), c) = measure(|| ());
        assert!(c.is_zero());
    }
}
