//! Arithmetic abstractions shared by every transform schedule.
//!
//! Schedules are written once against [`Ring`] (additions, subtractions and
//! free negations) or [`Field`] (additionally multiplication by a real
//! constant). Running them on `i64` gives bit-exact integer outputs, on `f64`
//! ordinary floating-point results, and on [`Counted`] an exact tally of the
//! arithmetic the schedule performs.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Arithmetic cost of one transform invocation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCount {
    pub mult: u64,
    pub add: u64,
    pub shift: u64,
}

impl OpCount {
    pub const ZERO: OpCount = OpCount { mult: 0, add: 0, shift: 0 };

    pub const fn new(mult: u64, add: u64, shift: u64) -> Self {
        OpCount { mult, add, shift }
    }

    pub const fn adds(add: u64) -> Self {
        OpCount { mult: 0, add, shift: 0 }
    }

    /// Total number of operations of any kind.
    pub const fn total(&self) -> u64 {
        self.mult + self.add + self.shift
    }

    pub const fn times(self, n: u64) -> Self {
        OpCount { mult: self.mult * n, add: self.add * n, shift: self.shift * n }
    }
}

impl Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            mult: self.mult + rhs.mult,
            add: self.add + rhs.add,
            shift: self.shift + rhs.shift,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

impl Mul<u64> for OpCount {
    type Output = OpCount;

    fn mul(self, n: u64) -> OpCount {
        self.times(n)
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mult / {} add / {} shift", self.mult, self.add, self.shift)
    }
}

/// Values a multiplierless schedule can run on.
///
/// Negation is part of the signal-flow wiring and is never counted.
pub trait Ring: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {}

/// Values a schedule with real constant multipliers can run on.
pub trait Field: Ring {
    fn scale(self, c: f64) -> Self;
}

impl Ring for i32 {}

impl Ring for i64 {}

impl Ring for f64 {}

impl Field for f64 {
    fn scale(self, c: f64) -> Self {
        self * c
    }
}

/// A sample that records every addition, subtraction and constant
/// multiplication applied to it in an invocation-local tally.
///
/// ```
/// use pdct::kernels::{Counted, Tally};
///
/// let tally = Tally::new();
/// let a = Counted::new(1.0, &tally);
/// let b = Counted::new(2.0, &tally);
/// let c = (a + b) - a;
/// assert_eq!(c.value(), 2.0);
/// assert_eq!(tally.get().add, 2);
/// ```
#[derive(Clone, Copy)]
pub struct Counted<'t> {
    value: f64,
    tally: &'t Tally,
}

/// Operation tally shared by the [`Counted`] samples of one invocation.
#[derive(Debug, Default)]
pub struct Tally(Cell<OpCount>);

impl Tally {
    pub fn new() -> Self {
        Tally(Cell::new(OpCount::ZERO))
    }

    pub fn get(&self) -> OpCount {
        self.0.get()
    }

    fn bump(&self, f: impl FnOnce(&mut OpCount)) {
        let mut c = self.0.get();
        f(&mut c);
        self.0.set(c);
    }

    /// Wraps plain samples so that operations on them are tallied here.
    pub fn wrap<const N: usize>(&self, x: [f64; N]) -> [Counted<'_>; N] {
        x.map(|v| Counted::new(v, self))
    }
}

impl<'t> Counted<'t> {
    pub fn new(value: f64, tally: &'t Tally) -> Self {
        Counted { value, tally }
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

impl fmt::Debug for Counted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Counted({})", self.value)
    }
}

impl<'t> Add for Counted<'t> {
    type Output = Counted<'t>;

    fn add(self, rhs: Self) -> Self {
        self.tally.bump(|c| c.add += 1);
        Counted { value: self.value + rhs.value, tally: self.tally }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'t> Sub for Counted<'t> {
    type Output = Counted<'t>;

    fn sub(self, rhs: Self) -> Self {
        self.tally.bump(|c| c.add += 1);
        Counted { value: self.value - rhs.value, tally: self.tally }
    }
}

impl<'t> Neg for Counted<'t> {
    type Output = Counted<'t>;

    fn neg(self) -> Self {
        Counted { value: -self.value, tally: self.tally }
    }
}

impl Ring for Counted<'_> {}

impl Field for Counted<'_> {
    fn scale(self, c: f64) -> Self {
        self.tally.bump(|t| t.mult += 1);
        Counted { value: self.value * c, tally: self.tally }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opcount_is_additive() {
        let a = OpCount::new(1, 2, 3);
        let b = OpCount::new(4, 5, 6);
        assert_eq!(a + b, OpCount::new(5, 7, 9));
        assert_eq!(a * 3, OpCount::new(3, 6, 9));
        assert_eq!((a + b).total(), 21);
    }

    #[test]
    fn negation_is_free() {
        let t = Tally::new();
        let [a, b] = t.wrap([3.0, 4.0]);
        let c = -a - b;
        assert_eq!(c.value(), -7.0);
        assert_eq!(t.get(), OpCount::adds(1));
    }

    #[test]
    fn scale_counts_a_multiplication() {
        let t = Tally::new();
        let [a] = t.wrap([3.0]);
        assert_eq!(a.scale(0.5).value(), 1.5);
        assert_eq!(t.get(), OpCount::new(1, 0, 0));
    }
}
