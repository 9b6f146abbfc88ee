//! Conservative interval arithmetic used as a fast pre-check before the
//! exact rational evaluation of a predicate.
//!
//! Every operation rounds to nearest and then widens the result by one ulp in
//! each direction, so the true real-valued result is always enclosed. A sign
//! is reported only when the whole interval lies strictly on one side of zero.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// Encloses `v` which itself may carry a small rounding error.
    pub fn around(v: f64, ulps: u32) -> Self {
        let mut lo = v;
        let mut hi = v;
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval { lo, hi }
    }

    fn widen(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// `Some(sign)` when the interval excludes zero or is exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if !self.is_finite() {
            None
        } else if self.lo > 0.0 {
            Some(Ordering::Greater)
        } else if self.hi < 0.0 {
            Some(Ordering::Less)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    fn exact(&self) -> bool {
        self.lo == self.hi
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        if self.exact() && rhs.exact() {
            let s = self.lo + rhs.lo;
            // two-sum error term tells us whether the addition was exact
            let bb = s - self.lo;
            let err = (self.lo - (s - bb)) + (rhs.lo - bb);
            if err == 0.0 && s.is_finite() {
                return Interval::point(s);
            }
        }
        Interval::widen(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + Interval {
            lo: -rhs.hi,
            hi: -rhs.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.exact() && rhs.exact() {
            let p = self.lo * rhs.lo;
            // fused multiply-add recovers the rounding error of the product
            if p.is_finite() && self.lo.mul_add(rhs.lo, -p) == 0.0 {
                return Interval::point(p);
            }
        }
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widen(lo, hi)
    }
}
