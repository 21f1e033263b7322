//! Global adaptive bisection on a set of finite segments.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::extrapolation::CompensatedSum;
use super::rule::gauss_kronrod_21;
use crate::scalar::Real;

/// Running sums drift as segments are replaced; recompute them at least this
/// many bisections apart (and never more often than once per segment count,
/// keeping the cost amortised).
const RESUM_EVERY: usize = 1024;

/// No rule can beat rounding: targets below this multiple of
/// `eps * int |f|` are treated as met.
const ROUNDOFF_FLOOR: f64 = 100.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment<T> {
    pub a: T,
    pub b: T,
    pub value: T,
    pub error: T,
    pub abs_value: T,
    pub tag: usize,
}

struct ByError<T>(Segment<T>);

impl<T: Real> PartialEq for ByError<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for ByError<T> {}

impl<T: Real> PartialOrd for ByError<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for ByError<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by position so the pop order never depends on insertion
        self.0
            .error
            .partial_cmp(&other.0.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| {
                other
                    .0
                    .a
                    .partial_cmp(&self.0.a)
                    .unwrap_or(Ordering::Equal)
            })
    }
}

pub(crate) struct Adaptive<'f, T, F> {
    f: &'f F,
    heap: BinaryHeap<ByError<T>>,
    /// Segments too narrow to bisect further.
    frozen: Vec<Segment<T>>,
    value: T,
    error: T,
    abs_total: T,
    pub evaluations: usize,
    pub non_finite: bool,
}

impl<'f, T: Real, F: Fn(T) -> T> Adaptive<'f, T, F> {
    pub fn new(f: &'f F) -> Self {
        Self {
            f,
            heap: BinaryHeap::new(),
            frozen: Vec::new(),
            value: T::zero(),
            error: T::zero(),
            abs_total: T::zero(),
            evaluations: 0,
            non_finite: false,
        }
    }

    fn segment(&mut self, a: T, b: T, tag: usize) -> Segment<T> {
        let est = gauss_kronrod_21(self.f, a, b);
        self.evaluations += 1;
        if !(est.value.is_finite() && est.error.is_finite()) {
            self.non_finite = true;
        }
        Segment {
            a,
            b,
            value: est.value,
            error: est.error,
            abs_value: est.abs_value,
            tag,
        }
    }

    pub fn push(&mut self, a: T, b: T, tag: usize) {
        let seg = self.segment(a, b, tag);
        self.value = self.value + seg.value;
        self.error = self.error + seg.error;
        self.abs_total = self.abs_total + seg.abs_value;
        self.heap.push(ByError(seg));
    }

    fn segments(&self) -> Vec<Segment<T>> {
        let mut all: Vec<Segment<T>> = self
            .heap
            .iter()
            .map(|s| s.0)
            .chain(self.frozen.iter().copied())
            .collect();
        all.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
        all
    }

    /// Exact compensated totals in left-to-right order.
    pub fn totals(&self) -> (T, T) {
        let segs = self.segments();
        let v: CompensatedSum<T> = segs.iter().map(|s| s.value).collect();
        let e: CompensatedSum<T> = segs.iter().map(|s| s.error).collect();
        (v.value(), e.value())
    }

    fn resum(&mut self) {
        let segs = self.segments();
        let sum = |g: fn(&Segment<T>) -> T| segs.iter().map(g).collect::<CompensatedSum<T>>().value();
        self.value = sum(|s| s.value);
        self.error = sum(|s| s.error);
        self.abs_total = sum(|s| s.abs_value);
    }

    pub fn tag_abs(&self, tag: usize) -> T {
        self.segments()
            .iter()
            .filter(|s| s.tag == tag)
            .map(|s| s.abs_value)
            .collect::<CompensatedSum<T>>()
            .value()
    }

    /// Bisects the worst segment until `error <= target(value)` or the
    /// evaluation budget runs out. Returns whether the target (or the
    /// round-off floor, if that is larger) was met.
    pub fn refine(&mut self, target: impl Fn(T) -> T, budget: usize) -> bool {
        let floor = T::lit(ROUNDOFF_FLOOR) * T::epsilon();
        let target = |v: T, abs: T| target(v).max(floor * abs);
        let mut since_resum = 0usize;
        loop {
            if self.non_finite {
                return false;
            }
            if self.error <= target(self.value, self.abs_total) {
                self.resum();
                if self.error <= target(self.value, self.abs_total) {
                    return true;
                }
            }
            if self.evaluations + 2 > budget {
                self.resum();
                return false;
            }
            let Some(ByError(worst)) = self.heap.pop() else {
                self.resum();
                return self.error <= target(self.value, self.abs_total);
            };
            let mid = (worst.a + worst.b) * T::lit(0.5);
            if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) {
                self.frozen.push(worst);
                continue;
            }
            let left = self.segment(worst.a, mid, worst.tag);
            let right = self.segment(mid, worst.b, worst.tag);
            self.value = self.value - worst.value + left.value + right.value;
            self.error = self.error - worst.error + left.error + right.error;
            self.abs_total = self.abs_total - worst.abs_value + left.abs_value + right.abs_value;
            self.heap.push(ByError(left));
            self.heap.push(ByError(right));

            since_resum += 1;
            if since_resum >= RESUM_EVERY.max(self.heap.len()) {
                since_resum = 0;
                self.resum();
            }
        }
    }
}
