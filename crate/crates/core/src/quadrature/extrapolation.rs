//! Sequence acceleration and compensated summation.

use crate::scalar::Real;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// An accelerated limit together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation<T> {
    pub value: T,
    pub error: T,
}

/// Wynn's epsilon algorithm on the partial sums `s`.
///
/// Every even column of the epsilon table is a Shanks transform of the
/// sequence. The returned estimate is the last entry of the even column whose
/// change from the previous even column is smallest, which guards against the
/// higher columns degenerating into round-off noise.
pub fn wynn_epsilon<T: Real>(s: &[T]) -> Extrapolation<T> {
    let n = s.len();
    assert!(n > 0, "wynn_epsilon needs at least one term");
    if n == 1 {
        return Extrapolation {
            value: s[0],
            error: T::infinity(),
        };
    }

    let mut evens = vec![s[n - 1]];
    let mut prev = vec![T::zero(); n];
    let mut cur = s.to_vec();
    let mut order = 0usize;
    'table: while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            let v = prev[i + 1] + d.recip();
            if d == T::zero() || !v.is_finite() {
                break 'table;
            }
            next.push(v);
        }
        prev = cur;
        cur = next;
        order += 1;
        if order % 2 == 0 {
            evens.push(cur[cur.len() - 1]);
        }
    }

    if evens.len() == 1 {
        // no column could be built: either exactly converged or two terms only
        return Extrapolation {
            value: s[n - 1],
            error: (s[n - 1] - s[n - 2]).abs(),
        };
    }
    let mut best = Extrapolation {
        value: evens[1],
        error: (evens[1] - evens[0]).abs(),
    };
    for j in 2..evens.len() {
        let err = (evens[j] - evens[j - 1]).abs();
        if err < best.error {
            best = Extrapolation {
                value: evens[j],
                error: err,
            };
        }
    }
    best
}

/// Polynomial extrapolation to `h = 0` through `(h[i], v[i])`.
///
/// Returns the Neville diagonal: entry `m` is the value at zero of the
/// interpolant through the first `m + 1` nodes.
pub fn neville_at_zero<T: Real>(h: &[T], v: &[T]) -> Vec<T> {
    assert_eq!(h.len(), v.len());
    let n = v.len();
    let mut p = v.to_vec();
    let mut diag = Vec::with_capacity(n);
    if n == 0 {
        return diag;
    }
    diag.push(p[0]);
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (h[i] * p[i + 1] - h[i + m] * p[i]) / (h[i] - h[i + m]);
        }
        diag.push(p[0]);
    }
    diag
}

/// Lagrange weights of the full interpolant evaluated at zero.
pub(crate) fn lagrange_weights_at_zero<T: Real>(h: &[T]) -> Vec<T> {
    (0..h.len())
        .map(|i| {
            h.iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(T::one(), |acc, (_, hj)| acc * *hj / (*hj - h[i]))
        })
        .collect()
}
