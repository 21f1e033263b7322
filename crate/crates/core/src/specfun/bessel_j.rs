//! Bessel functions of the first kind, orders 0 and 1.

use super::constants::{J_MILLER_MAX, J_MILLER_PAD, J_SERIES_MAX, MAX_TERMS};
use crate::scalar::Real;

/// Which evaluation route handled an argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum JRegime {
    Series,
    Miller,
    Asymptotic,
}

pub(crate) fn regime<T: Real>(ax: T) -> JRegime {
    if ax <= T::lit(J_SERIES_MAX) {
        JRegime::Series
    } else if ax <= T::lit(J_MILLER_MAX) {
        JRegime::Miller
    } else {
        JRegime::Asymptotic
    }
}

/// Returns `(J0(x), J1(x))` for `x >= 0`.
pub(crate) fn j01<T: Real>(x: T) -> (T, T) {
    match regime(x) {
        JRegime::Series => (series(x, 0), series(x, 1)),
        JRegime::Miller => miller(x),
        JRegime::Asymptotic => (hankel(x, 0), hankel(x, 1)),
    }
}

/// `sum_k (-x^2/4)^k / (k! (k+n)!) * (x/2)^n` for n in {0, 1}.
fn series<T: Real>(x: T, order: u32) -> T {
    let half = x * T::lit(0.5);
    let y = -half * half;
    let mut term = if order == 0 { T::one() } else { half };
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kk = T::from_count(k);
        term = term * y / (kk * (kk + T::from_count(order as usize)));
        sum = sum + term;
        if term.abs() <= T::epsilon() * T::lit(0.01) * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence normalised by `J0 + 2 sum J_2k = 1`.
fn miller<T: Real>(x: T) -> (T, T) {
    let start = (x.to_f64_lossy() + J_MILLER_PAD) as usize;
    let m = start + (start & 1);
    let two_over_x = T::lit(2.0) / x;
    let big = T::max_value().sqrt();
    let mut above = T::zero();
    let mut current = T::min_positive_value().sqrt();
    let mut norm = T::zero();
    let (mut j0, mut j1) = (T::zero(), T::zero());
    for k in (1..=m).rev() {
        let below = T::from_count(k) * two_over_x * current - above;
        above = current;
        current = below;
        // `current` now holds the unnormalised J_{k-1}
        if (k - 1) % 2 == 0 && k > 1 {
            norm = norm + T::lit(2.0) * current;
        }
        if current.abs() > big {
            current = current / big;
            above = above / big;
            norm = norm / big;
        }
        if k == 1 {
            j0 = current;
            j1 = above;
        }
    }
    norm = norm + j0;
    (j0 / norm, j1 / norm)
}

/// Hankel asymptotic expansion, valid for large `x`.
fn hankel<T: Real>(x: T, order: u32) -> T {
    let four_nu2 = T::lit(4.0 * f64::from(order * order));
    let mut p = T::one();
    let mut q = T::zero();
    let mut a = T::one();
    let mut prev = T::infinity();
    for k in 1..MAX_TERMS {
        let odd = T::from_count(2 * k - 1);
        a = a * (four_nu2 - odd * odd) / (T::lit(8.0) * T::from_count(k) * x);
        let mag = a.abs();
        if mag >= prev {
            break;
        }
        prev = mag;
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 1 {
            q = q + sign * a;
        } else {
            p = p + sign * a;
        }
        if mag <= T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    let r = T::FRAC_1_SQRT_2();
    // cos/sin of x - pi/4 (order 0) or x - 3pi/4 (order 1)
    let (cos_chi, sin_chi) = if order == 0 {
        ((c + s) * r, (s - c) * r)
    } else {
        ((s - c) * r, -(s + c) * r)
    };
    (T::lit(2.0) / (T::PI() * x)).sqrt() * (p * cos_chi - q * sin_chi)
}
