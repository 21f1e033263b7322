//! Modified Bessel functions of the second kind, orders 0 and 1.

use super::constants::{K_SERIES_MAX, MAX_TERMS};
use crate::scalar::Real;

/// Returns `(K0(x), K1(x))` for `x > 0`.
pub(crate) fn k01<T: Real>(x: T) -> (T, T) {
    if x <= T::lit(K_SERIES_MAX) {
        series(x)
    } else {
        steed(x)
    }
}

/// Logarithmic power series about the origin.
fn series<T: Real>(x: T) -> (T, T) {
    let half = x * T::lit(0.5);
    let y = half * half;
    let log_half = half.ln();
    let gamma = T::euler_gamma();

    // t_k = y^k / (k!)^2, u_k = y^k / (k! (k+1)!)
    let mut t = T::one();
    let mut u = T::one();
    let mut harmonic = T::zero();
    let mut i0 = T::one();
    let mut i1_scaled = T::one(); // I1(x) / (x/2)
    let mut k0_tail = T::zero();
    // psi(1) + psi(2) = 1 - 2 gamma
    let mut k1_sum = T::one() - T::lit(2.0) * gamma;
    for k in 1..MAX_TERMS {
        let kk = T::from_count(k);
        t = t * y / (kk * kk);
        u = u * y / (kk * (kk + T::one()));
        harmonic = harmonic + kk.recip();
        i0 = i0 + t;
        i1_scaled = i1_scaled + u;
        k0_tail = k0_tail + t * harmonic;
        // psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2 gamma
        let psi_sum = harmonic + harmonic + (kk + T::one()).recip() - T::lit(2.0) * gamma;
        k1_sum = k1_sum + psi_sum * u;
        if t <= T::epsilon() * T::lit(1e-3) * i0 && u <= T::epsilon() * T::lit(1e-3) * i1_scaled {
            break;
        }
    }
    let k0 = -(log_half + gamma) * i0 + k0_tail;
    let k1 = x.recip() + log_half * half * i1_scaled - half * T::lit(0.5) * k1_sum;
    (k0, k1)
}

/// Steed's continued fraction (Temme's CF2 with its normalising sum) at order 0.
fn steed<T: Real>(x: T) -> (T, T) {
    let two = T::lit(2.0);
    let a1 = T::lit(0.25);
    let mut b = two * (T::one() + x);
    let mut d = b.recip();
    let mut delh = d;
    let mut h = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    for i in 1..MAX_TERMS {
        let ii = T::from_count(i);
        a = a - two * ii;
        c = -a * c / (ii + T::one());
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = (b + a * d).recip();
        delh = (b * d - T::one()) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < T::epsilon() * T::lit(0.5) {
            break;
        }
    }
    h = a1 * h;
    let k0 = (T::FRAC_PI_2() / x).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + T::lit(0.5) - h) / x;
    (k0, k1)
}
