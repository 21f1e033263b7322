//! Dispersion laws of the two axially symmetric mode families.
//!
//! Subluminal (Bessel-beam) modes satisfy
//! `(omega/c)^2 - kz^2 - mu^2 = Q^2 > 0`, superluminal (K0) modes satisfy
//! `(omega/c)^2 - kz^2 - mu^2 = -q^2 < 0`. Only non-negative frequencies are
//! represented; counter-propagation is carried by the sign of `kz`.

use serde::Serialize;

use crate::domain::Params;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ModeKind<T> {
    /// `J0(Q rho)` transverse profile; `q` is the transverse wavenumber `Q`.
    Subluminal { q: T, kz: T },
    /// `K0(q rho)` transverse profile; `q` is the radial decay constant.
    Superluminal { q: T, kz: T },
}

/// One monochromatic mode together with the physical parameters it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeSpec<T> {
    pub kind: ModeKind<T>,
    pub params: Params<T>,
}

/// Propagation direction selecting the sign of `kz(omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Forward,
    Backward,
}

/// Group velocity, with the zero-frequency point of the superluminal branch
/// reported as a distinct outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GroupVelocity<T> {
    Finite(T),
    Diverges,
}

impl<T: Real> GroupVelocity<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Diverges => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionPoint<T> {
    pub omega: T,
    pub kz: T,
    /// `None` when `kz = 0`.
    pub v_phase: Option<T>,
    pub v_group: GroupVelocity<T>,
}

/// `q^2 - mu^2` in factored form.
fn decay_excess<T: Real>(q: T, mu: T) -> T {
    (q - mu) * (q + mu)
}

impl<T: Real> ModeSpec<T> {
    pub fn subluminal(q: T, kz: T, params: Params<T>) -> Result<Self> {
        if !(q.is_finite() && kz.is_finite()) {
            return Err(Error::NonFinite {
                function: "ModeSpec::subluminal",
            });
        }
        if q <= T::zero() {
            return Err(Error::Domain {
                function: "ModeSpec::subluminal",
                requirement: "Q > 0",
                value: q.to_f64_lossy(),
            });
        }
        Ok(Self {
            kind: ModeKind::Subluminal { q, kz },
            params,
        })
    }

    /// Fails with [`Error::ImaginaryFrequency`] when `kz^2 < q^2 - mu^2`.
    pub fn superluminal(q: T, kz: T, params: Params<T>) -> Result<Self> {
        if !(q.is_finite() && kz.is_finite()) {
            return Err(Error::NonFinite {
                function: "ModeSpec::superluminal",
            });
        }
        if q <= T::zero() {
            return Err(Error::Domain {
                function: "ModeSpec::superluminal",
                requirement: "q > 0",
                value: q.to_f64_lossy(),
            });
        }
        let excess = decay_excess(q, params.mu);
        if kz * kz < excess {
            return Err(Error::ImaginaryFrequency {
                min_abs_kz: excess.sqrt().to_f64_lossy(),
            });
        }
        Ok(Self {
            kind: ModeKind::Superluminal { q, kz },
            params,
        })
    }

    pub fn kz(&self) -> T {
        match self.kind {
            ModeKind::Subluminal { kz, .. } | ModeKind::Superluminal { kz, .. } => kz,
        }
    }

    pub fn with_kz(&self, kz: T) -> Result<Self> {
        match self.kind {
            ModeKind::Subluminal { q, .. } => Self::subluminal(q, kz, self.params),
            ModeKind::Superluminal { q, .. } => Self::superluminal(q, kz, self.params),
        }
    }

    /// True for superluminal modes with `q > mu`, the regime where the group
    /// velocity exceeds `c`. Superluminal-family modes with `q <= mu` are
    /// valid but propagate at or below `c`.
    pub fn is_faster_than_light(&self) -> bool {
        matches!(self.kind, ModeKind::Superluminal { q, .. } if q > self.params.mu)
    }

    /// `(omega/c)^2 - kz^2 - mu^2`, i.e. `Q^2` or `-q^2`.
    pub fn transverse_eigenvalue(&self) -> T {
        match self.kind {
            ModeKind::Subluminal { q, .. } => q * q,
            ModeKind::Superluminal { q, .. } => -(q * q),
        }
    }
}

/// Angular frequency of a mode.
pub fn omega_of<T: Real>(mode: &ModeSpec<T>) -> Result<T> {
    let Params { mu, c } = mode.params;
    let radicand = match mode.kind {
        ModeKind::Subluminal { q, kz } => kz * kz + q * q + mu * mu,
        ModeKind::Superluminal { q, kz } => {
            let excess = decay_excess(q, mu);
            let r = kz * kz - excess;
            if r < T::zero() {
                return Err(Error::ImaginaryFrequency {
                    min_abs_kz: excess.sqrt().to_f64_lossy(),
                });
            }
            r
        }
    };
    Ok(c * radicand.sqrt())
}

/// Axial wavenumber of a superluminal mode at frequency `omega`.
pub fn kz_of_omega<T: Real>(omega: T, q: T, params: &Params<T>, branch: Branch) -> Result<T> {
    let w = omega / params.c;
    let radicand = w * w + decay_excess(q, params.mu);
    if radicand < T::zero() {
        return Err(Error::ImaginaryWavenumber {
            radicand: radicand.to_f64_lossy(),
        });
    }
    let k = radicand.sqrt();
    Ok(match branch {
        Branch::Forward => k,
        Branch::Backward => -k,
    })
}

/// `d omega / d kz = c^2 kz / omega`.
pub fn group_velocity<T: Real>(mode: &ModeSpec<T>) -> Result<GroupVelocity<T>> {
    let omega = omega_of(mode)?;
    if omega == T::zero() {
        return Ok(GroupVelocity::Diverges);
    }
    let c = mode.params.c;
    Ok(GroupVelocity::Finite(c * c * mode.kz() / omega))
}

/// `omega / |kz|`.
pub fn phase_velocity<T: Real>(mode: &ModeSpec<T>) -> Result<T> {
    let kz = mode.kz();
    if kz == T::zero() {
        return Err(Error::Domain {
            function: "phase_velocity",
            requirement: "kz != 0",
            value: 0.0,
        });
    }
    Ok(omega_of(mode)? / kz.abs())
}

pub fn dispersion_point<T: Real>(mode: &ModeSpec<T>) -> Result<DispersionPoint<T>> {
    Ok(DispersionPoint {
        omega: omega_of(mode)?,
        kz: mode.kz(),
        v_phase: phase_velocity(mode).ok(),
        v_group: group_velocity(mode)?,
    })
}

/// Leading large-`kz` excess of the superluminal group velocity over `c`:
/// `c (q^2 - mu^2) / (2 kz^2)`.
pub fn group_velocity_excess_asymptote<T: Real>(q: T, kz: T, params: &Params<T>) -> T {
    params.c * decay_excess(q, params.mu) / (T::lit(2.0) * kz * kz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(mu: f64) -> Params<f64> {
        Params::new(mu).unwrap()
    }

    #[test]
    fn omega_examples() {
        let m = ModeSpec::subluminal(1.0, 0.0, params(0.0)).unwrap();
        assert_eq!(omega_of(&m).unwrap(), 1.0);
        let m = ModeSpec::superluminal(2.0, 2.0, params(1.0)).unwrap();
        assert_eq!(omega_of(&m).unwrap(), 1.0);
        for kz in [-3.5f64, 0.0, 0.25, 7.0] {
            let m = ModeSpec::superluminal(1.3, kz, params(1.3)).unwrap();
            assert_eq!(omega_of(&m).unwrap(), f64::abs(kz));
        }
    }

    #[test]
    fn imaginary_frequency_names_minimum_kz() {
        let err = ModeSpec::superluminal(2.0, 1.0, params(1.0)).unwrap_err();
        match err {
            Error::ImaginaryFrequency { min_abs_kz } => {
                assert!((min_abs_kz - 3f64.sqrt()).abs() < 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ModeSpec::subluminal(0.0, 1.0, params(1.0)).is_err());
    }

    #[test]
    fn kz_of_omega_examples() {
        let p = params(1.0);
        assert_eq!(kz_of_omega(0.0, 1.0, &p, Branch::Forward).unwrap(), 0.0);
        assert_eq!(kz_of_omega(1.0, 2.0, &p, Branch::Forward).unwrap(), 2.0);
        assert_eq!(kz_of_omega(1.0, 2.0, &p, Branch::Backward).unwrap(), -2.0);
        assert!(kz_of_omega(0.1, 0.5, &p, Branch::Forward).is_err());
    }

    #[test]
    fn velocity_examples() {
        let p = params(1.0);
        let m = ModeSpec::subluminal(1.0, 0.0, p).unwrap();
        assert_eq!(group_velocity(&m).unwrap(), GroupVelocity::Finite(0.0));

        let m = ModeSpec::superluminal(2.0, 2.0, p).unwrap();
        assert_eq!(group_velocity(&m).unwrap(), GroupVelocity::Finite(2.0));
        assert_eq!(phase_velocity(&m).unwrap(), 0.5);

        let m = ModeSpec::superluminal(2.0, 1000.0, p).unwrap();
        let excess = group_velocity(&m).unwrap().finite().unwrap() - 1.0;
        assert!((1.3e-6..=1.7e-6).contains(&excess), "{excess}");

        let m = ModeSpec::subluminal(1.0, 1.0, params(0.0)).unwrap();
        assert!((phase_velocity(&m).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let vg = group_velocity(&m).unwrap().finite().unwrap();
        assert!((vg - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_frequency_group_velocity_diverges() {
        let m = ModeSpec::superluminal(1.0, 1.0, params(0.0)).unwrap();
        assert_eq!(omega_of(&m).unwrap(), 0.0);
        assert_eq!(group_velocity(&m).unwrap(), GroupVelocity::Diverges);
        let m = ModeSpec::superluminal(1.0, 0.0, params(1.0)).unwrap();
        assert_eq!(group_velocity(&m).unwrap(), GroupVelocity::Diverges);
        assert!(phase_velocity(&m).is_err());
    }

    #[test]
    fn light_speed_is_carried_through() {
        let p = Params::with_light_speed(1.0f64, 3.0).unwrap();
        let m = ModeSpec::superluminal(2.0, 2.0, p).unwrap();
        let w = omega_of(&m).unwrap();
        assert_eq!(w, 3.0);
        let vg = group_velocity(&m).unwrap().finite().unwrap();
        assert!((vg * phase_velocity(&m).unwrap() - 9.0).abs() < 1e-13);
        assert!(vg > 3.0);
    }

    #[test]
    fn superluminal_group_velocity_decreases_toward_c() {
        let p = params(1.0);
        let mut prev = f64::INFINITY;
        let mut kz = 1.8;
        while kz < 1e6 {
            let m = ModeSpec::superluminal(2.0, kz, p).unwrap();
            let vg = group_velocity(&m).unwrap().finite().unwrap();
            assert!(vg > 1.0 && vg < prev, "kz = {kz}");
            prev = vg;
            kz *= 1.3;
        }
    }

    #[test]
    fn single_precision_instantiation() {
        let p = Params::new(1.0f32).unwrap();
        let m = ModeSpec::superluminal(2.0f32, 2.0, p).unwrap();
        assert_eq!(omega_of(&m).unwrap(), 1.0f32);
    }

    fn central_difference(mode: &ModeSpec<f64>) -> f64 {
        let kz = mode.kz();
        let h = 1e-6 * kz.abs().max(1.0);
        let up = omega_of(&mode.with_kz(kz + h).unwrap()).unwrap();
        let down = omega_of(&mode.with_kz(kz - h).unwrap()).unwrap();
        (up - down) / (2.0 * h)
    }

    proptest! {
        #[test]
        fn product_of_velocities_is_c_squared(
            q in 0.01f64..10.0, kz in 0.01f64..100.0, mu in 0.0f64..5.0, c in 0.5f64..3.0, sub in any::<bool>()
        ) {
            let p = Params::with_light_speed(mu, c).unwrap();
            let mode = if sub {
                ModeSpec::subluminal(q, kz, p).unwrap()
            } else {
                let min = ((q - mu) * (q + mu)).max(0.0).sqrt();
                ModeSpec::superluminal(q, min + kz, p).unwrap()
            };
            let vg = group_velocity(&mode).unwrap().finite().unwrap();
            let vp = phase_velocity(&mode).unwrap();
            prop_assert!((vg * vp / (c * c) - 1.0).abs() <= 1e-13);
        }

        #[test]
        fn kz_round_trip(omega in 0.0f64..1e3, mu in 0.0f64..5.0, extra in 0.0f64..5.0) {
            let p = params(mu);
            let q = mu + extra + 1e-9;
            let kz = kz_of_omega(omega, q, &p, Branch::Forward).unwrap();
            let back = omega_of(&ModeSpec::superluminal(q, kz, p).unwrap()).unwrap();
            let scale = omega.max(1e-300);
            prop_assert!(((back - omega) / scale).abs() <= 1e-13 || (back - omega).abs() <= 1e-13 * q,
                "{omega} -> {kz} -> {back}");
        }

        #[test]
        fn branch_relation_reproduced(q in 0.01f64..10.0, kz in -50.0f64..50.0, mu in 0.0f64..5.0) {
            let p = params(mu);
            let m = ModeSpec::subluminal(q, kz, p).unwrap();
            let w = omega_of(&m).unwrap();
            let eig = w * w - kz * kz - mu * mu;
            prop_assert!((eig - q * q).abs() <= 1e-14 * (w * w).max(1.0) * 4.0);
        }

        #[test]
        fn finite_difference_matches_group_velocity(
            q in 0.1f64..5.0, kz in 0.5f64..100.0, mu in 0.0f64..3.0, sub in any::<bool>()
        ) {
            let p = params(mu);
            let mode = if sub {
                ModeSpec::subluminal(q, kz, p).unwrap()
            } else {
                let min = ((q - mu) * (q + mu)).max(0.0).sqrt();
                ModeSpec::superluminal(q, min + kz, p).unwrap()
            };
            let vg = group_velocity(&mode).unwrap().finite().unwrap();
            let fd = central_difference(&mode);
            prop_assert!(((fd - vg) / vg).abs() <= 1e-6, "{fd} vs {vg}");
        }

        /// For `q < mu` a superluminal-family mode is a subluminal mode of a
        /// lighter particle: both share `omega^2 = c^2 (kz^2 + mu^2 - q^2)`.
        #[test]
        fn branches_form_one_family(frac in 0.0f64..0.999, kz in -20.0f64..20.0, mu in 0.1f64..5.0) {
            let q = mu * frac + 1e-6;
            let gap = (mu - q) * (mu + q);
            let big_q = (gap / 2.0).sqrt();
            let lighter = Params::new((gap / 2.0).sqrt()).unwrap();
            let sup = omega_of(&ModeSpec::superluminal(q, kz, params(mu)).unwrap()).unwrap();
            let sub = omega_of(&ModeSpec::subluminal(big_q, kz, lighter).unwrap()).unwrap();
            prop_assert!(((sup - sub) / sub).abs() <= 1e-14, "{sup} vs {sub}");
        }
    }
}
