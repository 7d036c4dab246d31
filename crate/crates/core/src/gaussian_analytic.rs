//! Paraxial closed forms for Gaussian pulses.
//!
//! Under `w, cτ ≫ λ` the spectral integrals reduce to
//!
//! * `ε ≈ c p_z = √π cτ w² E₀² / 8`
//! * `ε - c p_z = √π cτ E₀² / (16 k₀²)`
//! * `m = √π τ w E₀² / (8 ω₀) = (ε / 2πc²)(λ / w)`
//! * `(c - v)/c = m²c⁴ / 2ε² = λ² / (8π² w²)`
//!
//! and the rest-frame energy is `mc²`.

use crate::consts::{c, hbar, wavelength_from_omega};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::spectral::{GaussianPulseParams, Paraxiality};

/// Closed-form description of a Gaussian pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSummary<T> {
    /// erg
    pub energy: T,
    pub photon_count: T,
    /// g
    pub mass: T,
    /// `c - v`, cm/s
    pub speed_deficit: T,
    /// erg
    pub rest_energy: T,
    /// cm
    pub lambda: T,
}

impl<T: Real> PulseSummary<T> {
    pub fn velocity(&self) -> T {
        c::<T>() - self.speed_deficit
    }

    /// `(c - v)/c`.
    pub fn relative_speed_deficit(&self) -> T {
        self.speed_deficit / c::<T>()
    }
}

/// `ε = √π cτ w² E₀² / 8`, erg.
pub fn pulse_energy<T: Real>(params: &GaussianPulseParams<T>) -> T {
    let e0 = params.e0();
    T::PI().sqrt() * params.length() * params.w() * params.w() * e0 * e0 / T::lit(8.0)
}

/// `m = √π τ w E₀² / (8 ω₀)`, g.
pub fn pulse_mass<T: Real>(params: &GaussianPulseParams<T>) -> T {
    let e0 = params.e0();
    T::PI().sqrt() * params.tau() * params.w() * e0 * e0 / (T::lit(8.0) * params.omega0())
}

/// `ε - c p_z = √π cτ E₀² / (16 k₀²)`, erg.
pub fn energy_momentum_deficit<T: Real>(params: &GaussianPulseParams<T>) -> T {
    let e0 = params.e0();
    let k0 = params.k0();
    T::PI().sqrt() * params.length() * e0 * e0 / (T::lit(16.0) * k0 * k0)
}

impl<T: Real> GaussianPulseParams<T> {
    /// Pulse whose amplitude `E₀` gives the paraxial energy `energy` (erg).
    pub fn with_energy(energy: T, tau: T, w: T, omega0: T) -> Result<Self> {
        if !(energy.is_finite() && energy > T::zero()) {
            return Err(Error::domain("pulse energy must be positive and finite"));
        }
        if !(tau > T::zero() && w > T::zero()) {
            return Err(Error::domain("pulse duration and waist must be positive"));
        }
        let e0 = (T::lit(8.0) * energy / (T::PI().sqrt() * c::<T>() * tau * w * w)).sqrt();
        Self::new(e0, tau, w, omega0)
    }
}

/// All closed-form quantities for `params`.
///
/// Refuses pulses whose paraxial ratios exceed
/// [`PARAXIAL_LIMIT`](crate::spectral::PARAXIAL_LIMIT); use the spectral
/// quadrature there instead.
pub fn summarize<T: Real>(params: &GaussianPulseParams<T>) -> Result<PulseSummary<T>> {
    if params.validity_ratio().classify() == Paraxiality::Invalid {
        return Err(Error::domain(
            "closed forms invalid; use spectral oracle (paraxial ratio above limit)",
        ));
    }
    let cl = c::<T>();
    let energy = pulse_energy(params);
    let mass = pulse_mass(params);
    let rest_energy = mass * cl * cl;
    let ratio = rest_energy / energy;
    Ok(PulseSummary {
        energy,
        photon_count: energy / (hbar::<T>() * params.omega0()),
        mass,
        speed_deficit: cl * ratio * ratio / T::lit(2.0),
        rest_energy,
        lambda: params.lambda(),
    })
}

fn check_positive<T: Real>(pairs: &[(&str, T)]) -> Result<()> {
    for &(name, v) in pairs {
        if !(v.is_finite() && v > T::zero()) {
            return Err(Error::domain(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    Ok(())
}

/// `m = (ε / 2πc²)(λ / w)`, g.
pub fn mass_from_energy<T: Real>(energy: T, lambda: T, w: T) -> Result<T> {
    check_positive(&[("energy", energy), ("lambda", lambda), ("w", w)])?;
    let cl = c::<T>();
    Ok(energy / (T::TAU() * cl * cl) * (lambda / w))
}

/// `m = (N ħω₀ / 2πc²)(λ / w)` with `λ = 2πc/ω₀`, g.
pub fn mass_from_photon_number<T: Real>(n: T, omega0: T, w: T) -> Result<T> {
    if !(n.is_finite() && n >= T::zero()) {
        return Err(Error::domain("photon number must be non-negative"));
    }
    check_positive(&[("omega0", omega0), ("w", w)])?;
    let cl = c::<T>();
    let lambda = wavelength_from_omega(omega0);
    Ok(n * hbar::<T>() * omega0 / (T::TAU() * cl * cl) * (lambda / w))
}

/// Half-angle `λ/(4πw)` of the two-beam model with the same mass as a
/// Gaussian pulse of waist `w` (each beam carrying the pulse's photon number).
pub fn equivalent_half_angle<T: Real>(lambda: T, w: T) -> T {
    lambda / (T::lit(4.0) * T::PI() * w)
}

/// `ε₀ = (λ / 2πw) ε_lab`, erg.
pub fn rest_frame_energy<T: Real>(energy_lab: T, lambda: T, w: T) -> Result<T> {
    check_positive(&[("energy", energy_lab), ("lambda", lambda), ("w", w)])?;
    Ok(lambda / (T::TAU() * w) * energy_lab)
}

/// What is held fixed while the waist grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthScaling {
    /// Field amplitude `E₀` fixed: `m ∝ w`.
    FixedAmplitude,
    /// Photon number (pulse energy) fixed: `m ∝ 1/w`.
    FixedPhotonNumber,
}

/// Masses for waists `factor · w`, in input order.
pub fn w_limit_scaling<T: Real>(
    params: &GaussianPulseParams<T>,
    mode: WidthScaling,
    w_factors: &[T],
) -> Result<Vec<(T, T)>> {
    let n = pulse_energy(params) / (hbar::<T>() * params.omega0());
    w_factors
        .iter()
        .map(|&f| {
            if !(f.is_finite() && f > T::zero()) {
                return Err(Error::domain("waist factors must be positive"));
            }
            let w = params.w() * f;
            let m = match mode {
                WidthScaling::FixedAmplitude => pulse_mass(&params.with_w(w)?),
                WidthScaling::FixedPhotonNumber => mass_from_photon_number(n, params.omega0(), w)?,
            };
            Ok((w, m))
        })
        .collect()
}
