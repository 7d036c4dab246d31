//! Design numbers for slow-light measurements.
//!
//! Two settings are covered: photons with a known mean transverse wave
//! vector (the down-conversion case), and a pulse sent through a pair of
//! confocal lenses of focal length `f`. Inside the `2f` region between the
//! lenses the transverse spread is `k⊥ ≈ (w½/f)|k|`, which slows the pulse
//! and delays it relative to an unfocused copy.

use crate::consts::c;
use crate::error::{Error, Result};
use crate::gaussian_analytic::pulse_energy;
use crate::real::Real;
use crate::spectral::GaussianPulseParams;

/// Largest accepted `w½/f`.
pub const MAX_APERTURE_RATIO: f64 = 0.2;
/// `w½/f` above which the small-angle forms are flagged.
pub const WARN_APERTURE_RATIO: f64 = 0.1;
/// `f/L_D` at or above which focusing no longer dominates intrinsic diffraction.
pub const WARN_F_OVER_LD: f64 = 0.1;

/// Speed along the axis for mean squared transverse wave vector
/// `k_perp_sq_mean` (1/cm²) and wavenumber `k_abs` (1/cm):
/// `v = c (1 - ⟨k⊥²⟩ / 2k²)`.
pub fn spdc_speed<T: Real>(k_perp_sq_mean: T, k_abs: T) -> Result<T> {
    if !(k_abs.is_finite() && k_abs > T::zero()) {
        return Err(Error::domain("wavenumber must be positive"));
    }
    let k2 = k_abs * k_abs;
    if !(k_perp_sq_mean >= T::zero() && k_perp_sq_mean < k2) {
        return Err(Error::domain(format!(
            "mean squared transverse wavenumber must lie in [0, k²), got {k_perp_sq_mean}"
        )));
    }
    Ok(c::<T>() * (T::one() - k_perp_sq_mean / (T::lit(2.0) * k2)))
}

/// `⟨k⊥²⟩/|k|² = m²c⁴/ε²` for mass `mass` (g) and energy `energy` (erg).
pub fn mass_kperp_correspondence<T: Real>(mass: T, energy: T) -> Result<T> {
    if !(energy.is_finite() && energy > T::zero()) {
        return Err(Error::domain("energy must be positive"));
    }
    if !(mass.is_finite() && mass >= T::zero()) {
        return Err(Error::domain("mass must be non-negative"));
    }
    let cl = c::<T>();
    let r = mass * cl * cl / energy;
    if r > T::one() {
        return Err(Error::domain("rest energy mc² exceeds total energy"));
    }
    Ok(r * r)
}

/// Inverse of [`mass_kperp_correspondence`]: mass (g) for `⟨k⊥²⟩/|k|²`.
pub fn mass_from_kperp_ratio<T: Real>(ratio: T, energy: T) -> Result<T> {
    if !(energy.is_finite() && energy > T::zero()) {
        return Err(Error::domain("energy must be positive"));
    }
    if !(ratio >= T::zero() && ratio <= T::one()) {
        return Err(Error::domain("transverse ratio must lie in [0, 1]"));
    }
    let cl = c::<T>();
    Ok(energy * ratio.sqrt() / (cl * cl))
}

/// Confocal-lens geometry and the pulse fed into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig<T> {
    w_half: T,
    f: T,
    source: GaussianPulseParams<T>,
}

impl<T: Real> ExperimentConfig<T> {
    /// `w_half` is the half-beam waist outside the lenses and `f` their focal
    /// length, both in cm. Requires `w_half / f ≤ 0.2`.
    pub fn new(w_half: T, f: T, source: GaussianPulseParams<T>) -> Result<Self> {
        if !(w_half.is_finite() && w_half > T::zero()) {
            return Err(Error::domain("half-beam waist must be positive"));
        }
        if !(f.is_finite() && f > T::zero()) {
            return Err(Error::domain("focal length must be positive and finite"));
        }
        if w_half / f > T::lit(MAX_APERTURE_RATIO) {
            return Err(Error::domain(format!(
                "w_half/f = {} exceeds {MAX_APERTURE_RATIO}; small-angle focusing forms invalid",
                w_half / f
            )));
        }
        Ok(Self { w_half, f, source })
    }

    pub fn w_half(&self) -> T {
        self.w_half
    }

    pub fn f(&self) -> T {
        self.f
    }

    pub fn source(&self) -> &GaussianPulseParams<T> {
        &self.source
    }

    pub fn aperture_ratio(&self) -> T {
        self.w_half / self.f
    }

    /// `w½/f` is accepted but above [`WARN_APERTURE_RATIO`].
    pub fn aperture_warning(&self) -> bool {
        self.aperture_ratio() > T::lit(WARN_APERTURE_RATIO)
    }

    /// Diffraction length `L_D = 2π w½² / λ`, cm.
    pub fn diffraction_length(&self) -> T {
        T::TAU() * self.w_half * self.w_half / self.source.lambda()
    }
}

/// `k⊥foc = (w½/f) · 2π/λ`, 1/cm.
pub fn focus_kperp<T: Real>(config: &ExperimentConfig<T>) -> T {
    config.aperture_ratio() * T::TAU() / config.source.lambda()
}

/// Outcome of the two-channel delay experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayReport<T> {
    /// Pulse speed between the lenses, cm/s.
    pub v_channel: T,
    /// `c - v_channel`, computed directly, cm/s.
    pub slowdown: T,
    /// Accumulated spatial delay over `2f`, cm.
    pub delta_l: T,
    /// `delta_l` exceeds the source pulse length `cτ`.
    pub separated: bool,
    /// Invariant mass inside the focusing region, g.
    pub m_fdr: T,
    /// `f / L_D`.
    pub f_over_ld: T,
}

impl<T: Real> DelayReport<T> {
    /// Focusing is not clearly stronger than the beam's own divergence.
    pub fn diffraction_warning(&self) -> bool {
        self.f_over_ld >= T::lit(WARN_F_OVER_LD)
    }
}

/// Speed, delay, separation and mass for the focusing channel.
///
/// Uses `⟨k⊥²⟩ = k⊥foc²`, so `v = c[1 - (w½/f)²/2]` and
/// `δL = 2f(1 - v/c) = w½²/f`. The separation test compares `δL` with the
/// Gaussian length parameter `cτ` of the source.
pub fn channel_delay<T: Real>(config: &ExperimentConfig<T>) -> DelayReport<T> {
    let cl = c::<T>();
    let a = config.aperture_ratio();
    let half_a2 = a * a / T::lit(2.0);
    let slowdown = cl * half_a2;
    let delta_l = config.w_half * config.w_half / config.f;
    let energy = pulse_energy(&config.source);
    DelayReport {
        v_channel: cl - slowdown,
        slowdown,
        delta_l,
        separated: delta_l > config.source.length(),
        m_fdr: energy / (cl * cl) * a,
        f_over_ld: config.f / config.diffraction_length(),
    }
}

/// `L_D / f`; above one, focusing dominates intrinsic divergence.
pub fn gain_over_intrinsic<T: Real>(config: &ExperimentConfig<T>) -> T {
    config.diffraction_length() / config.f
}
