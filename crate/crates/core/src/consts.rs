//! Physical constants in Gaussian-CGS units.

use crate::real::Real;

/// Speed of light in vacuum, cm/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;

/// Reduced Planck constant, erg·s.
pub const HBAR: f64 = 1.054_571_817e-27;

#[inline]
pub fn c<T: Real>() -> T {
    T::lit(SPEED_OF_LIGHT)
}

#[inline]
pub fn hbar<T: Real>() -> T {
    T::lit(HBAR)
}

/// Vacuum wavelength (cm) for an angular frequency (rad/s).
#[inline]
pub fn wavelength_from_omega<T: Real>(omega: T) -> T {
    T::TAU() * c::<T>() / omega
}

/// Angular frequency (rad/s) for a vacuum wavelength (cm).
#[inline]
pub fn omega_from_wavelength<T: Real>(lambda: T) -> T {
    T::TAU() * c::<T>() / lambda
}
