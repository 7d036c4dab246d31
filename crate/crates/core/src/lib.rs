//! Invariant mass and propagation speed of photon ensembles and diffracting
//! Gaussian light pulses in vacuum.
//!
//! All quantities are in Gaussian-CGS units. Every routine is generic over
//! the scalar type through [`Real`]; the `*64` aliases below fix it to `f64`,
//! the precision the numerical tolerances are calibrated for.
//!
//! * [`kinematics`]: discrete photon four-momenta, boosts and rest frames.
//! * [`spectral`]: k-space photon density of a pulse and its quadrature.
//! * [`gaussian_analytic`]: paraxial closed forms.
//! * [`density`]: local invariant mass density of sampled fields.
//! * [`experiment`]: slow-light and focusing-delay design numbers.

// `!(x > 0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod consts;
pub mod density;
pub mod error;
pub mod experiment;
pub mod gaussian_analytic;
pub mod kinematics;
pub mod quadrature;
pub mod real;
pub mod spectral;

pub use error::{Error, Result};
pub use real::Real;

pub type FourMomentum64 = kinematics::FourMomentum<f64>;
pub type PhotonMode64 = kinematics::PhotonMode<f64>;
pub type PhotonEnsemble64 = kinematics::PhotonEnsemble<f64>;
pub type BoostFrame64 = kinematics::BoostFrame<f64>;
pub type GaussianPulseParams64 = spectral::GaussianPulseParams<f64>;
pub type SpectralDensity64 = spectral::SpectralDensity<f64>;
pub type EnergyMomentum64 = spectral::EnergyMomentum<f64>;
pub type PulseSummary64 = gaussian_analytic::PulseSummary<f64>;
pub type FieldSample64 = density::FieldSample<f64>;
pub type ExperimentConfig64 = experiment::ExperimentConfig<f64>;
pub type DelayReport64 = experiment::DelayReport<f64>;

pub type FourMomentum32 = kinematics::FourMomentum<f32>;
pub type PhotonMode32 = kinematics::PhotonMode<f32>;
pub type PhotonEnsemble32 = kinematics::PhotonEnsemble<f32>;
pub type BoostFrame32 = kinematics::BoostFrame<f32>;
pub type FieldSample32 = density::FieldSample<f32>;
