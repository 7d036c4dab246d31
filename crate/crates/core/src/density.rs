//! Local Lorentz-invariant mass density of an electromagnetic field.
//!
//! `μ = √(u² - S²/c²) / c²` with `u = (E² + H²)/8π` and `S = (c/4π) E×H`,
//! identical to `(1/8πc²) √((E² - H²)² + 4(E·H)²)`.
//!
//! The volume integral of `μ` is not the invariant mass of a pulse and is
//! not frame independent; nothing here relates the two.

use crate::consts::c;
use crate::error::{Error, Result};
use crate::real::Real;

/// Field strengths at one space-time point: `e` in statvolt/cm, `h` in gauss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub e: [T; 3],
    pub h: [T; 3],
}

fn dot<T: Real>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl<T: Real> FieldSample<T> {
    pub fn new(e: [T; 3], h: [T; 3]) -> Result<Self> {
        let s = Self { e, h };
        s.check_finite()?;
        Ok(s)
    }

    fn check_finite(&self) -> Result<()> {
        if self.e.iter().chain(&self.h).all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::domain("field sample has non-finite components"))
        }
    }

    /// Energy density `(E² + H²)/8π`, erg/cm³.
    pub fn energy_density(&self) -> T {
        (dot(self.e, self.e) + dot(self.h, self.h)) / (T::lit(8.0) * T::PI())
    }

    /// Poynting vector `(c/4π) E×H`, erg/(cm²·s).
    pub fn poynting(&self) -> [T; 3] {
        let k = c::<T>() / (T::lit(4.0) * T::PI());
        cross(self.e, self.h).map(|x| k * x)
    }

    /// True when `E² = H²` and `E·H = 0` within `tol` relative to `E² + H²`.
    pub fn is_null(&self, tol: T) -> bool {
        let e2 = dot(self.e, self.e);
        let h2 = dot(self.h, self.h);
        let scale = e2 + h2;
        (e2 - h2).abs() <= tol * scale && dot(self.e, self.h).abs() <= tol * scale
    }
}

/// `μ` from the energy density and Poynting flux, g/cm³.
///
/// `u² - S²/c²` is factored as `(u - |S|/c)(u + |S|/c)`. The first factor
/// is `((|E| - |H|)² + 2(|E||H| - |E×H|))/8π`, and Lagrange's identity turns
/// the bracket into `(E·H)²/(|E||H| + |E×H|)`, so no large terms cancel.
pub fn mass_density<T: Real>(sample: &FieldSample<T>) -> Result<T> {
    sample.check_finite()?;
    let cl = c::<T>();
    let e = dot(sample.e, sample.e).sqrt();
    let h = dot(sample.h, sample.h).sqrt();
    let s = cross(sample.e, sample.h);
    let flux = s[0].hypot(s[1]).hypot(s[2]);
    let eh = dot(sample.e, sample.h);
    let two = T::lit(2.0);
    let denom = e * h + flux;
    let mut gap = (e - h) * (e - h);
    if denom > T::zero() {
        gap = gap + two * eh * (eh / denom);
    }
    let sum = e * e + h * h + two * flux;
    if !(gap.is_finite() && sum.is_finite()) {
        return Err(Error::domain("field sample overflows the energy density"));
    }
    Ok(gap.sqrt() * sum.sqrt() / (T::lit(8.0) * T::PI() * cl * cl))
}

/// `μ` from the field invariants, `(1/8πc²) √((E² - H²)² + 4(E·H)²)`, g/cm³.
pub fn mass_density_invariant<T: Real>(sample: &FieldSample<T>) -> Result<T> {
    sample.check_finite()?;
    let cl = c::<T>();
    let a = dot(sample.e, sample.e) - dot(sample.h, sample.h);
    let b = T::lit(2.0) * dot(sample.e, sample.h);
    Ok(a.hypot(b) / (T::lit(8.0) * T::PI() * cl * cl))
}

/// Element-wise [`mass_density`], failing with the index of the first bad sample.
pub fn mass_density_grid<T: Real>(samples: &[FieldSample<T>]) -> Result<Vec<T>, (usize, Error)> {
    samples
        .iter()
        .enumerate()
        .map(|(i, s)| mass_density(s).map_err(|e| (i, e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::SPEED_OF_LIGHT as C;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    const UNIT: f64 = 1.0 / (8.0 * PI * C * C);

    #[test]
    fn plane_wave_is_massless() {
        let e0 = 3.7;
        let s = FieldSample::new([e0, 0.0, 0.0], [0.0, e0, 0.0]).unwrap();
        assert_eq!(mass_density(&s).unwrap(), 0.0);
        assert_eq!(mass_density_invariant(&s).unwrap(), 0.0);
        assert!(s.is_null(1e-15));
    }

    #[test]
    fn pure_electric_sample() {
        let e0 = 2.5;
        let s = FieldSample::new([e0, 0.0, 0.0], [0.0; 3]).unwrap();
        let want = e0 * e0 * UNIT;
        assert!(rel(mass_density(&s).unwrap(), want) < 1e-15);
        assert!(rel(mass_density_invariant(&s).unwrap(), want) < 1e-15);
        assert!(!s.is_null(1e-6));
    }

    #[test]
    fn crossed_unequal_fields() {
        let s = FieldSample::new([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        assert!(rel(mass_density(&s).unwrap(), 3.0 * UNIT) < 1e-15);
        assert!(rel(mass_density_invariant(&s).unwrap(), 3.0 * UNIT) < 1e-15);
    }

    #[test]
    fn parallel_fields_use_dot_product_term() {
        // E ∥ H with E² = H²: only the 4(E·H)² term survives.
        let s = FieldSample::new([0.0, 0.0, 1.5], [0.0, 0.0, 1.5]).unwrap();
        assert!(rel(mass_density(&s).unwrap(), 2.0 * 1.5 * 1.5 * UNIT) < 1e-15);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(FieldSample::new([f64::NAN, 0.0, 0.0], [0.0; 3]).is_err());
        let s = FieldSample {
            e: [0.0; 3],
            h: [f64::INFINITY, 0.0, 0.0],
        };
        assert!(mass_density(&s).is_err());
    }

    #[test]
    fn grid_examples() {
        let pw = FieldSample::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        assert_eq!(mass_density_grid(&[pw; 4]).unwrap(), vec![0.0; 4]);
        assert!(mass_density_grid::<f64>(&[]).unwrap().is_empty());

        // Standing wave at t = 0: H vanishes.
        let (e0, k) = (1.3, 2.0);
        let zs: Vec<f64> = (0..9).map(|i| i as f64 * 0.37).collect();
        let samples: Vec<_> = zs
            .iter()
            .map(|&z| {
                let omega_t: f64 = 0.0;
                FieldSample::new(
                    [e0 * (k * z).cos() * omega_t.cos(), 0.0, 0.0],
                    [0.0, -e0 * (k * z).sin() * omega_t.sin(), 0.0],
                )
                .unwrap()
            })
            .collect();
        let mu = mass_density_grid(&samples).unwrap();
        for (m, &z) in mu.iter().zip(&zs) {
            let want = e0 * e0 * (k * z).cos().powi(2) * UNIT;
            assert!((m - want).abs() <= 1e-15 * e0 * e0 * UNIT);
        }
    }

    #[test]
    fn grid_reports_failing_index() {
        let ok = FieldSample::new([1.0, 0.0, 0.0], [0.0; 3]).unwrap();
        let bad = FieldSample {
            e: [f64::NAN, 0.0, 0.0],
            h: [0.0; 3],
        };
        let (i, _) = mass_density_grid(&[ok, ok, bad, ok]).unwrap_err();
        assert_eq!(i, 2);
    }
}
