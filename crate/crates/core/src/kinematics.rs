//! Special-relativistic arithmetic on discrete photon four-momenta.
//!
//! Momenta are stored as `(ε/c, p)` in g·cm/s. Every photon is null by
//! construction: a [`PhotonMode`] carries a frequency and a unit direction,
//! never an independent energy and momentum.

use crate::consts::{c, hbar};
use crate::error::{Error, Result};
use crate::real::{compensated_sum, CompensatedSum, Real};

/// Relative slack on `ε/c - |p|` before a sum is declared spacelike.
pub const SPACELIKE_TOL: f64 = 1e-9;

fn null_tol<T: Real>() -> T {
    T::epsilon() * T::lit(64.0)
}

fn unit_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
}

/// Euclidean norm without intermediate overflow or underflow.
fn norm3<T: Real>(v: [T; 3]) -> T {
    v[0].hypot(v[1]).hypot(v[2])
}

/// A four-momentum `(ε/c, px, py, pz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum<T> {
    e_over_c: T,
    p: [T; 3],
}

impl<T: Real> FourMomentum<T> {
    pub fn new(e_over_c: T, px: T, py: T, pz: T) -> Result<Self> {
        if ![e_over_c, px, py, pz].iter().all(|x| x.is_finite()) {
            return Err(Error::domain("four-momentum components must be finite"));
        }
        if e_over_c < T::zero() {
            return Err(Error::domain("four-momentum energy must be non-negative"));
        }
        Ok(Self {
            e_over_c,
            p: [px, py, pz],
        })
    }

    pub fn zero() -> Self {
        Self {
            e_over_c: T::zero(),
            p: [T::zero(); 3],
        }
    }

    pub fn e_over_c(&self) -> T {
        self.e_over_c
    }

    /// Energy in erg.
    pub fn energy(&self) -> T {
        self.e_over_c * c::<T>()
    }

    pub fn momentum(&self) -> [T; 3] {
        self.p
    }

    pub fn px(&self) -> T {
        self.p[0]
    }

    pub fn py(&self) -> T {
        self.p[1]
    }

    pub fn pz(&self) -> T {
        self.p[2]
    }

    pub fn momentum_norm(&self) -> T {
        norm3(self.p)
    }

    /// Minkowski square `(ε/c)² - p²`, in factored form.
    pub fn minkowski_square(&self) -> T {
        let pn = self.momentum_norm();
        (self.e_over_c - pn) * (self.e_over_c + pn)
    }

    /// Boost along `z` into the frame moving with `frame.beta()`.
    pub fn boost(&self, frame: &BoostFrame<T>) -> Self {
        let (b, g) = (frame.beta(), frame.gamma());
        Self {
            e_over_c: g * (self.e_over_c - b * self.p[2]),
            p: [self.p[0], self.p[1], g * (self.p[2] - b * self.e_over_c)],
        }
    }
}

impl<T: Real> std::ops::Add for FourMomentum<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            e_over_c: self.e_over_c + rhs.e_over_c,
            p: [
                self.p[0] + rhs.p[0],
                self.p[1] + rhs.p[1],
                self.p[2] + rhs.p[2],
            ],
        }
    }
}

/// A plane-wave photon mode with mean occupation `weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonMode<T> {
    omega: T,
    direction: [T; 3],
    weight: T,
}

impl<T: Real> PhotonMode<T> {
    pub fn new(omega: T, direction: [T; 3], weight: T) -> Result<Self> {
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(Error::domain(
                "photon frequency must be positive and finite",
            ));
        }
        if !(weight.is_finite() && weight >= T::zero()) {
            return Err(Error::domain(
                "photon weight must be non-negative and finite",
            ));
        }
        let norm = norm3(direction);
        if !((norm - T::one()).abs() <= unit_tol::<T>()) {
            return Err(Error::domain(format!(
                "photon direction must be a unit vector (|n| = {norm})"
            )));
        }
        Ok(Self {
            omega,
            direction,
            weight,
        })
    }

    /// Mode with polar angle `theta` from `+z` and azimuth `phi` (radians).
    pub fn from_angles(omega: T, theta: T, phi: T, weight: T) -> Result<Self> {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::new(omega, [st * cp, st * sp, ct], weight)
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn direction(&self) -> [T; 3] {
        self.direction
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    /// Wave vector `(ω/c) n`, 1/cm.
    pub fn wave_vector(&self) -> [T; 3] {
        let k = self.omega / c::<T>();
        self.direction.map(|n| k * n)
    }

    /// `ħω/c` of a single photon in this mode.
    pub fn photon_momentum(&self) -> T {
        hbar::<T>() * self.omega / c::<T>()
    }

    /// Weighted four-momentum `weight · ħω/c · (1, n)`.
    pub fn four_momentum(&self) -> FourMomentum<T> {
        let e = self.weight * self.photon_momentum();
        FourMomentum {
            e_over_c: e,
            p: self.direction.map(|n| e * n),
        }
    }

    /// `1 - n_z`, evaluated without cancellation near `+z`.
    pub fn axial_deficit(&self) -> T {
        let [nx, ny, nz] = self.direction;
        if nz > T::zero() {
            (nx * nx + ny * ny) / (T::one() + nz)
        } else {
            T::one() - nz
        }
    }
}

/// An ordered, finite collection of photon modes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhotonEnsemble<T> {
    modes: Vec<PhotonMode<T>>,
}

impl<T: Real> PhotonEnsemble<T> {
    pub fn new(modes: Vec<PhotonMode<T>>) -> Self {
        Self { modes }
    }

    pub fn modes(&self) -> &[PhotonMode<T>] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn push(&mut self, mode: PhotonMode<T>) {
        self.modes.push(mode);
    }

    /// `ε/c - pz` summed mode by mode from per-photon deficits.
    ///
    /// Accurate even when the ensemble is nearly collinear with `+z`, where
    /// subtracting the two totals would lose most significant digits.
    pub fn longitudinal_deficit(&self) -> T {
        compensated_sum(
            self.modes
                .iter()
                .map(|m| m.weight * m.photon_momentum() * m.axial_deficit()),
        )
    }

    /// Invariant mass from the per-mode longitudinal deficit:
    /// `m²c² = (ε/c - pz)(ε/c + pz) - p⊥²`.
    pub fn invariant_mass_near_axis(&self) -> Result<T> {
        let total = total_four_momentum(self)?;
        let deficit = self.longitudinal_deficit();
        let sum = total.e_over_c + total.pz();
        let perp_sq = total.px() * total.px() + total.py() * total.py();
        let m2 = deficit * sum - perp_sq;
        let scale = total.e_over_c * total.e_over_c;
        if m2 < -T::lit(SPACELIKE_TOL) * scale {
            return Err(Error::domain("photon sum is spacelike"));
        }
        Ok(m2.max(T::zero()).sqrt() / c::<T>())
    }
}

impl<T> FromIterator<PhotonMode<T>> for PhotonEnsemble<T> {
    fn from_iter<I: IntoIterator<Item = PhotonMode<T>>>(iter: I) -> Self {
        Self {
            modes: iter.into_iter().collect(),
        }
    }
}

/// A Lorentz boost along `z` with velocity `beta · c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostFrame<T> {
    beta: T,
    gamma: T,
}

impl<T: Real> BoostFrame<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !(beta.is_finite() && beta.abs() < T::one()) {
            return Err(Error::domain(format!(
                "boost requires |beta| < 1, got {beta}"
            )));
        }
        let gamma = ((T::one() - beta) * (T::one() + beta)).sqrt().recip();
        Ok(Self { beta, gamma })
    }

    pub fn identity() -> Self {
        Self {
            beta: T::zero(),
            gamma: T::one(),
        }
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }
}

/// Weighted sum of the modes' four-momenta.
pub fn total_four_momentum<T: Real>(ensemble: &PhotonEnsemble<T>) -> Result<FourMomentum<T>> {
    if ensemble.is_empty() {
        return Err(Error::domain("photon ensemble is empty"));
    }
    let mut acc = [CompensatedSum::<T>::new(); 4];
    for mode in ensemble.modes() {
        let p = mode.four_momentum();
        acc[0].add(p.e_over_c);
        for i in 0..3 {
            acc[i + 1].add(p.p[i]);
        }
    }
    let [e, px, py, pz] = acc.map(|s| s.value());
    FourMomentum::new(e, px, py, pz)
}

/// Invariant mass `√((ε/c)² - p²) / c` in grams.
///
/// Exactly zero for null momenta. Spacelike input beyond
/// [`SPACELIKE_TOL`] is rejected.
pub fn invariant_mass<T: Real>(p: &FourMomentum<T>) -> Result<T> {
    let pn = p.momentum_norm();
    let diff = p.e_over_c - pn;
    if diff < -T::lit(SPACELIKE_TOL) * p.e_over_c.max(pn) {
        return Err(Error::domain(format!(
            "spacelike four-momentum: ε/c = {}, |p| = {pn}",
            p.e_over_c
        )));
    }
    let diff = diff.max(T::zero());
    // Separate roots keep f32 clear of underflow in the product.
    Ok(diff.sqrt() * (p.e_over_c + pn).sqrt() / c::<T>())
}

/// Invariant mass from the double sum of Minkowski products `Σᵢⱼ (pᵢ·pⱼ)`.
///
/// For null `pᵢ`, `pᵢ·pⱼ = (εᵢ/c)(εⱼ/c)(1 - nᵢ·nⱼ)` and the diagonal terms
/// vanish identically. `1 - nᵢ·nⱼ` is evaluated as `|nᵢ - nⱼ|²/2`, a sum of
/// non-negative terms.
pub fn pairwise_invariant_mass<T: Real>(ensemble: &PhotonEnsemble<T>) -> Result<T> {
    if ensemble.is_empty() {
        return Err(Error::domain("photon ensemble is empty"));
    }
    let modes = ensemble.modes();
    // Products of photon momenta underflow in f32; work relative to the largest.
    let scale = modes
        .iter()
        .map(|m| m.weight * m.photon_momentum())
        .fold(T::zero(), T::max);
    if scale == T::zero() {
        return Ok(T::zero());
    }
    let mut acc = CompensatedSum::new();
    for (i, a) in modes.iter().enumerate() {
        let ea = a.weight * a.photon_momentum() / scale;
        for b in &modes[i + 1..] {
            let eb = b.weight * b.photon_momentum() / scale;
            let d: T = (0..3)
                .map(|k| (a.direction[k] - b.direction[k]).powi(2))
                .fold(T::zero(), |s, x| s + x);
            // Off-diagonal pair counted twice; |Δn|²/2 · 2 = |Δn|².
            acc.add(ea * eb * d);
        }
    }
    Ok(scale * acc.value().max(T::zero()).sqrt() / c::<T>())
}

/// Centroid velocity along `z`, `v = c · pz / (ε/c)`, cm/s.
pub fn ensemble_velocity<T: Real>(p: &FourMomentum<T>) -> Result<T> {
    if !(p.e_over_c > T::zero()) {
        return Err(Error::domain("velocity undefined for zero energy"));
    }
    Ok(c::<T>() * p.pz() / p.e_over_c)
}

/// Boosts a single photon; the weight is frame independent.
pub fn boost_photon<T: Real>(mode: &PhotonMode<T>, frame: &BoostFrame<T>) -> PhotonMode<T> {
    if frame.beta == T::zero() {
        return *mode;
    }
    let (b, g) = (frame.beta, frame.gamma);
    let [nx, ny, nz] = mode.direction;
    // 1 - β n_z, split so that n_z → 1 keeps its digits.
    let doppler = if nz > T::zero() {
        (T::one() - b) + b * mode.axial_deficit()
    } else {
        T::one() - b * nz
    };
    let direction = [nx / g, ny / g, nz - b].map(|x| x / doppler);
    PhotonMode {
        omega: g * mode.omega * doppler,
        direction,
        weight: mode.weight,
    }
}

pub fn boost_ensemble<T: Real>(
    ensemble: &PhotonEnsemble<T>,
    frame: &BoostFrame<T>,
) -> PhotonEnsemble<T> {
    ensemble
        .modes()
        .iter()
        .map(|m| boost_photon(m, frame))
        .collect()
}

/// The `z`-boost in which the total `pz` vanishes.
///
/// With no transverse momentum the boosted energy is `mc²`.
pub fn rest_frame<T: Real>(p: &FourMomentum<T>) -> Result<BoostFrame<T>> {
    let m = invariant_mass(p)?;
    let pn = p.momentum_norm();
    if p.e_over_c <= T::zero() || p.e_over_c - pn <= null_tol::<T>() * p.e_over_c || m <= T::zero()
    {
        return Err(Error::domain("no rest frame for null momentum"));
    }
    BoostFrame::new(p.pz() / p.e_over_c)
}
