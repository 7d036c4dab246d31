use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pulsemass::consts::{omega_from_wavelength, HBAR, SPEED_OF_LIGHT as C};
use pulsemass::density::{mass_density, mass_density_invariant, FieldSample};
use pulsemass::gaussian_analytic::{pulse_mass, summarize};
use pulsemass::kinematics::{
    boost_ensemble, boost_photon, ensemble_velocity, invariant_mass, pairwise_invariant_mass,
    rest_frame, total_four_momentum,
};
use pulsemass::spectral::{
    field_components, gaussian_spectral_density, spectral_moments, GaussianPulseParams,
};
use pulsemass::{BoostFrame64, PhotonEnsemble64, PhotonMode64};

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn mode() -> impl Strategy<Value = PhotonMode64> {
    (1e14..1e16f64, 0.0..PI, 0.0..2.0 * PI, 0.1..10.0f64)
        .prop_map(|(w, th, ph, wt)| PhotonMode64::from_angles(w, th, ph, wt).unwrap())
}

fn ensemble(max: usize) -> impl Strategy<Value = PhotonEnsemble64> {
    prop::collection::vec(mode(), 2..=max).prop_map(PhotonEnsemble64::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boosts_preserve_mass(ens in ensemble(20), beta in -0.99..0.99f64) {
        let frame = BoostFrame64::new(beta).unwrap();
        let m = pairwise_invariant_mass(&ens).unwrap();
        let m2 = pairwise_invariant_mass(&boost_ensemble(&ens, &frame)).unwrap();
        prop_assert!(rel(m, m2) <= 1e-10, "{m} vs {m2}");
    }

    #[test]
    fn boosted_photon_stays_null(m in mode(), beta in -0.99..0.99f64) {
        let b = boost_photon(&m, &BoostFrame64::new(beta).unwrap());
        let p = b.four_momentum();
        prop_assert!(p.minkowski_square().abs() <= 1e-12 * p.e_over_c().powi(2));
        let n = b.direction();
        prop_assert!(((n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn both_mass_forms_agree(ens in ensemble(100)) {
        let total = total_four_momentum(&ens).unwrap();
        let a = invariant_mass(&total).unwrap();
        let b = pairwise_invariant_mass(&ens).unwrap();
        prop_assert!(rel(a, b) <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn ensembles_are_subluminal(ens in ensemble(20)) {
        let v = ensemble_velocity(&total_four_momentum(&ens).unwrap()).unwrap();
        prop_assert!(v.abs() < C);
    }

    #[test]
    fn rest_frame_contract(ens in ensemble(20)) {
        let total = total_four_momentum(&ens).unwrap();
        let frame = rest_frame(&total).unwrap();
        let boosted = total_four_momentum(&boost_ensemble(&ens, &frame)).unwrap();
        prop_assert!(boosted.pz().abs() <= 1e-10 * boosted.e_over_c());
        let m = invariant_mass(&total).unwrap();
        // ε' = √(m²c⁴ + c²p⊥²) after a pure z-boost.
        let p_perp = total.px().hypot(total.py());
        let want = (m * C * C).hypot(C * p_perp);
        prop_assert!(rel(boosted.energy(), want) <= 1e-10);
    }
}

#[test]
fn transverse_free_rest_frame_energy_is_rest_energy() {
    let omega = omega_from_wavelength(1e-4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let mut modes = Vec::new();
        for _ in 0..5 {
            let th = rng.gen_range(0.0..PI);
            let w = omega * rng.gen_range(0.5..2.0);
            modes.push(PhotonMode64::from_angles(w, th, 0.0, 1.0).unwrap());
            modes.push(PhotonMode64::from_angles(w, th, PI, 1.0).unwrap());
        }
        let ens = PhotonEnsemble64::new(modes);
        let total = total_four_momentum(&ens).unwrap();
        let m = invariant_mass(&total).unwrap();
        let frame = rest_frame(&total).unwrap();
        let rest = total_four_momentum(&boost_ensemble(&ens, &frame)).unwrap();
        assert!(rel(rest.energy(), m * C * C) <= 1e-10);
    }
}

#[test]
fn single_precision_two_photon_mass() {
    use pulsemass::{PhotonEnsemble32, PhotonMode32};
    let omega = omega_from_wavelength(1e-4) as f32;
    let th = 0.3f32;
    let ens = PhotonEnsemble32::new(vec![
        PhotonMode32::from_angles(omega, th, 0.0, 1.0).unwrap(),
        PhotonMode32::from_angles(omega, th, std::f32::consts::PI, 1.0).unwrap(),
    ]);
    let m = pairwise_invariant_mass(&ens).unwrap() as f64;
    let want = 2.0 * HBAR * omega as f64 / (C * C) * (th as f64).sin();
    assert!(rel(m, want) < 1e-5, "{m} vs {want}");
}

#[test]
fn density_forms_agree_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let mut v = || rng.gen_range(-1.0..1.0) * 10f64.powf(rng.gen_range(-3.0..3.0));
        let s = FieldSample::new([v(), v(), v()], [v(), v(), v()]).unwrap();
        worst = worst.max(rel(
            mass_density(&s).unwrap(),
            mass_density_invariant(&s).unwrap(),
        ));
    }
    assert!(worst <= 1e-12, "worst relative disagreement {worst:e}");
}

fn pulse(lw: f64, lct: f64) -> GaussianPulseParams<f64> {
    let lambda = 1e-4;
    GaussianPulseParams::from_wavelength(1.0, lambda / (lct * C), lambda / lw, lambda).unwrap()
}

#[test]
fn quadrature_mass_tracks_closed_form() {
    let mut last = f64::INFINITY;
    for r in [1e-2, 3e-3] {
        let p = pulse(r, r);
        let m = spectral_moments(&gaussian_spectral_density(&p))
            .unwrap()
            .mass();
        let dev = rel(m, pulse_mass(&p));
        assert!(dev <= 5.0 * 2.0 * r * r, "ratio {r}: deviation {dev:e}");
        assert!(last / dev >= 5.0 || last.is_infinite());
        last = dev;
    }
}

#[test]
fn deficit_scales_inverse_square_at_fixed_photon_number() {
    let omega = omega_from_wavelength(1e-4);
    let a = summarize(&GaussianPulseParams::with_energy(1e5, 1e-12, 1.0, omega).unwrap()).unwrap();
    let b = summarize(&GaussianPulseParams::with_energy(1e5, 1e-12, 2.0, omega).unwrap()).unwrap();
    assert!(rel(a.speed_deficit / b.speed_deficit, 4.0) < 1e-12);
    assert!(rel(a.photon_count, b.photon_count) < 1e-15);

    // Same scaling from the quadrature, where the closed form is only leading order.
    let q = |w: f64| {
        let p = GaussianPulseParams::with_energy(1e5, 1e-13, w, omega).unwrap();
        let m = spectral_moments(&gaussian_spectral_density(&p)).unwrap();
        m.deficit / m.energy
    };
    assert!(rel(q(1e-2) / q(2e-2), 4.0) < 1e-2);
}

#[test]
fn mass_monotonic_in_waist_and_wavelength() {
    let mut prev = f64::INFINITY;
    for w in [0.1, 0.2, 0.5, 1.0, 2.0, 5.0] {
        let p =
            GaussianPulseParams::with_energy(1e5, 1e-12, w, omega_from_wavelength(1e-4)).unwrap();
        let m = summarize(&p).unwrap().mass;
        assert!(m < prev);
        prev = m;
    }
    let mut prev = 0.0;
    for lambda in [2e-5, 5e-5, 1e-4, 2e-4, 1e-3] {
        let p = GaussianPulseParams::with_energy(1e5, 1e-12, 1.0, omega_from_wavelength(lambda))
            .unwrap();
        let m = summarize(&p).unwrap().mass;
        assert!(m > prev);
        prev = m;
    }
    // Fixed amplitude: m ∝ w.
    let base = GaussianPulseParams::from_wavelength(1.0, 1e-12, 1.0, 1e-4).unwrap();
    let wide = base.with_w(3.0).unwrap();
    assert!(rel(pulse_mass(&wide) / pulse_mass(&base), 3.0) < 1e-14);
}

#[test]
fn boundary_field_reproduced() {
    let p = pulse(1e-2, 1.0 / 6.0);
    let peak = p.e0();
    for r in [0.0, 0.5, 1.0] {
        for t in [-1.0, 0.0, 0.7] {
            let (r, t) = (r * p.w(), t * p.tau());
            let got = field_components(&p, r, 0.0, t).unwrap().field;
            let want = p.boundary_field(r, t);
            assert!(
                (got - want).abs() <= 1e-4 * peak,
                "r={r} t={t}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn envelope_arrives_after_light_travel_time() {
    let p = pulse(1e-2, 1.0 / 6.0);
    let z = 100.0 * p.length();
    let t0 = z / C;
    let env = |s: f64| {
        field_components(&p, 0.0, z, t0 + s * p.tau())
            .unwrap()
            .envelope()
    };
    let (a, b, c) = (env(-0.2), env(0.0), env(0.2));
    assert!(b > a && b > c);
    // Vertex of the parabola through the three samples, in units of τ.
    let offset = 0.2 * (a - c) / (2.0 * (a - 2.0 * b + c));
    assert!(offset.abs() < 0.02, "peak offset {offset} τ");
}
