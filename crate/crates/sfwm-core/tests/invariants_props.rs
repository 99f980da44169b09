//! Property tests for the physics invariants.
//!
//! Each property encodes a statement that must hold across the whole
//! parameter domain, not just at hand-picked points: passivity and
//! reflection symmetry of the linear response, parity of the
//! phase-matching envelope, exact linearity in atom number, and the
//! algebraic behaviour of the loss channel and the NPT measure.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use sfwm_core::loss::{apply_loss, lossy_npt, TwoModeDensityMatrix};
use sfwm_core::medium::{
    chi1, transmission, DriveFields, LambdaModel, MediumParams, Mode,
};
use sfwm_core::sweep::{AxisParam, AxisScale, AxisSpec};

/// A random normalised pair of bin amplitudes.
fn state_strategy() -> impl Strategy<Value = (C64, C64)> {
    (
        -1.0..1.0f64,
        -1.0..1.0f64,
        -1.0..1.0f64,
        -1.0..1.0f64,
    )
        .prop_filter_map("state must not be null", |(ar, ai, br, bi)| {
            let a = C64::new(ar, ai);
            let b = C64::new(br, bi);
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            (norm > 1e-3).then(|| (a / norm, b / norm))
        })
}

proptest! {
    /// The linear response never amplifies: Im χ⁽¹⁾ ≥ 0 everywhere.
    #[test]
    fn linear_response_is_passive(
        rabi in 0.0..12.0f64,
        de in -30.0..30.0f64,
        dr in -30.0..30.0f64,
    ) {
        let m = MediumParams::default();
        let g = m.gamma_e;
        let chi = LambdaModel::chi1_kernel(&m, rabi * g, de * g, dr * g);
        // Analytically Im ≥ 0 exactly; allow rounding of the complex
        // division to trespass by an ulp of the magnitude.
        prop_assert!(chi.im >= -1e-15 * chi.norm());
    }

    /// χ⁽¹⁾(−δ_e, −δ_R) = −χ⁽¹⁾(δ_e, δ_R)* — the lineshape is a mirror
    /// image across the dressed resonance.
    #[test]
    fn linear_response_has_reflection_symmetry(
        rabi in 0.0..12.0f64,
        de in -30.0..30.0f64,
        dr in -30.0..30.0f64,
    ) {
        let m = MediumParams::default();
        let g = m.gamma_e;
        let plus = LambdaModel::chi1_kernel(&m, rabi * g, de * g, dr * g);
        let minus = LambdaModel::chi1_kernel(&m, rabi * g, -de * g, -dr * g);
        let mirror = -plus.conj();
        prop_assert!((minus - mirror).norm() <= 1e-12 * plus.norm());
    }

    /// Both kernels are exactly linear in the atom number density.
    #[test]
    fn response_is_exactly_linear_in_density(
        rabi in 0.0..12.0f64,
        de in -30.0..30.0f64,
        dr in -30.0..30.0f64,
        leg in -30.0..30.0f64,
    ) {
        let m = MediumParams::default();
        let g = m.gamma_e;
        let m2 = MediumParams { density: 2.0 * m.density, ..m.clone() };
        let single1 = LambdaModel::chi1_kernel(&m, rabi * g, de * g, dr * g);
        let double1 = LambdaModel::chi1_kernel(&m2, rabi * g, de * g, dr * g);
        prop_assert_eq!(double1, single1 * 2.0);
        let single3 = LambdaModel::chi3_kernel(&m, leg * g, rabi * g, de * g, dr * g);
        let double3 = LambdaModel::chi3_kernel(&m2, leg * g, rabi * g, de * g, dr * g);
        prop_assert_eq!(double3, single3 * 2.0);
    }

    /// Transmission is a probability for any drive configuration.
    #[test]
    fn transmission_is_a_probability(
        rabi_p in 0.0..10.0f64,
        rabi_c in 0.0..10.0f64,
        det_p in -10.0..10.0f64,
        det_c in -10.0..10.0f64,
        probe in -40.0..40.0f64,
    ) {
        let m = MediumParams::default();
        let g = m.gamma_e;
        let d = DriveFields {
            rabi_p: rabi_p * g,
            rabi_c: rabi_c * g,
            det_p: det_p * g,
            det_c: det_c * g,
        };
        for mode in [Mode::AntiStokes, Mode::AntiStokesPrime] {
            let t = transmission(&m, &d, mode, m.omega_31() + probe * g).unwrap();
            prop_assert!((0.0..=1.0).contains(&t));
        }
    }

    /// The χ⁽¹⁾ accessor agrees with the kernel it wraps, i.e. the
    /// detuning translation is the only thing the wrapper adds.
    #[test]
    fn chi1_wrapper_matches_kernel(
        rabi_c in 0.0..10.0f64,
        det_c in -10.0..10.0f64,
        probe in -40.0..40.0f64,
    ) {
        let m = MediumParams::default();
        let g = m.gamma_e;
        let d = DriveFields {
            rabi_p: 1.5 * g,
            rabi_c: rabi_c * g,
            det_p: -g,
            det_c: det_c * g,
        };
        let omega = m.omega_31() + probe * g;
        let chi = chi1(&m, &d, Mode::AntiStokes, omega).unwrap().value;
        let delta_e = omega - m.omega_31();
        let delta_r = (omega - d.omega_c(&m)) - m.omega_21;
        let kernel = LambdaModel::chi1_kernel(&m, d.rabi_c, delta_e, delta_r);
        prop_assert_eq!(chi, kernel);
    }

    /// sinc is even and bounded by one.
    #[test]
    fn sinc_is_even_and_bounded(x in -1e6..1e6f64) {
        let s = sfwm_core::amplitudes::sinc(x);
        prop_assert_eq!(s.to_bits(), sfwm_core::amplitudes::sinc(-x).to_bits());
        prop_assert!(s.abs() <= 1.0);
    }

    /// The loss channel outputs a valid density matrix and never
    /// increases the entanglement.
    #[test]
    fn loss_is_a_valid_channel(
        (alpha, beta) in state_strategy(),
        t_as in 0.0..=1.0f64,
        t_asp in 0.0..=1.0f64,
    ) {
        let rho = TwoModeDensityMatrix::from_pure_state(alpha, beta);
        let lossy = apply_loss(&rho, t_as, t_asp).unwrap();
        lossy.validate().unwrap();
        let npt = lossy_npt(&lossy).unwrap();
        prop_assert!((0.0..=1.0 + 1e-9).contains(&npt));
        let pure = 2.0 * alpha.norm() * beta.norm();
        prop_assert!(npt <= pure + 1e-12);
    }

    /// NPT is monotone in each transmission.
    #[test]
    fn npt_is_monotone_in_transmission(
        (alpha, beta) in state_strategy(),
        t_lo in 0.0..=1.0f64,
        t_hi in 0.0..=1.0f64,
        t_other in 0.0..=1.0f64,
    ) {
        let (t_lo, t_hi) = if t_lo <= t_hi { (t_lo, t_hi) } else { (t_hi, t_lo) };
        let rho = TwoModeDensityMatrix::from_pure_state(alpha, beta);
        let lo = lossy_npt(&apply_loss(&rho, t_lo, t_other).unwrap()).unwrap();
        let hi = lossy_npt(&apply_loss(&rho, t_hi, t_other).unwrap()).unwrap();
        prop_assert!(lo <= hi + 1e-12);
    }

    /// Swapping the two bins together with their transmissions leaves
    /// the entanglement unchanged.
    #[test]
    fn npt_is_swap_invariant(
        (alpha, beta) in state_strategy(),
        t_as in 0.0..=1.0f64,
        t_asp in 0.0..=1.0f64,
    ) {
        let fwd = apply_loss(&TwoModeDensityMatrix::from_pure_state(alpha, beta), t_as, t_asp)
            .unwrap();
        let swp = apply_loss(&TwoModeDensityMatrix::from_pure_state(beta, alpha), t_asp, t_as)
            .unwrap();
        let a = lossy_npt(&fwd).unwrap();
        let b = lossy_npt(&swp).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    /// A global phase on the state changes nothing measurable.
    #[test]
    fn global_phase_is_unobservable(
        (alpha, beta) in state_strategy(),
        phase in 0.0..std::f64::consts::TAU,
        t_as in 0.0..=1.0f64,
        t_asp in 0.0..=1.0f64,
    ) {
        let u = C64::from_polar(1.0, phase);
        let plain = apply_loss(
            &TwoModeDensityMatrix::from_pure_state(alpha, beta), t_as, t_asp).unwrap();
        let rotated = apply_loss(
            &TwoModeDensityMatrix::from_pure_state(alpha * u, beta * u), t_as, t_asp).unwrap();
        let a = lossy_npt(&plain).unwrap();
        let b = lossy_npt(&rotated).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    /// Axis sampling respects its own contract: values stay inside the
    /// range, increase monotonically, and hit both endpoints exactly.
    #[test]
    fn axis_values_are_ordered_and_bounded(
        min in 0.01..10.0f64,
        span in 0.1..100.0f64,
        points in 2..50usize,
        log in any::<bool>(),
    ) {
        let axis = AxisSpec {
            param: AxisParam::RabiC,
            min,
            max: min + span,
            points,
            scale: if log { AxisScale::Log } else { AxisScale::Linear },
        };
        axis.validate().unwrap();
        let v = axis.values();
        prop_assert_eq!(v.len(), points);
        prop_assert_eq!(v[0], min);
        prop_assert_eq!(v[points - 1], min + span);
        for w in v.windows(2) {
            prop_assert!(w[0] < w[1]);
            prop_assert!(w[0] >= min && w[1] <= min + span);
        }
    }
}
