//! Energy-conserving frequency quads and pair amplitudes of the four
//! spontaneous four-wave-mixing channels.
//!
//! Each channel absorbs two driving photons and emits a Stokes /
//! anti-Stokes pair. With co-propagating beams the emission of the pair
//! {ω_s, ω_anti} occurs with probability amplitude
//!
//! ```text
//! f_l = −i √(ω_anti ω_s)/(4πc) · χ⁽³⁾_l · E₁E₂ · sinc(Δk_l L/2) · L ,
//! ```
//!
//! where E₁E₂ is the product of the absorbed driving-field amplitudes
//! (E_p E_c for A, E_p² for B, E_c E_p for C, E_c² for D) and Δk_l is
//! the longitudinal wavevector mismatch. Drives and the Stokes photon
//! are treated as propagating at their vacuum wavevectors; only the
//! anti-Stokes photon picks up the medium's dispersion.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::medium::{
    wavevector, DriveFields, LambdaModel, MediumParams, Process, SusceptibilityModel,
};

/// An energy-conserving set of the four frequencies participating in one
/// channel: two absorbed driving photons (`omega_in1` absorbed on the
/// detuned leg first, then `omega_in2`), the emitted Stokes photon and
/// the emitted anti-Stokes photon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyQuad {
    /// Channel this quad belongs to.
    pub process: Process,
    /// Stokes angular frequency (rad/s).
    pub omega_stokes: f64,
    /// Anti-Stokes angular frequency (rad/s).
    pub omega_anti: f64,
    /// First absorbed driving photon (rad/s).
    pub omega_in1: f64,
    /// Second absorbed driving photon (rad/s).
    pub omega_in2: f64,
}

impl FrequencyQuad {
    /// Energy-conservation residual (ω_in1 + ω_in2) − ω_s − ω_anti,
    /// evaluated in the same association order used by
    /// [`conserved_quad`], so constructed quads return exactly 0.0.
    pub fn energy_residual(&self) -> f64 {
        ((self.omega_in1 + self.omega_in2) - self.omega_stokes) - self.omega_anti
    }
}

/// Longitudinal phase mismatch and its sinc suppression factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseMatch {
    /// Wavevector mismatch Δk = Re k_anti + k_s − k_in1 − k_in2 (1/m).
    pub delta_k: f64,
    /// sinc(Δk·L/2).
    pub sinc_factor: f64,
}

/// A channel's pair-emission probability amplitude together with the
/// frequency quad it was evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairAmplitude {
    /// Channel.
    pub process: Process,
    /// The energy-conserving quad.
    pub quad: FrequencyQuad,
    /// Complex amplitude f_l (dimensionless).
    pub value: C64,
}

/// Build the energy-conserving quad of a channel from its Stokes
/// frequency:
///
/// - A: ω_as = ω_c + ω_p − ω_s (inputs ω_p, ω_c),
/// - B: ω_as′ = 2ω_p − ω_s (inputs ω_p, ω_p),
/// - C: ω_as′ = ω_p + ω_c − ω_s′ (inputs ω_c, ω_p),
/// - D: ω_as = 2ω_c − ω_s′ (inputs ω_c, ω_c).
///
/// The anti-Stokes frequency is computed as (in1 + in2) − ω_s, the same
/// association [`FrequencyQuad::energy_residual`] uses, so conservation
/// holds to the last bit. A non-positive anti-Stokes frequency is a
/// domain error.
pub fn conserved_quad(
    medium: &MediumParams,
    drives: &DriveFields,
    process: Process,
    omega_stokes: f64,
) -> Result<FrequencyQuad> {
    medium.validate()?;
    drives.validate()?;
    if omega_stokes <= 0.0 || !omega_stokes.is_finite() {
        return Err(Error::Domain(format!(
            "Stokes frequency must be finite and positive, got {omega_stokes}"
        )));
    }
    let wp = drives.omega_p(medium);
    let wc = drives.omega_c(medium);
    let (in1, in2) = match process {
        Process::A => (wp, wc),
        Process::B => (wp, wp),
        Process::C => (wc, wp),
        Process::D => (wc, wc),
    };
    let omega_anti = (in1 + in2) - omega_stokes;
    if omega_anti <= 0.0 || !omega_anti.is_finite() {
        return Err(Error::Domain(format!(
            "anti-Stokes frequency is non-positive ({omega_anti}) for this Stokes frequency"
        )));
    }
    Ok(FrequencyQuad {
        process,
        omega_stokes,
        omega_anti,
        omega_in1: in1,
        omega_in2: in2,
    })
}

/// Normalised sinc, sin(x)/x with sinc(0) = 1.
///
/// Near zero the direct quotient loses accuracy, so |x| < 10⁻⁴ switches
/// to the Taylor series 1 − x²/6 + x⁴/120 (error < 10⁻²⁸ there). The
/// function is even by construction.
pub fn sinc(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        let x2 = ax * ax;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        ax.sin() / ax
    }
}

/// Longitudinal wavevector mismatch of a quad.
///
/// Drives and Stokes propagate at vacuum wavevectors ω/c; the
/// anti-Stokes photon at Re k(ω_anti) inside the medium. Algebraically
///
/// ```text
/// Δk = [Re k(ω_anti) − ω_anti/c] − r/c ,
/// ```
///
/// where r is the quad's energy residual: the vacuum parts of the four
/// wavevectors cancel through energy conservation. Evaluating the
/// cancelled form keeps Δk exactly zero for a conserved quad in vacuum
/// (χ⁽¹⁾ = 0) instead of leaving round-off residue of order ulp(ω/c).
pub fn delta_k(medium: &MediumParams, drives: &DriveFields, quad: &FrequencyQuad) -> Result<f64> {
    let k = wavevector(medium, drives, quad.process.mode(), quad.omega_anti)?;
    let vacuum = quad.omega_anti / SPEED_OF_LIGHT;
    Ok((k.re - vacuum) - quad.energy_residual() / SPEED_OF_LIGHT)
}

/// Phase mismatch and sinc factor of a quad across the medium length.
pub fn phase_match(
    medium: &MediumParams,
    drives: &DriveFields,
    quad: &FrequencyQuad,
) -> Result<PhaseMatch> {
    let dk = delta_k(medium, drives, quad)?;
    Ok(PhaseMatch {
        delta_k: dk,
        sinc_factor: sinc(dk * medium.length / 2.0),
    })
}

/// Pair-emission amplitude of a channel at a given Stokes frequency,
/// using the default Λ-model response.
pub fn pair_amplitude(
    medium: &MediumParams,
    drives: &DriveFields,
    process: Process,
    omega_stokes: f64,
) -> Result<PairAmplitude> {
    pair_amplitude_with_model(&LambdaModel, medium, drives, process, omega_stokes)
}

/// Pair-emission amplitude with a caller-supplied medium response.
pub fn pair_amplitude_with_model(
    model: &dyn SusceptibilityModel,
    medium: &MediumParams,
    drives: &DriveFields,
    process: Process,
    omega_stokes: f64,
) -> Result<PairAmplitude> {
    let quad = conserved_quad(medium, drives, process, omega_stokes)?;
    let chi3 = model.chi3(medium, drives, process, quad.omega_anti)?;
    let pm = phase_match(medium, drives, &quad)?;
    let ep = drives.field_p(medium);
    let ec = drives.field_c(medium);
    let fields = match process {
        Process::A => ep * ec,
        Process::B => ep * ep,
        Process::C => ec * ep,
        Process::D => ec * ec,
    };
    let scale = (quad.omega_anti * quad.omega_stokes).sqrt()
        / (4.0 * std::f64::consts::PI * SPEED_OF_LIGHT);
    let value = C64::new(0.0, -1.0) * chi3 * (scale * fields * pm.sinc_factor * medium.length);
    Ok(PairAmplitude {
        process,
        quad,
        value,
    })
}
