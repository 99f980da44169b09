//! The heralded single-photon frequency-bin state.
//!
//! Channels A and B emit their Stokes photons into the *same* frequency
//! mode ω_s. Projecting onto a single detected Stokes photon therefore
//! cannot distinguish the two channels, and the anti-Stokes field is
//! left in the two-colour single-photon superposition
//!
//! ```text
//! |Ψ⟩ = α |1⟩_as |0⟩_as′ + β |0⟩_as |1⟩_as′ ,
//! α = f_A/√𝒩 ,  β = f_B/√𝒩 ,  𝒩 = |f_A|² + |f_B|² ,
//! ```
//!
//! heralded with generation probability 𝒫 = 𝒩 per pump/coupling mode
//! pair. Channels C and D share the other Stokes frequency ω_s′ and are
//! excluded from the heralded state by the projection itself; their
//! emission strengths are exposed as diagnostics.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::amplitudes::pair_amplitude;
use crate::error::{Error, Result};
use crate::medium::{DriveFields, MediumParams, Process};

/// The heralded two-bin state and the frequencies of its bins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeraldedState {
    /// Amplitude of the |1⟩_as|0⟩_as′ component.
    pub alpha: C64,
    /// Amplitude of the |0⟩_as|1⟩_as′ component.
    pub beta: C64,
    /// Pre-normalisation weight 𝒩 = |f_A|² + |f_B|².
    pub norm: f64,
    /// Generation probability 𝒫 of the heralded state; equals 𝒩 in
    /// this perturbative model.
    pub gen_prob: f64,
    /// Anti-Stokes frequency of the `as` bin (rad/s).
    pub omega_as: f64,
    /// Anti-Stokes frequency of the `as′` bin (rad/s).
    pub omega_as_prime: f64,
}

/// Stokes frequency heralding channels A and B on two-photon resonance,
/// ω_s* = ω_p − ω₂₁. At this herald the anti-Stokes bins sit exactly at
/// the centres of their dressed transparency features.
pub fn heralded_stokes_frequency(medium: &MediumParams, drives: &DriveFields) -> f64 {
    drives.omega_p(medium) - medium.omega_21
}

/// The mirror Stokes frequency ω_s′* = ω_c − ω₂₁ that puts the excluded
/// channels C and D on their own two-photon resonance; used for
/// diagnostics.
pub fn diagnostic_stokes_frequency(medium: &MediumParams, drives: &DriveFields) -> f64 {
    drives.omega_c(medium) - medium.omega_21
}

/// Construct the heralded state for a Stokes detection at `omega_stokes`.
///
/// Returns [`Error::NoHerald`] when both pair amplitudes vanish (dark
/// configuration: no pump, no atoms, or no population in |1⟩).
pub fn herald(
    medium: &MediumParams,
    drives: &DriveFields,
    omega_stokes: f64,
) -> Result<HeraldedState> {
    let fa = pair_amplitude(medium, drives, Process::A, omega_stokes)?;
    let fb = pair_amplitude(medium, drives, Process::B, omega_stokes)?;
    let norm = fa.value.norm_sqr() + fb.value.norm_sqr();
    if norm == 0.0 {
        return Err(Error::NoHerald);
    }
    let root = norm.sqrt();
    Ok(HeraldedState {
        alpha: fa.value / root,
        beta: fb.value / root,
        norm,
        gen_prob: norm,
        omega_as: fa.quad.omega_anti,
        omega_as_prime: fb.quad.omega_anti,
    })
}

/// Negativity measure of the lossless heralded state under partial
/// transposition: NPT = 2|α||β|, reaching 1 for a balanced
/// superposition and 0 for a single-colour photon.
pub fn pure_npt(state: &HeraldedState) -> f64 {
    2.0 * state.alpha.norm() * state.beta.norm()
}

/// Generation probability 𝒫 = |f_A|² + |f_B|² of the heralded state.
pub fn generation_probability(state: &HeraldedState) -> f64 {
    state.gen_prob
}

/// Emission strengths of the excluded channels C and D, evaluated at
/// their own two-photon-resonant Stokes frequency ω_s′*.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelDiagnostics {
    /// |f_C|² at ω_s′*.
    pub f_c_sq: f64,
    /// |f_D|² at ω_s′*.
    pub f_d_sq: f64,
    /// The diagnostic Stokes frequency ω_s′* (rad/s).
    pub omega_stokes_prime: f64,
}

/// Compute the excluded-channel diagnostics.
pub fn channel_diagnostics(
    medium: &MediumParams,
    drives: &DriveFields,
) -> Result<ChannelDiagnostics> {
    let wsp = diagnostic_stokes_frequency(medium, drives);
    let fc = pair_amplitude(medium, drives, Process::C, wsp)?;
    let fd = pair_amplitude(medium, drives, Process::D, wsp)?;
    Ok(ChannelDiagnostics {
        f_c_sq: fc.value.norm_sqr(),
        f_d_sq: fd.value.norm_sqr(),
        omega_stokes_prime: wsp,
    })
}
