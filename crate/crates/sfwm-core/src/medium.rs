//! Linear and third-order response of a driven three-level Λ medium.
//!
//! Levels: |1⟩ and |2⟩ are long-lived lower states split by ω₂₁, |3⟩ is
//! the excited state at ω₃₁ above |1⟩. A pump field (Rabi frequency Ω_p,
//! detuning Δ_p from the 1–3 transition) and a coupling field (Ω_c, Δ_c
//! from the 2–3 transition) drive the medium. Spontaneously emitted
//! anti-Stokes photons propagate through this medium in one of two
//! frequency modes:
//!
//! - `as` — near ω₃₁ + Δ_c, with the **coupling** acting as its dressing
//!   field (electromagnetically induced transparency window),
//! - `as′` — near ω₃₁ + Δ_p + ω₂₁, dressed by the **pump**.
//!
//! The susceptibilities are expressed through two detunings: the
//! one-photon detuning δ_e = ω − ω₃₁ and the two-photon (Raman) detuning
//! δ_R = (ω − ω_d) − ω₂₁, where ω_d is the dressing-field frequency.
//! Poles of both response functions lie strictly in the lower half of
//! the complex frequency plane (causal, passive medium): the imaginary
//! part of χ⁽¹⁾ is non-negative for every real frequency, so the medium
//! only ever absorbs.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::constants::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Atomic-medium parameters. All frequencies are angular (rad/s); SI
/// units throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MediumParams {
    /// Excited-state decay rate Γ (rad/s); half-width of the optical line.
    pub gamma_e: f64,
    /// Ground-state coherence decay rate γ (rad/s); γ < Γ.
    pub gamma_g: f64,
    /// Lower-doublet splitting ω₂₁ (rad/s).
    pub omega_21: f64,
    /// Wavelength of the 1–3 transition (m).
    pub lambda_31: f64,
    /// Number density N/V (m⁻³).
    pub density: f64,
    /// Medium length along the propagation axis (m).
    pub length: f64,
    /// Transverse beam area (m²). Carried for configuration completeness;
    /// the shipped response model does not depend on it.
    pub cross_section: f64,
    /// Steady-state background population of |1⟩.
    pub pop_11: f64,
    /// Steady-state background population of |2⟩; pop_11 + pop_22 = 1.
    pub pop_22: f64,
}

impl Default for MediumParams {
    /// Cold ⁸⁵Rb D1 baseline: Γ = 2π·5.75 MHz, γ = 2π·10 kHz,
    /// ω₂₁ = 2π·3 GHz, λ₃₁ = 795 nm, N/V = 5·10¹⁸ m⁻³, L = 100 µm,
    /// all background population in |1⟩.
    fn default() -> Self {
        use std::f64::consts::TAU;
        MediumParams {
            gamma_e: TAU * 5.75e6,
            gamma_g: TAU * 10e3,
            omega_21: TAU * 3e9,
            lambda_31: 795e-9,
            density: 5e18,
            length: 100e-6,
            cross_section: 1.0,
            pop_11: 1.0,
            pop_22: 0.0,
        }
    }
}

impl MediumParams {
    /// Check structural requirements: strictly positive rates, lengths
    /// and wavelength; γ < Γ; populations in [0,1] summing to 1 (within
    /// 10⁻¹²); non-negative density.
    pub fn validate(&self) -> Result<()> {
        let pos = [
            (self.gamma_e, "gamma_e"),
            (self.gamma_g, "gamma_g"),
            (self.omega_21, "omega_21"),
            (self.lambda_31, "lambda_31"),
            (self.length, "length"),
            (self.cross_section, "cross_section"),
        ];
        for (v, name) in pos {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        if self.density < 0.0 || !self.density.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "density must be finite and non-negative, got {}",
                self.density
            )));
        }
        if self.gamma_g >= self.gamma_e {
            return Err(Error::InvalidParameter(format!(
                "gamma_g must be smaller than gamma_e ({} >= {})",
                self.gamma_g, self.gamma_e
            )));
        }
        for (v, name) in [(self.pop_11, "pop_11"), (self.pop_22, "pop_22")] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        if (self.pop_11 + self.pop_22 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "pop_11 + pop_22 must equal 1, got {}",
                self.pop_11 + self.pop_22
            )));
        }
        Ok(())
    }

    /// Angular frequency of the 1–3 transition, ω₃₁ = 2πc/λ₃₁.
    pub fn omega_31(&self) -> f64 {
        std::f64::consts::TAU * SPEED_OF_LIGHT / self.lambda_31
    }

    /// Angular frequency of the 2–3 transition, ω₃₂ = ω₃₁ − ω₂₁.
    pub fn omega_32(&self) -> f64 {
        self.omega_31() - self.omega_21
    }

    /// Electric-dipole moment μ of the optical transition (C·m), fixed by
    /// the spontaneous decay rate: Γ = μ²ω₃₁³/(3πε₀ħc³).
    pub fn dipole_moment(&self) -> f64 {
        let w = self.omega_31();
        (3.0 * std::f64::consts::PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3) * self.gamma_e
            / (w * w * w))
            .sqrt()
    }

    /// Collective light–matter coupling rate (N/V)·μ²/(ε₀ħ) (rad/s); the
    /// natural strength scale of both χ⁽¹⁾ and χ⁽³⁾.
    pub fn coupling_rate(&self) -> f64 {
        let mu = self.dipole_moment();
        self.density * mu * mu / (EPSILON_0 * HBAR)
    }
}

/// Classical driving-field parameters. Rabi frequencies are non-negative
/// angular frequencies; detunings are signed. Pump detuning is referenced
/// to the 1–3 transition, coupling detuning to the 2–3 transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveFields {
    /// Pump Rabi frequency Ω_p (rad/s).
    pub rabi_p: f64,
    /// Coupling Rabi frequency Ω_c (rad/s).
    pub rabi_c: f64,
    /// Pump detuning Δ_p = ω_p − ω₃₁ (rad/s).
    pub det_p: f64,
    /// Coupling detuning Δ_c = ω_c − ω₃₂ (rad/s).
    pub det_c: f64,
}

impl DriveFields {
    /// Check that Rabi frequencies are finite and non-negative and
    /// detunings finite.
    pub fn validate(&self) -> Result<()> {
        for (v, name) in [(self.rabi_p, "rabi_p"), (self.rabi_c, "rabi_c")] {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        for (v, name) in [(self.det_p, "det_p"), (self.det_c, "det_c")] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Absolute pump frequency ω_p = ω₃₁ + Δ_p.
    pub fn omega_p(&self, medium: &MediumParams) -> f64 {
        medium.omega_31() + self.det_p
    }

    /// Absolute coupling frequency ω_c = ω₃₂ + Δ_c.
    pub fn omega_c(&self, medium: &MediumParams) -> f64 {
        medium.omega_32() + self.det_c
    }

    /// Pump electric-field amplitude E_p = ħΩ_p/μ (V/m).
    pub fn field_p(&self, medium: &MediumParams) -> f64 {
        HBAR * self.rabi_p / medium.dipole_moment()
    }

    /// Coupling electric-field amplitude E_c = ħΩ_c/μ (V/m).
    pub fn field_c(&self, medium: &MediumParams) -> f64 {
        HBAR * self.rabi_c / medium.dipole_moment()
    }
}

/// The two anti-Stokes propagation modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Mode near ω₃₁ + Δ_c, dressed by the coupling field.
    AntiStokes,
    /// Mode near ω₃₁ + Δ_p + ω₂₁, dressed by the pump field.
    AntiStokesPrime,
}

/// The four spontaneous four-wave-mixing channels.
///
/// - `A`: two pump photons are not involved — absorb pump, emit Stokes
///   ω_s, absorb coupling, emit anti-Stokes into mode `as`.
/// - `B`: obtained from `A` by the exchange c → p; emits into `as′`
///   against the same Stokes frequency ω_s.
/// - `C`: obtained from `A` by c ↔ p; emits into `as′` against the
///   second Stokes frequency ω_s′.
/// - `D`: obtained from `B` by p → c; emits into `as` against ω_s′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Process {
    A,
    B,
    C,
    D,
}

impl Process {
    /// Which anti-Stokes mode this channel emits into.
    pub fn mode(self) -> Mode {
        match self {
            Process::A | Process::D => Mode::AntiStokes,
            Process::B | Process::C => Mode::AntiStokesPrime,
        }
    }
}

/// Which response function a [`SusceptibilitySample`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SusceptibilityKind {
    /// χ⁽¹⁾ of the coupling-dressed anti-Stokes mode.
    Chi1AntiStokes,
    /// χ⁽¹⁾ of the pump-dressed anti-Stokes mode.
    Chi1AntiStokesPrime,
    /// χ⁽³⁾ of channel A.
    Chi3A,
    /// χ⁽³⁾ of channel B.
    Chi3B,
    /// χ⁽³⁾ of channel C.
    Chi3C,
    /// χ⁽³⁾ of channel D.
    Chi3D,
}

/// A susceptibility value tagged with the frequency it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SusceptibilitySample {
    /// Complex susceptibility (dimensionless for χ⁽¹⁾, m²/V² for χ⁽³⁾).
    pub value: C64,
    /// Anti-Stokes angular frequency of evaluation (rad/s).
    pub omega: f64,
    /// Which response function this sample belongs to.
    pub kind: SusceptibilityKind,
}

/// Medium-response provider. The shipped default is the steady-state
/// Λ-model, [`LambdaModel`]; alternative providers (tabulated data,
/// richer level structures) can be substituted anywhere a response is
/// consumed.
pub trait SusceptibilityModel: Send + Sync {
    /// Linear susceptibility of the given anti-Stokes mode at angular
    /// frequency `omega`.
    fn chi1(
        &self,
        medium: &MediumParams,
        drives: &DriveFields,
        mode: Mode,
        omega: f64,
    ) -> Result<C64>;

    /// Third-order susceptibility of the given channel, evaluated at the
    /// anti-Stokes angular frequency `omega_anti` of that channel.
    fn chi3(
        &self,
        medium: &MediumParams,
        drives: &DriveFields,
        process: Process,
        omega_anti: f64,
    ) -> Result<C64>;
}

/// Steady-state susceptibilities of the driven Λ medium.
///
/// Both responses share one resonance structure: an optical pole of
/// width Γ/2 split by the dressing field, and a narrow two-photon
/// feature of width γ. Channel pairs (A,B) and (C,D) are connected by
/// the textual exchange of the two driving fields, which this
/// implementation realises literally by routing all four channels
/// through one parameterised kernel.
#[derive(Debug, Clone, Copy, Default)]
pub struct LambdaModel;

impl LambdaModel {
    /// χ⁽¹⁾ in detuning space:
    ///
    /// ```text
    /// χ⁽¹⁾(δ_e, δ_R) = −(N μ²ρ₁₁⁰/ε₀ħ) (δ_R + iγ) /
    ///                  [ (δ_e + iΓ/2)(δ_R + iγ) − |Ω_d|²/4 ]
    /// ```
    ///
    /// with δ_e the one-photon and δ_R the two-photon detuning and Ω_d
    /// the dressing Rabi frequency. The overall sign makes the medium
    /// passive: Im χ⁽¹⁾ = (Nμ²ρ₁₁⁰/ε₀ħ)·[Γ/2·(δ_R²+γ²) + γ|Ω_d|²/4]/|den|²
    /// ≥ 0 at every real frequency. Under (δ_e, δ_R) → (−δ_e, −δ_R) the
    /// value maps to −χ*, the reflection symmetry of a dressed line.
    pub fn chi1_kernel(
        medium: &MediumParams,
        rabi_dress: f64,
        delta_e: f64,
        delta_r: f64,
    ) -> C64 {
        let strength = medium.coupling_rate() * medium.pop_11;
        let raman = C64::new(delta_r, medium.gamma_g);
        let optical = C64::new(delta_e, medium.gamma_e / 2.0);
        let den = optical * raman - rabi_dress * rabi_dress / 4.0;
        -strength * raman / den
    }

    /// χ⁽³⁾ in detuning space:
    ///
    /// ```text
    /// χ⁽³⁾ = −(N μ⁴ρ₁₁⁰/ε₀ħ³) / { (Δ_leg + iΓ/2) ·
    ///         [ (δ_R + iγ)(δ_e + iΓ/2) − |Ω_d|²/4 ] }
    /// ```
    ///
    /// `det_leg` is the detuning of the first absorbed driving photon
    /// (Δ_p for channels A and B, Δ_c for C and D); `rabi_dress`/`delta_r`
    /// belong to the dressing field of the emitting anti-Stokes mode.
    /// All four channels call this one kernel, so exchanging the driving
    /// fields maps the channels into each other exactly.
    pub fn chi3_kernel(
        medium: &MediumParams,
        det_leg: f64,
        rabi_dress: f64,
        delta_e: f64,
        delta_r: f64,
    ) -> C64 {
        let mu = medium.dipole_moment();
        let strength =
            medium.density * mu.powi(4) / (EPSILON_0 * HBAR * HBAR * HBAR) * medium.pop_11;
        let leg = C64::new(det_leg, medium.gamma_e / 2.0);
        let raman = C64::new(delta_r, medium.gamma_g);
        let optical = C64::new(delta_e, medium.gamma_e / 2.0);
        let den = leg * (raman * optical - rabi_dress * rabi_dress / 4.0);
        -strength / den
    }

    /// Dressing Rabi frequency and absolute dressing-field frequency for
    /// an anti-Stokes mode.
    fn dressing(medium: &MediumParams, drives: &DriveFields, mode: Mode) -> (f64, f64) {
        match mode {
            Mode::AntiStokes => (drives.rabi_c, drives.omega_c(medium)),
            Mode::AntiStokesPrime => (drives.rabi_p, drives.omega_p(medium)),
        }
    }
}

impl SusceptibilityModel for LambdaModel {
    fn chi1(
        &self,
        medium: &MediumParams,
        drives: &DriveFields,
        mode: Mode,
        omega: f64,
    ) -> Result<C64> {
        medium.validate()?;
        drives.validate()?;
        if omega <= 0.0 || !omega.is_finite() {
            return Err(Error::Domain(format!(
                "probe frequency must be finite and positive, got {omega}"
            )));
        }
        let (rabi_d, omega_d) = Self::dressing(medium, drives, mode);
        let delta_e = omega - medium.omega_31();
        let delta_r = (omega - omega_d) - medium.omega_21;
        Ok(Self::chi1_kernel(medium, rabi_d, delta_e, delta_r))
    }

    fn chi3(
        &self,
        medium: &MediumParams,
        drives: &DriveFields,
        process: Process,
        omega_anti: f64,
    ) -> Result<C64> {
        medium.validate()?;
        drives.validate()?;
        if omega_anti <= 0.0 || !omega_anti.is_finite() {
            return Err(Error::Domain(format!(
                "anti-Stokes frequency must be finite and positive, got {omega_anti}"
            )));
        }
        let det_leg = match process {
            Process::A | Process::B => drives.det_p,
            Process::C | Process::D => drives.det_c,
        };
        let (rabi_d, omega_d) = Self::dressing(medium, drives, process.mode());
        let delta_e = omega_anti - medium.omega_31();
        let delta_r = (omega_anti - omega_d) - medium.omega_21;
        Ok(Self::chi3_kernel(
            medium, det_leg, rabi_d, delta_e, delta_r,
        ))
    }
}

/// Linear susceptibility of an anti-Stokes mode (default Λ-model),
/// tagged with frequency and kind.
pub fn chi1(
    medium: &MediumParams,
    drives: &DriveFields,
    mode: Mode,
    omega: f64,
) -> Result<SusceptibilitySample> {
    let value = LambdaModel.chi1(medium, drives, mode, omega)?;
    let kind = match mode {
        Mode::AntiStokes => SusceptibilityKind::Chi1AntiStokes,
        Mode::AntiStokesPrime => SusceptibilityKind::Chi1AntiStokesPrime,
    };
    Ok(SusceptibilitySample { value, omega, kind })
}

/// Third-order susceptibility of a channel (default Λ-model), tagged
/// with frequency and kind.
pub fn chi3(
    medium: &MediumParams,
    drives: &DriveFields,
    process: Process,
    omega_anti: f64,
) -> Result<SusceptibilitySample> {
    let value = LambdaModel.chi3(medium, drives, process, omega_anti)?;
    let kind = match process {
        Process::A => SusceptibilityKind::Chi3A,
        Process::B => SusceptibilityKind::Chi3B,
        Process::C => SusceptibilityKind::Chi3C,
        Process::D => SusceptibilityKind::Chi3D,
    };
    Ok(SusceptibilitySample {
        value,
        omega: omega_anti,
        kind,
    })
}

/// Complex wavevector k(ω) = (ω/c)·√(1 + χ⁽¹⁾(ω)) (principal branch).
/// In vacuum (χ = 0) this reduces to ω/c exactly.
pub fn wavevector(
    medium: &MediumParams,
    drives: &DriveFields,
    mode: Mode,
    omega: f64,
) -> Result<C64> {
    let chi = LambdaModel.chi1(medium, drives, mode, omega)?;
    Ok((C64::new(1.0, 0.0) + chi).sqrt() * (omega / SPEED_OF_LIGHT))
}

/// Single-pass intensity transmission T(ω) = exp(−Im[χ⁽¹⁾(ω)]·ωL/c),
/// clamped to [0, 1].
pub fn transmission(
    medium: &MediumParams,
    drives: &DriveFields,
    mode: Mode,
    omega: f64,
) -> Result<f64> {
    let chi = LambdaModel.chi1(medium, drives, mode, omega)?;
    let t = (-chi.im * omega * medium.length / SPEED_OF_LIGHT).exp();
    Ok(t.clamp(0.0, 1.0))
}
