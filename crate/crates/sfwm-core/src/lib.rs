//! Heralded generation of single-photon frequency-bin entangled states.
//!
//! A cold three-level Λ medium driven by two classical fields (pump and
//! coupling) supports four spontaneous four-wave-mixing channels. Two of
//! them share the same Stokes frequency, so detecting one Stokes photon
//! cannot reveal which anti-Stokes colour was emitted: the heralded photon
//! is left in a superposition of two frequency bins,
//!
//! ```text
//! |Ψ⟩ = α |1⟩_as |0⟩_as′ + β |0⟩_as |1⟩_as′ .
//! ```
//!
//! This crate computes the linear and third-order response of the medium,
//! the channel pair amplitudes, the heralded state and its negativity
//! (an entanglement monotone based on the partial transpose), the effect
//! of intra-medium absorption modelled as a beam-splitter loss channel,
//! and parameter-space sweeps/optimisation of the resulting merit figures.
//!
//! Internally every frequency, linewidth, Rabi frequency and detuning is
//! an angular frequency in rad/s; lengths are metres, densities m⁻³, and
//! dipole moments C·m (SI throughout).
//!
//! # Module map
//!
//! - [`medium`] — medium/drive parameter sets, χ⁽¹⁾ and χ⁽³⁾ of the Λ
//!   model, complex wavevector, single-pass transmission.
//! - [`amplitudes`] — energy-conserving frequency quads, phase matching,
//!   and per-channel pair amplitudes f_l.
//! - [`herald`] — the heralded two-bin state, its normalisation, purity
//!   negativity and generation probability.
//! - [`loss`] — two-mode density matrix on the {0,1}⊗{0,1} subspace,
//!   beam-splitter absorption channel, lossy negativity.
//! - [`sweep`] — merit-map grids over driving parameters, region
//!   extraction and derivative-free optimisation.

pub mod amplitudes;
pub mod constants;
pub mod error;
pub mod herald;
pub mod loss;
pub mod medium;
pub mod sweep;

pub use error::{Error, Result};
