//! Beam-splitter absorption channel and lossy entanglement measure.
//!
//! Absorption of each anti-Stokes mode is modelled by a beam splitter
//! of intensity transmission T that mixes the mode with an empty
//! environment port; tracing out the environment yields the attenuated,
//! noisier state. Since the heralded state carries at most one photon
//! per mode, the dynamics closes on the two-mode subspace spanned by
//! {|0,0⟩, |0,1⟩, |1,0⟩, |1,1⟩} (occupation order: |n_as, n_as′⟩),
//! where each mode's channel acts through the Kraus pair
//!
//! ```text
//! K₀ = |0⟩⟨0| + √T |1⟩⟨1| ,   K₁ = √(1−T) |0⟩⟨1| .
//! ```
//!
//! Entanglement of the resulting mixed state is quantified by NPT —
//! twice the absolute sum of the negative eigenvalues of the partial
//! transpose — which reduces to 2|α||β| for the lossless state and
//! decays as losses convert the heralded photon into vacuum noise.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herald::{herald, HeraldedState};
use crate::medium::{transmission, DriveFields, MediumParams, Mode};

/// Hermiticity / unit-trace tolerance for density-matrix validation.
pub const DENSITY_MATRIX_TOL: f64 = 1e-12;

/// Eigenvalue floor for positive semidefiniteness: λ ≥ −1e-10.
pub const PSD_EIGENVALUE_FLOOR: f64 = -1e-10;

/// A two-mode density matrix on the {0,1}⊗{0,1} photon-number subspace.
/// Basis order: |0,0⟩, |0,1⟩, |1,0⟩, |1,1⟩ with |n_as, n_as′⟩, i.e.
/// index = 2·n_as + n_as′.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoModeDensityMatrix {
    m: Matrix4<C64>,
}

impl TwoModeDensityMatrix {
    /// Wrap a raw 4×4 matrix. No validation is performed here; call
    /// [`TwoModeDensityMatrix::validate`] to check it.
    pub fn from_matrix(m: Matrix4<C64>) -> Self {
        TwoModeDensityMatrix { m }
    }

    /// Density matrix |Ψ⟩⟨Ψ| of the pure two-bin state
    /// α|1,0⟩ + β|0,1⟩. The amplitudes are used as given; a normalised
    /// pair yields a unit-trace matrix.
    pub fn from_pure_state(alpha: C64, beta: C64) -> Self {
        let mut m = Matrix4::zeros();
        // |1,0⟩ is index 2, |0,1⟩ is index 1
        m[(2, 2)] = alpha * alpha.conj();
        m[(1, 1)] = beta * beta.conj();
        m[(2, 1)] = alpha * beta.conj();
        m[(1, 2)] = beta * alpha.conj();
        TwoModeDensityMatrix { m }
    }

    /// Density matrix of a heralded state.
    pub fn from_heralded(state: &HeraldedState) -> Self {
        Self::from_pure_state(state.alpha, state.beta)
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.m
    }

    /// Matrix element ⟨i|ρ|j⟩ in the basis order of the type.
    pub fn element(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    /// Trace of the matrix.
    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// Check Hermiticity and unit trace to 10⁻¹² and positive
    /// semidefiniteness with eigenvalues above −10⁻¹⁰.
    pub fn validate(&self) -> Result<()> {
        let herm_dev = (self.m - self.m.adjoint()).norm();
        if herm_dev > DENSITY_MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "Hermiticity violated by {herm_dev:e}"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > DENSITY_MATRIX_TOL || tr.im.abs() > DENSITY_MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {tr} instead of 1"
            )));
        }
        let eigs = self.m.symmetric_eigen().eigenvalues;
        if let Some(lam) = eigs.iter().find(|l| **l < PSD_EIGENVALUE_FLOOR) {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {lam:e}"
            )));
        }
        Ok(())
    }

    /// Partial transpose over the second (as′) mode:
    /// ⟨n a′|ρ^{T₂}|m b′⟩ = ⟨n b′|ρ|m a′⟩.
    pub fn partial_transpose(&self) -> Matrix4<C64> {
        let mut pt = Matrix4::zeros();
        for n in 0..2 {
            for ap in 0..2 {
                for m in 0..2 {
                    for bp in 0..2 {
                        pt[(2 * n + ap, 2 * m + bp)] = self.m[(2 * n + bp, 2 * m + ap)];
                    }
                }
            }
        }
        pt
    }
}

/// Single-mode Kraus pair of the beam-splitter loss channel.
fn kraus(t: f64) -> [nalgebra::Matrix2<C64>; 2] {
    let k0 = nalgebra::Matrix2::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(t.sqrt(), 0.0),
    );
    let k1 = nalgebra::Matrix2::new(
        C64::new(0.0, 0.0),
        C64::new((1.0 - t).sqrt(), 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    );
    [k0, k1]
}

/// Pass a two-mode state through independent beam-splitter loss
/// channels with intensity transmissions `t_as` and `t_as_prime`.
/// Transmissions outside [0, 1] are parameter errors.
pub fn apply_loss(
    rho: &TwoModeDensityMatrix,
    t_as: f64,
    t_as_prime: f64,
) -> Result<TwoModeDensityMatrix> {
    for (t, name) in [(t_as, "t_as"), (t_as_prime, "t_as_prime")] {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!(
                "{name} must lie in [0, 1], got {t}"
            )));
        }
    }
    let ka = kraus(t_as);
    let kb = kraus(t_as_prime);
    let mut out = Matrix4::zeros();
    for a in &ka {
        for b in &kb {
            let k = a.kronecker(b);
            out += k * rho.m * k.adjoint();
        }
    }
    Ok(TwoModeDensityMatrix { m: out })
}

/// NPT of a (possibly mixed) two-mode state: twice the absolute sum of
/// the negative eigenvalues of the partial transpose. The input is
/// validated first.
pub fn lossy_npt(rho: &TwoModeDensityMatrix) -> Result<f64> {
    rho.validate()?;
    let eigs = rho.partial_transpose().symmetric_eigen().eigenvalues;
    let total: f64 = eigs.iter().filter(|l| **l < 0.0).map(|l| -l).sum();
    // + 0.0 canonicalizes the -0.0 an empty float sum starts from
    Ok(2.0 * total + 0.0)
}

/// Full merit record of one heralded operating point with losses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossyHeraldRecord {
    /// NPT of the absorbed state.
    pub npt: f64,
    /// Generation probability of the heralded state.
    pub gen_prob: f64,
    /// Transmission of the `as` bin at its own frequency.
    pub t_as: f64,
    /// Transmission of the `as′` bin at its own frequency.
    pub t_as_prime: f64,
    /// Lossless bin amplitude α.
    pub alpha: C64,
    /// Lossless bin amplitude β.
    pub beta: C64,
}

/// Herald a state at `omega_stokes`, absorb each bin at its own
/// frequency, and measure the remaining entanglement.
pub fn heralded_lossy_npt(
    medium: &MediumParams,
    drives: &DriveFields,
    omega_stokes: f64,
) -> Result<LossyHeraldRecord> {
    let state = herald(medium, drives, omega_stokes)?;
    let t_as = transmission(medium, drives, Mode::AntiStokes, state.omega_as)?;
    let t_asp = transmission(medium, drives, Mode::AntiStokesPrime, state.omega_as_prime)?;
    let rho = TwoModeDensityMatrix::from_heralded(&state);
    let lossy = apply_loss(&rho, t_as, t_asp)?;
    Ok(LossyHeraldRecord {
        npt: lossy_npt(&lossy)?,
        gen_prob: state.gen_prob,
        t_as,
        t_as_prime: t_asp,
        alpha: state.alpha,
        beta: state.beta,
    })
}
