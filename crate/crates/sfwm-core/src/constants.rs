//! Physical constants (CODATA 2018), SI units.

/// Reduced Planck constant ħ (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity ε₀ (F/m).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Speed of light in vacuum c (m/s). Exact.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
