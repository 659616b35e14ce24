//! Unit systems, declared physical constants and the central tolerance record.

use serde::{Deserialize, Serialize};

/// CODATA 2018 fine-structure constant.
pub const ALPHA_CODATA_2018: f64 = 7.297_352_569_3e-3;

/// One atomic unit of electric field expressed in V/cm.
pub const FIELD_AU_IN_V_PER_CM: f64 = 5.142_206e9;

/// Gaussian-CGS constants used by the beam simulator.
pub mod cgs {
    /// Elementary charge, esu.
    pub const E_CHARGE: f64 = 4.803_204_25e-10;
    /// Hydrogen atom mass, g.
    pub const M_HYDROGEN: f64 = 1.673_557_5e-24;
    /// Speed of light, cm/s.
    pub const C: f64 = 2.997_924_58e10;
    /// Volts per statvolt.
    pub const VOLTS_PER_STATVOLT: f64 = 299.792_458;
}

/// Convert a field in V/cm to atomic units.
pub fn field_vcm_to_au(e_vcm: f64) -> f64 {
    e_vcm / FIELD_AU_IN_V_PER_CM
}

pub fn field_au_to_vcm(f_au: f64) -> f64 {
    f_au * FIELD_AU_IN_V_PER_CM
}

/// SI field (V/m) to Gaussian statvolt/cm.
pub fn field_si_to_gaussian(e_v_per_m: f64) -> f64 {
    e_v_per_m * 1e-2 / cgs::VOLTS_PER_STATVOLT
}

/// Atomic units: hbar = e = m_e = 1 and c = 1/alpha.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub alpha: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self {
            alpha: ALPHA_CODATA_2018,
        }
    }
}

impl UnitSystem {
    pub fn with_alpha(alpha: f64) -> Option<Self> {
        (alpha > 0.0 && alpha.is_finite()).then_some(Self { alpha })
    }

    pub fn hbar(&self) -> f64 {
        1.0
    }

    pub fn e(&self) -> f64 {
        1.0
    }

    pub fn m_e(&self) -> f64 {
        1.0
    }

    pub fn c(&self) -> f64 {
        1.0 / self.alpha
    }
}

/// Every numerical threshold used by checks and solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// max |M - M^dagger| for matrices flagged hermitian.
    pub hermitian: f64,
    /// Entrywise commutator and Casimir residuals.
    pub commutator: f64,
    /// Hermiticity required on entry to the eigensolver.
    pub eigen_input: f64,
    /// ||M v - lambda v|| relative to ||M||, and eigenvector unitarity.
    pub eigen_residual: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm falls below this times ||M||.
    pub jacobi_off_diagonal: f64,
    /// Eigenvalues closer than this (relative to ||M||) form one degenerate block.
    pub degeneracy: f64,
    /// State norms accepted by `expectation`.
    pub normalization: f64,
    /// Spinor norms.
    pub spinor: f64,
    /// Basis transform unitarity.
    pub unitarity: f64,
    /// Charges must be integers (in units of e) to within this.
    pub charge_integer: f64,
    /// Quantization ratio consistency.
    pub ratio: f64,
    /// Stark eigenvector overlap with its parabolic state.
    pub stark_overlap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            commutator: 1e-12,
            eigen_input: 1e-10,
            eigen_residual: 1e-10,
            jacobi_off_diagonal: 1e-13,
            degeneracy: 1e-9,
            normalization: 1e-10,
            spinor: 1e-12,
            unitarity: 1e-12,
            charge_integer: 1e-10,
            ratio: 1e-12,
            stark_overlap: 1e-10,
        }
    }
}

impl Tolerances {
    /// Tighter check thresholds; solver settings are unchanged.
    pub fn strict() -> Self {
        Self {
            hermitian: 1e-14,
            commutator: 1e-13,
            eigen_residual: 1e-12,
            unitarity: 1e-13,
            charge_integer: 1e-12,
            ratio: 1e-14,
            stark_overlap: 1e-12,
            ..Self::default()
        }
    }
}
