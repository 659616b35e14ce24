//! The magnetic-charge operator `G = (e/hbar) sigma.A` on spin (x) orbital
//! space, and the charges it assigns to parabolic states.
//!
//! Tensor ordering is spin (x) orbital with the spin index slow: basis index
//! `s * n^2 + k` for spin `s` (0 = up) and parabolic index `k`. Charges are in
//! units of `e`, quantization ratios `e g / (hbar c)` in units of `alpha`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::algebra::{basis_vector, expectation, kron, pauli, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::manifold::{build_so4, ParabolicLabel, So4Generators};
use crate::units::{Tolerances, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    up: C64,
    down: C64,
}

impl Spinor {
    pub fn new(up: C64, down: C64, tol: f64) -> Result<Self> {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { up, down })
    }

    pub fn alpha() -> Self {
        Self { up: ONE, down: ZERO }
    }

    pub fn beta() -> Self {
        Self { up: ZERO, down: ONE }
    }

    pub fn up(&self) -> C64 {
        self.up
    }

    pub fn down(&self) -> C64 {
        self.down
    }

    pub fn as_vec(&self) -> Vec<C64> {
        vec![self.up, self.down]
    }
}

impl From<SpinState> for Spinor {
    fn from(s: SpinState) -> Self {
        match s {
            SpinState::Up => Spinor::alpha(),
            SpinState::Down => Spinor::beta(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinState {
    Up,
    Down,
}

impl SpinState {
    pub const BOTH: [SpinState; 2] = [SpinState::Up, SpinState::Down];

    pub fn sign(self) -> f64 {
        match self {
            SpinState::Up => 1.0,
            SpinState::Down => -1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            SpinState::Up => 0,
            SpinState::Down => 1,
        }
    }
}

impl fmt::Display for SpinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinState::Up => "up",
            SpinState::Down => "down",
        })
    }
}

/// `<sigma_1>, <sigma_2>, <sigma_3>` for a spinor.
pub fn pauli_expectations(s: &Spinor, tol: &Tolerances) -> Result<[f64; 3]> {
    let v = s.as_vec();
    let [sx, sy, sz] = pauli();
    Ok([
        expectation(&v, &sx, tol.spinor)?.re,
        expectation(&v, &sy, tol.spinor)?.re,
        expectation(&v, &sz, tol.spinor)?.re,
    ])
}

/// `G = (e/hbar) sum_a sigma_a (x) A_a` on manifold `n`, in units of `e`.
#[derive(Debug, Clone)]
pub struct GOperator {
    pub n: u32,
    pub matrix: ComplexMatrix,
    generators: So4Generators,
}

impl GOperator {
    pub fn generators(&self) -> &So4Generators {
        &self.generators
    }

    pub fn orbital_dim(&self) -> usize {
        self.generators.dim()
    }

    /// Components of `K = L + sigma/2` on the spin-orbital product space.
    pub fn total_angular_momentum(&self) -> [ComplexMatrix; 3] {
        let id_orb = ComplexMatrix::identity(self.orbital_dim());
        let id_spin = ComplexMatrix::identity(2);
        let sig = pauli();
        std::array::from_fn(|a| {
            &kron(&id_spin, &self.generators.l[a]) + &kron(&sig[a], &id_orb).scale_real(0.5)
        })
    }

    /// Largest entry of `G^2 + K^2 - (n^2 - 1/4)`. Fixes the spectrum of `G` to
    /// `0` and `+-sqrt(p (2n - p))` for `p = 1..n-1`.
    pub fn square_identity_defect(&self) -> f64 {
        let k = self.total_angular_momentum();
        let k2 = k.iter().fold(ComplexMatrix::zeros(self.matrix.rows(), self.matrix.cols()), |acc, c| &acc + &(c * c));
        let n = f64::from(self.n);
        let lhs = &(&self.matrix * &self.matrix) + &k2;
        lhs.max_abs_diff(&ComplexMatrix::identity(self.matrix.rows()).scale_real(n * n - 0.25))
    }

    /// `Psi (x) s` in spin-slow ordering.
    pub fn product_state(&self, orbital: &[C64], spin: &Spinor) -> Vec<C64> {
        let mut v = Vec::with_capacity(2 * orbital.len());
        v.extend(orbital.iter().map(|&z| spin.up() * z));
        v.extend(orbital.iter().map(|&z| spin.down() * z));
        v
    }

    /// `<Psi (x) s | G | Psi (x) s>`, in units of `e`.
    pub fn charge_of(&self, orbital: &[C64], spin: &Spinor, tol: &Tolerances) -> Result<f64> {
        let state = self.product_state(orbital, spin);
        let value = expectation(&state, &self.matrix, tol.normalization)?;
        Ok(value.re)
    }

    /// Charge of the parabolic basis state `label` with definite spin.
    pub fn charge_record(
        &self,
        label: &ParabolicLabel,
        spin: SpinState,
        units: &UnitSystem,
        tol: &Tolerances,
    ) -> Result<ChargeRecord> {
        let basis = &self.generators.basis;
        let k = basis.index_of(label).ok_or(Error::InvalidLabel {
            n: label.n(),
            n1: label.n1(),
            n2: label.n2(),
            m: label.m(),
            reason: "label belongs to a different manifold",
        })?;
        let orbital = basis_vector(basis.dim(), k);
        let g = self.charge_of(&orbital, &Spinor::from(spin), tol)?;
        let mut record = ChargeRecord {
            label: *label,
            spin,
            g,
            ratio: 0.0,
        };
        record.ratio = quantization_ratio(&record, units);
        Ok(record)
    }
}

pub fn g_operator(n: u32) -> Result<GOperator> {
    let generators = build_so4(n)?;
    // e/hbar = 1 in atomic units.
    let mut matrix = ComplexMatrix::zeros(2 * generators.dim(), 2 * generators.dim());
    for (sigma, a) in pauli().iter().zip(&generators.a) {
        matrix = &matrix + &kron(sigma, a);
    }
    Ok(GOperator {
        n,
        matrix: matrix.with_hermitian_flag(true),
        generators,
    })
}

/// A state's magnetic charge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeRecord {
    pub label: ParabolicLabel,
    pub spin: SpinState,
    /// Units of `e`.
    pub g: f64,
    /// `e g / (hbar c)` in units of `alpha`.
    pub ratio: f64,
}

/// Charge of one (label, spin) state, evaluated as an expectation of `G`.
pub fn magnetic_charge(label: &ParabolicLabel, spin: SpinState, units: &UnitSystem) -> Result<ChargeRecord> {
    g_operator(label.n())?.charge_record(label, spin, units, &Tolerances::default())
}

/// `e g / (hbar c)` expressed in units of `alpha`.
pub fn quantization_ratio(record: &ChargeRecord, units: &UnitSystem) -> f64 {
    let ratio = units.e() * record.g / (units.hbar() * units.c());
    ratio / units.alpha
}

/// Records for all `2 n^2` (label, spin) states: labels in canonical order,
/// spin up before spin down.
pub fn charge_table(n: u32, units: &UnitSystem, exec: Execution) -> Result<Vec<ChargeRecord>> {
    let g = g_operator(n)?;
    let tol = Tolerances::default();
    let states: Vec<(ParabolicLabel, SpinState)> = g
        .generators
        .basis
        .labels()
        .iter()
        .flat_map(|l| SpinState::BOTH.map(|s| (*l, s)))
        .collect();
    exec.map(&states, |(l, s)| g.charge_record(l, *s, units, &tol))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hermitian_eigendecomposition;

    fn label(n: u32, n1: u32, n2: u32, m: i32) -> ParabolicLabel {
        ParabolicLabel::new(n, n1, n2, m).unwrap()
    }

    #[test]
    fn n1_operator_is_zero() {
        let g = g_operator(1).unwrap();
        assert_eq!(g.matrix.shape(), (2, 2));
        assert_eq!(g.matrix.max_abs(), 0.0);
    }

    #[test]
    fn n2_spectrum_is_zero_and_root_three() {
        // Expectations on product states are integers, eigenvalues are not.
        let g = g_operator(2).unwrap();
        let e = hermitian_eigendecomposition(&g.matrix).unwrap();
        let r3 = 3f64.sqrt();
        let want = [-r3, -r3, 0.0, 0.0, 0.0, 0.0, r3, r3];
        assert_eq!(e.values.len(), want.len());
        for (v, w) in e.values.iter().zip(&want) {
            assert!((v - w).abs() < 1e-10, "{:?}", e.values);
        }
    }

    #[test]
    fn square_identity_holds() {
        for n in 1..=5 {
            assert!(g_operator(n).unwrap().square_identity_defect() < 1e-12);
        }
    }

    #[test]
    fn pauli_expectation_examples() {
        let tol = Tolerances::default();
        assert_eq!(pauli_expectations(&Spinor::alpha(), &tol).unwrap(), [0.0, 0.0, 1.0]);
        assert_eq!(pauli_expectations(&Spinor::beta(), &tol).unwrap(), [0.0, 0.0, -1.0]);
        let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let x = Spinor::new(r, r, tol.spinor).unwrap();
        let e = pauli_expectations(&x, &tol).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-15 && e[1].abs() < 1e-15 && e[2].abs() < 1e-15);
        assert!(Spinor::new(ONE, ONE, tol.spinor).is_err());
    }

    #[test]
    fn charge_examples() {
        let u = UnitSystem::default();
        let up = magnetic_charge(&label(2, 1, 0, 0), SpinState::Up, &u).unwrap();
        assert!((up.g - 1.0).abs() < 1e-12);
        let down = magnetic_charge(&label(2, 1, 0, 0), SpinState::Down, &u).unwrap();
        assert!((down.g + 1.0).abs() < 1e-12);
        for s in SpinState::BOTH {
            assert!(magnetic_charge(&label(2, 0, 0, 1), s, &u).unwrap().g.abs() < 1e-12);
        }
        let r = magnetic_charge(&label(4, 3, 0, 0), SpinState::Up, &u).unwrap();
        assert!((r.g - 3.0).abs() < 1e-12);
        assert!((r.ratio - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_examples() {
        let u = UnitSystem::default();
        let mut rec = magnetic_charge(&label(3, 2, 0, 0), SpinState::Down, &u).unwrap();
        assert!((quantization_ratio(&rec, &u) + 2.0).abs() < 1e-12);
        rec.g = 0.0;
        assert_eq!(quantization_ratio(&rec, &u), 0.0);
    }

    #[test]
    fn table_for_n1_and_n2() {
        let u = UnitSystem::default();
        let t1 = charge_table(1, &u, Execution::Sequential).unwrap();
        assert_eq!(t1.len(), 2);
        assert!(t1.iter().all(|r| r.g == 0.0));
        let t2 = charge_table(2, &u, Execution::Parallel).unwrap();
        let mut gs: Vec<i64> = t2.iter().map(|r| r.g.round() as i64).collect();
        gs.sort();
        assert_eq!(gs, vec![-1, -1, 0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn foreign_label_rejected() {
        let g = g_operator(2).unwrap();
        let err = g
            .charge_record(&label(3, 2, 0, 0), SpinState::Up, &UnitSystem::default(), &Tolerances::default())
            .unwrap_err();
        assert!(matches!(err, Error::InvalidLabel { .. }));
    }
}
