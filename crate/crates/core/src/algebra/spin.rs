use serde::{Deserialize, Serialize};
use std::fmt;

use super::matrix::{ComplexMatrix, C64, I, ONE, ZERO};
use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i32) -> Self {
        HalfInt(2 * v)
    }

    /// Accepts values whose double is an integer (to 1e-9).
    pub fn from_f64(x: f64) -> Option<Self> {
        let twice = 2.0 * x;
        let rounded = twice.round();
        ((twice - rounded).abs() < 1e-9 && rounded.abs() < i32::MAX as f64)
            .then_some(HalfInt(rounded as i32))
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: Self) -> Self {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: Self) -> Self {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Spin-j matrices in units of hbar, basis ordered m = j, j-1, ..., -j.
#[derive(Debug, Clone)]
pub struct AngularMomentum {
    pub j: HalfInt,
    pub components: [ComplexMatrix; 3],
}

impl AngularMomentum {
    pub fn dim(&self) -> usize {
        (self.j.twice() + 1) as usize
    }

    /// Magnetic quantum number of basis index `k`.
    pub fn m_at(&self, k: usize) -> HalfInt {
        HalfInt::from_twice(self.j.twice() - 2 * k as i32)
    }

    /// `J^2 = J1^2 + J2^2 + J3^2`.
    pub fn casimir(&self) -> ComplexMatrix {
        let [a, b, c] = &self.components;
        &(&(a * a) + &(b * b)) + &(c * c)
    }
}

pub fn angular_momentum_matrices(j: f64) -> Result<AngularMomentum> {
    match HalfInt::from_f64(j) {
        Some(h) if h.twice() >= 0 => Ok(spin_matrices(h)),
        _ => Err(Error::InvalidSpin(j)),
    }
}

pub(crate) fn spin_matrices(j: HalfInt) -> AngularMomentum {
    let dim = (j.twice() + 1) as usize;
    let jv = j.value();
    let m_at = |k: usize| jv - k as f64;

    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; index k-1 holds m+1.
    let mut raise = ComplexMatrix::zeros(dim, dim);
    for k in 1..dim {
        let m = m_at(k);
        raise[(k - 1, k)] = C64::new((jv * (jv + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();

    let j1 = (&raise + &lower).scale_real(0.5).with_hermitian_flag(true);
    let j2 = (&raise - &lower).scale(-I * 0.5).with_hermitian_flag(true);
    let diag: Vec<f64> = (0..dim).map(m_at).collect();
    let j3 = ComplexMatrix::from_real_diagonal(&diag);
    AngularMomentum {
        j,
        components: [j1, j2, j3],
    }
}

/// Pauli matrices `[sigma_x, sigma_y, sigma_z]`.
pub fn pauli() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]).with_hermitian_flag(true),
        ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]).with_hermitian_flag(true),
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]).with_hermitian_flag(true),
    ]
}

/// Levi-Civita symbol on indices 0..3.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}
