//! First-order linear Stark effect inside one n-manifold.
//!
//! Within a manifold `z = -(3/2) n a0 A3/hbar`, so a uniform field `F` along
//! the quantization axis perturbs the manifold by `H' = (3/2) n F A3` (hartree,
//! atomic units). The overall sign is a convention: the `(n1, n2) = (n-1, 0)`
//! state shifts upward.

use serde::Serialize;

use crate::algebra::{joint_eigendecomposition, ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::manifold::{build_so4, ParabolicLabel, So4Generators};
use crate::units::Tolerances;

/// Linear Stark slope in hartree per atomic field unit for electric quantum number `q`.
pub fn stark_slope(n: u32, q: i32) -> f64 {
    1.5 * n as f64 * q as f64
}

fn perturbation(generators: &So4Generators, field_au: f64) -> ComplexMatrix {
    generators.a[2]
        .scale_real(stark_slope(generators.n, 1) * field_au)
        .with_hermitian_flag(true)
}

/// `H' = (3/2) n F A3` in the parabolic basis.
pub fn stark_hamiltonian(n: u32, field_au: f64) -> Result<ComplexMatrix> {
    if !(field_au >= 0.0 && field_au.is_finite()) {
        return Err(Error::InvalidField {
            value: field_au,
            expected: "finite and >= 0 (reverse the field axis instead of a negative value)",
        });
    }
    Ok(perturbation(&build_so4(n)?, field_au))
}

#[derive(Debug, Clone)]
pub struct StarkEntry {
    pub label: ParabolicLabel,
    /// Hartree.
    pub shift: f64,
    /// Over the parabolic basis.
    pub eigenvector: Vec<C64>,
    /// `|<label|eigenvector>|^2`.
    pub overlap: f64,
}

#[derive(Debug, Clone)]
pub struct StarkSpectrum {
    pub n: u32,
    pub field_au: f64,
    /// Descending shift, ties by descending `m`.
    pub entries: Vec<StarkEntry>,
}

/// Eigenstates of `H'`, degenerate shifts resolved by `L3`, each matched to its
/// parabolic label through `(q, m)`.
pub fn stark_states(n: u32, field_au: f64) -> Result<StarkSpectrum> {
    if field_au == 0.0 {
        return Err(Error::InvalidField {
            value: field_au,
            expected: "> 0: labeling Stark states requires a symmetry-breaking field",
        });
    }
    if !(field_au > 0.0 && field_au.is_finite()) {
        return Err(Error::InvalidField {
            value: field_au,
            expected: "finite and > 0",
        });
    }
    let tol = Tolerances::default();
    let gens = build_so4(n)?;
    let h = perturbation(&gens, field_au);
    let joint = joint_eigendecomposition(&h, &gens.l[2], tol.eigen_input, tol.jacobi_off_diagonal, tol.degeneracy)?;
    let slope = stark_slope(n, 1) * field_au;
    let basis = &gens.basis;

    let mut entries = Vec::with_capacity(basis.dim());
    for k in 0..basis.dim() {
        let shift = joint.primary[k];
        let q = (shift / slope).round() as i32;
        let m = joint.secondary[k].round() as i32;
        let index = basis
            .labels()
            .iter()
            .position(|l| l.q() == q && l.m() == m)
            .ok_or(Error::Unlabeled { index: k })?;
        let eigenvector = joint.vectors.column(k);
        let overlap = eigenvector[index].norm_sqr();
        if overlap < 1.0 - tol.stark_overlap {
            return Err(Error::Unlabeled { index: k });
        }
        entries.push(StarkEntry {
            label: basis.labels()[index],
            shift,
            eigenvector,
            overlap,
        });
    }
    entries.sort_by(|a, b| {
        b.shift
            .total_cmp(&a.shift)
            .then(b.label.m().cmp(&a.label.m()))
    });
    Ok(StarkSpectrum { n, field_au, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarkMapRow {
    pub label: ParabolicLabel,
    pub field_au: f64,
    pub shift: f64,
}

/// Rows for every manifold `1..=n_max`, field point and label: manifold-major,
/// then field in grid order, then the spectrum order of [`stark_states`].
pub fn stark_map(n_max: u32, field_grid: &[f64], exec: Execution) -> Result<Vec<StarkMapRow>> {
    if n_max == 0 || n_max > 10 {
        return Err(Error::InvalidConfig {
            field: "n_max".into(),
            reason: format!("{n_max} outside 1..=10"),
        });
    }
    if let Some(&bad) = field_grid.iter().find(|f| !(**f > 0.0 && f.is_finite())) {
        return Err(Error::InvalidField {
            value: bad,
            expected: "finite and > 0",
        });
    }
    let points: Vec<(u32, f64)> = (1..=n_max)
        .flat_map(|n| field_grid.iter().map(move |&f| (n, f)))
        .collect();
    let spectra: Vec<Result<StarkSpectrum>> = exec.map(&points, |&(n, f)| stark_states(n, f));
    let mut rows = Vec::new();
    for spectrum in spectra {
        let s = spectrum?;
        rows.extend(s.entries.iter().map(|e| StarkMapRow {
            label: e.label,
            field_au: s.field_au,
            shift: e.shift,
        }));
    }
    Ok(rows)
}
