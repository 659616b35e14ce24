//! The invariant suite behind `stark-monopole verify`.

use serde::Serialize;

use crate::algebra::{
    commutator, hermitian_eigendecomposition_with, levi_civita, spin_matrices, unitarity_defect, ComplexMatrix,
    HalfInt, I,
};
use crate::error::Result;
use crate::manifold::{build_so4, clebsch_gordan, parabolic_to_su2, su2_to_parabolic, So4Generators};
use crate::monopole::{g_operator, SpinState};
use crate::units::{Tolerances, UnitSystem};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Manifold the check ran on; `None` for manifold-independent checks.
    pub n: Option<u32>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n_max: u32,
    pub passed: bool,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest residual of a named check over all manifolds.
    pub fn max_residual(&self, name: &str) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.name == name)
            .map(|c| c.residual)
            .reduce(f64::max)
    }
}

struct Collector {
    checks: Vec<CheckResult>,
}

impl Collector {
    fn add(&mut self, name: &str, n: Option<u32>, residual: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            name: name.to_owned(),
            n,
            residual,
            tolerance,
            // NaN fails.
            passed: residual <= tolerance,
        });
    }
}

/// Run every operator-algebra, manifold and charge invariant for `n = 1..=n_max`.
pub fn run_verification(n_max: u32, tol: &Tolerances, units: &UnitSystem) -> Result<VerifyReport> {
    let mut c = Collector { checks: Vec::new() };

    // spin-j algebras up to j = 7/2
    let mut spin_res: f64 = 0.0;
    for twice in 0..=7 {
        let am = spin_matrices(HalfInt::from_twice(twice));
        for a in 0..3 {
            for b in 0..3 {
                let lhs = commutator(&am.components[a], &am.components[b])?;
                let rhs = epsilon_sum(a, b, &am.components);
                spin_res = spin_res.max(lhs.max_abs_diff(&rhs));
            }
        }
    }
    c.add("spin_commutators", None, spin_res, tol.commutator);

    for n in 1..=n_max {
        let g = build_so4(n)?;
        manifold_checks(&mut c, &g, tol)?;
        charge_checks(&mut c, n, tol, units)?;
        cg_check(&mut c, n, tol);
    }

    let passed = c.checks.iter().all(|r| r.passed);
    Ok(VerifyReport {
        n_max,
        passed,
        tolerances: *tol,
        checks: c.checks,
    })
}

fn epsilon_sum(a: usize, b: usize, ops: &[ComplexMatrix; 3]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(ops[0].rows(), ops[0].cols());
    for (k, op) in ops.iter().enumerate() {
        let eps = levi_civita(a, b, k);
        if eps != 0.0 {
            out = &out + &op.scale(I * eps);
        }
    }
    out
}

fn manifold_checks(c: &mut Collector, g: &So4Generators, tol: &Tolerances) -> Result<()> {
    let n = g.n;
    let dim = g.dim();
    let herm = g.l.iter().chain(&g.a).map(|m| m.hermiticity_defect()).fold(0.0, f64::max);
    c.add("generators_hermitian", Some(n), herm, tol.hermitian);

    let a12 = commutator(&g.a[0], &g.a[1])?.max_abs_diff(&g.l[2].scale(I));
    c.add("A1A2_commutator", Some(n), a12, tol.commutator);

    let (mut ll, mut la, mut aa): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for a in 0..3 {
        for b in 0..3 {
            ll = ll.max(commutator(&g.l[a], &g.l[b])?.max_abs_diff(&epsilon_sum(a, b, &g.l)));
            la = la.max(commutator(&g.l[a], &g.a[b])?.max_abs_diff(&epsilon_sum(a, b, &g.a)));
            aa = aa.max(commutator(&g.a[a], &g.a[b])?.max_abs_diff(&epsilon_sum(a, b, &g.l)));
        }
    }
    c.add("LL_commutators", Some(n), ll, tol.commutator);
    c.add("LA_commutators", Some(n), la, tol.commutator);
    c.add("AA_commutators", Some(n), aa, tol.commutator);

    c.add("LdotA_zero", Some(n), g.l_dot_a().max_abs(), tol.commutator);
    let casimir = &g.a_squared() + &g.l_squared();
    let target = ComplexMatrix::identity(dim).scale_real(f64::from(n * n - 1));
    c.add("casimir_A2_plus_L2", Some(n), casimir.max_abs_diff(&target), tol.commutator);

    let q: Vec<f64> = g.basis.labels().iter().map(|l| f64::from(l.q())).collect();
    let a3 = g.a[2].max_abs_diff(&ComplexMatrix::from_real_diagonal(&q));
    c.add("A3_diagonal_n1_minus_n2", Some(n), a3, tol.commutator);

    let u = g.basis.spherical_from_parabolic();
    c.add("spherical_unitarity", Some(n), unitarity_defect(u), tol.unitarity);
    let ll_diag: Vec<f64> = g
        .basis
        .spherical_labels()
        .iter()
        .map(|s| f64::from(s.l * (s.l + 1)))
        .collect();
    let m_diag: Vec<f64> = g.basis.spherical_labels().iter().map(|s| f64::from(s.m)).collect();
    let ud = u.adjoint();
    let l2 = (&(&ud * &g.l_squared()) * u).max_abs_diff(&ComplexMatrix::from_real_diagonal(&ll_diag));
    let l3 = (&(&ud * &g.l[2]) * u).max_abs_diff(&ComplexMatrix::from_real_diagonal(&m_diag));
    c.add("spherical_diagonalizes_L2", Some(n), l2, tol.commutator);
    c.add("spherical_preserves_L3", Some(n), l3, tol.commutator);
    let round_trip = (u * &ud).max_abs_diff(&ComplexMatrix::identity(dim));
    c.add("spherical_round_trip", Some(n), round_trip, tol.unitarity);

    let mut bijection_ok = true;
    for l in g.basis.labels() {
        let (m1, m2) = parabolic_to_su2(l)?;
        bijection_ok &= su2_to_parabolic(n, m1, m2)? == *l;
    }
    c.add("su2_bijection", Some(n), if bijection_ok { 0.0 } else { 1.0 }, 0.0);
    Ok(())
}

fn charge_checks(c: &mut Collector, n: u32, tol: &Tolerances, units: &UnitSystem) -> Result<()> {
    let g = g_operator(n)?;
    c.add("G_hermitian", Some(n), g.matrix.hermiticity_defect(), tol.hermitian);
    let (mut closed, mut integer, mut ratio, mut pm_a3): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for label in g.generators().basis.labels() {
        let k = g.generators().basis.index_of(label).expect("own label");
        let a3 = g.generators().a[2][(k, k)].re;
        for spin in SpinState::BOTH {
            let rec = g.charge_record(label, spin, units, tol)?;
            closed = closed.max((rec.g - spin.sign() * f64::from(label.q())).abs());
            integer = integer.max((rec.g - rec.g.round()).abs());
            ratio = ratio.max((rec.ratio - rec.g).abs());
            pm_a3 = pm_a3.max((rec.g - spin.sign() * a3).abs());
        }
    }
    c.add("charge_closed_form", Some(n), closed, tol.charge_integer);
    c.add("charge_integer", Some(n), integer, tol.charge_integer);
    c.add("quantization_ratio", Some(n), ratio, tol.ratio);
    c.add("sigmaA_equals_pm_A3", Some(n), pm_a3, tol.charge_integer);

    let eig = hermitian_eigendecomposition_with(&g.matrix, tol.eigen_input, tol.jacobi_off_diagonal)?;
    let mut expected = vec![0.0; 2 * n as usize];
    for p in 1..n {
        let w = f64::from(p * (2 * n - p)).sqrt();
        // K = n - 1/2 - p has multiplicity 2K + 1 = 2(n - p)
        for _ in 0..2 * (n - p) {
            expected.push(w);
            expected.push(-w);
        }
    }
    expected.sort_by(f64::total_cmp);
    let spectrum = if expected.len() == eig.values.len() {
        eig.values.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    c.add("G_square_identity", Some(n), g.square_identity_defect(), tol.commutator);
    c.add("G_spectrum", Some(n), spectrum, tol.eigen_residual);
    Ok(())
}

fn cg_check(c: &mut Collector, n: u32, tol: &Tolerances) {
    let j = HalfInt::from_twice(n as i32 - 1);
    let ms = |h: HalfInt| (0..=h.twice()).map(move |k| HalfInt::from_twice(h.twice() - 2 * k));
    let mut worst: f64 = 0.0;
    for l in 0..n {
        let lh = HalfInt::from_int(l as i32);
        for m in ms(lh) {
            let mut sum = 0.0;
            for m1 in ms(j) {
                for m2 in ms(j) {
                    sum += clebsch_gordan(j, m1, j, m2, lh, m).powi(2);
                }
            }
            worst = worst.max((sum - 1.0).abs());
        }
    }
    c.add("cg_orthonormality", Some(n), worst, tol.commutator);
}
