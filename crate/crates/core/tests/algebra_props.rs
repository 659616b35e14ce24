use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stark_monopole::algebra::{
    angular_momentum_matrices, commutator, expectation, hermitian_eigendecomposition, kron, levi_civita,
    unitarity_defect, ComplexMatrix, C64,
};

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        data[r * dim + r] = C64::new(rng.random_range(-1.0..1.0), 0.0);
        for c in r + 1..dim {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            data[r * dim + c] = z;
            data[c * dim + r] = z.conj();
        }
    }
    ComplexMatrix::from_vec(dim, dim, data)
}

/// Plain triple-loop product, independent of the library multiply.
fn naive_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = vec![C64::new(0.0, 0.0); a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            for k in 0..a.cols() {
                out[i * b.cols() + j] += a.row(i)[k] * b.row(k)[j];
            }
        }
    }
    ComplexMatrix::from_vec(a.rows(), b.cols(), out)
}

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), dim * dim)
        .prop_map(move |v| ComplexMatrix::from_vec(dim, dim, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
}

proptest! {
    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        let lhs = naive_product(&kron(&a, &b), &kron(&c, &d));
        let rhs = kron(&naive_product(&a, &c), &naive_product(&b, &d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), c in matrix(3)) {
        let lhs = kron(&kron(&a, &b), &c);
        let rhs = kron(&a, &kron(&b, &c));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn expectation_ignores_global_phase(seed in any::<u64>(), phase in 0.0f64..std::f64::consts::TAU) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_hermitian(&mut rng, 5);
        let mut v: Vec<C64> = (0..5).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        let w: Vec<C64> = v.iter().map(|z| z * C64::from_polar(1.0, phase)).collect();
        let a = expectation(&v, &m, 1e-10).unwrap();
        let b = expectation(&w, &m, 1e-10).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
        prop_assert!(a.im.abs() < 1e-12);
    }
}

#[test]
fn random_hermitian_eigendecompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst_residual, mut worst_unitarity): (f64, f64) = (0.0, 0.0);
    for k in 0..1000 {
        // Every 100th case sits at the largest size used by the n = 6 spin space.
        let dim = if k % 100 == 0 { 72 } else { rng.random_range(1..=24) };
        let m = random_hermitian(&mut rng, dim);
        let e = hermitian_eigendecomposition(&m).unwrap();
        let lambda = ComplexMatrix::from_real_diagonal(&e.values);
        let rebuilt = naive_product(&naive_product(&e.vectors, &lambda), &e.vectors.adjoint());
        worst_residual = worst_residual.max(rebuilt.max_abs_diff(&m));
        worst_unitarity = worst_unitarity.max(unitarity_defect(&e.vectors));
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
    assert!(worst_residual < 1e-10, "{worst_residual}");
    assert!(worst_unitarity < 1e-10, "{worst_unitarity}");
}

#[test]
fn eight_by_eight_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m = random_hermitian(&mut rng, 8);
    let e = hermitian_eigendecomposition(&m).unwrap();
    let rebuilt = naive_product(
        &naive_product(&e.vectors, &ComplexMatrix::from_real_diagonal(&e.values)),
        &e.vectors.adjoint(),
    );
    assert!(rebuilt.max_abs_diff(&m) < 1e-10);
}

#[test]
fn spin_commutators_up_to_seven_halves() {
    let i = C64::new(0.0, 1.0);
    for twice in 1..=7 {
        let j = f64::from(twice) / 2.0;
        let am = angular_momentum_matrices(j).unwrap();
        let dim = am.dim();
        assert_eq!(dim, twice as usize + 1);
        for a in 0..3 {
            for b in 0..3 {
                let mut want = ComplexMatrix::zeros(dim, dim);
                for c in 0..3 {
                    want = &want + &am.components[c].scale(i * levi_civita(a, b, c));
                }
                let got = commutator(&am.components[a], &am.components[b]).unwrap();
                assert!(got.max_abs_diff(&want) < 1e-12, "j = {j}");
            }
        }
        let target = ComplexMatrix::identity(dim).scale_real(j * (j + 1.0));
        assert!(am.casimir().max_abs_diff(&target) < 1e-12);
    }
}

#[test]
fn non_half_integer_spin_is_rejected() {
    assert!(angular_momentum_matrices(0.3).is_err());
    assert!(angular_momentum_matrices(-0.5).is_err());
}
