use stark_monopole::algebra::{basis_vector, expectation, hermitian_eigendecomposition, HalfInt};
use stark_monopole::manifold::{
    build_so4, clebsch_gordan, enumerate_parabolic, parabolic_to_su2, spherical_transform, su2_to_parabolic,
    ParabolicLabel,
};

/// Coupled states `|J M>` of `j1 (x) j2` built by lowering from the stretched
/// state and Gram-Schmidt within each `M` block. Entries are indexed by twice
/// the quantum numbers; returns `(tJ, tM, vector over (i1, i2))`.
fn ladder_states(tj1: i32, tj2: i32) -> Vec<(i32, i32, Vec<f64>)> {
    let (d1, d2) = ((tj1 + 1) as usize, (tj2 + 1) as usize);
    let m1 = |i1: usize| tj1 - 2 * i1 as i32;
    let m2 = |i2: usize| tj2 - 2 * i2 as i32;
    let lower_coeff = |tj: i32, tm: i32| {
        let (j, m) = (f64::from(tj) / 2.0, f64::from(tm) / 2.0);
        (j * (j + 1.0) - m * (m - 1.0)).max(0.0).sqrt()
    };
    let lower = |v: &[f64]| {
        let mut out = vec![0.0; d1 * d2];
        for i1 in 0..d1 {
            for i2 in 0..d2 {
                let c = v[i1 * d2 + i2];
                if c == 0.0 {
                    continue;
                }
                if i1 + 1 < d1 {
                    out[(i1 + 1) * d2 + i2] += c * lower_coeff(tj1, m1(i1));
                }
                if i2 + 1 < d2 {
                    out[i1 * d2 + i2 + 1] += c * lower_coeff(tj2, m2(i2));
                }
            }
        }
        out
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let mut states: Vec<(i32, i32, Vec<f64>)> = Vec::new();
    let mut tj = tj1 + tj2;
    while tj >= (tj1 - tj2).abs() {
        // Highest-weight vector: orthogonal complement inside the M = J block.
        let mut top = None;
        for i1 in 0..d1 {
            for i2 in 0..d2 {
                if m1(i1) + m2(i2) != tj {
                    continue;
                }
                let mut v = vec![0.0; d1 * d2];
                v[i1 * d2 + i2] = 1.0;
                for (_, tm, s) in &states {
                    if *tm == tj {
                        let p = dot(&v, s);
                        v.iter_mut().zip(s).for_each(|(x, y)| *x -= p * y);
                    }
                }
                let nrm = dot(&v, &v).sqrt();
                if nrm > 1e-8 && top.is_none() {
                    v.iter_mut().for_each(|x| *x /= nrm);
                    top = Some(v);
                }
            }
        }
        let mut v = top.expect("highest weight exists");
        // Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0.
        let i2 = ((tj2 - (tj - tj1)) / 2) as usize;
        if v[i2] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let mut tm = tj;
        loop {
            states.push((tj, tm, v.clone()));
            if tm == -tj {
                break;
            }
            let c = lower_coeff(tj, tm);
            v = lower(&v).into_iter().map(|x| x / c).collect();
            tm -= 2;
        }
        tj -= 2;
    }
    states
}

#[test]
fn clebsch_gordan_matches_ladder_construction() {
    for tj1 in 0..=5 {
        for tj2 in 0..=5 {
            let d2 = (tj2 + 1) as usize;
            for (tj, tm, v) in ladder_states(tj1, tj2) {
                for (k, want) in v.iter().enumerate() {
                    let (i1, i2) = (k / d2, k % d2);
                    let got = clebsch_gordan(
                        HalfInt::from_twice(tj1),
                        HalfInt::from_twice(tj1 - 2 * i1 as i32),
                        HalfInt::from_twice(tj2),
                        HalfInt::from_twice(tj2 - 2 * i2 as i32),
                        HalfInt::from_twice(tj),
                        HalfInt::from_twice(tm),
                    );
                    assert!((got - want).abs() < 1e-12, "j1={tj1}/2 j2={tj2}/2 J={tj}/2 M={tm}/2: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn spin_half_singlet_signs() {
    let h = HalfInt::from_twice(1);
    let zero = HalfInt::from_int(0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((clebsch_gordan(h, h, h, -h, zero, zero) - r).abs() < 1e-15);
    assert!((clebsch_gordan(h, -h, h, h, zero, zero) + r).abs() < 1e-15);
}

#[test]
fn label_counts_match_exhaustive_loop() {
    for n in 1..=10u32 {
        let mut oracle = Vec::new();
        for n1 in 0..n {
            for n2 in 0..n {
                for m in -(n as i32)..=(n as i32) {
                    if n1 + n2 + m.unsigned_abs() + 1 == n {
                        oracle.push((n1, n2, m));
                    }
                }
            }
        }
        let got = enumerate_parabolic(n).unwrap();
        assert_eq!(got.len(), oracle.len());
        assert_eq!(got.len(), (n * n) as usize);
        for l in &got {
            assert!(oracle.contains(&(l.n1(), l.n2(), l.m())));
        }
    }
    let n2: Vec<_> = enumerate_parabolic(2)
        .unwrap()
        .iter()
        .map(|l| (l.n1(), l.n2(), l.m()))
        .collect();
    assert_eq!(n2, vec![(1, 0, 0), (0, 0, 1), (0, 0, -1), (0, 1, 0)]);
}

#[test]
fn su2_round_trip_and_examples() {
    for n in 1..=10 {
        for l in enumerate_parabolic(n).unwrap() {
            let (m1, m2) = parabolic_to_su2(&l).unwrap();
            assert_eq!((m1 + m2).twice(), 2 * l.m());
            assert_eq!((m1 - m2).twice(), 2 * l.q());
            assert_eq!(su2_to_parabolic(n, m1, m2).unwrap(), l);
        }
    }
    let h = HalfInt::from_twice(1);
    let l = ParabolicLabel::new(2, 1, 0, 0).unwrap();
    assert_eq!(parabolic_to_su2(&l).unwrap(), (h, -h));
    let l = ParabolicLabel::new(2, 0, 0, 1).unwrap();
    assert_eq!(parabolic_to_su2(&l).unwrap(), (h, h));
    assert!(ParabolicLabel::new(2, 1, 1, 0).is_err());
}

#[test]
fn a3_is_diagonal_with_q_in_canonical_order() {
    let g = build_so4(2).unwrap();
    let diag: Vec<f64> = g.a[2].diagonal().iter().map(|z| z.re).collect();
    assert_eq!(diag, vec![1.0, 0.0, 0.0, -1.0]);
    for n in 1..=6 {
        let g = build_so4(n).unwrap();
        for (k, l) in g.basis.labels().iter().enumerate() {
            let v = basis_vector(g.dim(), k);
            let a3 = expectation(&v, &g.a[2], 1e-12).unwrap().re;
            let l3 = expectation(&v, &g.l[2], 1e-12).unwrap().re;
            assert!((a3 - f64::from(l.q())).abs() < 1e-12);
            assert!((l3 - f64::from(l.m())).abs() < 1e-12);
        }
    }
}

#[test]
fn s_state_column_matches_l_squared_kernel() {
    let g = build_so4(2).unwrap();
    let e = hermitian_eigendecomposition(&g.l_squared()).unwrap();
    assert!(e.values[0].abs() < 1e-12 && e.values[1] > 1.0);
    let kernel = e.vector(0);
    let (u, labels) = spherical_transform(2).unwrap();
    assert_eq!((labels[0].l, labels[0].m), (0, 0));
    let column = u.column(0);
    let overlap: f64 = column.iter().zip(&kernel).map(|(a, b)| a.conj() * b).sum::<num_complex::Complex64>().norm();
    assert!((overlap - 1.0).abs() < 1e-12);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // (q=+1, m=+1, m=-1, q=-1)
    assert!((column[0].re.abs() - r).abs() < 1e-15);
    assert!((column[0].re + column[3].re).abs() < 1e-15);
    assert!(column[1].norm() < 1e-15 && column[2].norm() < 1e-15);
}

#[test]
fn spherical_transform_preserves_l3() {
    for n in 1..=5 {
        let (u, labels) = spherical_transform(n).unwrap();
        let g = build_so4(n).unwrap();
        let l3 = &(&u.adjoint() * &g.l[2]) * &u;
        for (k, s) in labels.iter().enumerate() {
            assert!((l3.diagonal()[k].re - f64::from(s.m)).abs() < 1e-12);
        }
    }
}
