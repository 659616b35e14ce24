use serde::Serialize;

use super::cg::clebsch_gordan;
use super::label::{enumerate_parabolic, enumerate_spherical, parabolic_to_su2, ParabolicLabel, SphericalLabel};
use crate::algebra::{kron, spin_matrices, ComplexMatrix, HalfInt, C64};
use crate::error::{Error, Result};

/// Ordered basis of an n-manifold together with its spherical transform.
#[derive(Debug, Clone)]
pub struct ManifoldBasis {
    n: u32,
    labels: Vec<ParabolicLabel>,
    su2: Vec<(HalfInt, HalfInt)>,
    /// Position of each label in the `(m1, m2)` product basis, `i1 * (2j+1) + i2`.
    product_index: Vec<usize>,
    spherical: Vec<SphericalLabel>,
    /// Rows: parabolic states. Columns: spherical states.
    u: ComplexMatrix,
}

impl ManifoldBasis {
    pub fn new(n: u32) -> Result<Self> {
        let labels = enumerate_parabolic(n)?;
        let twice_j = n as i32 - 1;
        let su2: Vec<(HalfInt, HalfInt)> = labels.iter().map(parabolic_to_su2).collect::<Result<_>>()?;
        let product_index = su2
            .iter()
            .map(|(m1, m2)| {
                let i1 = ((twice_j - m1.twice()) / 2) as usize;
                let i2 = ((twice_j - m2.twice()) / 2) as usize;
                i1 * n as usize + i2
            })
            .collect();
        let spherical = enumerate_spherical(n);
        let j = HalfInt::from_twice(twice_j);
        let dim = labels.len();
        let mut u = ComplexMatrix::zeros(dim, dim);
        for (row, (m1, m2)) in su2.iter().enumerate() {
            for (col, s) in spherical.iter().enumerate() {
                let c = clebsch_gordan(j, *m1, j, *m2, HalfInt::from_int(s.l as i32), HalfInt::from_int(s.m));
                if c != 0.0 {
                    u[(row, col)] = C64::new(c, 0.0);
                }
            }
        }
        Ok(Self {
            n,
            labels,
            su2,
            product_index,
            spherical,
            u,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `j = (n - 1)/2`.
    pub fn j(&self) -> HalfInt {
        HalfInt::from_twice(self.n as i32 - 1)
    }

    pub fn labels(&self) -> &[ParabolicLabel] {
        &self.labels
    }

    pub fn su2_pairs(&self) -> &[(HalfInt, HalfInt)] {
        &self.su2
    }

    pub fn spherical_labels(&self) -> &[SphericalLabel] {
        &self.spherical
    }

    /// Unitary taking spherical-basis coordinates to parabolic-basis coordinates.
    pub fn spherical_from_parabolic(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn index_of(&self, label: &ParabolicLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of_su2(&self, m1: HalfInt, m2: HalfInt) -> Option<usize> {
        self.su2.iter().position(|&p| p == (m1, m2))
    }

    /// Basis index of the product-space state `(i1, i2)` for every label.
    pub fn product_permutation(&self) -> &[usize] {
        &self.product_index
    }
}

/// Angular momentum `L` and normalized Runge-Lenz vector `A` on one n-manifold,
/// in units of hbar, expressed in the parabolic basis.
#[derive(Debug, Clone)]
pub struct So4Generators {
    pub n: u32,
    pub l: [ComplexMatrix; 3],
    pub a: [ComplexMatrix; 3],
    pub basis: ManifoldBasis,
}

/// Build `L = J(1) + J(2)` and `A = J(1) - J(2)` from two spin-(n-1)/2 algebras
/// `J (x) 1` and `1 (x) J`, reindexed by parabolic label.
pub fn build_so4(n: u32) -> Result<So4Generators> {
    if n == 0 {
        return Err(Error::ZeroManifold);
    }
    let basis = ManifoldBasis::new(n)?;
    let spin = spin_matrices(basis.j());
    let id = ComplexMatrix::identity(spin.dim());
    let perm = basis.product_permutation().to_vec();

    let mut l = Vec::with_capacity(3);
    let mut a = Vec::with_capacity(3);
    for comp in &spin.components {
        let left = kron(comp, &id);
        let right = kron(&id, comp);
        l.push((&left + &right).permuted(&perm).with_hermitian_flag(true));
        a.push((&left - &right).permuted(&perm).with_hermitian_flag(true));
    }
    let to_array = |v: Vec<ComplexMatrix>| -> [ComplexMatrix; 3] { v.try_into().expect("three components") };
    Ok(So4Generators {
        n,
        l: to_array(l),
        a: to_array(a),
        basis,
    })
}

impl So4Generators {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `L^2`.
    pub fn l_squared(&self) -> ComplexMatrix {
        sum_of_squares(&self.l)
    }

    /// `A^2`.
    pub fn a_squared(&self) -> ComplexMatrix {
        sum_of_squares(&self.a)
    }

    /// Symmetrized `L.A = sum_a (L_a A_a + A_a L_a)/2`.
    pub fn l_dot_a(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim(), self.dim());
        for (la, aa) in self.l.iter().zip(&self.a) {
            acc = &acc + &(&(la * aa) + &(aa * la)).scale_real(0.5);
        }
        acc
    }

    pub fn dump(&self) -> OperatorDump {
        OperatorDump {
            n: self.n,
            ordering: "row-major, entries [re, im], rows/cols indexed by `labels`",
            labels: self.basis.labels().to_vec(),
            spherical_labels: self.basis.spherical_labels().to_vec(),
            l: self.l.iter().map(MatrixDump::from).collect(),
            a: self.a.iter().map(MatrixDump::from).collect(),
            spherical_from_parabolic: MatrixDump::from(self.basis.spherical_from_parabolic()),
        }
    }
}

fn sum_of_squares(v: &[ComplexMatrix; 3]) -> ComplexMatrix {
    let [x, y, z] = v;
    &(&(x * x) + &(y * y)) + &(z * z)
}

/// Spherical transform of manifold `n`: the unitary `U` (columns are spherical
/// states in the parabolic basis) and its column labels.
pub fn spherical_transform(n: u32) -> Result<(ComplexMatrix, Vec<SphericalLabel>)> {
    let basis = ManifoldBasis::new(n)?;
    Ok((basis.u, basis.spherical))
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixDump {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// JSON-serializable snapshot of one manifold's generators and transform.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorDump {
    pub n: u32,
    pub ordering: &'static str,
    pub labels: Vec<ParabolicLabel>,
    pub spherical_labels: Vec<SphericalLabel>,
    #[serde(rename = "L")]
    pub l: Vec<MatrixDump>,
    #[serde(rename = "A")]
    pub a: Vec<MatrixDump>,
    #[serde(rename = "U_spherical_from_parabolic")]
    pub spherical_from_parabolic: MatrixDump,
}
