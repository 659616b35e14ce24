//! Degenerate hydrogen n-manifolds: parabolic labels, the SO(4) generators
//! `L` and `A` with `[A1, A2] = i L3`, and the parabolic-to-spherical transform.
//!
//! `A` is represented only inside a fixed manifold, through the two commuting
//! spin-(n-1)/2 algebras `(L + A)/2` and `(L - A)/2`. The parabolic state
//! `(n1, n2, m)` is the product state with `m1 = (m + n1 - n2)/2` and
//! `m2 = (m - n1 + n2)/2`, so `A3` has eigenvalue `n1 - n2`.

mod cg;
mod label;
mod so4;

pub use cg::clebsch_gordan;
pub use label::{
    enumerate_parabolic, enumerate_spherical, parabolic_to_su2, su2_to_parabolic, ParabolicLabel, SphericalLabel,
};
pub use so4::{build_so4, spherical_transform, ManifoldBasis, MatrixDump, OperatorDump, So4Generators};
