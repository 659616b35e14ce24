//! Operator algebra on degenerate hydrogen n-manifolds and the magnetic charge
//! assigned to Stark states by the operator `G = (e/hbar) sigma.A`.
//!
//! * [`algebra`]: dense complex matrices, spin-j matrices, a Jacobi eigensolver.
//! * [`manifold`]: parabolic labels, the SO(4) generators `L`, `A`, and the
//!   spherical transform.
//! * [`monopole`]: `G`, charges `g = +-(n1 - n2) e` and their ratio to `alpha`.
//! * [`stark`]: the linear Stark perturbation and its eigenstates.
//! * [`beamsim`]: classical deflection and SQUID-flux simulation.
//!
//! Data-parallel loops (charge tables, Stark maps, particle pushes) go through
//! [`Execution`], backed by rayon when the `parallel` feature is enabled.

pub mod algebra;
pub mod beamsim;
pub mod error;
pub mod exec;
pub mod io;
pub mod manifold;
pub mod monopole;
pub mod stark;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use units::{Tolerances, UnitSystem};
