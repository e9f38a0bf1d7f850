//! Horn inequality systems, quantum Horn body sampling, free-word trace
//! calculus and Monte Carlo verification of GUE fluctuation laws.
//!
//! The crate is organized around the objects it computes with:
//!
//! - [`linalg`]: dense complex Hermitian/unitary matrices, a cyclic Jacobi
//!   eigensolver, Kronecker products, GUE and Haar sampling.
//! - [`chebyshev`]: monic dilated Chebyshev polynomials on `[−2, 2]`, their
//!   shifted versions, and the semicircle moment calculus.
//! - [`ncwords`]: words in noncommuting letters, cyclic orbits, the commutator
//!   subspace test, the spanning family complementing it, and randomized
//!   trace-evaluation searches.
//! - [`horn`]: the Horn triple recursion, Horn body membership, eigenvalue
//!   functions and their integral inequalities.
//! - [`qhorn`]: quantum Horn body sampling, the worked 4×4 example with its
//!   closed-form spectrum, block-scaling constructions and microstate defects.
//! - [`fluct`]: seeded Monte Carlo experiments for trace fluctuation laws
//!   (CLT, second-order covariance, anti-concentration, edge containment).

pub mod chebyshev;
pub mod fluct;
pub mod horn;
pub mod linalg;
pub mod ncwords;
pub mod qhorn;
pub mod rng;

pub use rng::RngState;
