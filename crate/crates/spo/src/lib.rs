//! Optimization of state, trace, and moment polynomials over operator models
//! via a convergent hierarchy of semidefinite relaxations, with applications
//! to quantum-information bound computations.
//!
//! The crate is organized in four layers:
//!
//! * [`algebra`] — noncommutative words with a formal state symbol `s(...)`,
//!   canonical forms under structural relations (projections, involutions,
//!   commutation, anticommutation, tracial and commutative regimes),
//!   arithmetic, parsing, and numeric evaluation on explicit matrix models.
//! * [`hierarchy`] — the level-`d` moment relaxation: monomial bases, moment
//!   variable indexing, Hankel and localizing pencils, and assembly into a
//!   conic problem.
//! * [`solver`] — a self-contained dense conic solver (PSD + diagonal blocks,
//!   affine equalities) built on a homogeneous self-dual embedding with a
//!   Mehrotra predictor-corrector, plus SDPA sparse export for cross-checks
//!   against external solvers.
//! * [`apps`] — application drivers: Lovász theta and uncertainty-relation
//!   bounds, Pauli arithmetic, quantum weight enumerators, Krawtchouk and
//!   MacWilliams transforms, Delsarte feasibility, quantum-code exclusion
//!   checks, and Werner-witness trace bounds.

pub mod algebra;
pub mod apps;
pub mod hierarchy;
pub mod solver;
