//! Exact radical computations for finite-dimensional Hopf module algebras.

pub mod action;
pub mod algebra;
pub mod harness;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod products;
pub mod radicals;
