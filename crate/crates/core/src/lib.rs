//! Finite-dimensional C*-algebraic quantum groups from structure constants:
//! Wedderburn decomposition, GNS spaces, Haar states, multiplicative
//! unitaries, the box product on projection classes and K0, Hopf ideals,
//! and coactions.

pub mod algebra;
pub mod coaction;
pub mod error;
pub mod generators;
pub mod gns;
pub mod hopf;
pub mod ideal;
pub mod json;
pub mod linalg;
pub mod report;
pub mod modules;
pub mod transform;
pub mod wedderburn;

pub use algebra::{AlgebraElement, FDAlgebra, LinearFunctional, Tensor3};
pub use error::{CqgError, Result};
pub use hopf::{HopfStructure, QuantumGroup};
pub use report::ValidationReport;
