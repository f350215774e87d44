//! Finite-dimensional C*-Hopf algebras, Hopf qudit operators, Hopf cluster
//! states on graphs and 1D lattices, and their tensor-network description.

pub mod cluster;
pub mod error;
pub mod hopf;
pub mod hypergraph;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod ops;
pub mod qd;
pub mod rep;
pub mod report;
pub mod state;
pub mod suite;
pub mod tn;
pub mod zoo;

pub use error::{Error, Result};
pub use hopf::{AlgebraData, AlgebraElement, Dual, DualElement, HopfAlgebra, Side, Sign, SweedlerExpansion};
pub use linalg::{CMat, C64};
pub use rep::Representation;
pub use state::{SiteLocalOp, StateVector};
