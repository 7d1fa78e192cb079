//! Discrete phase space for `n` qubits labelled by GF(2^n): stabilizer
//! curves, mutually unbiased bases built from curve bundles, and the
//! Wigner functions attached to them.

pub mod curves;
pub mod error;
pub mod figures;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod linearized;
pub mod mubs;
pub mod pauli;
pub mod rotations;
pub mod state;
pub mod wigner;

pub use curves::{BundleSignature, Curve, CurveReport, FactorizationPartition, Regularity};
pub use error::{Error, Result};
pub use gf::{DisplayMode, Field, FieldElement};
pub use linearized::LinearizedPoly;
pub use mubs::{BasisLabel, MubBasis, MubBundle, Preset};
pub use pauli::PhasePoint;
pub use rotations::{CurveFunction, RotationTriple, SeedBranch};
pub use state::{DensityMatrix, QuantumState, StateVector};
pub use wigner::{WignerGrid, WignerKernel};
