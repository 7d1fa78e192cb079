//! Pure and mixed states of `n` qubits, indexed by field encoding.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, CMatrix, CVector};

pub const STATE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(CVector);

impl StateVector {
    /// Checks unit norm to [`STATE_TOLERANCE`].
    pub fn new(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(StateVector(amplitudes))
    }

    /// Normalizes any nonzero vector.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Ok(StateVector(amplitudes / Complex64::new(norm, 0.0)))
    }

    pub fn basis(dim: usize, k: FieldElement) -> Self {
        StateVector(linalg::basis_vector(dim, k.index()))
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix(linalg::projector(&self.0))
    }

    /// `|⟨self|other⟩|²`
    pub fn overlap_sqr(&self, other: &CVector) -> f64 {
        self.0.dotc(other).norm_sqr()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity (smallest eigenvalue ≥ −tol).
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState("density matrix is not square".into()));
        }
        let herm = linalg::hermiticity_deviation(&matrix);
        if herm > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = linalg::trace(&matrix);
        if (tr - linalg::ONE).norm() > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min_eig = smallest_eigenvalue(&matrix);
        if min_eig < -STATE_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (eigenvalue {min_eig:e})"
            )));
        }
        Ok(DensityMatrix(matrix))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(linalg::identity(dim) / Complex64::new(dim as f64, 0.0))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn probability(&self, psi: &CVector) -> f64 {
        linalg::expectation(&self.0, psi).re
    }
}

fn smallest_eigenvalue(m: &CMatrix) -> f64 {
    let hermitian = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(hermitian)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Either kind of state, as read from a state file.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl QuantumState {
    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(s) => s.dim(),
            QuantumState::Mixed(r) => r.dim(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            QuantumState::Pure(s) => s.to_density(),
            QuantumState::Mixed(r) => r.clone(),
        }
    }
}

/// `(|0…0⟩ + |1…1⟩)/√2`. The all-ones qubit string is `Σθ_i`, which equals
/// the field unit for a self-dual basis.
pub fn ghz(field: &Field) -> StateVector {
    let d = field.size();
    let ones = field.reconstruct(&vec![1; field.n()]);
    let mut v = CVector::zeros(d);
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[0] = amp;
    v[ones.index()] += amp;
    StateVector(v)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed pure state (normalized complex Gaussian vector).
pub fn haar_random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    let v = CVector::from_fn(dim, |_, _| gaussian_complex(rng));
    StateVector::normalized(v).expect("Gaussian vector is nonzero")
}

/// Full-rank random density matrix `G G† / Tr(G G†)` from a Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let rho = &g * g.adjoint();
    let tr = linalg::trace(&rho);
    DensityMatrix(rho / tr)
}
