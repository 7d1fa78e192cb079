//! Generalized Pauli operators on GF(2^n) labels.
//!
//! `Z_α = Σ_κ χ(κα)|κ⟩⟨κ|` and `X_β = Σ_κ |κ+β⟩⟨κ|`, with states indexed by the
//! integer encoding of κ. Monomials are always ordered `Z_α X_β`.

use std::fmt;
use std::ops::Add;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gf::{Field, FieldElement};
use crate::linalg::{self, CMatrix, ONE, ZERO};

/// A point `(α, β)` of the discrete phase space, equivalently the label of
/// the monomial `Z_α X_β`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct PhasePoint {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

pub type PauliMonomial = PhasePoint;

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint {
        alpha: FieldElement::ZERO,
        beta: FieldElement::ZERO,
    };

    pub const fn new(alpha: FieldElement, beta: FieldElement) -> Self {
        PhasePoint { alpha, beta }
    }

    pub fn from_bits(alpha: u32, beta: u32) -> Self {
        PhasePoint::new(FieldElement::new(alpha), FieldElement::new(beta))
    }

    /// Row-major index into a `2^n × 2^n` grid.
    pub fn grid_index(self, dim: usize) -> usize {
        self.alpha.index() * dim + self.beta.index()
    }

    pub fn is_origin(self) -> bool {
        self == PhasePoint::ORIGIN
    }
}

impl Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint::new(self.alpha + rhs.alpha, self.beta + rhs.beta)
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// All `4^n` points in row-major order.
pub fn all_points(field: &Field) -> Vec<PhasePoint> {
    let mut out = Vec::with_capacity(field.size() * field.size());
    for a in field.elements() {
        for b in field.elements() {
            out.push(PhasePoint::new(a, b));
        }
    }
    out
}

/// `tr(αβ' + α'β)`: zero iff the two monomials commute.
pub fn symplectic_form(field: &Field, p: PhasePoint, q: PhasePoint) -> u8 {
    field.trace(field.mul(p.alpha, q.beta) + field.mul(q.alpha, p.beta))
}

fn sign(s: i8) -> Complex64 {
    Complex64::new(f64::from(s), 0.0)
}

pub fn z_op(field: &Field, alpha: FieldElement) -> CMatrix {
    let d = field.size();
    let mut m = CMatrix::zeros(d, d);
    for k in field.elements() {
        m[(k.index(), k.index())] = sign(field.character(field.mul(k, alpha)));
    }
    m
}

pub fn x_op(field: &Field, beta: FieldElement) -> CMatrix {
    let d = field.size();
    let mut m = CMatrix::zeros(d, d);
    for k in field.elements() {
        m[((k + beta).index(), k.index())] = ONE;
    }
    m
}

/// `Z_α X_β`, filled directly: `Z_α X_β |κ⟩ = χ((κ+β)α)|κ+β⟩`.
pub fn displacement(field: &Field, p: PhasePoint) -> CMatrix {
    let d = field.size();
    let mut m = CMatrix::zeros(d, d);
    for k in field.elements() {
        let target = k + p.beta;
        m[(target.index(), k.index())] = sign(field.character(field.mul(target, p.alpha)));
    }
    m
}

/// Finite Fourier transform, `⟨λ|F|κ⟩ = 2^(-n/2) χ(κλ)`.
pub fn fourier(field: &Field) -> CMatrix {
    let d = field.size();
    let norm = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |l, k| {
        let chi =
            field.character(field.mul(FieldElement::new(k as u32), FieldElement::new(l as u32)));
        Complex64::new(norm * f64::from(chi), 0.0)
    })
}

/// Single-qubit factor `σ_z^z σ_x^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitFactor {
    pub z: u8,
    pub x: u8,
}

impl QubitFactor {
    pub fn is_identity(self) -> bool {
        self.z == 0 && self.x == 0
    }

    fn matrix(self) -> CMatrix {
        let sz = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        let sx = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let mut m = linalg::identity(2);
        if self.z == 1 {
            m *= &sz;
        }
        if self.x == 1 {
            m *= &sx;
        }
        m
    }
}

impl fmt::Display for QubitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.z, self.x) {
            (0, 0) => "I",
            (1, 0) => "Z",
            (0, 1) => "X",
            _ => "ZX",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorFactorization {
    pub factors: Vec<QubitFactor>,
    /// `displacement = scalar · (⊗ factors)`.
    pub scalar: Complex64,
}

/// Per-qubit exponents `a_i = tr(αθ_i)`, `b_i = tr(βθ_i)` and the scalar
/// relating the tensor product back to `Z_α X_β`.
pub fn tensor_factorize(field: &Field, p: PhasePoint) -> TensorFactorization {
    let factors: Vec<QubitFactor> = field
        .expand(p.alpha)
        .into_iter()
        .zip(field.expand(p.beta))
        .map(|(z, x)| QubitFactor { z, x })
        .collect();
    let rebuilt = qubit_tensor_operator(field, &factors);
    let d = field.size() as f64;
    let scalar = linalg::trace_of_product(&rebuilt.adjoint(), &displacement(field, p)) / d;
    TensorFactorization { factors, scalar }
}

/// Builds `σ^(1) ⊗ ... ⊗ σ^(n)` as a Kronecker product (qubit 1 most
/// significant) and re-indexes rows/columns by field encoding, where
/// computational state `|k_1 ... k_n⟩` is `κ = Σ k_i θ_i`.
pub fn qubit_tensor_operator(field: &Field, factors: &[QubitFactor]) -> CMatrix {
    let n = field.n();
    assert_eq!(factors.len(), n);
    let mut product = linalg::identity(1);
    for f in factors {
        product = linalg::kron(&product, &f.matrix());
    }
    let d = field.size();
    let qubit_index: Vec<usize> = field
        .elements()
        .map(|k| {
            field
                .expand(k)
                .iter()
                .fold(0usize, |acc, &bit| (acc << 1) | usize::from(bit))
        })
        .collect();
    CMatrix::from_fn(d, d, |r, c| product[(qubit_index[r], qubit_index[c])])
}

/// Recognizes `m = s · Z_α X_β` with `|s| = 1`, returning the label and `s`.
pub fn identify_monomial(field: &Field, m: &CMatrix, tol: f64) -> Option<(PhasePoint, Complex64)> {
    let d = field.size();
    if m.nrows() != d || m.ncols() != d {
        return None;
    }
    // Column 0 picks out β, since Z_α X_β |0⟩ ∝ |β⟩.
    let beta_idx = (0..d).max_by(|&a, &b| {
        m[(a, 0)]
            .norm()
            .partial_cmp(&m[(b, 0)].norm())
            .expect("finite entries")
    })?;
    let beta = FieldElement::new(beta_idx as u32);
    for alpha in field.elements() {
        let p = PhasePoint::new(alpha, beta);
        let dmat = displacement(field, p);
        let s = linalg::trace_of_product(&dmat.adjoint(), m) / d as f64;
        if (s.norm() - 1.0).abs() < tol && linalg::max_abs(&(m - dmat * s)) < tol {
            return Some((p, s));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        (2..=3)
            .map(|n| Field::with_default_polynomial(n).unwrap())
            .collect()
    }

    #[test]
    fn trivial_labels() {
        let f = Field::with_default_polynomial(3).unwrap();
        let id = linalg::identity(8);
        assert_eq!(z_op(&f, FieldElement::ZERO), id);
        assert_eq!(x_op(&f, FieldElement::ZERO), id);
        assert_eq!(displacement(&f, PhasePoint::ORIGIN), id);
        for a in f.elements() {
            assert_eq!(
                displacement(&f, PhasePoint::new(a, FieldElement::ZERO)),
                z_op(&f, a)
            );
            let v = x_op(&f, a) * linalg::basis_vector(8, 0);
            assert_eq!(v, linalg::basis_vector(8, a.index()));
            for i in 0..8 {
                assert!((z_op(&f, a)[(i, i)].re.abs() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn weyl_commutation_relation() {
        for f in fields() {
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = z_op(&f, a) * x_op(&f, b);
                    let rhs = x_op(&f, b) * z_op(&f, a) * sign(f.character(f.mul(a, b)));
                    assert!(linalg::max_abs(&(lhs - rhs)) < 1e-12);
                    let dp = displacement(&f, PhasePoint::new(a, b));
                    assert!(linalg::max_abs(&(dp.clone() - z_op(&f, a) * x_op(&f, b))) < 1e-12);
                    assert!(linalg::unitarity_deviation(&dp) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn z_and_x_are_additive() {
        for f in fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(z_op(&f, a) * z_op(&f, b), z_op(&f, a + b));
                    assert_eq!(x_op(&f, a) * x_op(&f, b), x_op(&f, a + b));
                }
            }
        }
    }

    #[test]
    fn displacement_commutation_phase_exhaustive() {
        for f in fields() {
            let pts = all_points(&f);
            let mats: Vec<_> = pts.iter().map(|&p| displacement(&f, p)).collect();
            for (i, &p) in pts.iter().enumerate() {
                for (j, &q) in pts.iter().enumerate() {
                    // χ(α'β + αβ') = (-1)^{symplectic form}
                    let phase = if symplectic_form(&f, p, q) == 0 {
                        ONE
                    } else {
                        -ONE
                    };
                    let diff = &mats[i] * &mats[j] - &mats[j] * &mats[i] * phase;
                    assert!(linalg::max_abs(&diff) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn commute_iff_symplectic_form_vanishes_gf4() {
        let f = Field::with_default_polynomial(2).unwrap();
        for p in all_points(&f) {
            for q in all_points(&f) {
                let a = displacement(&f, p);
                let b = displacement(&f, q);
                let commutes = linalg::max_abs(&(&a * &b - &b * &a)) < 1e-12;
                assert_eq!(commutes, symplectic_form(&f, p, q) == 0);
            }
        }
    }

    #[test]
    fn fourier_properties() {
        for f in fields() {
            let d = f.size();
            let ft = fourier(&f);
            let v = &ft * linalg::basis_vector(d, 0);
            let amp = 1.0 / (d as f64).sqrt();
            assert!(v.iter().all(|z| (z.re - amp).abs() < 1e-15 && z.im == 0.0));
            assert!(linalg::unitarity_deviation(&ft) < 1e-12);
            assert!(linalg::max_abs(&(&ft * &ft - linalg::identity(d))) < 1e-12);
            for a in f.elements() {
                let conj = &ft * z_op(&f, a) * ft.adjoint();
                assert!(linalg::max_abs(&(conj - x_op(&f, a))) < 1e-12);
            }
        }
    }

    #[test]
    fn tensor_factorization_rebuilds_displacement() {
        for f in fields() {
            let t = tensor_factorize(&f, PhasePoint::ORIGIN);
            assert!(t.factors.iter().all(|q| q.is_identity()));
            let theta1 = f.self_dual_basis()[0];
            let t = tensor_factorize(&f, PhasePoint::new(theta1, FieldElement::ZERO));
            assert_eq!(t.factors[0], QubitFactor { z: 1, x: 0 });
            assert!(t.factors[1..].iter().all(|q| q.is_identity()));
            for p in all_points(&f) {
                let t = tensor_factorize(&f, p);
                assert!((t.scalar.norm() - 1.0).abs() < 1e-12);
                let rebuilt = qubit_tensor_operator(&f, &t.factors) * t.scalar;
                assert!(linalg::max_abs(&(rebuilt - displacement(&f, p))) < 1e-12);
            }
        }
    }

    #[test]
    fn identify_monomial_recovers_label_and_scalar() {
        let f = Field::with_default_polynomial(3).unwrap();
        for p in all_points(&f) {
            let m = displacement(&f, p) * linalg::I;
            let (q, s) = identify_monomial(&f, &m, 1e-10).unwrap();
            assert_eq!(p, q);
            assert!((s - linalg::I).norm() < 1e-12);
        }
        assert!(identify_monomial(&f, &fourier(&f), 1e-10).is_none());
    }
}
