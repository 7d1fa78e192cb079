//! Symplectic rotations `P_f` and `Q_g`.
//!
//! `P_f = Σ_κ c_κ |κ̃⟩⟨κ̃|` is diagonal in the `X` eigenbasis `|κ̃⟩ = F|κ⟩` and
//! `Q_g = Σ_κ c_κ |κ⟩⟨κ|` is diagonal in the computational basis. The phases
//! solve `c_κ c_κ' = χ(κ' f(κ)) c_{κ+κ'}` with `c_0 = 1`; every solution takes
//! values in `{±1, ±i}`, so they are kept as exact quarter turns.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, CMatrix};
use crate::linearized::LinearizedPoly;
use crate::pauli::{self, PhasePoint};

/// `i^k` for `k` mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_sign(s: i8) -> Phase {
        if s >= 0 {
            Phase::ONE
        } else {
            Phase::MINUS_ONE
        }
    }

    pub fn quarter_turns(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// Square-root branch used for the seeds `c(θ_i)` when `χ(θ_i f(θ_i)) = −1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedBranch {
    /// `+i`
    #[default]
    Principal,
    /// `−i`
    Conjugate,
}

/// A GF(2)-linear map `f` with `tr(κ' f(κ)) = tr(κ f(κ'))` for all κ, κ'.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveFunction {
    poly: LinearizedPoly,
}

impl CurveFunction {
    pub fn new(field: &Field, poly: LinearizedPoly) -> Result<Self> {
        let f = CurveFunction { poly };
        if !f.satisfies_abelian_condition(field) {
            return Err(Error::InconsistentRecurrence);
        }
        Ok(f)
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Result<Self> {
        Self::new(field, LinearizedPoly::from_bits(field, coeffs)?)
    }

    /// Accepts an arbitrary value table; the abelian condition is checked on
    /// the table itself, and forces it to be additive.
    pub fn from_table(field: &Field, table: &[FieldElement]) -> Result<Self> {
        if table.len() != field.size() {
            return Err(Error::TableLength {
                expected: field.size(),
                actual: table.len(),
            });
        }
        for &v in table {
            field.element(v.bits())?;
        }
        for x in field.elements() {
            for y in field.elements() {
                let a = field.trace(field.mul(y, table[x.index()]));
                let b = field.trace(field.mul(x, table[y.index()]));
                if a != b {
                    return Err(Error::InconsistentRecurrence);
                }
            }
        }
        Ok(CurveFunction {
            poly: LinearizedPoly::from_values(field, table)?,
        })
    }

    pub fn zero(n: usize) -> Self {
        CurveFunction {
            poly: LinearizedPoly::zero(n),
        }
    }

    /// `f(α) = λα`, which always satisfies the abelian condition.
    pub fn scalar(n: usize, lambda: FieldElement) -> Self {
        CurveFunction {
            poly: LinearizedPoly::scalar(n, lambda),
        }
    }

    pub fn poly(&self) -> &LinearizedPoly {
        &self.poly
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.poly.eval(field, x)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Uniform over all maps satisfying the abelian condition: a random
    /// symmetric GF(2) matrix `M_ij = tr(θ_i f(θ_j))` in the self-dual basis.
    pub fn random<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Self {
        let n = field.n();
        let basis = field.self_dual_basis();
        let mut m = vec![vec![0u8; n]; n];
        for (i, j) in (0..n).flat_map(|i| (i..n).map(move |j| (i, j))) {
            let bit = u8::from(rng.random::<bool>());
            m[i][j] = bit;
            m[j][i] = bit;
        }
        let images: Vec<FieldElement> = (0..n)
            .map(|j| (0..n).filter(|&i| m[i][j] == 1).map(|i| basis[i]).sum())
            .collect();
        let table: Vec<FieldElement> = field
            .elements()
            .map(|x| {
                field
                    .expand(x)
                    .iter()
                    .zip(&images)
                    .filter(|(&bit, _)| bit == 1)
                    .map(|(_, &img)| img)
                    .sum()
            })
            .collect();
        Self::from_table(field, &table).expect("symmetric matrix gives an abelian map")
    }

    /// Exhaustive pairwise check of `tr(κ' f(κ)) = tr(κ f(κ'))`.
    pub fn satisfies_abelian_condition(&self, field: &Field) -> bool {
        let values = self.poly.values(field);
        field.elements().all(|x| {
            field.elements().all(|y| {
                field.trace(field.mul(y, values[x.index()]))
                    == field.trace(field.mul(x, values[y.index()]))
            })
        })
    }
}

/// Phase table `c(κ)` indexed by field encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationCoefficients {
    phases: Vec<Phase>,
}

impl RotationCoefficients {
    pub fn get(&self, k: FieldElement) -> Phase {
        self.phases[k.index()]
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.phases.iter().map(|p| p.to_complex()).collect()
    }
}

/// Solves `c(x) c(y) = (−1)^{form(x,y)} c(x+y)`, `c(0) = 1`, for a symmetric
/// GF(2)-bilinear `form`.
///
/// Seeds `c(θ_i)` are square roots of `(−1)^{form(θ_i,θ_i)}`; the table is
/// extended along the self-dual basis in ascending order and then checked
/// against every pair.
pub fn solve_phases<F>(field: &Field, form: F, branch: SeedBranch) -> Result<Vec<Phase>>
where
    F: Fn(FieldElement, FieldElement) -> u8,
{
    let d = field.size();
    let mut phases: Vec<Option<Phase>> = vec![None; d];
    phases[0] = Some(Phase::ONE);
    let mut filled = vec![FieldElement::ZERO];
    for &theta in field.self_dual_basis() {
        let seed = match (form(theta, theta), branch) {
            (0, _) => Phase::ONE,
            (_, SeedBranch::Principal) => Phase::I,
            (_, SeedBranch::Conjugate) => Phase::MINUS_I,
        };
        let mut next = Vec::with_capacity(filled.len());
        for &acc in &filled {
            let sign = Phase::from_sign(if form(acc, theta) == 0 { 1 } else { -1 });
            let value = phases[acc.index()].expect("filled") * seed * sign;
            phases[(acc + theta).index()] = Some(value);
            next.push(acc + theta);
        }
        filled.extend(next);
    }
    let phases: Vec<Phase> = phases
        .into_iter()
        .map(|p| p.expect("self-dual basis spans the field"))
        .collect();
    for x in field.elements() {
        for y in field.elements() {
            let sign = Phase::from_sign(if form(x, y) == 0 { 1 } else { -1 });
            if phases[x.index()] * phases[y.index()] != sign * phases[(x + y).index()] {
                return Err(Error::InconsistentRecurrence);
            }
        }
    }
    Ok(phases)
}

/// Coefficients of `P_f` / `Q_f`: `c(κ)c(κ') = χ(κ' f(κ)) c(κ+κ')`.
pub fn solve_coefficients(
    field: &Field,
    f: &CurveFunction,
    branch: SeedBranch,
) -> Result<RotationCoefficients> {
    let values = f.poly().values(field);
    let phases = solve_phases(
        field,
        |x, y| field.trace(field.mul(y, values[x.index()])),
        branch,
    )?;
    Ok(RotationCoefficients { phases })
}

/// `P_f = F diag(c) F†`, so that `P_f Z_α P_f† ∝ Z_α X_{f(α)}`.
pub fn p_op(field: &Field, f: &CurveFunction) -> Result<CMatrix> {
    p_op_with(field, f, SeedBranch::Principal)
}

pub fn p_op_with(field: &Field, f: &CurveFunction, branch: SeedBranch) -> Result<CMatrix> {
    let c = solve_coefficients(field, f, branch)?;
    let ft = pauli::fourier(field);
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(c.to_complex()));
    Ok(&ft * diag * ft.adjoint())
}

/// `Q_g = diag(c)`, so that `Q_g X_β Q_g† ∝ Z_{g(β)} X_β`.
pub fn q_op(field: &Field, g: &CurveFunction) -> Result<CMatrix> {
    q_op_with(field, g, SeedBranch::Principal)
}

pub fn q_op_with(field: &Field, g: &CurveFunction, branch: SeedBranch) -> Result<CMatrix> {
    let c = solve_coefficients(field, g, branch)?;
    Ok(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(
        c.to_complex(),
    )))
}

/// Result of comparing `U D(p) U†` with `D(q)`.
#[derive(Clone, Copy, Debug)]
pub struct Conjugation {
    pub scalar: Complex64,
    /// `‖U D(p) U† − s D(q)‖_max`, with `s` the best-fit scalar.
    pub deviation: f64,
}

pub fn conjugation(field: &Field, u: &CMatrix, from: PhasePoint, to: PhasePoint) -> Conjugation {
    let image = u * pauli::displacement(field, from) * u.adjoint();
    let target = pauli::displacement(field, to);
    let scalar = linalg::trace_of_product(&target.adjoint(), &image) / field.size() as f64;
    let deviation = linalg::max_abs(&(image - target * scalar));
    Conjugation { scalar, deviation }
}

/// Generators of the composite rotation `P_h Q_g P_f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationTriple {
    pub f: CurveFunction,
    pub g: CurveFunction,
    pub h: CurveFunction,
}

impl RotationTriple {
    pub fn identity(n: usize) -> Self {
        RotationTriple {
            f: CurveFunction::zero(n),
            g: CurveFunction::zero(n),
            h: CurveFunction::zero(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.f.is_zero() && self.g.is_zero() && self.h.is_zero()
    }

    /// `U = P_h Q_g P_f`.
    pub fn unitary(&self, field: &Field) -> Result<CMatrix> {
        self.unitary_with(field, SeedBranch::Principal)
    }

    pub fn unitary_with(&self, field: &Field, branch: SeedBranch) -> Result<CMatrix> {
        let pf = p_op_with(field, &self.f, branch)?;
        let qg = q_op_with(field, &self.g, branch)?;
        let ph = p_op_with(field, &self.h, branch)?;
        Ok(ph * qg * pf)
    }

    /// Label action of `U`: `U D(p) U† ∝ D(map_point(p))`.
    pub fn map_point(&self, field: &Field, p: PhasePoint) -> PhasePoint {
        let (mut a, mut b) = (p.alpha, p.beta);
        b += self.f.eval(field, a);
        a += self.g.eval(field, b);
        b += self.h.eval(field, a);
        PhasePoint::new(a, b)
    }

    /// Same action on a parametrized pair of linearized coordinates.
    pub fn map_coordinates(
        &self,
        field: &Field,
        alpha: &LinearizedPoly,
        beta: &LinearizedPoly,
    ) -> (LinearizedPoly, LinearizedPoly) {
        let beta = beta.add(&self.f.poly().compose(field, alpha));
        let alpha = alpha.add(&self.g.poly().compose(field, &beta));
        let beta = beta.add(&self.h.poly().compose(field, &alpha));
        (alpha, beta)
    }
}
