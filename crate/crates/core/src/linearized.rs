//! Linearized polynomials `L(x) = Σ_r c_r x^(2^r)` over GF(2^n).
//!
//! These are exactly the GF(2)-linear maps of the field into itself. Curve
//! coordinates, rotation generators and their compositions are all carried in
//! this form so that curves keep explicit coefficient lists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != field.n() {
            return Err(Error::CoefficientLength {
                expected: field.n(),
                actual: coeffs.len(),
            });
        }
        for &c in &coeffs {
            field.element(c.bits())?;
        }
        Ok(LinearizedPoly { coeffs })
    }

    pub fn from_bits(field: &Field, bits: &[u32]) -> Result<Self> {
        Self::new(field, bits.iter().map(|&b| FieldElement::new(b)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LinearizedPoly {
            coeffs: vec![FieldElement::ZERO; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, FieldElement::ONE)
    }

    /// The map `x -> λx`.
    pub fn scalar(n: usize, lambda: FieldElement) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n];
        coeffs[0] = lambda;
        LinearizedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = x;
        for &c in &self.coeffs {
            acc += field.mul(c, power);
            power = field.square(power);
        }
        acc
    }

    /// Value table indexed by the integer encoding of the argument.
    pub fn values(&self, field: &Field) -> Vec<FieldElement> {
        field.elements().map(|x| self.eval(field, x)).collect()
    }

    pub fn add(&self, other: &LinearizedPoly) -> LinearizedPoly {
        LinearizedPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// `self ∘ inner`, using `x^(2^n) = x`.
    pub fn compose(&self, field: &Field, inner: &LinearizedPoly) -> LinearizedPoly {
        let n = field.n();
        let mut coeffs = vec![FieldElement::ZERO; n];
        for (r, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (s, &b) in inner.coeffs.iter().enumerate() {
                coeffs[(r + s) % n] += field.mul(a, field.frobenius(b, r));
            }
        }
        LinearizedPoly { coeffs }
    }

    /// Adjoint with respect to the trace form: `tr(y L(x)) = tr(x L*(y))`.
    pub fn adjoint(&self, field: &Field) -> LinearizedPoly {
        let n = field.n();
        let coeffs = (0..n)
            .map(|k| field.frobenius(self.coeffs[(n - k) % n], k))
            .collect();
        LinearizedPoly { coeffs }
    }

    /// Self-adjoint maps are exactly those with `tr(y L(x)) = tr(x L(y))`.
    pub fn is_self_adjoint(&self, field: &Field) -> bool {
        self.adjoint(field) == *self
    }

    pub fn is_bijective(&self, field: &Field) -> bool {
        field
            .elements()
            .skip(1)
            .all(|x| !self.eval(field, x).is_zero())
    }

    /// Interpolates a value table (indexed by encoding) of an additive map.
    ///
    /// Solves the Moore system `Σ_r c_r θ_i^(2^r) = v(θ_i)` on the self-dual
    /// basis and then checks the result against the whole table.
    pub fn from_values(field: &Field, values: &[FieldElement]) -> Result<Self> {
        let n = field.n();
        if values.len() != field.size() {
            return Err(Error::TableLength {
                expected: field.size(),
                actual: values.len(),
            });
        }
        for &v in values {
            field.element(v.bits())?;
        }
        let basis = field.self_dual_basis();
        let mut rows: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|&theta| {
                let mut row: Vec<_> = (0..n).map(|r| field.frobenius(theta, r)).collect();
                row.push(values[theta.index()]);
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !rows[r][col].is_zero())
                .expect("Moore matrix of a basis is nonsingular");
            rows.swap(col, pivot);
            let inv = field.inverse(rows[col][col])?;
            for entry in rows[col].iter_mut() {
                *entry = field.mul(*entry, inv);
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                let factor = row[col];
                if r != col && !factor.is_zero() {
                    for (entry, &p) in row.iter_mut().zip(&pivot_row) {
                        *entry += field.mul(factor, p);
                    }
                }
            }
        }
        let poly = LinearizedPoly {
            coeffs: rows.iter().map(|row| row[n]).collect(),
        };
        if poly.values(field) != values {
            return Err(Error::NotAdditive);
        }
        Ok(poly)
    }
}
