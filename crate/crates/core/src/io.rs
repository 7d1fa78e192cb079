//! JSON file formats.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::curves::{BundleSignature, Curve};
use crate::error::{Error, Result};
use crate::gf::{default_polynomial, DisplayMode, Field, FieldElement};
use crate::linalg::{CMatrix, CVector};
use crate::mubs::MubBundle;
use crate::rotations::CurveFunction;
use crate::state::{DensityMatrix, QuantumState, StateVector};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// Pretty-printed, newline-terminated.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible_poly: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_dual_basis: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display: Option<DisplayMode>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        let poly = match self.irreducible_poly {
            Some(p) => p,
            None => default_polynomial(self.n).ok_or(Error::NoDefaultPolynomial(self.n))?,
        };
        match &self.self_dual_basis {
            Some(basis) => {
                let basis: Vec<FieldElement> =
                    basis.iter().map(|&b| FieldElement::new(b)).collect();
                Field::with_self_dual_basis(self.n, poly, &basis)
            }
            None => Field::new(self.n, poly),
        }
    }

    pub fn describe(field: &Field) -> Self {
        FieldSpec {
            n: field.n(),
            irreducible_poly: Some(field.modulus()),
            self_dual_basis: Some(field.self_dual_basis().iter().map(|b| b.bits()).collect()),
            display: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub alpha_coeffs: Vec<u32>,
    pub beta_coeffs: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<[u32; 2]>,
}

impl CurveFile {
    pub fn build(&self, field: &Field) -> Result<Curve> {
        Curve::from_bits(
            field,
            &self.alpha_coeffs,
            &self.beta_coeffs,
            self.offset.map(|[a, b]| (a, b)),
        )
    }

    pub fn describe(curve: &Curve) -> Self {
        let bits = |c: &[FieldElement]| c.iter().map(|x| x.bits()).collect();
        let off = curve.offset();
        CurveFile {
            alpha_coeffs: bits(curve.alpha().coeffs()),
            beta_coeffs: bits(curve.beta().coeffs()),
            offset: (!off.is_origin()).then(|| [off.alpha.bits(), off.beta.bits()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    pub curves: Vec<CurveFile>,
}

impl BundleFile {
    pub fn build(&self, field: &Field) -> Result<Vec<Curve>> {
        self.curves.iter().map(|c| c.build(field)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveFunctionFile {
    Coeffs { coeffs: Vec<u32> },
    Table { table: Vec<u32> },
}

impl CurveFunctionFile {
    pub fn build(&self, field: &Field) -> Result<CurveFunction> {
        match self {
            CurveFunctionFile::Coeffs { coeffs } => CurveFunction::from_coeffs(field, coeffs),
            CurveFunctionFile::Table { table } => {
                let table: Vec<FieldElement> =
                    table.iter().map(|&v| FieldElement::new(v)).collect();
                CurveFunction::from_table(field, &table)
            }
        }
    }

    pub fn describe(f: &CurveFunction) -> Self {
        CurveFunctionFile::Coeffs {
            coeffs: f.poly().coeffs().iter().map(|c| c.bits()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Mixed,
}

/// Amplitudes and matrix entries are `[re, im]` pairs, indexed by field
/// encoding; matrices are row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

fn complex([re, im]: [f64; 2]) -> Complex64 {
    Complex64::new(re, im)
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn build(&self, field: &Field) -> Result<QuantumState> {
        if self.n != field.n() {
            return Err(Error::DimensionMismatch {
                expected: field.n(),
                actual: self.n,
            });
        }
        let d = field.size();
        match self.kind {
            StateKind::Pure => {
                let amps = self
                    .amplitudes
                    .as_ref()
                    .ok_or_else(|| Error::InvalidState("pure state needs \"amplitudes\"".into()))?;
                if amps.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        actual: amps.len(),
                    });
                }
                let v = CVector::from_iterator(d, amps.iter().copied().map(complex));
                Ok(QuantumState::Pure(StateVector::new(v)?))
            }
            StateKind::Mixed => {
                let rows = self
                    .matrix
                    .as_ref()
                    .ok_or_else(|| Error::InvalidState("mixed state needs \"matrix\"".into()))?;
                if rows.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        actual: rows.len(),
                    });
                }
                if let Some(bad) = rows.iter().find(|r| r.len() != d) {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        actual: bad.len(),
                    });
                }
                let m = CMatrix::from_fn(d, d, |r, c| complex(rows[r][c]));
                Ok(QuantumState::Mixed(DensityMatrix::new(m)?))
            }
        }
    }

    pub fn describe(n: usize, state: &QuantumState) -> Self {
        match state {
            QuantumState::Pure(s) => StateFile {
                n,
                kind: StateKind::Pure,
                amplitudes: Some(s.amplitudes().iter().map(pair).collect()),
                matrix: None,
            },
            QuantumState::Mixed(r) => StateFile {
                n,
                kind: StateKind::Mixed,
                amplitudes: None,
                matrix: Some(
                    r.matrix()
                        .row_iter()
                        .map(|row| row.iter().map(pair).collect())
                        .collect(),
                ),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorsExport {
    pub f: CurveFunctionFile,
    pub g: CurveFunctionFile,
    pub h: CurveFunctionFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisExport {
    pub label: String,
    pub curve: CurveFile,
    /// Offset of the curve carrying state κ, indexed by κ.
    pub offsets: Vec<[u32; 2]>,
    /// `states[κ]` as `[re, im]` amplitudes.
    pub states: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleExport {
    pub field: FieldSpec,
    pub generators: GeneratorsExport,
    pub signature: BundleSignature,
    pub bases: Vec<BasisExport>,
}

impl BundleExport {
    pub fn describe(field: &Field, bundle: &MubBundle) -> Self {
        let g = &bundle.generators;
        BundleExport {
            field: FieldSpec::describe(field),
            generators: GeneratorsExport {
                f: CurveFunctionFile::describe(&g.f),
                g: CurveFunctionFile::describe(&g.g),
                h: CurveFunctionFile::describe(&g.h),
            },
            signature: bundle.signature.clone(),
            bases: bundle
                .bases
                .iter()
                .map(|b| BasisExport {
                    label: b.label.to_string(),
                    curve: CurveFile::describe(&b.curve),
                    offsets: b
                        .offsets
                        .iter()
                        .map(|p| [p.alpha.bits(), p.beta.bits()])
                        .collect(),
                    states: b
                        .states
                        .iter()
                        .map(|s| s.amplitudes().iter().map(pair).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}
