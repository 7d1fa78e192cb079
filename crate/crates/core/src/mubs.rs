//! Complete sets of mutually unbiased bases paired with curve bundles.
//!
//! The standard set has bases `P_λ|κ⟩` (with `P_λ` the rotation for
//! `f(α) = λα`) and the `X` eigenbasis `F|κ⟩`. State `P_λ|κ⟩` belongs to the
//! line `β = λα + κ` and `F|κ⟩` to the line `α = κ`. A rotation
//! `U = P_h Q_g P_f` maps every state and, through its label action, every
//! curve of the bundle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curves::{bundle_signature, intersect, BundleSignature, Curve};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, CMatrix, CVector};
use crate::linearized::LinearizedPoly;
use crate::pauli::{self, PhasePoint};
use crate::rotations::{self, CurveFunction, RotationTriple};
use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisLabel {
    /// Basis attached to the ray `β = λα`.
    Ray(FieldElement),
    /// Basis attached to `α = 0`.
    XAxis,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Ray(l) => write!(f, "ray:{l}"),
            BasisLabel::XAxis => f.write_str("x-axis"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "x-axis" || s == "x" {
            return Ok(BasisLabel::XAxis);
        }
        let digits = s.strip_prefix("ray:").unwrap_or(s);
        digits
            .parse::<u32>()
            .map(|l| BasisLabel::Ray(FieldElement::new(l)))
            .map_err(|_| Error::UnknownLabel(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct MubBasis {
    pub label: BasisLabel,
    /// Indexed by κ.
    pub states: Vec<StateVector>,
    /// Striation representative through the origin.
    pub curve: Curve,
    /// Offset of the translate carrying state κ.
    pub offsets: Vec<PhasePoint>,
}

impl MubBasis {
    pub fn curve_for(&self, kappa: FieldElement) -> Curve {
        self.curve.translated(self.offsets[kappa.index()])
    }

    pub fn striation(&self) -> Vec<Curve> {
        self.offsets
            .iter()
            .map(|&p| self.curve.translated(p))
            .collect()
    }

    /// Labels of the commuting set this basis diagonalizes.
    pub fn monomials(&self, field: &Field) -> Vec<PhasePoint> {
        self.curve.monomials(field)
    }
}

#[derive(Clone, Debug)]
pub struct MubBundle {
    pub generators: RotationTriple,
    /// Rays in order of λ's encoding, then the x-axis.
    pub bases: Vec<MubBasis>,
    pub signature: BundleSignature,
}

impl MubBundle {
    pub fn dim(&self) -> usize {
        self.bases[0].states.len()
    }

    pub fn basis(&self, label: BasisLabel) -> Result<&MubBasis> {
        self.bases
            .iter()
            .find(|b| b.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn origin_curves(&self) -> Vec<Curve> {
        self.bases.iter().map(|b| b.curve.clone()).collect()
    }

    /// Every `(curve, state)` pair of the bundle.
    pub fn curve_states(&self) -> impl Iterator<Item = (Curve, &StateVector)> + '_ {
        self.bases.iter().flat_map(|b| {
            b.states
                .iter()
                .enumerate()
                .map(move |(k, s)| (b.curve.translated(b.offsets[k]), s))
        })
    }
}

/// Ray bundle with no rotation.
pub fn standard_mubs(field: &Field) -> MubBundle {
    rotated_mubs(field, &RotationTriple::identity(field.n()))
        .expect("ray bundle is always consistent")
}

/// Bundle of `U|Ψ⟩` for every standard state, `U = P_h Q_g P_f`.
pub fn rotated_mubs(field: &Field, triple: &RotationTriple) -> Result<MubBundle> {
    let n = field.n();
    let d = field.size();
    let u = triple.unitary(field)?;
    let mut bases = Vec::with_capacity(d + 1);
    for lambda in field.elements() {
        let p = rotations::p_op(field, &CurveFunction::scalar(n, lambda))?;
        let (alpha, beta) = triple.map_coordinates(
            field,
            &LinearizedPoly::identity(n),
            &LinearizedPoly::scalar(n, lambda),
        );
        bases.push(MubBasis {
            label: BasisLabel::Ray(lambda),
            states: columns(&(&u * p)),
            curve: Curve::new(alpha, beta, None),
            offsets: field
                .elements()
                .map(|k| triple.map_point(field, PhasePoint::new(FieldElement::ZERO, k)))
                .collect(),
        });
    }
    let (alpha, beta) = triple.map_coordinates(
        field,
        &LinearizedPoly::zero(n),
        &LinearizedPoly::identity(n),
    );
    bases.push(MubBasis {
        label: BasisLabel::XAxis,
        states: columns(&(&u * pauli::fourier(field))),
        curve: Curve::new(alpha, beta, None),
        offsets: field
            .elements()
            .map(|k| triple.map_point(field, PhasePoint::new(k, FieldElement::ZERO)))
            .collect(),
    });
    let curves: Vec<Curve> = bases.iter().map(|b| b.curve.clone()).collect();
    let signature = bundle_signature(field, &curves)?;
    Ok(MubBundle {
        generators: triple.clone(),
        bases,
        signature,
    })
}

fn columns(m: &CMatrix) -> Vec<StateVector> {
    m.column_iter()
        .map(|c| StateVector::normalized(c.into_owned()).expect("unitary columns are nonzero"))
        .collect()
}

/// Curve bundles for the four inequivalent three-qubit sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Rays, signature (3,0,6).
    Standard,
    /// `P_f`, `f = α + α² + α⁴`, signature (1,6,2).
    Set162,
    /// `Q_f P_f`, `f = σ²α + α² + α⁴`, signature (2,3,4).
    Set234,
    /// `P_f Q_f P_f`, `f = α + σ²α² + σα⁴`, signature (0,9,0).
    Set090,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Standard,
        Preset::Set162,
        Preset::Set234,
        Preset::Set090,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Standard => "standard",
            Preset::Set162 => "set162",
            Preset::Set234 => "set234",
            Preset::Set090 => "set090",
        }
    }

    /// Coefficients are powers of the smallest root σ of `σ³ + σ + 1`, so
    /// the presets do not depend on the choice of modulus.
    pub fn generators(self, field: &Field) -> Result<RotationTriple> {
        let n = field.n();
        if self == Preset::Standard {
            return Ok(RotationTriple::identity(n));
        }
        if n != 3 {
            return Err(Error::PresetUnavailable {
                preset: self.name().to_string(),
                n,
            });
        }
        let sigma = cubic_root(field);
        let s = |k| field.pow(sigma, k);
        let one = FieldElement::ONE;
        let func = |c: [FieldElement; 3]| {
            CurveFunction::new(field, LinearizedPoly::new(field, c.to_vec())?)
        };
        let zero = CurveFunction::zero(n);
        Ok(match self {
            Preset::Standard => unreachable!(),
            Preset::Set162 => RotationTriple {
                f: func([one, one, one])?,
                g: zero.clone(),
                h: zero,
            },
            Preset::Set234 => {
                let f = func([s(2), one, one])?;
                RotationTriple {
                    f: f.clone(),
                    g: f,
                    h: zero,
                }
            }
            Preset::Set090 => {
                let f = func([one, s(2), s(1)])?;
                RotationTriple {
                    f: f.clone(),
                    g: f.clone(),
                    h: f,
                }
            }
        })
    }

    pub fn bundle(self, field: &Field) -> Result<MubBundle> {
        rotated_mubs(field, &self.generators(field)?)
    }
}

/// Smallest root of `x³ + x + 1` in a field of eight elements.
pub fn cubic_root(field: &Field) -> FieldElement {
    field
        .elements()
        .find(|&x| field.pow(x, 3) + x + FieldElement::ONE == FieldElement::ZERO)
        .expect("x³ + x + 1 splits over GF(8)")
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnbiasednessReport {
    /// `max |⟨a|b⟩|² − 2^{-n}|` over states of different bases.
    pub max_overlap_deviation: f64,
    /// `max |⟨a|b⟩ − δ_ab|` within each basis.
    pub orthonormality_deviation: f64,
}

impl UnbiasednessReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_overlap_deviation < tol && self.orthonormality_deviation < tol
    }
}

pub fn verify_unbiased(bundle: &MubBundle) -> UnbiasednessReport {
    let target = 1.0 / bundle.dim() as f64;
    let vectors: Vec<Vec<&CVector>> = bundle
        .bases
        .iter()
        .map(|b| b.states.iter().map(StateVector::amplitudes).collect())
        .collect();
    let mut overlap: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i + 1..] {
            for x in a {
                for y in b {
                    overlap = overlap.max((x.dotc(y).norm_sqr() - target).abs());
                }
            }
        }
    }
    let ortho = vectors
        .iter()
        .map(|v| {
            let owned: Vec<CVector> = v.iter().map(|&x| x.clone()).collect();
            linalg::orthonormality_deviation(&owned)
        })
        .fold(0.0, f64::max);
    UnbiasednessReport {
        max_overlap_deviation: overlap,
        orthonormality_deviation: ortho,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenstateReport {
    /// `max ‖M|Ψ⟩ − ⟨Ψ|M|Ψ⟩|Ψ⟩‖`.
    pub max_residual: f64,
    /// `max ||⟨Ψ|M|Ψ⟩| − 1|`.
    pub max_modulus_deviation: f64,
}

impl EigenstateReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual < tol && self.max_modulus_deviation < tol
    }
}

/// Checks that each basis diagonalizes the monomials of its curve.
pub fn verify_eigenstates(field: &Field, bundle: &MubBundle) -> EigenstateReport {
    let mut residual: f64 = 0.0;
    let mut modulus: f64 = 0.0;
    for basis in &bundle.bases {
        for p in basis.monomials(field) {
            let m = pauli::displacement(field, p);
            for s in &basis.states {
                let psi = s.amplitudes();
                let v = &m * psi;
                let e = psi.dotc(&v);
                residual = residual.max((v - psi * e).norm());
                modulus = modulus.max((e.norm() - 1.0).abs());
            }
        }
    }
    EigenstateReport {
        max_residual: residual,
        max_modulus_deviation: modulus,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    /// Each striation covers every grid point exactly once.
    pub striations_partition: bool,
    /// Curves from different striations meet in exactly one point.
    pub single_crossings: bool,
    /// Number of bundle curves through each point, min and max.
    pub min_coverage: usize,
    pub max_coverage: usize,
}

impl GeometryReport {
    pub fn passes(&self, dim: usize) -> bool {
        self.striations_partition
            && self.single_crossings
            && self.min_coverage == dim + 1
            && self.max_coverage == dim + 1
    }
}

pub fn verify_geometry(field: &Field, bundle: &MubBundle) -> GeometryReport {
    let d = field.size();
    let striations: Vec<Vec<Curve>> = bundle.bases.iter().map(MubBasis::striation).collect();
    let mut coverage = vec![0usize; d * d];
    let mut partition = true;
    for s in &striations {
        let mut seen = BTreeSet::new();
        for c in s {
            for p in c.points(field) {
                coverage[p.grid_index(d)] += 1;
                partition &= seen.insert(p);
            }
        }
        partition &= seen.len() == d * d;
    }
    let mut crossings = true;
    for (i, a) in striations.iter().enumerate() {
        for b in &striations[i + 1..] {
            for ca in a {
                for cb in b {
                    crossings &= intersect(field, ca, cb).len() == 1;
                }
            }
        }
    }
    GeometryReport {
        striations_partition: partition,
        single_crossings: crossings,
        min_coverage: coverage.iter().copied().min().unwrap_or(0),
        max_coverage: coverage.iter().copied().max().unwrap_or(0),
    }
}

/// Curve carrying state κ of the given basis.
pub fn associate_curve(
    bundle: &MubBundle,
    label: BasisLabel,
    kappa: FieldElement,
) -> Result<Curve> {
    let basis = bundle.basis(label)?;
    if kappa.index() >= basis.offsets.len() {
        return Err(Error::UnknownLabel(format!("{label}, κ = {kappa}")));
    }
    Ok(basis.curve_for(kappa))
}

/// Common eigenstate of the monomials of an arbitrary stabilizer curve,
/// placed on the curve's translate.
///
/// Phases `s(τ)` with `s(τ)s(τ')χ(β(τ)α(τ')) = s(τ+τ')` make
/// `τ ↦ s(τ) Z_α(τ) X_β(τ)` a representation; its average is the rank-one
/// projector onto the state of the origin curve. The offset is applied as a
/// displacement.
pub fn curve_state(field: &Field, curve: &Curve) -> Result<StateVector> {
    let report = curve.validate(field);
    if !report.is_stabilizer() {
        return Err(Error::NotAStabilizerCurve(format!(
            "fails {:?}",
            report.failing_checks()
        )));
    }
    let origin = curve.origin_curve();
    let at = |t| origin.eval(field, t);
    let phases = rotations::solve_phases(
        field,
        |x, y| field.trace(field.mul(at(x).beta, at(y).alpha)),
        rotations::SeedBranch::Principal,
    )?;
    let d = field.size();
    let mut proj = CMatrix::zeros(d, d);
    for t in field.elements() {
        proj += pauli::displacement(field, at(t)) * phases[t.index()].to_complex();
    }
    proj /= linalg::ONE * d as f64;
    let best = (0..d)
        .max_by(|&a, &b| {
            proj.column(a)
                .norm()
                .partial_cmp(&proj.column(b).norm())
                .expect("finite entries")
        })
        .expect("nonempty");
    let mut psi = proj.column(best).into_owned();
    psi = pauli::displacement(field, curve.offset()) * psi;
    linalg::fix_global_phase(&mut psi);
    StateVector::normalized(psi)
}
