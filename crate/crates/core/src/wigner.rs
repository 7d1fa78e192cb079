//! Curve-based discrete Wigner functions.
//!
//! For a bundle with curves `Γ^l_κ` carrying states `|Ψ^l_κ⟩` the phase-point
//! operators are
//! `ŵ(p) = Σ_l Σ_κ [p ∈ Γ^l_κ] |Ψ^l_κ⟩⟨Ψ^l_κ| − 1`
//! and `W(p) = Tr[ρ ŵ(p)]`. Operators are stored densely, one per point, in
//! row-major order over `(α, β)` encodings.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curves::{BundleSignature, Curve};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, CMatrix, ONE};
use crate::mubs::{self, MubBundle};
use crate::pauli::{self, PhasePoint};
use crate::rotations::RotationTriple;
use crate::state::{DensityMatrix, QuantumState, StateVector};

/// Kernel work is limited to `n <= MAX_KERNEL_QUBITS`.
pub const MAX_KERNEL_QUBITS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelSource {
    Standard,
    Bundle(BundleSignature),
    Striations,
    /// `U ŵ U†` for the standard kernel.
    Transformed,
}

#[derive(Clone, Debug)]
pub struct WignerKernel {
    n: usize,
    ops: Vec<CMatrix>,
    source: KernelSource,
}

impl WignerKernel {
    pub fn from_operators(field: &Field, ops: Vec<CMatrix>, source: KernelSource) -> Result<Self> {
        let d = field.size();
        if ops.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                actual: ops.len(),
            });
        }
        if let Some(bad) = ops.iter().find(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: bad.nrows(),
            });
        }
        Ok(WignerKernel {
            n: field.n(),
            ops,
            source,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn source(&self) -> &KernelSource {
        &self.source
    }

    pub fn op(&self, p: PhasePoint) -> &CMatrix {
        &self.ops[p.grid_index(self.dim())]
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn structure(&self) -> KernelStructure {
        let d = self.dim();
        let hermiticity = self
            .ops
            .iter()
            .map(linalg::hermiticity_deviation)
            .fold(0.0, f64::max);
        let trace = self
            .ops
            .iter()
            .map(|m| (linalg::trace(m) - ONE).norm())
            .fold(0.0, f64::max);
        let total = self.ops.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
        let sum = linalg::max_abs(&(total - linalg::identity(d) * (ONE * d as f64)));
        // Gram matrix of the vectorized operators: Tr(ŵ_p ŵ_q) for Hermitian ŵ.
        let stacked = CMatrix::from_fn(d * d, self.ops.len(), |r, c| self.ops[c][(r / d, r % d)]);
        let gram = stacked.adjoint() * &stacked;
        let target = linalg::identity(self.ops.len()) * (ONE * d as f64);
        let orthogonality = linalg::max_abs(&(gram - target));
        KernelStructure {
            hermiticity,
            trace,
            sum,
            orthogonality,
        }
    }
}

/// Measured structural defects of a kernel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelStructure {
    /// `max ‖ŵ − ŵ†‖_max`
    pub hermiticity: f64,
    /// `max |Tr ŵ − 1|`
    pub trace: f64,
    /// `‖Σ ŵ − 2^n·1‖_max`
    pub sum: f64,
    /// `max |Tr(ŵ_p ŵ_q) − 2^n δ_pq|`; measured, not required.
    pub orthogonality: f64,
}

impl KernelStructure {
    pub fn passes(&self, hermiticity_tol: f64, tol: f64) -> bool {
        self.hermiticity < hermiticity_tol && self.trace < tol && self.sum < tol
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality < tol
    }
}

fn check_size(field: &Field) -> Result<()> {
    if field.n() > MAX_KERNEL_QUBITS {
        return Err(Error::KernelTooLarge {
            n: field.n(),
            max: MAX_KERNEL_QUBITS,
        });
    }
    Ok(())
}

/// Wootters kernel written out directly:
/// `ŵ(α,β) = |Ψ̃_α⟩⟨Ψ̃_α| + Σ_λ |Ψ_{λ; β+λα}⟩⟨Ψ_{λ; β+λα}| − 1`.
pub fn kernel_standard(field: &Field) -> Result<WignerKernel> {
    check_size(field)?;
    let d = field.size();
    let bundle = mubs::standard_mubs(field);
    let projectors: Vec<Vec<CMatrix>> = bundle
        .bases
        .iter()
        .map(|b| {
            b.states
                .iter()
                .map(|s| linalg::projector(s.amplitudes()))
                .collect()
        })
        .collect();
    let mut ops = Vec::with_capacity(d * d);
    for a in field.elements() {
        for b in field.elements() {
            let mut w = projectors[d][a.index()].clone() - linalg::identity(d);
            for l in field.elements() {
                let k = b + field.mul(l, a);
                w += &projectors[l.index()][k.index()];
            }
            ops.push(w);
        }
    }
    WignerKernel::from_operators(field, ops, KernelSource::Standard)
}

/// Kernel of a verified bundle; each state is spread over its own curve.
pub fn kernel_bundle(field: &Field, bundle: &MubBundle) -> Result<WignerKernel> {
    check_size(field)?;
    let geometry = mubs::verify_geometry(field, bundle);
    if !geometry.passes(field.size()) {
        return Err(Error::NotABundle(format!("{geometry:?}")));
    }
    let mut kernel = kernel_from_striations(field, bundle.curve_states())?;
    kernel.source = KernelSource::Bundle(bundle.signature.clone());
    Ok(kernel)
}

/// `Σ [p ∈ Γ] |Ψ⟩⟨Ψ| − 1` over arbitrary `(curve, state)` pairs, unchecked.
pub fn kernel_from_striations<'a, I>(field: &Field, pairs: I) -> Result<WignerKernel>
where
    I: IntoIterator<Item = (Curve, &'a StateVector)>,
{
    check_size(field)?;
    let d = field.size();
    let mut ops = vec![-linalg::identity(d); d * d];
    for (curve, state) in pairs {
        if state.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: state.dim(),
            });
        }
        let proj = linalg::projector(state.amplitudes());
        for p in curve.points(field) {
            ops[p.grid_index(d)] += &proj;
        }
    }
    WignerKernel::from_operators(field, ops, KernelSource::Striations)
}

/// `U ŵ(α,β) U†` with `U = P_h Q_g P_f` and `ŵ` the standard kernel.
pub fn kernel_transformed(field: &Field, triple: &RotationTriple) -> Result<WignerKernel> {
    let base = kernel_standard(field)?;
    let u = triple.unitary(field)?;
    let ud = u.adjoint();
    let ops = base.ops.iter().map(|w| &u * w * &ud).collect();
    WignerKernel::from_operators(field, ops, KernelSource::Transformed)
}

/// Real `2^n × 2^n` table `W(α, β)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerGrid {
    n: usize,
    values: Vec<f64>,
    /// Largest discarded imaginary part.
    max_imaginary: f64,
}

impl WignerGrid {
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        let d = 1usize << n;
        if values.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                actual: values.len(),
            });
        }
        Ok(WignerGrid {
            n,
            values,
            max_imaginary: 0.0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, p: PhasePoint) -> f64 {
        self.values[p.grid_index(self.dim())]
    }

    /// Row-major over `(α, β)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_imaginary(&self) -> f64 {
        self.max_imaginary
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    fn point(&self, i: usize) -> PhasePoint {
        let d = self.dim();
        PhasePoint::from_bits((i / d) as u32, (i % d) as u32)
    }

    /// Points with `|W| > tol`, row-major.
    pub fn support(&self, tol: f64) -> Vec<PhasePoint> {
        (0..self.values.len())
            .filter(|&i| self.values[i].abs() > tol)
            .map(|i| self.point(i))
            .collect()
    }

    /// `alpha,beta,value` with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,beta,value\n");
        for (i, &v) in self.values.iter().enumerate() {
            let p = self.point(i);
            let _ = writeln!(out, "{},{},{}", p.alpha, p.beta, format_value(v));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let p = self.point(i);
                let value: f64 = format_value(v).parse().expect("formatted float");
                serde_json::json!({ "alpha": p.alpha, "beta": p.beta, "value": value })
            })
            .collect();
        serde_json::json!({ "n": self.n, "grid": rows })
    }

    /// Whitespace-separated `alpha beta value` blocks, one per α, separated
    /// by blank lines (gnuplot `splot` / `plot with image` layout).
    pub fn to_gnuplot(&self) -> String {
        let d = self.dim();
        let mut out = String::from("# alpha beta value\n");
        for a in 0..d {
            for b in 0..d {
                let _ = writeln!(out, "{a} {b} {}", format_value(self.values[a * d + b]));
            }
            out.push('\n');
        }
        out
    }
}

/// Twelve significant digits in shortest form; magnitudes below `1e-12`
/// print as `0`.
pub fn format_value(v: f64) -> String {
    if v.abs() < 1e-12 {
        return "0".to_string();
    }
    let s = format!("{v:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn wigner_function(kernel: &WignerKernel, state: &QuantumState) -> Result<WignerGrid> {
    match state {
        QuantumState::Pure(s) => wigner_of_pure(kernel, s),
        QuantumState::Mixed(r) => wigner_of_density(kernel, r),
    }
}

pub fn wigner_of_pure(kernel: &WignerKernel, state: &StateVector) -> Result<WignerGrid> {
    check_dim(kernel, state.dim())?;
    let psi = state.amplitudes();
    grid_from(kernel, |w| linalg::expectation(w, psi))
}

pub fn wigner_of_density(kernel: &WignerKernel, rho: &DensityMatrix) -> Result<WignerGrid> {
    check_dim(kernel, rho.dim())?;
    grid_from(kernel, |w| linalg::trace_of_product(rho.matrix(), w))
}

fn check_dim(kernel: &WignerKernel, dim: usize) -> Result<()> {
    if dim != kernel.dim() {
        return Err(Error::DimensionMismatch {
            expected: kernel.dim(),
            actual: dim,
        });
    }
    Ok(())
}

fn grid_from<F>(kernel: &WignerKernel, eval: F) -> Result<WignerGrid>
where
    F: Fn(&CMatrix) -> num_complex::Complex64,
{
    let mut max_imaginary: f64 = 0.0;
    let values = kernel
        .ops
        .iter()
        .map(|w| {
            let z = eval(w);
            max_imaginary = max_imaginary.max(z.im.abs());
            z.re
        })
        .collect();
    if max_imaginary > 1e-12 {
        log::warn!("discarding imaginary residue {max_imaginary:e}");
    }
    Ok(WignerGrid {
        n: kernel.n,
        values,
        max_imaginary,
    })
}

/// `Σ_{p ∈ Γ} W(p)`.
pub fn marginal_along_curve(field: &Field, grid: &WignerGrid, curve: &Curve) -> f64 {
    curve.points(field).into_iter().map(|p| grid.get(p)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Negativity {
    pub min_value: f64,
    /// `Σ |W(p)|` over negative entries.
    pub negative_sum: f64,
}

pub fn negativity(grid: &WignerGrid) -> Negativity {
    Negativity {
        min_value: grid.values.iter().copied().fold(f64::INFINITY, f64::min),
        negative_sum: grid
            .values
            .iter()
            .filter(|&&v| v < 0.0)
            .fold(0.0, |acc, v| acc - v),
    }
}

/// `ρ = 2^{-n} Σ W(p) ŵ(p)`; exact when the kernel is orthogonal.
pub fn reconstruct(kernel: &WignerKernel, grid: &WignerGrid) -> CMatrix {
    let d = kernel.dim();
    let acc = kernel
        .ops
        .iter()
        .zip(&grid.values)
        .fold(CMatrix::zeros(d, d), |acc, (w, &v)| acc + w * (ONE * v));
    acc / (ONE * d as f64)
}

/// Largest `|Σ_{Γ} W − 2^n ⟨Ψ|ρ|Ψ⟩|` over every curve of the bundle.
pub fn tomographic_deviation(
    field: &Field,
    grid: &WignerGrid,
    bundle: &MubBundle,
    rho: &DensityMatrix,
) -> f64 {
    let d = field.size() as f64;
    bundle
        .curve_states()
        .map(|(c, s)| {
            (marginal_along_curve(field, grid, &c) - d * rho.probability(s.amplitudes())).abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CovarianceMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    /// `max ‖ŵ(p+q) − D(q) ŵ(p) D(q)†‖_F`.
    pub max_deviation: f64,
    pub checked: usize,
    pub sampled: bool,
}

pub fn covariance_check(
    field: &Field,
    kernel: &WignerKernel,
    mode: CovarianceMode,
) -> CovarianceReport {
    let d = field.size();
    let pairs: Vec<(PhasePoint, PhasePoint)> = match mode {
        CovarianceMode::Exhaustive => {
            let pts = pauli::all_points(field);
            pts.iter()
                .flat_map(|&p| pts.iter().map(move |&q| (p, q)))
                .collect()
        }
        CovarianceMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pick = || FieldElement::new(rng.random_range(0..d as u32));
            (0..count)
                .map(|_| {
                    (
                        PhasePoint::new(pick(), pick()),
                        PhasePoint::new(pick(), pick()),
                    )
                })
                .collect()
        }
    };
    let mut worst: f64 = 0.0;
    for &(p, q) in &pairs {
        let dq = pauli::displacement(field, q);
        let moved = &dq * kernel.op(p) * dq.adjoint();
        worst = worst.max(linalg::frobenius_norm(&(kernel.op(p + q) - moved)));
    }
    CovarianceReport {
        max_deviation: worst,
        checked: pairs.len(),
        sampled: matches!(mode, CovarianceMode::Sampled { .. }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mubs::{standard_mubs, BasisLabel, Preset};
    use crate::state::{ghz, haar_random_state, random_density_matrix};

    fn gf(n: usize) -> Field {
        Field::with_default_polynomial(n).unwrap()
    }

    #[test]
    fn standard_kernel_structure() {
        for n in 2..=3 {
            let f = gf(n);
            let k = kernel_standard(&f).unwrap();
            let s = k.structure();
            assert!(s.passes(1e-12, 1e-10), "{s:?}");
            assert!(s.is_orthogonal(1e-10), "{s:?}");
        }
    }

    #[test]
    fn standard_kernel_orthogonality_oracle_gf4() {
        let f = gf(2);
        let k = kernel_standard(&f).unwrap();
        for p in pauli::all_points(&f) {
            for q in pauli::all_points(&f) {
                let t = linalg::trace(&(k.op(p) * k.op(q)));
                let expected = if p == q { 4.0 } else { 0.0 };
                assert!((t.re - expected).abs() < 1e-10 && t.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ray_bundle_kernel_equals_direct_formula() {
        for n in 2..=3 {
            let f = gf(n);
            let direct = kernel_standard(&f).unwrap();
            let bundle = kernel_bundle(&f, &standard_mubs(&f)).unwrap();
            for (a, b) in direct.ops().iter().zip(bundle.ops()) {
                assert!(linalg::max_abs(&(a - b)) < 1e-12);
            }
        }
    }

    #[test]
    fn identity_transformation_is_standard() {
        let f = gf(3);
        let direct = kernel_standard(&f).unwrap();
        let t = kernel_transformed(&f, &RotationTriple::identity(3)).unwrap();
        for (a, b) in direct.ops().iter().zip(t.ops()) {
            assert!(linalg::max_abs(&(a - b)) < 1e-12);
        }
    }

    #[test]
    fn line_states_are_line_indicators() {
        let f = gf(3);
        let k = kernel_standard(&f).unwrap();
        let b = standard_mubs(&f);
        for basis in &b.bases {
            for (i, s) in basis.states.iter().enumerate() {
                let grid = wigner_of_pure(&k, s).unwrap();
                let curve = basis.curve_for(FieldElement::new(i as u32));
                let on = curve.point_set(&f);
                for p in pauli::all_points(&f) {
                    let expected = if on.contains(&p) { 1.0 } else { 0.0 };
                    assert!((grid.get(p) - expected).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let f = gf(3);
        let k = kernel_standard(&f).unwrap();
        let g =
            wigner_function(&k, &QuantumState::Mixed(DensityMatrix::maximally_mixed(8))).unwrap();
        assert!(g.values().iter().all(|v| (v - 0.125).abs() < 1e-12));
        assert!((g.sum() - 8.0).abs() < 1e-10);
    }

    #[test]
    fn dimension_mismatch() {
        let k = kernel_standard(&gf(2)).unwrap();
        let s = StateVector::basis(8, FieldElement::ZERO);
        assert!(matches!(
            wigner_of_pure(&k, &s),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_size_cap() {
        let f = Field::new(5, 0b100101).unwrap();
        assert!(matches!(
            kernel_standard(&f),
            Err(Error::KernelTooLarge { .. })
        ));
    }

    #[test]
    fn tomography_and_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = gf(3);
        for preset in Preset::ALL {
            let bundle = preset.bundle(&f).unwrap();
            let k = kernel_bundle(&f, &bundle).unwrap();
            let s = k.structure();
            assert!(s.passes(1e-12, 1e-10), "{preset}: {s:?}");
            for _ in 0..5 {
                let rho = random_density_matrix(8, &mut rng);
                let g = wigner_of_density(&k, &rho).unwrap();
                assert!(tomographic_deviation(&f, &g, &bundle, &rho) < 1e-10);
                assert!((g.sum() - 8.0).abs() < 1e-10);
                if s.is_orthogonal(1e-10) {
                    assert!(linalg::max_abs(&(reconstruct(&k, &g) - rho.matrix())) < 1e-9);
                }
            }
        }
    }

    #[test]
    fn covariance_of_standard_and_rotated_kernels() {
        let f = gf(2);
        let r = covariance_check(
            &f,
            &kernel_standard(&f).unwrap(),
            CovarianceMode::Exhaustive,
        );
        assert!(r.max_deviation < 1e-10 && r.checked == 256 && !r.sampled);
        let f = gf(3);
        let bundle = Preset::Set162.bundle(&f).unwrap();
        let k = kernel_bundle(&f, &bundle).unwrap();
        let r = covariance_check(
            &f,
            &k,
            CovarianceMode::Sampled {
                count: 200,
                seed: 1,
            },
        );
        assert!(r.max_deviation < 1e-10 && r.sampled);
    }

    #[test]
    fn corrupted_kernel_breaks_covariance() {
        let f = gf(2);
        let k = kernel_standard(&f).unwrap();
        let mut ops = k.ops().to_vec();
        ops[5] += linalg::projector(&linalg::basis_vector(4, 1));
        let bad = WignerKernel::from_operators(&f, ops, KernelSource::Striations).unwrap();
        let r = covariance_check(&f, &bad, CovarianceMode::Exhaustive);
        assert!(r.max_deviation > 0.1);
    }

    #[test]
    fn ghz_support_by_preset() {
        let f = gf(3);
        let psi = ghz(&f);
        for (preset, support) in [
            (Preset::Standard, None),
            (Preset::Set162, Some(64)),
            (Preset::Set234, Some(64)),
            (Preset::Set090, Some(8)),
        ] {
            let k = kernel_bundle(&f, &preset.bundle(&f).unwrap()).unwrap();
            let g = wigner_of_pure(&k, &psi).unwrap();
            let s = g.support(1e-10).len();
            if let Some(expected) = support {
                assert_eq!(s, expected, "{preset}");
            } else {
                assert!(s > 8);
            }
        }
    }

    #[test]
    fn set090_positive_line_state() {
        let f = gf(3);
        let bundle = Preset::Set090.bundle(&f).unwrap();
        let k = kernel_bundle(&f, &bundle).unwrap();
        let sigma = f.primitive_element();
        let p =
            crate::rotations::p_op(&f, &crate::rotations::CurveFunction::scalar(3, sigma)).unwrap();
        let psi = StateVector::normalized(p.column(0).into_owned()).unwrap();
        let g = wigner_of_pure(&k, &psi).unwrap();
        assert!(negativity(&g).negative_sum < 1e-10);
        let line: Vec<PhasePoint> = f
            .elements()
            .map(|a| PhasePoint::new(a, f.mul(sigma, a) + f.primitive_power(5)))
            .collect();
        let mut support = g.support(1e-10);
        support.sort();
        let mut line_sorted = line.clone();
        line_sorted.sort();
        assert_eq!(support, line_sorted);
        assert!(bundle.basis(BasisLabel::Ray(sigma)).is_ok());
    }

    #[test]
    fn haar_states_are_negative_in_standard_kernel() {
        let f = gf(2);
        let k = kernel_standard(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let g = wigner_of_pure(&k, &haar_random_state(4, &mut rng)).unwrap();
            assert!(negativity(&g).negative_sum > 1e-6);
        }
    }

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(0.125), "0.125");
        assert_eq!(format_value(1.0), "1");
        assert_eq!(format_value(-0.5), "-0.5");
        assert_eq!(format_value(1e-17), "0");
        assert_eq!(format_value(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_value(8.0), "8");
        assert_eq!(format_value(2.5e-7), "2.5e-7");
        assert_eq!(format_value(123456.789), "123456.789");
    }

    #[test]
    fn csv_layout() {
        let g = WignerGrid::from_values(2, (0..16).map(f64::from).collect()).unwrap();
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,beta,value");
        assert_eq!(lines[1], "0,0,0");
        assert_eq!(lines[6], "1,1,5");
        assert_eq!(lines.len(), 17);
        assert_eq!(g.to_json()["grid"][6]["value"], 6.0);
        assert_eq!(g.to_gnuplot().lines().filter(|l| l.is_empty()).count(), 4);
    }
}
