//! Subcommand bodies. Each returns `Ok(true)` when every check passes.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use gfphase::curves::{self, CurveReport, Regularity};
use gfphase::figures::{self, Figure, FigureData};
use gfphase::io::{self, BundleExport, BundleFile, CurveFile, FieldSpec, StateFile};
use gfphase::linalg::{self, CVector};
use gfphase::mubs::{self, MubBundle};
use gfphase::pauli;
use gfphase::state::ghz;
use gfphase::wigner::{self, CovarianceMode, WignerKernel};
use gfphase::{
    Curve, DensityMatrix, DisplayMode, Error, Field, FieldElement, Preset, QuantumState, Result,
    StateVector,
};
use serde::Serialize;

use crate::{output, Config};

/// Sampled covariance is used above this many qubits.
const EXHAUSTIVE_COVARIANCE_MAX_N: usize = 2;
const COVARIANCE_SAMPLES: usize = 200;

/// `(label, [(curve, state)])` for every basis of a bundle.
type Striations = Vec<(String, Vec<(Curve, StateVector)>)>;

pub fn build_field(cfg: &Config) -> Result<Field> {
    if let Some(path) = &cfg.field {
        return io::read_json::<FieldSpec>(path)?.build();
    }
    match cfg.poly {
        Some(p) => Field::new(cfg.n, p),
        None => Field::with_default_polynomial(cfg.n),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn poly_string(p: u32) -> String {
    let terms: Vec<String> = (0..32)
        .rev()
        .filter(|r| p >> r & 1 == 1)
        .map(|r| match r {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{r}"),
        })
        .collect();
    terms.join(" + ")
}

fn bits_list(field: &Field, xs: &[FieldElement], mode: DisplayMode) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| field.render(x, mode)).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Serialize)]
struct ElementRow {
    element: u32,
    log: Option<usize>,
    trace: u8,
    coords: Vec<u8>,
}

#[derive(Serialize)]
struct FieldReport {
    field: FieldSpec,
    primitive_element: u32,
    elements: Vec<ElementRow>,
}

pub fn field(cfg: &Config, mode: DisplayMode) -> Result<bool> {
    let field = build_field(cfg)?;
    let basis = field.self_dual_basis().to_vec();
    println!("field: GF(2^{}) with {} elements", field.n(), field.size());
    println!(
        "modulus: {:#b} ({})",
        field.modulus(),
        poly_string(field.modulus())
    );
    println!("primitive element: {}", field.primitive_element());
    println!(
        "self-dual basis: {}",
        bits_list(&field, &basis, DisplayMode::Integer)
    );
    println!();
    println!("{:>8}  {:>6}  {:>5}  coords", "element", "log", "trace");
    let mut rows = Vec::new();
    for a in field.elements() {
        let log = field.log(a);
        let coords = field.expand(a);
        let coord_str: String = coords.iter().map(u8::to_string).collect();
        let log_str = log.map_or("-".to_string(), |k| k.to_string());
        println!(
            "{:>8}  {:>6}  {:>5}  {}",
            field.render(a, mode),
            log_str,
            field.trace(a),
            coord_str
        );
        rows.push(ElementRow {
            element: a.bits(),
            log,
            trace: field.trace(a),
            coords,
        });
    }
    println!();
    println!("trace form tr(θ_i θ_j):");
    let mut dual = true;
    for (i, &x) in basis.iter().enumerate() {
        let row: Vec<String> = basis
            .iter()
            .enumerate()
            .map(|(j, &y)| {
                let t = field.trace(field.mul(x, y));
                dual &= t == u8::from(i == j);
                t.to_string()
            })
            .collect();
        println!("  {}", row.join(" "));
    }
    println!("self-dual: {}", yes_no(dual));
    if let Some(dir) = &cfg.out {
        let report = FieldReport {
            field: FieldSpec::describe(&field),
            primitive_element: field.primitive_element().bits(),
            elements: rows,
        };
        output::write_json(dir, "field.json", &report)?;
    }
    Ok(dual)
}

#[derive(Serialize)]
struct CurveSummary {
    curve: CurveFile,
    points: Vec<[u32; 2]>,
    checks: CurveReport,
    stabilizer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity: Option<Regularity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorization: Option<Vec<Vec<usize>>>,
}

fn print_curve(field: &Field, curve: &Curve) -> CurveSummary {
    let file = CurveFile::describe(curve);
    let off = curve.offset();
    println!(
        "curve: alpha {} beta {} offset {}",
        bits_list(field, curve.alpha().coeffs(), DisplayMode::Integer),
        bits_list(field, curve.beta().coeffs(), DisplayMode::Integer),
        off
    );
    let points = curve.points(field);
    let shown: Vec<String> = points.iter().map(ToString::to_string).collect();
    println!("points: {}", shown.join(" "));
    let checks = curve.validate(field);
    println!("commuting: {}", yes_no(checks.commuting));
    println!("origin: {}", yes_no(checks.origin));
    println!("injective: {}", yes_no(checks.injective));
    println!(
        "coefficient condition: {}",
        yes_no(checks.coefficient_condition)
    );
    let stabilizer = checks.is_stabilizer();
    if stabilizer {
        println!("stabilizer curve: yes");
    } else {
        println!(
            "stabilizer curve: no (fails {})",
            checks.failing_checks().join(", ")
        );
    }
    let mut summary = CurveSummary {
        curve: file,
        points: points
            .iter()
            .map(|p| [p.alpha.bits(), p.beta.bits()])
            .collect(),
        checks,
        stabilizer,
        regularity: None,
        factorization: None,
    };
    if stabilizer {
        let regularity = curve.classify(field);
        println!("regularity: {regularity}");
        summary.regularity = Some(regularity);
        match curve.factorization(field) {
            Ok(fact) => {
                println!(
                    "factorization: {fact} qubit blocks {:?}",
                    fact.block_members
                );
                for alt in &fact.alternatives {
                    println!("alternative finest partition: {alt:?}");
                }
                summary.factorization = Some(fact.block_members);
            }
            Err(e) => println!("factorization: {e}"),
        }
    }
    summary
}

pub fn curve(cfg: &Config, path: &Path) -> Result<bool> {
    let field = build_field(cfg)?;
    let curve = io::read_json::<CurveFile>(path)?.build(&field)?;
    let summary = print_curve(&field, &curve);
    if let Some(dir) = &cfg.out {
        output::write_json(dir, "curve.json", &summary)?;
    }
    Ok(summary.stabilizer)
}

fn preset_striations(bundle: &MubBundle) -> Striations {
    bundle
        .bases
        .iter()
        .map(|b| {
            let pairs = b
                .states
                .iter()
                .enumerate()
                .map(|(k, s)| (b.curve.translated(b.offsets[k]), s.clone()))
                .collect();
            (b.label.to_string(), pairs)
        })
        .collect()
}

/// Each origin curve is swept over coset representatives in encoding order.
fn curve_striations(field: &Field, curves: &[Curve]) -> Result<Striations> {
    let points = pauli::all_points(field);
    curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let origin = c.origin_curve();
            let mut covered = BTreeSet::new();
            let mut pairs = Vec::new();
            for &p in &points {
                if covered.contains(&p) {
                    continue;
                }
                let t = origin.translated(p);
                covered.extend(t.point_set(field));
                let s = mubs::curve_state(field, &t)?;
                pairs.push((t, s));
            }
            Ok((format!("curve:{i}"), pairs))
        })
        .collect()
}

/// `(max |overlap² − 1/d| across bases, max orthonormality defect within a basis)`.
fn overlap_deviations(groups: &Striations, d: usize) -> (f64, f64) {
    let target = 1.0 / d as f64;
    let vectors: Vec<Vec<&CVector>> = groups
        .iter()
        .map(|(_, g)| g.iter().map(|(_, s)| s.amplitudes()).collect())
        .collect();
    let mut cross: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i + 1..] {
            for x in a {
                for y in b {
                    cross = cross.max((x.dotc(y).norm_sqr() - target).abs());
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
    (cross, ortho)
}

fn read_bundle(field: &Field, path: &Path) -> Result<Vec<Curve>> {
    io::read_json::<BundleFile>(path)?.build(field)
}

pub fn mubs(cfg: &Config, preset: Option<Preset>, bundle: Option<&Path>) -> Result<bool> {
    let field = build_field(cfg)?;
    match bundle {
        Some(path) => mubs_from_curves(cfg, &field, &read_bundle(&field, path)?),
        None => mubs_from_preset(cfg, &field, preset.unwrap_or(Preset::Standard)),
    }
}

fn mubs_from_preset(cfg: &Config, field: &Field, preset: Preset) -> Result<bool> {
    let bundle = preset.bundle(field)?;
    let d = field.size();
    println!("preset: {preset}");
    println!("signature: {}", bundle.signature);
    for b in &bundle.bases {
        let fact = b.curve.factorization(field)?;
        println!(
            "basis {}: fact {} alpha {} beta {}",
            b.label,
            fact,
            bits_list(field, b.curve.alpha().coeffs(), DisplayMode::Integer),
            bits_list(field, b.curve.beta().coeffs(), DisplayMode::Integer)
        );
    }
    let unitarity = linalg::unitarity_deviation(&bundle.generators.unitary(field)?);
    let unbiased = mubs::verify_unbiased(&bundle);
    let eigen = mubs::verify_eigenstates(field, &bundle);
    let geometry = mubs::verify_geometry(field, &bundle);
    println!("unitarity deviation: {unitarity:.3e}");
    println!(
        "max overlap deviation: {:.3e}",
        unbiased.max_overlap_deviation
    );
    println!(
        "orthonormality deviation: {:.3e}",
        unbiased.orthonormality_deviation
    );
    println!("eigenstate residual: {:.3e}", eigen.max_residual);
    println!(
        "eigenvalue modulus deviation: {:.3e}",
        eigen.max_modulus_deviation
    );
    println!(
        "striations partition the grid: {}",
        yes_no(geometry.striations_partition)
    );
    println!(
        "curves of different bases meet once: {}",
        yes_no(geometry.single_crossings)
    );
    println!(
        "curves through each point: {}..{}",
        geometry.min_coverage, geometry.max_coverage
    );
    let pass = unitarity < cfg.herm_tol
        && unbiased.passes(cfg.tol)
        && eigen.passes(cfg.tol)
        && geometry.passes(d);
    if let Some(dir) = &cfg.out {
        output::write_json(
            dir,
            &format!("mubs-{preset}.json"),
            &BundleExport::describe(field, &bundle),
        )?;
    }
    Ok(pass)
}

#[derive(Serialize)]
struct CurveBundleReport {
    signature: String,
    curves: Vec<CurveSummary>,
    max_overlap_deviation: f64,
    orthonormality_deviation: f64,
}

fn mubs_from_curves(cfg: &Config, field: &Field, curves: &[Curve]) -> Result<bool> {
    let mut summaries = Vec::new();
    for (i, c) in curves.iter().enumerate() {
        println!("[curve {i}]");
        summaries.push(print_curve(field, c));
    }
    println!();
    let signature = match curves::bundle_signature(field, curves) {
        Ok(s) => s,
        Err(e) => {
            println!("signature: {e}");
            return Ok(false);
        }
    };
    println!("signature: {signature}");
    let groups = curve_striations(field, curves)?;
    let (cross, ortho) = overlap_deviations(&groups, field.size());
    println!("max overlap deviation: {cross:.3e}");
    println!("orthonormality deviation: {ortho:.3e}");
    if let Some(dir) = &cfg.out {
        let report = CurveBundleReport {
            signature: signature.to_string(),
            curves: summaries,
            max_overlap_deviation: cross,
            orthonormality_deviation: ortho,
        };
        output::write_json(dir, "mubs-bundle.json", &report)?;
    }
    Ok(cross < cfg.tol && ortho < cfg.tol)
}

pub struct WignerArgs {
    pub state: String,
    pub preset: Option<Preset>,
    pub bundle: Option<PathBuf>,
    pub check_marginals: bool,
    pub check_covariance: bool,
    pub name: String,
}

fn parse_state(field: &Field, spec: &str) -> Result<QuantumState> {
    let d = field.size();
    match spec {
        "ghz" => Ok(QuantumState::Pure(ghz(field))),
        "mixed" => Ok(QuantumState::Mixed(DensityMatrix::maximally_mixed(d))),
        _ => {
            if let Some(k) = spec.strip_prefix("basis:") {
                let k = k
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidState(format!("bad basis index {k:?}")))?;
                return Ok(QuantumState::Pure(StateVector::basis(d, field.element(k)?)));
            }
            io::read_json::<StateFile>(Path::new(spec))?.build(field)
        }
    }
}

#[derive(Serialize)]
struct MarginalRow {
    basis: String,
    max_deviation: f64,
}

#[derive(Serialize)]
struct WignerReport {
    state: String,
    kernel: String,
    hermiticity: f64,
    trace: f64,
    operator_sum: f64,
    orthogonality: f64,
    grid_sum: f64,
    support: usize,
    min_value: f64,
    negative_sum: f64,
    max_imaginary: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    marginals: Option<Vec<MarginalRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    covariance: Option<wigner::CovarianceReport>,
    passed: bool,
}

pub fn wigner(cfg: &Config, args: &WignerArgs) -> Result<bool> {
    let field = build_field(cfg)?;
    let d = field.size();
    let state = parse_state(&field, &args.state)?;
    let (label, groups, kernel) = match &args.bundle {
        Some(path) => {
            let curves = read_bundle(&field, path)?;
            let signature = curves::bundle_signature(&field, &curves)?;
            let groups = curve_striations(&field, &curves)?;
            let kernel = wigner::kernel_from_striations(
                &field,
                groups
                    .iter()
                    .flat_map(|(_, g)| g.iter().map(|(c, s)| (c.clone(), s))),
            )?;
            (format!("bundle {signature}"), groups, kernel)
        }
        None => {
            let preset = args.preset.unwrap_or(Preset::Standard);
            let bundle = preset.bundle(&field)?;
            let kernel = wigner::kernel_bundle(&field, &bundle)?;
            (
                format!("{preset} {}", bundle.signature),
                preset_striations(&bundle),
                kernel,
            )
        }
    };
    println!("kernel: {label}");
    let structure = kernel.structure();
    println!("hermiticity deviation: {:.3e}", structure.hermiticity);
    println!("trace deviation: {:.3e}", structure.trace);
    println!("operator sum deviation: {:.3e}", structure.sum);
    println!("orthogonality deviation: {:.3e}", structure.orthogonality);
    let grid = wigner::wigner_function(&kernel, &state)?;
    let support = grid.support(figures::SUPPORT_TOLERANCE);
    let neg = wigner::negativity(&grid);
    println!("grid sum: {}", wigner::format_value(grid.sum()));
    println!("support: {} of {} points", support.len(), d * d);
    println!("min value: {}", wigner::format_value(neg.min_value));
    println!("negativity: {}", wigner::format_value(neg.negative_sum));
    let mut pass =
        structure.passes(cfg.herm_tol, cfg.tol) && (grid.sum() - d as f64).abs() < cfg.tol;
    let rho = state.to_density();
    let marginals = args
        .check_marginals
        .then(|| marginal_rows(&field, &grid, &groups, &rho));
    if let Some(rows) = &marginals {
        for r in rows {
            println!("marginal {}: {:.3e}", r.basis, r.max_deviation);
            pass &= r.max_deviation < cfg.tol;
        }
    }
    let covariance = args
        .check_covariance
        .then(|| covariance(cfg, &field, &kernel));
    if let Some(c) = &covariance {
        let how = if c.sampled { "sampled" } else { "exhaustive" };
        println!(
            "covariance deviation: {:.3e} ({} pairs, {how})",
            c.max_deviation, c.checked
        );
        pass &= c.max_deviation < cfg.tol;
    }
    let dir = output::root(cfg);
    output::write_grid(&dir, &args.name, &grid)?;
    let report = WignerReport {
        state: args.state.clone(),
        kernel: label,
        hermiticity: structure.hermiticity,
        trace: structure.trace,
        operator_sum: structure.sum,
        orthogonality: structure.orthogonality,
        grid_sum: grid.sum(),
        support: support.len(),
        min_value: neg.min_value,
        negative_sum: neg.negative_sum,
        max_imaginary: grid.max_imaginary(),
        marginals,
        covariance,
        passed: pass,
    };
    output::write_json(&dir, &format!("{}-report.json", args.name), &report)?;
    Ok(pass)
}

fn marginal_rows(
    field: &Field,
    grid: &gfphase::WignerGrid,
    groups: &Striations,
    rho: &DensityMatrix,
) -> Vec<MarginalRow> {
    let d = field.size() as f64;
    groups
        .iter()
        .map(|(label, pairs)| MarginalRow {
            basis: label.clone(),
            max_deviation: pairs
                .iter()
                .map(|(c, s)| {
                    let sum = wigner::marginal_along_curve(field, grid, c);
                    (sum - d * rho.probability(s.amplitudes())).abs()
                })
                .fold(0.0, f64::max),
        })
        .collect()
}

fn covariance(cfg: &Config, field: &Field, kernel: &WignerKernel) -> wigner::CovarianceReport {
    let mode = if field.n() <= EXHAUSTIVE_COVARIANCE_MAX_N {
        CovarianceMode::Exhaustive
    } else {
        CovarianceMode::Sampled {
            count: COVARIANCE_SAMPLES,
            seed: cfg.seed,
        }
    };
    wigner::covariance_check(field, kernel, mode)
}

#[derive(Serialize)]
struct ReproduceSummary<'a> {
    #[serde(flatten)]
    data: &'a FigureData,
    passed: bool,
}

pub fn reproduce(cfg: &Config, figure: Figure) -> Result<bool> {
    let field = build_field(cfg)?;
    let data = figures::reproduce(&field, figure)?;
    let dir = output::root(cfg);
    let d = field.size() as f64;
    if let Some(c) = &data.curve {
        let [a, b] = c.curve.offset.unwrap_or([0, 0]);
        println!(
            "curve: alpha {:?} beta {:?} offset ({a}, {b})",
            c.curve.alpha_coeffs, c.curve.beta_coeffs
        );
        println!("regularity: {}", c.regularity);
        println!("factorization: {:?}", c.factorization);
    }
    let mut pass = true;
    for p in &data.panels {
        let ok =
            p.support_matches() && p.marginal_deviation < cfg.tol && (p.sum - d).abs() < cfg.tol;
        pass &= ok;
        println!(
            "{}: preset {} {} support {} negativity {} marginal deviation {:.3e}{}",
            p.name,
            p.preset,
            p.signature,
            p.support.len(),
            wigner::format_value(p.negativity.negative_sum),
            p.marginal_deviation,
            match &p.expected_support {
                Some(_) => format!(" expected support {}", yes_no(p.support_matches())),
                None => String::new(),
            }
        );
        output::write_grid(&dir, &format!("{figure}-{}", p.name), &p.grid)?;
    }
    if figure == Figure::Fig2 {
        let line_like = data
            .panels
            .iter()
            .all(|p| (p.support.len() == d as usize) == (p.preset == Preset::Set090.name()));
        println!(
            "only set090 concentrates on {} points: {}",
            d,
            yes_no(line_like)
        );
        pass &= line_like;
    }
    let summary = ReproduceSummary {
        data: &data,
        passed: pass,
    };
    output::write_json(&dir, &format!("{figure}-summary.json"), &summary)?;
    Ok(pass)
}
