//! Data behind the three-qubit figures: Wigner grids plus the observables
//! used to compare them (support, negativity, marginals).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::curves::{Curve, Regularity};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::io::CurveFile;
use crate::mubs::{BasisLabel, MubBundle, Preset};
use crate::pauli::PhasePoint;
use crate::rotations::{self, CurveFunction};
use crate::state::{ghz, StateVector};
use crate::wigner::{self, Negativity, WignerGrid};

/// Entries with `|W| > SUPPORT_TOLERANCE` count as support.
pub const SUPPORT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// State of a degenerate curve in the (0,9,0) set.
    Fig1,
    /// GHZ in all four sets.
    Fig2,
    /// `P_σ|0⟩` in the (0,9,0) set.
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig1, Figure::Fig2, Figure::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Panel {
    pub name: String,
    pub preset: String,
    pub signature: String,
    #[serde(skip)]
    pub grid: WignerGrid,
    pub support: Vec<PhasePoint>,
    pub negativity: Negativity,
    pub sum: f64,
    /// Largest tomographic defect over the preset's curves.
    pub marginal_deviation: f64,
    /// Set when the panel is expected to sit exactly on one curve.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_support: Option<Vec<PhasePoint>>,
}

impl Panel {
    pub fn support_matches(&self) -> bool {
        self.expected_support
            .as_ref()
            .is_none_or(|e| *e == self.support)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureData {
    pub figure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSummary>,
    pub panels: Vec<Panel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub curve: CurveFile,
    pub regularity: Regularity,
    pub factorization: Vec<usize>,
}

fn sorted(mut v: Vec<PhasePoint>) -> Vec<PhasePoint> {
    v.sort();
    v
}

fn panel(
    field: &Field,
    name: &str,
    preset: Preset,
    bundle: &MubBundle,
    state: &StateVector,
    expected: Option<Vec<PhasePoint>>,
) -> Result<Panel> {
    let kernel = wigner::kernel_bundle(field, bundle)?;
    let grid = wigner::wigner_of_pure(&kernel, state)?;
    let rho = state.to_density();
    Ok(Panel {
        name: name.to_string(),
        preset: preset.name().to_string(),
        signature: bundle.signature.to_string(),
        support: grid.support(SUPPORT_TOLERANCE),
        negativity: wigner::negativity(&grid),
        sum: grid.sum(),
        marginal_deviation: wigner::tomographic_deviation(field, &grid, bundle, &rho),
        expected_support: expected.map(sorted),
        grid,
    })
}

/// Line `β = λα + κ` carried into the (0,9,0) set.
pub fn fig1_curve(field: &Field) -> Result<Curve> {
    let bundle = Preset::Set090.bundle(field)?;
    let s2 = sigma_power(field, 2);
    crate::mubs::associate_curve(&bundle, BasisLabel::Ray(s2), s2)
}

fn sigma_power(field: &Field, k: u64) -> FieldElement {
    field.pow(crate::mubs::cubic_root(field), k)
}

pub fn reproduce(field: &Field, figure: Figure) -> Result<FigureData> {
    if field.n() != 3 {
        return Err(Error::PresetUnavailable {
            preset: figure.name().to_string(),
            n: field.n(),
        });
    }
    match figure {
        Figure::Fig1 => {
            let bundle = Preset::Set090.bundle(field)?;
            let s2 = sigma_power(field, 2);
            let basis = bundle.basis(BasisLabel::Ray(s2))?;
            let curve = basis.curve_for(s2);
            let state = &basis.states[s2.index()];
            let p = panel(
                field,
                "degenerate-curve",
                Preset::Set090,
                &bundle,
                state,
                Some(curve.points(field)),
            )?;
            Ok(FigureData {
                figure: figure.name().to_string(),
                curve: Some(CurveSummary {
                    curve: CurveFile::describe(&curve),
                    regularity: curve.classify(field),
                    factorization: curve.factorization(field)?.blocks,
                }),
                panels: vec![p],
            })
        }
        Figure::Fig2 => {
            let psi = ghz(field);
            let mut panels = Vec::new();
            for preset in [
                Preset::Standard,
                Preset::Set234,
                Preset::Set162,
                Preset::Set090,
            ] {
                let bundle = preset.bundle(field)?;
                panels.push(panel(
                    field,
                    &format!("ghz-{preset}"),
                    preset,
                    &bundle,
                    &psi,
                    None,
                )?);
            }
            Ok(FigureData {
                figure: figure.name().to_string(),
                curve: None,
                panels,
            })
        }
        Figure::Fig3 => {
            let bundle = Preset::Set090.bundle(field)?;
            let sigma = sigma_power(field, 1);
            let p = rotations::p_op(field, &CurveFunction::scalar(3, sigma))?;
            let state = StateVector::normalized(p.column(0).into_owned())?;
            let intercept = sigma_power(field, 5);
            let line = field
                .elements()
                .map(|a| PhasePoint::new(a, field.mul(sigma, a) + intercept))
                .collect();
            let p = panel(
                field,
                "ray-state",
                Preset::Set090,
                &bundle,
                &state,
                Some(line),
            )?;
            Ok(FigureData {
                figure: figure.name().to_string(),
                curve: None,
                panels: vec![p],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Field {
        Field::with_default_polynomial(3).unwrap()
    }

    #[test]
    fn fig1_sits_on_degenerate_curve() {
        let f = gf8();
        let data = reproduce(&f, Figure::Fig1).unwrap();
        let p = &data.panels[0];
        assert!(p.support_matches());
        assert_eq!(p.support.len(), 8);
        assert!(p.negativity.negative_sum < 1e-10);
        let c = data.curve.unwrap();
        assert_eq!(c.regularity, Regularity::Degenerate);
        assert_eq!(c.factorization, vec![1, 2]);
    }

    #[test]
    fn fig2_support_sizes() {
        let data = reproduce(&gf8(), Figure::Fig2).unwrap();
        let sizes: Vec<usize> = data.panels.iter().map(|p| p.support.len()).collect();
        assert_eq!(sizes[3], 8);
        assert!(sizes[..3].iter().all(|&s| s > 8));
        for p in &data.panels {
            assert!((p.sum - 8.0).abs() < 1e-10);
            assert!(p.marginal_deviation < 1e-10);
        }
    }

    #[test]
    fn fig3_is_a_line() {
        let data = reproduce(&gf8(), Figure::Fig3).unwrap();
        assert!(data.panels[0].support_matches());
        assert!(data.panels[0].negativity.negative_sum < 1e-10);
    }

    #[test]
    fn figures_need_three_qubits() {
        let f = Field::with_default_polynomial(2).unwrap();
        assert!(reproduce(&f, Figure::Fig1).is_err());
        assert!(matches!(
            "fig9".parse::<Figure>(),
            Err(Error::UnknownFigure(_))
        ));
    }
}
