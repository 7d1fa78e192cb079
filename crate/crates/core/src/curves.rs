//! Stabilizer curves in the discrete phase space.
//!
//! A curve is `τ ↦ (α(τ), β(τ))` with linearized coordinates, optionally
//! translated by a fixed offset. Its monomials `{Z_α(τ) X_β(τ)}` (taken from
//! the untranslated curve) form the commuting set the curve stands for.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linearized::LinearizedPoly;
use crate::pauli::{symplectic_form, PhasePoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    alpha: LinearizedPoly,
    beta: LinearizedPoly,
    offset: Option<PhasePoint>,
}

impl Curve {
    pub fn new(alpha: LinearizedPoly, beta: LinearizedPoly, offset: Option<PhasePoint>) -> Self {
        let offset = offset.filter(|p| !p.is_origin());
        Curve {
            alpha,
            beta,
            offset,
        }
    }

    pub fn from_bits(
        field: &Field,
        alpha: &[u32],
        beta: &[u32],
        offset: Option<(u32, u32)>,
    ) -> Result<Self> {
        let offset = match offset {
            Some((a, b)) => Some(PhasePoint::new(field.element(a)?, field.element(b)?)),
            None => None,
        };
        Ok(Curve::new(
            LinearizedPoly::from_bits(field, alpha)?,
            LinearizedPoly::from_bits(field, beta)?,
            offset,
        ))
    }

    /// `β = λα`, parametrized as `(τ, λτ)`.
    pub fn ray(n: usize, lambda: FieldElement) -> Self {
        Curve::new(
            LinearizedPoly::identity(n),
            LinearizedPoly::scalar(n, lambda),
            None,
        )
    }

    /// `α = 0`, parametrized as `(0, τ)`.
    pub fn vertical_axis(n: usize) -> Self {
        Curve::new(LinearizedPoly::zero(n), LinearizedPoly::identity(n), None)
    }

    pub fn alpha(&self) -> &LinearizedPoly {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearizedPoly {
        &self.beta
    }

    pub fn offset(&self) -> PhasePoint {
        self.offset.unwrap_or(PhasePoint::ORIGIN)
    }

    pub fn origin_curve(&self) -> Curve {
        Curve::new(self.alpha.clone(), self.beta.clone(), None)
    }

    pub fn translated(&self, by: PhasePoint) -> Curve {
        Curve::new(
            self.alpha.clone(),
            self.beta.clone(),
            Some(self.offset() + by),
        )
    }

    pub fn eval(&self, field: &Field, tau: FieldElement) -> PhasePoint {
        PhasePoint::new(self.alpha.eval(field, tau), self.beta.eval(field, tau)) + self.offset()
    }

    /// Points in order of τ's encoding, offset applied.
    pub fn points(&self, field: &Field) -> Vec<PhasePoint> {
        field.elements().map(|t| self.eval(field, t)).collect()
    }

    /// Labels `(α(τ), β(τ))` of the monomials, without the offset.
    pub fn monomials(&self, field: &Field) -> Vec<PhasePoint> {
        self.origin_curve().points(field)
    }

    pub fn point_set(&self, field: &Field) -> BTreeSet<PhasePoint> {
        self.points(field).into_iter().collect()
    }

    pub fn validate(&self, field: &Field) -> CurveReport {
        let monomials = self.monomials(field);
        let commuting = monomials
            .iter()
            .all(|&p| monomials.iter().all(|&q| symplectic_form(field, p, q) == 0));
        let origin = self.eval(field, FieldElement::ZERO) == self.offset();
        let injective = monomials.iter().collect::<BTreeSet<_>>().len() == monomials.len();
        CurveReport {
            commuting,
            origin,
            injective,
            coefficient_condition: self.coefficient_condition(field),
        }
    }

    pub fn is_stabilizer_curve(&self, field: &Field) -> bool {
        self.validate(field).is_stabilizer()
    }

    /// Commutativity written on the coefficients:
    /// `Σ_r α_{p−r}^{2^r} β_{q−r}^{2^r} = Σ_r α_{q−r}^{2^r} β_{p−r}^{2^r}`
    /// for all `p, q`, indices taken mod n.
    pub fn coefficient_condition(&self, field: &Field) -> bool {
        let n = field.n();
        let a = self.alpha.coeffs();
        let b = self.beta.coeffs();
        let side = |p: usize, q: usize| -> FieldElement {
            (0..n)
                .map(|r| {
                    let ar = field.frobenius(a[(p + n - r) % n], r);
                    let br = field.frobenius(b[(q + n - r) % n], r);
                    field.mul(ar, br)
                })
                .sum()
        };
        (0..n).all(|p| (0..n).all(|q| side(p, q) == side(q, p)))
    }

    pub fn classify(&self, field: &Field) -> Regularity {
        if self.alpha.is_bijective(field) {
            Regularity::RegularBetaOfAlpha
        } else if self.beta.is_bijective(field) {
            Regularity::RegularAlphaOfBeta
        } else {
            Regularity::Degenerate
        }
    }

    /// Finest partition of the qubits into blocks on which the restricted
    /// monomials still commute pairwise.
    ///
    /// Brute force over all set partitions of the qubits. The restricted
    /// symplectic form is bilinear, so checking the generators
    /// `Γ(θ_1), ..., Γ(θ_n)` covers every pair of monomials.
    pub fn factorization(&self, field: &Field) -> Result<FactorizationPartition> {
        let n = field.n();
        let generators: Vec<(Vec<u8>, Vec<u8>)> = field
            .self_dual_basis()
            .iter()
            .map(|&t| {
                let p = PhasePoint::new(self.alpha.eval(field, t), self.beta.eval(field, t));
                (field.expand(p.alpha), field.expand(p.beta))
            })
            .collect();
        let block_commutes = |block: &[usize]| {
            generators.iter().all(|(a, b)| {
                generators.iter().all(|(a2, b2)| {
                    block
                        .iter()
                        .fold(0u8, |acc, &q| acc ^ (a[q] & b2[q]) ^ (a2[q] & b[q]))
                        == 0
                })
            })
        };
        let mut best: Vec<Vec<Vec<usize>>> = Vec::new();
        for partition in set_partitions(n) {
            if !partition.iter().all(|b| block_commutes(b)) {
                continue;
            }
            match best.first().map(Vec::len) {
                Some(len) if partition.len() < len => {}
                Some(len) if partition.len() == len => best.push(partition),
                _ => best = vec![partition],
            }
        }
        let mut iter = best.into_iter();
        let members = iter.next().ok_or(Error::NoCommutingPartition)?;
        let alternatives: Vec<_> = iter.collect();
        if !alternatives.is_empty() {
            log::warn!("finest commuting partition is not unique: {members:?} vs {alternatives:?}");
        }
        let mut blocks: Vec<usize> = members.iter().map(Vec::len).collect();
        blocks.sort_unstable();
        let one_based = |p: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            p.into_iter()
                .map(|b| b.into_iter().map(|q| q + 1).collect())
                .collect()
        };
        Ok(FactorizationPartition {
            blocks,
            block_members: one_based(members),
            alternatives: alternatives.into_iter().map(one_based).collect(),
        })
    }
}

/// Curve with the parameter rescaled, `τ ↦ Γ(cτ)`.
pub fn reparametrize(field: &Field, curve: &Curve, c: FieldElement) -> Curve {
    let scale = LinearizedPoly::scalar(field.n(), c);
    Curve::new(
        curve.alpha.compose(field, &scale),
        curve.beta.compose(field, &scale),
        curve.offset,
    )
}

/// Outcome of the stabilizer-curve checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    /// All monomials commute pairwise.
    pub commuting: bool,
    /// The untranslated curve passes through `(0, 0)`.
    pub origin: bool,
    /// All `2^n` points are distinct.
    pub injective: bool,
    /// Coefficient form of commutativity; a cross-check only.
    pub coefficient_condition: bool,
}

impl CurveReport {
    pub fn is_stabilizer(&self) -> bool {
        self.commuting && self.origin && self.injective
    }

    pub fn failing_checks(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.commuting {
            out.push("commuting");
        }
        if !self.origin {
            out.push("origin");
        }
        if !self.injective {
            out.push("injective");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    RegularBetaOfAlpha,
    RegularAlphaOfBeta,
    Degenerate,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regularity::RegularBetaOfAlpha => "regular_beta_of_alpha",
            Regularity::RegularAlphaOfBeta => "regular_alpha_of_beta",
            Regularity::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationPartition {
    /// Block sizes in ascending order.
    pub blocks: Vec<usize>,
    /// Qubit positions `1..=n` of each block.
    pub block_members: Vec<Vec<usize>>,
    /// Other partitions with the same number of blocks; empty when the
    /// finest partition is unique.
    pub alternatives: Vec<Vec<Vec<usize>>>,
}

impl FactorizationPartition {
    pub fn is_unique(&self) -> bool {
        self.alternatives.is_empty()
    }
}

impl fmt::Display for FactorizationPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All set partitions of `{0, ..., n-1}`; blocks are sorted.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(current.clone());
            return;
        }
        for b in 0..current.len() {
            current[b].push(i);
            rec(i + 1, n, current, out);
            current[b].pop();
        }
        current.push(vec![i]);
        rec(i + 1, n, current, out);
        current.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Integer partitions of `n` (ascending parts), most-factorized first: more
/// parts come earlier, ties broken lexicographically.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in min..=remaining {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Curve counts per factorization type across a bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSignature {
    pub partitions: Vec<Vec<usize>>,
    pub counts: Vec<usize>,
}

impl BundleSignature {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl fmt::Display for BundleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Tallies factorization types over `2^n + 1` stabilizer curves that meet
/// pairwise only at the origin.
pub fn bundle_signature(field: &Field, curves: &[Curve]) -> Result<BundleSignature> {
    let d = field.size();
    if curves.len() != d + 1 {
        return Err(Error::NotABundle(format!(
            "expected {} curves, got {}",
            d + 1,
            curves.len()
        )));
    }
    let sets: Vec<BTreeSet<PhasePoint>> = curves
        .iter()
        .map(|c| c.origin_curve().point_set(field))
        .collect();
    for (i, c) in curves.iter().enumerate() {
        let report = c.origin_curve().validate(field);
        if !report.is_stabilizer() {
            return Err(Error::NotAStabilizerCurve(format!(
                "curve {i} fails {:?}",
                report.failing_checks()
            )));
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if let Some(p) = sets[i].intersection(&sets[j]).find(|p| !p.is_origin()) {
                return Err(Error::NotABundle(format!(
                    "curves {i} and {j} share the point {p}"
                )));
            }
        }
    }
    let partitions = integer_partitions(field.n());
    let mut tally: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in curves {
        *tally.entry(c.factorization(field)?.blocks).or_default() += 1;
    }
    let counts = partitions
        .iter()
        .map(|p| tally.get(p).copied().unwrap_or(0))
        .collect();
    Ok(BundleSignature { partitions, counts })
}

/// Common points of two curves, sorted.
pub fn intersect(field: &Field, a: &Curve, b: &Curve) -> Vec<PhasePoint> {
    a.point_set(field)
        .intersection(&b.point_set(field))
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::all_points;
    use proptest::prelude::*;

    fn gf8() -> Field {
        Field::with_default_polynomial(3).unwrap()
    }

    fn rays(field: &Field) -> Vec<Curve> {
        let n = field.n();
        let mut out: Vec<Curve> = field.elements().map(|l| Curve::ray(n, l)).collect();
        out.push(Curve::vertical_axis(n));
        out
    }

    fn brute_commuting(field: &Field, c: &Curve) -> bool {
        let m = c.monomials(field);
        m.iter()
            .all(|&p| m.iter().all(|&q| symplectic_form(field, p, q) == 0))
    }

    #[test]
    fn ray_points_are_tau_lambda_tau() {
        let f = gf8();
        for l in f.elements() {
            let pts = Curve::ray(3, l).points(&f);
            for (t, p) in f.elements().zip(&pts) {
                assert_eq!(*p, PhasePoint::new(t, f.mul(l, t)));
            }
            let r = Curve::ray(3, l).validate(&f);
            assert!(r.is_stabilizer() && r.coefficient_condition);
        }
    }

    #[test]
    fn zero_curve_is_not_injective() {
        let f = gf8();
        let c = Curve::new(LinearizedPoly::zero(3), LinearizedPoly::zero(3), None);
        assert!(c.points(&f).iter().all(|p| p.is_origin()));
        let r = c.validate(&f);
        assert!(!r.injective && r.commuting && r.origin);
        assert_eq!(r.failing_checks(), vec!["injective"]);
    }

    #[test]
    fn tau_tau_squared_in_gf4_decided_by_oracle() {
        let f = Field::with_default_polynomial(2).unwrap();
        let c = Curve::from_bits(&f, &[1, 0], &[0, 1], None).unwrap();
        let mut expected = true;
        for t in f.elements() {
            for u in f.elements() {
                let s = f.mul(t, f.square(u)) + f.mul(u, f.square(t));
                if f.trace(s) != 0 {
                    expected = false;
                }
            }
        }
        assert_eq!(c.validate(&f).commuting, expected);
        assert_eq!(c.coefficient_condition(&f), expected);
    }

    #[test]
    fn printed_figure_curve_points_are_distinct() {
        let f = gf8();
        let s = |k| f.primitive_power(k).bits();
        // α = σ⁵ + σ⁴τ + τ⁴, β = σ⁴τ⁴ + σ⁵τ² + σ⁴
        let c = Curve::from_bits(&f, &[s(4), 0, 1], &[0, s(5), s(4)], Some((s(5), s(4)))).unwrap();
        assert_eq!(c.point_set(&f).len(), 8);
        assert_eq!(c.eval(&f, FieldElement::ZERO), c.offset());
    }

    #[test]
    fn regularity_classes() {
        let f = gf8();
        for l in f.elements() {
            assert_eq!(
                Curve::ray(3, l).classify(&f),
                Regularity::RegularBetaOfAlpha
            );
        }
        assert_eq!(
            Curve::vertical_axis(3).classify(&f),
            Regularity::RegularAlphaOfBeta
        );
        let s = |k| f.primitive_power(k).bits();
        // α = σ⁴τ + στ² + τ⁴, β = σ⁵τ² + σ⁴τ⁴
        let degenerate = Curve::from_bits(&f, &[s(4), s(1), 1], &[0, s(5), s(4)], None).unwrap();
        assert!(degenerate.is_stabilizer_curve(&f));
        assert_eq!(degenerate.classify(&f), Regularity::Degenerate);
    }

    #[test]
    fn diagonal_curves_factor_completely() {
        for n in 2..=4 {
            let f = Field::with_default_polynomial(n).unwrap();
            let fact = Curve::ray(n, FieldElement::ZERO).factorization(&f).unwrap();
            assert_eq!(fact.blocks, vec![1; n]);
            assert!(fact.is_unique());
        }
    }

    #[test]
    fn non_commuting_curve_has_no_partition() {
        let f = gf8();
        let c = Curve::from_bits(&f, &[1, 0, 0], &[0, 1, 0], None).unwrap();
        assert!(!c.validate(&f).commuting);
        assert!(matches!(
            c.factorization(&f),
            Err(Error::NoCommutingPartition)
        ));
    }

    #[test]
    fn factorization_matches_all_pairs_oracle() {
        let f = gf8();
        for c in rays(&f) {
            let fact = c.factorization(&f).unwrap();
            let monomials = c.monomials(&f);
            for block in &fact.block_members {
                for &p in &monomials {
                    for &q in &monomials {
                        let (ap, bp, aq, bq) = (
                            f.expand(p.alpha),
                            f.expand(p.beta),
                            f.expand(q.alpha),
                            f.expand(q.beta),
                        );
                        let s = block
                            .iter()
                            .map(|&q| q - 1)
                            .fold(0, |acc, i| acc ^ (ap[i] & bq[i]) ^ (aq[i] & bp[i]));
                        assert_eq!(s, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn three_qubit_rays() {
        let f = gf8();
        let full = rays(&f)
            .iter()
            .filter(|c| c.factorization(&f).unwrap().blocks == vec![1, 1, 1])
            .count();
        assert_eq!(full, 3);
        let sig = bundle_signature(&f, &rays(&f)).unwrap();
        assert_eq!(sig.counts, vec![3, 0, 6]);
        assert_eq!(sig.partitions, vec![vec![1, 1, 1], vec![1, 2], vec![3]]);
        assert_eq!(sig.to_string(), "(3,0,6)");
        assert_eq!(sig.total(), 9);
    }

    #[test]
    fn two_qubit_rays_signature() {
        // oracle: factorization of each of the 5 ray curves by direct block enumeration
        let f = Field::with_default_polynomial(2).unwrap();
        let mut counts = [0usize; 2];
        for c in rays(&f) {
            let m = c.monomials(&f);
            let split_ok = (0..2).all(|q| {
                m.iter().all(|&p| {
                    m.iter().all(|&r| {
                        let (ap, bp, ar, br) = (
                            f.expand(p.alpha),
                            f.expand(p.beta),
                            f.expand(r.alpha),
                            f.expand(r.beta),
                        );
                        (ap[q] & br[q]) ^ (ar[q] & bp[q]) == 0
                    })
                })
            });
            counts[usize::from(!split_ok)] += 1;
        }
        let sig = bundle_signature(&f, &rays(&f)).unwrap();
        assert_eq!(sig.counts, counts.to_vec());
        assert_eq!(sig.counts, vec![3, 2]);
    }

    #[test]
    fn bundle_rejects_shared_points() {
        let f = gf8();
        let mut curves = rays(&f);
        curves[1] = curves[0].clone();
        assert!(matches!(
            bundle_signature(&f, &curves),
            Err(Error::NotABundle(_))
        ));
        assert!(bundle_signature(&f, &curves[..3]).is_err());
    }

    #[test]
    fn intersections() {
        let f = gf8();
        let a = Curve::ray(3, FieldElement::new(2));
        let b = Curve::ray(3, FieldElement::new(5));
        assert_eq!(intersect(&f, &a, &b), vec![PhasePoint::ORIGIN]);
        assert_eq!(intersect(&f, &a, &a).len(), 8);
        let t1 = a.translated(PhasePoint::from_bits(0, 1));
        let t2 = a.translated(PhasePoint::from_bits(0, 3));
        assert!(intersect(&f, &t1, &t2).is_empty());
    }

    #[test]
    fn integer_partition_order() {
        assert_eq!(integer_partitions(2), vec![vec![1, 1], vec![2]]);
        assert_eq!(
            integer_partitions(4),
            vec![
                vec![1, 1, 1, 1],
                vec![1, 1, 2],
                vec![1, 3],
                vec![2, 2],
                vec![4]
            ]
        );
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(5).len(), 52);
    }

    #[test]
    fn ray_striations_partition_the_grid() {
        let f = gf8();
        for c in rays(&f) {
            let mut seen = BTreeSet::new();
            let step: Vec<PhasePoint> = if c.alpha().is_zero() {
                f.elements()
                    .map(|k| PhasePoint::new(k, FieldElement::ZERO))
                    .collect()
            } else {
                f.elements()
                    .map(|k| PhasePoint::new(FieldElement::ZERO, k))
                    .collect()
            };
            for p in step {
                for q in c.translated(p).points(&f) {
                    assert!(seen.insert(q));
                }
            }
            assert_eq!(seen.len(), all_points(&f).len());
        }
    }

    fn random_stabilizer_curve_points(n: usize) -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
        let size = 1u32 << n;
        (
            proptest::collection::vec(0..size, n),
            proptest::collection::vec(0..size, n),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn coefficient_condition_agrees_with_commutation_gf8((a, b) in random_stabilizer_curve_points(3)) {
            let f = gf8();
            let c = Curve::from_bits(&f, &a, &b, None).unwrap();
            prop_assert_eq!(c.coefficient_condition(&f), brute_commuting(&f, &c));
        }

        #[test]
        fn coefficient_condition_agrees_with_commutation_gf16((a, b) in random_stabilizer_curve_points(4)) {
            let f = Field::with_default_polynomial(4).unwrap();
            let c = Curve::from_bits(&f, &a, &b, None).unwrap();
            prop_assert_eq!(c.coefficient_condition(&f), brute_commuting(&f, &c));
        }

        #[test]
        fn coefficient_condition_agrees_with_commutation_gf4((a, b) in random_stabilizer_curve_points(2)) {
            let f = Field::with_default_polynomial(2).unwrap();
            let c = Curve::from_bits(&f, &a, &b, None).unwrap();
            prop_assert_eq!(c.coefficient_condition(&f), brute_commuting(&f, &c));
        }

        #[test]
        fn stabilizer_curves_are_closed_under_addition(lam in 0u32..8, c in 1u32..8, off in (0u32..8, 0u32..8)) {
            let f = gf8();
            let curve = Curve::ray(3, FieldElement::new(lam));
            let set = curve.point_set(&f);
            for &p in &set {
                for &q in &set {
                    prop_assert!(set.contains(&(p + q)));
                }
            }
            let re = reparametrize(&f, &curve, FieldElement::new(c));
            prop_assert_eq!(re.point_set(&f), set);
            prop_assert_eq!(re.factorization(&f).unwrap(), curve.factorization(&f).unwrap());
            let moved = curve.translated(PhasePoint::from_bits(off.0, off.1));
            prop_assert_eq!(moved.origin_curve(), curve);
        }
    }
}
