//! Arithmetic in GF(2^n) for small n.
//!
//! Elements are stored in the polynomial basis: bit `r` of the encoding is the
//! coefficient of `x^r`. Addition is XOR and does not need the field; every
//! other operation goes through a [`Field`], which tabulates products and
//! traces at construction time.
//!
//! Each field also carries a self-dual basis `{θ_i}` with `tr(θ_i θ_j) = δ_ij`.
//! Expanding an element in that basis gives the per-qubit bits used everywhere
//! else in the crate to label computational states and Pauli factors.

use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 6;

/// An element of GF(2^n) in polynomial-basis encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn new(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Position of this element in row/column indexing of dense operators.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> FieldElement {
        iter.fold(FieldElement::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Textual rendering of field elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DisplayMode {
    /// Integer bitmask encoding.
    #[default]
    Integer,
    /// Powers of the primitive element, `σ^k`.
    Power,
}

/// Built-in irreducible polynomials, encoded as bitmasks including the leading term.
pub fn default_polynomial(n: usize) -> Option<u32> {
    match n {
        2 => Some(0b111),
        3 => Some(0b1011),
        4 => Some(0b1_0011),
        _ => None,
    }
}

fn degree(poly: u32) -> Option<usize> {
    if poly == 0 {
        None
    } else {
        Some(31 - poly.leading_zeros() as usize)
    }
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(deg) = degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for divisor in 2u32..(1u32 << (deg / 2 + 1)) {
        let dd = degree(divisor).unwrap();
        if dd == 0 || dd > deg / 2 {
            continue;
        }
        if poly_rem(poly, divisor) == 0 {
            return false;
        }
    }
    true
}

fn slow_mul(mut a: u32, mut b: u32, n: usize, poly: u32) -> u32 {
    let top = 1u32 << n;
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= poly;
        }
    }
    acc
}

/// The finite field GF(2^n) together with its primitive element and self-dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    n: usize,
    modulus: u32,
    mul_table: Vec<u8>,
    trace_table: Vec<u8>,
    exp_table: Vec<FieldElement>,
    log_table: Vec<Option<u32>>,
    primitive: FieldElement,
    self_dual_basis: Vec<FieldElement>,
}

impl Field {
    /// Builds GF(2^n) modulo `poly`, finding the smallest primitive element and
    /// the lexicographically smallest self-dual basis.
    pub fn new(n: usize, poly: u32) -> Result<Self> {
        let mut field = Self::bare(n, poly)?;
        field.self_dual_basis = find_self_dual_basis(&field)?;
        Ok(field)
    }

    pub fn with_default_polynomial(n: usize) -> Result<Self> {
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let poly = default_polynomial(n).ok_or(Error::NoDefaultPolynomial(n))?;
        Self::new(n, poly)
    }

    /// Builds the field with a caller-chosen self-dual basis, which is validated.
    pub fn with_self_dual_basis(n: usize, poly: u32, basis: &[FieldElement]) -> Result<Self> {
        let mut field = Self::bare(n, poly)?;
        if basis.len() != n {
            return Err(Error::InvalidSelfDualBasis(format!(
                "expected {n} elements, got {}",
                basis.len()
            )));
        }
        for &b in basis {
            field.check(b)?;
        }
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                let t = field.trace(field.mul(a, b));
                if t != u8::from(i == j) {
                    return Err(Error::InvalidSelfDualBasis(format!(
                        "tr(θ{}·θ{}) = {t}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        field.self_dual_basis = basis.to_vec();
        Ok(field)
    }

    fn bare(n: usize, poly: u32) -> Result<Self> {
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let actual = degree(poly).unwrap_or(0);
        if actual != n {
            return Err(Error::RejectsDegreeMismatch {
                poly,
                expected: n,
                actual,
            });
        }
        if !is_irreducible(poly) {
            return Err(Error::RejectsReduciblePolynomial(poly));
        }
        let size = 1usize << n;
        let mut mul_table = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                mul_table[a * size + b] = slow_mul(a as u32, b as u32, n, poly) as u8;
            }
        }
        // Trace by repeated squaring, then frozen into a table.
        let trace_table = (0..size)
            .map(|a| {
                let mut x = a as u32;
                let mut t = 0;
                for _ in 0..n {
                    t ^= x;
                    x = slow_mul(x, x, n, poly);
                }
                debug_assert!(t <= 1, "trace left GF(2)");
                t as u8
            })
            .collect();

        let mut field = Field {
            n,
            modulus: poly,
            mul_table,
            trace_table,
            exp_table: Vec::new(),
            log_table: vec![None; size],
            primitive: FieldElement::ONE,
            self_dual_basis: Vec::new(),
        };
        let group_order = size - 1;
        let primitive = (2..size as u32)
            .map(FieldElement)
            .find(|&g| field.multiplicative_order(g) == group_order)
            .expect("a finite field always has a primitive element");
        field.primitive = primitive;
        let mut x = FieldElement::ONE;
        for k in 0..group_order {
            field.exp_table.push(x);
            field.log_table[x.index()] = Some(k as u32);
            x = field.mul(x, primitive);
        }
        Ok(field)
    }

    fn multiplicative_order(&self, g: FieldElement) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Number of qubits, i.e. the extension degree.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of elements, 2^n; also the Hilbert-space dimension.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn self_dual_basis(&self) -> &[FieldElement] {
        &self.self_dual_basis
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone + use<> {
        (0..self.size() as u32).map(FieldElement)
    }

    /// Validated conversion from an integer encoding.
    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        let e = FieldElement(bits);
        self.check(e)?;
        Ok(e)
    }

    fn check(&self, e: FieldElement) -> Result<()> {
        if e.index() >= self.size() {
            Err(Error::ElementOutOfRange {
                value: e.0,
                size: self.size(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(u32::from(
            self.mul_table[a.index() * self.size() + b.index()],
        ))
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^(2^r)`, with `r` taken modulo n.
    pub fn frobenius(&self, a: FieldElement, r: usize) -> FieldElement {
        (0..r % self.n).fold(a, |x, _| self.square(x))
    }

    /// `a^e`; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let order = (self.size() - 1) as u64;
        Ok(self.pow(a, order - 1))
    }

    /// Absolute trace to GF(2): `a + a^2 + ... + a^(2^(n-1))`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u8 {
        self.trace_table[a.index()]
    }

    /// Additive character `(-1)^tr(a)`.
    #[inline]
    pub fn character(&self, a: FieldElement) -> i8 {
        if self.trace(a) == 0 {
            1
        } else {
            -1
        }
    }

    /// Discrete logarithm to the primitive element, `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        self.log_table
            .get(a.index())
            .copied()
            .flatten()
            .map(|k| k as usize)
    }

    /// `σ^k` for the primitive element `σ`.
    pub fn primitive_power(&self, k: usize) -> FieldElement {
        self.exp_table[k % (self.size() - 1)]
    }

    /// Coordinates in the self-dual basis, `a_i = tr(a θ_i)`.
    pub fn expand(&self, a: FieldElement) -> Vec<u8> {
        self.self_dual_basis
            .iter()
            .map(|&theta| self.trace(self.mul(a, theta)))
            .collect()
    }

    /// Inverse of [`Field::expand`]: `Σ a_i θ_i`.
    pub fn reconstruct(&self, coords: &[u8]) -> FieldElement {
        coords
            .iter()
            .zip(&self.self_dual_basis)
            .filter(|(&c, _)| c & 1 == 1)
            .map(|(_, &theta)| theta)
            .sum()
    }

    pub fn render(&self, a: FieldElement, mode: DisplayMode) -> String {
        match mode {
            DisplayMode::Integer => a.to_string(),
            DisplayMode::Power => match self.log(a) {
                None => "0".to_string(),
                Some(0) => "1".to_string(),
                Some(1) => "σ".to_string(),
                Some(k) => format!("σ^{k}"),
            },
        }
    }
}

/// Lexicographically smallest ordered tuple `(θ_1, ..., θ_n)` with
/// `tr(θ_i θ_j) = δ_ij`.
///
/// Backtracking in increasing integer order visits tuples in the same order
/// as full enumeration, and the pairwise constraints prune any prefix that
/// cannot be extended, so the first hit is the lexicographic minimum.
pub fn find_self_dual_basis(field: &Field) -> Result<Vec<FieldElement>> {
    fn extend(field: &Field, chosen: &mut Vec<FieldElement>) -> bool {
        if chosen.len() == field.n() {
            return true;
        }
        for cand in field.elements().skip(1) {
            if field.trace(field.square(cand)) != 1 {
                continue;
            }
            if chosen
                .iter()
                .any(|&prev| field.trace(field.mul(prev, cand)) != 0)
            {
                continue;
            }
            chosen.push(cand);
            if extend(field, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(field.n());
    if extend(field, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::NoSelfDualBasisFound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Field {
        Field::with_default_polynomial(3).unwrap()
    }

    fn brute_trace(field: &Field, a: FieldElement) -> FieldElement {
        let mut x = a;
        let mut t = FieldElement::ZERO;
        for _ in 0..field.n() {
            t += x;
            x = field.mul(x, x);
        }
        t
    }

    #[test]
    fn gf8_construction_matches_sigma_cubed_plus_sigma_plus_one() {
        let f = gf8();
        assert_eq!(f.size(), 8);
        assert_eq!(f.primitive_element(), FieldElement::new(0b010));
        let s = f.primitive_element();
        let s3 = f.pow(s, 3);
        assert_eq!(s3 + s + FieldElement::ONE, FieldElement::ZERO);
    }

    #[test]
    fn gf4_construction() {
        let f = Field::with_default_polynomial(2).unwrap();
        assert_eq!(f.size(), 4);
        assert_eq!(f.elements().count(), 4);
    }

    #[test]
    fn reducible_and_wrong_degree_polynomials_are_rejected() {
        assert!(matches!(
            Field::new(3, 0b1001),
            Err(Error::RejectsReduciblePolynomial(0b1001))
        ));
        assert!(matches!(
            Field::new(3, 0b111),
            Err(Error::RejectsDegreeMismatch { .. })
        ));
        assert!(matches!(
            Field::new(7, 0b1000_0011),
            Err(Error::UnsupportedSize(7))
        ));
        assert!(matches!(
            Field::with_default_polynomial(5),
            Err(Error::NoDefaultPolynomial(5))
        ));
    }

    #[test]
    fn irreducibility_by_trial_division() {
        // x^2+x+1, x^3+x+1, x^3+x^2+1, x^4+x+1, x^5+x^2+1, x^6+x+1
        for p in [0b111, 0b1011, 0b1101, 0b1_0011, 0b10_0101, 0b100_0011] {
            assert!(is_irreducible(p), "{p:#b}");
        }
        // x^2, x^2+1 = (x+1)^2, x^4+x^2+1 = (x^2+x+1)^2, x^6+x^3+... reducible
        for p in [0b100, 0b101, 0b1_0101, 0b1001] {
            assert!(!is_irreducible(p), "{p:#b}");
        }
    }

    #[test]
    fn sigma_times_sigma_squared_is_sigma_cubed() {
        let f = gf8();
        let s = f.primitive_element();
        // σ·σ² = σ³ = σ + 1 = 0b011
        assert_eq!(f.mul(s, f.square(s)), FieldElement::new(0b011));
    }

    #[test]
    fn inverse_and_absorbing_zero() {
        let f = gf8();
        for a in f.elements() {
            assert_eq!(f.mul(a, FieldElement::ZERO), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), FieldElement::ONE);
            }
        }
        assert!(matches!(
            f.inverse(FieldElement::ZERO),
            Err(Error::InverseOfZero)
        ));
    }

    #[test]
    fn trace_values() {
        let f = gf8();
        assert_eq!(f.trace(FieldElement::ZERO), 0);
        assert_eq!(f.trace(FieldElement::ONE), 1);
        let s = f.primitive_element();
        // σ + σ² + σ⁴ evaluated by plain arithmetic
        assert_eq!(brute_trace(&f, s), FieldElement::ZERO);
        assert_eq!(f.trace(s), 0);
        assert_eq!(f.character(FieldElement::ZERO), 1);
        assert_eq!(f.character(FieldElement::ONE), -1);
        assert_eq!(f.character(s), 1);
    }

    #[test]
    fn trace_table_agrees_with_frobenius_sum() {
        for n in 2..=6 {
            let f = match default_polynomial(n) {
                Some(p) => Field::new(n, p).unwrap(),
                None => Field::new(n, [0, 0, 0, 0, 0, 0b10_0101, 0b100_0011][n]).unwrap(),
            };
            for a in f.elements() {
                assert_eq!(
                    brute_trace(&f, a).bits(),
                    u32::from(f.trace(a)),
                    "n={n} a={a}"
                );
            }
        }
    }

    #[test]
    fn gf4_self_dual_basis_is_sigma_sigma_squared() {
        let f = Field::with_default_polynomial(2).unwrap();
        let s = f.primitive_element();
        let s2 = f.square(s);
        assert_eq!(f.trace(s2), 1);
        assert_eq!(f.trace(f.pow(s, 4)), 1);
        assert_eq!(f.trace(f.pow(s, 3)), 0);
        assert_eq!(f.self_dual_basis(), &[s, s2]);
    }

    #[test]
    fn gf8_self_dual_basis_is_lexicographic_minimum() {
        let f = gf8();
        // exhaustive oracle over all ordered triples
        let mut first = None;
        'outer: for a in 1..8u32 {
            for b in 1..8u32 {
                for c in 1..8u32 {
                    let t = [a, b, c].map(FieldElement::new);
                    let ok = (0..3)
                        .all(|i| (0..3).all(|j| f.trace(f.mul(t[i], t[j])) == u8::from(i == j)));
                    if ok {
                        first = Some(t);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(f.self_dual_basis(), &first.unwrap());
        let basis = f.self_dual_basis();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(f.trace(f.mul(basis[i], basis[j])), u8::from(i == j));
            }
        }
    }

    #[test]
    fn self_dual_basis_exists_for_every_supported_size() {
        for (n, p) in [
            (2, 0b111),
            (3, 0b1101),
            (4, 0b1_1001),
            (5, 0b10_0101),
            (6, 0b100_0011),
        ] {
            let f = Field::new(n, p).unwrap();
            let b = f.self_dual_basis();
            assert_eq!(b.len(), n);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(f.trace(f.mul(b[i], b[j])), u8::from(i == j));
                }
            }
        }
    }

    #[test]
    fn self_dual_basis_override_is_validated() {
        let good = [3, 5, 7].map(FieldElement::new);
        let f = Field::with_self_dual_basis(3, 0b1011, &good).unwrap();
        assert_eq!(f.self_dual_basis(), &good);
        let swapped = [7, 3, 5].map(FieldElement::new);
        assert!(Field::with_self_dual_basis(3, 0b1011, &swapped).is_ok());
        let bad = [1, 2, 4].map(FieldElement::new);
        assert!(matches!(
            Field::with_self_dual_basis(3, 0b1011, &bad),
            Err(Error::InvalidSelfDualBasis(_))
        ));
    }

    #[test]
    fn expand_and_reconstruct() {
        let f = gf8();
        assert_eq!(f.expand(FieldElement::ZERO), vec![0, 0, 0]);
        for (k, &theta) in f.self_dual_basis().iter().enumerate() {
            let mut unit = vec![0u8; 3];
            unit[k] = 1;
            assert_eq!(f.expand(theta), unit);
        }
        let s5 = f.primitive_power(5);
        assert_eq!(f.reconstruct(&f.expand(s5)), s5);
        // Σθ_i = 1 for a self-dual basis
        assert_eq!(f.expand(FieldElement::ONE), vec![1, 1, 1]);
    }

    #[test]
    fn primitive_powers_cover_nonzero_elements() {
        let f = Field::with_default_polynomial(4).unwrap();
        let mut seen: Vec<_> = (0..15).map(|k| f.primitive_power(k)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 15);
        assert!(!seen.contains(&FieldElement::ZERO));
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for n in 2..=4 {
            let f = Field::with_default_polynomial(n).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn power_rendering() {
        let f = gf8();
        assert_eq!(f.render(FieldElement::ZERO, DisplayMode::Power), "0");
        assert_eq!(f.render(FieldElement::ONE, DisplayMode::Power), "1");
        assert_eq!(f.render(f.primitive_element(), DisplayMode::Power), "σ");
        assert_eq!(
            f.render(FieldElement::new(0b111), DisplayMode::Power),
            "σ^5"
        );
        assert_eq!(
            f.render(FieldElement::new(0b111), DisplayMode::Integer),
            "7"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn trace_is_additive_and_frobenius_invariant(n in 2usize..=4, a in 0u32..16, b in 0u32..16) {
                let f = Field::with_default_polynomial(n).unwrap();
                let mask = (f.size() - 1) as u32;
                let (a, b) = (FieldElement::new(a & mask), FieldElement::new(b & mask));
                prop_assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
                prop_assert_eq!(f.character(a + b), f.character(a) * f.character(b));
                prop_assert_eq!(f.trace(f.square(a)), f.trace(a));
                prop_assert_eq!(f.reconstruct(&f.expand(a)), a);
            }
        }
    }
}
