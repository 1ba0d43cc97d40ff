//! The group `G = (Z ⊕ Z) ⋊_θ Z` and its integral group ring.
//!
//! Group elements are stored as exponent triples `(m, n, k)` standing for
//! `(a^m b^n, t^k)`. Multiplication follows the semidirect law
//! `(v, k) · (v', k') = (v + θ^k v', k + k')`, where `θ` acts on column
//! vectors `(m, n)` and `θ(t)(a) = a^α b^β`, `θ(t)(b) = a^γ b^δ`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::{checked_add, checked_mul, checked_sub};

/// Monodromy matrix `θ = [[α, γ], [β, δ]]` of a torus bundle, together with
/// the entries of `-θ⁻¹ = [[m1, m2], [n1, n2]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingMatrix {
    alpha: i64,
    beta: i64,
    gamma: i64,
    delta: i64,
    det: i64,
    m1: i64,
    n1: i64,
    m2: i64,
    n2: i64,
}

impl GluingMatrix {
    /// Builds `θ` from its entries in row-major order `α, γ, β, δ`.
    pub fn new(alpha: i64, gamma: i64, beta: i64, delta: i64) -> Result<Self> {
        let det = checked_sub(checked_mul(alpha, delta)?, checked_mul(beta, gamma)?)?;
        if det != 1 && det != -1 {
            return Err(Error::InvalidMatrix { det });
        }
        // θ⁻¹ = det · [[δ, -γ], [-β, α]] because 1/det = det.
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            det,
            m1: -det * delta,
            m2: det * gamma,
            n1: det * beta,
            n2: -det * alpha,
        })
    }

    pub fn from_rows(rows: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1).expect("identity is unimodular")
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }
    pub fn beta(&self) -> i64 {
        self.beta
    }
    pub fn gamma(&self) -> i64 {
        self.gamma
    }
    pub fn delta(&self) -> i64 {
        self.delta
    }
    pub fn det(&self) -> i64 {
        self.det
    }
    pub fn m1(&self) -> i64 {
        self.m1
    }
    pub fn n1(&self) -> i64 {
        self.n1
    }
    pub fn m2(&self) -> i64 {
        self.m2
    }
    pub fn n2(&self) -> i64 {
        self.n2
    }

    /// `(m1, n1, m2, n2)`.
    pub fn quadruple(&self) -> (i64, i64, i64, i64) {
        (self.m1, self.n1, self.m2, self.n2)
    }

    /// Entries in row-major order `[α, γ, β, δ]`.
    pub fn row_major(&self) -> [i64; 4] {
        [self.alpha, self.gamma, self.beta, self.delta]
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.alpha, self.gamma], [self.beta, self.delta]]
    }

    pub fn inverse_rows(&self) -> [[i64; 2]; 2] {
        [
            [-self.m1, -self.m2],
            [-self.n1, -self.n2],
        ]
    }

    /// `I - θ⁻¹ = [[1 + m1, m2], [n1, 1 + n2]]`.
    pub fn identity_minus_inverse(&self) -> [[i64; 2]; 2] {
        [[1 + self.m1, self.m2], [self.n1, 1 + self.n2]]
    }

    /// Rank of `θ - I` over the integers (equivalently over the rationals).
    pub fn rank_minus_identity(&self) -> usize {
        rank2(self.alpha - 1, self.gamma, self.beta, self.delta - 1, None)
    }

    /// Rank of `θ - I` reduced modulo the prime `p`.
    pub fn rank_minus_identity_mod(&self, p: i64) -> usize {
        rank2(self.alpha - 1, self.gamma, self.beta, self.delta - 1, Some(p))
    }

    /// `det(θ - I) = 1 - tr θ + det θ`.
    pub fn det_minus_identity(&self) -> i64 {
        1 - (self.alpha + self.delta) + self.det
    }

    pub fn apply(&self, (m, n): (i64, i64)) -> Result<(i64, i64)> {
        apply_rows(self.rows(), (m, n))
    }

    pub fn apply_inverse(&self, (m, n): (i64, i64)) -> Result<(i64, i64)> {
        apply_rows(self.inverse_rows(), (m, n))
    }

    /// `θ^k · v`; negative powers go through the exact inverse.
    pub fn power_apply(&self, k: i64, v: (i64, i64)) -> Result<(i64, i64)> {
        let mut out = v;
        if k >= 0 {
            for _ in 0..k {
                out = self.apply(out)?;
            }
        } else {
            for _ in 0..k.unsigned_abs() {
                out = self.apply_inverse(out)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.alpha, self.gamma, self.beta, self.delta
        )
    }
}

fn apply_rows(rows: [[i64; 2]; 2], (m, n): (i64, i64)) -> Result<(i64, i64)> {
    Ok((
        checked_add(checked_mul(rows[0][0], m)?, checked_mul(rows[0][1], n)?)?,
        checked_add(checked_mul(rows[1][0], m)?, checked_mul(rows[1][1], n)?)?,
    ))
}

fn rank2(a: i64, b: i64, c: i64, d: i64, modulus: Option<i64>) -> usize {
    let red = |x: i64| match modulus {
        Some(p) => x.rem_euclid(p),
        None => x,
    };
    let (a, b, c, d) = (red(a), red(b), red(c), red(d));
    let det = a as i128 * d as i128 - b as i128 * c as i128;
    let det_zero = match modulus {
        Some(p) => det.rem_euclid(p as i128) == 0,
        None => det == 0,
    };
    if a == 0 && b == 0 && c == 0 && d == 0 {
        0
    } else if det_zero {
        1
    } else {
        2
    }
}

/// The element `(a^m b^n, t^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub m: i64,
    pub n: i64,
    pub k: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { m: 0, n: 0, k: 0 };

    pub const fn new(m: i64, n: i64, k: i64) -> Self {
        Self { m, n, k }
    }

    pub const fn a() -> Self {
        Self::new(1, 0, 0)
    }

    pub const fn b() -> Self {
        Self::new(0, 1, 0)
    }

    pub const fn t() -> Self {
        Self::new(0, 0, 1)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fiber = match (self.m, self.n) {
            (0, 0) => "1".to_string(),
            (m, n) => {
                let mut s = String::new();
                push_power(&mut s, "a", m);
                push_power(&mut s, "b", n);
                s
            }
        };
        let base = match self.k {
            0 => "1".to_string(),
            k => {
                let mut s = String::new();
                push_power(&mut s, "t", k);
                s
            }
        };
        write!(f, "({fiber},{base})")
    }
}

fn push_power(s: &mut String, sym: &str, e: i64) {
    match e {
        0 => {}
        1 => s.push_str(sym),
        e => s.push_str(&format!("{sym}^{e}")),
    }
}

/// `g · h` under the semidirect law.
pub fn mul_elements(theta: &GluingMatrix, g: GroupElement, h: GroupElement) -> Result<GroupElement> {
    let (tm, tn) = theta.power_apply(g.k, (h.m, h.n))?;
    Ok(GroupElement {
        m: checked_add(g.m, tm)?,
        n: checked_add(g.n, tn)?,
        k: checked_add(g.k, h.k)?,
    })
}

/// `g⁻¹ = (-θ^{-k}(m, n), -k)`.
pub fn inverse_element(theta: &GluingMatrix, g: GroupElement) -> Result<GroupElement> {
    let (m, n) = theta.power_apply(-g.k, (g.m, g.n))?;
    Ok(GroupElement::new(-m, -n, -g.k))
}

/// A finitely supported integer combination of group elements.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(GroupElement::IDENTITY, 1)
    }

    pub fn monomial(g: GroupElement, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(g, coeff);
        }
        Self { terms }
    }

    /// Shorthand for the single term `(a^m b^n, t^k)` with coefficient 1.
    pub fn elem(m: i64, n: i64, k: i64) -> Self {
        Self::monomial(GroupElement::new(m, n, k), 1)
    }

    /// Collects terms, merging repeated elements.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, i64)>,
    {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_term(g, c)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, g: GroupElement, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(g).or_insert(0);
        *entry = checked_add(*entry, coeff)?;
        if *entry == 0 {
            self.terms.remove(&g);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GroupElement) -> i64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, i64)> + '_ {
        self.terms.iter().map(|(g, c)| (*g, *c))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.checked_neg().ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    pub fn checked_scale(&self, s: i64) -> Result<Self> {
        if s == 0 {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for (g, c) in self.terms() {
            terms.insert(g, checked_mul(c, s)?);
        }
        Ok(Self { terms })
    }

    /// The ring map `ZG → Z` sending every group element to 1.
    pub fn augmentation(&self) -> Result<i64> {
        self.terms().try_fold(0i64, |acc, (_, c)| checked_add(acc, c))
    }

    /// Terms whose `t`-exponent equals `k`.
    pub fn part_in_t_degree(&self, k: i64) -> impl Iterator<Item = (GroupElement, i64)> + '_ {
        self.terms().filter(move |(g, _)| g.k == k)
    }
}

impl From<GroupElement> for GroupRingElement {
    fn from(g: GroupElement) -> Self {
        Self::monomial(g, 1)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{g}")?;
            } else {
                write!(f, "{sign}{mag}{g}")?;
            }
        }
        Ok(())
    }
}

/// The integral group ring `ZG` for a fixed gluing matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupRing {
    theta: GluingMatrix,
}

impl GroupRing {
    pub fn new(theta: GluingMatrix) -> Self {
        Self { theta }
    }

    pub fn theta(&self) -> &GluingMatrix {
        &self.theta
    }

    pub fn mul(&self, x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement> {
        let mut out = GroupRingElement::zero();
        for (g, c) in x.terms() {
            for (h, d) in y.terms() {
                out.add_term(mul_elements(&self.theta, g, h)?, checked_mul(c, d)?)?;
            }
        }
        Ok(out)
    }

    /// Left multiplication by a single group element.
    pub fn left_translate(&self, g: GroupElement, x: &GroupRingElement) -> Result<GroupRingElement> {
        let mut out = GroupRingElement::zero();
        for (h, c) in x.terms() {
            out.add_term(mul_elements(&self.theta, g, h)?, c)?;
        }
        Ok(out)
    }
}

/// Bilinear product in `ZG`.
pub fn ring_mul(
    theta: &GluingMatrix,
    x: &GroupRingElement,
    y: &GroupRingElement,
) -> Result<GroupRingElement> {
    GroupRing::new(*theta).mul(x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    A,
    B,
}

/// Fox derivative of a power of `a` (or `b`) with respect to that generator:
/// `1 + x + … + x^{e-1}` for `e > 0`, `-(x^{-1} + … + x^{e})` for `e < 0`.
pub fn fox_power(exponent: i64, axis: Axis) -> GroupRingElement {
    let at = |e: i64| match axis {
        Axis::A => GroupElement::new(e, 0, 0),
        Axis::B => GroupElement::new(0, e, 0),
    };
    let mut out = GroupRingElement::zero();
    if exponent > 0 {
        for e in 0..exponent {
            out.terms.insert(at(e), 1);
        }
    } else {
        for e in exponent..0 {
            out.terms.insert(at(e), -1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(a: i64, g: i64, b: i64, d: i64) -> GluingMatrix {
        GluingMatrix::new(a, g, b, d).unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(
            GluingMatrix::new(1, 2, 3, 4),
            Err(Error::InvalidMatrix { det: -2 })
        );
    }

    #[test]
    fn minus_inverse_entries() {
        let th = theta(2, 1, 1, 1);
        let inv = th.inverse_rows();
        // θ · θ⁻¹ = I
        let r = th.rows();
        for i in 0..2 {
            for j in 0..2 {
                let s: i64 = (0..2).map(|l| r[i][l] * inv[l][j]).sum();
                assert_eq!(s, (i == j) as i64);
            }
        }
        assert_eq!(th.quadruple(), (-1, 1, 1, -2));
    }

    #[test]
    fn power_apply_examples() {
        let th = theta(3, -1, 7, -2);
        assert_eq!(th.power_apply(0, (5, -2)).unwrap(), (5, -2));
        assert_eq!(theta(1, 1, 0, 1).power_apply(1, (1, 0)).unwrap(), (1, 0));
        // adjugate of [[2,1],[1,1]] is [[1,-1],[-1,2]]
        let th = theta(2, 1, 1, 1);
        assert_eq!(th.power_apply(-1, (1, 0)).unwrap(), (1, -1));
        assert_eq!(th.apply((1, -1)).unwrap(), (1, 0));
        let v = th.power_apply(5, (3, -4)).unwrap();
        assert_eq!(th.power_apply(-5, v).unwrap(), (3, -4));
    }

    #[test]
    fn element_products() {
        let th = theta(2, 5, 1, 3);
        assert_eq!(
            mul_elements(&th, GroupElement::a(), GroupElement::b()).unwrap(),
            GroupElement::new(1, 1, 0)
        );
        assert_eq!(
            mul_elements(&th, GroupElement::t(), GroupElement::a()).unwrap(),
            GroupElement::new(th.alpha(), th.beta(), 1)
        );
        let th = theta(1, 1, 0, 1);
        assert_eq!(
            mul_elements(&th, GroupElement::new(1, 0, 1), GroupElement::new(0, 1, -1)).unwrap(),
            GroupElement::new(2, 1, 0)
        );
    }

    #[test]
    fn ring_product_examples() {
        let th = GluingMatrix::identity();
        let ring = GroupRing::new(th);
        let one = GroupRingElement::one();
        let a = GroupRingElement::elem(1, 0, 0);
        let b = GroupRingElement::elem(0, 1, 0);
        let t = GroupRingElement::elem(0, 0, 1);
        let x = GroupRingElement::from_terms([(GroupElement::new(3, 1, 2), 4)]).unwrap();
        assert!(ring.mul(&x, &GroupRingElement::zero()).unwrap().is_zero());

        let one_minus_b = one.checked_sub(&b).unwrap();
        let a_minus_one = a.checked_sub(&one).unwrap();
        let b_minus_one = b.checked_sub(&one).unwrap();
        let s = ring
            .mul(&one_minus_b, &a_minus_one)
            .unwrap()
            .checked_add(&ring.mul(&a_minus_one, &b_minus_one).unwrap())
            .unwrap();
        assert!(s.is_zero());

        let lhs = ring
            .mul(&t.checked_sub(&one).unwrap(), &one_minus_b)
            .unwrap();
        let expected = GroupRingElement::from_terms([
            (GroupElement::IDENTITY, -1),
            (GroupElement::new(0, 1, 0), 1),
            (GroupElement::new(0, 0, 1), 1),
            (GroupElement::new(0, 1, 1), -1),
        ])
        .unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let g = GroupElement::new(1, 2, 3);
        let x = GroupRingElement::from_terms([(g, 2), (g, -2)]).unwrap();
        assert!(x.is_zero());
        assert_eq!(x, GroupRingElement::zero());
    }

    #[test]
    fn overflow_is_reported() {
        let x = GroupRingElement::monomial(GroupElement::IDENTITY, i64::MAX);
        assert_eq!(x.checked_add(&GroupRingElement::one()), Err(Error::Overflow));
        assert_eq!(x.checked_scale(2), Err(Error::Overflow));
    }

    #[test]
    fn fox_power_examples() {
        assert!(fox_power(0, Axis::A).is_zero());
        let f = fox_power(3, Axis::A);
        let expected = GroupRingElement::from_terms([
            (GroupElement::new(0, 0, 0), 1),
            (GroupElement::new(1, 0, 0), 1),
            (GroupElement::new(2, 0, 0), 1),
        ])
        .unwrap();
        assert_eq!(f, expected);
        let f = fox_power(-2, Axis::B);
        let expected = GroupRingElement::from_terms([
            (GroupElement::new(0, -1, 0), -1),
            (GroupElement::new(0, -2, 0), -1),
        ])
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn augmentation_of_monomial() {
        assert_eq!(GroupRingElement::elem(4, -7, 3).augmentation().unwrap(), 1);
    }

    #[test]
    fn display_is_readable() {
        let x = GroupRingElement::from_terms([
            (GroupElement::IDENTITY, -1),
            (GroupElement::new(2, 1, 1), 3),
        ])
        .unwrap();
        assert_eq!(x.to_string(), "-(1,1)+3(a^2b,t)");
    }
}
