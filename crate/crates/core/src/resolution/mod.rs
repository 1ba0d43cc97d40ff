//! Free resolution `0 → P3 → P2 → P1 → P0 → Z` over `ZG`.
//!
//! Bases are `x` for `P0`, `y1, y2, y3` for `P1`, `z1, z2, z3` for `P2` and
//! `w` for `P3`. Differentials are stored as matrices whose rows are the
//! generators of the source, so `∂(z1) = d2[0][0]·y1 + d2[0][1]·y2 + d2[0][2]·y3`.

mod lattice;
pub mod table;

use serde::{Deserialize, Serialize};

pub use lattice::solve_e_lattice;
pub use table::{lookup_index_sets, IndexSets, Interval};

use crate::error::{Error, Result};
use crate::group_ring::{ring_mul, GluingMatrix, GroupElement, GroupRingElement};

fn el(m: i64, n: i64, k: i64) -> GroupElement {
    GroupElement::new(m, n, k)
}

/// `x - y` for single group elements.
fn diff(x: GroupElement, y: GroupElement) -> GroupRingElement {
    GroupRingElement::from_terms([(x, 1), (y, -1)]).expect("two unit terms")
}

/// `(a,1) - (1,1)`
pub fn a_minus_one() -> GroupRingElement {
    diff(el(1, 0, 0), GroupElement::IDENTITY)
}

/// `(b,1) - (1,1)`
pub fn b_minus_one() -> GroupRingElement {
    diff(el(0, 1, 0), GroupElement::IDENTITY)
}

/// `(1,t) - (1,1)`
pub fn t_minus_one() -> GroupRingElement {
    diff(el(0, 0, 1), GroupElement::IDENTITY)
}

/// `(1,1) - (b,1)`
pub fn one_minus_b() -> GroupRingElement {
    diff(GroupElement::IDENTITY, el(0, 1, 0))
}

/// The ring elements `A, B, C, D` entering `∂2(z1)` and `∂2(z2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abcd {
    pub a: GroupRingElement,
    pub b: GroupRingElement,
    pub c: GroupRingElement,
    pub d: GroupRingElement,
}

pub fn build_abcd(theta: &GluingMatrix) -> Result<Abcd> {
    let (al, be, ga, de) = (theta.alpha(), theta.beta(), theta.gamma(), theta.delta());
    let (m1, n1, m2, n2) = theta.quadruple();
    let mut a = GroupRingElement::one();
    if m1 > 0 {
        for k in 1..=m1 {
            a.add_term(el(-k * al, -k * be, 1), 1)?;
        }
    } else if m1 < 0 {
        for k in 0..-m1 {
            a.add_term(el(k * al, k * be, 1), -1)?;
        }
    }

    let mut b = GroupRingElement::zero();
    if n1 > 0 {
        for k in 0..n1 {
            b.add_term(el(1 + k * ga, k * de, 1), 1)?;
        }
    } else if n1 < 0 {
        for k in 1..=-n1 {
            b.add_term(el(1 - k * ga, -k * de, 1), -1)?;
        }
    }

    let mut c = GroupRingElement::zero();
    if m2 > 0 {
        for k in 1..=m2 {
            c.add_term(el(-k * al, -k * be, 1), 1)?;
        }
    } else if m2 < 0 {
        for k in 0..-m2 {
            c.add_term(el(k * al, k * be, 1), -1)?;
        }
    }

    let mut d = GroupRingElement::one();
    if n2 > 0 {
        for k in 0..n2 {
            d.add_term(el(k * ga, 1 + k * de, 1), 1)?;
        }
    } else if n2 < 0 {
        for k in 1..=-n2 {
            d.add_term(el(-k * ga, 1 - k * de, 1), -1)?;
        }
    }
    Ok(Abcd { a, b, c, d })
}

/// Right-hand sides `(b-1)A + (1-a)C` and `(b-1)B + (1-a)D` of the two
/// identities that `E(1-b)` and `E(a-1)` must satisfy.
pub(crate) fn e_right_hand_sides(
    theta: &GluingMatrix,
) -> Result<(GroupRingElement, GroupRingElement)> {
    let abcd = build_abcd(theta)?;
    let bm1 = b_minus_one();
    let om_a = a_minus_one().checked_neg()?;
    let r1 = ring_mul(theta, &bm1, &abcd.a)?.checked_add(&ring_mul(theta, &om_a, &abcd.c)?)?;
    let r2 = ring_mul(theta, &bm1, &abcd.b)?.checked_add(&ring_mul(theta, &om_a, &abcd.d)?)?;
    Ok((r1, r2))
}

/// Checks `E(1-b) = (b-1)A + (1-a)C` and `E(a-1) = (b-1)B + (1-a)D`.
pub fn check_e_identities(theta: &GluingMatrix, e: &GroupRingElement) -> Result<()> {
    let (r1, r2) = e_right_hand_sides(theta)?;
    let l1 = ring_mul(theta, e, &one_minus_b())?;
    let l2 = ring_mul(theta, e, &a_minus_one())?;
    if l1 != r1 {
        return Err(Error::EVerificationFailure(format!(
            "E(1-b) = {l1}, expected {r1}"
        )));
    }
    if l2 != r2 {
        return Err(Error::EVerificationFailure(format!(
            "E(a-1) = {l2}, expected {r2}"
        )));
    }
    Ok(())
}

/// `-(1,1) + Σ_{I1×J1} (θ(m,n), t) - Σ_{I2×J2} (θ(m,n), t)`.
pub fn e_from_index_sets(theta: &GluingMatrix, sets: &IndexSets) -> Result<GroupRingElement> {
    let mut e = GroupRingElement::monomial(GroupElement::IDENTITY, -1);
    for (is, js, sign) in [(sets.i1, sets.j1, 1), (sets.i2, sets.j2, -1)] {
        for m in is.iter() {
            for n in js.iter() {
                let (x, y) = theta.apply((m, n))?;
                e.add_term(el(x, y, 1), sign)?;
            }
        }
    }
    Ok(e)
}

/// Where a resolution's `E` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ESource {
    /// Zero-based row of the index-set table.
    Table { row: usize },
    /// No table row applied; the lattice solver produced `E`.
    Lattice,
}

/// `E` with its provenance. Table output is always verified before it is
/// returned; a matching row whose `E` fails is an error, not a fallback.
pub fn build_e_with_source(theta: &GluingMatrix) -> Result<(GroupRingElement, ESource)> {
    match lookup_index_sets(theta) {
        Ok((row, sets)) => {
            let e = e_from_index_sets(theta, &sets)?;
            check_e_identities(theta, &e).map_err(|err| match err {
                Error::EVerificationFailure(msg) => {
                    Error::EVerificationFailure(format!("table row {}: {msg}", row + 1))
                }
                other => other,
            })?;
            Ok((e, ESource::Table { row }))
        }
        Err(Error::NoMatchingRow(q)) => {
            log::debug!("no index-set row for {q:?}; using lattice solver");
            Ok((solve_e_lattice(theta)?, ESource::Lattice))
        }
        Err(other) => Err(other),
    }
}

pub fn build_e(theta: &GluingMatrix) -> Result<GroupRingElement> {
    build_e_with_source(theta).map(|(e, _)| e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub theta: GluingMatrix,
    pub abcd: Abcd,
    pub e: GroupRingElement,
    pub e_source: ESource,
    /// `∂1`: 3×1, rows `y1, y2, y3`.
    pub d1: [[GroupRingElement; 1]; 3],
    /// `∂2`: 3×3, rows `z1, z2, z3`, columns `y1, y2, y3`.
    pub d2: [[GroupRingElement; 3]; 3],
    /// `∂3`: 1×3, row `w`, columns `z1, z2, z3`.
    pub d3: [[GroupRingElement; 3]; 1],
}

/// Product of row-indexed differential matrices: `(f·g)[i][k] = Σ_j f[i][j] g[j][k]`.
fn compose<const R: usize, const M: usize, const C: usize>(
    theta: &GluingMatrix,
    f: &[[GroupRingElement; M]; R],
    g: &[[GroupRingElement; C]; M],
) -> Result<Vec<Vec<GroupRingElement>>> {
    let mut out = vec![vec![GroupRingElement::zero(); C]; R];
    for (i, row) in f.iter().enumerate() {
        for (k, slot) in out[i].iter_mut().enumerate() {
            for (j, fij) in row.iter().enumerate() {
                *slot = slot.checked_add(&ring_mul(theta, fij, &g[j][k])?)?;
            }
        }
    }
    Ok(out)
}

impl Resolution {
    /// `∂2 ∘ ∂1` as a 3×1 matrix (zero for a chain complex).
    pub fn d2_then_d1(&self) -> Result<Vec<Vec<GroupRingElement>>> {
        compose(&self.theta, &self.d2, &self.d1)
    }

    /// `∂3 ∘ ∂2` as a 1×3 matrix.
    pub fn d3_then_d2(&self) -> Result<Vec<Vec<GroupRingElement>>> {
        compose(&self.theta, &self.d3, &self.d2)
    }

    /// Runs every structural check; the constructor already does this.
    pub fn verify(&self) -> Result<()> {
        for (name, m) in [("d1∘d2", self.d2_then_d1()?), ("d2∘d3", self.d3_then_d2()?)] {
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        return Err(Error::ChainComplexViolation(format!(
                            "{name} entry ({i},{j}) = {x}"
                        )));
                    }
                }
            }
        }
        for (i, row) in self.d1.iter().enumerate() {
            if row[0].augmentation()? != 0 {
                return Err(Error::ChainComplexViolation(format!(
                    "augmentation of d1 entry {i} is nonzero"
                )));
            }
        }
        check_e_identities(&self.theta, &self.e)
    }

    /// `ε` applied to `(A, B, C, D, E)`.
    pub fn augmentations(&self) -> Result<[i64; 5]> {
        Ok([
            self.abcd.a.augmentation()?,
            self.abcd.b.augmentation()?,
            self.abcd.c.augmentation()?,
            self.abcd.d.augmentation()?,
            self.e.augmentation()?,
        ])
    }
}

pub fn build_resolution(theta: &GluingMatrix) -> Result<Resolution> {
    let abcd = build_abcd(theta)?;
    let (e, e_source) = build_e_with_source(theta)?;
    let am1 = a_minus_one();
    let bm1 = b_minus_one();
    let zero = GroupRingElement::zero;
    let res = Resolution {
        theta: *theta,
        d1: [[am1.clone()], [bm1.clone()], [t_minus_one()]],
        d2: [
            [abcd.a.clone(), abcd.b.clone(), am1.clone()],
            [abcd.c.clone(), abcd.d.clone(), bm1.clone()],
            [one_minus_b(), am1.clone(), zero()],
        ],
        d3: [[one_minus_b(), am1, e.clone()]],
        abcd,
        e,
        e_source,
    };
    res.verify()?;
    Ok(res)
}
