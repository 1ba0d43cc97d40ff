//! Structure constants of the cup products `H^1 ⊗ H^1 → H^2` and
//! `H^1 ⊗ H^2 → H^3`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_ring::{GluingMatrix, GroupRingElement};
use crate::int::exact_div;
use crate::linalg::CoefficientRing;
use crate::resolution::{build_e, lookup_index_sets, table::IndexSets};

pub type Table = [[i64; 3]; 3];

/// `(u⌣v)(z_i) = Σ m[i][j][k] u(y_j) v(y_k)` and
/// `(u⌣v)(w) = Σ n[j][k] u(y_j) v(z_k)`, all indices zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CupTables {
    pub m: [Table; 3],
    pub n: Table,
}

impl CupTables {
    pub fn reduced(&self, ring: CoefficientRing) -> Self {
        let red = |t: &Table| t.map(|row| row.map(|x| ring.reduce(x)));
        Self {
            m: [red(&self.m[0]), red(&self.m[1]), red(&self.m[2])],
            n: red(&self.n),
        }
    }
}

/// `x(x+1)/2` and `x(x-1)/2`, both always integral.
fn tri(x: i64) -> i64 {
    x * (x + 1) / 2
}

fn tri_minus(x: i64) -> i64 {
    x * (x - 1) / 2
}

pub fn delta11_tables(theta: &GluingMatrix) -> Result<[Table; 3]> {
    let (al, be, ga, de) = (theta.alpha(), theta.beta(), theta.gamma(), theta.delta());
    let (m1, n1, m2, n2) = theta.quadruple();
    let half = |num: i64, what: &str| exact_div(num, 2, what);
    let z1 = [
        [
            half(-al * m1 * (m1 + 1), "α m1(m1+1)/2")?,
            n1 + half(ga * n1 * (n1 - 1), "γ n1(n1-1)/2")?,
            1,
        ],
        [
            half(-be * m1 * (m1 + 1), "β m1(m1+1)/2")?,
            half(de * n1 * (n1 - 1), "δ n1(n1-1)/2")?,
            0,
        ],
        [m1, n1, 0],
    ];
    let z2 = [
        [
            half(-al * m2 * (m2 + 1), "α m2(m2+1)/2")?,
            half(ga * n2 * (n2 - 1), "γ n2(n2-1)/2")?,
            0,
        ],
        [
            half(-be * m2 * (m2 + 1), "β m2(m2+1)/2")?,
            n2 + half(de * n2 * (n2 - 1), "δ n2(n2-1)/2")?,
            1,
        ],
        [m2, n2, 0],
    ];
    let z3 = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]];
    Ok([z1, z2, z3])
}

/// `S(x, y) = x|J1|ΣI1 + y|I1|ΣJ1 - x|J2|ΣI2 - y|I2|ΣJ2` from the table row.
pub fn s_from_index_sets(sets: &IndexSets, x: i64, y: i64) -> i64 {
    sets.s_function(x, y)
}

/// The same sum read off `E`: every term `c·(θ(i,j), t)` contributes
/// `c·(x i + y j)`. Works whether or not a table row applies.
pub fn s_from_e(theta: &GluingMatrix, e: &GroupRingElement, x: i64, y: i64) -> Result<i64> {
    let mut acc = 0i64;
    for (g, c) in e.part_in_t_degree(1) {
        let (i, j) = theta.apply_inverse((g.m, g.n))?;
        acc += c * (x * i + y * j);
    }
    Ok(acc)
}

/// `S(x, y)` by direct summation: over the table's index sets when a row
/// matches, otherwise over the support of `E`.
pub fn s_function(x: i64, y: i64, theta: &GluingMatrix) -> Result<i64> {
    match lookup_index_sets(theta) {
        Ok((_, sets)) => Ok(sets.s_function(x, y)),
        Err(Error::NoMatchingRow(_)) => s_from_e(theta, &build_e(theta)?, x, y),
        Err(e) => Err(e),
    }
}

/// Closed forms of `S(α, γ)` and `S(β, δ)`.
pub fn s_closed_forms(theta: &GluingMatrix) -> Result<(i64, i64)> {
    let (al, be, ga, de) = (theta.alpha(), theta.beta(), theta.gamma(), theta.delta());
    if theta.det() == 1 {
        Ok((
            exact_div(1 - al - ga - al * ga, 2, "(1-α-γ-αγ)/2")?,
            exact_div(1 - be - de + be * de, 2, "(1-β-δ+βδ)/2")?,
        ))
    } else {
        Ok((
            exact_div(-1 + al + ga - al * ga, 2, "(-1+α+γ-αγ)/2")?,
            exact_div(-1 + be + de + be * de, 2, "(-1+β+δ+βδ)/2")?,
        ))
    }
}

/// Augmentation sums `(Σ h_uv, Σ q_uv)` of the contracting homotopy.
pub fn lemma8_sums(theta: &GluingMatrix) -> Result<(i64, i64)> {
    let (al, be, ga, de, det) = (
        theta.alpha(),
        theta.beta(),
        theta.gamma(),
        theta.delta(),
        theta.det(),
    );
    Ok((
        exact_div(al * be * (ga + de - det), 2, "αβ(γ+δ-det θ)/2")?,
        exact_div(ga * de * (al + be - det), 2, "γδ(α+β-det θ)/2")?,
    ))
}

/// `(N13, N23)` before simplification, from the homotopy sums and `S`.
pub fn delta12_unsimplified(theta: &GluingMatrix) -> Result<(i64, i64)> {
    let (al, be, ga, de) = (theta.alpha(), theta.beta(), theta.gamma(), theta.delta());
    let (m1, n1, m2, n2) = theta.quadruple();
    let (sh, sq) = lemma8_sums(theta)?;
    let s13 = s_function(al, ga, theta)?;
    let s23 = s_function(be, de, theta)?;
    let n13 = m2 * sh + al * be * tri(m2) - ga * n2 - ga * de * tri_minus(n2) + n2 * sq + s13;
    let n23 = -m1 * sh - al * be * tri(m1) + ga * de * tri_minus(n1) - n1 * sq + s23;
    Ok((n13, n23))
}

/// `(N13, N23)` in simplified closed form.
pub fn delta12_closed(theta: &GluingMatrix) -> Result<(i64, i64)> {
    let (al, be, ga, de) = (theta.alpha(), theta.beta(), theta.gamma(), theta.delta());
    let (sa, sb) = s_closed_forms(theta)?;
    if theta.det() == 1 {
        Ok((sa, sb))
    } else {
        Ok((al * ga * (de - be - 1) + sa, be * de * (ga - al + 1) + sb))
    }
}

/// `N` with `N13`, `N23` from the closed forms, cross-checked against the
/// unsimplified expression.
pub fn delta12_table(theta: &GluingMatrix) -> Result<Table> {
    let (n13, n23) = delta12_closed(theta)?;
    let raw = delta12_unsimplified(theta)?;
    if raw != (n13, n23) {
        return Err(Error::DiagonalMismatch(format!(
            "closed forms give (N13, N23) = ({n13}, {n23}), summation gives {raw:?}"
        )));
    }
    Ok([[0, 1, n13], [-1, 0, n23], [0, 0, theta.det()]])
}

pub fn cup_tables(theta: &GluingMatrix) -> Result<CupTables> {
    Ok(CupTables {
        m: delta11_tables(theta)?,
        n: delta12_table(theta)?,
    })
}
