//! Lattice-labeling solver for `E`.
//!
//! Writing `E = -(1,1) + Σ_x h_x (x, t)`, the two boundary identities for
//! `E` become difference equations on the labels:
//!
//! ```text
//! h_x - h_{x - θ(0,1)} = R1(x)
//! h_{x - θ(1,0)} - h_x = R2(x)
//! ```
//!
//! where `R1`, `R2` are the `t`-degree-one parts of the right-hand sides.
//! Substituting `x = θ(i, j)` makes both steps axis-aligned, so each column
//! `i` is integrated in `j` from below the support.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group_ring::{GluingMatrix, GroupElement, GroupRingElement};
use crate::int::checked_add;

use super::{check_e_identities, e_right_hand_sides};

/// Solves for `E` without consulting the index-set table.
pub fn solve_e_lattice(theta: &GluingMatrix) -> Result<GroupRingElement> {
    let (rhs1, rhs2) = e_right_hand_sides(theta)?;

    // t⁰ parts are forced: -(1,1)·(1-b) = b-1 and -(1,1)·(a-1) = 1-a.
    let expect1 = GroupRingElement::from_terms([
        (GroupElement::new(0, 1, 0), 1),
        (GroupElement::IDENTITY, -1),
    ])?;
    let expect2 = GroupRingElement::from_terms([
        (GroupElement::new(1, 0, 0), -1),
        (GroupElement::IDENTITY, 1),
    ])?;
    let deg0 = |x: &GroupRingElement| {
        GroupRingElement::from_terms(x.part_in_t_degree(0).collect::<Vec<_>>())
    };
    if deg0(&rhs1)? != expect1 || deg0(&rhs2)? != expect2 {
        return Err(Error::UnsolvableSystem(
            "t-degree-zero parts do not match".into(),
        ));
    }
    if rhs1.terms().chain(rhs2.terms()).any(|(g, _)| g.k != 0 && g.k != 1) {
        return Err(Error::UnsolvableSystem(
            "right-hand side has terms outside t-degrees 0 and 1".into(),
        ));
    }

    // R1 in T-coordinates, grouped by column.
    let mut columns: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    for (g, c) in rhs1.part_in_t_degree(1) {
        let (i, j) = theta.apply_inverse((g.m, g.n))?;
        *columns.entry(i).or_default().entry(j).or_insert(0) += c;
    }

    let mut e = GroupRingElement::monomial(GroupElement::IDENTITY, -1);
    for (i, col) in &columns {
        let (lo, hi) = match (col.keys().next(), col.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => continue,
        };
        let mut running = 0i64;
        for j in lo..=hi {
            running = checked_add(running, col.get(&j).copied().unwrap_or(0))?;
            if running != 0 {
                let (m, n) = theta.apply((*i, j))?;
                e.add_term(GroupElement::new(m, n, 1), running)?;
            }
        }
        if running != 0 {
            return Err(Error::UnsolvableSystem(format!(
                "column {i} integrates to {running}, not 0"
            )));
        }
    }

    check_e_identities(theta, &e).map_err(|err| match err {
        Error::EVerificationFailure(msg) => Error::UnsolvableSystem(msg),
        other => other,
    })?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solution() {
        let e = solve_e_lattice(&GluingMatrix::identity()).unwrap();
        let want = GroupRingElement::from_terms([
            (GroupElement::IDENTITY, -1),
            (GroupElement::new(0, 0, 1), 1),
        ])
        .unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn anosov_solution_verifies() {
        let th = GluingMatrix::new(2, 1, 1, 1).unwrap();
        let e = solve_e_lattice(&th).unwrap();
        assert_eq!(e.augmentation().unwrap(), 0);
        check_e_identities(&th, &e).unwrap();
    }
}
