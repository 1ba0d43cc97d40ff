//! Cup products on `H^*(G; R)` and named presentations of the ring.

mod presentation;
pub mod tables;

use serde::{Deserialize, Serialize};

pub use presentation::{
    ring_presentation, Generator, PresentationFamily, Relation, RingPresentation, Term,
};
pub use tables::{
    cup_tables, delta11_tables, delta12_closed, delta12_table, delta12_unsimplified, lemma8_sums,
    s_closed_forms, s_from_e, s_function, CupTables,
};

use crate::cohomology::{Cochain, Cohomology, COCHAIN_DIMS};
use crate::error::{Error, Result};
use crate::int::{checked_add, checked_mul};

/// A cohomology class given by coordinates in `H^degree`. Degrees above 3
/// carry no coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassValue {
    pub degree: usize,
    pub coords: Vec<i64>,
}

impl ClassValue {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

fn bilinear(table: &[[i64; 3]; 3], u: &[i64], v: &[i64]) -> Result<i64> {
    let mut acc = 0i64;
    for (j, &uj) in u.iter().enumerate() {
        for (k, &vk) in v.iter().enumerate() {
            if table[j][k] != 0 {
                acc = checked_add(acc, checked_mul(checked_mul(table[j][k], uj)?, vk)?)?;
            }
        }
    }
    Ok(acc)
}

/// Cochain-level product. Degree `(2, 1)` is computed as `v ⌣ u`, the
/// graded-commutative sign being `+1` there. `None` when the degrees add
/// up to more than 3.
pub fn cup_cochains(u: &Cochain, v: &Cochain, tables: &CupTables) -> Result<Option<Cochain>> {
    if u.ring != v.ring {
        return Err(Error::RingMismatch);
    }
    let ring = u.ring;
    let degree = u.degree + v.degree;
    if degree > 3 {
        return Ok(None);
    }
    let coords = match (u.degree, v.degree) {
        (0, _) => v.coords.iter().map(|&x| checked_mul(u.coords[0], x)).collect::<Result<_>>()?,
        (_, 0) => u.coords.iter().map(|&x| checked_mul(v.coords[0], x)).collect::<Result<_>>()?,
        (1, 1) => tables
            .m
            .iter()
            .map(|t| bilinear(t, &u.coords, &v.coords).map(|x| ring.reduce(x)))
            .collect::<Result<_>>()?,
        (1, 2) => vec![bilinear(&tables.n, &u.coords, &v.coords)?],
        (2, 1) => return cup_cochains(v, u, tables),
        (a, b) => return Err(Error::DegreeOutOfRange(a, b)),
    };
    debug_assert_eq!(Vec::len(&coords), COCHAIN_DIMS[degree]);
    Cochain::new(degree, coords, ring).map(Some)
}

/// `[u] ⌣ [v]` in class coordinates. Both arguments must be cocycles over
/// the ring of `coh`.
pub fn cup(u: &Cochain, v: &Cochain, tables: &CupTables, coh: &Cohomology) -> Result<ClassValue> {
    if u.ring != coh.ring || v.ring != coh.ring {
        return Err(Error::RingMismatch);
    }
    for c in [u, v] {
        if !coh.groups[c.degree].is_cocycle(c)? {
            return Err(Error::NotACocycle(format!("{c} in degree {}", c.degree)));
        }
    }
    let tables = tables.reduced(coh.ring);
    match cup_cochains(u, v, &tables)? {
        Some(w) => Ok(ClassValue {
            degree: w.degree,
            coords: coh.groups[w.degree].class_coordinates(&w)?,
        }),
        None => Ok(ClassValue {
            degree: u.degree + v.degree,
            coords: Vec::new(),
        }),
    }
}
