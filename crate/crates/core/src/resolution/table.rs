//! Closed-form index sets `I1, J1, I2, J2` for the element `E`.
//!
//! Each row pairs a sign/value pattern on `(m1, n1, m2, n2)` (plus an
//! optional ordering condition) with four intervals whose endpoints are
//! affine in the quadruple. The rows are data; `lookup_index_sets` only
//! evaluates them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_ring::GluingMatrix;

/// Closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: 0, hi: -1 };

    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn sum(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            (self.lo + self.hi) * self.len() / 2
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSets {
    pub i1: Interval,
    pub j1: Interval,
    pub i2: Interval,
    pub j2: Interval,
}

impl IndexSets {
    /// `|I1 × J1| - |I2 × J2|`; equals `det θ` for a correct row.
    pub fn signed_cardinality(&self) -> i64 {
        self.i1.len() * self.j1.len() - self.i2.len() * self.j2.len()
    }

    /// `S(x, y) = x|J1|ΣI1 + y|I1|ΣJ1 - x|J2|ΣI2 - y|I2|ΣJ2`.
    pub fn s_function(&self, x: i64, y: i64) -> i64 {
        x * self.j1.len() * self.i1.sum() + y * self.i1.len() * self.j1.sum()
            - x * self.j2.len() * self.i2.sum()
            - y * self.i2.len() * self.j2.sum()
    }
}

/// Constraint on one entry of `(m1, n1, m2, n2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Pos,
    Neg,
    Exactly(i64),
    Any,
}

impl Sign {
    fn admits(self, v: i64) -> bool {
        match self {
            Sign::Pos => v > 0,
            Sign::Neg => v < 0,
            Sign::Exactly(c) => v == c,
            Sign::Any => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Order {
    Free,
    /// `m1 < m2` and `n1 < n2`
    LtLt,
    /// `m1 > m2` and `n1 > n2`
    GtGt,
    /// `m1 < m2` and `n1 > n2`
    LtGt,
    /// `m1 > m2` and `n1 < n2`
    GtLt,
}

impl Order {
    fn admits(self, (m1, n1, m2, n2): (i64, i64, i64, i64)) -> bool {
        match self {
            Order::Free => true,
            Order::LtLt => m1 < m2 && n1 < n2,
            Order::GtGt => m1 > m2 && n1 > n2,
            Order::LtGt => m1 < m2 && n1 > n2,
            Order::GtLt => m1 > m2 && n1 < n2,
        }
    }
}

/// `c + a·m1 + b·n1 + c2·m2 + d·n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Affine([i64; 5]);

impl Affine {
    fn eval(self, (m1, n1, m2, n2): (i64, i64, i64, i64)) -> i64 {
        let [c, a, b, e, d] = self.0;
        c + a * m1 + b * n1 + e * m2 + d * n2
    }
}

const fn k(c: i64) -> Affine {
    Affine([c, 0, 0, 0, 0])
}
const fn am1(c: i64) -> Affine {
    Affine([c, -1, 0, 0, 0])
}
const fn an1(c: i64) -> Affine {
    Affine([c, 0, -1, 0, 0])
}
const fn am2(c: i64) -> Affine {
    Affine([c, 0, 0, -1, 0])
}
const fn an2(c: i64) -> Affine {
    Affine([c, 0, 0, 0, -1])
}
/// `c - m1 - m2`
const fn am12(c: i64) -> Affine {
    Affine([c, -1, 0, -1, 0])
}

const EMPTY: (Affine, Affine) = (k(0), k(-1));

struct Row {
    signs: [Sign; 4],
    order: Order,
    i1: (Affine, Affine),
    j1: (Affine, Affine),
    i2: (Affine, Affine),
    j2: (Affine, Affine),
}

use Sign::{Any, Exactly as V, Neg as N, Pos as P};

#[rustfmt::skip]
static ROWS: [Row; 28] = [
    Row { signs: [P, P, P, P], order: Order::LtLt,
          i1: (am12(0), am2(-1)), j1: (an2(0), an1(-1)), i2: (am2(0), am1(-1)), j2: (an1(0), k(-1)) },
    Row { signs: [P, P, P, P], order: Order::GtGt,
          i1: (am1(0), am2(-1)), j1: (an2(0), k(-1)), i2: (am12(0), am1(-1)), j2: (an1(0), an2(-1)) },
    Row { signs: [N, N, N, N], order: Order::GtGt,
          i1: (am2(0), am12(-1)), j1: (an1(0), an2(-1)), i2: (am1(0), am2(-1)), j2: (k(0), an1(-1)) },
    Row { signs: [N, N, N, N], order: Order::LtLt,
          i1: (am2(0), am1(-1)), j1: (k(0), an2(-1)), i2: (am1(0), am12(-1)), j2: (an2(0), an1(-1)) },
    Row { signs: [N, P, P, N], order: Order::Free,
          i1: (am2(0), am12(-1)), j1: (k(0), an2(-1)), i2: (am12(0), am1(-1)), j2: (an1(0), k(-1)) },
    Row { signs: [P, N, N, P], order: Order::Free,
          i1: (am12(0), am2(-1)), j1: (an2(0), k(-1)), i2: (am1(0), am12(-1)), j2: (k(0), an1(-1)) },
    Row { signs: [P, N, P, N], order: Order::LtGt,
          i1: (am2(0), am1(-1)), j1: (k(0), an1(-1)), i2: (am12(0), am2(-1)), j2: (an1(0), an2(-1)) },
    Row { signs: [P, N, P, N], order: Order::GtLt,
          i1: (am12(0), am1(-1)), j1: (an2(0), an1(-1)), i2: (am1(0), am2(-1)), j2: (k(0), an2(-1)) },
    Row { signs: [N, P, N, P], order: Order::LtGt,
          i1: (am1(0), am12(-1)), j1: (an1(0), an2(-1)), i2: (am2(0), am1(-1)), j2: (an2(0), k(-1)) },
    Row { signs: [N, P, N, P], order: Order::GtLt,
          i1: (am1(0), am2(-1)), j1: (an1(0), k(-1)), i2: (am2(0), am12(-1)), j2: (an2(0), an1(-1)) },
    Row { signs: [P, P, N, N], order: Order::Free,
          i1: (am1(0), am12(-1)), j1: (an1(0), k(-1)), i2: (am12(0), am2(-1)), j2: (k(0), an2(-1)) },
    Row { signs: [N, N, P, P], order: Order::Free,
          i1: (am12(0), am1(-1)), j1: (k(0), an1(-1)), i2: (am2(0), am12(-1)), j2: (an2(0), k(-1)) },
    // m1 = 0
    Row { signs: [V(0), V(1), V(1), Any], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (k(-1), k(-1)), j2: (k(-1), k(-1)) },
    Row { signs: [V(0), V(-1), V(-1), Any], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (k(0), k(0)), j2: (k(0), k(0)) },
    Row { signs: [V(0), V(1), V(-1), Any], order: Order::Free,
          i1: (k(0), k(0)), j1: (k(-1), k(-1)), i2: EMPTY, j2: EMPTY },
    Row { signs: [V(0), V(-1), V(1), Any], order: Order::Free,
          i1: (k(-1), k(-1)), j1: (k(0), k(0)), i2: EMPTY, j2: EMPTY },
    // n1 = 0
    Row { signs: [V(1), V(0), Any, V(1)], order: Order::Free,
          i1: (am2(-1), am2(-1)), j1: (k(-1), k(-1)), i2: EMPTY, j2: EMPTY },
    Row { signs: [V(-1), V(0), Any, V(-1)], order: Order::Free,
          i1: (am2(0), am2(0)), j1: (k(0), k(0)), i2: EMPTY, j2: EMPTY },
    Row { signs: [V(1), V(0), Any, V(-1)], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (am2(-1), am2(-1)), j2: (k(0), k(0)) },
    Row { signs: [V(-1), V(0), Any, V(1)], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (am2(0), am2(0)), j2: (k(-1), k(-1)) },
    // m2 = 0
    Row { signs: [V(1), Any, V(0), V(1)], order: Order::Free,
          i1: (k(-1), k(-1)), j1: (k(-1), k(-1)), i2: EMPTY, j2: EMPTY },
    Row { signs: [V(-1), Any, V(0), V(-1)], order: Order::Free,
          i1: (k(0), k(0)), j1: (k(0), k(0)), i2: EMPTY, j2: EMPTY },
    Row { signs: [V(1), Any, V(0), V(-1)], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (k(-1), k(-1)), j2: (k(0), k(0)) },
    Row { signs: [V(-1), Any, V(0), V(1)], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (k(0), k(0)), j2: (k(-1), k(-1)) },
    // n2 = 0
    Row { signs: [Any, V(1), V(1), V(0)], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (am1(-1), am1(-1)), j2: (k(-1), k(-1)) },
    Row { signs: [Any, V(-1), V(-1), V(0)], order: Order::Free,
          i1: EMPTY, j1: EMPTY, i2: (am1(0), am1(0)), j2: (k(0), k(0)) },
    Row { signs: [Any, V(1), V(-1), V(0)], order: Order::Free,
          i1: (am1(0), am1(0)), j1: (k(-1), k(-1)), i2: EMPTY, j2: EMPTY },
    Row { signs: [Any, V(-1), V(1), V(0)], order: Order::Free,
          i1: (am1(-1), am1(-1)), j1: (k(0), k(0)), i2: EMPTY, j2: EMPTY },
];

pub const ROW_COUNT: usize = 28;

impl Row {
    fn admits(&self, q: (i64, i64, i64, i64)) -> bool {
        let (m1, n1, m2, n2) = q;
        self.signs[0].admits(m1)
            && self.signs[1].admits(n1)
            && self.signs[2].admits(m2)
            && self.signs[3].admits(n2)
            && self.order.admits(q)
    }

    fn sets(&self, q: (i64, i64, i64, i64)) -> IndexSets {
        let iv = |(lo, hi): (Affine, Affine)| Interval::new(lo.eval(q), hi.eval(q));
        IndexSets {
            i1: iv(self.i1),
            j1: iv(self.j1),
            i2: iv(self.i2),
            j2: iv(self.j2),
        }
    }
}

/// Zero-based indices of every row whose conditions hold for `θ`.
pub fn matching_rows(theta: &GluingMatrix) -> Vec<usize> {
    let q = theta.quadruple();
    ROWS.iter()
        .enumerate()
        .filter(|(_, r)| r.admits(q))
        .map(|(i, _)| i)
        .collect()
}

/// First matching row and its index sets.
pub fn lookup_index_sets(theta: &GluingMatrix) -> Result<(usize, IndexSets)> {
    let q = theta.quadruple();
    ROWS.iter()
        .enumerate()
        .find(|(_, r)| r.admits(q))
        .map(|(i, r)| (i, r.sets(q)))
        .ok_or(Error::NoMatchingRow(q))
}

/// Index sets of a specific row, evaluated at `θ` regardless of its conditions.
pub fn row_sets(row: usize, theta: &GluingMatrix) -> IndexSets {
    ROWS[row].sets(theta.quadruple())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_basics() {
        assert!(Interval::EMPTY.is_empty());
        assert_eq!(Interval::EMPTY.len(), 0);
        assert_eq!(Interval::new(3, 1).sum(), 0);
        assert_eq!(Interval::new(-3, 1).sum(), -5);
        assert_eq!(Interval::new(-3, 1).len(), 5);
    }

    #[test]
    fn identity_row() {
        // (m1, n1, m2, n2) = (-1, 0, 0, -1)
        let th = GluingMatrix::identity();
        let (_, sets) = lookup_index_sets(&th).unwrap();
        assert_eq!(sets.i1, Interval::new(0, 0));
        assert_eq!(sets.j1, Interval::new(0, 0));
        assert!(sets.i2.is_empty() && sets.j2.is_empty());
        assert_eq!(sets.signed_cardinality(), 1);
    }

    #[test]
    fn m1_zero_row() {
        // -θ⁻¹ = [[0, 1], [1, n2]]  ⇒  θ = [[n2, -1], [-1, 0]] with det -1
        for n2 in -3..=3 {
            let th = GluingMatrix::new(n2, -1, -1, 0).unwrap();
            assert_eq!(th.quadruple(), (0, 1, 1, n2));
            let (_, sets) = lookup_index_sets(&th).unwrap();
            assert!(sets.i1.is_empty() && sets.j1.is_empty());
            assert_eq!(sets.i2, Interval::new(-1, -1));
            assert_eq!(sets.j2, Interval::new(-1, -1));
        }
    }

    #[test]
    fn all_positive_first_row() {
        let q = (1, 2, 3, 5);
        assert!(ROWS[0].admits(q));
        let s = ROWS[0].sets(q);
        assert_eq!(s.i1, Interval::new(-4, -4));
        assert_eq!(s.j1, Interval::new(-5, -3));
        assert_eq!(s.i2, Interval::new(-3, -2));
        assert_eq!(s.j2, Interval::new(-2, -1));
    }

    #[test]
    fn s_function_by_summation() {
        let sets = IndexSets {
            i1: Interval::new(0, 0),
            j1: Interval::new(0, 0),
            i2: Interval::EMPTY,
            j2: Interval::EMPTY,
        };
        assert_eq!(sets.s_function(1, 0), 0);
        let sets = IndexSets {
            i1: Interval::new(1, 2),
            j1: Interval::new(-1, 0),
            i2: Interval::new(5, 5),
            j2: Interval::new(2, 2),
        };
        // brute force over the products
        let brute = |x: i64, y: i64| -> i64 {
            let mut s = 0;
            for m in sets.i1.iter() {
                for n in sets.j1.iter() {
                    s += x * m + y * n;
                }
            }
            for m in sets.i2.iter() {
                for n in sets.j2.iter() {
                    s -= x * m + y * n;
                }
            }
            s
        };
        for (x, y) in [(1, 0), (0, 1), (3, -2)] {
            assert_eq!(sets.s_function(x, y), brute(x, y));
        }
    }
}
