//! Six-way classification of `θ` and the integers used to name ring
//! generators when `rank(θ - I) = 1`.
//!
//! In rank one, `I - θ⁻¹ = [[q r', p r'], [q s', p s']]` with `gcd(p, q) = 1`.
//! The pair `(q, p)` is normalized so that `q > 0`, or `q = 0` and `p = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_ring::GluingMatrix;
use crate::int::{exact_div, ext_gcd, gcd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// `θ = I`.
    RankZero,
    /// `rank(θ - I) = 1`, `det θ = 1`.
    RankOneOrientable,
    /// `rank(θ - I) = 1`, `det θ = -1`, `gcd(β, γ, 2) = 1`.
    RankOneNonOrientableOdd,
    /// `rank(θ - I) = 1`, `det θ = -1`, `gcd(β, γ, 2) = 2`.
    RankOneNonOrientableEven,
    /// `rank(θ - I) = 2`, `det θ = 1`.
    RankTwoOrientable,
    /// `rank(θ - I) = 2`, `det θ = -1`.
    RankTwoNonOrientable,
}

impl CaseLabel {
    /// Position 1..=6 in the standard ordering of the integral cases.
    pub fn number(self) -> u8 {
        match self {
            CaseLabel::RankZero => 1,
            CaseLabel::RankOneOrientable => 2,
            CaseLabel::RankOneNonOrientableOdd => 3,
            CaseLabel::RankOneNonOrientableEven => 4,
            CaseLabel::RankTwoOrientable => 5,
            CaseLabel::RankTwoNonOrientable => 6,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "integral case {} of 6", self.number())
    }
}

/// The rank-one factorization of `I - θ⁻¹` and the Bézout data derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankOneData {
    pub p: i64,
    pub q: i64,
    pub r_prime: i64,
    pub s_prime: i64,
    /// `r' / p = -s' / q`; present when `det θ = 1`.
    pub r_doubleprime: Option<i64>,
    pub k: i64,
    pub ell: i64,
    /// `s' = 2k - q m`, `r' = 2ℓ + p m`; present when `det θ = -1`.
    pub m: Option<i64>,
    /// `m / 2` when `m` is even.
    pub m_prime: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivationData {
    pub case_label: CaseLabel,
    pub rank: usize,
    pub det: i64,
    pub gcd_beta_gamma: i64,
    pub gcd_beta_gamma_2: i64,
    pub rank_one: Option<RankOneData>,
}

/// Bézout pair `(k, ℓ)` with `p k + q ℓ = 1`, `|k|` minimal and `k ≥ 0` on ties.
fn canonical_bezout(p: i64, q: i64) -> (i64, i64) {
    if q == 0 {
        // p = 1 after normalization
        return (p, 0);
    }
    let (g, x, _) = ext_gcd(p, q);
    debug_assert_eq!(g, 1);
    let aq = q.abs();
    let mut k = x.rem_euclid(aq);
    if 2 * k > aq {
        k -= aq;
    }
    // k and k - |q| tie exactly when 2k = |q|; the nonnegative one is kept.
    let ell = (1 - p * k) / q;
    (k, ell)
}

fn rank_one(theta: &GluingMatrix) -> Result<RankOneData> {
    let [[a, b], [c, d]] = theta.identity_minus_inverse();
    let (w1, w2) = if (a, b) != (0, 0) { (a, b) } else { (c, d) };
    let g = gcd(w1, w2);
    let (mut q, mut p) = (w1 / g, w2 / g);
    if q < 0 || (q == 0 && p < 0) {
        q = -q;
        p = -p;
    }
    // Each row is a multiple of (q, p).
    let coef = |x: i64, y: i64| -> Result<i64> {
        let v = if q != 0 {
            exact_div(x, q, "row of I - θ⁻¹ by q")?
        } else {
            exact_div(y, p, "row of I - θ⁻¹ by p")?
        };
        if v * q != x || v * p != y {
            return Err(Error::DegenerateClassification(format!(
                "row ({x}, {y}) is not a multiple of ({q}, {p})"
            )));
        }
        Ok(v)
    };
    let r_prime = coef(a, b)?;
    let s_prime = coef(c, d)?;
    let (k, ell) = canonical_bezout(p, q);
    let (r_doubleprime, m, m_prime) = if theta.det() == 1 {
        let r2 = if p != 0 {
            exact_div(r_prime, p, "r' / p")?
        } else {
            exact_div(-s_prime, q, "-s' / q")?
        };
        (Some(r2), None, None)
    } else {
        let m = if q != 0 {
            exact_div(2 * k - s_prime, q, "(2k - s') / q")?
        } else {
            exact_div(r_prime - 2 * ell, p, "(r' - 2l) / p")?
        };
        if s_prime != 2 * k - q * m || r_prime != 2 * ell + p * m {
            return Err(Error::DegenerateClassification(format!(
                "m = {m} does not solve both equations"
            )));
        }
        (None, Some(m), (m % 2 == 0).then_some(m / 2))
    };
    Ok(RankOneData {
        p,
        q,
        r_prime,
        s_prime,
        r_doubleprime,
        k,
        ell,
        m,
        m_prime,
    })
}

pub fn derive_presentation_data(theta: &GluingMatrix) -> Result<DerivationData> {
    let rank = theta.rank_minus_identity();
    let det = theta.det();
    let gbg = gcd(theta.beta(), theta.gamma());
    let gbg2 = gcd(gbg, 2);
    let case_label = match (rank, det) {
        (0, 1) => CaseLabel::RankZero,
        (1, 1) => CaseLabel::RankOneOrientable,
        (1, -1) if gbg2 == 1 => CaseLabel::RankOneNonOrientableOdd,
        (1, -1) => CaseLabel::RankOneNonOrientableEven,
        (2, 1) => CaseLabel::RankTwoOrientable,
        (2, -1) => CaseLabel::RankTwoNonOrientable,
        _ => {
            return Err(Error::DegenerateClassification(format!(
                "rank(θ - I) = {rank} with det θ = {det}"
            )))
        }
    };
    let rank_one = if rank == 1 { Some(rank_one(theta)?) } else { None };
    if let Some(r) = &rank_one {
        let g = gcd(r.r_prime, r.s_prime);
        let expected = if det == 1 { gbg } else { gbg2 };
        if g != expected {
            return Err(Error::DegenerateClassification(format!(
                "gcd(r', s') = {g}, expected {expected}"
            )));
        }
    }
    Ok(DerivationData {
        case_label,
        rank,
        det,
        gcd_beta_gamma: gbg,
        gcd_beta_gamma_2: gbg2,
        rank_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(a: i64, g: i64, b: i64, d: i64) -> DerivationData {
        derive_presentation_data(&GluingMatrix::new(a, g, b, d).unwrap()).unwrap()
    }

    #[test]
    fn six_curated_cases() {
        let labels: Vec<u8> = [
            (1, 0, 0, 1),
            (1, 0, 1, 1),
            (0, 1, 1, 0),
            (1, 2, 0, -1),
            (2, 1, 1, 1),
            (2, 1, 1, 0),
        ]
        .iter()
        .map(|&(a, g, b, d)| data(a, g, b, d).case_label.number())
        .collect();
        assert_eq!(labels, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn identity_has_no_rank_one_data() {
        assert!(data(1, 0, 0, 1).rank_one.is_none());
    }

    #[test]
    fn factorization_reproduces_matrix() {
        for (a, g, b, d) in [(1, 0, 1, 1), (0, 1, 1, 0), (1, 2, 0, -1), (3, -4, 1, -1), (-1, 0, 4, 1)] {
            let th = GluingMatrix::new(a, g, b, d).unwrap();
            let r = data(a, g, b, d).rank_one.unwrap();
            assert_eq!(
                th.identity_minus_inverse(),
                [[r.q * r.r_prime, r.p * r.r_prime], [r.q * r.s_prime, r.p * r.s_prime]]
            );
            assert_eq!(r.p * r.k + r.q * r.ell, 1);
            assert!(r.q > 0 || (r.q == 0 && r.p == 1));
        }
    }

    #[test]
    fn bezout_is_canonical() {
        assert_eq!(canonical_bezout(1, 0), (1, 0));
        assert_eq!(canonical_bezout(0, 1), (0, 1));
        assert_eq!(canonical_bezout(3, 2), (1, -1));
        assert_eq!(canonical_bezout(-1, 2), (1, 1));
        assert_eq!(canonical_bezout(2, 5), (-2, 1));
    }

    #[test]
    fn swap_matrix_m_is_odd() {
        let r = data(0, 1, 1, 0).rank_one.unwrap();
        assert_eq!(r.m.unwrap().rem_euclid(2), 1);
        assert!(r.m_prime.is_none());
    }

    #[test]
    fn reflection_m_is_even() {
        let r = data(1, 2, 0, -1).rank_one.unwrap();
        assert!(r.m_prime.is_some());
    }
}
