//! Cohomology of `G` with trivial coefficients.
//!
//! `Hom_ZG(P_k, R) ≅ R^{n_k}` with `n = (1, 3, 3, 1)`, using the dual bases
//! `x*`, `y1*, y2*, y3*`, `z1*, z2*, z3*`, `w*`. The coboundary
//! `δ^k : C^k → C^{k+1}` is the augmentation of `∂_{k+1}` applied entrywise,
//! an `n_{k+1} × n_k` matrix acting on coordinate columns.

mod derivation;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use derivation::{derive_presentation_data, CaseLabel, DerivationData};

use crate::error::{Error, Result};
use crate::group_ring::{GluingMatrix, GroupRingElement};
use crate::int::{checked_mul, gcd, inv_mod};
use crate::linalg::{determinant, smith_form, Matrix};
use crate::resolution::{build_resolution, Resolution};

pub use crate::linalg::{smith_normal_form, CoefficientRing};

/// Ranks of `C^0, …, C^3`.
pub const COCHAIN_DIMS: [usize; 4] = [1, 3, 3, 1];

const BASIS: [&[&str]; 4] = [
    &["x*"],
    &["y1*", "y2*", "y3*"],
    &["z1*", "z2*", "z3*"],
    &["w*"],
];

pub fn basis_name(degree: usize, i: usize) -> &'static str {
    BASIS[degree][i]
}

/// A cochain in `Hom_ZG(P_k, R)`, given by its values on the free basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    pub coords: Vec<i64>,
    pub ring: CoefficientRing,
}

impl Cochain {
    pub fn new(degree: usize, coords: Vec<i64>, ring: CoefficientRing) -> Result<Self> {
        if degree > 3 {
            return Err(Error::DegreeOutOfRange(degree, 0));
        }
        assert_eq!(coords.len(), COCHAIN_DIMS[degree], "cochain length");
        let coords = coords.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(Self {
            degree,
            coords,
            ring,
        })
    }

    pub fn zero(degree: usize, ring: CoefficientRing) -> Self {
        Self {
            degree,
            coords: vec![0; COCHAIN_DIMS[degree]],
            ring,
        }
    }

    /// The dual basis element `e_i*` in degree `degree`.
    pub fn basis(degree: usize, i: usize, ring: CoefficientRing) -> Self {
        let mut c = Self::zero(degree, ring);
        c.coords[i] = 1;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = basis_name(self.degree, i);
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            match c.unsigned_abs() {
                1 => write!(f, "{sign}{name}")?,
                m => write!(f, "{sign}{m}{name}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `H^k` as `⊕ R/(d_i)` together with representative cocycles.
///
/// Over `Z` a factor `0` is a free summand and `d > 1` is `Z/d`; over `Z/p`
/// every factor is `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub degree: usize,
    pub ring: CoefficientRing,
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<Cochain>,
    /// Sends a cocycle's coordinates to class coordinates (before reduction).
    coordinate_map: Matrix,
    /// `δ^k`, used to recognise cocycles.
    coboundary: Matrix,
}

impl AbelianGroupPresentation {
    pub fn len(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of free `Z` summands (always 0 over a field).
    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d == 0).count()
    }

    /// Factors `d > 1` over `Z`; every factor over `Z/p`.
    pub fn torsion(&self) -> Vec<i64> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Dimension over the prime field; only meaningful over `Z/p`.
    pub fn dimension(&self) -> usize {
        self.len()
    }

    pub fn coordinate_map(&self) -> &Matrix {
        &self.coordinate_map
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool> {
        self.check_shape(c)?;
        Ok(self.coboundary.apply(&c.coords, self.ring)?.iter().all(|&x| x == 0))
    }

    fn check_shape(&self, c: &Cochain) -> Result<()> {
        if c.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        if c.degree != self.degree {
            return Err(Error::DegreeOutOfRange(c.degree, self.degree));
        }
        Ok(())
    }

    /// Reduces a coordinate vector modulo the invariant factors.
    pub fn reduce_class(&self, coords: &[i64]) -> Vec<i64> {
        coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| if d == 0 { x } else { x.rem_euclid(d) })
            .collect()
    }

    /// Coordinates of `[c]` against `generators`.
    pub fn class_coordinates(&self, c: &Cochain) -> Result<Vec<i64>> {
        if !self.is_cocycle(c)? {
            return Err(Error::NotACocycle(format!("{c} in degree {}", c.degree)));
        }
        let raw = self.coordinate_map.apply(&c.coords, CoefficientRing::Integers)?;
        Ok(self.reduce_class(&raw))
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        Ok(self.class_coordinates(c)?.iter().all(|&x| x == 0))
    }

    pub fn same_class(&self, a: &Cochain, b: &Cochain) -> Result<bool> {
        Ok(self.class_coordinates(a)? == self.class_coordinates(b)?)
    }

    /// A representative of `Σ coords[i]·generators[i]`.
    pub fn representative(&self, coords: &[i64]) -> Result<Cochain> {
        let mut out = vec![0i64; COCHAIN_DIMS[self.degree]];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (o, &x) in out.iter_mut().zip(&g.coords) {
                *o = o.checked_add(checked_mul(c, x)?).ok_or(Error::Overflow)?;
            }
        }
        Cochain::new(self.degree, out, self.ring)
    }

    /// Order of the class with the given coordinates; 0 means infinite.
    pub fn order_of(&self, coords: &[i64]) -> i64 {
        let mut order = 1i64;
        for (&x, &d) in self.reduce_class(coords).iter().zip(&self.invariant_factors) {
            if x == 0 {
                continue;
            }
            if d == 0 {
                return 0;
            }
            let o = d / gcd(x, d);
            order = order / gcd(order, o) * o;
        }
        order
    }

    /// Whether the classes of the given vectors generate the whole group.
    pub fn spans(&self, classes: &[Vec<i64>]) -> Result<bool> {
        let s = self.len();
        if s == 0 {
            return Ok(true);
        }
        // Columns: the vectors, then the relations d_i e_i.
        let mut rows = vec![Vec::with_capacity(classes.len() + s); s];
        for (i, row) in rows.iter_mut().enumerate() {
            for c in classes {
                row.push(c[i]);
            }
            for j in 0..s {
                row.push(if i == j { self.invariant_factors[i] } else { 0 });
            }
        }
        let snf = smith_form(&Matrix::from_rows(&rows), self.ring)?;
        Ok(snf.rank == s && snf.diagonal().iter().all(|&d| d == 1))
    }

    /// Replaces the generators by `new`, which must form a basis.
    ///
    /// Only supported when all invariant factors agree, which covers every
    /// group where named generators are prescribed (`H^0`, `H^1`, `H^3`).
    pub fn rebase(&self, new: Vec<Cochain>) -> Result<Self> {
        let s = self.len();
        if new.len() != s {
            return Err(Error::PresentationMismatch(format!(
                "rebase of H^{} needs {s} generators, got {}",
                self.degree,
                new.len()
            )));
        }
        if s == 0 {
            return Ok(self.clone());
        }
        let d = self.invariant_factors[0];
        if self.invariant_factors.iter().any(|&x| x != d) {
            return Err(Error::PresentationMismatch(format!(
                "rebase of H^{} with mixed invariant factors",
                self.degree
            )));
        }
        let mut cols = Vec::with_capacity(s);
        for g in &new {
            if !self.is_cocycle(g)? {
                return Err(Error::NotACocycle(format!("{g}")));
            }
            cols.push(self.coordinate_map.apply(&g.coords, CoefficientRing::Integers)?);
        }
        let p = Matrix::from_rows(&cols).transpose();
        let det = determinant(&p)?;
        let det_inv = if d == 0 {
            if det.abs() != 1 {
                return Err(Error::PresentationMismatch(format!(
                    "proposed generators of H^{} have determinant {det}",
                    self.degree
                )));
            }
            det
        } else {
            inv_mod(det, d).ok_or_else(|| {
                Error::PresentationMismatch(format!(
                    "proposed generators of H^{} have determinant {det}, not a unit mod {d}",
                    self.degree
                ))
            })?
        };
        // P⁻¹ = det⁻¹ · adj(P)
        let mut inv = Matrix::zeros(s, s);
        for i in 0..s {
            for j in 0..s {
                let minor: Vec<Vec<i64>> = (0..s)
                    .filter(|&r| r != j)
                    .map(|r| (0..s).filter(|&c| c != i).map(|c| p.get(r, c)).collect())
                    .collect();
                let cof = if s == 1 {
                    1
                } else {
                    determinant(&Matrix::from_rows(&minor))?
                };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let mut v = checked_mul(checked_mul(sign, cof)?, det_inv)?;
                if d != 0 {
                    v = v.rem_euclid(d);
                }
                inv.set(i, j, v);
            }
        }
        let coordinate_map = inv.mul(&self.coordinate_map, CoefficientRing::Integers)?;
        let out = Self {
            degree: self.degree,
            ring: self.ring,
            invariant_factors: self.invariant_factors.clone(),
            generators: new,
            coordinate_map,
            coboundary: self.coboundary.clone(),
        };
        for (i, g) in out.generators.iter().enumerate() {
            let want: Vec<i64> = (0..s).map(|j| i64::from(i == j)).collect();
            if out.class_coordinates(g)? != out.reduce_class(&want) {
                return Err(Error::PresentationMismatch(format!(
                    "rebased generator {g} of H^{} is not dual to its coordinate",
                    self.degree
                )));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| match (self.ring, d) {
                (CoefficientRing::Integers, 0) => "Z".to_string(),
                (_, d) => format!("Z{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(δ^0, δ^1, δ^2)`: the augmentation of `∂1, ∂2, ∂3` entrywise, reduced
/// into the ring. Shapes are 3×1, 3×3 and 1×3.
pub fn dual_matrices(res: &Resolution, ring: CoefficientRing) -> Result<[Matrix; 3]> {
    fn eps<const R: usize, const C: usize>(
        m: &[[GroupRingElement; C]; R],
        ring: CoefficientRing,
    ) -> Result<Matrix> {
        let mut rows = Vec::with_capacity(R);
        for row in m {
            let mut r = Vec::with_capacity(C);
            for x in row {
                r.push(ring.reduce(x.augmentation()?));
            }
            rows.push(r);
        }
        Ok(Matrix::from_rows(&rows))
    }
    Ok([eps(&res.d1, ring)?, eps(&res.d2, ring)?, eps(&res.d3, ring)?])
}

/// `H^0, …, H^3` over one coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cohomology {
    pub ring: CoefficientRing,
    pub groups: [AbelianGroupPresentation; 4],
}

impl Cohomology {
    pub fn group(&self, k: usize) -> Option<&AbelianGroupPresentation> {
        self.groups.get(k)
    }
}

/// `δ^k` for `k = -1, …, 3`, indexed by `k + 1`.
fn coboundaries(duals: &[Matrix; 3]) -> [Matrix; 5] {
    [
        Matrix::zeros(1, 0),
        duals[0].clone(),
        duals[1].clone(),
        duals[2].clone(),
        Matrix::zeros(0, 1),
    ]
}

fn group_in_degree(
    k: usize,
    incoming: &Matrix,
    outgoing: &Matrix,
    ring: CoefficientRing,
) -> Result<AbelianGroupPresentation> {
    let snf = smith_form(outgoing, ring)?;
    let kernel = snf.v.cols_from(snf.rank);
    let kernel_inv = snf.v_inv.rows_from(snf.rank);
    let x = kernel_inv.mul(incoming, ring)?;
    if kernel.mul(&x, ring)? != incoming.reduced(ring) {
        return Err(Error::ChainComplexViolation(format!(
            "image of δ^{} is not contained in ker δ^{k}",
            k as i64 - 1
        )));
    }
    let snf2 = smith_form(&x, ring)?;
    let diag = snf2.diagonal();
    let z = kernel.cols();
    let basis = kernel.mul(&snf2.u_inv, ring)?;
    let to_coords = snf2.u.mul(&kernel_inv, ring)?;

    let mut factors = Vec::new();
    let mut gens = Vec::new();
    let mut map_rows = Vec::new();
    for i in 0..z {
        let d = diag.get(i).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        factors.push(match ring {
            CoefficientRing::Integers => d,
            CoefficientRing::ModP { p } => p,
        });
        gens.push(Cochain::new(k, basis.column(i), ring)?);
        map_rows.push(to_coords.row(i));
    }
    Ok(AbelianGroupPresentation {
        degree: k,
        ring,
        invariant_factors: factors,
        generators: gens,
        coordinate_map: Matrix::from_rows_with_cols(&map_rows, COCHAIN_DIMS[k]),
        coboundary: outgoing.reduced(ring),
    })
}

/// Generators of `H^1` prescribed by the case analysis of `I - θ⁻¹`.
fn h1_recipe(theta: &GluingMatrix, ring: CoefficientRing) -> Result<Vec<Cochain>> {
    let (m1, n1, m2, n2) = theta.quadruple();
    let rank = match ring {
        CoefficientRing::Integers => theta.rank_minus_identity(),
        CoefficientRing::ModP { p } => theta.rank_minus_identity_mod(p),
    };
    let y = |i| Cochain::basis(1, i, ring);
    Ok(match rank {
        0 => vec![y(0), y(1), y(2)],
        1 => {
            let u = match ring {
                CoefficientRing::Integers => {
                    if 1 + m1 == 0 && n1 == 0 {
                        let g = gcd(m2, 1 + n2);
                        vec![-(1 + n2) / g, m2 / g, 0]
                    } else {
                        let g = gcd(1 + m1, n1);
                        vec![-n1 / g, (1 + m1) / g, 0]
                    }
                }
                CoefficientRing::ModP { p } => {
                    if (1 + m1).rem_euclid(p) == 0 && n1.rem_euclid(p) == 0 {
                        vec![1 + n2, -m2, 0]
                    } else {
                        vec![-n1, 1 + m1, 0]
                    }
                }
            };
            vec![Cochain::new(1, u, ring)?, y(2)]
        }
        _ => vec![y(2)],
    })
}

pub fn cohomology_from_resolution(res: &Resolution, ring: CoefficientRing) -> Result<Cohomology> {
    let d = coboundaries(&dual_matrices(res, ring)?);
    let mut groups = Vec::with_capacity(4);
    for k in 0..4 {
        groups.push(group_in_degree(k, &d[k], &d[k + 1], ring)?);
    }
    let h0 = groups[0].rebase(vec![Cochain::basis(0, 0, ring)])?;
    let h1 = groups[1].rebase(h1_recipe(&res.theta, ring)?)?;
    let h3 = if groups[3].is_trivial() {
        groups[3].clone()
    } else {
        groups[3].rebase(vec![Cochain::basis(3, 0, ring)])?
    };
    let h2 = groups.swap_remove(2);
    Ok(Cohomology {
        ring,
        groups: [h0, h1, h2, h3],
    })
}

pub fn cohomology_groups(theta: &GluingMatrix, ring: CoefficientRing) -> Result<Cohomology> {
    cohomology_from_resolution(&build_resolution(theta)?, ring)
}
