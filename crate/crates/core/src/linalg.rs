//! Dense matrices and Smith normal form over `Z` and `Z/p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::{checked_add, checked_mul, checked_sub, inv_mod, is_prime};

/// Trivial coefficient module: the integers or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientRing {
    Integers,
    ModP { p: i64 },
}

impl CoefficientRing {
    pub fn mod_p(p: i64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::ModP { p })
        } else {
            Err(Error::InvalidPrime { p })
        }
    }

    pub fn characteristic(&self) -> i64 {
        match self {
            CoefficientRing::Integers => 0,
            CoefficientRing::ModP { p } => *p,
        }
    }

    pub fn reduce(&self, x: i64) -> i64 {
        match self {
            CoefficientRing::Integers => x,
            CoefficientRing::ModP { p } => x.rem_euclid(*p),
        }
    }

    /// Size used for pivot selection; every nonzero residue counts as 1.
    fn norm(&self, x: i64) -> u64 {
        match self {
            CoefficientRing::Integers => x.unsigned_abs(),
            CoefficientRing::ModP { .. } => u64::from(x != 0),
        }
    }

    /// `q` with `x - q·d` as small as the ring allows (zero over a field).
    fn quotient(&self, x: i64, d: i64) -> i64 {
        match self {
            CoefficientRing::Integers => x.div_euclid(d),
            CoefficientRing::ModP { p } => {
                let inv = inv_mod(d, *p).expect("nonzero residue is invertible");
                ((x as i128 * inv as i128).rem_euclid(*p as i128)) as i64
            }
        }
    }

    /// A unit `s` with `s·x` in normal form (nonnegative, or 1 over a field).
    fn normalizing_unit(&self, x: i64) -> i64 {
        match self {
            CoefficientRing::Integers => {
                if x < 0 {
                    -1
                } else {
                    1
                }
            }
            CoefficientRing::ModP { p } => inv_mod(x, *p).unwrap_or(1),
        }
    }

    /// Whether `d` divides `x` in the ring; `d` is nonzero.
    fn divides(&self, d: i64, x: i64) -> bool {
        match self {
            CoefficientRing::Integers => x % d == 0,
            CoefficientRing::ModP { .. } => true,
        }
    }

    fn unit_inverse(&self, s: i64) -> i64 {
        match self {
            CoefficientRing::Integers => s,
            CoefficientRing::ModP { p } => inv_mod(s, *p).expect("unit"),
        }
    }

    fn add(&self, a: i64, b: i64) -> Result<i64> {
        Ok(self.reduce(checked_add(a, b)?))
    }

    fn mul(&self, a: i64, b: i64) -> Result<i64> {
        match self {
            CoefficientRing::Integers => checked_mul(a, b),
            CoefficientRing::ModP { p } => {
                Ok(((a as i128 * b as i128).rem_euclid(*p as i128)) as i64)
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::ModP { p } => write!(f, "Z{p}"),
        }
    }
}

/// Row-major dense integer matrix. Zero rows or columns are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix");
            data.extend_from_slice(r.as_ref());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// A matrix with a fixed column count, for cases where there may be no rows.
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        if rows.is_empty() {
            Self::zeros(0, cols)
        } else {
            Self::from_rows(rows)
        }
    }

    pub fn column_vector(v: &[i64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Rows `from..` as a new matrix.
    pub fn rows_from(&self, from: usize) -> Self {
        let rows: Vec<Vec<i64>> = (from..self.rows).map(|i| self.row(i)).collect();
        Self::from_rows_with_cols(&rows, self.cols)
    }

    /// Columns `from..` as a new matrix.
    pub fn cols_from(&self, from: usize) -> Self {
        self.transpose().rows_from(from).transpose()
    }

    /// Entries reduced into the ring.
    pub fn reduced(&self, ring: CoefficientRing) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ring.reduce(x)).collect(),
        }
    }

    /// Product over the ring; entries of the result are reduced.
    pub fn mul(&self, other: &Matrix, ring: CoefficientRing) -> Result<Matrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = ring.add(acc, ring.mul(self.get(i, k), other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `self · v` for a plain vector.
    pub fn apply(&self, v: &[i64], ring: CoefficientRing) -> Result<Vec<i64>> {
        Ok(self.mul(&Matrix::column_vector(v), ring)?.column(0))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: i64, ring: CoefficientRing) -> Result<()> {
        for j in 0..self.cols {
            let v = ring.add(self.get(dst, j), ring.mul(c, self.get(src, j))?)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] += c · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: i64, ring: CoefficientRing) -> Result<()> {
        for i in 0..self.rows {
            let v = ring.add(self.get(i, dst), ring.mul(c, self.get(i, src))?)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    fn scale_row(&mut self, i: usize, s: i64, ring: CoefficientRing) -> Result<()> {
        for j in 0..self.cols {
            let v = ring.mul(s, self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    fn scale_col(&mut self, j: usize, s: i64, ring: CoefficientRing) -> Result<()> {
        for i in 0..self.rows {
            let v = ring.mul(s, self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `U · M · V = D` with `U`, `V` invertible over the ring and `D` diagonal.
///
/// The inverses are tracked alongside so kernels and images can be pulled
/// back without a second elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub ring: CoefficientRing,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d_0, …, d_{min(r,c)-1}`.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }
}

struct Work {
    ring: CoefficientRing,
    d: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[dst] += c·row[src]` on `D` and `U`; `U⁻¹` picks up `col[src] -= c·col[dst]`.
    fn add_row(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        let ring = self.ring;
        let neg = ring.reduce(c.checked_neg().ok_or(Error::Overflow)?);
        self.d.add_row(dst, src, c, ring)?;
        self.u.add_row(dst, src, c, ring)?;
        self.u_inv.add_col(src, dst, neg, ring)
    }

    /// `col[dst] += c·col[src]` on `D` and `V`; `V⁻¹` picks up `row[src] -= c·row[dst]`.
    fn add_col(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        let ring = self.ring;
        let neg = ring.reduce(c.checked_neg().ok_or(Error::Overflow)?);
        self.d.add_col(dst, src, c, ring)?;
        self.v.add_col(dst, src, c, ring)?;
        self.v_inv.add_row(src, dst, neg, ring)
    }

    fn scale_row(&mut self, i: usize, s: i64) -> Result<()> {
        let ring = self.ring;
        let s_inv = ring.unit_inverse(s);
        self.d.scale_row(i, s, ring)?;
        self.u.scale_row(i, s, ring)?;
        self.u_inv.scale_col(i, s_inv, ring)
    }

    /// Smallest nonzero entry in the trailing block starting at `(t, t)`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d.get(i, j);
                if x != 0 {
                    let n = self.ring.norm(x);
                    if best.map_or(true, |(b, _, _)| n < b) {
                        best = Some((n, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form over `ring`, pivoting on the entry of least absolute
/// value. Diagonal entries are nonnegative over `Z` (each divides the next)
/// and equal to 0 or 1 over `Z/p`.
pub fn smith_form(m: &Matrix, ring: CoefficientRing) -> Result<SmithForm> {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        ring,
        d: m.reduced(ring),
        u: Matrix::identity(r),
        u_inv: Matrix::identity(r),
        v: Matrix::identity(c),
        v_inv: Matrix::identity(c),
    };
    let mut rank = 0;
    for t in 0..r.min(c) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let piv = w.d.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let x = w.d.get(i, t);
                if x != 0 {
                    let q = ring.quotient(x, piv);
                    w.add_row(i, t, ring.reduce(-q))?;
                    clean &= w.d.get(i, t) == 0;
                }
            }
            for j in t + 1..c {
                let x = w.d.get(t, j);
                if x != 0 {
                    let q = ring.quotient(x, piv);
                    w.add_col(j, t, ring.reduce(-q))?;
                    clean &= w.d.get(t, j) == 0;
                }
            }
            if clean {
                // Divisibility: pull an offending row into row t and retry.
                let offender = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !ring.divides(piv, w.d.get(i, j)));
                match offender {
                    None => break,
                    Some((i, _)) => w.add_row(t, i, 1)?,
                }
            }
            // A smaller remainder appeared somewhere in row/column t: re-pivot.
            if let Some((pi, pj)) = w.pivot_in_cross(t) {
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
            }
        }
        let s = ring.normalizing_unit(w.d.get(t, t));
        if s != 1 {
            w.scale_row(t, s)?;
        }
        rank += 1;
    }
    Ok(SmithForm {
        ring,
        u: w.u,
        u_inv: w.u_inv,
        d: w.d,
        v: w.v,
        v_inv: w.v_inv,
        rank,
    })
}

impl Work {
    /// Smallest nonzero entry of row `t` or column `t` at or beyond the diagonal.
    fn pivot_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best = (self.ring.norm(self.d.get(t, t)), t, t);
        if best.0 == 0 {
            best.0 = u64::MAX;
        }
        for i in t + 1..self.d.rows() {
            let x = self.d.get(i, t);
            if x != 0 && self.ring.norm(x) < best.0 {
                best = (self.ring.norm(x), i, t);
            }
        }
        for j in t + 1..self.d.cols() {
            let x = self.d.get(t, j);
            if x != 0 && self.ring.norm(x) < best.0 {
                best = (self.ring.norm(x), t, j);
            }
        }
        (best.0 != u64::MAX).then_some((best.1, best.2))
    }
}

/// Smith normal form over the integers, returned as `(U, D, V)`.
pub fn smith_normal_form(m: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
    let s = smith_form(m, CoefficientRing::Integers)?;
    Ok((s.u, s.d, s.v))
}

/// Determinant of a square integer matrix by cofactor expansion (small sizes only).
pub fn determinant(m: &Matrix) -> Result<i64> {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return Ok(1);
    }
    if n == 1 {
        return Ok(m.get(0, 0));
    }
    let mut acc = 0i64;
    for j in 0..n {
        if m.get(0, j) == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = (1..n)
            .map(|i| (0..n).filter(|&k| k != j).map(|k| m.get(i, k)).collect())
            .collect();
        let term = checked_mul(m.get(0, j), determinant(&Matrix::from_rows(&minor))?)?;
        acc = if j % 2 == 0 {
            checked_add(acc, term)?
        } else {
            checked_sub(acc, term)?
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn check(m: &Matrix, ring: CoefficientRing) -> SmithForm {
        let s = smith_form(m, ring).unwrap();
        assert_eq!(s.u.mul(&m.reduced(ring), ring).unwrap().mul(&s.v, ring).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv, ring).unwrap(), Matrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv, ring).unwrap(), Matrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        s
    }

    #[test]
    fn identity_form() {
        let s = check(&Matrix::identity(2), Z);
        assert_eq!(s.diagonal(), vec![1, 1]);
    }

    #[test]
    fn two_four_six_eight() {
        let s = check(&Matrix::from_rows(&[[2, 4], [6, 8]]), Z);
        assert_eq!(s.diagonal(), vec![2, 4]);
    }

    #[test]
    fn unit_determinant() {
        let s = check(&Matrix::from_rows(&[[0, 1], [1, -1]]), Z);
        assert_eq!(s.diagonal(), vec![1, 1]);
    }

    #[test]
    fn divisibility_is_enforced() {
        let s = check(&Matrix::from_rows(&[[2, 0], [0, 3]]), Z);
        assert_eq!(s.diagonal(), vec![1, 6]);
        let s = check(&Matrix::from_rows(&[[4, 0, 0], [0, 6, 0], [0, 0, 0]]), Z);
        assert_eq!(s.diagonal(), vec![2, 12, 0]);
    }

    #[test]
    fn empty_shapes() {
        let s = check(&Matrix::zeros(0, 3), Z);
        assert_eq!(s.rank, 0);
        assert_eq!(s.v, Matrix::identity(3));
        let s = check(&Matrix::zeros(1, 3), Z);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn over_prime_field() {
        let f3 = CoefficientRing::mod_p(3).unwrap();
        let s = check(&Matrix::from_rows(&[[2, 4], [6, 8]]), f3);
        // [[2,1],[0,2]] mod 3 is invertible
        assert_eq!(s.diagonal(), vec![1, 1]);
        let f2 = CoefficientRing::mod_p(2).unwrap();
        let s = check(&Matrix::from_rows(&[[2, 4], [6, 8]]), f2);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(CoefficientRing::mod_p(9), Err(Error::InvalidPrime { p: 9 }));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&Matrix::from_rows(&[[2, 1], [1, 1]])).unwrap(), 1);
        assert_eq!(
            determinant(&Matrix::from_rows(&[[1, 2, 0], [0, 1, 0], [3, 0, -1]])).unwrap(),
            -1
        );
    }
}
