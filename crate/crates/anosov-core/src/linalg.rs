//! Exact integer matrix algebra: arbitrary-precision matrices, determinants,
//! powers, Smith normal form and cokernels.
//!
//! Everything downstream (torus dynamics, suspension homology, surgery
//! presentations) reduces to the routines in this module, so they are kept
//! deliberately simple and fully exact: no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMat { rows, cols, entries })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMat) -> Result<IntMat> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs_ik = &self[(i, k)];
                if lhs_ik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = lhs_ik * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &IntMat) -> Result<IntMat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("shape mismatch in add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMat { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, rhs: &IntMat) -> Result<IntMat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("shape mismatch in sub".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMat { rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if at(&a, k, k).is_zero() {
                match (k + 1..n).find(|&i| !at(&a, i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &at(&a, k, k) * &at(&a, i, j) - &at(&a, i, k) * &at(&a, k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i * n + j] = q;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        let d = at(&a, n - 1, n - 1);
        Ok(if sign < 0 { -d } else { d })
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map(|d| d.abs() == BigInt::one()).unwrap_or(false)
    }

    /// Exact n-th power by repeated squaring; `pow(0)` is the identity.
    pub fn pow(&self, n: u64) -> Result<IntMat> {
        if !self.is_square() {
            return Err(Error::Shape("power of non-square matrix".into()));
        }
        let mut result = IntMat::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Inverse of a unimodular matrix (integer adjugate divided by det).
    pub fn unimodular_inverse(&self) -> Result<IntMat> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let d = self.det()?;
        if d.abs() != BigInt::one() {
            return Err(Error::Shape(format!("matrix with det {d} is not unimodular")));
        }
        if self.rows == 2 {
            let adj = IntMat::new(
                2,
                2,
                vec![
                    self[(1, 1)].clone(),
                    -self[(0, 1)].clone(),
                    -self[(1, 0)].clone(),
                    self[(0, 0)].clone(),
                ],
            )?;
            return Ok(if d.is_one() { adj } else { adj.neg() });
        }
        // General case via the SNF transforms: U M V = I  =>  M^{-1} = V U.
        let snf = snf(self);
        for i in 0..self.rows {
            if snf.d[(i, i)].abs() != BigInt::one() {
                return Err(Error::Shape("matrix is not invertible over Z".into()));
            }
        }
        // M = U^{-1} D V^{-1} with D = diag(+-1); fold the signs into V.
        let mut v = snf.v.clone();
        for j in 0..self.rows {
            if snf.d[(j, j)].is_negative() {
                for i in 0..self.rows {
                    let e = -v[(i, j)].clone();
                    v[(i, j)] = e;
                }
            }
        }
        v.mul(&snf.u)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Smith normal form data: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with the divisibility chain d1 | d2 | ...
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SnfResult {
    /// Diagonal entries, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form over Z.
///
/// Pivot choice: minimal nonzero absolute value in the trailing submatrix,
/// scanning rows before columns. The output is canonical (nonnegative
/// diagonal, divisibility chain), so the strategy only affects intermediate
/// coefficient growth.
pub fn snf(m: &IntMat) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    let swap_rows = |d: &mut IntMat, u: &mut IntMat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..cols {
            let tmp = d[(a, j)].clone();
            d[(a, j)] = d[(b, j)].clone();
            d[(b, j)] = tmp;
        }
        for j in 0..rows {
            let tmp = u[(a, j)].clone();
            u[(a, j)] = u[(b, j)].clone();
            u[(b, j)] = tmp;
        }
    };
    let swap_cols = |d: &mut IntMat, v: &mut IntMat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..rows {
            let tmp = d[(i, a)].clone();
            d[(i, a)] = d[(i, b)].clone();
            d[(i, b)] = tmp;
        }
        for i in 0..cols {
            let tmp = v[(i, a)].clone();
            v[(i, a)] = v[(i, b)].clone();
            v[(i, b)] = tmp;
        }
    };
    // row_a -= q * row_b
    let row_sub = |d: &mut IntMat, u: &mut IntMat, a: usize, b: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for j in 0..cols {
            let delta = q * &d[(b, j)];
            d[(a, j)] -= delta;
        }
        for j in 0..rows {
            let delta = q * &u[(b, j)];
            u[(a, j)] -= delta;
        }
    };
    let col_sub = |d: &mut IntMat, v: &mut IntMat, a: usize, b: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for i in 0..rows {
            let delta = q * &d[(i, b)];
            d[(i, a)] -= delta;
        }
        for i in 0..cols {
            let delta = q * &v[(i, b)];
            v[(i, a)] -= delta;
        }
    };

    let n = rows.min(cols);
    for k in 0..n {
        'pivot: loop {
            // Locate pivot: minimal nonzero |entry|, rows before columns.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d[(i, j)].abs() < d[(pi, pj)].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return finish(d, u, v), // trailing block is zero
            };
            swap_rows(&mut d, &mut u, k, pi);
            swap_cols(&mut d, &mut v, k, pj);
            if d[(k, k)].is_negative() {
                for j in 0..cols {
                    let e = -d[(k, j)].clone();
                    d[(k, j)] = e;
                }
                for j in 0..rows {
                    let e = -u[(k, j)].clone();
                    u[(k, j)] = e;
                }
            }
            // Reduce column k, then row k. The pivot is positive, so floored
            // division is Euclidean and remainders strictly shrink.
            let mut clean = true;
            for i in k + 1..rows {
                let q = d[(i, k)].div_floor(&d[(k, k)]);
                row_sub(&mut d, &mut u, i, k, &q);
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = d[(k, j)].div_floor(&d[(k, k)]);
                col_sub(&mut d, &mut v, j, k, &q);
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Divisibility fix: drag any non-multiple into row k and retry.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        let one = BigInt::from(-1);
                        row_sub(&mut d, &mut u, k, i, &one); // row_k += row_i
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    finish(d, u, v)
}

fn finish(d: IntMat, u: IntMat, v: IntMat) -> SnfResult {
    let result = SnfResult { u, d, v };
    debug_assert!(result
        .diagonal()
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())));
    result
}

/// Cokernel Z^rows / (column span of `m`), in invariant-factor normal form.
pub fn cokernel(m: &IntMat) -> AbelianGroup {
    let s = snf(m);
    let factors = s.diagonal();
    let rank = factors.iter().filter(|x| !x.is_zero()).count();
    let torsion: Vec<BigInt> = factors
        .into_iter()
        .filter(|x| !x.is_zero() && x.abs() != BigInt::one())
        .collect();
    AbelianGroup::new(m.rows() - rank, torsion)
}

/// Hyperbolic element of GL(2,Z): |det| = 1 and |trace| > 2.
///
/// This is the seed of every construction in the crate. Flow-level modules
/// additionally insist on det = +1 and trace >= 3 (`require_flow`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperbolic2 {
    mat: IntMat,
    det: BigInt,
    trace: BigInt,
}

impl Hyperbolic2 {
    pub fn new(mat: IntMat) -> Result<Self> {
        if mat.rows() != 2 || mat.cols() != 2 {
            return Err(Error::Shape("Hyperbolic2 needs a 2x2 matrix".into()));
        }
        let det = mat.det()?;
        let trace = mat.trace();
        if det.abs() != BigInt::one() || trace.abs() <= BigInt::from(2) {
            return Err(Error::NotHyperbolic { det, trace });
        }
        Ok(Hyperbolic2 { mat, det, trace })
    }

    pub fn from_i64(entries: [i64; 4]) -> Result<Self> {
        Self::new(IntMat::from_i64(2, 2, &entries)?)
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn trace(&self) -> &BigInt {
        &self.trace
    }

    /// det = +1 and trace >= 3: the standing assumption of the flow modules.
    pub fn is_flow_admissible(&self) -> bool {
        self.det.is_one() && self.trace >= BigInt::from(3)
    }

    pub fn require_flow(&self) -> Result<()> {
        if self.is_flow_admissible() {
            Ok(())
        } else {
            Err(Error::NotPositiveHyperbolic {
                det: self.det.clone(),
                trace: self.trace.clone(),
            })
        }
    }

    pub fn inverse(&self) -> Hyperbolic2 {
        let adj = IntMat::new(
            2,
            2,
            vec![
                self.mat[(1, 1)].clone(),
                -self.mat[(0, 1)].clone(),
                -self.mat[(1, 0)].clone(),
                self.mat[(0, 0)].clone(),
            ],
        )
        .expect("2x2 shape");
        let inv = if self.det.is_one() { adj } else { adj.neg() };
        Hyperbolic2::new(inv).expect("inverse of hyperbolic is hyperbolic")
    }

    /// A^n - I, the fixed-point operator at period n.
    pub fn pow_minus_identity(&self, n: u64) -> IntMat {
        let p = self.mat.pow(n).expect("square");
        p.sub(&IntMat::identity(2)).expect("shape")
    }
}

impl std::str::FromStr for Hyperbolic2 {
    type Err = Error;

    /// Parses the CLI matrix syntax `"a,b;c,d"` (spaces allowed).
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(Error::MatrixSyntax(format!(
                "expected two rows separated by ';', got {}",
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                return Err(Error::MatrixSyntax(format!(
                    "expected two comma-separated entries per row, got {:?}",
                    row.trim()
                )));
            }
            for cell in cells {
                let cell = cell.trim();
                let value: BigInt = cell
                    .parse()
                    .map_err(|_| Error::MatrixSyntax(format!("not an integer: {cell:?}")))?;
                entries.push(value);
            }
        }
        Hyperbolic2::new(IntMat::new(2, 2, entries)?)
    }
}

impl fmt::Debug for Hyperbolic2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl fmt::Display for Hyperbolic2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}
