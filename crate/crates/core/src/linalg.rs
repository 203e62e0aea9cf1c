//! Exact rational linear algebra: solving, rank, signature, Schur complements.
//!
//! Everything here works over `BigRational`. Matrices are small (tens of rows at
//! most) so dense row-vector storage is plenty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Q x = r has no rational solution")]
    NotSolvable,
    #[error("leading block is singular")]
    SingularBlock,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Matrix::from_rows(&rows)
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan. `None` when singular (or not square).
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let x = &f * &a[(col, j)];
                    a[(r, j)] -= x;
                    let y = &f * &inv[(col, j)];
                    inv[(r, j)] -= y;
                }
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap_rows(col, piv);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for j in col..n {
                    let x = &f * &a[(col, j)];
                    a[(r, j)] -= x;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(fmt_rat).collect();
            write!(f, "({})", row.join(", "))?;
        }
        write!(f, ")")
    }
}

/// Square symmetric rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    pub fn new(m: Matrix) -> Result<Self, LinalgError> {
        if m.rows != m.cols {
            return Err(LinalgError::DimensionMismatch { expected: m.rows, got: m.cols });
        }
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if m[(i, j)] != m[(j, i)] {
                    return Err(LinalgError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        SymMatrix::new(Matrix::from_int_rows(rows)?)
    }

    pub fn empty() -> Self {
        SymMatrix(Matrix::zeros(0, 0))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.0[(i, j)]
    }

    /// `Pᵀ Q P`.
    pub fn congruence(&self, p: &Matrix) -> Result<SymMatrix, LinalgError> {
        let m = p.transpose().mul(&self.0)?.mul(p)?;
        SymMatrix::new(m)
    }

    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix(self.0.select(idx, idx))
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub solvable: bool,
    pub witness: Option<Vec<Rational>>,
}

/// Reduced row echelon form in place. Returns pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(piv) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, piv);
        let p = m[(row, col)].clone();
        for j in col..m.cols {
            m[(row, j)] /= &p;
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let f = m[(r, col)].clone();
            for j in col..m.cols {
                let x = &f * &m[(row, j)];
                m[(r, j)] -= x;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `Q x = r`. The witness sets every free variable to zero.
pub fn solve(q: &SymMatrix, r: &[Rational]) -> Result<SolveResult, LinalgError> {
    let n = q.dim();
    if r.len() != n {
        return Err(LinalgError::DimensionMismatch { expected: n, got: r.len() });
    }
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = q.get(i, j).clone();
        }
        aug[(i, n)] = r[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return Ok(SolveResult { solvable: false, witness: None });
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[(row, n)].clone();
    }
    Ok(SolveResult { solvable: true, witness: Some(x) })
}

/// A basis of `ker M` (right kernel).
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// `xᵀ r` for any solution of `Q x = r`.
pub fn quadratic_value(q: &SymMatrix, r: &[Rational]) -> Result<Rational, LinalgError> {
    let res = solve(q, r)?;
    let x = res.witness.ok_or(LinalgError::NotSolvable)?;
    Ok(dot(&x, r))
}

/// Rank by fraction-free (Bareiss) elimination on a row-scaled integer copy.
pub fn rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let v = &a[rank][col] * &a[r][j] - &a[r][col] * &a[rank][j];
                a[r][j] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Signature by symmetric congruence diagonalization.
///
/// A nonzero diagonal entry is used as a 1x1 pivot. If the remaining diagonal
/// is all zero but some off-diagonal entry is not, that pair spans a hyperbolic
/// plane: it contributes 0 and is eliminated as a 2x2 block.
pub fn signature(q: &SymMatrix) -> i64 {
    let mut a = q.matrix().clone();
    let mut alive: Vec<usize> = (0..a.rows).collect();
    let mut sig = 0i64;
    while !alive.is_empty() {
        if let Some(pos) = alive.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = alive.remove(pos);
            let d = a[(p, p)].clone();
            sig += if d.is_positive() { 1 } else { -1 };
            for &i in &alive {
                if a[(i, p)].is_zero() {
                    continue;
                }
                let f = &a[(i, p)] / &d;
                for &j in &alive {
                    let x = &f * &a[(p, j)];
                    a[(i, j)] -= x;
                }
            }
            continue;
        }
        let pair = alive.iter().enumerate().find_map(|(k, &i)| {
            alive[k + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
        });
        let Some((u, v)) = pair else { break };
        alive.retain(|&x| x != u && x != v);
        // block [[0, b], [b, 0]] has inverse [[0, 1/b], [1/b, 0]]
        let b = a[(u, v)].clone();
        let snapshot = a.clone();
        for &i in &alive {
            for &j in &alive {
                let x = (&snapshot[(i, u)] * &snapshot[(v, j)] + &snapshot[(i, v)] * &snapshot[(u, j)]) / &b;
                a[(i, j)] -= x;
            }
        }
    }
    sig
}

/// Schur complement `C - B A⁻¹ Bᵀ` of the leading `k x k` block.
pub fn schur_complement(q: &SymMatrix, k: usize) -> Result<SymMatrix, LinalgError> {
    let n = q.dim();
    if k > n {
        return Err(LinalgError::DimensionMismatch { expected: n, got: k });
    }
    let head: Vec<usize> = (0..k).collect();
    let tail: Vec<usize> = (k..n).collect();
    let a_inv = q.matrix().select(&head, &head).inverse().ok_or(LinalgError::SingularBlock)?;
    let b = q.matrix().select(&tail, &head);
    let c = q.matrix().select(&tail, &tail);
    let corr = b.mul(&a_inv)?.mul(&b.transpose())?;
    SymMatrix::new(c.sub(&corr)?)
}
