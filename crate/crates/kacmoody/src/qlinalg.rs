//! Exact rational linear algebra: rank, kernel bases, solving.
//!
//! Rank is computed by fraction-free Bareiss elimination over the integers
//! after clearing denominators. Kernel and solve go through a reduced
//! row-echelon form with deterministic pivoting (first nonzero entry in
//! column order), so all outputs are reproducible.

use crate::rat::{normalize_primitive, to_primitive_integer, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("system has no solution")]
    NoSolution,
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| crate::rat::rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix is {}x{}, vector has length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    /// Exact rank via fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        // Clear denominators row by row; rank is unaffected.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| to_primitive_integer(self.row(i)))
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let t = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                    m[i][j] = &t / &prev;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Reduced row-echelon form. Returns (rref, pivot columns).
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = m[(r, col)].clone();
            for j in col..m.cols {
                let v = &m[(r, j)] / &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in col..m.cols {
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Basis of the right null space. Each vector is scaled to integer
    /// entries with gcd 1 and positive first nonzero entry; the basis is
    /// ordered by free column (reduced echelon order).
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let mut out = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rref[(r, free)].clone();
            }
            let prim = to_primitive_integer(&v);
            out.push(prim.into_iter().map(Rat::from_integer).collect());
        }
        out
    }

    /// One exact solution of M x = b under the echelon convention
    /// (free variables set to zero), or NoSolution.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix has {} rows, rhs has length {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rref[(r, self.cols)].clone();
        }
        Ok(x)
    }

    /// Exact inverse, or None if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(r, &c)| r != c) {
            return None;
        }
        let mut inv = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rref[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental reduced echelon form over primitive integer rows.
///
/// Rows are kept with gcd 1 and positive pivot; every insertion fully
/// reduces the new row and back-eliminates its pivot column from the rest,
/// so the row set is always in reduced form. Pivoting is on the smallest
/// column index, so callers control the complement by ordering columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_of_col: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Insert an integer row; returns true if the rank increased.
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.width);
        for col in 0..self.width {
            if row[col].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_of_col[col] {
                // The whole row must be rescaled: non-pivot columns to the
                // left of col can still be nonzero.
                let p = self.rows[r][col].clone();
                let c = row[col].clone();
                for j in 0..self.width {
                    let t = &p * &row[j] - &c * &self.rows[r][j];
                    row[j] = t;
                }
                normalize_primitive(&mut row);
            }
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        normalize_primitive(&mut row);
        if row[pc].is_negative() {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        // Back-eliminate the new pivot column from existing rows.
        let p = row[pc].clone();
        for r in 0..self.rows.len() {
            if self.rows[r][pc].is_zero() {
                continue;
            }
            let c = self.rows[r][pc].clone();
            for j in 0..self.width {
                let t = &p * &self.rows[r][j] - &c * &row[j];
                self.rows[r][j] = t;
            }
            normalize_primitive(&mut self.rows[r]);
            let rp = self.pivot_cols[r];
            if self.rows[r][rp].is_negative() {
                for x in self.rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        self.rows.push(row);
        self.pivot_cols.push(pc);
        self.pivot_of_col[pc] = Some(self.rows.len() - 1);
        true
    }

    /// Insert a rational row after clearing denominators.
    pub fn insert_rational(&mut self, row: &[Rat]) -> bool {
        self.insert_scaled(to_primitive_integer(row))
    }

    fn insert_scaled(&mut self, row: Vec<BigInt>) -> bool {
        if row.iter().all(|x| x.is_zero()) {
            return false;
        }
        self.insert(row)
    }

    /// Fully reduce a rational vector modulo the row space; the result has
    /// zeros in every pivot column.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (r, &pc) in self.pivot_cols.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let f = &v[pc] / Rat::from_integer(self.rows[r][pc].clone());
            for j in 0..self.width {
                if self.rows[r][j].is_zero() {
                    continue;
                }
                let t = &v[j] - &f * Rat::from_integer(self.rows[r][j].clone());
                v[j] = t;
            }
        }
        v
    }

    /// True if the vector lies in the row space.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}
