//! Sparse matrices and exact elimination: rank, solve, kernel, Smith form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

/// Column-compressed sparse matrix over the rationals.
///
/// Each column keeps its nonzero entries sorted by row index. Zeros are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in entries {
            if i >= rows {
                return Err(Error::ShapeMismatch {
                    what: "triplet row",
                    expected: rows,
                    found: i,
                });
            }
            if j >= cols {
                return Err(Error::ShapeMismatch {
                    what: "triplet column",
                    expected: cols,
                    found: j,
                });
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.add_to(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.cols[i].push((i, Rational::ONE));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Nonzero entries of column `j`, sorted by row.
    pub fn col(&self, j: usize) -> &[(usize, Rational)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => {
                col[k].1 += v;
                if col[k].1.is_zero() {
                    col.remove(k);
                }
            }
            Err(k) => col.insert(k, (i, v.clone())),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(k) if v.is_zero() => {
                col.remove(k);
            }
            Ok(k) => col[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => col.insert(k, (i, v)),
        }
    }

    /// Appends a column given as `(row, value)` pairs.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) {
        let j = self.cols.len();
        self.cols.push(Vec::new());
        for (i, v) in entries {
            assert!(i < self.rows, "row index out of range");
            self.add_to(i, j, &v);
        }
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::ZERO; self.ncols()]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                t.cols[*i].push((j, v.clone()));
            }
        }
        t
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.ncols() {
            return Err(Error::ShapeMismatch {
                what: "mul_vec",
                expected: self.ncols(),
                found: x.len(),
            });
        }
        let mut y = vec![Rational::ZERO; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                y[*i] += v * &x[j];
            }
        }
        Ok(y)
    }

    /// `Aᵀ y`.
    pub fn mul_vec_transpose(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        if y.len() != self.rows {
            return Err(Error::ShapeMismatch {
                what: "mul_vec_transpose",
                expected: self.rows,
                found: y.len(),
            });
        }
        Ok(self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(i, _)| !y[*i].is_zero())
                    .map(|(i, v)| v * &y[*i])
                    .sum()
            })
            .collect())
    }

    /// `A B`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols() != other.rows {
            return Err(Error::ShapeMismatch {
                what: "matrix product",
                expected: self.ncols(),
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.ncols());
        for (j, bcol) in other.cols.iter().enumerate() {
            let mut acc = vec![Rational::ZERO; self.rows];
            for (k, bv) in bcol {
                for (i, av) in &self.cols[*k] {
                    acc[*i] += av * bv;
                }
            }
            out.cols[j] = acc
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Submatrix keeping the listed columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Submatrix keeping the listed rows in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            pos[old] = new;
        }
        let mut out = Self::zeros(rows.len(), self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                if pos[*i] != usize::MAX {
                    out.cols[j].push((pos[*i], v.clone()));
                }
            }
            out.cols[j].sort_by_key(|e| e.0);
        }
        out
    }

    /// `[A | b]`.
    pub fn with_column(&self, b: &[Rational]) -> Self {
        let mut m = self.clone();
        m.push_column(b.iter().cloned().enumerate());
        m
    }
}

/// Row-reduced echelon form of a dense matrix.
///
/// Columns are scanned left to right; the pivot for a column is the lowest
/// unused row with a nonzero entry.
struct Rref {
    rows: Vec<Vec<Rational>>,
    /// `(row, col)` of each pivot, in column order.
    pivots: Vec<(usize, usize)>,
}

fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Rref {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (k, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    row[k] -= &factor * pv;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    Rref { rows, pivots }
}

pub fn rank(a: &SparseMatrix) -> usize {
    rref(a.to_dense(), a.ncols()).pivots.len()
}

/// Some exact solution of `A x = b`, or `None` if the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_linear(a: &SparseMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.nrows() {
        return Err(Error::ShapeMismatch {
            what: "solve_linear rhs",
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.ncols();
    let aug = a.with_column(b);
    let red = rref(aug.to_dense(), n + 1);
    if red.pivots.iter().any(|&(_, c)| c == n) {
        return Ok(None);
    }
    let mut x = vec![Rational::ZERO; n];
    for &(r, c) in &red.pivots {
        x[c] = red.rows[r][n].clone();
    }
    Ok(Some(x))
}

/// Exact basis of the null space of `A`, one vector per free column in
/// increasing column order.
pub fn kernel_basis(a: &SparseMatrix) -> Vec<Vec<Rational>> {
    let n = a.ncols();
    let red = rref(a.to_dense(), n);
    let mut is_pivot = vec![None; n];
    for &(r, c) in &red.pivots {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::ZERO; n];
        v[free] = Rational::ONE;
        for &(r, c) in &red.pivots {
            v[c] = -&red.rows[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix (nonzero
/// diagonal entries of its Smith normal form, all positive).
pub fn smith_normal_form(a: &SparseMatrix) -> Result<Vec<BigInt>> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = vec![vec![BigInt::zero(); n]; m];
    for (i, j, v) in a.triplets() {
        d[i][j] = v
            .to_integer()
            .ok_or(Error::NonIntegerEntry { row: i, col: j })?;
    }
    let mut factors = Vec::new();
    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        d.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                for k in t..n {
                    let s = &q * &d[t][k];
                    d[i][k] -= s;
                }
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                for row in d.iter_mut().skip(t) {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !d[t][j].is_zero() {
                    for row in d.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for k in t..n {
                        let s = d[i][k].clone();
                        d[t][k] += s;
                    }
                }
                None => break,
            }
        }
        factors.push(d[t][t].abs());
    }
    Ok(factors)
}

fn min_abs_entry(d: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.len() {
        for j in t..d[i].len() {
            if d[i][j].is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
