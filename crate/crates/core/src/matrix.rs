use crate::error::MatrixError;
use crate::ring::{EuclideanRing, Ring};

/// Dense row-major matrix over the elements of some ring.
///
/// The ring itself is passed to every arithmetic method so that elements of
/// quadratic rings do not need to carry `d` around.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(MatrixError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// `rows x cols` matrix with `diag` on the main diagonal.
    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize, diag: &[E]) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for (i, v) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, v.clone());
        }
        m
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

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &i in row_idx {
            for &j in col_idx {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: row_idx.len(),
            cols: col_idx.len(),
            entries,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn is_symmetric(&self) -> bool
    where
        E: PartialEq,
    {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if ring.is_zero(a) {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(a, other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `row[target] += c * row[source]`
    pub fn add_row_multiple<R: Ring<Elem = E>>(
        &mut self,
        ring: &R,
        target: usize,
        source: usize,
        c: &E,
    ) {
        for j in 0..self.cols {
            let v = ring.add(self.get(target, j), &ring.mul(c, self.get(source, j)));
            self.set(target, j, v);
        }
    }

    /// `col[target] += c * col[source]`
    pub fn add_col_multiple<R: Ring<Elem = E>>(
        &mut self,
        ring: &R,
        target: usize,
        source: usize,
        c: &E,
    ) {
        for i in 0..self.rows {
            let v = ring.add(self.get(i, target), &ring.mul(c, self.get(i, source)));
            self.set(i, target, v);
        }
    }

    pub fn scale_row<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, c: &E) {
        for j in 0..self.cols {
            let v = ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    pub fn scale_col<R: Ring<Elem = E>>(&mut self, ring: &R, j: usize, c: &E) {
        for i in 0..self.rows {
            let v = ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
) -> Result<R::Elem, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(a.get(k, k)) {
            let Some(p) = (k + 1..n).find(|&i| !ring.is_zero(a.get(i, k))) else {
                return Ok(ring.zero());
            };
            a.swap_rows(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(a.get(k, k), a.get(i, j)),
                    &ring.mul(a.get(i, k), a.get(k, j)),
                );
                let v = ring
                    .exact_div(&num, &prev)
                    .expect("Bareiss quotients are exact in an integral domain");
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { ring.neg(&det) } else { det })
}
