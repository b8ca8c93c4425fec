//! Smith normal form over a Euclidean ring, with unimodular transforms.

use itertools::Itertools;

use crate::error::MatrixError;
use crate::matrix::{determinant, Matrix};
use crate::par::{map_range, Execution};
use crate::ring::{are_associated, gcd_or_zero, EuclideanRing};

/// `M = P * D * Q` with `D = diag(d_1, ..., d_r, 0, ..., 0)` and `d_k | d_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult<E> {
    pub p: Matrix<E>,
    pub d: Matrix<E>,
    pub q: Matrix<E>,
    /// Nonzero diagonal entries, canonicalized.
    pub diagonals: Vec<E>,
}

impl<E> SnfResult<E> {
    pub fn rank(&self) -> usize {
        self.diagonals.len()
    }
}

/// Generators of the minor ideals: entry `k-1` is the gcd of all `k x k` minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorGcdProfile<E> {
    pub per_order: Vec<E>,
}

/// Largest dimension accepted by the minor enumeration oracle.
pub const MINOR_SIZE_LIMIT: usize = 6;

pub fn smith_normal_form<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
) -> Result<SnfResult<R::Elem>, MatrixError> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    // Row ops on `a` are undone on the columns of `p`, column ops on the rows of `q`.
    let mut p = Matrix::identity(ring, rows);
    let mut q = Matrix::identity(ring, cols);
    let mut diagonals = Vec::new();

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = smallest_entry(ring, &a, t) {
            a.swap_rows(t, pi);
            p.swap_cols(t, pi);
            a.swap_cols(t, pj);
            q.swap_rows(t, pj);

            let pivot = a.get(t, t).clone();
            let mut leftover = false;
            for i in t + 1..rows {
                if ring.is_zero(a.get(i, t)) {
                    continue;
                }
                let div = ring.div_rem(a.get(i, t), &pivot)?;
                a.add_row_multiple(ring, i, t, &ring.neg(&div.quotient));
                p.add_col_multiple(ring, t, i, &div.quotient);
                leftover |= !ring.is_zero(&div.remainder);
            }
            for j in t + 1..cols {
                if ring.is_zero(a.get(t, j)) {
                    continue;
                }
                let div = ring.div_rem(a.get(t, j), &pivot)?;
                a.add_col_multiple(ring, j, t, &ring.neg(&div.quotient));
                q.add_row_multiple(ring, t, j, &div.quotient);
                leftover |= !ring.is_zero(&div.remainder);
            }
            if leftover {
                continue;
            }
            // The pivot must divide the rest of the block; otherwise pull an
            // offending row up so the next pass leaves a smaller remainder.
            let offending = (t + 1..rows)
                .cartesian_product(t + 1..cols)
                .find(|&(i, j)| !ring.divides(&pivot, a.get(i, j)));
            match offending {
                Some((i, _)) => {
                    let one = ring.one();
                    a.add_row_multiple(ring, t, i, &one);
                    p.add_col_multiple(ring, i, t, &ring.neg(&one));
                }
                None => break,
            }
        }
        if ring.is_zero(a.get(t, t)) {
            break;
        }
        let (canon, unit) = ring.normalize(a.get(t, t));
        if !ring.is_one(&unit) {
            let inv = ring
                .unit_inverse(&unit)
                .expect("normalizing factor is a unit");
            a.scale_row(ring, t, &unit);
            p.scale_col(ring, t, &inv);
        }
        diagonals.push(canon);
    }

    Ok(SnfResult {
        p,
        d: a,
        q,
        diagonals,
    })
}

fn smallest_entry<R: EuclideanRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    t: usize,
) -> Option<(usize, usize)> {
    (t..a.rows())
        .cartesian_product(t..a.cols())
        .filter(|&(i, j)| !ring.is_zero(a.get(i, j)))
        .min_by_key(|&(i, j)| {
            let e = a.get(i, j);
            (ring.euclidean_size(e), ring.pivot_cost(e))
        })
}

/// gcd of all `k x k` minors for each `k`, by explicit enumeration.
pub fn minor_gcd_profile<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
) -> Result<MinorGcdProfile<R::Elem>, MatrixError> {
    minor_gcd_profile_with(ring, m, Execution::default())
}

pub fn minor_gcd_profile_with<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
    exec: Execution,
) -> Result<MinorGcdProfile<R::Elem>, MatrixError> {
    let size = m.rows().max(m.cols());
    if size > MINOR_SIZE_LIMIT {
        return Err(MatrixError::SizeLimit {
            what: "minor enumeration",
            size,
            limit: MINOR_SIZE_LIMIT,
        });
    }
    let mut per_order = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = (0..m.rows())
            .combinations(k)
            .cartesian_product((0..m.cols()).combinations(k).collect::<Vec<_>>())
            .collect();
        let minors = map_range(exec, pairs.len(), |i| {
            let (r, c) = &pairs[i];
            determinant(ring, &m.submatrix(r, c))
        });
        let mut g = ring.zero();
        for minor in minors {
            g = gcd_or_zero(ring, &g, &minor?);
        }
        per_order.push(g);
    }
    Ok(MinorGcdProfile { per_order })
}

/// Outcome of [`verify_snf`]: `ok` plus one line per failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfCheck {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Checks `M = P*D*Q`, unit determinants, diagonal shape, the divisibility
/// chain, and `d_1 ... d_k ~ gcd of k-minors` for every `k`.
pub fn verify_snf<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
    s: &SnfResult<R::Elem>,
) -> Result<SnfCheck, MatrixError> {
    let (rows, cols) = (m.rows(), m.cols());
    if s.p.rows() != rows
        || s.p.cols() != rows
        || s.d.rows() != rows
        || s.d.cols() != cols
        || s.q.rows() != cols
        || s.q.cols() != cols
    {
        return Err(MatrixError::ShapeMismatch(format!(
            "transforms do not fit a {rows}x{cols} matrix"
        )));
    }
    let mut diagnostics = Vec::new();

    if s.p.mul(ring, &s.d)?.mul(ring, &s.q)? != *m {
        diagnostics.push("P*D*Q does not reproduce M".to_string());
    }
    if !ring.is_unit(&determinant(ring, &s.p)?) {
        diagnostics.push("det(P) is not a unit".to_string());
    }
    if !ring.is_unit(&determinant(ring, &s.q)?) {
        diagnostics.push("det(Q) is not a unit".to_string());
    }

    let off_diagonal = (0..rows)
        .cartesian_product(0..cols)
        .any(|(i, j)| i != j && !ring.is_zero(s.d.get(i, j)));
    if off_diagonal {
        diagnostics.push("D has nonzero off-diagonal entries".to_string());
    }
    let diag: Vec<R::Elem> = (0..rows.min(cols)).map(|i| s.d.get(i, i).clone()).collect();
    let rank = diag.iter().take_while(|e| !ring.is_zero(e)).count();
    if diag[rank..].iter().any(|e| !ring.is_zero(e)) {
        diagnostics.push("zero diagonal entries are not trailing".to_string());
    }
    if diag[..rank] != s.diagonals[..] {
        diagnostics.push("listed diagonals differ from D".to_string());
    }
    for (k, w) in s.diagonals.windows(2).enumerate() {
        if !ring.divides(&w[0], &w[1]) {
            diagnostics.push(format!("d_{} does not divide d_{}", k + 1, k + 2));
        }
    }

    let profile = minor_gcd_profile(ring, m)?;
    let mut prefix = ring.one();
    for (k, g) in profile.per_order.iter().enumerate() {
        let expected = if k < rank {
            prefix = ring.mul(&prefix, &diag[k]);
            prefix.clone()
        } else {
            ring.zero()
        };
        if !are_associated(ring, &expected, g) {
            diagnostics.push(format!(
                "d_1...d_{} is not associated to the gcd of the {}-minors",
                k + 1,
                k + 1
            ));
        }
    }

    Ok(SnfCheck {
        ok: diagnostics.is_empty(),
        diagnostics,
    })
}
