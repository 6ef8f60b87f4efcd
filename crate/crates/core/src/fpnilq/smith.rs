//! Smith normal form over `Z` with transformation matrices.
//!
//! Pivoting always takes the nonzero entry of least absolute value in the
//! active submatrix (first in row-major order on ties), which keeps entry
//! growth in check and makes the result a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{AbelianGroup, IntegerMatrix};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`, `d_i ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    u_inv: IntegerMatrix,
    v_inv: IntegerMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn u_inverse(&self) -> &IntegerMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntegerMatrix {
        &self.v_inv
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += q · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    /// `col[dst] += q · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` below/right of the pivot. Returns false when
    /// a nonzero remainder survived and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.add_row(i, t, &-q);
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.add_col(j, t, &-q);
            clean &= self.a[(t, j)].is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        (t + 1..self.a.rows())
            .find(|&i| (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(p)))
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = r.smallest_entry(t) else {
                break;
            };
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            if !r.clear_cross(t) {
                continue;
            }
            if let Some(i) = r.non_divisible_row(t) {
                r.add_row(t, i, &BigInt::from(1));
                continue;
            }
            break;
        }
        if r.a[(t, t)].is_zero() {
            break;
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    SmithDecomposition {
        u: r.u,
        d: r.a,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank,
    }
}

/// `Z^rows / (column span of A)`.
pub fn cokernel(a: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    AbelianGroup::from_diagonal(snf.diagonal().iter(), a.rows())
}

/// Columns form a `Z`-basis of `{x : A x = 0}`.
pub fn kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    snf.v.cols_from(snf.rank)
}
