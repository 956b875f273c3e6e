//! Dense exact linear algebra over a cyclotomic field.
//!
//! Pivots are taken at the first nonzero column, left to right, with no
//! coefficient-size heuristics, so results depend only on the column order
//! chosen by the caller.

use std::sync::Arc;

use rayon::prelude::*;

use crate::exactnum::{CyclotomicField, CyclotomicNumber};

#[derive(Clone, Debug)]
pub struct Matrix {
    field: Arc<CyclotomicField>,
    ncols: usize,
    rows: Vec<Vec<CyclotomicNumber>>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CyclotomicField>, nrows: usize, ncols: usize) -> Self {
        let z = CyclotomicNumber::zero_in(field);
        Matrix { field: field.clone(), ncols, rows: vec![vec![z; ncols]; nrows] }
    }

    pub fn from_rows(field: &Arc<CyclotomicField>, ncols: usize, rows: Vec<Vec<CyclotomicNumber>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { field: field.clone(), ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &CyclotomicNumber {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CyclotomicNumber) {
        self.rows[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[CyclotomicNumber] {
        &self.rows[r]
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Reduced row echelon form in place; returns the pivot columns. Zero rows
    /// are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else { continue };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv().expect("pivot is nonzero");
            let pivot_row: Vec<CyclotomicNumber> =
                self.rows[r].iter().enumerate().map(|(j, x)| if j < c || x.is_zero() { x.clone() } else { x * &inv }).collect();
            self.rows[r] = pivot_row.clone();
            let support: Vec<usize> = (c..self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
            self.rows.par_iter_mut().enumerate().for_each(|(i, row)| {
                if i == r || row[c].is_zero() {
                    return;
                }
                let f = row[c].clone();
                for &j in &support {
                    row[j] -= &(&pivot_row[j] * &f);
                }
            });
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Coefficients `c` with Σ c_i vectors[i] = target, or `None` if the target is
/// outside the span. Free coefficients are set to zero.
pub fn solve_in_span(
    field: &Arc<CyclotomicField>,
    vectors: &[Vec<CyclotomicNumber>],
    target: &[CyclotomicNumber],
) -> Option<Vec<CyclotomicNumber>> {
    let n = vectors.len();
    let rows: Vec<Vec<CyclotomicNumber>> = (0..target.len())
        .map(|k| {
            let mut row: Vec<CyclotomicNumber> = vectors.iter().map(|v| v[k].clone()).collect();
            row.push(target[k].clone());
            row
        })
        .collect();
    let mut m = Matrix::from_rows(field, n + 1, rows);
    let pivots = m.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut sol = vec![CyclotomicNumber::zero_in(field); n];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m.rows[r][n].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Arc<CyclotomicField> {
        CyclotomicField::get(10).unwrap()
    }

    fn c(v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int_in(&f(), v)
    }

    #[test]
    fn rref_and_rank() {
        let z = CyclotomicNumber::root_of_unity(10, 1).unwrap();
        let mut m =
            Matrix::from_rows(&f(), 3, vec![vec![c(1), z.clone(), c(0)], vec![c(2), &z * &c(2), c(0)], vec![c(0), c(0), z.clone()]]);
        assert_eq!(m.rank(), 2);
        let piv = m.rref();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(m.nrows(), 2);
        assert!(m.get(1, 2).is_one());
    }

    #[test]
    fn span_solving() {
        let vecs = vec![vec![c(1), c(0), c(1)], vec![c(0), c(1), c(1)]];
        let sol = solve_in_span(&f(), &vecs, &[c(2), c(3), c(5)]).unwrap();
        assert_eq!(sol, vec![c(2), c(3)]);
        assert!(solve_in_span(&f(), &vecs, &[c(2), c(3), c(4)]).is_none());
    }
}
