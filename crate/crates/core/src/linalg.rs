//! Dense matrices over the rationals: rank, triangular inversion, solving.

use std::fmt;

use num_traits::{One, Zero};

use crate::lincomb::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent with free variables; carries one particular solution.
    Many(Vec<Rational>),
    Inconsistent,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols.min(r)).all(|c| self[(r, c)].is_zero()))
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
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
        out
    }

    /// Inverse of a square upper-triangular matrix by back-substitution;
    /// `None` if the matrix is not of that form or has a zero on the
    /// diagonal.
    pub fn invert_upper_triangular(&self) -> Option<RationalMatrix> {
        let n = self.rows;
        if n != self.cols || !self.is_upper_triangular() || (0..n).any(|i| self[(i, i)].is_zero()) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        // Column j of the inverse solves U x = e_j, bottom row first.
        for j in 0..n {
            for i in (0..=j).rev() {
                let mut acc = if i == j { Rational::one() } else { Rational::zero() };
                for k in i + 1..=j {
                    acc -= &self[(i, k)] * &inv[(k, j)];
                }
                inv[(i, j)] = acc / &self[(i, i)];
            }
        }
        Some(inv)
    }

    /// Row-reduced echelon form and its pivot columns.
    fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let lead = m[(r, c)].clone();
            for k in c..m.cols {
                let v = &m[(r, k)] / &lead;
                m[(r, k)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for k in c..m.cols {
                    let v = &factor * &m[(r, k)];
                    m[(i, k)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self · x = rhs`.
    pub fn solve(&self, rhs: &[Rational]) -> Solution {
        assert_eq!(rhs.len(), self.rows, "rhs length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = rhs[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.cols)].clone();
        }
        if pivots.len() == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Many(x)
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn triangular_inverse_round_trip() {
        let u = m(&[&[2, 1, 3], &[0, 4, 5], &[0, 0, 6]]);
        let inv = u.invert_upper_triangular().unwrap();
        assert_eq!(u.mul(&inv), RationalMatrix::identity(3));
        assert_eq!(inv[(0, 0)], ratio(1, 2));
        assert!(inv.is_upper_triangular());
        assert!(m(&[&[1, 0], &[1, 1]]).invert_upper_triangular().is_none());
        assert!(m(&[&[0, 1], &[0, 1]]).invert_upper_triangular().is_none());
    }

    #[test]
    fn rank_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(2, 3).rank(), 0);
        match a.solve(&[rat(1), rat(2), rat(1)]) {
            Solution::Many(x) => {
                let ax: Vec<Rational> = (0..3)
                    .map(|r| (0..3).map(|c| &a[(r, c)] * &x[c]).sum())
                    .collect();
                assert_eq!(ax, vec![rat(1), rat(2), rat(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(a.solve(&[rat(1), rat(3), rat(0)]), Solution::Inconsistent);
        let b = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(b.solve(&[rat(2), rat(0)]), Solution::Unique(vec![rat(1), rat(1)]));
    }
}
