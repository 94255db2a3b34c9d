//! Dense rational matrices, row-major.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from nested rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMatrix {
            rows,
            cols,
            entries: entries.iter().map(|&v| rat::from_i64(v)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rat::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rat::one();
        }
        RatMatrix {
            rows: n,
            cols: n,
            entries,
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

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    fn add(&self, other: &RatMatrix) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &RatMatrix) -> RatMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = vec![Rat::zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                let (top, rest) = a.split_at_mut(r);
                for (dst, src) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                    *dst -= &f * src;
                }
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = RatMatrix::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].recip();
            for c in 0..n {
                a[col][c] *= &pivot;
                inv[col][c] *= &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let da = &f * &a[col][c];
                    a[r][c] -= da;
                    let di = &f * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        RatMatrix::from_rows(inv).ok()
    }

    /// `det(I - t·M)` as a polynomial in `t`, via Faddeev-LeVerrier.
    ///
    /// With `det(λI - M) = λⁿ + c_{n-1}λ^{n-1} + … + c_0` the result is
    /// `1 + c_{n-1} t + … + c_0 tⁿ`.
    pub fn det_identity_minus_t(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        // coeffs[k] = c_{n-k}, so coeffs[0] = 1 is the leading coefficient.
        let mut coeffs = vec![Rat::one()];
        let mut mk = RatMatrix {
            rows: n,
            cols: n,
            entries: vec![Rat::zero(); n * n],
        };
        let id = RatMatrix::identity(n);
        for k in 1..=n {
            mk = self.mul(&mk)?.add(&id.scale(&coeffs[k - 1]));
            let am = self.mul(&mk)?;
            let c = -am.trace() / Rat::from_integer((k as i64).into());
            coeffs.push(c);
        }
        Ok(UniPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{from_frac, from_i64};

    #[test]
    fn multiply_and_transpose() {
        let r = RatMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        let r2 = r.mul(&r).unwrap();
        assert_eq!(r2, RatMatrix::from_i64(2, 2, &[-1, 0, 0, -1]));
        assert_eq!(r.transpose(), RatMatrix::from_i64(2, 2, &[0, 1, -1, 0]));
        assert_eq!(r.trace(), from_i64(0));
        assert!(r.mul(&RatMatrix::identity(3)).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let a = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(a.det().unwrap(), from_i64(1));
        let s = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(s.inverse().is_none());
        assert_eq!(s.det().unwrap(), from_i64(0));
        let b = RatMatrix::from_i64(3, 3, &[0, 0, 1, 0, 2, 0, 3, 0, 0]);
        assert_eq!(b.det().unwrap(), from_i64(-6));
    }

    #[test]
    fn det_identity_minus_t_matches_pointwise_determinant() {
        let m = RatMatrix::from_i64(3, 3, &[1, 2, 0, -1, 0, 3, 2, 1, 1]);
        let p = m.det_identity_minus_t().unwrap();
        for t in [-3i64, -1, 0, 1, 2, 5] {
            let t = from_i64(t);
            let direct = RatMatrix::identity(3)
                .add(&m.scale(&-t.clone()))
                .det()
                .unwrap();
            assert_eq!(p.eval(&t), direct);
        }
        let half = from_frac(1, 2);
        let direct = RatMatrix::identity(3)
            .add(&m.scale(&-half.clone()))
            .det()
            .unwrap();
        assert_eq!(p.eval(&half), direct);
    }

    #[test]
    fn block_diagonal() {
        let a = RatMatrix::from_i64(1, 1, &[-1]);
        let b = RatMatrix::from_i64(1, 1, &[2]);
        assert_eq!(a.block_diag(&b), RatMatrix::from_i64(2, 2, &[-1, 0, 0, 2]));
    }
}
