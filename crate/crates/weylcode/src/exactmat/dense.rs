//! Dense square matrices of exact cyclotomic entries.

use super::MatError;
use crate::cyclotomic::CycInt;

/// A square matrix over `Z[zeta]`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<CycInt>,
}

impl DenseMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn new(dim: usize, entries: Vec<CycInt>) -> Result<DenseMatrix, MatError> {
        if entries.len() != dim * dim {
            return Err(MatError::DimMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(DenseMatrix { dim, entries })
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> CycInt) -> DenseMatrix {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        DenseMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> DenseMatrix {
        DenseMatrix::from_fn(dim, |i, j| {
            if i == j {
                CycInt::from_int(1)
            } else {
                CycInt::zero(1)
            }
        })
    }

    pub fn zero(dim: usize) -> DenseMatrix {
        DenseMatrix::from_fn(dim, |_, _| CycInt::zero(1))
    }

    /// The unnormalized Fourier matrix `F[i][j] = zeta_n^(i*j)`.
    ///
    /// `F F^dagger = n I`; every identity involving `F` in this crate is
    /// written in that normalization-free form.
    pub fn fourier(n: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, |i, j| {
            CycInt::root_of_unity(n as u64, ((i * j) % n) as i64)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CycInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycInt) {
        self.entries[i * self.dim + j] = v;
    }

    /// Matrix product.
    ///
    /// # Panics
    ///
    /// Panics if the dimensions differ.
    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in dense product");
        DenseMatrix::from_fn(self.dim, |i, j| {
            let mut acc = CycInt::zero(1);
            for k in 0..self.dim {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in dense sum");
        DenseMatrix::from_fn(self.dim, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in dense difference");
        DenseMatrix::from_fn(self.dim, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scalar_mul(&self, s: &CycInt) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, |i, j| self.get(i, j) * s)
    }

    pub fn trace(&self) -> CycInt {
        let mut acc = CycInt::zero(1);
        for i in 0..self.dim {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Kronecker product. Indices combine big-endian, matching
    /// `MonomialMatrix::tensor`.
    pub fn tensor(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let db = rhs.dim;
        DenseMatrix::from_fn(self.dim * db, |i, j| {
            self.get(i / db, j / db) * rhs.get(i % db, j % db)
        })
    }

    /// Exact determinant by cofactor expansion with zero pruning. Intended
    /// for the small dimensions this crate works at.
    pub fn determinant(&self) -> CycInt {
        fn go(m: &DenseMatrix, cols: &mut Vec<usize>, row: usize, sign: i64) -> CycInt {
            if row == m.dim() {
                return CycInt::from_int(sign);
            }
            let mut acc = CycInt::zero(1);
            for i in 0..cols.len() {
                let c = cols.remove(i);
                let cell = m.get(row, c).clone();
                if !cell.is_zero() {
                    let sub = go(m, cols, row + 1, if i % 2 == 0 { sign } else { -sign });
                    if !sub.is_zero() {
                        acc = &acc + &(&cell * &sub);
                    }
                }
                cols.insert(i, c);
            }
            acc
        }
        let mut cols: Vec<usize> = (0..self.dim).collect();
        go(self, &mut cols, 0, 1)
    }

    /// Decides whether `self = s * rhs` for some nonzero scalar `s`, without
    /// dividing: all two-by-two cross products must vanish.
    ///
    /// On success returns `(num, den)` with `num = self[p]`, `den = rhs[p]`
    /// at the first nonzero position `p` of `rhs`, so `s = num / den`. Two
    /// zero matrices are proportional with ratio `(1, 1)`; a zero matrix is
    /// not proportional to a nonzero one.
    pub fn proportional(&self, rhs: &DenseMatrix) -> Option<(CycInt, CycInt)> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in scalar check");
        let p = match rhs.entries.iter().position(|e| !e.is_zero()) {
            None => {
                return if self.is_zero() {
                    Some((CycInt::from_int(1), CycInt::from_int(1)))
                } else {
                    None
                }
            }
            Some(p) => p,
        };
        if self.is_zero() {
            return None;
        }
        let num = self.entries[p].clone();
        let den = rhs.entries[p].clone();
        for (a, b) in self.entries.iter().zip(rhs.entries.iter()) {
            if &(a * &den) != &(b * &num) {
                return None;
            }
        }
        Some((num, den))
    }
}
