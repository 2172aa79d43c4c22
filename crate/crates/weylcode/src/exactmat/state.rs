//! Sparse exact state vectors over tensor products of small systems.

use super::{DenseMatrix, MatError, MonomialMatrix};
use crate::cyclotomic::CycInt;
use num_integer::Integer;
use std::collections::BTreeMap;

/// An unnormalized state over sites of dimensions `dims`, as a sparse map
/// from packed basis index to exact amplitude. Zero amplitudes are never
/// stored. Indices pack big-endian: site 0 is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    dims: Vec<u32>,
    amps: BTreeMap<u64, CycInt>,
}

/// Packs per-site digits into a basis index, site 0 most significant.
pub fn encode_index(dims: &[u32], digits: &[u32]) -> Result<u64, MatError> {
    if digits.len() != dims.len() {
        return Err(MatError::SiteCount {
            expected: dims.len(),
            got: digits.len(),
        });
    }
    let mut idx = 0u64;
    for (&dim, &digit) in dims.iter().zip(digits.iter()) {
        if digit >= dim {
            return Err(MatError::DigitOutOfRange { digit, dim });
        }
        idx = idx * dim as u64 + digit as u64;
    }
    Ok(idx)
}

/// Unpacks a basis index into per-site digits.
pub fn decode_index(dims: &[u32], idx: u64) -> Vec<u32> {
    let mut digits = vec![0u32; dims.len()];
    let mut rest = idx;
    for (i, &dim) in dims.iter().enumerate().rev() {
        digits[i] = (rest % dim as u64) as u32;
        rest /= dim as u64;
    }
    digits
}

impl StateVector {
    /// The zero state over the given site dimensions.
    pub fn new(dims: Vec<u32>) -> StateVector {
        assert!(dims.iter().all(|&d| d >= 1), "site dimensions must be >= 1");
        StateVector {
            dims,
            amps: BTreeMap::new(),
        }
    }

    /// The computational basis state with the given digits, amplitude 1.
    pub fn basis_state(dims: Vec<u32>, digits: &[u32]) -> Result<StateVector, MatError> {
        let mut s = StateVector::new(dims);
        let idx = encode_index(&s.dims, digits)?;
        s.amps.insert(idx, CycInt::from_int(1));
        Ok(s)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Number of basis states with nonzero amplitude.
    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// Iterates `(packed index, amplitude)` in ascending index order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &CycInt)> {
        self.amps.iter().map(|(&k, v)| (k, v))
    }

    /// Amplitude at the given digits (zero if absent).
    pub fn amplitude(&self, digits: &[u32]) -> Result<CycInt, MatError> {
        let idx = encode_index(&self.dims, digits)?;
        Ok(self.amps.get(&idx).cloned().unwrap_or_else(|| CycInt::zero(1)))
    }

    /// Adds `amp` to the amplitude at `digits`, dropping the term if the sum
    /// cancels to zero.
    pub fn add_term(&mut self, digits: &[u32], amp: CycInt) -> Result<(), MatError> {
        let idx = encode_index(&self.dims, digits)?;
        self.add_term_at(idx, amp);
        Ok(())
    }

    fn add_term_at(&mut self, idx: u64, amp: CycInt) {
        if amp.is_zero() {
            return;
        }
        match self.amps.remove(&idx) {
            None => {
                self.amps.insert(idx, amp);
            }
            Some(old) => {
                let sum = &old + &amp;
                if !sum.is_zero() {
                    self.amps.insert(idx, sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &StateVector) -> Result<StateVector, MatError> {
        self.check_dims(rhs)?;
        let mut out = self.clone();
        for (idx, amp) in rhs.terms() {
            out.add_term_at(idx, amp.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &StateVector) -> Result<StateVector, MatError> {
        self.check_dims(rhs)?;
        let mut out = self.clone();
        for (idx, amp) in rhs.terms() {
            out.add_term_at(idx, -amp);
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, s: &CycInt) -> StateVector {
        if s.is_zero() {
            return StateVector::new(self.dims.clone());
        }
        let mut out = StateVector::new(self.dims.clone());
        for (idx, amp) in self.terms() {
            let v = amp * s;
            if !v.is_zero() {
                out.amps.insert(idx, v);
            }
        }
        out
    }

    /// Applies one monomial operator per site.
    pub fn apply_mono(&self, ops: &[MonomialMatrix]) -> Result<StateVector, MatError> {
        if ops.len() != self.dims.len() {
            return Err(MatError::SiteCount {
                expected: self.dims.len(),
                got: ops.len(),
            });
        }
        for (op, &dim) in ops.iter().zip(self.dims.iter()) {
            if op.dim() != dim as usize {
                return Err(MatError::DimMismatch {
                    expected: dim as usize,
                    got: op.dim(),
                });
            }
        }
        let order = ops.iter().fold(1u64, |acc, op| acc.lcm(&op.order()));
        let mut out = StateVector::new(self.dims.clone());
        for (idx, amp) in self.terms() {
            let digits = decode_index(&self.dims, idx);
            let mut new_digits = Vec::with_capacity(digits.len());
            let mut phase = 0u64;
            for (op, &z) in ops.iter().zip(digits.iter()) {
                let (row, p) = op.column_action(z as usize);
                new_digits.push(row as u32);
                phase = (phase + p * (order / op.order())) % order;
            }
            let new_idx = encode_index(&self.dims, &new_digits)?;
            let new_amp = if phase == 0 {
                amp.clone()
            } else {
                amp * &CycInt::root_of_unity(order, phase as i64)
            };
            // Monomial site maps permute basis states, so no collisions.
            out.amps.insert(new_idx, new_amp);
        }
        Ok(out)
    }

    /// Applies a dense operator to a single site.
    pub fn apply_dense_site(&self, site: usize, op: &DenseMatrix) -> Result<StateVector, MatError> {
        if site >= self.dims.len() {
            return Err(MatError::SiteCount {
                expected: self.dims.len(),
                got: site + 1,
            });
        }
        if op.dim() != self.dims[site] as usize {
            return Err(MatError::DimMismatch {
                expected: self.dims[site] as usize,
                got: op.dim(),
            });
        }
        let mut out = StateVector::new(self.dims.clone());
        for (idx, amp) in self.terms() {
            let mut digits = decode_index(&self.dims, idx);
            let z = digits[site] as usize;
            for r in 0..op.dim() {
                let cell = op.get(r, z);
                if cell.is_zero() {
                    continue;
                }
                digits[site] = r as u32;
                let new_idx = encode_index(&self.dims, &digits)?;
                out.add_term_at(new_idx, amp * cell);
            }
        }
        Ok(out)
    }

    /// Applies one dense operator per site.
    pub fn apply_dense(&self, ops: &[DenseMatrix]) -> Result<StateVector, MatError> {
        if ops.len() != self.dims.len() {
            return Err(MatError::SiteCount {
                expected: self.dims.len(),
                got: ops.len(),
            });
        }
        let mut out = self.clone();
        for (site, op) in ops.iter().enumerate() {
            out = out.apply_dense_site(site, op)?;
        }
        Ok(out)
    }

    /// Tensor product: `self` supplies the leading (most significant) sites.
    pub fn tensor(&self, rhs: &StateVector) -> StateVector {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&rhs.dims);
        let shift: u64 = rhs.dims.iter().map(|&d| d as u64).product();
        let mut out = StateVector::new(dims);
        for (ia, aa) in self.terms() {
            for (ib, ab) in rhs.terms() {
                out.amps.insert(ia * shift + ib, aa * ab);
            }
        }
        out
    }

    /// The inner product `<self | rhs>`, conjugate-linear in `self`.
    pub fn inner(&self, rhs: &StateVector) -> Result<CycInt, MatError> {
        self.check_dims(rhs)?;
        let mut acc = CycInt::zero(1);
        for (idx, amp) in self.terms() {
            if let Some(b) = rhs.amps.get(&idx) {
                acc = &acc + &(&amp.conj() * b);
            }
        }
        Ok(acc)
    }

    /// The squared norm `<self | self>`.
    pub fn norm_sq(&self) -> CycInt {
        self.inner(self).expect("dims always match themselves")
    }

    /// Decides whether `self = s * rhs` for a nonzero scalar `s`, by
    /// cross-multiplication. Returns `(num, den)` taken at the first support
    /// index of `rhs`. Two zero states are proportional with ratio `(1, 1)`.
    pub fn proportional(&self, rhs: &StateVector) -> Option<(CycInt, CycInt)> {
        if self.dims != rhs.dims {
            return None;
        }
        let p = match rhs.amps.keys().next() {
            None => {
                return if self.is_zero() {
                    Some((CycInt::from_int(1), CycInt::from_int(1)))
                } else {
                    None
                }
            }
            Some(&p) => p,
        };
        if self.is_zero() {
            return None;
        }
        let num = match self.amps.get(&p) {
            // rhs has a term where self does not: supports differ.
            None => return None,
            Some(v) => v.clone(),
        };
        let den = rhs.amps[&p].clone();
        let keys: std::collections::BTreeSet<u64> =
            self.amps.keys().chain(rhs.amps.keys()).copied().collect();
        let zero = CycInt::zero(1);
        for k in keys {
            let a = self.amps.get(&k).unwrap_or(&zero);
            let b = rhs.amps.get(&k).unwrap_or(&zero);
            if &(a * &den) != &(b * &num) {
                return None;
            }
        }
        Some((num, den))
    }

    fn check_dims(&self, rhs: &StateVector) -> Result<(), MatError> {
        if self.dims != rhs.dims {
            return Err(MatError::DimMismatch {
                expected: self.dims.len(),
                got: rhs.dims.len(),
            });
        }
        Ok(())
    }
}
