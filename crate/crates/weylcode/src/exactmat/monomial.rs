//! Monomial (generalized permutation) matrices with root-of-unity entries.

use super::{DenseMatrix, MatError};
use crate::cyclotomic::CycInt;
use num_integer::Integer;
use std::hash::{Hash, Hasher};

/// A unitary monomial matrix of size `dim` with phases in the `order`-th
/// roots of unity.
///
/// The action on basis states is `M |j> = zeta_order^phases[j] |perm[j]>`,
/// so column `j` holds its single nonzero entry in row `perm[j]`.
///
/// Equality and hashing compare the matrix the data represents, not the
/// carried phase order: phases are first reduced to the smallest order that
/// can express them.
#[derive(Clone, Debug)]
pub struct MonomialMatrix {
    dim: usize,
    order: u64,
    perm: Vec<usize>,
    phases: Vec<u64>,
}

impl MonomialMatrix {
    /// Validating constructor.
    pub fn new(
        dim: usize,
        order: u64,
        perm: Vec<usize>,
        phases: Vec<u64>,
    ) -> Result<MonomialMatrix, MatError> {
        assert!(order >= 1, "phase order must be at least 1");
        if perm.len() != dim {
            return Err(MatError::DimMismatch {
                expected: dim,
                got: perm.len(),
            });
        }
        if phases.len() != dim {
            return Err(MatError::DimMismatch {
                expected: dim,
                got: phases.len(),
            });
        }
        let mut seen = vec![false; dim];
        for &p in &perm {
            if p >= dim || seen[p] {
                return Err(MatError::BadPermutation { dim });
            }
            seen[p] = true;
        }
        for &p in &phases {
            if p >= order {
                return Err(MatError::PhaseOutOfRange { phase: p, order });
            }
        }
        Ok(MonomialMatrix {
            dim,
            order,
            perm,
            phases,
        })
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> MonomialMatrix {
        MonomialMatrix {
            dim,
            order: 1,
            perm: (0..dim).collect(),
            phases: vec![0; dim],
        }
    }

    /// The cyclic shift `X |z> = |z+1 mod n>`.
    pub fn shift(n: usize) -> MonomialMatrix {
        assert!(n >= 1);
        MonomialMatrix {
            dim: n,
            order: 1,
            perm: (0..n).map(|z| (z + 1) % n).collect(),
            phases: vec![0; n],
        }
    }

    /// The clock matrix `D |z> = zeta_n^z |z>`.
    pub fn clock(n: usize) -> MonomialMatrix {
        assert!(n >= 1);
        MonomialMatrix {
            dim: n,
            order: n as u64,
            perm: (0..n).collect(),
            phases: (0..n as u64).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[u64] {
        &self.phases
    }

    /// Composition `self * rhs` as matrices: `rhs` is applied first.
    ///
    /// # Panics
    ///
    /// Panics if the dimensions differ.
    pub fn mul(&self, rhs: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in monomial product");
        let order = self.order.lcm(&rhs.order);
        let (sa, sb) = (order / self.order, order / rhs.order);
        let mut perm = vec![0usize; self.dim];
        let mut phases = vec![0u64; self.dim];
        for j in 0..self.dim {
            let mid = rhs.perm[j];
            perm[j] = self.perm[mid];
            phases[j] = (rhs.phases[j] * sb + self.phases[mid] * sa) % order;
        }
        MonomialMatrix {
            dim: self.dim,
            order,
            perm,
            phases,
        }
    }

    /// Conjugate transpose, which is also the inverse.
    pub fn adjoint(&self) -> MonomialMatrix {
        let mut perm = vec![0usize; self.dim];
        let mut phases = vec![0u64; self.dim];
        for j in 0..self.dim {
            perm[self.perm[j]] = j;
            phases[self.perm[j]] = (self.order - self.phases[j]) % self.order;
        }
        MonomialMatrix {
            dim: self.dim,
            order: self.order,
            perm,
            phases,
        }
    }

    /// Exact nonnegative matrix power.
    pub fn pow(&self, e: u64) -> MonomialMatrix {
        let mut acc = MonomialMatrix::identity(self.dim);
        for _ in 0..e {
            acc = self.mul(&acc);
        }
        acc
    }

    /// Multiplies the whole matrix by the scalar `zeta_s_order^k`.
    pub fn scalar_mul(&self, s_order: u64, k: u64) -> MonomialMatrix {
        assert!(s_order >= 1);
        let order = self.order.lcm(&s_order);
        let (sa, sk) = (order / self.order, order / s_order);
        let phases = self
            .phases
            .iter()
            .map(|&p| (p * sa + (k % s_order) * sk) % order)
            .collect();
        MonomialMatrix {
            dim: self.dim,
            order,
            perm: self.perm.clone(),
            phases,
        }
    }

    /// The negated matrix.
    pub fn neg(&self) -> MonomialMatrix {
        self.scalar_mul(2, 1)
    }

    /// Kronecker product. Indices combine big-endian: the joint column
    /// `j = j_self * rhs.dim + j_rhs`.
    pub fn tensor(&self, rhs: &MonomialMatrix) -> MonomialMatrix {
        let dim = self.dim * rhs.dim;
        let order = self.order.lcm(&rhs.order);
        let (sa, sb) = (order / self.order, order / rhs.order);
        let mut perm = vec![0usize; dim];
        let mut phases = vec![0u64; dim];
        for ja in 0..self.dim {
            for jb in 0..rhs.dim {
                let j = ja * rhs.dim + jb;
                perm[j] = self.perm[ja] * rhs.dim + rhs.perm[jb];
                phases[j] = (self.phases[ja] * sa + rhs.phases[jb] * sb) % order;
            }
        }
        MonomialMatrix {
            dim,
            order,
            perm,
            phases,
        }
    }

    /// Exact trace: the sum of `zeta^phases[j]` over fixed points of the
    /// permutation.
    pub fn trace(&self) -> CycInt {
        let mut acc = CycInt::zero(self.order);
        for j in 0..self.dim {
            if self.perm[j] == j {
                acc = &acc + &CycInt::root_of_unity(self.order, self.phases[j] as i64);
            }
        }
        acc
    }

    /// Exact determinant: the sign of the permutation times
    /// `zeta^(sum of phases)`.
    pub fn det(&self) -> CycInt {
        let root = CycInt::root_of_unity(
            self.order,
            (self.phases.iter().map(|&p| p % self.order).sum::<u64>() % self.order) as i64,
        );
        if perm_sign(&self.perm) < 0 {
            -&root
        } else {
            root
        }
    }

    /// Expands into a dense matrix of exact entries.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut entries = vec![CycInt::zero(1); self.dim * self.dim];
        for j in 0..self.dim {
            entries[self.perm[j] * self.dim + j] =
                CycInt::root_of_unity(self.order, self.phases[j] as i64);
        }
        DenseMatrix::new(self.dim, entries).unwrap()
    }

    /// The smallest-order representation of the same matrix.
    pub fn reduced(&self) -> MonomialMatrix {
        let g = self
            .phases
            .iter()
            .fold(self.order, |acc, &p| acc.gcd(&p));
        if g <= 1 {
            return self.clone();
        }
        MonomialMatrix {
            dim: self.dim,
            order: self.order / g,
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|&p| p / g).collect(),
        }
    }

    /// A total-order key: the permutation, then the phases re-expressed at
    /// the common order `target`. Used to pick deterministic representatives
    /// out of sets of monomial matrices.
    ///
    /// # Panics
    ///
    /// Panics if `target` is not a multiple of the phase order.
    pub fn encoding_at(&self, target: u64) -> (Vec<usize>, Vec<u64>) {
        assert!(
            target % self.order == 0,
            "encoding order {} does not hold order {}",
            target,
            self.order
        );
        let s = target / self.order;
        (
            self.perm.clone(),
            self.phases.iter().map(|&p| p * s).collect(),
        )
    }

    /// Column action: `M |j>` is `zeta^phase |row>` for the returned pair
    /// `(row, phase)`, with the phase an exponent at this matrix's order.
    pub fn column_action(&self, j: usize) -> (usize, u64) {
        (self.perm[j], self.phases[j])
    }
}

fn perm_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl PartialEq for MonomialMatrix {
    fn eq(&self, other: &MonomialMatrix) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let a = self.reduced();
        let b = other.reduced();
        a.order == b.order && a.perm == b.perm && a.phases == b.phases
    }
}

impl Eq for MonomialMatrix {}

impl Hash for MonomialMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.dim.hash(state);
        r.order.hash(state);
        r.perm.hash(state);
        r.phases.hash(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycInt;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn root(m: u64, k: i64) -> CycInt {
        CycInt::root_of_unity(m, k)
    }

    fn random_monomial(rng: &mut StdRng, dim: usize, order: u64) -> MonomialMatrix {
        let mut perm: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let phases = (0..dim).map(|_| rng.gen_range(0..order)).collect();
        MonomialMatrix::new(dim, order, perm, phases).unwrap()
    }

    #[test]
    fn constructor_validates_its_inputs() {
        assert_eq!(
            MonomialMatrix::new(2, 4, vec![0, 0], vec![0, 0]),
            Err(MatError::BadPermutation { dim: 2 })
        );
        assert_eq!(
            MonomialMatrix::new(2, 4, vec![0, 2], vec![0, 0]),
            Err(MatError::BadPermutation { dim: 2 })
        );
        assert_eq!(
            MonomialMatrix::new(2, 4, vec![0, 1], vec![0, 4]),
            Err(MatError::PhaseOutOfRange { phase: 4, order: 4 })
        );
        assert_eq!(
            MonomialMatrix::new(2, 4, vec![0], vec![0, 0]),
            Err(MatError::DimMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn shift_of_dim_two_is_the_bit_flip() {
        let x = MonomialMatrix::shift(2).to_dense();
        let one = CycInt::from_int(1);
        let zero = CycInt::zero(1);
        assert_eq!(x.get(0, 0), &zero);
        assert_eq!(x.get(0, 1), &one);
        assert_eq!(x.get(1, 0), &one);
        assert_eq!(x.get(1, 1), &zero);
    }

    #[test]
    fn clock_is_the_diagonal_of_roots() {
        let d = MonomialMatrix::clock(3).to_dense();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j {
                    root(3, i as i64)
                } else {
                    CycInt::zero(1)
                };
                assert_eq!(d.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn clock_and_shift_commute_up_to_a_root() {
        // D X = zeta_n X D, so the down-shift C = X^dagger obeys C D = zeta_n D C.
        for n in 2..=6usize {
            let x = MonomialMatrix::shift(n);
            let d = MonomialMatrix::clock(n);
            let dx = d.mul(&x);
            let xd = x.mul(&d);
            assert_eq!(dx, xd.scalar_mul(n as u64, 1), "n = {}", n);
            let c = x.adjoint();
            let cd = c.mul(&d);
            let dc = d.mul(&c);
            assert_eq!(cd, dc.scalar_mul(n as u64, 1), "n = {}", n);
        }
    }

    #[test]
    fn adjoint_inverts() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=8);
            let order = rng.gen_range(1..=12);
            let m = random_monomial(&mut rng, dim, order);
            assert_eq!(m.mul(&m.adjoint()), MonomialMatrix::identity(dim));
            assert_eq!(m.adjoint().mul(&m), MonomialMatrix::identity(dim));
            assert_eq!(m.adjoint().adjoint(), m);
        }
    }

    #[test]
    fn traces_of_named_matrices() {
        assert_eq!(
            MonomialMatrix::identity(5).trace(),
            CycInt::from_int(5)
        );
        assert!(MonomialMatrix::shift(4).trace().is_zero());
        // 1 + zeta_3 + zeta_3^2 = 0.
        assert!(MonomialMatrix::clock(3).trace().is_zero());
    }

    #[test]
    fn determinants_of_named_matrices() {
        // A 5-cycle is even, so det X_5 = 1.
        assert!(MonomialMatrix::shift(5).det().is_one());
        // A 4-cycle is odd.
        assert_eq!(MonomialMatrix::shift(4).det(), CycInt::from_int(-1));
        // det D_n = zeta_n^(0+1+...+(n-1)).
        assert_eq!(MonomialMatrix::clock(3).det(), root(3, 3));
        assert!(MonomialMatrix::clock(3).det().is_one());
        assert_eq!(MonomialMatrix::clock(2).det(), CycInt::from_int(-1));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=7);
            let order = rng.gen_range(1..=10);
            let a = random_monomial(&mut rng, dim, order);
            let b = random_monomial(&mut rng, dim, order);
            assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        }
    }

    // Leibniz determinant over all permutations, used only as a test oracle.
    fn dense_det(m: &DenseMatrix) -> CycInt {
        fn go(m: &DenseMatrix, cols: &mut Vec<usize>, row: usize, sign: i32) -> CycInt {
            if row == m.dim() {
                return CycInt::from_int(sign as i64);
            }
            let mut acc = CycInt::zero(1);
            for i in 0..cols.len() {
                let c = cols.remove(i);
                let cell = m.get(row, c).clone();
                if !cell.is_zero() {
                    let sub = go(m, cols, row + 1, if i % 2 == 0 { sign } else { -sign });
                    acc = &acc + &(&cell * &sub);
                }
                cols.insert(i, c);
            }
            acc
        }
        let mut cols: Vec<usize> = (0..m.dim()).collect();
        go(m, &mut cols, 0, 1)
    }

    #[test]
    fn determinant_matches_dense_expansion() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..25 {
            let dim = rng.gen_range(1..=4);
            let order = rng.gen_range(1..=8);
            let m = random_monomial(&mut rng, dim, order);
            assert_eq!(m.det(), dense_det(&m.to_dense()));
        }
    }

    #[test]
    fn products_and_traces_match_the_dense_oracle() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=8);
            let (oa, ob) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let a = random_monomial(&mut rng, dim, oa);
            let b = random_monomial(&mut rng, dim, ob);
            assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
            assert_eq!(a.adjoint().to_dense(), a.to_dense().adjoint());
            assert_eq!(a.trace(), a.to_dense().trace());
        }
    }

    #[test]
    fn tensor_matches_the_dense_kronecker_product() {
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..25 {
            let da = rng.gen_range(1..=3);
            let db = rng.gen_range(1..=4);
            let (oa, ob) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let a = random_monomial(&mut rng, da, oa);
            let b = random_monomial(&mut rng, db, ob);
            let t = a.tensor(&b).to_dense();
            let (ad, bd) = (a.to_dense(), b.to_dense());
            let kron =
                DenseMatrix::from_fn(da * db, |i, j| ad.get(i / db, j / db) * bd.get(i % db, j % db));
            assert_eq!(t, kron);
            assert_eq!(
                a.tensor(&b).trace(),
                &a.trace() * &b.trace(),
                "trace should be multiplicative under tensor"
            );
        }
    }

    #[test]
    fn powers_accumulate() {
        let x = MonomialMatrix::shift(5);
        assert_eq!(x.pow(5), MonomialMatrix::identity(5));
        assert_eq!(x.pow(0), MonomialMatrix::identity(5));
        assert_eq!(x.pow(3), x.mul(&x).mul(&x));
    }

    #[test]
    fn equality_reduces_phase_orders() {
        let a = MonomialMatrix::shift(2);
        let b = MonomialMatrix::new(2, 6, vec![1, 0], vec![0, 0]).unwrap();
        assert_eq!(a, b);
        let c = MonomialMatrix::new(2, 6, vec![1, 0], vec![2, 4]).unwrap();
        let d = MonomialMatrix::new(2, 3, vec![1, 0], vec![1, 2]).unwrap();
        assert_eq!(c, d);
        assert_ne!(a, c);
        let id4 = MonomialMatrix::identity(4);
        assert_eq!(id4.scalar_mul(8, 8 % 8), id4);
    }
}
