//! Unitary error operator bases for an `n`-dimensional system.
//!
//! An error basis is a set of `n^2` unitaries, the first of which is the
//! identity, orthonormal under the trace pairing `<A, B> = tr(A^* B) / n`.
//! Every linear operator then expands over the basis with exact cyclotomic
//! coefficients. A basis is *nice* when it is closed under products up to
//! scalars: `E_i E_j = w_ij E_(i*j)` with unimodular `w_ij` and the index
//! set forming a group under `*`. It is *very nice* when additionally every
//! element has determinant one and every `w_ij` is an `n`-th root of unity.
//!
//! Two families are constructed here. The shift and clock basis exists for
//! every `n >= 2` and comes in two labelings that differ only in how the
//! scalar table reads (see [`Labeling`]). A second, dimension-four basis is
//! obtained as coset representatives of a finite monomial matrix group
//! modulo its center; its index group is non-abelian, which the group-table
//! utilities at the bottom of the module certify by explicit isomorphism.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::cyclotomic::CycInt;
use crate::exactmat::{DenseMatrix, MonomialMatrix};

/// Errors reported by basis construction and verification.
#[derive(Debug, Error)]
pub enum BasisError {
    /// The system dimension must be at least two.
    #[error("system dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    /// A basis for dimension `n` must have exactly `n^2` elements.
    #[error("basis needs dim^2 = {expected} elements, got {got}")]
    WrongCount { expected: usize, got: usize },
    /// Labels must pair up with elements.
    #[error("{elements} elements but {labels} labels")]
    LabelCount { elements: usize, labels: usize },
    /// All elements must act on the same dimension.
    #[error("element {at} has dimension {got}, expected {expected}")]
    MixedDims {
        expected: usize,
        got: usize,
        at: usize,
    },
    /// Element zero must be the identity matrix.
    #[error("element 0 must be the identity")]
    MissingIdentity,
    /// Labels must be pairwise distinct.
    #[error("labels must be pairwise distinct")]
    DuplicateLabel,
    /// Trace orthonormality failed at a pair of elements.
    #[error("not orthonormal: tr(E_{i}^* E_{j}) = {value}")]
    NotOrthonormal { i: usize, j: usize, value: CycInt },
    /// A product fell outside the basis up to scalars.
    #[error("product E_{i} E_{j} breaks niceness: {why}")]
    NotNice { i: usize, j: usize, why: String },
    /// The scalar table is only multiplicative over an abelian index group.
    #[error("index group is not abelian: indices {i} and {j} do not commute")]
    NonAbelianIndexGroup { i: usize, j: usize },
    /// Index strings being compared must have equal length.
    #[error("index strings have lengths {a} and {b}")]
    LengthMismatch { a: usize, b: usize },
    /// An element index fell outside the basis.
    #[error("index {index} out of range for {len} basis elements")]
    IndexOutOfRange { index: usize, len: usize },
    /// An operator passed in for expansion has the wrong dimension.
    #[error("operator has dimension {got}, basis has {expected}")]
    DimMismatch { expected: usize, got: usize },
    /// Group closure grew past the configured cap.
    #[error("group closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    /// Determinant normalization needs determinants that are roots of unity.
    #[error("determinant of element {index} is not a root of unity")]
    DeterminantNotRoot { index: usize },
}

/// Name of a basis element: a pair over `Z_n`, a bare position, or a tensor
/// pair of labels from two factor bases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Pair `(i, j)` over `Z_n`, as used by the shift and clock family.
    Zn(u32, u32),
    /// Bare position `g<k>` for bases without extra index structure.
    Atom(usize),
    /// Tensor product of two factor labels.
    Pair(Box<Label>, Box<Label>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Zn(i, j) => write!(f, "({},{})", i, j),
            Label::Atom(k) => write!(f, "g{}", k),
            Label::Pair(a, b) => write!(f, "{}x{}", a, b),
        }
    }
}

/// A basis element: monomial whenever possible, dense as a fallback so that
/// verification routines can also exercise hand-built counterexamples.
#[derive(Debug, Clone)]
pub enum ExactOp {
    Mono(MonomialMatrix),
    Dense(DenseMatrix),
}

impl ExactOp {
    pub fn dim(&self) -> usize {
        match self {
            ExactOp::Mono(m) => m.dim(),
            ExactOp::Dense(d) => d.dim(),
        }
    }

    /// Matrix product; stays monomial when both factors are.
    pub fn mul(&self, rhs: &ExactOp) -> ExactOp {
        match (self, rhs) {
            (ExactOp::Mono(a), ExactOp::Mono(b)) => ExactOp::Mono(a.mul(b)),
            _ => ExactOp::Dense(self.to_dense().mul(&rhs.to_dense())),
        }
    }

    pub fn adjoint(&self) -> ExactOp {
        match self {
            ExactOp::Mono(m) => ExactOp::Mono(m.adjoint()),
            ExactOp::Dense(d) => ExactOp::Dense(d.adjoint()),
        }
    }

    pub fn trace(&self) -> CycInt {
        match self {
            ExactOp::Mono(m) => m.trace(),
            ExactOp::Dense(d) => d.trace(),
        }
    }

    pub fn det(&self) -> CycInt {
        match self {
            ExactOp::Mono(m) => m.det(),
            ExactOp::Dense(d) => d.determinant(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            ExactOp::Mono(m) => m.to_dense(),
            ExactOp::Dense(d) => d.clone(),
        }
    }

    /// Kronecker product; stays monomial when both factors are.
    pub fn tensor(&self, rhs: &ExactOp) -> ExactOp {
        match (self, rhs) {
            (ExactOp::Mono(a), ExactOp::Mono(b)) => ExactOp::Mono(a.tensor(b)),
            _ => ExactOp::Dense(self.to_dense().tensor(&rhs.to_dense())),
        }
    }

    /// Multiplies by the scalar `zeta_order^k`.
    pub fn scalar_root(&self, order: u64, k: u64) -> ExactOp {
        match self {
            ExactOp::Mono(m) => ExactOp::Mono(m.scalar_mul(order, k)),
            ExactOp::Dense(d) => {
                ExactOp::Dense(d.scalar_mul(&CycInt::root_of_unity(order, k as i64)))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ExactOp::Mono(m) => *m == MonomialMatrix::identity(m.dim()),
            ExactOp::Dense(d) => *d == DenseMatrix::identity(d.dim()),
        }
    }
}

impl PartialEq for ExactOp {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactOp::Mono(a), ExactOp::Mono(b)) => a == b,
            (ExactOp::Dense(a), ExactOp::Dense(b)) => a == b,
            _ => self.to_dense() == other.to_dense(),
        }
    }
}

impl Eq for ExactOp {}

/// Scalar ratio `a = w * b` between two monomial matrices, if one exists.
fn mono_ratio(a: &MonomialMatrix, b: &MonomialMatrix) -> Option<CycInt> {
    if a.dim() != b.dim() || a.perm() != b.perm() {
        return None;
    }
    let m = a.order().lcm(&b.order());
    let (sa, sb) = (m / a.order(), m / b.order());
    let mut delta = None;
    for j in 0..a.dim() {
        let d = (a.phases()[j] * sa + m - b.phases()[j] * sb) % m;
        match delta {
            None => delta = Some(d),
            Some(prev) if prev != d => return None,
            _ => {}
        }
    }
    delta.map(|d| CycInt::root_of_unity(m, d as i64))
}

/// The two standard labelings of the shift and clock basis.
///
/// Writing `X |z> = |z+1>` for the upward shift, `C = X^*` for the downward
/// shift and `D |z> = zeta_n^z |z>` for the clock:
///
/// * [`Labeling::PhaseShift`] takes `E_(x,y) = X^y D^x`, so the scalar table
///   reads `E_(x,y) E_(x',y') = zeta_n^(x y') E_(x+x', y+y')`.
/// * [`Labeling::ClockPower`] takes `E_(i,j) = D^i C^j`, so the table reads
///   `E_(i,j) E_(k,l) = zeta_n^(j k) E_(i+k, j+l)`.
///
/// Both produce the same operators up to phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    PhaseShift,
    ClockPower,
}

/// Structure constants of a nice basis: `E_i E_j = w[i][j] E_(star[i][j])`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub star: Vec<Vec<usize>>,
    pub w: Vec<Vec<CycInt>>,
}

impl StructureConstants {
    pub fn len(&self) -> usize {
        self.star.len()
    }

    pub fn is_empty(&self) -> bool {
        self.star.is_empty()
    }

    /// Scalar picked up when two tensor strings of basis elements swap:
    /// `E_d E_d' = c E_d' E_d` with `c` the product over sites of
    /// `w[d_i][d'_i] * conj(w[d'_i][d_i])`.
    ///
    /// Only meaningful when the index group is abelian, so that both
    /// orderings land on the same basis element; rejected otherwise.
    pub fn commutation_product(&self, d: &[usize], dp: &[usize]) -> Result<CycInt, BasisError> {
        if d.len() != dp.len() {
            return Err(BasisError::LengthMismatch {
                a: d.len(),
                b: dp.len(),
            });
        }
        let m = self.star.len();
        for i in 0..m {
            for j in 0..i {
                if self.star[i][j] != self.star[j][i] {
                    return Err(BasisError::NonAbelianIndexGroup { i, j });
                }
            }
        }
        let mut acc = CycInt::from_int(1);
        for (&a, &b) in d.iter().zip(dp.iter()) {
            let worst = a.max(b);
            if worst >= m {
                return Err(BasisError::IndexOutOfRange {
                    index: worst,
                    len: m,
                });
            }
            acc = &acc * &(&self.w[a][b] * &self.w[b][a].conj());
        }
        Ok(acc)
    }
}

/// How the index set of a nice basis behaves under the induced product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexGroupReport {
    /// Index 0 is a two-sided identity.
    pub identity: bool,
    /// Every index has a two-sided inverse.
    pub inverses: bool,
    /// The product is associative.
    pub associative: bool,
    /// The product commutes.
    pub abelian: bool,
}

impl IndexGroupReport {
    pub fn is_group(&self) -> bool {
        self.identity && self.inverses && self.associative
    }
}

/// Result of checking the two extra conditions for a very nice basis.
#[derive(Debug, Clone)]
pub struct VeryNiceReport {
    /// Every element has determinant exactly one.
    pub unit_determinants: bool,
    /// First offending `(element index, determinant)` if not.
    pub determinant_witness: Option<(usize, CycInt)>,
    /// Every scalar `w_ij` satisfies `w^n = 1`.
    pub coefficients_are_nth_roots: bool,
    /// First offending `(i, j, w)` if not.
    pub coefficient_witness: Option<(usize, usize, CycInt)>,
}

impl VeryNiceReport {
    pub fn passed(&self) -> bool {
        self.unit_determinants && self.coefficients_are_nth_roots
    }
}

/// Exact expansion of an operator over a basis: `sum_k t_k E_k = n * A`,
/// so each coefficient of `A` itself is `t_k / n`.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    /// Numerators `t_k = tr(E_k^* A)`.
    pub coefficients: Vec<CycInt>,
    /// Common denominator, always the system dimension.
    pub denominator: u64,
    /// Whether `sum_k t_k E_k` equals `n * A` exactly.
    pub reconstructs: bool,
    /// Whether `sum_k t_k conj(t_k)` equals `n * tr(A^* A)` exactly.
    pub norm_identity: bool,
}

/// A unitary error operator basis with one label per element.
#[derive(Debug, Clone)]
pub struct ErrorBasis {
    dim: usize,
    elements: Vec<ExactOp>,
    labels: Vec<Label>,
}

impl ErrorBasis {
    /// Validates and wraps a basis: `dim^2` elements of a uniform dimension,
    /// identity first, pairwise distinct labels.
    pub fn new(elements: Vec<ExactOp>, labels: Vec<Label>) -> Result<ErrorBasis, BasisError> {
        if elements.len() != labels.len() {
            return Err(BasisError::LabelCount {
                elements: elements.len(),
                labels: labels.len(),
            });
        }
        let dim = match elements.first() {
            Some(e) => e.dim(),
            None => {
                return Err(BasisError::WrongCount {
                    expected: 1,
                    got: 0,
                })
            }
        };
        if elements.len() != dim * dim {
            return Err(BasisError::WrongCount {
                expected: dim * dim,
                got: elements.len(),
            });
        }
        for (at, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(BasisError::MixedDims {
                    expected: dim,
                    got: e.dim(),
                    at,
                });
            }
        }
        if !elements[0].is_identity() {
            return Err(BasisError::MissingIdentity);
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(BasisError::DuplicateLabel);
            }
        }
        Ok(ErrorBasis {
            dim,
            elements,
            labels,
        })
    }

    /// The shift and clock basis for `Z_n`, labeled per `labeling`.
    ///
    /// Elements are ordered with the first index major, so position
    /// `a * n + b` carries label `(a, b)` and position 0 is the identity.
    pub fn shift_clock(n: usize, labeling: Labeling) -> Result<ErrorBasis, BasisError> {
        if n < 2 {
            return Err(BasisError::InvalidDimension(n));
        }
        let nu = n as u64;
        let mut elements = Vec::with_capacity(n * n);
        let mut labels = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut perm = vec![0usize; n];
                let mut phases = vec![0u64; n];
                for z in 0..n {
                    match labeling {
                        // X^b D^a |z> = zeta^(a z) |z + b>
                        Labeling::PhaseShift => {
                            perm[z] = (z + b) % n;
                            phases[z] = (a as u64 * z as u64) % nu;
                        }
                        // D^a C^b |z> = zeta^(a (z - b)) |z - b>
                        Labeling::ClockPower => {
                            let t = (z + n - b) % n;
                            perm[z] = t;
                            phases[z] = (a as u64 * t as u64) % nu;
                        }
                    }
                }
                let m = MonomialMatrix::new(n, nu, perm, phases)
                    .expect("shift-clock data is a valid monomial matrix");
                elements.push(ExactOp::Mono(m));
                labels.push(Label::Zn(a as u32, b as u32));
            }
        }
        ErrorBasis::new(elements, labels)
    }

    /// A dimension-four basis whose index group is non-abelian: the sixteen
    /// lexicographically least coset representatives of a 32-element
    /// monomial group modulo its center `{I, -I}`. See [`egner_generators`].
    pub fn egner() -> ErrorBasis {
        let gens = egner_generators();
        let group = group_closure(&gens, 256).expect("closure stays within 32 elements");
        let center = group_center(&group);
        let reps = central_coset_representatives(&group, &center);
        let labels = (0..reps.len()).map(Label::Atom).collect();
        ErrorBasis::new(reps.into_iter().map(ExactOp::Mono).collect(), labels)
            .expect("coset representatives form a valid basis")
    }

    /// Tensor product basis; element `(i, j)` of the result is
    /// `E_i (x) F_j` with label `Pair`, ordered with `i` major.
    pub fn tensor(&self, rhs: &ErrorBasis) -> ErrorBasis {
        let mut elements = Vec::with_capacity(self.elements.len() * rhs.elements.len());
        let mut labels = Vec::with_capacity(elements.capacity());
        for (ea, la) in self.elements.iter().zip(&self.labels) {
            for (eb, lb) in rhs.elements.iter().zip(&rhs.labels) {
                elements.push(ea.tensor(eb));
                labels.push(Label::Pair(Box::new(la.clone()), Box::new(lb.clone())));
            }
        }
        ErrorBasis::new(elements, labels).expect("tensor of valid bases is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> &ExactOp {
        &self.elements[k]
    }

    pub fn elements(&self) -> &[ExactOp] {
        &self.elements
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.labels[k]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Checks `tr(E_i^* E_j) = n` for `i = j` and `0` otherwise, exactly.
    pub fn verify_orthonormal(&self) -> Result<(), BasisError> {
        let n = CycInt::from_int(self.dim as i64);
        for i in 0..self.elements.len() {
            for j in 0..self.elements.len() {
                let t = self.elements[i].adjoint().mul(&self.elements[j]).trace();
                let ok = if i == j { t == n } else { t.is_zero() };
                if !ok {
                    return Err(BasisError::NotOrthonormal { i, j, value: t });
                }
            }
        }
        Ok(())
    }

    /// Checks closure under products up to unimodular scalars and returns
    /// the full structure constant tables.
    ///
    /// Each product `E_i E_j` must be proportional to exactly one basis
    /// element, with a scalar `w` satisfying `w conj(w) = 1` exactly.
    pub fn verify_nice(&self) -> Result<StructureConstants, BasisError> {
        let len = self.elements.len();
        let n = num_bigint::BigInt::from(self.dim);
        let mut star = vec![vec![0usize; len]; len];
        let mut w = vec![vec![CycInt::zero(1); len]; len];
        for i in 0..len {
            for j in 0..len {
                let p = self.elements[i].mul(&self.elements[j]);
                let mut hit: Option<(usize, CycInt)> = None;
                for (k, cand) in self.elements.iter().enumerate() {
                    let ratio = match (&p, cand) {
                        (ExactOp::Mono(a), ExactOp::Mono(b)) => mono_ratio(a, b),
                        _ => {
                            let pd = p.to_dense();
                            if pd.proportional(&cand.to_dense()).is_none() {
                                None
                            } else {
                                // tr(E_k^* P) = w tr(E_k^* E_k) = w n when the
                                // basis is orthonormal; exact division makes
                                // any mismatch loud.
                                let t = cand.adjoint().to_dense().mul(&pd).trace();
                                match t.div_exact_int(&n) {
                                    Some(s) => Some(s),
                                    None => {
                                        return Err(BasisError::NotNice {
                                            i,
                                            j,
                                            why: format!(
                                                "matched element {} but the scalar is not exact",
                                                k
                                            ),
                                        })
                                    }
                                }
                            }
                        }
                    };
                    if let Some(s) = ratio {
                        if hit.is_some() {
                            return Err(BasisError::NotNice {
                                i,
                                j,
                                why: "proportional to more than one basis element".into(),
                            });
                        }
                        hit = Some((k, s));
                    }
                }
                let (k, s) = hit.ok_or_else(|| BasisError::NotNice {
                    i,
                    j,
                    why: "not proportional to any basis element".into(),
                })?;
                if !(&s * &s.conj()).is_one() {
                    return Err(BasisError::NotNice {
                        i,
                        j,
                        why: format!("coefficient {} is not unimodular", s),
                    });
                }
                star[i][j] = k;
                w[i][j] = s;
            }
        }
        Ok(StructureConstants { star, w })
    }

    /// Group axioms of the index product, plus commutativity.
    pub fn index_group(&self, sc: &StructureConstants) -> IndexGroupReport {
        group_table_report(&sc.star)
    }

    /// The two extra conditions on top of nice: unit determinants and
    /// scalars that are `n`-th roots of unity.
    pub fn verify_very_nice(&self, sc: &StructureConstants) -> VeryNiceReport {
        let mut determinant_witness = None;
        for (k, e) in self.elements.iter().enumerate() {
            let d = e.det();
            if !d.is_one() {
                determinant_witness = Some((k, d));
                break;
            }
        }
        let n = self.dim as u64;
        let mut coefficient_witness = None;
        'outer: for (i, row) in sc.w.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if !s.pow(n).is_one() {
                    coefficient_witness = Some((i, j, s.clone()));
                    break 'outer;
                }
            }
        }
        VeryNiceReport {
            unit_determinants: determinant_witness.is_none(),
            determinant_witness,
            coefficients_are_nth_roots: coefficient_witness.is_none(),
            coefficient_witness,
        }
    }

    /// Rescales each element by an exact root of unity so that all
    /// determinants become one, lifting phase orders as needed.
    ///
    /// Element `E` with `det E = zeta_M^s` is replaced by `s' E` where
    /// `s' = zeta_(M n)^(-s)`, so `det(s' E) = s'^n det E = 1`.
    pub fn normalize_det(&self) -> Result<ErrorBasis, BasisError> {
        let n = self.dim as u64;
        let mut elements = Vec::with_capacity(self.elements.len());
        for (index, e) in self.elements.iter().enumerate() {
            let d = e.det();
            if d.is_one() {
                elements.push(e.clone());
                continue;
            }
            let (m, s) =
                root_exponent(&d).ok_or(BasisError::DeterminantNotRoot { index })?;
            elements.push(e.scalar_root(m * n, m * n - s));
        }
        ErrorBasis::new(elements, self.labels.clone())
    }

    /// Coefficient numerators `t_k = tr(E_k^* A)`; the expansion itself is
    /// `A = (1/n) sum_k t_k E_k`.
    pub fn expand(&self, a: &DenseMatrix) -> Result<Vec<CycInt>, BasisError> {
        if a.dim() != self.dim {
            return Err(BasisError::DimMismatch {
                expected: self.dim,
                got: a.dim(),
            });
        }
        Ok(self
            .elements
            .iter()
            .map(|e| e.adjoint().to_dense().mul(a).trace())
            .collect())
    }

    /// Expands `A` and checks both exact identities: reconstruction
    /// `sum_k t_k E_k = n A` and the norm identity
    /// `sum_k t_k conj(t_k) = n tr(A^* A)`.
    pub fn verify_expansion(&self, a: &DenseMatrix) -> Result<ExpansionReport, BasisError> {
        let coefficients = self.expand(a)?;
        let n = self.dim;
        let mut acc = DenseMatrix::zero(n);
        for (t, e) in coefficients.iter().zip(&self.elements) {
            acc = acc.add(&e.to_dense().scalar_mul(t));
        }
        let reconstructs = acc == a.scalar_mul(&CycInt::from_int(n as i64));
        let mut lhs = CycInt::zero(1);
        for t in &coefficients {
            lhs = &lhs + &(t * &t.conj());
        }
        let rhs = &CycInt::from_int(n as i64) * &a.adjoint().mul(a).trace();
        Ok(ExpansionReport {
            coefficients,
            denominator: n as u64,
            reconstructs,
            norm_identity: lhs == rhs,
        })
    }
}

/// Writes a root of unity as `(order, exponent)` with the exponent found by
/// scanning the element's own order, doubled when odd so that `-1` is
/// representable.
fn root_exponent(c: &CycInt) -> Option<(u64, u64)> {
    let m = c.order();
    let m2 = if m % 2 == 1 { 2 * m } else { m };
    (0..m2).find(|&s| &CycInt::root_of_unity(m2, s as i64) == c).map(|s| (m2, s))
}

/// Generators of a 32-element monomial group in dimension four whose
/// central quotient indexes a very nice basis:
///
/// * `A = diag(1, -1, 1, -1)`,
/// * `B`: swaps `|0> <-> |1>` and `|2> <-> |3>` with phases `(1, zeta_4^3)`
///   and `(zeta_4, 1)` respectively, so `B^4 = -I`,
/// * `C`: swaps the two halves with the same phase pattern.
///
/// They satisfy `A^2 = C^2 = I`, `AB = -BA`, `AC = CA`, `BC = C B^(-1)`.
pub fn egner_generators() -> [MonomialMatrix; 3] {
    let a = MonomialMatrix::new(4, 4, vec![0, 1, 2, 3], vec![0, 2, 0, 2])
        .expect("valid monomial data");
    let b = MonomialMatrix::new(4, 4, vec![1, 0, 3, 2], vec![0, 3, 0, 1])
        .expect("valid monomial data");
    let c = MonomialMatrix::new(4, 4, vec![2, 3, 0, 1], vec![0, 3, 0, 1])
        .expect("valid monomial data");
    [a, b, c]
}

/// Closes a generating set under products, starting from the identity.
/// Returns the elements sorted by their phase-order-normalized encoding,
/// which puts the identity first.
pub fn group_closure(
    gens: &[MonomialMatrix],
    cap: usize,
) -> Result<Vec<MonomialMatrix>, BasisError> {
    assert!(!gens.is_empty(), "need at least one generator");
    let dim = gens[0].dim();
    let mut seen: HashSet<MonomialMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    let identity = MonomialMatrix::identity(dim);
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.mul(h);
            if seen.insert(gh.clone()) {
                if seen.len() > cap {
                    return Err(BasisError::ClosureCapExceeded { cap });
                }
                queue.push_back(gh);
            }
        }
    }
    let mut elems: Vec<MonomialMatrix> = seen.into_iter().collect();
    let m = elems.iter().fold(1u64, |acc, e| acc.lcm(&e.order()));
    elems.sort_by_key(|e| e.encoding_at(m));
    Ok(elems)
}

/// Elements of `elems` commuting with every element.
pub fn group_center(elems: &[MonomialMatrix]) -> Vec<MonomialMatrix> {
    elems
        .iter()
        .filter(|z| elems.iter().all(|g| z.mul(g) == g.mul(z)))
        .cloned()
        .collect()
}

/// One representative per coset of the center, each the encoding-least
/// element of its coset. Assumes `elems` is sorted as [`group_closure`]
/// returns it, so the identity represents the center itself.
pub fn central_coset_representatives(
    elems: &[MonomialMatrix],
    center: &[MonomialMatrix],
) -> Vec<MonomialMatrix> {
    let mut reps = Vec::new();
    let mut seen: HashSet<MonomialMatrix> = HashSet::new();
    for g in elems {
        if seen.contains(g) {
            continue;
        }
        reps.push(g.clone());
        for z in center {
            seen.insert(z.mul(g));
        }
    }
    reps
}

/// Group axioms for a finite multiplication table, with index 0 expected to
/// be the two-sided identity.
pub fn group_table_report(table: &[Vec<usize>]) -> IndexGroupReport {
    let n = table.len();
    let identity = (0..n).all(|j| table[0][j] == j && table[j][0] == j);
    let inverses =
        (0..n).all(|i| (0..n).any(|j| table[i][j] == 0 && table[j][i] == 0));
    let mut associative = true;
    'assoc: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    associative = false;
                    break 'assoc;
                }
            }
        }
    }
    let abelian = (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]));
    IndexGroupReport {
        identity,
        inverses,
        associative,
        abelian,
    }
}

/// Index of the two-sided identity of a multiplication table, if present.
fn identity_of(table: &[Vec<usize>]) -> Option<usize> {
    (0..table.len()).find(|&e| (0..table.len()).all(|x| table[e][x] == x && table[x][e] == x))
}

/// Multiplicative order of each element of a group table.
pub fn element_orders(table: &[Vec<usize>]) -> Vec<usize> {
    let e = identity_of(table).expect("table has an identity");
    (0..table.len())
        .map(|x| {
            let mut y = x;
            let mut ord = 1usize;
            while y != e {
                y = table[y][x];
                ord += 1;
                assert!(ord <= table.len(), "table is not a group table");
            }
            ord
        })
        .collect()
}

/// Histogram of element orders, a cheap isomorphism invariant.
pub fn order_profile(table: &[Vec<usize>]) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    for ord in element_orders(table) {
        *profile.entry(ord).or_insert(0) += 1;
    }
    profile
}

/// Multiplication table of `Z_2 x D_4`, order sixteen: elements are triples
/// `(s, r, f)` with central `s` in `Z_2`, rotation `r` in `Z_4` and flip
/// `f` in `Z_2`, indexed as `s*8 + r*2 + f`.
pub fn z2_d4_table() -> Vec<Vec<usize>> {
    let unpack = |x: usize| (x / 8, (x / 2) % 4, x % 2);
    let mut table = vec![vec![0usize; 16]; 16];
    for x in 0..16 {
        for y in 0..16 {
            let (s1, r1, f1) = unpack(x);
            let (s2, r2, f2) = unpack(y);
            let r2t = if f1 == 1 { (4 - r2) % 4 } else { r2 };
            table[x][y] = ((s1 + s2) % 2) * 8 + ((r1 + r2t) % 4) * 2 + (f1 + f2) % 2;
        }
    }
    table
}

/// Closure of a generating set inside a group table, from the identity.
fn generated_by(table: &[Vec<usize>], gens: &[usize], e: usize) -> HashSet<usize> {
    let mut span = HashSet::from([e]);
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let xg = table[x][g];
            if span.insert(xg) {
                queue.push_back(xg);
            }
        }
    }
    span
}

/// Searches for an explicit isomorphism between two group tables. Returns
/// the image list `phi` (element `x` of `a` maps to `phi[x]` in `b`), or
/// `None` when the groups are not isomorphic.
///
/// The search fixes a small generating set of `a`, tries images in `b` of
/// matching element order, extends each candidate assignment to the whole
/// group along a fixed factorization into generators, and keeps the first
/// extension that is a bijective homomorphism.
pub fn find_isomorphism(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let ea = identity_of(a)?;
    let eb = identity_of(b)?;
    let orders_a = element_orders(a);
    let orders_b = element_orders(b);
    {
        let mut pa: Vec<usize> = orders_a.clone();
        let mut pb: Vec<usize> = orders_b.clone();
        pa.sort_unstable();
        pb.sort_unstable();
        if pa != pb {
            return None;
        }
    }

    // Greedy generating set of `a`.
    let mut gens: Vec<usize> = Vec::new();
    let mut span = HashSet::from([ea]);
    for x in 0..n {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        span = generated_by(a, &gens, ea);
        if span.len() == n {
            break;
        }
    }

    // Express every element of `a` as parent * generator, breadth-first.
    let mut expr: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut bfs_order = vec![ea];
    let mut queued = vec![false; n];
    queued[ea] = true;
    let mut head = 0;
    while head < bfs_order.len() {
        let x = bfs_order[head];
        head += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let xg = a[x][g];
            if !queued[xg] {
                queued[xg] = true;
                expr[xg] = Some((x, gi));
                bfs_order.push(xg);
            }
        }
    }

    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&y| orders_b[y] == orders_a[g]).collect())
        .collect();

    fn extend(
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        gens: &[usize],
        images: &[usize],
        bfs_order: &[usize],
        expr: &[Option<(usize, usize)>],
        ea: usize,
        eb: usize,
    ) -> Option<Vec<usize>> {
        let n = a.len();
        let mut phi = vec![usize::MAX; n];
        phi[ea] = eb;
        for &x in bfs_order {
            if let Some((parent, gi)) = expr[x] {
                phi[x] = b[phi[parent]][images[gi]];
            }
        }
        let mut hit = vec![false; n];
        for &y in &phi {
            if y == usize::MAX || hit[y] {
                return None;
            }
            hit[y] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if phi[a[x][y]] != b[phi[x]][phi[y]] {
                    return None;
                }
            }
        }
        let _ = gens;
        Some(phi)
    }

    let mut images = vec![0usize; gens.len()];
    fn dfs(
        depth: usize,
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        bfs_order: &[usize],
        expr: &[Option<(usize, usize)>],
        ea: usize,
        eb: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return extend(a, b, gens, images, bfs_order, expr, ea, eb);
        }
        for &y in &candidates[depth] {
            if images[..depth].contains(&y) {
                continue;
            }
            images[depth] = y;
            if let Some(phi) = dfs(
                depth + 1,
                a,
                b,
                gens,
                candidates,
                images,
                bfs_order,
                expr,
                ea,
                eb,
            ) {
                return Some(phi);
            }
        }
        None
    }

    dfs(
        0,
        a,
        b,
        &gens,
        &candidates,
        &mut images,
        &bfs_order,
        &expr,
        ea,
        eb,
    )
}
