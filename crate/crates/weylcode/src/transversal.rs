//! Transversal logical gates: operations that factor over sites yet act
//! as clean logical operators on the code space.
//!
//! Three single-register gates and one two-register gate are built from a
//! [`PuncturedQuantumCode`]:
//!
//! * the increment, one shift power per site given by the unit word, which
//!   steps the logical basis cyclically;
//! * the phase gate, one clock power per site given by a punctured dual
//!   word pairing to one with the unit word, which is diagonal in the
//!   logical basis with eigenvalue the matching root of unity;
//! * the sitewise Fourier transform, defined for self-dual input codes,
//!   which induces a (conjugated) Fourier transform on the logical basis;
//! * the sitewise controlled add, which adds the first logical register
//!   into the second exactly.
//!
//! [`logical_action`] projects a gate's action back onto the logical basis
//! with exact coefficients and checks that nothing leaks out of the code
//! space; [`verify_gate`] compares the projected matrix against the
//! predicted one, up to an overall scalar.

use thiserror::Error;

use crate::cyclotomic::CycInt;
use crate::exactmat::{decode_index, DenseMatrix, MatError, MonomialMatrix, StateVector};
use crate::qcode::{ErrorIndex, PuncturedQuantumCode, QcodeError};
use crate::zncodes::dot;

/// Errors from constructing or applying transversal gates.
#[derive(Debug, Error)]
pub enum TransversalError {
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Code(#[from] QcodeError),
    #[error("the sitewise Fourier gate needs a self-dual input code")]
    NotSelfDual,
    #[error("no punctured dual word pairs to one with the unit word")]
    NoPhaseVector,
    #[error("gate expects a state over {expected} sites, got {got}")]
    SiteCount { expected: usize, got: usize },
    #[error("gate expects dimension-{expected} sites, got {got}")]
    SiteDim { expected: u32, got: u32 },
}

/// The gates this module knows how to build and verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Increment,
    Phase,
    Fourier,
    ControlledAdd,
}

impl GateKind {
    pub const ALL: [GateKind; 4] = [
        GateKind::Increment,
        GateKind::Phase,
        GateKind::Fourier,
        GateKind::ControlledAdd,
    ];

    /// How many logical registers the gate acts on.
    pub fn registers(&self) -> usize {
        match self {
            GateKind::ControlledAdd => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for GateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GateKind::Increment => "increment",
            GateKind::Phase => "phase",
            GateKind::Fourier => "fourier",
            GateKind::ControlledAdd => "cadd",
        })
    }
}

/// How a gate acts on the physical sites.
#[derive(Debug, Clone)]
pub enum GateAction {
    /// One monomial operator per site.
    Monomial(Vec<MonomialMatrix>),
    /// One dense operator per site.
    Dense(Vec<DenseMatrix>),
    /// On a two-register state, add each site of the first register into
    /// the matching site of the second: `|u>|v| -> |u>|u + v>`.
    PairwiseAdd { n: u32, sites: usize },
}

/// A transversal gate, ready to apply to exact states.
#[derive(Debug, Clone)]
pub struct TransversalGate {
    pub kind: GateKind,
    pub action: GateAction,
}

impl TransversalGate {
    /// Total number of physical sites the gate acts on.
    pub fn sites(&self) -> usize {
        match &self.action {
            GateAction::Monomial(ops) => ops.len(),
            GateAction::Dense(ops) => ops.len(),
            GateAction::PairwiseAdd { sites, .. } => 2 * sites,
        }
    }
}

/// The per-site shift powers given by the unit word: steps logical state
/// `i` to `i + 1` exactly, with no phase.
pub fn logical_increment(code: &PuncturedQuantumCode) -> Result<TransversalGate, TransversalError> {
    let idx = ErrorIndex {
        x: vec![0; code.length()],
        y: code.unit_word_punctured().to_vec(),
    };
    Ok(TransversalGate {
        kind: GateKind::Increment,
        action: GateAction::Monomial(code.error_operators(&idx)?),
    })
}

/// The lexicographically least punctured dual word whose product with the
/// unit word is one mod n; the phase gate exponentiates it sitewise.
pub fn phase_vector(code: &PuncturedQuantumCode) -> Result<Vec<u32>, TransversalError> {
    let n = code.n();
    let e = code.unit_word_punctured();
    code.punctured_dual()
        .words()
        .iter()
        .find(|w| dot(w, e, n) == 1)
        .cloned()
        .ok_or(TransversalError::NoPhaseVector)
}

/// The per-site clock powers given by [`phase_vector`]: diagonal on the
/// logical basis with eigenvalue `zeta_n^i` on state `i`.
pub fn logical_phase(code: &PuncturedQuantumCode) -> Result<TransversalGate, TransversalError> {
    let idx = ErrorIndex {
        x: phase_vector(code)?,
        y: vec![0; code.length()],
    };
    Ok(TransversalGate {
        kind: GateKind::Phase,
        action: GateAction::Monomial(code.error_operators(&idx)?),
    })
}

/// The unnormalized Fourier matrix on every site, `F[j][k] = zeta_n^(jk)`.
/// Requires the input code to equal its dual; the induced logical map is
/// proportional to `|i> -> sum_t zeta^(i s t) |t>` with `s` the self
/// product of the unit word (which is `-1 mod n` for self-dual codes).
pub fn transversal_fourier(
    code: &PuncturedQuantumCode,
) -> Result<TransversalGate, TransversalError> {
    if code.classical_code() != code.classical_dual() {
        return Err(TransversalError::NotSelfDual);
    }
    let f = DenseMatrix::fourier(code.n() as usize);
    Ok(TransversalGate {
        kind: GateKind::Fourier,
        action: GateAction::Dense(vec![f; code.length()]),
    })
}

/// The sitewise controlled add on two code blocks: maps logical
/// `|i>|j>` to `|i>|i + j>` exactly.
pub fn logical_cadd(code: &PuncturedQuantumCode) -> TransversalGate {
    TransversalGate {
        kind: GateKind::ControlledAdd,
        action: GateAction::PairwiseAdd {
            n: code.n(),
            sites: code.length(),
        },
    }
}

/// Builds the gate of the given kind for a code.
pub fn build_gate(
    code: &PuncturedQuantumCode,
    kind: GateKind,
) -> Result<TransversalGate, TransversalError> {
    match kind {
        GateKind::Increment => logical_increment(code),
        GateKind::Phase => logical_phase(code),
        GateKind::Fourier => transversal_fourier(code),
        GateKind::ControlledAdd => Ok(logical_cadd(code)),
    }
}

/// Applies a gate to a state, exactly.
pub fn apply_gate(
    gate: &TransversalGate,
    state: &StateVector,
) -> Result<StateVector, TransversalError> {
    match &gate.action {
        GateAction::Monomial(ops) => Ok(state.apply_mono(ops)?),
        GateAction::Dense(ops) => Ok(state.apply_dense(ops)?),
        GateAction::PairwiseAdd { n, sites } => {
            let dims = state.dims().to_vec();
            if dims.len() != 2 * sites {
                return Err(TransversalError::SiteCount {
                    expected: 2 * sites,
                    got: dims.len(),
                });
            }
            if let Some(&d) = dims.iter().find(|&&d| d != *n) {
                return Err(TransversalError::SiteDim {
                    expected: *n,
                    got: d,
                });
            }
            let mut out = StateVector::new(dims.clone());
            for (idx, amp) in state.terms() {
                let mut digits = decode_index(&dims, idx);
                for i in 0..*sites {
                    digits[sites + i] = (digits[sites + i] + digits[i]) % n;
                }
                out.add_term(&digits, amp.clone())?;
            }
            Ok(out)
        }
    }
}

/// The exact projection of a gate's action onto the logical basis.
#[derive(Debug, Clone)]
pub struct LogicalActionReport {
    pub registers: usize,
    /// `numerators[t][i]` is the inner product of logical basis state `t`
    /// with the image of logical basis state `i`; divide by `denominator`
    /// for the actual coefficient.
    pub numerators: Vec<Vec<CycInt>>,
    pub denominator: u64,
    /// Whether every image was exactly a combination of logical states.
    pub in_code_space: bool,
    pub failure: Option<String>,
}

fn logical_basis(code: &PuncturedQuantumCode, registers: usize) -> Vec<StateVector> {
    let n = code.n();
    match registers {
        1 => (0..n).map(|i| code.logical_state(i)).collect(),
        _ => (0..n)
            .flat_map(|i| {
                (0..n).map(move |j| code.logical_state(i).tensor(&code.logical_state(j)))
            })
            .collect(),
    }
}

/// Applies `gate` to every logical basis state (or pair of states for a
/// two-register gate) and projects the images back, checking exactly that
/// nothing lies outside the code space.
pub fn logical_action(
    code: &PuncturedQuantumCode,
    gate: &TransversalGate,
) -> Result<LogicalActionReport, TransversalError> {
    let registers = gate.kind.registers();
    let basis = logical_basis(code, registers);
    let den_scalar = CycInt::from_int(
        (code.shortened().size() as i64).pow(registers as u32),
    );
    let mut numerators = vec![vec![CycInt::zero(1); basis.len()]; basis.len()];
    let mut in_code_space = true;
    let mut failure = None;
    for (i, input) in basis.iter().enumerate() {
        let image = apply_gate(gate, input)?;
        let mut reconstruction = StateVector::new(image.dims().to_vec());
        for (t, b) in basis.iter().enumerate() {
            let num = b.inner(&image)?;
            reconstruction = reconstruction.add(&b.scalar_mul(&num))?;
            numerators[t][i] = num;
        }
        if in_code_space && !image.scalar_mul(&den_scalar).sub(&reconstruction)?.is_zero() {
            in_code_space = false;
            failure = Some(format!("the image of logical basis state {} leaks", i));
        }
    }
    Ok(LogicalActionReport {
        registers,
        numerators,
        denominator: (code.shortened().size() as u64).pow(registers as u32),
        in_code_space,
        failure,
    })
}

/// The predicted logical matrix for each gate kind, up to overall scale:
/// a cyclic step for the increment, `diag(zeta^i)` for the phase gate,
/// `zeta^(i s t)` with `s` the unit word's self product for the Fourier
/// gate, and the permutation `|i>|j> -> |i>|i + j>` for the controlled
/// add.
pub fn expected_logical_matrix(code: &PuncturedQuantumCode, kind: GateKind) -> Vec<Vec<CycInt>> {
    let n = code.n();
    let one = CycInt::from_int(1);
    let zero = CycInt::zero(1);
    match kind {
        GateKind::Increment => (0..n)
            .map(|t| {
                (0..n)
                    .map(|i| if t == (i + 1) % n { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect(),
        GateKind::Phase => (0..n)
            .map(|t| {
                (0..n)
                    .map(|i| {
                        if t == i {
                            CycInt::root_of_unity(n as u64, i as i64)
                        } else {
                            zero.clone()
                        }
                    })
                    .collect()
            })
            .collect(),
        GateKind::Fourier => {
            let s = dot(
                code.unit_word_punctured(),
                code.unit_word_punctured(),
                n,
            ) as u64;
            (0..n as u64)
                .map(|t| {
                    (0..n as u64)
                        .map(|i| CycInt::root_of_unity(n as u64, (i * s % n as u64 * t % n as u64) as i64))
                        .collect()
                })
                .collect()
        }
        GateKind::ControlledAdd => {
            let m = (n * n) as usize;
            let mut out = vec![vec![zero; m]; m];
            for i in 0..n {
                for j in 0..n {
                    let col = (i * n + j) as usize;
                    let row = (i * n + (i + j) % n) as usize;
                    out[row][col] = one.clone();
                }
            }
            out
        }
    }
}

/// Whether two matrices are equal up to one overall nonzero scalar, by
/// cross-multiplication against the first nonzero entry.
pub fn matrix_proportional(a: &[Vec<CycInt>], b: &[Vec<CycInt>]) -> bool {
    if a.len() != b.len() || a.iter().zip(b.iter()).any(|(r, s)| r.len() != s.len()) {
        return false;
    }
    let mut pivot = None;
    'scan: for (r, row) in b.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if !cell.is_zero() {
                pivot = Some((r, c));
                break 'scan;
            }
        }
    }
    let Some((pr, pc)) = pivot else {
        return a.iter().all(|row| row.iter().all(|cell| cell.is_zero()));
    };
    let num = &a[pr][pc];
    if num.is_zero() {
        return false;
    }
    let den = &b[pr][pc];
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (ca, cb) in ra.iter().zip(rb.iter()) {
            if &(ca * den) != &(cb * num) {
                return false;
            }
        }
    }
    true
}

/// One gate, fully verified: its exact logical action, the prediction, and
/// the comparison verdict.
#[derive(Debug, Clone)]
pub struct GateVerification {
    pub kind: GateKind,
    pub report: LogicalActionReport,
    pub expected: Vec<Vec<CycInt>>,
    pub matches_expected: bool,
}

impl GateVerification {
    pub fn pass(&self) -> bool {
        self.report.in_code_space && self.matches_expected
    }
}

/// Builds the gate, projects its action and compares with the prediction.
pub fn verify_gate(
    code: &PuncturedQuantumCode,
    kind: GateKind,
) -> Result<GateVerification, TransversalError> {
    let gate = build_gate(code, kind)?;
    let report = logical_action(code, &gate)?;
    let expected = expected_logical_matrix(code, kind);
    let matches_expected = matrix_proportional(&report.numerators, &expected);
    Ok(GateVerification {
        kind,
        report,
        expected,
        matches_expected,
    })
}

/// Checks `F D^k F^* = n C^k` for `k` in `0..n`, where `D` is the clock,
/// `C` the inverse shift and `F` the unnormalized Fourier matrix: the
/// conjugation that swaps the two kinds of error generators.
pub fn verify_fourier_conjugation(n: usize) -> bool {
    let f = DenseMatrix::fourier(n);
    let f_adj = f.adjoint();
    let clock = MonomialMatrix::clock(n);
    let c = MonomialMatrix::shift(n).adjoint();
    let scale = CycInt::from_int(n as i64);
    (0..n as u64).all(|k| {
        let lhs = f.mul(&clock.pow(k).to_dense()).mul(&f_adj);
        let rhs = c.pow(k).to_dense().scalar_mul(&scale);
        lhs.sub(&rhs).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcode::build_code;
    use crate::zncodes::{
        extended_hamming_8_4, tetracode_4_2, LinearCodeZn, DEFAULT_ENUMERATION_CAP,
    };

    const CAP: u64 = DEFAULT_ENUMERATION_CAP;

    fn steane() -> PuncturedQuantumCode {
        build_code(&extended_hamming_8_4(), CAP).unwrap()
    }

    fn tetra() -> PuncturedQuantumCode {
        build_code(&tetracode_4_2(), CAP).unwrap()
    }

    fn lopsided() -> PuncturedQuantumCode {
        let c = LinearCodeZn::new(2, 3, vec![vec![1, 1, 0], vec![0, 1, 1]], CAP).unwrap();
        build_code(&c, CAP).unwrap()
    }

    #[test]
    fn unit_words_self_product_is_minus_one_for_self_dual_codes() {
        for code in [steane(), tetra()] {
            let e = code.unit_word_punctured();
            assert_eq!(dot(e, e, code.n()), code.n() - 1);
        }
    }

    #[test]
    fn increment_steps_the_logical_basis_exactly() {
        for code in [steane(), tetra(), lopsided()] {
            let gate = logical_increment(&code).unwrap();
            for i in 0..code.n() {
                let image = apply_gate(&gate, &code.logical_state(i)).unwrap();
                let next = code.logical_state((i + 1) % code.n());
                assert!(image.sub(&next).unwrap().is_zero(), "exact step, no phase");
            }
            let v = verify_gate(&code, GateKind::Increment).unwrap();
            assert!(v.pass());
        }
    }

    #[test]
    fn phase_vectors_are_frozen_and_give_clock_eigenvalues() {
        let code = steane();
        // For this code the unit word itself pairs to one.
        assert_eq!(phase_vector(&code).unwrap(), vec![0, 0, 1, 0, 1, 1, 0]);
        assert_eq!(phase_vector(&code).unwrap(), code.unit_word_punctured());

        let t = tetra();
        assert_eq!(phase_vector(&t).unwrap(), vec![0, 2, 1]);

        for code in [steane(), tetra(), lopsided()] {
            let gate = logical_phase(&code).unwrap();
            for i in 0..code.n() {
                let state = code.logical_state(i);
                let image = apply_gate(&gate, &state).unwrap();
                let scaled =
                    state.scalar_mul(&CycInt::root_of_unity(code.n() as u64, i as i64));
                assert!(image.sub(&scaled).unwrap().is_zero());
            }
            let v = verify_gate(&code, GateKind::Phase).unwrap();
            assert!(v.pass());
        }
    }

    #[test]
    fn fourier_needs_a_self_dual_code() {
        for code in [steane(), tetra()] {
            let v = verify_gate(&code, GateKind::Fourier).unwrap();
            assert!(v.report.in_code_space);
            assert!(v.matches_expected);
        }
        match transversal_fourier(&lopsided()) {
            Err(TransversalError::NotSelfDual) => {}
            other => panic!("expected a self-duality error, got {:?}", other),
        }
    }

    #[test]
    fn fourier_squares_to_a_scaled_reflection() {
        // Per site: F^2 = n R with R the index reflection.
        for n in 2..=6usize {
            let f = DenseMatrix::fourier(n);
            let perm = (0..n).map(|z| (n - z) % n).collect();
            let r = MonomialMatrix::new(n, 1, perm, vec![0; n]).unwrap();
            let rhs = r.to_dense().scalar_mul(&CycInt::from_int(n as i64));
            assert!(f.mul(&f).sub(&rhs).is_zero());
        }
        // On the code: applying the gate twice reflects the logical index
        // and scales by n^l.
        let code = tetra();
        let gate = transversal_fourier(&code).unwrap();
        let scale = CycInt::from_int(27);
        for i in 0..3u32 {
            let twice =
                apply_gate(&gate, &apply_gate(&gate, &code.logical_state(i)).unwrap()).unwrap();
            let reflected = code.logical_state((3 - i) % 3).scalar_mul(&scale);
            assert!(twice.sub(&reflected).unwrap().is_zero());
        }
    }

    #[test]
    fn controlled_add_is_exact_on_logical_pairs() {
        for code in [steane(), tetra(), lopsided()] {
            let gate = logical_cadd(&code);
            for i in 0..code.n() {
                for j in 0..code.n() {
                    let input = code.logical_state(i).tensor(&code.logical_state(j));
                    let image = apply_gate(&gate, &input).unwrap();
                    let want = code
                        .logical_state(i)
                        .tensor(&code.logical_state((i + j) % code.n()));
                    assert!(image.sub(&want).unwrap().is_zero());
                }
            }
            let v = verify_gate(&code, GateKind::ControlledAdd).unwrap();
            assert!(v.pass());
            assert_eq!(v.report.denominator, (code.shortened().size() as u64).pow(2));
        }
    }

    #[test]
    fn fourier_conjugation_swaps_clock_and_shift() {
        for n in 2..=12 {
            assert!(verify_fourier_conjugation(n), "n = {}", n);
        }
    }

    #[test]
    fn gates_reject_mismatched_states() {
        let code = steane();
        let gate = logical_increment(&code).unwrap();
        let wrong = StateVector::basis_state(vec![2; 3], &[0, 0, 0]).unwrap();
        assert!(apply_gate(&gate, &wrong).is_err());

        let cadd = logical_cadd(&code);
        let single = code.logical_state(0);
        match apply_gate(&cadd, &single) {
            Err(TransversalError::SiteCount { expected: 14, got: 7 }) => {}
            other => panic!("expected a site count error, got {:?}", other),
        }

        let tetra_states = tetra().logical_state(0);
        let mismatched = tetra_states.tensor(&tetra().logical_state(1));
        match apply_gate(&cadd, &mismatched) {
            Err(TransversalError::SiteCount { .. }) | Err(TransversalError::SiteDim { .. }) => {}
            other => panic!("expected a shape error, got {:?}", other),
        }
    }

    #[test]
    fn expected_matrices_have_the_right_shape() {
        let code = tetra();
        assert_eq!(expected_logical_matrix(&code, GateKind::Increment).len(), 3);
        assert_eq!(
            expected_logical_matrix(&code, GateKind::ControlledAdd).len(),
            9
        );
        // The Fourier prediction uses s = -1 for self-dual codes: entry
        // (t, i) is zeta^(-it).
        let m = expected_logical_matrix(&code, GateKind::Fourier);
        assert_eq!(m[1][1], CycInt::root_of_unity(3, 2));
        assert_eq!(m[2][1], CycInt::root_of_unity(3, 1));
    }

    #[test]
    fn matrix_proportionality_is_projective() {
        let a = expected_logical_matrix(&tetra(), GateKind::Fourier);
        let mut b: Vec<Vec<CycInt>> = a
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c * &CycInt::from_int(5))
                    .collect()
            })
            .collect();
        assert!(matrix_proportional(&a, &b));
        b[0][0] = CycInt::from_int(4);
        assert!(!matrix_proportional(&a, &b));
        assert!(!matrix_proportional(&a[..1], &a));
    }
}
