//! Quantum codes built from linear codes over `Z_n` by puncturing.
//!
//! Starting from a classical code `C` of length `L` over `Z_n` whose last
//! coordinate takes every value, four derived codes of length `l = L - 1`
//! are formed: the puncturing `C'` and shortening `C'_0` of `C`, and the
//! puncturing `D'` and shortening `D'_0` of the dual `D = dual(C)`. The
//! codewords of `C'` split into `n` disjoint cosets `C'_0 + i e'_1`, where
//! `e'_1` is a punctured codeword whose deleted coordinate was 1, and the
//! `i`-th logical state is the unnormalized superposition of the `i`-th
//! coset. Stabilizer generators are phase-type indices from one shortened
//! code and shift-type indices from the other; both assignments are tried
//! and verified against the eigenspace condition.
//!
//! Error operators are indexed by pairs `(x, y)` of vectors acting per site
//! as `X^(y_i) D^(x_i)`. Everything downstream is exact: eigenvalues,
//! error-pair inner products, syndromes, recovery and residual logical
//! action are all computed in cyclotomic integer arithmetic, with a closed
//! formula for the inner products cross-checked against the brute-force
//! route on small codes.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use thiserror::Error;

use crate::cyclotomic::CycInt;
use crate::exactmat::{MatError, MonomialMatrix, StateVector};
use crate::zncodes::{dot, CodeError, LinearCodeZn};

/// Errors from quantum code construction and verification.
#[derive(Debug, Error)]
pub enum QcodeError {
    #[error(transparent)]
    Classical(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error("the last coordinate of the input code must take every value mod n")]
    NotSurjective,
    #[error("duality relation {relation} failed")]
    DualityChainBroken { relation: &'static str },
    #[error("coset structure broken: {detail}")]
    CosetStructureBroken { detail: String },
    #[error("stabilizer generators {i} and {j} do not commute")]
    NonCommutingGenerators { i: usize, j: usize },
    #[error("no generator assignment fixes the logical states: {detail}")]
    EigenspaceBroken { detail: String },
    #[error("error index has wrong shape: expected {expected} sites, got {got}")]
    IndexShape { expected: usize, got: usize },
    #[error("error index entry {value} is out of range mod {n}")]
    IndexRange { value: u32, n: u32 },
    #[error("syndrome collision between {first} and {second}")]
    SyndromeCollision { first: String, second: String },
    #[error("state is not an eigenvector of generator {generator}")]
    StateNotStabilized { generator: usize },
    #[error("state after correction lies outside the code space")]
    StateOutsideCodeSpace,
}

/// An error operator index: `E(x, y)` acts per site as `X^(y_i) D^(x_i)`,
/// so `x` is the phase part and `y` the shift part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ErrorIndex {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl ErrorIndex {
    pub fn zero(length: usize) -> ErrorIndex {
        ErrorIndex {
            x: vec![0; length],
            y: vec![0; length],
        }
    }

    /// Number of sites where either component is nonzero.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(self.y.iter())
            .filter(|&(&a, &b)| a != 0 || b != 0)
            .count()
    }

    pub fn is_zero(&self) -> bool {
        self.weight() == 0
    }
}

impl std::fmt::Display for ErrorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("")
        };
        write!(f, "x:{} y:{}", join(&self.x), join(&self.y))
    }
}

/// Symplectic product `(y . x' - x . y') mod n` of two indices. Two error
/// operators commute up to the scalar it exponentiates:
/// `E(d') E(d) = zeta_n^sp(d, d') E(d) E(d')`.
pub fn symplectic_product(d: &ErrorIndex, dp: &ErrorIndex, n: u32) -> u32 {
    let a = dot(&d.y, &dp.x, n);
    let b = dot(&d.x, &dp.y, n);
    (a + n - b) % n
}

/// All error indices of weight up to `max_weight`, in a fixed order:
/// weight ascending, then site combinations lexicographically, then
/// per-site values `(x, y)` lexicographically with the last chosen site
/// varying fastest. The zero index comes first.
pub fn enumerate_error_indices(n: u32, length: usize, max_weight: usize) -> Vec<ErrorIndex> {
    let mut out = vec![ErrorIndex::zero(length)];
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != 0 || y != 0)
        .collect();
    for w in 1..=max_weight.min(length) {
        let mut sites: Vec<usize> = (0..w).collect();
        loop {
            // Odometer over value assignments for the chosen sites.
            let mut pick = vec![0usize; w];
            loop {
                let mut idx = ErrorIndex::zero(length);
                for (slot, &site) in sites.iter().enumerate() {
                    let (x, y) = pairs[pick[slot]];
                    idx.x[site] = x;
                    idx.y[site] = y;
                }
                out.push(idx);
                let mut pos = w;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    pick[pos] += 1;
                    if pick[pos] < pairs.len() {
                        break;
                    }
                    pick[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX {
                    break;
                }
            }
            // Next combination of sites in lexicographic order.
            let mut i = w;
            loop {
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
                i -= 1;
                if sites[i] != i + length - w {
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
            sites[i] += 1;
            for j in i + 1..w {
                sites[j] = sites[j - 1] + 1;
            }
        }
    }
    out
}

/// Which shortened code feeds the phase side of the stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Phase indices from `C'_0`, shift indices from `D'_0`.
    Literal,
    /// Phase indices from `D'_0`, shift indices from `C'_0`.
    Swapped,
}

/// Eigenvalue table of the stabilizer generators on the logical states.
#[derive(Debug, Clone)]
pub struct EigenReport {
    /// One eigenvalue per generator, constant across logical states.
    pub lambdas: Vec<CycInt>,
    pub pass: bool,
    /// Human-readable reason for the first failure, if any.
    pub failure: Option<String>,
}

/// A quantum code obtained by puncturing a classical code over `Z_n`.
#[derive(Debug, Clone)]
pub struct PuncturedQuantumCode {
    n: u32,
    length: usize,
    c_full: LinearCodeZn,
    d_full: LinearCodeZn,
    c_prime: LinearCodeZn,
    c_zero: LinearCodeZn,
    d_prime: LinearCodeZn,
    d_zero: LinearCodeZn,
    e_unit: Vec<u32>,
    e_unit_punctured: Vec<u32>,
    convention: Convention,
    generators: Vec<ErrorIndex>,
}

/// Builds and fully verifies the quantum code derived from `c`, trying the
/// literal generator assignment first and falling back to the swapped one.
///
/// Checks, in order: the last coordinate of `c` is surjective; the four
/// duality relations between punctured and shortened codes; the coset
/// decomposition of `C'`; commutation of the stabilizer generators; and
/// the eigenspace condition with eigenvalue exactly one.
pub fn build_code(c: &LinearCodeZn, cap: u64) -> Result<PuncturedQuantumCode, QcodeError> {
    build_code_with_convention(c, cap, None)
}

/// [`build_code`] with the generator assignment pinned: `Some(convention)`
/// tries only that assignment and fails if its eigenspace check does.
pub fn build_code_with_convention(
    c: &LinearCodeZn,
    cap: u64,
    forced: Option<Convention>,
) -> Result<PuncturedQuantumCode, QcodeError> {
    let n = c.n();
    if !c.last_coord_surjective() {
        return Err(QcodeError::NotSurjective);
    }
    let e_unit = c.find_unit_last_word()?;
    let e_unit_punctured = e_unit[..c.length() - 1].to_vec();

    let d_full = c.dual(cap)?;
    let c_prime = c.puncture_last(cap)?;
    let c_zero = c.shorten_last()?;
    let d_prime = d_full.puncture_last(cap)?;
    let d_zero = d_full.shorten_last()?;

    // Four duality relations, each checked literally.
    if c_prime.dual(cap)? != d_zero {
        return Err(QcodeError::DualityChainBroken {
            relation: "dual(puncture(C)) = shorten(dual(C))",
        });
    }
    if c_zero.dual(cap)? != d_prime {
        return Err(QcodeError::DualityChainBroken {
            relation: "dual(shorten(C)) = puncture(dual(C))",
        });
    }
    if d_prime.dual(cap)? != c_zero {
        return Err(QcodeError::DualityChainBroken {
            relation: "dual(puncture(dual(C))) = shorten(C)",
        });
    }
    if d_zero.dual(cap)? != c_prime {
        return Err(QcodeError::DualityChainBroken {
            relation: "dual(shorten(dual(C))) = puncture(C)",
        });
    }

    // C' must be the disjoint union of the n cosets C'_0 + i e'_1.
    if c_prime.size() != c_zero.size() * n as usize {
        return Err(QcodeError::CosetStructureBroken {
            detail: format!(
                "|C'| = {} is not n |C'_0| = {}",
                c_prime.size(),
                c_zero.size() * n as usize
            ),
        });
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for i in 0..n {
        for w in c_zero.words() {
            let shifted: Vec<u32> = w
                .iter()
                .zip(e_unit_punctured.iter())
                .map(|(&a, &b)| (a + i * b) % n)
                .collect();
            if !c_prime.contains(&shifted) {
                return Err(QcodeError::CosetStructureBroken {
                    detail: format!("coset {} leaves C'", i),
                });
            }
            if !seen.insert(shifted) {
                return Err(QcodeError::CosetStructureBroken {
                    detail: format!("cosets overlap at shift {}", i),
                });
            }
        }
    }

    let trials: &[Convention] = match forced {
        Some(Convention::Literal) => &[Convention::Literal],
        Some(Convention::Swapped) => &[Convention::Swapped],
        None => &[Convention::Literal, Convention::Swapped],
    };
    let mut first_failure = None;
    for &convention in trials {
        let (phase_code, shift_code) = match convention {
            Convention::Literal => (&c_zero, &d_zero),
            Convention::Swapped => (&d_zero, &c_zero),
        };
        let l = c.length() - 1;
        let mut generators: Vec<ErrorIndex> = Vec::new();
        for g in phase_code.reduced_generators() {
            generators.push(ErrorIndex {
                x: g,
                y: vec![0; l],
            });
        }
        for h in shift_code.reduced_generators() {
            generators.push(ErrorIndex {
                x: vec![0; l],
                y: h,
            });
        }
        for i in 0..generators.len() {
            for j in 0..i {
                if symplectic_product(&generators[i], &generators[j], n) != 0 {
                    return Err(QcodeError::NonCommutingGenerators { i, j });
                }
            }
        }
        let candidate = PuncturedQuantumCode {
            n,
            length: l,
            c_full: c.clone(),
            d_full: d_full.clone(),
            c_prime: c_prime.clone(),
            c_zero: c_zero.clone(),
            d_prime: d_prime.clone(),
            d_zero: d_zero.clone(),
            e_unit: e_unit.clone(),
            e_unit_punctured: e_unit_punctured.clone(),
            convention,
            generators,
        };
        let report = candidate.verify_eigenspace()?;
        // The code space is the joint eigenvalue-one eigenspace, so a
        // constant eigenvalue other than one still rejects the assignment.
        if report.pass && report.lambdas.iter().all(|l| l.is_one()) {
            return Ok(candidate);
        }
        if first_failure.is_none() {
            first_failure = report.failure.or_else(|| {
                Some("a generator has a constant eigenvalue other than one".into())
            });
        }
    }
    Err(QcodeError::EigenspaceBroken {
        detail: first_failure.unwrap_or_else(|| "no detail".into()),
    })
}

impl PuncturedQuantumCode {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of sites, one less than the classical length.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn generators(&self) -> &[ErrorIndex] {
        &self.generators
    }

    pub fn classical_code(&self) -> &LinearCodeZn {
        &self.c_full
    }

    pub fn classical_dual(&self) -> &LinearCodeZn {
        &self.d_full
    }

    pub fn punctured(&self) -> &LinearCodeZn {
        &self.c_prime
    }

    pub fn shortened(&self) -> &LinearCodeZn {
        &self.c_zero
    }

    pub fn punctured_dual(&self) -> &LinearCodeZn {
        &self.d_prime
    }

    pub fn shortened_dual(&self) -> &LinearCodeZn {
        &self.d_zero
    }

    /// The codeword of `C` with last coordinate 1 that seeds the cosets.
    pub fn unit_word(&self) -> &[u32] {
        &self.e_unit
    }

    /// That word with its last coordinate removed: the logical shift step.
    pub fn unit_word_punctured(&self) -> &[u32] {
        &self.e_unit_punctured
    }

    fn dims(&self) -> Vec<u32> {
        vec![self.n; self.length]
    }

    /// The unnormalized logical state `|i> = sum over C'_0 of |w + i e'_1>`,
    /// with squared norm `|C'_0|`.
    pub fn logical_state(&self, i: u32) -> StateVector {
        let i = i % self.n;
        let dims = self.dims();
        let mut sv = StateVector::new(dims);
        for w in self.c_zero.words() {
            let digits: Vec<u32> = w
                .iter()
                .zip(self.e_unit_punctured.iter())
                .map(|(&a, &b)| (a + i * b) % self.n)
                .collect();
            sv.add_term(&digits, CycInt::from_int(1))
                .expect("coset digits are in range");
        }
        sv
    }

    fn validate_index(&self, idx: &ErrorIndex) -> Result<(), QcodeError> {
        if idx.x.len() != self.length || idx.y.len() != self.length {
            return Err(QcodeError::IndexShape {
                expected: self.length,
                got: idx.x.len().max(idx.y.len()),
            });
        }
        for &v in idx.x.iter().chain(idx.y.iter()) {
            if v >= self.n {
                return Err(QcodeError::IndexRange { value: v, n: self.n });
            }
        }
        Ok(())
    }

    /// Per-site monomial factors of `E(x, y)`.
    pub fn error_operators(&self, idx: &ErrorIndex) -> Result<Vec<MonomialMatrix>, QcodeError> {
        self.validate_index(idx)?;
        let n = self.n as usize;
        Ok((0..self.length)
            .map(|i| {
                let (x, y) = (idx.x[i] as usize, idx.y[i] as usize);
                let perm = (0..n).map(|z| (z + y) % n).collect();
                let phases = (0..n).map(|z| (x * z % n) as u64).collect();
                MonomialMatrix::new(n, self.n as u64, perm, phases)
                    .expect("site data is a valid monomial matrix")
            })
            .collect())
    }

    /// Applies `E(idx)` to a state, exactly.
    pub fn apply_error(
        &self,
        idx: &ErrorIndex,
        state: &StateVector,
    ) -> Result<StateVector, QcodeError> {
        let ops = self.error_operators(idx)?;
        Ok(state.apply_mono(&ops)?)
    }

    /// Applies `E(idx)^*` to a state: the per-site adjoints.
    pub fn apply_error_adjoint(
        &self,
        idx: &ErrorIndex,
        state: &StateVector,
    ) -> Result<StateVector, QcodeError> {
        let ops: Vec<MonomialMatrix> = self
            .error_operators(idx)?
            .iter()
            .map(|m| m.adjoint())
            .collect();
        Ok(state.apply_mono(&ops)?)
    }

    /// The image of logical state `i` under `E(idx)`, built directly from
    /// the defining sum `sum over w in C'_0 of
    /// zeta^(x.(w + i e'_1)) |w + i e'_1 + y>` rather than by applying
    /// operators; serves as an independent oracle for the operator path.
    pub fn expected_error_image(
        &self,
        i: u32,
        idx: &ErrorIndex,
    ) -> Result<StateVector, QcodeError> {
        self.validate_index(idx)?;
        let i = i % self.n;
        let mut sv = StateVector::new(self.dims());
        for w in self.c_zero.words() {
            let base: Vec<u32> = w
                .iter()
                .zip(self.e_unit_punctured.iter())
                .map(|(&a, &b)| (a + i * b) % self.n)
                .collect();
            let phase = dot(&idx.x, &base, self.n);
            let digits: Vec<u32> = base
                .iter()
                .zip(idx.y.iter())
                .map(|(&a, &b)| (a + b) % self.n)
                .collect();
            sv.add_term(&digits, CycInt::root_of_unity(self.n as u64, phase as i64))?;
        }
        Ok(sv)
    }

    /// Verifies that every stabilizer generator fixes each logical state up
    /// to one scalar that does not depend on the state, and collects those
    /// scalars.
    pub fn verify_eigenspace(&self) -> Result<EigenReport, QcodeError> {
        let mut lambdas = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let mut common: Option<CycInt> = None;
            for i in 0..self.n {
                let logical = self.logical_state(i);
                let image = self.apply_error(g, &logical)?;
                let Some((num, den)) = image.proportional(&logical) else {
                    return Ok(EigenReport {
                        lambdas,
                        pass: false,
                        failure: Some(format!(
                            "generator {} moves logical state {} off its ray",
                            gi, i
                        )),
                    });
                };
                // num/den is a root of unity; find it by scanning exponents
                // at the order of the system dimension.
                let mut value = None;
                for k in 0..self.n {
                    let cand = CycInt::root_of_unity(self.n as u64, k as i64);
                    if num == &cand * &den {
                        value = Some(cand);
                        break;
                    }
                }
                let Some(value) = value else {
                    return Ok(EigenReport {
                        lambdas,
                        pass: false,
                        failure: Some(format!(
                            "generator {} scales logical state {} by a non-root",
                            gi, i
                        )),
                    });
                };
                match &common {
                    None => common = Some(value),
                    Some(prev) if *prev != value => {
                        return Ok(EigenReport {
                            lambdas,
                            pass: false,
                            failure: Some(format!(
                                "generator {} eigenvalue depends on the logical state ({} vs {})",
                                gi, prev, value
                            )),
                        });
                    }
                    _ => {}
                }
            }
            lambdas.push(common.expect("n >= 2 states were checked"));
        }
        Ok(EigenReport {
            lambdas,
            pass: true,
            failure: None,
        })
    }

    /// Syndrome of an error index against the stored generators: entry `k`
    /// is `sp(idx, g_k)`, the exponent by which `E(g_k)` commutes past
    /// `E(idx)`. Matches what syndrome measurement on a corrupted state
    /// reads out.
    pub fn syndrome_of(&self, idx: &ErrorIndex) -> Result<Vec<u32>, QcodeError> {
        self.validate_index(idx)?;
        Ok(self
            .generators
            .iter()
            .map(|g| symplectic_product(idx, g, self.n))
            .collect())
    }

    /// Reads the syndrome off a state by applying each generator and
    /// extracting the exact eigenvalue exponent.
    pub fn measure_syndrome(&self, state: &StateVector) -> Result<Vec<u32>, QcodeError> {
        let mut syndrome = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let image = self.apply_error(g, state)?;
            let Some((num, den)) = image.proportional(state) else {
                return Err(QcodeError::StateNotStabilized { generator: gi });
            };
            let mut found = None;
            for k in 0..self.n {
                if num == &CycInt::root_of_unity(self.n as u64, k as i64) * &den {
                    found = Some(k);
                    break;
                }
            }
            match found {
                Some(k) => syndrome.push(k),
                None => return Err(QcodeError::StateNotStabilized { generator: gi }),
            }
        }
        Ok(syndrome)
    }

    /// Whether a difference index acts trivially on the code space: phase
    /// part in `D'_0` and shift part in `C'_0`.
    pub fn acts_trivially(&self, delta: &ErrorIndex) -> bool {
        self.d_zero.contains(&delta.x) && self.c_zero.contains(&delta.y)
    }
}

/// One failed entry of an error-pair inner product table.
#[derive(Debug, Clone)]
pub struct KlViolation {
    pub a: usize,
    pub b: usize,
    pub i: u32,
    pub j: u32,
    pub value: CycInt,
    /// For diagonal mismatches, the value the entry should have matched.
    pub expected: Option<CycInt>,
}

/// Outcome of checking `<E_a i | E_b j> = delta_ij lambda_ab` over an
/// index set.
#[derive(Debug, Clone)]
pub struct KlReport {
    pub pass: bool,
    pub pairs_checked: u64,
    pub violation_count: u64,
    /// The first violations found, up to a fixed cap.
    pub violations: Vec<KlViolation>,
    /// Nonzero `lambda_ab`, sparsely keyed by index pair.
    pub lambda: BTreeMap<(usize, usize), CycInt>,
}

const KL_VIOLATION_CAP: usize = 16;

/// Whether two check reports are interchangeable: same verdict, same pair
/// count, identical nonzero values, and the same retained violations down
/// to positions and entries. The two routes must satisfy this on any input.
pub fn kl_reports_match(a: &KlReport, b: &KlReport) -> bool {
    a.pass == b.pass
        && a.pairs_checked == b.pairs_checked
        && a.violation_count == b.violation_count
        && a.lambda == b.lambda
        && a.violations.len() == b.violations.len()
        && a.violations.iter().zip(b.violations.iter()).all(|(u, v)| {
            (u.a, u.b, u.i, u.j) == (v.a, v.b, v.i, v.j)
                && u.value == v.value
                && u.expected == v.expected
        })
}

/// Shared verdict extraction: scans one pair's full `n x n` table of inner
/// products. Returns the common diagonal value when the pair passes.
fn pair_verdict(
    a: usize,
    b: usize,
    n: u32,
    gram: &[Vec<CycInt>],
) -> Result<CycInt, KlViolation> {
    for i in 0..n as usize {
        for j in 0..n as usize {
            if i != j && !gram[i][j].is_zero() {
                return Err(KlViolation {
                    a,
                    b,
                    i: i as u32,
                    j: j as u32,
                    value: gram[i][j].clone(),
                    expected: None,
                });
            }
        }
    }
    for i in 1..n as usize {
        if gram[i][i] != gram[0][0] {
            return Err(KlViolation {
                a,
                b,
                i: i as u32,
                j: i as u32,
                value: gram[i][i].clone(),
                expected: Some(gram[0][0].clone()),
            });
        }
    }
    Ok(gram[0][0].clone())
}

fn fold_verdict(
    report: &mut KlReport,
    a: usize,
    b: usize,
    verdict: Result<CycInt, KlViolation>,
) {
    match verdict {
        Ok(lambda) => {
            if !lambda.is_zero() {
                report.lambda.insert((a, b), lambda);
            }
        }
        Err(v) => {
            report.pass = false;
            report.violation_count += 1;
            if report.violations.len() < KL_VIOLATION_CAP {
                report.violations.push(v);
            }
        }
    }
}

impl PuncturedQuantumCode {
    /// Brute-force route: materializes every image `E_a |i>` and takes all
    /// inner products directly. Cost grows with `|indices|^2 n^2 |C'_0|`,
    /// so this is for small codes; [`Self::kl_check_fast`] is the closed
    ///-form route and must produce an identical report.
    pub fn kl_check_exhaustive(&self, indices: &[ErrorIndex]) -> Result<KlReport, QcodeError> {
        let n = self.n;
        let mut images: Vec<Vec<StateVector>> = Vec::with_capacity(indices.len());
        for idx in indices {
            let mut per_state = Vec::with_capacity(n as usize);
            for i in 0..n {
                per_state.push(self.apply_error(idx, &self.logical_state(i))?);
            }
            images.push(per_state);
        }
        let mut report = KlReport {
            pass: true,
            pairs_checked: (indices.len() as u64) * (indices.len() as u64),
            violation_count: 0,
            violations: Vec::new(),
            lambda: BTreeMap::new(),
        };
        for a in 0..indices.len() {
            for b in 0..indices.len() {
                let mut gram = vec![vec![CycInt::zero(1); n as usize]; n as usize];
                for i in 0..n as usize {
                    for j in 0..n as usize {
                        gram[i][j] = images[a][i].inner(&images[b][j])?;
                    }
                }
                fold_verdict(&mut report, a, b, pair_verdict(a, b, n, &gram));
            }
        }
        Ok(report)
    }

    /// Closed-form route for the same check. For the pair `(a, b)` write
    /// `dx = x_b - x_a` and `dy = y_b - y_a`; then
    ///
    /// ```text
    /// <E_a i | E_b j> = zeta^(i (dx . e'_1) - x_b . dy) |C'_0|
    ///                   when dx in D' and dy in C'_0 + (i - j) e'_1,
    ///                   and 0 otherwise.
    /// ```
    ///
    /// Membership tests settle most pairs without touching cyclotomic
    /// arithmetic; the few that survive get their full table materialized
    /// and passed through the same verdict logic as the brute-force route.
    pub fn kl_check_fast(&self, indices: &[ErrorIndex]) -> Result<KlReport, QcodeError> {
        let n = self.n;
        for idx in indices {
            self.validate_index(idx)?;
        }
        let size = BigInt::from(self.c_zero.size());
        let mut report = KlReport {
            pass: true,
            pairs_checked: (indices.len() as u64) * (indices.len() as u64),
            violation_count: 0,
            violations: Vec::new(),
            lambda: BTreeMap::new(),
        };
        for (a, ia) in indices.iter().enumerate() {
            for (b, ib) in indices.iter().enumerate() {
                let dx: Vec<u32> = ib
                    .x
                    .iter()
                    .zip(ia.x.iter())
                    .map(|(&p, &q)| (p + n - q) % n)
                    .collect();
                let dy: Vec<u32> = ib
                    .y
                    .iter()
                    .zip(ia.y.iter())
                    .map(|(&p, &q)| (p + n - q) % n)
                    .collect();
                if !self.d_prime.contains(&dx) {
                    continue;
                }
                // dy lies in at most one coset C'_0 + k e'_1.
                let mut k0 = None;
                for k in 0..n {
                    let shifted: Vec<u32> = dy
                        .iter()
                        .zip(self.e_unit_punctured.iter())
                        .map(|(&p, &q)| (p + (n - k) * q % n) % n)
                        .collect();
                    if self.c_zero.contains(&shifted) {
                        k0 = Some(k);
                        break;
                    }
                }
                let Some(k0) = k0 else {
                    continue;
                };
                // Materialize the table from the formula and share the
                // verdict logic with the brute-force route.
                let s = dot(&dx, &self.e_unit_punctured, n);
                let t = dot(&ib.x, &dy, n);
                let mut gram = vec![vec![CycInt::zero(1); n as usize]; n as usize];
                for i in 0..n {
                    let j = (i + n - k0) % n;
                    let exponent = ((i as u64 * s as u64 + (n as u64 - t as u64)) % n as u64) as i64;
                    gram[i as usize][j as usize] =
                        &CycInt::root_of_unity(n as u64, exponent) * &CycInt::from_bigint(size.clone());
                }
                fold_verdict(&mut report, a, b, pair_verdict(a, b, n, &gram));
            }
        }
        Ok(report)
    }
}

/// Two-route distance evidence for correcting `e` errors.
#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub e: usize,
    /// Minimum weights of `C'` and `D'`; both at least `2e + 1` is a
    /// sufficient condition that needs no scan.
    pub c_prime_min_weight: Option<usize>,
    pub d_prime_min_weight: Option<usize>,
    pub min_weight_sufficient: bool,
    /// Scan route: every nonzero index of weight at most `2e` whose phase
    /// part lies in `D'` and shift part in `C'` must act trivially.
    pub scanned: u64,
    pub bad_count: u64,
    pub bad_examples: Vec<ErrorIndex>,
    pub scan_passes: bool,
    /// The sufficient condition may fail while the scan passes (degenerate
    /// codes), but never the other way around.
    pub consistent: bool,
}

impl PuncturedQuantumCode {
    /// Scans all nonzero indices of weight at most `max_weight` and
    /// collects those that commute into the code structure without acting
    /// trivially: phase part in `D'`, shift part in `C'`, and not a
    /// stabilizer-type pair. An empty result means errors of that weight
    /// are all detectable.
    pub fn scan_flagged(&self, max_weight: usize) -> (u64, Vec<ErrorIndex>) {
        let mut bad = Vec::new();
        let mut scanned = 0u64;
        for idx in enumerate_error_indices(self.n, self.length, max_weight) {
            if idx.is_zero() {
                continue;
            }
            scanned += 1;
            let in_structure =
                self.d_prime.contains(&idx.x) && self.coset_of(&idx.y).is_some();
            if in_structure && !self.acts_trivially(&idx) {
                bad.push(idx);
            }
        }
        (scanned, bad)
    }

    /// The `k` with `word` in `C'_0 + k e'_1`, if any.
    pub fn coset_of(&self, word: &[u32]) -> Option<u32> {
        let n = self.n;
        (0..n).find(|&k| {
            let shifted: Vec<u32> = word
                .iter()
                .zip(self.e_unit_punctured.iter())
                .map(|(&p, &q)| (p + (n - k) * q % n) % n)
                .collect();
            self.c_zero.contains(&shifted)
        })
    }

    /// Assembles the two-route distance evidence for parameter `e`.
    pub fn distance_certificate(&self, e: usize) -> DistanceReport {
        let c_min = self.c_prime.min_weight();
        let d_min = self.d_prime.min_weight();
        let bound = 2 * e + 1;
        let min_weight_sufficient =
            c_min.map_or(false, |m| m >= bound) && d_min.map_or(false, |m| m >= bound);
        let (scanned, bad) = self.scan_flagged(2 * e);
        let scan_passes = bad.is_empty();
        DistanceReport {
            e,
            c_prime_min_weight: c_min,
            d_prime_min_weight: d_min,
            min_weight_sufficient,
            scanned,
            bad_count: bad.len() as u64,
            bad_examples: bad.into_iter().take(16).collect(),
            scan_passes,
            consistent: !(min_weight_sufficient && !scan_passes),
        }
    }
}

/// An exact syndrome-lookup decoder.
#[derive(Debug, Clone)]
pub struct Decoder {
    pub e: usize,
    pub strict: bool,
    /// Syndrome to correction index. In strict mode only syndromes of
    /// weight-`<= e` errors appear; lenient mode also fills syndromes first
    /// reached at weights up to `min(2e, length)`, best effort.
    pub table: BTreeMap<Vec<u32>, ErrorIndex>,
}

impl PuncturedQuantumCode {
    /// Builds the decoding table for up to `e` errors.
    ///
    /// Distinct weight-`<= e` indices mapping to one syndrome are rejected
    /// unless their difference acts trivially on the code space, in which
    /// case the first (in enumeration order) stands for both.
    pub fn build_decoder(&self, e: usize, strict: bool) -> Result<Decoder, QcodeError> {
        let mut table: BTreeMap<Vec<u32>, ErrorIndex> = BTreeMap::new();
        for idx in enumerate_error_indices(self.n, self.length, e) {
            let syndrome = self.syndrome_of(&idx)?;
            if let Some(existing) = table.get(&syndrome) {
                let delta = ErrorIndex {
                    x: idx
                        .x
                        .iter()
                        .zip(existing.x.iter())
                        .map(|(&p, &q)| (p + self.n - q) % self.n)
                        .collect(),
                    y: idx
                        .y
                        .iter()
                        .zip(existing.y.iter())
                        .map(|(&p, &q)| (p + self.n - q) % self.n)
                        .collect(),
                };
                if !self.acts_trivially(&delta) {
                    return Err(QcodeError::SyndromeCollision {
                        first: existing.to_string(),
                        second: idx.to_string(),
                    });
                }
                continue;
            }
            table.insert(syndrome, idx);
        }
        if !strict {
            let cap = (2 * e).min(self.length);
            for idx in enumerate_error_indices(self.n, self.length, cap) {
                if idx.weight() <= e {
                    continue;
                }
                let syndrome = self.syndrome_of(&idx)?;
                table.entry(syndrome).or_insert(idx);
            }
        }
        Ok(Decoder { e, strict, table })
    }
}

/// Everything the recovery pipeline learned about one corrupted state.
#[derive(Debug, Clone)]
pub struct Recovery {
    pub syndrome: Vec<u32>,
    /// The correction applied, when the table had an entry.
    pub correction: Option<ErrorIndex>,
    /// Numerators of the logical coefficients of the corrected state; the
    /// common denominator is `|C'_0|`.
    pub logical_numerators: Vec<CycInt>,
    pub denominator: u64,
    /// The corrected state, present when a correction was applied; see
    /// [`classify_residual`] for turning coefficients into a logical pair.
    pub corrected: Option<StateVector>,
}

impl PuncturedQuantumCode {
    /// Measures the syndrome of `corrupted`, looks up a correction, applies
    /// its adjoint and projects the result onto the logical basis. The
    /// corrected state must land exactly in the code space.
    ///
    /// When the decoder has no entry for the syndrome (possible in strict
    /// mode), the recovery stops after the measurement: `correction` is
    /// `None` and the coefficient list is empty.
    pub fn recover(
        &self,
        decoder: &Decoder,
        corrupted: &StateVector,
    ) -> Result<Recovery, QcodeError> {
        let syndrome = self.measure_syndrome(corrupted)?;
        let Some(correction) = decoder.table.get(&syndrome) else {
            return Ok(Recovery {
                syndrome,
                correction: None,
                logical_numerators: Vec::new(),
                denominator: self.c_zero.size() as u64,
                corrected: None,
            });
        };
        let candidate = self.apply_error_adjoint(correction, corrupted)?;
        let den = self.c_zero.size() as u64;
        let mut nums = Vec::with_capacity(self.n as usize);
        for i in 0..self.n {
            nums.push(self.logical_state(i).inner(&candidate)?);
        }
        // Exactness check: den * candidate = sum_i nums_i |i>.
        let mut reconstruction = StateVector::new(self.dims());
        for (i, num) in nums.iter().enumerate() {
            reconstruction = reconstruction
                .add(&self.logical_state(i as u32).scalar_mul(num))
                .expect("dims match");
        }
        let scaled = candidate.scalar_mul(&CycInt::from_int(den as i64));
        if !scaled.sub(&reconstruction)?.is_zero() {
            return Err(QcodeError::StateOutsideCodeSpace);
        }
        Ok(Recovery {
            syndrome,
            correction: Some(correction.clone()),
            logical_numerators: nums,
            denominator: den,
            corrected: Some(candidate),
        })
    }
}

/// Finds the lexicographically least pair `(a, b)` such that the output
/// logical coefficients are proportional to the input ones acted on by the
/// logical operator `Z^a X^b` (which maps coefficient `u_i` to
/// `zeta^(a i) u_(i - b)`). Returns `None` when the output is not a Weyl
/// image of the input, e.g. when it is zero.
pub fn classify_residual(n: u32, input: &[CycInt], output: &[CycInt]) -> Option<(u32, u32)> {
    if output.iter().all(|c| c.is_zero()) {
        return None;
    }
    for a in 0..n {
        'next: for b in 0..n {
            let moved: Vec<CycInt> = (0..n)
                .map(|i| {
                    let src = ((i + n - b) % n) as usize;
                    &CycInt::root_of_unity(n as u64, (a as u64 * i as u64 % n as u64) as i64)
                        * &input[src]
                })
                .collect();
            // Cross-multiplication proportionality over the two vectors.
            let Some(pivot) = (0..n as usize).find(|&i| !moved[i].is_zero()) else {
                continue;
            };
            if output[pivot].is_zero() {
                continue;
            }
            let (num, den) = (&output[pivot], &moved[pivot]);
            for i in 0..n as usize {
                if &moved[i] * num != &output[i] * den {
                    continue 'next;
                }
            }
            return Some((a, b));
        }
    }
    None
}

/// Classifies the residual logical operator from the images of all `n`
/// logical basis states at once: `columns[i]` holds the logical numerators
/// of the corrected state prepared from logical `i`. Returns the lex-least
/// `(a, b)` with `columns[i] = c * zeta^(a i) e_(i + b)` for one fixed
/// nonzero scalar `c`, if such a pair exists.
///
/// A single basis state cannot distinguish `a` (the phase `zeta^(a i)` is
/// global there), so per-state classification via [`classify_residual`]
/// always reports `a = 0`; this joint form recovers the full index.
pub fn classify_residual_matrix(n: u32, columns: &[Vec<CycInt>]) -> Option<(u32, u32)> {
    let size = n as usize;
    if columns.len() != size || columns.iter().any(|c| c.len() != size) {
        return None;
    }
    for a in 0..n {
        'next: for b in 0..n {
            for i in 0..size {
                for t in 0..size {
                    let on_pattern = t == (i + b as usize) % size;
                    if columns[i][t].is_zero() == on_pattern {
                        continue 'next;
                    }
                }
            }
            // All diagonals d_i = columns[i][i + b] are nonzero; they match
            // the pattern iff d_i zeta^(-a i) is constant, i.e. iff
            // d_i zeta^(a j) = d_j zeta^(a i) for all pairs.
            let diag = |i: usize| &columns[i][(i + b as usize) % size];
            let phase =
                |i: usize| CycInt::root_of_unity(n as u64, (a as u64 * i as u64 % n as u64) as i64);
            for i in 0..size {
                for j in (i + 1)..size {
                    if diag(i) * &phase(j) != diag(j) * &phase(i) {
                        continue 'next;
                    }
                }
            }
            return Some((a, b));
        }
    }
    None
}
