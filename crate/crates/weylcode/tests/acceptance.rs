//! Acceptance gate: the twelve end-to-end guarantees this crate commits to,
//! one test per criterion, each printing a single pass or fail line
//! (visible under `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion 8 is the heaviest: the eleven-trit two-error code checked over
//! roughly thirteen million index pairs via the closed-form route, a couple
//! of seconds of membership tests.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use weylcode::cyclotomic::CycInt;
use weylcode::errorbasis::{
    central_coset_representatives, egner_generators, find_isomorphism, group_center,
    group_closure, z2_d4_table, ErrorBasis, ExactOp, Label, Labeling,
};
use weylcode::exactmat::{DenseMatrix, MonomialMatrix, StateVector};
use weylcode::qcode::{
    build_code, classify_residual_matrix, enumerate_error_indices, kl_reports_match, Convention,
};
use weylcode::transversal::{
    apply_gate, build_gate, matrix_proportional, verify_fourier_conjugation, verify_gate,
    GateKind,
};
use weylcode::zncodes::{
    extended_golay_12_6, extended_hamming_8_4, tetracode_4_2, DEFAULT_ENUMERATION_CAP,
};

const CAP: u64 = DEFAULT_ENUMERATION_CAP;

/// Runs one criterion body and prints exactly one PASS or FAIL line for it.
fn criterion(number: u32, summary: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {number:2}: PASS  {summary}"),
        Err(payload) => {
            println!("criterion {number:2}: FAIL  {summary}");
            std::panic::resume_unwind(payload);
        }
    }
}

fn zn_label(basis: &ErrorBasis, k: usize) -> (u32, u32) {
    match basis.label(k) {
        Label::Zn(i, j) => (*i, *j),
        other => panic!("expected a Z_n pair label, got {other}"),
    }
}

#[test]
fn criterion_01_shift_clock_bases_form_nice_groups() {
    criterion(
        1,
        "shift and clock bases for n = 2..6: orthonormal, nice, labels add, w = omega^(jk)",
        || {
            for n in 2u32..=6 {
                let started = Instant::now();
                let basis = ErrorBasis::shift_clock(n as usize, Labeling::ClockPower).unwrap();
                basis.verify_orthonormal().unwrap();
                let sc = basis.verify_nice().unwrap();
                assert_eq!(basis.len(), (n * n) as usize);
                for p in 0..basis.len() {
                    let (i, j) = zn_label(&basis, p);
                    for q in 0..basis.len() {
                        let (k, l) = zn_label(&basis, q);
                        let star = zn_label(&basis, sc.star[p][q]);
                        assert_eq!(star, ((i + k) % n, (j + l) % n), "labels add componentwise");
                        let predicted =
                            CycInt::root_of_unity(n as u64, i64::from(j) * i64::from(k));
                        assert_eq!(sc.w[p][q], predicted, "w at ({i},{j})*({k},{l})");
                    }
                }
                assert!(
                    started.elapsed() < Duration::from_secs(1),
                    "n = {n} verified within one second"
                );
            }
        },
    );
}

#[test]
fn criterion_02_structure_coefficients_are_unimodular() {
    criterion(
        2,
        "index sets are groups, every w is exactly unimodular, unit determinants force w^n = 1",
        || {
            let mut bases: Vec<(String, ErrorBasis)> = (2..=6)
                .map(|n| {
                    let basis = ErrorBasis::shift_clock(n, Labeling::PhaseShift).unwrap();
                    (format!("shift-clock {n}"), basis)
                })
                .collect();
            bases.push(("dimension-four".to_string(), ErrorBasis::egner()));

            let one = CycInt::from_int(1);
            let mut unit_det_bases = 0;
            for (name, basis) in &bases {
                let sc = basis.verify_nice().unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(basis.index_group(&sc).is_group(), "{name}: index set is a group");
                for row in &sc.w {
                    for w in row {
                        assert_eq!(w * &w.conj(), one, "{name}: w conj(w) = 1");
                    }
                }
                let vn = basis.verify_very_nice(&sc);
                if vn.unit_determinants {
                    unit_det_bases += 1;
                    assert!(
                        vn.coefficients_are_nth_roots,
                        "{name}: unit determinants force every w to be an n-th root"
                    );
                }
            }
            assert_eq!(unit_det_bases, 3, "n = 3, n = 5 and the dimension-four basis");
        },
    );
}

#[test]
fn criterion_03_very_nice_verdicts_match_the_catalog() {
    criterion(
        3,
        "adjusted qubit basis is very nice, plain one is not; n = 5 passes, n = 3 recorded",
        || {
            // {I, iN, iS, NS}: the qubit shift and clock basis with phases
            // chosen so that every determinant is one.
            let elements = vec![
                MonomialMatrix::identity(2),
                MonomialMatrix::new(2, 4, vec![1, 0], vec![1, 1]).unwrap(),
                MonomialMatrix::new(2, 4, vec![0, 1], vec![1, 3]).unwrap(),
                MonomialMatrix::new(2, 4, vec![1, 0], vec![0, 2]).unwrap(),
            ];
            let adjusted = ErrorBasis::new(
                elements.into_iter().map(ExactOp::Mono).collect(),
                (0..4).map(Label::Atom).collect(),
            )
            .unwrap();
            adjusted.verify_orthonormal().unwrap();
            let sc = adjusted.verify_nice().unwrap();
            assert!(adjusted.verify_very_nice(&sc).passed(), "adjusted qubit basis");

            let plain = ErrorBasis::shift_clock(2, Labeling::PhaseShift).unwrap();
            let sc_plain = plain.verify_nice().unwrap();
            let vn_plain = plain.verify_very_nice(&sc_plain);
            assert!(
                !vn_plain.unit_determinants && !vn_plain.passed(),
                "the plain qubit basis contains determinant minus-one elements"
            );
            // Rescaling by roots of unity repairs it.
            let repaired = plain.normalize_det().unwrap();
            let sc_rep = repaired.verify_nice().unwrap();
            assert!(repaired.verify_very_nice(&sc_rep).passed(), "repaired qubit basis");

            let five = ErrorBasis::shift_clock(5, Labeling::PhaseShift).unwrap();
            let sc_five = five.verify_nice().unwrap();
            assert!(five.verify_very_nice(&sc_five).passed(), "n = 5 shift and clock");

            // Recorded outcome for n = 3: odd-length cycles are even
            // permutations and the clock determinant is zeta_3^(0+1+2) = 1,
            // so this basis passes as built.
            let three = ErrorBasis::shift_clock(3, Labeling::PhaseShift).unwrap();
            let sc_three = three.verify_nice().unwrap();
            let vn_three = three.verify_very_nice(&sc_three);
            assert!(vn_three.unit_determinants && vn_three.passed(), "n = 3 verdict");
        },
    );
}

#[test]
fn criterion_04_dimension_four_basis_structure() {
    criterion(
        4,
        "closure 32, center +-I, five relations, 16 orthonormal reps, index group Z_2 x D_4",
        || {
            let [a, b, c] = egner_generators();
            let identity = MonomialMatrix::identity(4);
            let minus = identity.neg();
            assert_eq!(a.mul(&a), identity, "A^2 = I");
            assert_eq!(b.pow(4), minus, "B^4 = -I");
            assert_eq!(a.mul(&b), b.mul(&a).neg(), "AB = -BA");
            assert_eq!(a.mul(&c), c.mul(&a), "AC = CA");
            assert_eq!(b.mul(&c), c.mul(&b.adjoint()), "BC = CB^-1");

            let closure = group_closure(&[a, b, c], 1 << 12).unwrap();
            assert_eq!(closure.len(), 32);
            let center = group_center(&closure);
            assert_eq!(center.len(), 2);
            assert!(center.contains(&identity) && center.contains(&minus));
            assert_eq!(central_coset_representatives(&closure, &center).len(), 16);

            let basis = ErrorBasis::egner();
            basis.verify_orthonormal().unwrap();
            let sc = basis.verify_nice().unwrap();
            let group = basis.index_group(&sc);
            assert!(group.is_group() && !group.abelian);
            assert!(
                find_isomorphism(&sc.star, &z2_d4_table()).is_some(),
                "explicit isomorphism with Z_2 x D_4"
            );
        },
    );
}

#[test]
fn criterion_05_seven_qubit_code_detects_single_errors() {
    criterion(
        5,
        "seven-qubit code: duality chain, eigenvalue-one stabilizers, exhaustive e = 1, min weights 3",
        || {
            let code = build_code(&extended_hamming_8_4(), CAP).unwrap();
            assert_eq!(code.convention(), Convention::Literal);
            assert_eq!(code.punctured().dual(CAP).unwrap(), *code.shortened_dual());
            assert_eq!(code.shortened().dual(CAP).unwrap(), *code.punctured_dual());

            let eig = code.verify_eigenspace().unwrap();
            assert!(eig.pass, "{:?}", eig.failure);
            assert!(eig.lambdas.iter().all(CycInt::is_one), "all eigenvalues exactly one");

            let indices = enumerate_error_indices(2, 7, 1);
            assert_eq!(indices.len(), 22);
            let report = code.kl_check_exhaustive(&indices).unwrap();
            assert!(report.pass);
            assert_eq!(report.pairs_checked, 484);
            assert_eq!(report.violation_count, 0);
            assert_eq!(report.lambda.len(), 22, "one nonzero lambda per index");
            let eight = CycInt::from_int(8);
            assert!(
                report.lambda.iter().all(|(&(a, b), v)| a == b && *v == eight),
                "lambda is diagonal and constant at the shortened-code size"
            );

            assert_eq!(code.punctured().min_weight(), Some(3));
            assert_eq!(code.punctured_dual().min_weight(), Some(3));
        },
    );
}

#[test]
fn criterion_06_fast_and_exhaustive_routes_agree() {
    criterion(
        6,
        "closed-form and brute-force condition checks match verdict for verdict, pass and fail alike",
        || {
            let steane = build_code(&extended_hamming_8_4(), CAP).unwrap();
            let indices = enumerate_error_indices(2, 7, 1);
            let fast = steane.kl_check_fast(&indices).unwrap();
            let slow = steane.kl_check_exhaustive(&indices).unwrap();
            assert!(kl_reports_match(&fast, &slow), "routes agree on the passing code");
            assert!(fast.pass);

            let tetra = build_code(&tetracode_4_2(), CAP).unwrap();
            let indices = enumerate_error_indices(3, 3, 1);
            assert_eq!(indices.len(), 25);
            let fast = tetra.kl_check_fast(&indices).unwrap();
            let slow = tetra.kl_check_exhaustive(&indices).unwrap();
            assert!(kl_reports_match(&fast, &slow), "routes agree on the failing code");
            assert!(!fast.pass, "the three-trit code cannot correct one error");
            assert_eq!(fast.violation_count, 48);
            assert_eq!(fast.pairs_checked, 625);
        },
    );
}

#[test]
fn criterion_07_recovery_sweep_classifies_residuals() {
    criterion(
        7,
        "weight-one errors correct exactly; weight-two residuals are all logical operators",
        || {
            let code = build_code(&extended_hamming_8_4(), CAP).unwrap();
            let n = code.n();
            let logicals: Vec<StateVector> = (0..n).map(|i| code.logical_state(i)).collect();

            let strict = code.build_decoder(1, true).unwrap();
            let one_errors = enumerate_error_indices(n, code.length(), 1);
            assert_eq!(one_errors.len(), 22);
            for idx in &one_errors {
                let mut columns = Vec::new();
                for state in &logicals {
                    let corrupted = code.apply_error(idx, state).unwrap();
                    let recovery = code.recover(&strict, &corrupted).unwrap();
                    let corrected = recovery
                        .corrected
                        .as_ref()
                        .expect("strict table covers every weight-one syndrome");
                    assert!(
                        corrected.proportional(state).is_some(),
                        "recovery from {idx:?} is exactly proportional to the input"
                    );
                    columns.push(recovery.logical_numerators);
                }
                assert_eq!(
                    classify_residual_matrix(n, &columns),
                    Some((0, 0)),
                    "identity residual for {idx:?}"
                );
            }

            let lenient = code.build_decoder(1, false).unwrap();
            let two_errors = enumerate_error_indices(n, code.length(), 2);
            assert_eq!(two_errors.len(), 211);
            let mut histogram: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for idx in &two_errors {
                let mut columns = Vec::new();
                for state in &logicals {
                    let corrupted = code.apply_error(idx, state).unwrap();
                    let recovery = code.recover(&lenient, &corrupted).unwrap();
                    assert!(
                        recovery.correction.is_some(),
                        "lenient table covers every weight-two syndrome"
                    );
                    columns.push(recovery.logical_numerators);
                }
                let residual = classify_residual_matrix(n, &columns)
                    .unwrap_or_else(|| panic!("residual of {idx:?} is not a logical operator"));
                *histogram.entry(residual).or_insert(0) += 1;
            }
            assert!(
                histogram.keys().any(|&r| r != (0, 0)),
                "some weight-two error leaves a nonidentity logical residual"
            );
            let expected: BTreeMap<(u32, u32), u32> =
                [((0, 0), 64), ((0, 1), 49), ((1, 0), 49), ((1, 1), 49)]
                    .into_iter()
                    .collect();
            assert_eq!(histogram, expected);
        },
    );
}

#[test]
fn criterion_08_eleven_trit_code_corrects_two_errors() {
    criterion(
        8,
        "eleven-trit code: builds, eigenvalue-one stabilizers, closed-form e = 2, min weights >= 5",
        || {
            let code = build_code(&extended_golay_12_6(), CAP).unwrap();
            assert_eq!(code.generators().len(), 10, "five phase plus five shift generators");
            assert_eq!(code.shortened().size(), 243);

            let eig = code.verify_eigenspace().unwrap();
            assert!(eig.pass, "{:?}", eig.failure);
            assert!(eig.lambdas.iter().all(CycInt::is_one));

            assert!(code.punctured().min_weight().unwrap() >= 5);
            assert!(code.punctured_dual().min_weight().unwrap() >= 5);

            let indices = enumerate_error_indices(3, 11, 2);
            assert_eq!(indices.len(), 3609);
            let report = code.kl_check_fast(&indices).unwrap();
            assert!(report.pass);
            assert_eq!(report.violation_count, 0);
        },
    );
}

#[test]
fn criterion_09_transversal_gates_induce_the_predicted_logicals() {
    criterion(
        9,
        "all four gates verified; increment/phase composites induce every logical operator pair",
        || {
            let steane = build_code(&extended_hamming_8_4(), CAP).unwrap();
            for kind in GateKind::ALL {
                let verification = verify_gate(&steane, kind).unwrap();
                assert!(verification.pass(), "{kind:?} acts as predicted");
            }

            let n = steane.n();
            let increment = build_gate(&steane, GateKind::Increment).unwrap();
            let phase = build_gate(&steane, GateKind::Phase).unwrap();
            let logicals: Vec<StateVector> = (0..n).map(|i| steane.logical_state(i)).collect();
            for a in 0..n {
                for b in 0..n {
                    let mut numerators =
                        vec![vec![CycInt::zero(u64::from(n)); n as usize]; n as usize];
                    for i in 0..n {
                        let mut image = logicals[i as usize].clone();
                        for _ in 0..b {
                            image = apply_gate(&increment, &image).unwrap();
                        }
                        for _ in 0..a {
                            image = apply_gate(&phase, &image).unwrap();
                        }
                        for t in 0..n {
                            numerators[t as usize][i as usize] =
                                logicals[t as usize].inner(&image).unwrap();
                        }
                    }
                    let expected: Vec<Vec<CycInt>> = (0..n)
                        .map(|t| {
                            (0..n)
                                .map(|i| {
                                    if (i + b) % n == t {
                                        CycInt::root_of_unity(u64::from(n), i64::from(a * i))
                                    } else {
                                        CycInt::zero(u64::from(n))
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    assert!(
                        matrix_proportional(&numerators, &expected),
                        "increment^{b} then phase^{a} induces the ({a},{b}) logical operator"
                    );
                }
            }

            let tetra = build_code(&tetracode_4_2(), CAP).unwrap();
            assert!(verify_gate(&tetra, GateKind::Increment).unwrap().pass());
            assert!(verify_gate(&tetra, GateKind::Phase).unwrap().pass());
        },
    );
}

#[test]
fn criterion_10_fourier_conjugation_swaps_the_generators() {
    criterion(10, "F D^k F* = n C^k exactly for every dimension n = 2..12", || {
        for n in 2..=12 {
            assert!(verify_fourier_conjugation(n), "dimension {n}");
        }
    });
}

#[test]
fn criterion_11_random_operators_expand_exactly() {
    criterion(
        11,
        "one hundred random operators per dimension 2..4 reconstruct and satisfy the norm identity",
        || {
            let mut rng = StdRng::seed_from_u64(0x5EED_0011);
            for n in [2usize, 3, 4] {
                let basis = ErrorBasis::shift_clock(n, Labeling::PhaseShift).unwrap();
                for _ in 0..100 {
                    let op = DenseMatrix::from_fn(n, |_, _| {
                        let c = rng.gen_range(-4i64..=4);
                        let k = rng.gen_range(0..n as i64);
                        &CycInt::from_int(c) * &CycInt::root_of_unity(n as u64, k)
                    });
                    let report = basis.verify_expansion(&op).unwrap();
                    assert!(report.reconstructs, "sum of t_k E_k equals n times the operator");
                    assert!(report.norm_identity, "sum of |t_k|^2 equals n tr(A* A)");
                    assert_eq!(report.denominator, n as u64);
                }
            }
        },
    );
}

#[test]
fn criterion_12_cli_output_is_deterministic() {
    criterion(
        12,
        "identical invocations produce byte-identical reports once the timing block is stripped",
        || {
            let exe = env!("CARGO_BIN_EXE_weylcode");
            let dir = tempfile::tempdir().unwrap();
            let generators = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/hamming8.gen");

            let build = Command::new(exe)
                .current_dir(dir.path())
                .args(["code", "build", "--c", generators])
                .output()
                .unwrap();
            assert!(
                build.status.success(),
                "code build failed: {}",
                String::from_utf8_lossy(&build.stderr)
            );

            let check = || {
                let out = Command::new(exe)
                    .current_dir(dir.path())
                    .args(["code", "check", "--e", "1", "--exhaustive"])
                    .output()
                    .unwrap();
                assert!(out.status.success());
                stripped(&out.stdout)
            };
            assert_eq!(check(), check(), "code check is deterministic");

            let basis = || {
                let out = Command::new(exe)
                    .args(["basis", "verify", "--shift-clock", "4"])
                    .output()
                    .unwrap();
                assert!(out.status.success());
                stripped(&out.stdout)
            };
            assert_eq!(basis(), basis(), "basis verify is deterministic");
        },
    );
}

/// Parses a report, drops the wall-clock timing block and re-serializes.
fn stripped(bytes: &[u8]) -> String {
    let mut value: serde_json::Value = serde_json::from_slice(bytes).expect("valid JSON report");
    value
        .as_object_mut()
        .expect("report is a JSON object")
        .remove("timing");
    serde_json::to_string(&value).unwrap()
}
