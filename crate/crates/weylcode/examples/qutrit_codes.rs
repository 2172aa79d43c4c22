//! Qutrit constructions from ternary classical codes. The tetracode gives
//! a three-trit code that detects single errors but cannot correct them,
//! and the example shows exactly where correction breaks: the error
//! correction conditions fail and the syndrome table collides, while the
//! transversal increment and phase gates still work.
//!
//! With `--golay`, also builds the eleven-trit code from the extended
//! ternary Golay [12,6] code and verifies two-error correction with the
//! membership-based route (3^12 ambient enumeration and about 13 million
//! index pairs; expect minutes rather than seconds).
//!
//! Run with `cargo run --release --example qutrit_codes -- [--golay]`.

use weylcode::qcode::{build_code, enumerate_error_indices, QcodeError};
use weylcode::transversal::{verify_gate, GateKind};
use weylcode::zncodes::{extended_golay_12_6, tetracode_4_2, DEFAULT_ENUMERATION_CAP};

fn main() {
    let code = build_code(&tetracode_4_2(), DEFAULT_ENUMERATION_CAP).unwrap();
    println!(
        "tetracode construction: n={} l={} generators={} unit word {:?}",
        code.n(),
        code.length(),
        code.generators().len(),
        code.unit_word_punctured()
    );
    for i in 0..3 {
        assert_eq!(code.logical_state(i).support_len(), 3);
    }

    // Single-error correction fails, and the report says where: both
    // routes flag the same off-diagonal pairs.
    let indices = enumerate_error_indices(3, 3, 1);
    assert_eq!(indices.len(), 25);
    let fast = code.kl_check_fast(&indices).unwrap();
    let exhaustive = code.kl_check_exhaustive(&indices).unwrap();
    assert!(!fast.pass && !exhaustive.pass);
    assert_eq!(fast.violation_count, exhaustive.violation_count);
    let first = &fast.violations[0];
    println!(
        "correction conditions fail: {} violations, first at pair ({}, {}) entry ({}, {}) = {}",
        fast.violation_count, first.a, first.b, first.i, first.j, first.value
    );

    // The syndrome table collides at e = 1: two inequivalent single
    // errors share a syndrome, so no lookup table can tell them apart.
    match code.build_decoder(1, true) {
        Err(QcodeError::SyndromeCollision { first, second }) => {
            println!("decoder collision: {} and {} share a syndrome", first, second);
        }
        other => panic!("expected a syndrome collision, got {:?}", other),
    }

    // Detection still works: transversal gates act on the logical qutrit.
    for kind in [GateKind::Increment, GateKind::Phase] {
        let v = verify_gate(&code, kind).unwrap();
        assert!(v.pass());
        println!("transversal {} verified on the three-trit code", kind);
    }

    if std::env::args().any(|arg| arg == "--golay") {
        golay();
    } else {
        println!("(pass --golay to also verify the eleven-trit two-error code)");
    }
}

fn golay() {
    println!("building the eleven-trit code from the extended ternary Golay [12,6]...");
    let code = build_code(&extended_golay_12_6(), DEFAULT_ENUMERATION_CAP).unwrap();
    assert_eq!(code.length(), 11);
    assert_eq!(code.generators().len(), 10);
    assert_eq!(code.shortened().size(), 243);
    println!(
        "built: convention {:?}, logical states have {} terms each",
        code.convention(),
        code.logical_state(0).support_len()
    );

    let eigen = code.verify_eigenspace().unwrap();
    assert!(eigen.pass && eigen.lambdas.iter().all(|l| l.is_one()));

    assert!(code.punctured().min_weight().unwrap() >= 5);
    assert!(code.punctured_dual().min_weight().unwrap() >= 5);
    println!("min weights >= 5: two-error correction is in reach");

    let indices = enumerate_error_indices(3, 11, 2);
    println!("checking {} indices ({} pairs)...", indices.len(), indices.len() * indices.len());
    let report = code.kl_check_fast(&indices).unwrap();
    assert!(report.pass, "two-error correction conditions hold");
    println!(
        "correction conditions pass over {} pairs with {} nonzero lambda entries",
        report.pairs_checked,
        report.lambda.len()
    );
}
