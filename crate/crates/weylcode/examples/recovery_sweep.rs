//! Exercises syndrome decoding on the seven-qubit code: builds strict and
//! lenient decoder tables, round-trips every weight-1 error exactly, and
//! sweeps all weight <= 2 errors to tally the residual logical operators
//! that uncorrectable errors leave behind.
//!
//! Run with `cargo run --example recovery_sweep`.

use std::collections::BTreeMap;

use weylcode::qcode::{
    build_code, classify_residual_matrix, enumerate_error_indices, ErrorIndex,
};
use weylcode::zncodes::{extended_hamming_8_4, DEFAULT_ENUMERATION_CAP};

fn main() {
    let code = build_code(&extended_hamming_8_4(), DEFAULT_ENUMERATION_CAP).unwrap();

    // Strict tables hold only syndromes of weight <= e errors; lenient
    // tables fill every remaining syndrome reachable at weight <= 2e. For
    // this code the lenient table is total: 64 syndromes, all covered.
    let strict = code.build_decoder(1, true).unwrap();
    let lenient = code.build_decoder(1, false).unwrap();
    println!(
        "decoder tables: strict {} entries, lenient {} entries",
        strict.table.len(),
        lenient.table.len()
    );
    assert_eq!(strict.table.len(), 22);
    assert_eq!(lenient.table.len(), 64);

    // Round trip: corrupt a logical state with a weight-1 error, measure,
    // correct, and compare exactly. The corrected state must equal the
    // input, not merely approximate it.
    let input = code.logical_state(1);
    let idx = ErrorIndex {
        x: vec![0, 0, 0, 1, 0, 0, 0],
        y: vec![0, 0, 0, 1, 0, 0, 0],
    };
    let corrupted = code.apply_error(&idx, &input).unwrap();
    let recovery = code.recover(&strict, &corrupted).unwrap();
    println!(
        "syndrome {:?} -> correction {}",
        recovery.syndrome,
        recovery.correction.as_ref().unwrap()
    );
    let corrected = recovery.corrected.as_ref().unwrap();
    assert!(corrected.sub(&input).unwrap().is_zero(), "bit-exact recovery");
    println!("corrected state equals the input exactly");

    // Sweep all weight <= 2 errors across both logical states and classify
    // each residual operator jointly: a logical phase is invisible on any
    // single basis state, so the classification needs all of them.
    let indices = enumerate_error_indices(code.n(), code.length(), 2);
    let mut histogram: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for idx in &indices {
        let mut columns = Vec::new();
        for i in 0..code.n() {
            let corrupted = code.apply_error(idx, &code.logical_state(i)).unwrap();
            let recovery = code.recover(&lenient, &corrupted).unwrap();
            columns.push(recovery.logical_numerators);
        }
        let residual = classify_residual_matrix(code.n(), &columns)
            .expect("every residual is a logical error operator");
        *histogram.entry(residual).or_insert(0) += 1;
        if idx.weight() <= 1 {
            assert_eq!(residual, (0, 0), "guaranteed errors recover exactly");
        }
    }
    println!("residual histogram over {} errors of weight <= 2:", indices.len());
    for ((a, b), count) in &histogram {
        println!("  logical E({},{}) : {}", a, b, count);
    }
    assert_eq!(histogram.get(&(0, 0)), Some(&64));
    assert!(histogram.len() == 4, "all four logical classes appear");
}
