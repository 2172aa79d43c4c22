//! Builds the shift and clock error basis for a few dimensions and checks
//! its defining properties exactly: trace orthonormality, closure under
//! multiplication up to scalars, and the index-group structure, with the
//! structure constants compared against the labeling formulas.
//!
//! Run with `cargo run --example shift_clock_basis`.

use weylcode::cyclotomic::CycInt;
use weylcode::errorbasis::{ErrorBasis, Label, Labeling};

fn main() {
    for n in 2..=6usize {
        let basis = ErrorBasis::shift_clock(n, Labeling::PhaseShift).unwrap();
        basis.verify_orthonormal().expect("orthonormal");
        let sc = basis.verify_nice().expect("nice");
        let group = basis.index_group(&sc);
        assert!(group.is_group() && group.abelian);

        // Labels are pairs (x, y) over Z_n: phase power x, shift power y.
        // Products add labels componentwise and pick up the phase
        // omega^(x . y') from commuting the second phase past the first
        // shift.
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let (a, b) = pair(&basis, i);
                let (c, d) = pair(&basis, j);
                let sum = basis
                    .index_of(&Label::Zn((a + c) % n as u32, (b + d) % n as u32))
                    .unwrap();
                assert_eq!(sc.star[i][j], sum);
                let w = CycInt::root_of_unity(n as u64, (a as u64 * d as u64) as i64);
                assert_eq!(sc.w[i][j], w);
            }
        }

        let vn = basis.verify_very_nice(&sc);
        println!(
            "n={}: {} elements, orthonormal, nice, abelian index group Z_{0} x Z_{0}; very nice: {}",
            n,
            basis.len(),
            vn.passed()
        );
    }

    // The determinant obstruction is a scalar, so rescaling the generators
    // repairs it without touching any structural property.
    let qubit = ErrorBasis::shift_clock(2, Labeling::PhaseShift).unwrap();
    let sc = qubit.verify_nice().unwrap();
    assert!(!qubit.verify_very_nice(&sc).passed());
    let fixed = qubit.normalize_det().unwrap();
    let sc = fixed.verify_nice().unwrap();
    assert!(fixed.verify_very_nice(&sc).passed());
    println!("n=2 rescaled by a fourth root of unity: very nice");

    // The two labelings name the same projective basis; only the scalar
    // bookkeeping differs.
    let clock = ErrorBasis::shift_clock(3, Labeling::ClockPower).unwrap();
    let sc = clock.verify_nice().unwrap();
    for i in 0..clock.len() {
        for j in 0..clock.len() {
            let (_, b) = pair(&clock, i);
            let (c, _) = pair(&clock, j);
            let w = CycInt::root_of_unity(3, (b as u64 * c as u64) as i64);
            assert_eq!(sc.w[i][j], w, "clock-power phase is omega^(j k)");
        }
    }
    println!("n=3 clock-power labeling: w[(i,j)][(k,l)] = omega^(j k) throughout");

    // Tensor products stay orthonormal and nice, with paired labels.
    let six = ErrorBasis::shift_clock(2, Labeling::PhaseShift)
        .unwrap()
        .tensor(&ErrorBasis::shift_clock(3, Labeling::PhaseShift).unwrap());
    six.verify_orthonormal().expect("tensor orthonormal");
    six.verify_nice().expect("tensor nice");
    println!("2 (x) 3 tensor basis: {} elements on dimension {}", six.len(), six.dim());
}

fn pair(basis: &ErrorBasis, k: usize) -> (u32, u32) {
    match basis.label(k) {
        Label::Zn(a, b) => (*a, *b),
        other => panic!("unexpected label {}", other),
    }
}
