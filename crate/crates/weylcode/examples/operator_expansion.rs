//! Expands arbitrary exact operators over an error basis and verifies two
//! identities that hold with integer coefficients and no rounding: the
//! reconstruction A = (1/n) sum_k tr(E_k^* A) E_k, and the normalization
//! sum_k tr(E_k^* A) conj(tr(E_k^* A)) = n tr(A^* A).
//!
//! Run with `cargo run --example operator_expansion`.

use weylcode::cyclotomic::CycInt;
use weylcode::errorbasis::{ErrorBasis, Labeling};
use weylcode::exactmat::DenseMatrix;

fn main() {
    let basis = ErrorBasis::shift_clock(3, Labeling::PhaseShift).unwrap();

    // A matrix with entries c zeta_3^k: small integers times cube roots.
    let entries: [[(i64, i64); 3]; 3] = [
        [(2, 0), (-1, 1), (0, 0)],
        [(3, 2), (1, 0), (-2, 1)],
        [(0, 0), (1, 2), (4, 0)],
    ];
    let a = DenseMatrix::from_fn(3, |i, j| {
        let (c, k) = entries[i][j];
        &CycInt::from_int(c) * &CycInt::root_of_unity(3, k)
    });

    let coefficients = basis.expand(&a).unwrap();
    println!("expansion coefficients tr(E_k^* A):");
    for (k, t) in coefficients.iter().enumerate() {
        println!("  {}  {}", basis.label(k), t);
    }

    let report = basis.verify_expansion(&a).unwrap();
    assert!(report.reconstructs, "sum t_k E_k = {} A", report.denominator);
    assert!(report.norm_identity, "sum t_k conj(t_k) = n tr(A^* A)");
    println!(
        "reconstructs with denominator {}, norm identity holds",
        report.denominator
    );

    // The Fourier matrix is a natural non-monomial test operator.
    let f = DenseMatrix::fourier(3);
    let report = basis.verify_expansion(&f).unwrap();
    assert!(report.reconstructs && report.norm_identity);
    println!("the order-3 Fourier matrix expands exactly as well");

    // The identity expands as itself: t_0 = n, all other coefficients 0.
    let id = DenseMatrix::identity(3);
    let coefficients = basis.expand(&id).unwrap();
    assert_eq!(coefficients[0], CycInt::from_int(3));
    assert!(coefficients[1..].iter().all(|t| t.is_zero()));
    println!("identity expands as 3 E_0, the other 8 coefficients vanish");
}
