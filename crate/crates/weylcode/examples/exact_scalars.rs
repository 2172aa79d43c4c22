//! A tour of the scalar layer: integers in cyclotomic rings Z[zeta_m],
//! stored in a canonical form that makes equality decidable. Everything
//! the rest of the library proves reduces to identities between these
//! numbers.
//!
//! Run with `cargo run --example exact_scalars`.

use num_bigint::BigInt;
use weylcode::cyclotomic::CycInt;

fn main() {
    // Roots of unity multiply by adding exponents; the canonical form
    // reduces modulo the cyclotomic polynomial, so zeta_3^3 really is 1.
    let z = CycInt::root_of_unity(3, 1);
    let cube = &(&z * &z) * &z;
    assert!(cube.is_one());
    println!("zeta_3^3 = {}", cube);

    // 1 + zeta_3 + zeta_3^2 = 0: not a rounding artifact, an identity in
    // the ring Z[x]/Phi_3(x).
    let sum = &(&CycInt::from_int(1) + &z) + &(&z * &z);
    assert!(sum.is_zero());
    println!("1 + zeta_3 + zeta_3^2 = 0 exactly");

    // Scalars of different orders embed into a common cyclotomic ring
    // before comparing: zeta_6^3 equals -1 equals zeta_2.
    let m1 = CycInt::root_of_unity(6, 3);
    assert_eq!(m1, CycInt::from_int(-1));
    assert_eq!(m1, CycInt::root_of_unity(2, 1));
    println!("zeta_6^3 = -1 = zeta_2 across orders");

    // The sum of all n-th roots of unity vanishes for every n; this is
    // what makes trace orthogonality integer-exact.
    for n in 2..=12u64 {
        let mut total = CycInt::zero(1);
        for k in 0..n {
            total = &total + &CycInt::root_of_unity(n, k as i64);
        }
        assert!(total.is_zero(), "n = {}", n);
    }
    println!("sum of all n-th roots vanishes for n = 2..12");

    // Conjugation inverts roots; |zeta^k|^2 = 1 exactly.
    let w = CycInt::root_of_unity(12, 5);
    assert!((&w * &w.conj()).is_one());
    println!("zeta_12^5 conj(zeta_12^5) = 1");

    // Exact division by integers when every coefficient divides: the
    // expansion theorems divide traces by the dimension this way.
    let six = &CycInt::from_int(6) * &CycInt::root_of_unity(4, 1);
    let divided = six.div_exact_int(&BigInt::from(3)).unwrap();
    assert_eq!(divided, &CycInt::from_int(2) * &CycInt::root_of_unity(4, 1));
    println!("6 zeta_4 / 3 = 2 zeta_4, exactly or not at all");

    // Values with an integer meaning can be read back out.
    let eight = &CycInt::from_int(8) * &CycInt::root_of_unity(5, 0);
    assert_eq!(eight.as_integer().map(|v| v.to_string()), Some("8".into()));
    println!("integer-valued scalars expose their value: {}", eight);

    // Serialization is lossless: order plus integer coefficient strings.
    let fancy = &CycInt::from_int(3) + &CycInt::root_of_unity(8, 3);
    println!("serialized: {}", serde_json::to_string(&fancy).unwrap());
}
