//! Walks through the dimension-four very nice error basis generated by
//! three monomial matrices A, B, C: the 32-element group they generate,
//! its center, the five defining relations, the 16 coset representatives
//! that form the basis, and the index group isomorphic to Z_2 x D_4.
//!
//! This basis is interesting because its index group is non-abelian, which
//! no shift and clock basis achieves.
//!
//! Run with `cargo run --example egner_basis`.

use weylcode::errorbasis::{
    central_coset_representatives, egner_generators, find_isomorphism, group_center,
    group_closure, order_profile, z2_d4_table, ErrorBasis,
};
use weylcode::exactmat::MonomialMatrix;

fn main() {
    let [a, b, c] = egner_generators();
    let identity = MonomialMatrix::identity(4);
    let minus = identity.neg();

    // The defining relations, checked as exact matrix identities.
    assert_eq!(a.mul(&a), identity, "A^2 = I");
    assert_eq!(b.pow(4), minus, "B^4 = -I");
    assert_eq!(a.mul(&b), b.mul(&a).neg(), "AB = -BA");
    assert_eq!(a.mul(&c), c.mul(&a), "AC = CA");
    assert_eq!(b.mul(&c), c.mul(&b.adjoint()), "BC = CB^-1");
    println!("relations: A^2=I, B^4=-I, AB=-BA, AC=CA, BC=CB^-1 all hold");

    let closure = group_closure(&[a, b, c], 1 << 12).unwrap();
    println!("closure: {} elements", closure.len());
    assert_eq!(closure.len(), 32);

    let center = group_center(&closure);
    assert_eq!(center.len(), 2);
    assert!(center.contains(&identity) && center.contains(&minus));
    println!("center: exactly I and -I");

    // One representative per central coset gives 16 operators; together
    // they are an error basis for dimension 4.
    let reps = central_coset_representatives(&closure, &center);
    assert_eq!(reps.len(), 16);
    let basis = ErrorBasis::egner();
    basis.verify_orthonormal().expect("orthonormal");
    let sc = basis.verify_nice().expect("nice");
    println!("16 coset representatives: orthonormal and nice");

    let group = basis.index_group(&sc);
    assert!(group.is_group());
    assert!(!group.abelian, "the index group is non-abelian");

    // Certify the isomorphism type by explicit mapping against a reference
    // multiplication table of Z_2 x D_4, and cross-check the order profile.
    let mapping = find_isomorphism(&sc.star, &z2_d4_table()).expect("isomorphic");
    println!("index group = Z_2 x D_4 via mapping {:?}", mapping);
    let profile = order_profile(&sc.star);
    println!("element orders: {:?}", profile);

    let vn = basis.verify_very_nice(&sc);
    assert!(vn.passed());
    println!("very nice: all determinants 1, all coefficients fourth roots of unity");
}
