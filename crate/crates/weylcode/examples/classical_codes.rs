//! The classical side: linear codes over Z_n parsed from a small text
//! format, their duals computed two independent ways, and the puncture and
//! shorten operations whose interplay with duality carries the whole
//! quantum construction.
//!
//! Run with `cargo run --example classical_codes`.

use weylcode::zncodes::{
    code_from_text, render_generator_matrix, tetracode_4_2, DEFAULT_ENUMERATION_CAP,
};

fn main() {
    let cap = DEFAULT_ENUMERATION_CAP;

    // Generator files: a header "n L k", then k rows of L entries mod n.
    let text = "\
# the [7,4] Hamming code
2 7 4
1 1 1 0 0 0 0
1 0 0 1 1 0 0
0 1 0 1 0 1 0
1 1 0 1 0 0 1
";
    let hamming = code_from_text(text, cap).unwrap();
    println!(
        "parsed [{},{}] over Z_{}: {} words, min weight {:?}",
        hamming.length(),
        hamming.generators().len(),
        hamming.n(),
        hamming.size(),
        hamming.min_weight()
    );
    assert_eq!(hamming.size(), 16);
    assert_eq!(hamming.min_weight(), Some(3));

    // Rendering and parsing round-trip to the same set of words.
    let rendered = render_generator_matrix(
        hamming.n(),
        hamming.length(),
        hamming.generators(),
    );
    assert_eq!(code_from_text(&rendered, cap).unwrap(), hamming);
    println!("render/parse round trip preserves the code");

    // Two dual routes: scan the whole ambient space for words orthogonal
    // to every generator, or row-reduce to a parity basis (prime n only).
    // They must agree word for word.
    let brute = hamming.dual(cap).unwrap();
    let fast = hamming.dual_prime_fast(cap).unwrap();
    assert_eq!(brute, fast);
    println!("dual computed both ways: {} words, routes agree", brute.size());
    assert_eq!(brute.size(), 8);

    // The tetracode is self-dual; puncturing its dual equals shortening it
    // and dualizing, the identity the quantum construction leans on.
    let tetra = tetracode_4_2();
    let dual = tetra.dual(cap).unwrap();
    assert_eq!(dual, tetra);
    let punctured = tetra.puncture_last(cap).unwrap();
    let shortened = tetra.shorten_last().unwrap();
    assert_eq!(punctured.dual(cap).unwrap(), dual.shorten_last().unwrap());
    assert_eq!(shortened.dual(cap).unwrap(), dual.puncture_last(cap).unwrap());
    println!("dual(puncture) = shorten(dual) and dual(shorten) = puncture(dual)");

    // Coset leaders: minimal-weight representatives per syndrome class.
    let leaders = hamming.coset_leaders(cap).unwrap();
    println!("{} cosets of the Hamming code; leaders:", leaders.len());
    for leader in leaders.iter().take(4) {
        println!("  {:?}", leader);
    }
    assert_eq!(leaders.len(), 8);
    assert!(leaders.iter().all(|l| l.iter().filter(|&&v| v != 0).count() <= 1));
}
