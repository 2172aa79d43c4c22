//! Linear codes over `Z_n` with exhaustive, exact enumeration.
//!
//! A code is the span of a list of generator rows in `(Z_n)^L`. Every
//! operation here works on the fully enumerated, lexicographically sorted
//! word list: membership, duals, puncturing, shortening and coset leaders
//! are all settled by direct inspection rather than by rank arguments, with
//! configurable caps guarding the enumeration sizes. A row-reduction dual
//! is provided for prime moduli as an independent cross-check on the brute
//! scan.
//!
//! Generator matrices can be read from a small text format: a header line
//! `n L k` followed by `k` rows of `L` entries, with `#` comments and blank
//! lines ignored. Errors carry 1-based line numbers.

use std::collections::BTreeSet;

use thiserror::Error;

/// Default cap on enumerated set sizes (words of a code, vectors of an
/// ambient space).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Errors from code construction, combinatorial ops and parsing.
#[derive(Debug, Error)]
pub enum CodeError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("code length must be positive")]
    EmptyLength,
    #[error("generator {at} has length {got}, expected {expected}")]
    GeneratorLength {
        at: usize,
        expected: usize,
        got: usize,
    },
    #[error("generator {at} entry {value} is out of range mod {n}")]
    EntryRange { at: usize, value: u32, n: u32 },
    #[error("code enumeration exceeded the cap of {cap} words")]
    SpanTooLarge { cap: u64 },
    #[error("ambient space holds {needed} vectors, over the cap of {cap}")]
    AmbientTooLarge { needed: u128, cap: u64 },
    #[error("no codeword has last coordinate 1")]
    NoUnitLastCoordinate,
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("line {line}: expected header 'n L k'")]
    BadHeader { line: usize },
    #[error("line {line}: {what}")]
    BadLine { line: usize, what: String },
    #[error("expected {expected} generator rows, found {got}")]
    MissingRows { expected: usize, got: usize },
}

/// Hamming weight: the number of nonzero coordinates.
pub fn weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

/// Dot product mod `n`.
pub fn dot(a: &[u32], b: &[u32], n: u32) -> u32 {
    debug_assert_eq!(a.len(), b.len());
    (a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| x as u64 * y as u64)
        .sum::<u64>()
        % n as u64) as u32
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Iterates every vector of `(Z_n)^L` in lexicographic order, first
/// coordinate most significant.
struct AmbientIter {
    n: u32,
    current: Option<Vec<u32>>,
}

fn ambient(n: u32, length: usize) -> AmbientIter {
    AmbientIter {
        n,
        current: Some(vec![0; length]),
    }
}

impl Iterator for AmbientIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < self.n {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    }
}

/// A linear code over `Z_n`, fully enumerated and sorted at construction.
#[derive(Debug, Clone)]
pub struct LinearCodeZn {
    n: u32,
    length: usize,
    generators: Vec<Vec<u32>>,
    words: Vec<Vec<u32>>,
}

impl PartialEq for LinearCodeZn {
    /// Codes are equal as subsets, regardless of how they were generated.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.length == other.length && self.words == other.words
    }
}

impl Eq for LinearCodeZn {}

impl LinearCodeZn {
    /// Enumerates the span of `generators` inside `(Z_n)^length`.
    pub fn new(
        n: u32,
        length: usize,
        generators: Vec<Vec<u32>>,
        cap: u64,
    ) -> Result<LinearCodeZn, CodeError> {
        if n < 2 {
            return Err(CodeError::InvalidModulus(n));
        }
        if length == 0 {
            return Err(CodeError::EmptyLength);
        }
        for (at, g) in generators.iter().enumerate() {
            if g.len() != length {
                return Err(CodeError::GeneratorLength {
                    at,
                    expected: length,
                    got: g.len(),
                });
            }
            if let Some(&value) = g.iter().find(|&&v| v >= n) {
                return Err(CodeError::EntryRange { at, value, n });
            }
        }
        let mut set = BTreeSet::new();
        set.insert(vec![0u32; length]);
        for g in &generators {
            let mut next = BTreeSet::new();
            for w in &set {
                let mut acc = w.clone();
                for _ in 0..n {
                    if !next.contains(&acc) {
                        if next.len() as u64 >= cap {
                            return Err(CodeError::SpanTooLarge { cap });
                        }
                        next.insert(acc.clone());
                    }
                    for (a, &b) in acc.iter_mut().zip(g.iter()) {
                        *a = (*a + b) % n;
                    }
                }
            }
            set = next;
        }
        Ok(LinearCodeZn {
            n,
            length,
            generators,
            words: set.into_iter().collect(),
        })
    }

    /// Wraps an already-closed word set, deriving a reduced generator list.
    fn from_word_set(n: u32, length: usize, words: BTreeSet<Vec<u32>>) -> LinearCodeZn {
        let sorted: Vec<Vec<u32>> = words.into_iter().collect();
        let generators = greedy_generators(n, length, &sorted);
        LinearCodeZn {
            n,
            length,
            generators,
            words: sorted,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// All codewords, lexicographically sorted.
    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    /// The generator rows this code was built from.
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        self.words.binary_search_by(|w| w.as_slice().cmp(word)).is_ok()
    }

    pub fn index_of(&self, word: &[u32]) -> Option<usize> {
        self.words.binary_search_by(|w| w.as_slice().cmp(word)).ok()
    }

    /// A minimal generating sequence, chosen greedily over the sorted word
    /// list; deterministic for a given code.
    pub fn reduced_generators(&self) -> Vec<Vec<u32>> {
        greedy_generators(self.n, self.length, &self.words)
    }

    /// The dual code: every ambient vector orthogonal to this code.
    ///
    /// The scan tests orthogonality against the generator rows, which by
    /// linearity is equivalent to testing against every word; the small
    /// cases in the test suite pin that equivalence down directly.
    pub fn dual(&self, cap: u64) -> Result<LinearCodeZn, CodeError> {
        let needed = (self.n as u128).pow(self.length as u32);
        if needed > cap as u128 {
            return Err(CodeError::AmbientTooLarge { needed, cap });
        }
        let gens = self.reduced_generators();
        let mut words = BTreeSet::new();
        for x in ambient(self.n, self.length) {
            if gens.iter().all(|g| dot(&x, g, self.n) == 0) {
                words.insert(x);
            }
        }
        Ok(LinearCodeZn::from_word_set(self.n, self.length, words))
    }

    /// Row-reduction dual for prime moduli: solves the null space of the
    /// generator matrix by Gaussian elimination over the field `Z_p`.
    /// Exists as an independent route for cross-checking [`Self::dual`].
    pub fn dual_prime_fast(&self, cap: u64) -> Result<LinearCodeZn, CodeError> {
        let p = self.n;
        if !is_prime(p) {
            return Err(CodeError::NonPrimeModulus(p));
        }
        let mut rows: Vec<Vec<u32>> = self.generators.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.length {
            let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let inv = modpow(rows[rank][col] as u64, (p - 2) as u64, p as u64) as u32;
            for x in rows[rank].iter_mut() {
                *x = ((*x as u64 * inv as u64) % p as u64) as u32;
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in 0..self.length {
                        let sub = (factor as u64 * rows[rank][c] as u64) % p as u64;
                        rows[r][c] = ((rows[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        let mut dual_gens = Vec::new();
        for free in 0..self.length {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; self.length];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[i][free] % p) % p;
            }
            dual_gens.push(v);
        }
        LinearCodeZn::new(p, self.length, dual_gens, cap)
    }

    /// Deletes the last coordinate of every word.
    pub fn puncture_last(&self, cap: u64) -> Result<LinearCodeZn, CodeError> {
        if self.length < 2 {
            return Err(CodeError::EmptyLength);
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g[..self.length - 1].to_vec())
            .collect();
        LinearCodeZn::new(self.n, self.length - 1, gens, cap)
    }

    /// Keeps the words whose last coordinate is zero, then deletes it.
    pub fn shorten_last(&self) -> Result<LinearCodeZn, CodeError> {
        if self.length < 2 {
            return Err(CodeError::EmptyLength);
        }
        let words: BTreeSet<Vec<u32>> = self
            .words
            .iter()
            .filter(|w| w[self.length - 1] == 0)
            .map(|w| w[..self.length - 1].to_vec())
            .collect();
        Ok(LinearCodeZn::from_word_set(self.n, self.length - 1, words))
    }

    /// Whether the last coordinate takes every value in `Z_n`.
    pub fn last_coord_surjective(&self) -> bool {
        let seen: BTreeSet<u32> = self.words.iter().map(|w| w[self.length - 1]).collect();
        seen.len() == self.n as usize
    }

    /// The lexicographically least codeword whose last coordinate is 1.
    pub fn find_unit_last_word(&self) -> Result<Vec<u32>, CodeError> {
        self.words
            .iter()
            .find(|w| w[self.length - 1] == 1)
            .cloned()
            .ok_or(CodeError::NoUnitLastCoordinate)
    }

    /// Minimum Hamming weight over nonzero words; `None` for the zero code.
    pub fn min_weight(&self) -> Option<usize> {
        self.words
            .iter()
            .filter(|w| w.iter().any(|&x| x != 0))
            .map(|w| weight(w))
            .min()
    }

    /// One leader per coset of the code in its ambient space: the vector of
    /// least `(weight, lex)` in each coset, listed in that same order.
    pub fn coset_leaders(&self, cap: u64) -> Result<Vec<Vec<u32>>, CodeError> {
        let needed = (self.n as u128).pow(self.length as u32);
        if needed > cap as u128 {
            return Err(CodeError::AmbientTooLarge { needed, cap });
        }
        let mut all: Vec<Vec<u32>> = ambient(self.n, self.length).collect();
        all.sort_by_key(|v| (weight(v), v.clone()));
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut leaders = Vec::new();
        for x in all {
            // Canonical coset tag: the lex-least member of x + C.
            let tag = self
                .words
                .iter()
                .map(|c| {
                    x.iter()
                        .zip(c.iter())
                        .map(|(&a, &b)| (a + b) % self.n)
                        .collect::<Vec<u32>>()
                })
                .min()
                .expect("a code always has the zero word");
            if seen.insert(tag) {
                leaders.push(x);
            }
        }
        Ok(leaders)
    }
}

fn modpow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Greedy minimal generating sequence for a closed word set.
fn greedy_generators(n: u32, length: usize, sorted_words: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut span = BTreeSet::from([vec![0u32; length]]);
    for w in sorted_words {
        if span.contains(w) {
            continue;
        }
        gens.push(w.clone());
        let mut next = BTreeSet::new();
        for s in &span {
            let mut acc = s.clone();
            for _ in 0..n {
                next.insert(acc.clone());
                for (a, &b) in acc.iter_mut().zip(w.iter()) {
                    *a = (*a + b) % n;
                }
            }
        }
        span = next;
        if span.len() == sorted_words.len() {
            break;
        }
    }
    gens
}

/// Parses the `n L k` generator matrix format. Blank lines and lines
/// starting with `#` are skipped; all errors carry 1-based line numbers.
pub fn parse_generator_matrix(text: &str) -> Result<(u32, usize, Vec<Vec<u32>>), CodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(CodeError::BadHeader { line: 1 })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(CodeError::BadHeader { line: header_line });
    }
    let n: u32 = fields[0]
        .parse()
        .map_err(|_| CodeError::BadHeader { line: header_line })?;
    let length: usize = fields[1]
        .parse()
        .map_err(|_| CodeError::BadHeader { line: header_line })?;
    let k: usize = fields[2]
        .parse()
        .map_err(|_| CodeError::BadHeader { line: header_line })?;
    if n < 2 {
        return Err(CodeError::InvalidModulus(n));
    }
    if length == 0 {
        return Err(CodeError::EmptyLength);
    }

    let mut rows = Vec::with_capacity(k);
    for (line, text) in lines {
        if rows.len() == k {
            return Err(CodeError::BadLine {
                line,
                what: "unexpected content after the last generator row".into(),
            });
        }
        let mut row = Vec::with_capacity(length);
        for tok in text.split_whitespace() {
            let value: u32 = tok.parse().map_err(|_| CodeError::BadLine {
                line,
                what: format!("entry '{}' is not a number", tok),
            })?;
            if value >= n {
                return Err(CodeError::BadLine {
                    line,
                    what: format!("entry {} is out of range mod {}", value, n),
                });
            }
            row.push(value);
        }
        if row.len() != length {
            return Err(CodeError::BadLine {
                line,
                what: format!("expected {} entries, found {}", length, row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(CodeError::MissingRows {
            expected: k,
            got: rows.len(),
        });
    }
    Ok((n, length, rows))
}

/// Renders a generator matrix back into the text format accepted by
/// [`parse_generator_matrix`].
pub fn render_generator_matrix(n: u32, length: usize, generators: &[Vec<u32>]) -> String {
    let mut out = format!("{} {} {}\n", n, length, generators.len());
    for g in generators {
        let row: Vec<String> = g.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses and enumerates in one step.
pub fn code_from_text(text: &str, cap: u64) -> Result<LinearCodeZn, CodeError> {
    let (n, length, gens) = parse_generator_matrix(text)?;
    LinearCodeZn::new(n, length, gens, cap)
}

/// The binary `[7,4]` Hamming code, as obtained by puncturing the extended
/// code of [`extended_hamming_8_4`] at its last coordinate.
pub fn hamming_7_4() -> LinearCodeZn {
    LinearCodeZn::new(
        2,
        7,
        vec![
            vec![1, 1, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 1, 1, 0, 0],
            vec![0, 1, 0, 1, 0, 1, 0],
            vec![1, 1, 0, 1, 0, 0, 1],
        ],
        DEFAULT_ENUMERATION_CAP,
    )
    .expect("catalog data is valid")
}

/// The self-dual binary `[8,4]` extended Hamming code.
pub fn extended_hamming_8_4() -> LinearCodeZn {
    LinearCodeZn::new(
        2,
        8,
        vec![
            vec![1, 1, 1, 0, 0, 0, 0, 1],
            vec![1, 0, 0, 1, 1, 0, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 0, 1],
            vec![1, 1, 0, 1, 0, 0, 1, 0],
        ],
        DEFAULT_ENUMERATION_CAP,
    )
    .expect("catalog data is valid")
}

/// The self-dual ternary `[4,2]` tetracode.
pub fn tetracode_4_2() -> LinearCodeZn {
    LinearCodeZn::new(
        3,
        4,
        vec![vec![1, 1, 1, 0], vec![0, 1, 2, 1]],
        DEFAULT_ENUMERATION_CAP,
    )
    .expect("catalog data is valid")
}

/// The self-dual ternary `[12,6]` extended Golay code, in bordered
/// circulant form `[I | A]`.
pub fn extended_golay_12_6() -> LinearCodeZn {
    let a = [
        [0, 1, 1, 1, 1, 1],
        [1, 0, 1, 2, 2, 1],
        [1, 1, 0, 1, 2, 2],
        [1, 2, 1, 0, 1, 2],
        [1, 2, 2, 1, 0, 1],
        [1, 1, 2, 2, 1, 0],
    ];
    let gens = (0..6)
        .map(|i| {
            let mut row = vec![0u32; 12];
            row[i] = 1;
            row[6..].copy_from_slice(&a[i]);
            row
        })
        .collect();
    LinearCodeZn::new(3, 12, gens, DEFAULT_ENUMERATION_CAP).expect("catalog data is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const CAP: u64 = DEFAULT_ENUMERATION_CAP;

    #[test]
    fn hamming_code_has_the_expected_shape() {
        let c = hamming_7_4();
        assert_eq!(c.size(), 16);
        assert_eq!(c.min_weight(), Some(3));
        assert!(c.last_coord_surjective());
        assert!(c.contains(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(
            c.find_unit_last_word().unwrap(),
            vec![0, 0, 0, 1, 1, 1, 1]
        );
    }

    #[test]
    fn hamming_dual_is_contained_and_orthogonal_word_by_word() {
        let c = hamming_7_4();
        let d = c.dual(CAP).unwrap();
        assert_eq!(d.size(), 8);
        for x in d.words() {
            assert!(c.contains(x), "dual word {:?} lies in the code", x);
            for w in c.words() {
                assert_eq!(dot(x, w, 2), 0);
            }
            if x.iter().any(|&v| v != 0) {
                assert_eq!(weight(x), 4);
            }
        }
    }

    #[test]
    fn extended_hamming_is_self_dual() {
        let c = extended_hamming_8_4();
        assert_eq!(c.size(), 16);
        assert_eq!(c.min_weight(), Some(4));
        assert_eq!(c.dual(CAP).unwrap(), c);
        assert_eq!(c.puncture_last(CAP).unwrap(), hamming_7_4());
    }

    #[test]
    fn tetracode_shapes_and_sections() {
        let c = tetracode_4_2();
        assert_eq!(c.size(), 9);
        assert_eq!(c.min_weight(), Some(3));
        assert_eq!(c.dual(CAP).unwrap(), c);

        let punctured = c.puncture_last(CAP).unwrap();
        assert_eq!(punctured.size(), 9);
        assert_eq!(punctured.min_weight(), Some(2));

        let shortened = c.shorten_last().unwrap();
        assert_eq!(
            shortened.words(),
            &[vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]
        );
        assert_eq!(
            punctured.find_unit_last_word().unwrap(),
            vec![0, 2, 1],
            "lex-least punctured word ending in 1"
        );
    }

    #[test]
    fn golay_code_is_self_dual_with_min_weight_six() {
        let c = extended_golay_12_6();
        assert_eq!(c.size(), 729);
        assert_eq!(c.min_weight(), Some(6));
        assert_eq!(c.dual(CAP).unwrap(), c);
    }

    #[test]
    fn duality_properties_on_random_codes() {
        let mut rng = StdRng::seed_from_u64(0x5EED);
        for &n in &[2u32, 3, 4, 5, 6] {
            for _ in 0..3 {
                let length = rng.gen_range(3..=5usize);
                let gens: Vec<Vec<u32>> = (0..2)
                    .map(|_| (0..length).map(|_| rng.gen_range(0..n)).collect())
                    .collect();
                let c = LinearCodeZn::new(n, length, gens, CAP).unwrap();
                let d = c.dual(CAP).unwrap();
                // Cardinality pairing and double duality hold over any Z_n.
                assert_eq!(
                    c.size() as u128 * d.size() as u128,
                    (n as u128).pow(length as u32),
                    "n={} length={}",
                    n,
                    length
                );
                assert_eq!(d.dual(CAP).unwrap(), c);
                for x in d.words() {
                    for w in c.words() {
                        assert_eq!(dot(x, w, n), 0);
                    }
                }
                if is_prime(n) {
                    assert_eq!(c.dual_prime_fast(CAP).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn prime_fast_dual_rejects_composite_moduli() {
        let c = LinearCodeZn::new(4, 3, vec![vec![1, 2, 0]], CAP).unwrap();
        match c.dual_prime_fast(CAP) {
            Err(CodeError::NonPrimeModulus(4)) => {}
            other => panic!("expected a modulus rejection, got {:?}", other),
        }
    }

    #[test]
    fn puncture_and_shorten_are_dual_to_each_other() {
        for c in [hamming_7_4(), extended_hamming_8_4(), tetracode_4_2()] {
            let lhs = c.puncture_last(CAP).unwrap().dual(CAP).unwrap();
            let rhs = c.dual(CAP).unwrap().shorten_last().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduced_generators_span_the_same_code() {
        let c = extended_golay_12_6();
        let gens = c.reduced_generators();
        assert!(gens.len() <= 6);
        let again = LinearCodeZn::new(3, 12, gens, CAP).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn hamming_coset_leaders_are_zero_plus_single_errors() {
        let c = hamming_7_4();
        let leaders = c.coset_leaders(CAP).unwrap();
        assert_eq!(leaders.len(), 8);
        assert_eq!(leaders[0], vec![0; 7]);
        for (i, leader) in leaders.iter().enumerate().skip(1) {
            assert_eq!(weight(leader), 1);
            // Discovery order is weight then lex, so the single errors come
            // out with the nonzero coordinate moving right to left.
            assert_eq!(leader[7 - i], 1);
        }
    }

    #[test]
    fn membership_is_exact() {
        let c = tetracode_4_2();
        assert!(c.contains(&[0, 0, 0, 0]));
        assert!(c.contains(&[1, 1, 1, 0]));
        assert!(!c.contains(&[1, 0, 0, 0]));
        assert_eq!(c.index_of(&[0, 0, 0, 0]), Some(0));
        assert_eq!(c.index_of(&[1, 0, 0, 0]), None);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        match LinearCodeZn::new(1, 3, vec![], CAP) {
            Err(CodeError::InvalidModulus(1)) => {}
            other => panic!("expected modulus error, got {:?}", other),
        }
        match LinearCodeZn::new(2, 0, vec![], CAP) {
            Err(CodeError::EmptyLength) => {}
            other => panic!("expected length error, got {:?}", other),
        }
        match LinearCodeZn::new(2, 3, vec![vec![1, 0]], CAP) {
            Err(CodeError::GeneratorLength {
                at: 0,
                expected: 3,
                got: 2,
            }) => {}
            other => panic!("expected row length error, got {:?}", other),
        }
        match LinearCodeZn::new(2, 3, vec![vec![1, 0, 2]], CAP) {
            Err(CodeError::EntryRange {
                at: 0,
                value: 2,
                n: 2,
            }) => {}
            other => panic!("expected entry range error, got {:?}", other),
        }
        match LinearCodeZn::new(2, 30, (0..30).map(|i| {
            let mut r = vec![0u32; 30];
            r[i] = 1;
            r
        }).collect(), 1 << 10) {
            Err(CodeError::SpanTooLarge { cap }) => assert_eq!(cap, 1 << 10),
            other => panic!("expected span cap error, got {:?}", other),
        }
        let wide = LinearCodeZn::new(2, 30, vec![vec![0; 30]], CAP).unwrap();
        match wide.dual(CAP) {
            Err(CodeError::AmbientTooLarge { .. }) => {}
            other => panic!("expected ambient cap error, got {:?}", other),
        }
    }

    #[test]
    fn parser_accepts_comments_and_reports_line_numbers() {
        let good = "# tetracode\n3 4 2\n\n1 1 1 0\n0 1 2 1\n";
        let (n, length, rows) = parse_generator_matrix(good).unwrap();
        assert_eq!((n, length), (3, 4));
        assert_eq!(rows, vec![vec![1, 1, 1, 0], vec![0, 1, 2, 1]]);
        let code = code_from_text(good, CAP).unwrap();
        assert_eq!(code, tetracode_4_2());

        match parse_generator_matrix("3 4\n1 1 1 0\n") {
            Err(CodeError::BadHeader { line: 1 }) => {}
            other => panic!("expected header error, got {:?}", other),
        }
        match parse_generator_matrix("# intro\n2 3 1\n1 x 0\n") {
            Err(CodeError::BadLine { line: 3, what }) => {
                assert!(what.contains("'x'"), "{}", what)
            }
            other => panic!("expected entry error, got {:?}", other),
        }
        match parse_generator_matrix("2 3 1\n1 0\n") {
            Err(CodeError::BadLine { line: 2, what }) => {
                assert!(what.contains("expected 3 entries"), "{}", what)
            }
            other => panic!("expected row length error, got {:?}", other),
        }
        match parse_generator_matrix("2 3 1\n1 0 1\n0 1 1\n") {
            Err(CodeError::BadLine { line: 3, what }) => {
                assert!(what.contains("after the last"), "{}", what)
            }
            other => panic!("expected trailing content error, got {:?}", other),
        }
        match parse_generator_matrix("2 3 2\n1 0 1\n") {
            Err(CodeError::MissingRows {
                expected: 2,
                got: 1,
            }) => {}
            other => panic!("expected missing rows error, got {:?}", other),
        }
        match parse_generator_matrix("2 3 1\n1 0 9\n") {
            Err(CodeError::BadLine { line: 2, what }) => {
                assert!(what.contains("out of range"), "{}", what)
            }
            other => panic!("expected range error, got {:?}", other),
        }
    }

    #[test]
    fn render_and_parse_round_trip() {
        let c = extended_hamming_8_4();
        let text = render_generator_matrix(c.n(), c.length(), c.generators());
        let again = code_from_text(&text, CAP).unwrap();
        assert_eq!(again, c);
    }
}
