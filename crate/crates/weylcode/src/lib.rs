//! Exact construction and verification of unitary error operator bases and
//! quantum codes derived from linear codes over `Z_n`.
//!
//! Everything here computes in the ring of cyclotomic integers
//! ([`cyclotomic::CycInt`]): no floats, no tolerances. A claim passes when
//! an integer identity holds and fails otherwise.
//!
//! The modules build on each other in order:
//!
//! - [`cyclotomic`]: arithmetic in `Z[zeta_m]` with canonical forms, so
//!   equality is decidable.
//! - [`exactmat`]: monomial and dense matrices and sparse state vectors
//!   over those scalars.
//! - [`errorbasis`]: unitary error operator bases, the shift and clock
//!   family, niceness and very-niceness verdicts, operator expansion, and
//!   the dimension-four basis with index group `Z_2 x D_4`.
//! - [`zncodes`]: linear codes over `Z_n`, duals, puncturing and
//!   shortening, and the generator-matrix text format.
//! - [`qcode`]: quantum codes from classical codes whose last coordinate is
//!   surjective, logical states, syndromes, the error-correction conditions
//!   checked by two independent routes, and exact recovery.
//! - [`transversal`]: site-local implementations of logical increment,
//!   phase, Fourier, and controlled-add gates, verified against predicted
//!   logical matrices.
//! - [`report`] and [`cli`]: deterministic JSON/text reports and the
//!   command line driver behind the `weylcode` binary.
//!
//! The `examples/` directory exercises each capability end to end; start
//! with `cargo run --example steane_code`.

pub mod cli;
pub mod cyclotomic;
pub mod errorbasis;
pub mod exactmat;
pub mod qcode;
pub mod report;
pub mod transversal;
pub mod zncodes;
